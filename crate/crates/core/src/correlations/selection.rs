//! Correlations conditioned on the outcomes of some particles.

use std::f64::consts::{PI, TAU};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    closed_form_e, joint_distribution, selected_expectation_closed_form, singlet_vector,
    ClosedForm, DensityOperator, DirectionSet, SelectedRow,
};
use crate::error::{Error, Result};

/// Outcomes with some particles left free (`None`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialSigns(Vec<Option<i8>>);

impl PartialSigns {
    pub fn new(signs: Vec<Option<i8>>) -> Result<Self> {
        if signs.iter().flatten().any(|s| *s != 1 && *s != -1) {
            return Err(Error::Domain("fixed outcomes must be +1 or -1".into()));
        }
        Ok(PartialSigns(signs))
    }

    /// `n` particles with `fixed` (1-based position, sign) pairs.
    pub fn fixing(n: usize, fixed: &[(usize, i8)]) -> Result<Self> {
        let mut v = vec![None; n];
        for &(i, s) in fixed {
            if i == 0 || i > n {
                return Err(Error::Domain(format!("particle {i} outside 1..={n}")));
            }
            v[i - 1] = Some(s);
        }
        Self::new(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sign of particle `i` (1-based) if fixed.
    pub fn get(&self, i: usize) -> Option<i8> {
        self.0[i - 1]
    }

    pub fn fixed_positions(&self) -> Vec<usize> {
        (1..=self.0.len()).filter(|&i| self.0[i - 1].is_some()).collect()
    }

    fn admits(&self, signs: &[i8]) -> bool {
        self.0.iter().zip(signs).all(|(f, s)| f.is_none_or(|f| f == *s))
    }
}

/// Candidate definitions of a selected correlation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Candidate {
    /// `Σ (s₁⋯sₙ) P` over compatible outcomes.
    FullParity,
    /// The same divided by the selection probability.
    FullParityNormalized,
    /// `Σ (Π free sᵢ) P` over compatible outcomes.
    FreeParity,
    /// The same divided by the selection probability.
    FreeParityNormalized,
}

impl Candidate {
    pub const ALL: [Candidate; 4] = [
        Candidate::FullParity,
        Candidate::FullParityNormalized,
        Candidate::FreeParity,
        Candidate::FreeParityNormalized,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Candidate::FullParity => "a",
            Candidate::FullParityNormalized => "b",
            Candidate::FreeParity => "c",
            Candidate::FreeParityNormalized => "d",
        }
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// All candidate values for one selection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SelectionCandidates {
    pub selection_probability: f64,
    pub full_parity: f64,
    pub free_parity: f64,
}

impl SelectionCandidates {
    /// Value of candidate `c`; the normalized ones are `None` when the
    /// selection has probability zero.
    pub fn value(&self, c: Candidate) -> Option<f64> {
        let norm = |x: f64| (self.selection_probability > 0.0).then(|| x / self.selection_probability);
        match c {
            Candidate::FullParity => Some(self.full_parity),
            Candidate::FullParityNormalized => norm(self.full_parity),
            Candidate::FreeParity => Some(self.free_parity),
            Candidate::FreeParityNormalized => norm(self.free_parity),
        }
    }
}

/// Evaluate every candidate definition from the joint distribution.
pub fn selected_expectation_candidates(
    rho: &DensityOperator,
    dirs: &DirectionSet,
    fixed: &PartialSigns,
) -> Result<SelectionCandidates> {
    if fixed.len() != rho.qubits() {
        return Err(Error::Domain("selection length differs from particle count".into()));
    }
    let mut out = SelectionCandidates { selection_probability: 0.0, full_parity: 0.0, free_parity: 0.0 };
    for (signs, p) in joint_distribution(rho, dirs)? {
        let s = signs.as_slice();
        if !fixed.admits(s) {
            continue;
        }
        out.selection_probability += p;
        out.full_parity += signs.product() as f64 * p;
        let free: i64 = s
            .iter()
            .enumerate()
            .filter(|(k, _)| fixed.get(k + 1).is_none())
            .map(|(_, &x)| x as i64)
            .product();
        out.free_parity += free as f64 * p;
    }
    Ok(out)
}

/// Largest deviation of one printed row from each candidate.
#[derive(Clone, Debug, Serialize)]
pub struct RowReconciliation {
    pub row: String,
    pub deviations: Vec<(Candidate, f64)>,
    pub matches: Vec<Candidate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelectionReport {
    pub seed: u64,
    pub samples: usize,
    pub rows: Vec<RowReconciliation>,
    /// `|±₄` row against `1/12 ± ½ E_full`.
    pub pm4_identity_deviation: f64,
    /// Polar-only rows against the general rows at zero azimuth.
    pub polar_restriction_deviation: f64,
}

/// Tolerance for declaring a candidate a match.
pub const MATCH_TOL: f64 = 1e-9;

fn random_dirs(rng: &mut impl Rng, polar_only: bool) -> DirectionSet {
    let thetas: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..=PI)).collect();
    let phis: Vec<f64> =
        (0..4).map(|_| if polar_only { 0.0 } else { rng.gen_range(0.0..TAU) }).collect();
    DirectionSet::from_angles(&thetas, &phis).expect("equal lengths")
}

fn sign_choices(row: SelectedRow) -> Vec<PartialSigns> {
    let fixed = row.fixed();
    let k = fixed.len();
    (0..1usize << k)
        .map(|bits| {
            let pairs: Vec<(usize, i8)> = fixed
                .iter()
                .enumerate()
                .map(|(b, &i)| (i, if bits >> b & 1 == 0 { 1 } else { -1 }))
                .collect();
            PartialSigns::fixing(4, &pairs).expect("valid positions")
        })
        .collect()
}

/// Compare each printed selection row with each candidate definition on
/// the first four-particle singlet over `samples` seeded random draws.
pub fn reconcile_selection(samples: usize, seed: u64) -> Result<SelectionReport> {
    if samples == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let rho = singlet_vector(1)?.density();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut pm4_identity_deviation = 0.0f64;
    let mut polar_restriction_deviation = 0.0f64;
    for row in SelectedRow::ALL {
        let mut worst = [0.0f64; 4];
        for _ in 0..samples {
            let dirs = random_dirs(&mut rng, row.polar_only());
            for signs in sign_choices(row) {
                let printed = selected_expectation_closed_form(row, &signs, &dirs)?;
                let cands = selected_expectation_candidates(&rho, &dirs, &signs)?;
                for (k, c) in Candidate::ALL.into_iter().enumerate() {
                    let dev = cands.value(c).map_or(f64::INFINITY, |v| (v - printed).abs());
                    worst[k] = worst[k].max(dev);
                }
                match row {
                    SelectedRow::Pm4 => {
                        let e = closed_form_e(ClosedForm::Psi241Full, None, &dirs)?;
                        let p = signs.get(4).unwrap_or(1) as f64;
                        let dev = (printed - (1.0 / 12.0 + p * 0.5 * e)).abs();
                        pm4_identity_deviation = pm4_identity_deviation.max(dev);
                    }
                    SelectedRow::Pm3Pm4Theta | SelectedRow::Pm2Pm4Theta => {
                        let general = if row == SelectedRow::Pm3Pm4Theta {
                            SelectedRow::Pm3Pm4Full
                        } else {
                            SelectedRow::Pm2Pm4Full
                        };
                        let g = selected_expectation_closed_form(general, &signs, &dirs)?;
                        polar_restriction_deviation =
                            polar_restriction_deviation.max((printed - g).abs());
                    }
                    _ => {}
                }
            }
        }
        let deviations: Vec<(Candidate, f64)> =
            Candidate::ALL.into_iter().zip(worst).collect();
        let matches = deviations.iter().filter(|(_, d)| *d <= MATCH_TOL).map(|(c, _)| *c).collect();
        rows.push(RowReconciliation { row: row.name().to_string(), deviations, matches });
    }
    Ok(SelectionReport { seed, samples, rows, pm4_identity_deviation, polar_restriction_deviation })
}

impl fmt::Display for SelectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {} samples {}", self.seed, self.samples)?;
        writeln!(f, "row            a          b          c          d          matches")?;
        for r in &self.rows {
            write!(f, "{:<14}", r.row)?;
            for (_, d) in &r.deviations {
                write!(f, " {d:<10.3e}")?;
            }
            let m: Vec<&str> = r.matches.iter().map(|c| c.label()).collect();
            writeln!(f, " {}", if m.is_empty() { "none".to_string() } else { m.join(",") })?;
        }
        writeln!(f, "pm4 identity deviation {:.3e}", self.pm4_identity_deviation)?;
        write!(f, "polar restriction deviation {:.3e}", self.polar_restriction_deviation)
    }
}
