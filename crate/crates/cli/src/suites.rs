//! Verification suites run by `singlet verify`.

use num_bigint::BigUint;
use singlet_core::builder::{
    apply_total_lowering, apply_total_raising, build_layers_with_budget, count_states,
    is_orthonormal, Layer, SingletBasis,
};
use singlet_core::symmetry::{
    action_matrices, parity_against, parity_of, predicted_parity, satisfies_coxeter_relations,
    young_dimension, FlipBehaviour, Partition,
};
use singlet_core::{HalfInt, Result};

pub struct SuiteResult {
    pub name: &'static str,
    pub failures: Vec<String>,
    pub checks: usize,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult { name, failures: Vec::new(), checks: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn counts(layers: &[Layer], spin: HalfInt) -> SuiteResult {
    let mut r = SuiteResult::new("count consistency");
    for layer in layers {
        let h = layer.particles();
        let top = h as i32 * spin.twice;
        for t in (top % 2..=top).step_by(2) {
            let j = HalfInt::from_twice(t);
            let want = count_states(j, h, spin);
            for m in j.projections() {
                let got = BigUint::from(layer.cell(j, m).len());
                r.check(got == want, || format!("h={h} j={j} m={m}: {got} states, expected {want}"));
            }
        }
    }
    r
}

fn orthonormality(layers: &[Layer]) -> SuiteResult {
    let mut r = SuiteResult::new("orthonormality");
    for layer in layers {
        for ((j, m), cell) in layer.cells() {
            r.check(is_orthonormal(cell), || {
                format!("h={} j={j} m={m}: Gram matrix is not the identity", layer.particles())
            });
        }
    }
    r
}

fn m_sector(layers: &[Layer]) -> SuiteResult {
    let mut r = SuiteResult::new("m-sector");
    for layer in layers {
        for s in layer.states() {
            let ok = s.amplitudes().iter().all(|(w, _)| w.magnetic() == s.m());
            r.check(ok, || format!("h={} j={} m={} #{}", s.particles(), s.j(), s.m(), s.index()));
        }
    }
    r
}

fn annihilation(layers: &[Layer]) -> SuiteResult {
    let mut r = SuiteResult::new("J+/J- annihilation");
    for layer in layers {
        for s in layer.cell(HalfInt::ZERO, HalfInt::ZERO) {
            let ok = apply_total_raising(s).is_zero() && apply_total_lowering(s).is_zero();
            r.check(ok, || format!("singlet h={} #{} not annihilated", s.particles(), s.index()));
        }
    }
    r
}

fn parity(layers: &[Layer], spin: HalfInt) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("sign-flip parity");
    for layer in layers {
        let h = layer.particles();
        for ((j, m), cell) in layer.cells() {
            let predicted = predicted_parity(h, j, spin)?;
            let partners = layer.cell(j, -m);
            for (k, s) in cell.iter().enumerate() {
                let observed = if m.twice == 0 {
                    parity_of(s)
                } else {
                    partners.get(k).map_or(FlipBehaviour::NotEigenstate, |p| parity_against(s, p))
                };
                r.check(observed == FlipBehaviour::Eigen(predicted), || {
                    format!("h={h} j={j} m={m} #{}: observed {observed:?}, predicted {predicted}", k + 1)
                });
            }
        }
    }
    Ok(r)
}

fn closure(layers: &[Layer], spin: HalfInt) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("transposition closure");
    for layer in layers {
        let h = layer.particles();
        let states = layer.cell(HalfInt::ZERO, HalfInt::ZERO).to_vec();
        if states.is_empty() {
            continue;
        }
        let basis = SingletBasis { n: h, spin, states };
        match action_matrices(&basis)? {
            None => r.check(false, || format!("N={h}: singlet span not closed")),
            Some(mats) => {
                r.check(satisfies_coxeter_relations(&mats), || {
                    format!("N={h}: action matrices violate the Coxeter relations")
                });
                if spin.twice == 1 {
                    let p = Partition::new(vec![h / 2, h / 2])?;
                    let d = young_dimension(&p);
                    r.check(BigUint::from(basis.len()) == d, || {
                        format!("N={h}: dimension {} differs from {d}", basis.len())
                    });
                }
            }
        }
    }
    Ok(r)
}

/// Build every layer up to `n_max` without pruning and run all suites.
pub fn run_all(spin: HalfInt, n_max: usize, budget: u64) -> Result<Vec<SuiteResult>> {
    let layers = build_layers_with_budget(n_max, spin, false, budget)?;
    Ok(vec![
        counts(&layers, spin),
        orthonormality(&layers),
        m_sector(&layers),
        annihilation(&layers),
        parity(&layers, spin)?,
        closure(&layers, spin)?,
    ])
}
