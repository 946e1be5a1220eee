//! Sign-flip parity and symmetric-group action on coupled states.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::builder::{span_coefficients, BasisWord, CoupledState, ExactVector, SingletBasis};
use crate::cg::{triangle, HalfInt};
use crate::error::{Error, Result};
use crate::exactnum::RadicalSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn from_sign_exponent(twice: i32) -> Parity {
        debug_assert!(twice % 2 == 0);
        if (twice / 2).rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flipped(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    fn times(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Outcome of testing a state against the sign flip.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipBehaviour {
    Eigen(Parity),
    NotEigenstate,
}

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain("partition parts must be weakly decreasing".into()));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// All partitions of `n`, parts in decreasing order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

fn negate_word(w: &BasisWord) -> BasisWord {
    BasisWord::from_twice(w.letters().iter().map(|l| -l).collect())
}

/// Negate every magnetic letter; amplitudes are unchanged and `m → −m`.
pub fn flip_magnetic(state: &CoupledState) -> CoupledState {
    state.with_amplitudes(state.amplitudes().map_words(negate_word), -state.m())
}

fn compare_sign(a: &ExactVector, b: &ExactVector) -> FlipBehaviour {
    if a.is_zero() && b.is_zero() {
        return FlipBehaviour::Eigen(Parity::Even);
    }
    if a == b {
        FlipBehaviour::Eigen(Parity::Even)
    } else if *a == b.negated() {
        FlipBehaviour::Eigen(Parity::Odd)
    } else {
        FlipBehaviour::NotEigenstate
    }
}

/// Whether `flip_magnetic(state) = ±state` exactly.
pub fn parity_of(state: &CoupledState) -> FlipBehaviour {
    compare_sign(flip_magnetic(state).amplitudes(), state.amplitudes())
}

/// Whether `flip_magnetic(state) = ±partner`, for states with `m ≠ 0`
/// whose flip lands in the `−m` cell.
pub fn parity_against(state: &CoupledState, partner: &CoupledState) -> FlipBehaviour {
    compare_sign(flip_magnetic(state).amplitudes(), partner.amplitudes())
}

/// Parity of cell `(n, j)` propagated along the coupling lattice.
///
/// A single particle is even; a step `j' → j` multiplies by
/// `(−1)^(j' + s − j)`. Every path into a cell is followed and disagreement
/// is reported as a construction error.
pub fn predicted_parity(n: usize, j: HalfInt, spin: HalfInt) -> Result<Parity> {
    if n == 0 {
        return Err(Error::Domain("need at least one particle".into()));
    }
    let mut row: BTreeMap<HalfInt, Parity> = BTreeMap::from([(spin, Parity::Even)]);
    for h in 2..=n {
        let mut next: BTreeMap<HalfInt, Parity> = BTreeMap::new();
        let top = h as i32 * spin.twice;
        for t in (top % 2..=top).step_by(2) {
            let target = HalfInt::from_twice(t);
            for (jp, p) in &row {
                if !triangle(*jp, spin, target) {
                    continue;
                }
                let step = Parity::from_sign_exponent((*jp + spin - target).twice);
                let value = p.times(step);
                match next.get(&target) {
                    Some(prev) if *prev != value => {
                        return Err(Error::Construction(format!(
                            "parity of ({h}, {target}) depends on the path"
                        )));
                    }
                    _ => {
                        next.insert(target, value);
                    }
                }
            }
        }
        row = next;
    }
    row.get(&j)
        .copied()
        .ok_or_else(|| Error::Domain(format!("cell ({n}, {j}) is not reachable")))
}

/// Swap particles `k` and `k + 1` (1-based) in every ket.
pub fn adjacent_transposition(state: &CoupledState, k: usize) -> Result<CoupledState> {
    let h = state.particles();
    if k == 0 || k >= h {
        return Err(Error::Domain(format!("transposition ({k}, {}) outside 1..{h}", k + 1)));
    }
    let amps = state.amplitudes().map_words(|w| {
        let mut letters = w.letters().to_vec();
        letters.swap(k - 1, k);
        BasisWord::from_twice(letters)
    });
    Ok(state.with_amplitudes(amps, state.m()))
}

/// Exact square matrix over radical sums, row-major.
pub type ExactMatrix = Vec<Vec<RadicalSum>>;

/// Matrix of transposition `(k, k+1)` on the span of `basis`: column `c`
/// holds the coefficients of the image of state `c`. `None` when an image
/// leaves the span.
pub fn transposition_matrix(basis: &SingletBasis, k: usize) -> Result<Option<ExactMatrix>> {
    let d = basis.len();
    let mut m = vec![vec![RadicalSum::zero(); d]; d];
    for (c, state) in basis.states.iter().enumerate() {
        let image = adjacent_transposition(state, k)?;
        match span_coefficients(&basis.states, image.amplitudes()) {
            Some(coeffs) => {
                for (r, v) in coeffs.into_iter().enumerate() {
                    m[r][c] = v;
                }
            }
            None => return Ok(None),
        }
    }
    Ok(Some(m))
}

pub fn mat_mul(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let n = a.len();
    let p = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![RadicalSum::zero(); p]; n];
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..p {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn identity(d: usize) -> ExactMatrix {
    (0..d)
        .map(|r| {
            (0..d)
                .map(|c| if r == c { RadicalSum::one() } else { RadicalSum::zero() })
                .collect()
        })
        .collect()
}

/// Action matrices of all adjacent transpositions on the singlet span, or
/// `None` if the span is not closed.
pub fn action_matrices(basis: &SingletBasis) -> Result<Option<Vec<ExactMatrix>>> {
    let mut out = Vec::new();
    for k in 1..basis.n {
        match transposition_matrix(basis, k)? {
            Some(m) => out.push(m),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Coxeter relations of the symmetric group: `sₖ² = 1`,
/// `(sₖ sₖ₊₁)³ = 1`, `sₖ sₗ = sₗ sₖ` for `|k − l| ≥ 2`.
pub fn satisfies_coxeter_relations(mats: &[ExactMatrix]) -> bool {
    let Some(d) = mats.first().map(Vec::len) else {
        return true;
    };
    let id = identity(d);
    for (k, a) in mats.iter().enumerate() {
        if mat_mul(a, a) != id {
            return false;
        }
        if let Some(b) = mats.get(k + 1) {
            let ab = mat_mul(a, b);
            if mat_mul(&mat_mul(&ab, &ab), &ab) != id {
                return false;
            }
        }
        for b in mats.iter().skip(k + 2) {
            if mat_mul(a, b) != mat_mul(b, a) {
                return false;
            }
        }
    }
    true
}

/// True when every adjacent transposition maps the singlet span into itself.
pub fn singlet_space_closure_check(basis: &SingletBasis) -> bool {
    matches!(action_matrices(basis), Ok(Some(_)))
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Dimension of the irreducible representation of `S_n` labelled by `p`,
/// from `n! Π_{i<j} (λᵢ − λⱼ + j − i) / Π_i (λᵢ + k − i)!`.
pub fn young_dimension(p: &Partition) -> BigUint {
    let lambda = p.parts();
    let k = lambda.len();
    let mut num = factorial(p.size());
    for i in 0..k {
        for j in i + 1..k {
            num *= BigUint::from(lambda[i] - lambda[j] + j - i);
        }
    }
    let den = (0..k).fold(BigUint::one(), |acc, i| acc * factorial(lambda[i] + k - 1 - i));
    num / den
}
