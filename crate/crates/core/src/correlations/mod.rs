//! Floating-point spin correlations of spin-½ chains: state vectors,
//! projectors along arbitrary directions, joint probabilities and parity
//! expectations.
//!
//! Kets are ordered as Kronecker products with `|+⟩ = (1, 0)` and
//! `|−⟩ = (0, 1)`; the first particle is the most significant index bit.

mod closed_form;
mod scan;
mod selection;

pub use closed_form::{closed_form_e, selected_expectation_closed_form, ClosedForm, SelectedRow};
pub use scan::{format_csv, grid_point, scan, Curve, ScanRow};
pub use selection::{
    reconcile_selection, selected_expectation_candidates, Candidate, PartialSigns,
    SelectionCandidates, SelectionReport,
};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::builder::CoupledState;
use crate::error::{Error, Result};
use crate::exactnum::RadicalSum;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const UNIT_TOL: f64 = 1e-12;

/// Measurement direction: polar angle `theta` in the x–z plane and
/// azimuth `phi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    /// Checked constructor, `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        use std::f64::consts::{PI, TAU};
        if !(0.0..=PI).contains(&theta) || !(0.0..TAU).contains(&phi) {
            return Err(Error::Domain(format!("direction ({theta}, {phi}) out of range")));
        }
        Ok(Direction { theta, phi })
    }

    /// Unchecked angles; the spin observable is periodic in both, so
    /// negative or wrapped polar angles are meaningful too.
    pub const fn raw(theta: f64, phi: f64) -> Self {
        Direction { theta, phi }
    }

    pub const fn polar(theta: f64) -> Self {
        Direction { theta, phi: 0.0 }
    }
}

/// One direction per particle.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionSet(Vec<Direction>);

impl DirectionSet {
    pub fn new(dirs: Vec<Direction>) -> Self {
        DirectionSet(dirs)
    }

    pub fn from_angles(thetas: &[f64], phis: &[f64]) -> Result<Self> {
        if thetas.len() != phis.len() {
            return Err(Error::Domain("theta and phi lists differ in length".into()));
        }
        Ok(DirectionSet(thetas.iter().zip(phis).map(|(&t, &p)| Direction::raw(t, p)).collect()))
    }

    pub fn polar(thetas: &[f64]) -> Self {
        DirectionSet(thetas.iter().map(|&t| Direction::polar(t)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Direction] {
        &self.0
    }

    /// Direction of particle `i` (1-based).
    pub fn get(&self, i: usize) -> Direction {
        self.0[i - 1]
    }
}

/// Outcome of every particle, `+1` or `−1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OutcomeSigns(Vec<i8>);

impl OutcomeSigns {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::Domain("outcome signs must be +1 or -1".into()));
        }
        Ok(OutcomeSigns(signs))
    }

    /// All `2^n` patterns, `+` before `−` in every position.
    pub fn all(n: usize) -> impl Iterator<Item = OutcomeSigns> {
        (0..1usize << n).map(move |bits| {
            OutcomeSigns(
                (0..n).map(|k| if bits >> (n - 1 - k) & 1 == 0 { 1 } else { -1 }).collect(),
            )
        })
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn product(&self) -> i64 {
        self.0.iter().map(|&s| s as i64).product()
    }
}

/// Pure state of `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector(CVector);

impl StateVector {
    /// Wraps `v`; the length must be a power of two and the norm one.
    pub fn new(v: CVector) -> Result<Self> {
        if v.len() < 2 || !v.len().is_power_of_two() {
            return Err(Error::Domain(format!("length {} is not a qubit register", v.len())));
        }
        if (v.norm() - 1.0).abs() > UNIT_TOL {
            return Err(Error::Domain(format!("state norm {} is not one", v.norm())));
        }
        Ok(StateVector(v))
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(CVector::from_iterator(values.len(), values.iter().map(|&x| Complex64::new(x, 0.0))))
    }

    pub fn qubits(&self) -> usize {
        self.0.len().trailing_zeros() as usize
    }

    pub fn as_vector(&self) -> &CVector {
        &self.0
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.0.dotc(&other.0)
    }

    pub fn density(&self) -> DensityOperator {
        DensityOperator(&self.0 * self.0.adjoint())
    }
}

/// Density operator of `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator(CMatrix);

impl DensityOperator {
    /// Wraps `m` after checking hermiticity and unit trace.
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() || !m.nrows().is_power_of_two() {
            return Err(Error::Domain("density operator must be a square qubit matrix".into()));
        }
        let rho = DensityOperator(m);
        if rho.hermiticity_defect() > UNIT_TOL || (rho.trace() - 1.0).abs() > UNIT_TOL {
            return Err(Error::Domain("density operator must be Hermitian with unit trace".into()));
        }
        Ok(rho)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn qubits(&self) -> usize {
        self.0.nrows().trailing_zeros() as usize
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (&self.0 - self.0.adjoint()).camax()
    }

    pub fn idempotency_defect(&self) -> f64 {
        (&self.0 * &self.0 - &self.0).camax()
    }

    /// `Tr[ρ A]`.
    pub fn expectation(&self, a: &CMatrix) -> Complex64 {
        (&self.0 * a).trace()
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn eye(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    a.kronecker(b)
}

/// Basis vector `|+⟩` (`up = true`) or `|−⟩`.
pub fn basis_ket(up: bool) -> CVector {
    if up {
        CVector::from_vec(vec![c(1.0), c(0.0)])
    } else {
        CVector::from_vec(vec![c(0.0), c(1.0)])
    }
}

/// `(|+−⟩ − |−+⟩)/√2`.
pub fn bell_vector() -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    StateVector(CVector::from_vec(vec![c(0.0), c(h), c(-h), c(0.0)]))
}

/// The two four-particle singlets, `1` built through `j = 1` in the middle
/// and `2` the product of two Bell pairs.
pub fn singlet_vector(index: u8) -> Result<StateVector> {
    match index {
        1 => {
            let a = 1.0 / 3f64.sqrt();
            let b = -1.0 / (2.0 * 3f64.sqrt());
            let mut v = vec![0.0; 16];
            v[3] = a;
            v[12] = a;
            for k in [5, 6, 9, 10] {
                v[k] = b;
            }
            StateVector::from_real(&v)
        }
        2 => {
            let bell = bell_vector();
            Ok(StateVector(kron_vec(bell.as_vector(), bell.as_vector())))
        }
        _ => Err(Error::Domain(format!("no four-particle singlet #{index}"))),
    }
}

/// `sin τ · Ψ₁ + cos τ · Ψ₂`.
pub fn general_singlet(tau: f64) -> StateVector {
    let v1 = singlet_vector(1).expect("index 1");
    let v2 = singlet_vector(2).expect("index 2");
    StateVector(v1.0 * c(tau.sin()) + v2.0 * c(tau.cos()))
}

/// `σ(θ, φ) = [[cos θ, e^{−iφ} sin θ], [e^{iφ} sin θ, −cos θ]]`.
pub fn pauli_direction(d: Direction) -> CMatrix {
    let (st, ct) = d.theta.sin_cos();
    CMatrix::from_row_slice(
        2,
        2,
        &[
            c(ct),
            Complex64::from_polar(st, -d.phi),
            Complex64::from_polar(st, d.phi),
            c(-ct),
        ],
    )
}

/// Single-particle projector `½(I ± σ(d))`.
pub fn single_projector(sign: i8, d: Direction) -> CMatrix {
    (eye(2) + pauli_direction(d) * c(sign as f64)) * c(0.5)
}

fn check_len(n: usize, dirs: &DirectionSet) -> Result<()> {
    if dirs.len() != n {
        return Err(Error::Domain(format!("expected {n} directions, got {}", dirs.len())));
    }
    Ok(())
}

/// `F = ⊗ᵢ ½(I + sᵢ σ(dᵢ))`.
pub fn projector(signs: &OutcomeSigns, dirs: &DirectionSet) -> Result<CMatrix> {
    check_len(signs.len(), dirs)?;
    let mut out = eye(1);
    for (&s, &d) in signs.as_slice().iter().zip(dirs.as_slice()) {
        out = kron(&out, &single_projector(s, d));
    }
    Ok(out)
}

/// `⊗ᵢ σ(dᵢ)`.
pub fn parity_observable(dirs: &DirectionSet) -> CMatrix {
    dirs.as_slice()
        .iter()
        .fold(eye(1), |acc, &d| kron(&acc, &pauli_direction(d)))
}

/// `P = Tr[ρ F]`.
pub fn joint_probability(
    rho: &DensityOperator,
    signs: &OutcomeSigns,
    dirs: &DirectionSet,
) -> Result<f64> {
    check_len(rho.qubits(), dirs)?;
    Ok(rho.expectation(&projector(signs, dirs)?).re)
}

/// All `2^n` joint probabilities, in [`OutcomeSigns::all`] order.
pub fn joint_distribution(
    rho: &DensityOperator,
    dirs: &DirectionSet,
) -> Result<Vec<(OutcomeSigns, f64)>> {
    let n = rho.qubits();
    check_len(n, dirs)?;
    OutcomeSigns::all(n)
        .map(|s| {
            let p = joint_probability(rho, &s, dirs)?;
            Ok((s, p))
        })
        .collect()
}

/// `E = Σ (s₁⋯sₙ) P = Tr[ρ ⊗σ]`.
pub fn parity_expectation(rho: &DensityOperator, dirs: &DirectionSet) -> Result<f64> {
    check_len(rho.qubits(), dirs)?;
    Ok(rho.expectation(&parity_observable(dirs)).re)
}

/// Expectation of the product of condensed observables: the outcomes in
/// each block are multiplied, then the block values. `blocks` must
/// partition `1..=n`.
pub fn condensed_expectation(
    rho: &DensityOperator,
    dirs: &DirectionSet,
    blocks: &[Vec<usize>],
) -> Result<f64> {
    let n = rho.qubits();
    let mut seen = vec![false; n];
    for &i in blocks.iter().flatten() {
        if i == 0 || i > n || std::mem::replace(&mut seen[i - 1], true) {
            return Err(Error::Domain("blocks do not partition the particles".into()));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Domain("blocks do not cover every particle".into()));
    }
    let mut total = 0.0;
    for (signs, p) in joint_distribution(rho, dirs)? {
        let value: i64 = blocks
            .iter()
            .map(|b| b.iter().map(|&i| signs.as_slice()[i - 1] as i64).product::<i64>())
            .product();
        total += value as f64 * p;
    }
    Ok(total)
}

/// `E` as the plain sum `Σ (s₁⋯sₙ) P` over the joint distribution.
pub fn parity_from_distribution(rho: &DensityOperator, dirs: &DirectionSet) -> Result<f64> {
    let blocks: Vec<Vec<usize>> = (1..=rho.qubits()).map(|i| vec![i]).collect();
    condensed_expectation(rho, dirs, &blocks)
}

/// Single-particle unitary of the rotation `(θ, φ)`:
/// `|+⟩ ↦ e^{iφ/2}(cos θ/2 |+⟩ − sin θ/2 |−⟩)`,
/// `|−⟩ ↦ e^{−iφ/2}(sin θ/2 |+⟩ + cos θ/2 |−⟩)`.
pub fn rotation_unitary(theta: f64, phi: f64) -> CMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    let ep = Complex64::from_polar(1.0, phi / 2.0);
    let em = Complex64::from_polar(1.0, -phi / 2.0);
    CMatrix::from_row_slice(2, 2, &[ep * co, em * s, -ep * s, em * co])
}

/// `‖(u ⊗ ⋯ ⊗ u) v − v‖`.
pub fn rotation_invariance_check(v: &StateVector, u: &CMatrix) -> Result<f64> {
    if u.shape() != (2, 2) || (u.adjoint() * u - eye(2)).camax() > UNIT_TOL {
        return Err(Error::Domain("expected a 2x2 unitary".into()));
    }
    let full = (0..v.qubits()).fold(eye(1), |acc, _| kron(&acc, u));
    Ok((full * &v.0 - &v.0).norm())
}

/// Float image of an exact spin-½ state.
pub fn to_state_vector(state: &CoupledState) -> Result<StateVector> {
    if state.spin().twice != 1 {
        return Err(Error::Domain("only spin-1/2 states map to qubit registers".into()));
    }
    let n = state.particles();
    let mut v = CVector::zeros(1 << n);
    for (w, a) in state.amplitudes().iter() {
        let idx = w
            .letters()
            .iter()
            .fold(0usize, |acc, &l| (acc << 1) | usize::from(l < 0));
        v[idx] = c(RadicalSum::to_f64(a));
    }
    StateVector::new(v)
}
