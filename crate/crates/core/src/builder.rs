//! Layer-by-layer construction of coupled states `|h, j, m, i⟩` for chains
//! of identical spins.
//!
//! Layer `h` is obtained from layer `h − 1` by coupling one more particle of
//! spin `s` to every multiplet: for a target `(j, m)` and a parent multiplet
//! `j'` with `|j' − s| ≤ j ≤ j' + s`,
//!
//! ```text
//! |h, j, m, i⟩ = Σ_μ ⟨j', m − μ, s, μ | j, m⟩ |h − 1, j', m − μ, i'⟩ ⊗ |μ⟩
//! ```
//!
//! States inside a cell are numbered by parent block, highest `j'` first,
//! then parents in their own order. Singlets are the `j = m = 0` states of
//! the last layer.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cg::{clebsch_gordan, triangle, HalfInt};
use crate::error::{Error, Result};
use crate::exactnum::{RadicalSum, Rational};

/// `(j, m)` address of a cell within a layer.
type CellKey = (HalfInt, HalfInt);

/// Default amplitude budget for [`build_layers`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Product basis ket, one doubled magnetic number per particle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisWord(Vec<i8>);

impl BasisWord {
    pub fn from_twice(letters: Vec<i8>) -> Self {
        BasisWord(letters)
    }

    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total magnetic number of the ket.
    pub fn magnetic(&self) -> HalfInt {
        HalfInt::from_twice(self.0.iter().map(|&l| l as i32).sum())
    }

    fn pushed(&self, letter: i8) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(letter);
        BasisWord(v)
    }

    fn concat(&self, other: &BasisWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BasisWord(v)
    }
}

impl fmt::Display for BasisWord {
    /// `+-+-` for spin one-half, `-1,0,1` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = self.0.iter().all(|l| l.abs() == 1);
        if half {
            for l in &self.0 {
                f.write_str(if *l > 0 { "+" } else { "-" })?;
            }
            Ok(())
        } else {
            let parts: Vec<String> =
                self.0.iter().map(|&l| HalfInt::from_twice(l as i32).to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// Sparse exact vector over product kets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactVector {
    amps: BTreeMap<BasisWord, RadicalSum>,
}

impl ExactVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_amplitudes(amps: impl IntoIterator<Item = (BasisWord, RadicalSum)>) -> Self {
        let mut v = Self::new();
        for (w, a) in amps {
            v.add(w, &a);
        }
        v
    }

    pub fn get(&self, word: &BasisWord) -> Option<&RadicalSum> {
        self.amps.get(word)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisWord, &RadicalSum)> {
        self.amps.iter()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    /// Accumulate `a` onto the amplitude of `word`, dropping exact zeros.
    pub fn add(&mut self, word: BasisWord, a: &RadicalSum) {
        if a.is_zero() {
            return;
        }
        let entry = self.amps.entry(word);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += a;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(a.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ExactVector, c: &RadicalSum) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.amps {
            self.add(w.clone(), &(a * c));
        }
    }

    pub fn inner(&self, other: &ExactVector) -> RadicalSum {
        let (small, large) =
            if self.amps.len() <= other.amps.len() { (self, other) } else { (other, self) };
        let mut acc = RadicalSum::zero();
        for (w, a) in &small.amps {
            if let Some(b) = large.amps.get(w) {
                acc += a * b;
            }
        }
        acc
    }

    pub fn norm_sq(&self) -> RadicalSum {
        self.inner(self)
    }

    pub fn scaled(&self, c: &RadicalSum) -> ExactVector {
        let mut out = ExactVector::new();
        out.add_scaled(self, c);
        out
    }

    pub fn negated(&self) -> ExactVector {
        ExactVector { amps: self.amps.iter().map(|(w, a)| (w.clone(), -a)).collect() }
    }

    pub fn map_words(&self, f: impl Fn(&BasisWord) -> BasisWord) -> ExactVector {
        let mut out = ExactVector::new();
        for (w, a) in &self.amps {
            out.add(f(w), a);
        }
        out
    }

    pub fn tensor(&self, other: &ExactVector) -> ExactVector {
        let mut out = ExactVector::new();
        for (wa, a) in &self.amps {
            for (wb, b) in &other.amps {
                out.amps.insert(wa.concat(wb), a * b);
            }
        }
        out
    }
}

impl std::ops::Sub for &ExactVector {
    type Output = ExactVector;
    fn sub(self, rhs: &ExactVector) -> ExactVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &RadicalSum::from_integer(-1));
        out
    }
}

/// One coupled state `|h, j, m, i⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoupledState {
    pub(crate) h: usize,
    pub(crate) spin: HalfInt,
    pub(crate) j: HalfInt,
    pub(crate) m: HalfInt,
    pub(crate) i: usize,
    /// Total angular momentum after each particle was added.
    pub(crate) path: Vec<HalfInt>,
    pub(crate) amps: ExactVector,
}

impl CoupledState {
    /// A single particle `|1, s, μ, 1⟩`.
    pub fn single(spin: HalfInt, mu: HalfInt) -> Result<Self> {
        crate::cg::check_pair(spin, mu)?;
        let amps = ExactVector::from_amplitudes([(
            BasisWord(vec![mu.twice as i8]),
            RadicalSum::one(),
        )]);
        Ok(CoupledState { h: 1, spin, j: spin, m: mu, i: 1, path: vec![spin], amps })
    }

    /// Assemble a state from raw parts; amplitudes are taken as given.
    pub fn from_parts(
        spin: HalfInt,
        j: HalfInt,
        m: HalfInt,
        i: usize,
        path: Vec<HalfInt>,
        amps: ExactVector,
    ) -> Self {
        let h = amps.iter().next().map(|(w, _)| w.len()).unwrap_or(path.len());
        CoupledState { h, spin, j, m, i, path, amps }
    }

    pub fn particles(&self) -> usize {
        self.h
    }

    pub fn spin(&self) -> HalfInt {
        self.spin
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn m(&self) -> HalfInt {
        self.m
    }

    /// 1-based index within its `(h, j, m)` cell.
    pub fn index(&self) -> usize {
        self.i
    }

    pub fn path(&self) -> &[HalfInt] {
        &self.path
    }

    pub fn amplitudes(&self) -> &ExactVector {
        &self.amps
    }

    pub fn amplitude(&self, word: &BasisWord) -> RadicalSum {
        self.amps.get(word).cloned().unwrap_or_default()
    }

    pub fn with_amplitudes(&self, amps: ExactVector, m: HalfInt) -> CoupledState {
        CoupledState { amps, m, ..self.clone() }
    }

    /// Tensor product; the result is labelled as a `j = m = 0` state when
    /// both factors are singlets.
    pub fn tensor(&self, other: &CoupledState) -> CoupledState {
        let mut path = self.path.clone();
        path.extend_from_slice(&other.path);
        CoupledState {
            h: self.h + other.h,
            spin: self.spin,
            j: if self.j.twice == 0 { other.j } else { self.j },
            m: self.m + other.m,
            i: 1,
            path,
            amps: self.amps.tensor(&other.amps),
        }
    }
}

/// All coupled states of `h` particles, grouped by `(j, m)`.
#[derive(Clone, Debug)]
pub struct Layer {
    h: usize,
    spin: HalfInt,
    cells: BTreeMap<(HalfInt, HalfInt), Vec<CoupledState>>,
}

impl Layer {
    pub fn particles(&self) -> usize {
        self.h
    }

    pub fn spin(&self) -> HalfInt {
        self.spin
    }

    pub fn cell(&self, j: HalfInt, m: HalfInt) -> &[CoupledState] {
        self.cells.get(&(j, m)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Number of multiplets with total angular momentum `j`.
    pub fn multiplicity(&self, j: HalfInt) -> usize {
        self.cell(j, j).len()
    }

    /// The distinct `j` values present, ascending.
    pub fn angular_momenta(&self) -> Vec<HalfInt> {
        let mut js: Vec<HalfInt> = self.cells.keys().map(|(j, _)| *j).collect();
        js.dedup();
        js
    }

    pub fn cells(&self) -> impl Iterator<Item = ((HalfInt, HalfInt), &[CoupledState])> {
        self.cells.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    pub fn states(&self) -> impl Iterator<Item = &CoupledState> {
        self.cells.values().flatten()
    }

    pub fn amplitude_count(&self) -> usize {
        self.states().map(|s| s.amps.len()).sum()
    }

    /// The first layer: the `2s + 1` single-particle states.
    pub fn single_particle(spin: HalfInt) -> Result<Layer> {
        let mut cells = BTreeMap::new();
        for mu in spin.projections() {
            cells.insert((spin, mu), vec![CoupledState::single(spin, mu)?]);
        }
        Ok(Layer { h: 1, spin, cells })
    }
}

/// Ordered orthonormal singlet states of `n` particles.
#[derive(Clone, Debug)]
pub struct SingletBasis {
    pub n: usize,
    pub spin: HalfInt,
    pub states: Vec<CoupledState>,
}

impl SingletBasis {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

fn letter(mu: HalfInt) -> i8 {
    i8::try_from(mu.twice).expect("magnetic letter out of range")
}

/// Couple one particle of `spin` onto multiplet `(parent_j, parent_i)` of
/// `prev`, producing the component `(j, m)`.
fn couple_into(
    prev: &Layer,
    parent_j: HalfInt,
    parent_i: usize,
    j: HalfInt,
    m: HalfInt,
    index: usize,
) -> Result<CoupledState> {
    let spin = prev.spin;
    if j.twice < 0 {
        return Err(Error::Construction(format!("target j = {j} is negative")));
    }
    if !triangle(parent_j, spin, j) {
        return Err(Error::Construction(format!(
            "cannot couple j = {parent_j} and s = {spin} to j = {j}"
        )));
    }
    crate::cg::check_pair(j, m)?;
    let mut amps = ExactVector::new();
    let mut path = None;
    for mu in spin.projections() {
        let m_prev = m - mu;
        if m_prev.twice.abs() > parent_j.twice {
            continue;
        }
        let coeff = clebsch_gordan(parent_j, m_prev, spin, mu, j, m)?;
        if coeff.is_zero() {
            continue;
        }
        let parent = prev.cell(parent_j, m_prev).get(parent_i - 1).ok_or_else(|| {
            Error::Construction(format!(
                "missing source state |{}, {parent_j}, {m_prev}, {parent_i}⟩",
                prev.h
            ))
        })?;
        if path.is_none() {
            let mut p = parent.path.clone();
            p.push(j);
            path = Some(p);
        }
        let l = letter(mu);
        for (w, a) in parent.amps.iter() {
            amps.amps.insert(w.pushed(l), a * &coeff);
        }
    }
    let path = path.ok_or_else(|| {
        Error::Construction(format!("no contribution to |{}, {j}, {m}⟩", prev.h + 1))
    })?;
    if let Some((w, _)) = amps.iter().find(|(w, _)| w.magnetic() != m) {
        return Err(Error::Construction(format!("ket {w} violates the m = {m} sector")));
    }
    Ok(CoupledState { h: prev.h + 1, spin, j, m, i: index, path, amps })
}

fn parent_of<'a>(prev: &'a Layer, parent: &CoupledState) -> Result<&'a CoupledState> {
    if parent.h != prev.h || parent.spin != prev.spin {
        return Err(Error::Construction("parent state does not belong to the layer".into()));
    }
    prev.cell(parent.j, parent.m)
        .get(parent.i.wrapping_sub(1))
        .ok_or_else(|| Error::Construction("parent state not found in layer".into()))
}

/// `j → j + s`: the `(j + s, m)` component built on `parent`'s multiplet.
///
/// The returned index is the parent's; [`build_layers`] assigns final
/// positions within a cell.
pub fn couple_up(prev: &Layer, parent: &CoupledState, m: HalfInt) -> Result<CoupledState> {
    let parent = parent_of(prev, parent)?;
    couple_into(prev, parent.j, parent.i, parent.j + prev.spin, m, parent.i)
}

/// `j → j − s`.
pub fn couple_down(prev: &Layer, parent: &CoupledState, m: HalfInt) -> Result<CoupledState> {
    let parent = parent_of(prev, parent)?;
    let j = parent.j - prev.spin;
    if j.twice < 0 {
        return Err(Error::Construction(format!("cannot lower j = {} below zero", parent.j)));
    }
    couple_into(prev, parent.j, parent.i, j, m, parent.i)
}

/// `j → j`, available for integer spin only.
pub fn couple_level(prev: &Layer, parent: &CoupledState, m: HalfInt) -> Result<CoupledState> {
    if !prev.spin.is_integer() {
        return Err(Error::UnsupportedPath(format!(
            "horizontal coupling needs integer spin, got {}",
            prev.spin
        )));
    }
    let parent = parent_of(prev, parent)?;
    if !triangle(parent.j, prev.spin, parent.j) {
        return Err(Error::Construction(format!(
            "j = {} cannot be coupled horizontally with s = {}",
            parent.j, prev.spin
        )));
    }
    couple_into(prev, parent.j, parent.i, parent.j, m, parent.i)
}

/// Allowed total angular momenta of `h` particles, ascending.
fn reachable(h: usize, spin: HalfInt) -> impl Iterator<Item = HalfInt> {
    let top = h as i32 * spin.twice;
    let start = top % 2;
    (start..=top).step_by(2).map(HalfInt::from_twice)
}

/// Number of multiplets of `h` particles with total angular momentum `j`
/// for every `h ≤ h_max`; entry `h - 1` of the result is layer `h`.
pub fn count_table(h_max: usize, spin: HalfInt) -> Vec<BTreeMap<HalfInt, BigUint>> {
    let mut table: Vec<BTreeMap<HalfInt, BigUint>> = Vec::with_capacity(h_max);
    if h_max == 0 {
        return table;
    }
    table.push(BTreeMap::from([(spin, BigUint::from(1u32))]));
    for h in 2..=h_max {
        let prev = &table[h - 2];
        let mut row = BTreeMap::new();
        for j in reachable(h, spin) {
            let mut total = BigUint::zero();
            for (jp, c) in prev {
                if triangle(*jp, spin, j) {
                    total += c;
                }
            }
            if !total.is_zero() {
                row.insert(j, total);
            }
        }
        table.push(row);
    }
    table
}

/// Number of multiplets of `h` spin-`s` particles with total angular
/// momentum `j`, by the path recurrence alone.
pub fn count_states(j: HalfInt, h: usize, spin: HalfInt) -> BigUint {
    if h == 0 {
        return BigUint::zero();
    }
    count_table(h, spin)[h - 1].get(&j).cloned().unwrap_or_default()
}

/// Number of kets of `h` particles with total magnetic number `m`, per `m`.
fn sector_sizes(h: usize, spin: HalfInt) -> BTreeMap<i32, BigUint> {
    let mut sizes = BTreeMap::from([(0i32, BigUint::from(1u32))]);
    for _ in 0..h {
        let mut next: BTreeMap<i32, BigUint> = BTreeMap::new();
        for (m, c) in &sizes {
            for mu in spin.projections() {
                *next.entry(m + mu.twice).or_default() += c;
            }
        }
        sizes = next;
    }
    sizes
}

fn bound(n: usize, h: usize, spin: HalfInt, prune: bool) -> i32 {
    if prune {
        (n - h) as i32 * spin.twice
    } else {
        i32::MAX
    }
}

/// Upper bound on the number of nonzero amplitudes [`build_layers`] stores.
pub fn predicted_amplitudes(n: usize, spin: HalfInt, prune: bool) -> BigUint {
    let counts = count_table(n, spin);
    let mut total = BigUint::zero();
    for h in 1..=n {
        let sizes = sector_sizes(h, spin);
        let limit = bound(n, h, spin, prune);
        for (j, c) in &counts[h - 1] {
            if j.twice > limit {
                continue;
            }
            for m in j.projections() {
                if let Some(s) = sizes.get(&m.twice) {
                    total += c * s;
                }
            }
        }
    }
    total
}

/// Build layers `1..=n` with the default amplitude budget.
pub fn build_layers(n: usize, spin: HalfInt, prune_for_singlets: bool) -> Result<Vec<Layer>> {
    build_layers_with_budget(n, spin, prune_for_singlets, DEFAULT_BUDGET)
}

/// Build layers `1..=n`. With `prune_for_singlets`, layer `h` only keeps
/// `j ≤ (n − h)·s`, the states that can still descend to `j = 0` at `n`.
pub fn build_layers_with_budget(
    n: usize,
    spin: HalfInt,
    prune_for_singlets: bool,
    budget: u64,
) -> Result<Vec<Layer>> {
    if n == 0 {
        return Err(Error::Domain("need at least one particle".into()));
    }
    if spin.twice < 0 {
        return Err(Error::Domain(format!("negative spin {spin}")));
    }
    if spin.twice > i8::MAX as i32 {
        return Err(Error::Domain(format!("spin {spin} too large for packed kets")));
    }
    let predicted = predicted_amplitudes(n, spin, prune_for_singlets);
    if predicted.to_u64().is_none_or(|p| p > budget) {
        return Err(Error::Capacity { predicted: predicted.to_string(), budget });
    }

    let mut layers = vec![Layer::single_particle(spin)?];
    if prune_for_singlets {
        let limit = bound(n, 1, spin, true);
        layers[0].cells.retain(|(j, _), _| j.twice <= limit);
    }
    for h in 2..=n {
        let prev = layers.last().unwrap();
        let limit = bound(n, h, spin, prune_for_singlets);
        let mut targets = Vec::new();
        for j in reachable(h, spin).filter(|j| j.twice <= limit) {
            for m in j.projections() {
                targets.push((j, m));
            }
        }
        let built: Vec<Result<(CellKey, Vec<CoupledState>)>> = targets
            .par_iter()
            .map(|&(j, m)| {
                let mut cell = Vec::new();
                let mut jp = j + spin;
                while jp.twice >= (j - spin).twice {
                    if jp.twice >= 0 && triangle(jp, spin, j) {
                        for pi in 1..=prev.multiplicity(jp) {
                            let index = cell.len() + 1;
                            cell.push(couple_into(prev, jp, pi, j, m, index)?);
                        }
                    }
                    jp = jp - HalfInt::ONE;
                }
                Ok(((j, m), cell))
            })
            .collect();
        let mut cells = BTreeMap::new();
        for item in built {
            let (key, cell) = item?;
            if !cell.is_empty() {
                cells.insert(key, cell);
            }
        }
        layers.push(Layer { h, spin, cells });
    }
    Ok(layers)
}

/// All `j = m = 0` states of `n` particles, in enumeration order.
pub fn singlet_basis(n: usize, spin: HalfInt) -> Result<SingletBasis> {
    singlet_basis_with_budget(n, spin, DEFAULT_BUDGET)
}

pub fn singlet_basis_with_budget(n: usize, spin: HalfInt, budget: u64) -> Result<SingletBasis> {
    if (n as i64 * spin.twice as i64) % 2 != 0 {
        return Ok(SingletBasis { n, spin, states: Vec::new() });
    }
    let layers = build_layers_with_budget(n, spin, true, budget)?;
    let states = layers[n - 1].cell(HalfInt::ZERO, HalfInt::ZERO).to_vec();
    Ok(SingletBasis { n, spin, states })
}

/// Tensor product of existing states, in order.
pub fn product_state(factors: &[CoupledState]) -> Result<CoupledState> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::Domain("empty product".into()))?;
    let mut out = first.clone();
    for f in rest {
        if f.spin != out.spin {
            return Err(Error::Domain("mixed spins in product state".into()));
        }
        out = out.tensor(f);
    }
    Ok(out)
}

/// Product of the unique singlets of the given block sizes.
///
/// A block size is valid when exactly one singlet exists for it: 2 for
/// spin one-half, 2 or 3 for spin one.
pub fn zigzag_state(spin: HalfInt, blocks: &[usize]) -> Result<CoupledState> {
    let mut factors = Vec::with_capacity(blocks.len());
    for &b in blocks {
        if b == 0 || count_states(HalfInt::ZERO, b, spin) != BigUint::from(1u32) {
            return Err(Error::Domain(format!(
                "block of {b} spin-{spin} particles has no unique singlet"
            )));
        }
        let basis = singlet_basis(b, spin)?;
        factors.push(basis.states.into_iter().next().expect("counted singlet"));
    }
    product_state(&factors)
}

fn ladder(state: &ExactVector, spin: HalfInt, raise: bool) -> ExactVector {
    let s = spin.twice;
    let step: i8 = if raise { 2 } else { -2 };
    let mut out = ExactVector::new();
    for (w, a) in state.iter() {
        for k in 0..w.len() {
            let m = w.0[k] as i32;
            // 4·(s(s+1) − m(m±1)) in doubled units
            let four_sq = if raise { (s - m) * (s + m + 2) } else { (s + m) * (s - m + 2) };
            if four_sq == 0 {
                continue;
            }
            let coeff = RadicalSum::sqrt_rational(&Rational::new(four_sq.into(), 4.into()))
                .expect("non-negative ladder coefficient");
            let mut nw = w.clone();
            nw.0[k] += step;
            out.add(nw, &(a * &coeff));
        }
    }
    out
}

/// `J₊ = Σᵢ J₊⁽ⁱ⁾` applied exactly; the result is not normalized.
pub fn apply_total_raising(state: &CoupledState) -> ExactVector {
    ladder(&state.amps, state.spin, true)
}

/// `J₋ = Σᵢ J₋⁽ⁱ⁾` applied exactly.
pub fn apply_total_lowering(state: &CoupledState) -> ExactVector {
    ladder(&state.amps, state.spin, false)
}

/// Exact Gram matrix `⟨a|b⟩` of a list of states.
pub fn gram_matrix(states: &[CoupledState]) -> Vec<Vec<RadicalSum>> {
    states
        .iter()
        .map(|a| states.iter().map(|b| a.amps.inner(&b.amps)).collect())
        .collect()
}

pub fn is_orthonormal(states: &[CoupledState]) -> bool {
    gram_matrix(states).iter().enumerate().all(|(r, row)| {
        row.iter().enumerate().all(|(c, v)| {
            if r == c {
                *v == RadicalSum::one()
            } else {
                v.is_zero()
            }
        })
    })
}

/// Expansion coefficients of `v` in an orthonormal `basis`, or `None` when
/// `v` is not exactly in its span.
pub fn span_coefficients(basis: &[CoupledState], v: &ExactVector) -> Option<Vec<RadicalSum>> {
    let coeffs: Vec<RadicalSum> = basis.iter().map(|b| b.amps.inner(v)).collect();
    let mut residual = v.clone();
    for (b, c) in basis.iter().zip(&coeffs) {
        residual.add_scaled(&b.amps, &(-c));
    }
    residual.is_zero().then_some(coeffs)
}
