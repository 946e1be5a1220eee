//! Exact Clebsch-Gordan coefficients in the Condon-Shortley convention.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{RadicalSum, Rational};

/// A half-integer quantum number stored as its doubled value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt {
    pub twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt { twice }
    }

    pub const fn int(n: i32) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn abs(self) -> Self {
        HalfInt::from_twice(self.twice.abs())
    }

    /// `self.twice / 2` for integer values.
    fn half_of_twice(self) -> i64 {
        debug_assert!(self.is_integer());
        (self.twice / 2) as i64
    }

    /// The values `-self, -self+1, …, self`.
    pub fn projections(self) -> impl Iterator<Item = HalfInt> + Clone {
        let j = self.twice;
        (-j..=j).step_by(2).map(HalfInt::from_twice)
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Check that `(j, m)` is a legal angular momentum pair.
pub fn check_pair(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.twice < 0 {
        return Err(Error::Domain(format!("negative angular momentum j = {j}")));
    }
    if m.twice.abs() > j.twice {
        return Err(Error::Domain(format!("|m| > j for j = {j}, m = {m}")));
    }
    if (j.twice - m.twice) % 2 != 0 {
        return Err(Error::Domain(format!("j - m not integral for j = {j}, m = {m}")));
    }
    Ok(())
}

/// Whether `j` can result from coupling `j1` and `j2`.
pub fn triangle(j1: HalfInt, j2: HalfInt, j: HalfInt) -> bool {
    (j1.twice - j2.twice).abs() <= j.twice
        && j.twice <= j1.twice + j2.twice
        && (j1.twice + j2.twice + j.twice) % 2 == 0
}

fn factorial(n: i64) -> BigInt {
    static TABLE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| RwLock::new(vec![BigInt::one()]));
    let n = n as usize;
    if let Some(v) = table.read().unwrap().get(n) {
        return v.clone();
    }
    let mut t = table.write().unwrap();
    while t.len() <= n {
        let next = t.last().unwrap() * BigInt::from(t.len());
        t.push(next);
    }
    t[n].clone()
}

/// Prime exponents of a rational built from factorials and small integers.
#[derive(Default)]
struct PrimeExponents(HashMap<u64, i64>);

impl PrimeExponents {
    fn add_integer(&mut self, mut n: u64, sign: i64) {
        let mut p = 2;
        while p * p <= n {
            while n.is_multiple_of(p) {
                *self.0.entry(p).or_default() += sign;
                n /= p;
            }
            p += 1;
        }
        if n > 1 {
            *self.0.entry(n).or_default() += sign;
        }
    }

    /// Legendre: the exponent of `p` in `n!` is `Σ_k ⌊n/pᵏ⌋`.
    fn add_factorial(&mut self, n: i64, sign: i64) {
        let n = n as u64;
        for p in 2..=n {
            if (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
                continue;
            }
            let mut e = 0;
            let mut pk = p;
            while pk <= n {
                e += n / pk;
                pk = match pk.checked_mul(p) {
                    Some(v) => v,
                    None => break,
                };
            }
            *self.0.entry(p).or_default() += sign * e as i64;
        }
    }

    /// Split `√(Π pᵉ)` into `s·√r` with `s` rational and `r` square-free.
    fn sqrt_split(&self) -> Result<(Rational, u64)> {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut radicand: u64 = 1;
        for (&p, &e) in &self.0 {
            let half = e.div_euclid(2);
            let pb = BigInt::from(p);
            if half > 0 {
                num *= num_traits::pow(pb, half as usize);
            } else if half < 0 {
                den *= num_traits::pow(pb, (-half) as usize);
            }
            if e.rem_euclid(2) == 1 {
                radicand = radicand
                    .checked_mul(p)
                    .ok_or_else(|| Error::Overflow("Clebsch-Gordan radicand".into()))?;
            }
        }
        Ok((Rational::new(num, den), radicand))
    }
}

fn cache() -> &'static RwLock<HashMap<[i32; 6], RadicalSum>> {
    static CACHE: OnceLock<RwLock<HashMap<[i32; 6], RadicalSum>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `⟨j1 m1 j2 m2 | j m⟩` as an exact one-term [`RadicalSum`].
///
/// Zero when `m1 + m2 ≠ m` or the triangle rule fails; a domain error when
/// any `(j, m)` pair is malformed.
pub fn clebsch_gordan(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> Result<RadicalSum> {
    check_pair(j1, m1)?;
    check_pair(j2, m2)?;
    check_pair(j, m)?;
    if m1.twice + m2.twice != m.twice || !triangle(j1, j2, j) {
        return Ok(RadicalSum::zero());
    }
    let key = [j1.twice, m1.twice, j2.twice, m2.twice, j.twice, m.twice];
    if let Some(v) = cache().read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let value = racah(j1, m1, j2, m2, j, m)?;
    cache().write().unwrap().insert(key, value.clone());
    Ok(value)
}

fn racah(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> Result<RadicalSum> {
    // every combination below is an integer once the triangle rule holds
    let a = (j1 + j2 - j).half_of_twice();
    let b = (j1 - j2 + j).half_of_twice();
    let c = (j2 - j1 + j).half_of_twice();
    let d = (j1 + j2 + j).half_of_twice() + 1;
    let j1pm1 = (j1 + m1).half_of_twice();
    let j1mm1 = (j1 - m1).half_of_twice();
    let j2pm2 = (j2 + m2).half_of_twice();
    let j2mm2 = (j2 - m2).half_of_twice();
    let jpm = (j + m).half_of_twice();
    let jmm = (j - m).half_of_twice();

    let mut pre = PrimeExponents::default();
    pre.add_integer((j.twice + 1) as u64, 1);
    for n in [a, b, c, j1pm1, j1mm1, j2pm2, j2mm2, jpm, jmm] {
        pre.add_factorial(n, 1);
    }
    pre.add_factorial(d, -1);
    let (scale, radicand) = pre.sqrt_split()?;

    // j - j2 + m1 and j - j1 - m2
    let t1 = (j - j2 + m1).half_of_twice();
    let t2 = (j - j1 - m2).half_of_twice();
    let k_min = 0.max(-t1).max(-t2);
    let k_max = a.min(j1mm1).min(j2pm2);
    let mut sum = Rational::zero();
    for k in k_min..=k_max {
        let den = factorial(k)
            * factorial(a - k)
            * factorial(j1mm1 - k)
            * factorial(j2pm2 - k)
            * factorial(t1 + k)
            * factorial(t2 + k);
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        sum += Rational::new(sign, den);
    }
    Ok(RadicalSum::from_square_free(sum * scale, radicand))
}

/// Whether `⟨j1,−m1,j2,−m2|j,−m⟩ = (−1)^(j1+j2−j)·⟨j1 m1 j2 m2|j m⟩` holds
/// exactly for the given arguments.
pub fn cg_sign_flip_check(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> Result<bool> {
    let direct = clebsch_gordan(j1, m1, j2, m2, j, m)?;
    let flipped = clebsch_gordan(j1, -m1, j2, -m2, j, -m)?;
    let phase_twice = j1.twice + j2.twice - j.twice;
    if phase_twice % 2 != 0 {
        // parity-forbidden coupling: both sides vanish
        return Ok(direct.is_zero() && flipped.is_zero());
    }
    let expected = if (phase_twice / 2) % 2 == 0 { direct } else { -direct };
    Ok(flipped == expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn sqrt_q(sign: i64, n: i64, d: i64) -> RadicalSum {
        let v = RadicalSum::sqrt_rational(&Rational::new(n.into(), d.into())).unwrap();
        if sign < 0 {
            -v
        } else {
            v
        }
    }

    #[test]
    fn bell_coefficients() {
        assert_eq!(clebsch_gordan(h(1), h(1), h(1), h(-1), h(0), h(0)).unwrap(), sqrt_q(1, 1, 2));
        assert_eq!(clebsch_gordan(h(1), h(-1), h(1), h(1), h(0), h(0)).unwrap(), sqrt_q(-1, 1, 2));
        assert_eq!(clebsch_gordan(h(1), h(1), h(1), h(1), h(2), h(2)).unwrap(), RadicalSum::one());
    }

    #[test]
    fn spin_one_singlet_coefficients() {
        assert_eq!(clebsch_gordan(h(2), h(2), h(2), h(-2), h(0), h(0)).unwrap(), sqrt_q(1, 1, 3));
        assert_eq!(clebsch_gordan(h(2), h(0), h(2), h(0), h(0), h(0)).unwrap(), sqrt_q(-1, 1, 3));
        assert_eq!(clebsch_gordan(h(2), h(0), h(2), h(0), h(4), h(0)).unwrap(), sqrt_q(1, 2, 3));
        assert_eq!(clebsch_gordan(h(2), h(2), h(2), h(0), h(2), h(2)).unwrap(), sqrt_q(1, 1, 2));
        assert_eq!(clebsch_gordan(h(2), h(0), h(2), h(2), h(2), h(2)).unwrap(), sqrt_q(-1, 1, 2));
    }

    #[test]
    fn selection_rules_give_zero() {
        assert!(clebsch_gordan(h(1), h(1), h(1), h(1), h(0), h(0)).unwrap().is_zero());
        assert!(clebsch_gordan(h(2), h(0), h(2), h(0), h(6), h(0)).unwrap().is_zero());
        assert!(clebsch_gordan(h(2), h(0), h(2), h(0), h(2), h(0)).unwrap().is_zero());
    }

    #[test]
    fn malformed_pairs_are_domain_errors() {
        assert!(matches!(
            clebsch_gordan(h(1), h(3), h(1), h(-1), h(0), h(0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            clebsch_gordan(h(1), h(0), h(1), h(0), h(0), h(0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sign_flip_examples() {
        assert!(cg_sign_flip_check(h(1), h(1), h(1), h(-1), h(0), h(0)).unwrap());
        assert!(cg_sign_flip_check(h(2), h(2), h(2), h(-2), h(0), h(0)).unwrap());
        assert!(cg_sign_flip_check(h(3), h(3), h(2), h(2), h(5), h(5)).unwrap());
    }

    /// All valid `(j1, m1, j2, m2, j, m)` with twice-values `≤ limit`.
    fn tuples(limit: i32) -> Vec<[HalfInt; 6]> {
        let mut out = Vec::new();
        for tj1 in 0..=limit {
            for tj2 in 0..=limit {
                for tj in 0..=limit {
                    for m1 in h(tj1).projections() {
                        for m2 in h(tj2).projections() {
                            for m in h(tj).projections() {
                                out.push([h(tj1), m1, h(tj2), m2, h(tj), m]);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn exhaustive_selection_and_sign_flip() {
        for [j1, m1, j2, m2, j, m] in tuples(8) {
            let c = clebsch_gordan(j1, m1, j2, m2, j, m).unwrap();
            if m1 + m2 != m || !triangle(j1, j2, j) {
                assert!(c.is_zero());
            }
            assert!(c.num_terms() <= 1);
            assert!(cg_sign_flip_check(j1, m1, j2, m2, j, m).unwrap());
        }
    }

    #[test]
    fn orthonormality_exact() {
        for tj1 in 0..=6 {
            for tj2 in 0..=6 {
                let (j1, j2) = (h(tj1), h(tj2));
                let allowed: Vec<HalfInt> = (0..=tj1 + tj2)
                    .map(h)
                    .filter(|&j| triangle(j1, j2, j))
                    .collect();
                for &ja in &allowed {
                    for &jb in &allowed {
                        for m in ja.min(jb).projections() {
                            let mut acc = RadicalSum::zero();
                            for m1 in j1.projections() {
                                let m2 = m - m1;
                                if m2.twice.abs() > j2.twice {
                                    continue;
                                }
                                let a = clebsch_gordan(j1, m1, j2, m2, ja, m).unwrap();
                                let b = clebsch_gordan(j1, m1, j2, m2, jb, m).unwrap();
                                acc += &a * &b;
                            }
                            let expected =
                                if ja == jb { RadicalSum::one() } else { RadicalSum::zero() };
                            assert_eq!(acc, expected, "j1={j1} j2={j2} {ja} {jb} m={m}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn spin_half_coupling_symmetries() {
        // j -> j+1/2 keeps the coefficients under a global sign flip,
        // j+1/2 -> j flips all of them
        for tj in 0..=9 {
            let j = h(tj);
            let up = j + HalfInt::HALF;
            for m in up.projections() {
                for mu in [h(1), h(-1)] {
                    let m_prev = m - mu;
                    if m_prev.twice.abs() > j.twice {
                        continue;
                    }
                    let a = clebsch_gordan(j, m_prev, HalfInt::HALF, mu, up, m).unwrap();
                    let b = clebsch_gordan(j, -m_prev, HalfInt::HALF, -mu, up, -m).unwrap();
                    assert_eq!(a, b);
                }
            }
            for m in j.projections() {
                for mu in [h(1), h(-1)] {
                    let m_prev = m - mu;
                    if m_prev.twice.abs() > up.twice {
                        continue;
                    }
                    let a = clebsch_gordan(up, m_prev, HalfInt::HALF, mu, j, m).unwrap();
                    let b = clebsch_gordan(up, -m_prev, HalfInt::HALF, -mu, j, -m).unwrap();
                    assert_eq!(a, -b);
                }
            }
        }
    }

    #[test]
    fn floats_match_closed_form_for_stretched_partner() {
        // ⟨j, j, 1/2, -1/2 | j+1/2, j⟩ = 1/sqrt(2j+1)
        for tj in 1..=20 {
            let j = h(tj);
            let c = clebsch_gordan(j, j, HalfInt::HALF, h(-1), j + HalfInt::HALF, h(tj - 1)).unwrap();
            let expected = 1.0 / ((tj + 1) as f64).sqrt();
            assert!((c.to_f64() - expected).abs() < 1e-14, "tj={tj}");
        }
    }

    #[test]
    fn half_int_display() {
        assert_eq!(h(3).to_string(), "3/2");
        assert_eq!(h(-4).to_string(), "-2");
        assert_eq!(h(2).projections().collect::<Vec<_>>(), vec![h(-2), h(0), h(2)]);
    }
}
