//! Exact arithmetic over finite sums `Σ qᵢ·√nᵢ` with rational `qᵢ` and
//! square-free radicands `nᵢ`.
//!
//! Every amplitude produced by the coupling recursion is a product of
//! Clebsch-Gordan coefficients, each of the form `±√(rational)`, so this
//! set is closed under everything the builder needs (sums, products,
//! inner products).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational number in canonical form.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRadicalError {
    #[error("malformed radical term `{0}`")]
    Term(String),
    #[error("radicand must be a positive integer, got `{0}`")]
    Radicand(String),
}

/// Decompose `n = s²·r` with `r` square-free.
///
/// Trial division only needs to run up to the cube root of the remaining
/// cofactor: once no prime `p` with `p³ ≤ rest` divides it, the cofactor is
/// 1, a prime, a product of two distinct primes, or a prime square.
pub fn square_free_decompose(n: u64) -> (u64, u64) {
    assert!(n >= 1, "square_free_decompose requires n >= 1");
    let mut rest = n;
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p).saturating_mul(p) <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let root = rest.sqrt();
    if rest > 1 && root * root == rest {
        square *= root;
    } else {
        free *= rest;
    }
    (square, free)
}

/// Exact value `Σ qᵢ·√nᵢ`, canonical: one term per square-free radicand,
/// no zero coefficients. The empty sum is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RadicalSum {
    terms: BTreeMap<u64, Rational>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::term(q, 1)
    }

    /// `q·√n` for any positive `n`; square factors of `n` are pulled into `q`.
    pub fn term(q: Rational, n: u64) -> Self {
        assert!(n >= 1, "radicand must be positive");
        let mut out = Self::zero();
        if q.is_zero() {
            return out;
        }
        let (s, r) = square_free_decompose(n);
        out.terms.insert(r, q * BigInt::from(s));
        out
    }

    /// `√q` for a non-negative rational whose numerator·denominator fits
    /// in 64 bits. `√(a/b)` is stored as `(1/b)·√(ab)`.
    pub fn sqrt_rational(q: &Rational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(Self::zero());
        }
        let prod = (q.numer() * q.denom()).to_u64()?;
        let inv_den = Rational::new(BigInt::one(), q.denom().clone());
        Some(Self::term(inv_den, prod))
    }

    /// `q·√r` where the caller guarantees `r` is already square-free.
    pub(crate) fn from_square_free(q: Rational, r: u64) -> Self {
        debug_assert!(r >= 1);
        let mut out = Self::zero();
        if !q.is_zero() {
            out.terms.insert(r, q);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate `(radicand, coefficient)` pairs in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(n, q)| (*n, q))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The rational value, if the sum has no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// Single-term view `(q, n)` when the value is `q·√n`.
    pub fn as_single_term(&self) -> Option<(&Rational, u64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(n, q)| (q, *n))
        } else {
            None
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(n, c)| (*n, c * q)).collect(),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(n, q)| q.to_f64().unwrap_or(f64::NAN) * (*n as f64).sqrt())
            .sum()
    }

    fn add_term(&mut self, n: u64, q: Rational) {
        if q.is_zero() {
            return;
        }
        match self.terms.get_mut(&n) {
            Some(c) => {
                *c += q;
                if c.is_zero() {
                    self.terms.remove(&n);
                }
            }
            None => {
                self.terms.insert(n, q);
            }
        }
    }
}

impl From<i64> for RadicalSum {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for RadicalSum {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a RadicalSum> for &'a RadicalSum {
    type Output = RadicalSum;
    fn add(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for RadicalSum {
    type Output = RadicalSum;
    fn add(mut self, rhs: RadicalSum) -> RadicalSum {
        for (n, q) in rhs.terms {
            self.add_term(n, q);
        }
        self
    }
}

impl AddAssign<&RadicalSum> for RadicalSum {
    fn add_assign(&mut self, rhs: &RadicalSum) {
        for (n, q) in &rhs.terms {
            self.add_term(*n, q.clone());
        }
    }
}

impl AddAssign for RadicalSum {
    fn add_assign(&mut self, rhs: RadicalSum) {
        for (n, q) in rhs.terms {
            self.add_term(n, q);
        }
    }
}

impl Neg for RadicalSum {
    type Output = RadicalSum;
    fn neg(self) -> RadicalSum {
        RadicalSum {
            terms: self.terms.into_iter().map(|(n, q)| (n, -q)).collect(),
        }
    }
}

impl Neg for &RadicalSum {
    type Output = RadicalSum;
    fn neg(self) -> RadicalSum {
        -self.clone()
    }
}

impl<'a> Sub<&'a RadicalSum> for &'a RadicalSum {
    type Output = RadicalSum;
    fn sub(self, rhs: &RadicalSum) -> RadicalSum {
        self + &(-rhs)
    }
}

impl Sub for RadicalSum {
    type Output = RadicalSum;
    fn sub(self, rhs: RadicalSum) -> RadicalSum {
        self + (-rhs)
    }
}

impl<'a> Mul<&'a RadicalSum> for &'a RadicalSum {
    type Output = RadicalSum;

    /// `√m·√n = g·√((m/g)(n/g))` with `g = gcd(m, n)`; the reduced radicand
    /// is square-free because `m/g` and `n/g` are coprime and square-free.
    ///
    /// Panics if a reduced radicand does not fit in 64 bits.
    fn mul(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = RadicalSum::zero();
        for (m, p) in &self.terms {
            for (n, q) in &rhs.terms {
                let g = m.gcd(n);
                let r = (m / g)
                    .checked_mul(n / g)
                    .expect("radicand overflow in RadicalSum product");
                out.add_term(r, p * q * BigInt::from(g));
            }
        }
        out
    }
}

impl Mul for RadicalSum {
    type Output = RadicalSum;
    fn mul(self, rhs: RadicalSum) -> RadicalSum {
        &self * &rhs
    }
}

impl fmt::Display for RadicalSum {
    /// `p/q*sqrt(n) + p/q*sqrt(n) + …`; zero renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (n, q)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}/{}*sqrt({})", q.numer(), q.denom(), n)?;
        }
        Ok(())
    }
}

impl FromStr for RadicalSum {
    type Err = ParseRadicalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for part in s.split(" + ") {
            let bad = || ParseRadicalError::Term(part.to_string());
            let (coeff, rad) = part.split_once("*sqrt(").ok_or_else(bad)?;
            let rad = rad.strip_suffix(')').ok_or_else(bad)?;
            let n: u64 = rad
                .parse()
                .map_err(|_| ParseRadicalError::Radicand(rad.to_string()))?;
            if n == 0 {
                return Err(ParseRadicalError::Radicand(rad.to_string()));
            }
            let q: Rational = coeff.parse().map_err(|_| bad())?;
            out += RadicalSum::term(q, n);
        }
        Ok(out)
    }
}
