//! One-parameter scans of the four-particle singlet family.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use super::{general_singlet, parity_expectation, DirectionSet};
use crate::error::{Error, Result};

/// Parameter bindings of the six scan curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Curve {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Curve {
    pub const ALL: [Curve; 6] = [Curve::A, Curve::B, Curve::C, Curve::D, Curve::E, Curve::F];

    /// Mixing angle `τ` and the four polar angles at scan angle `theta`;
    /// all azimuths are zero.
    pub fn binding(self, theta: f64) -> (f64, [f64; 4]) {
        match self {
            Curve::A => (0.0, [theta, 0.0, 0.0, 0.0]),
            Curve::B => (0.0, [theta, 0.0, 0.0, PI]),
            Curve::C => (FRAC_PI_2, [theta, theta, -theta, theta]),
            Curve::D => (FRAC_PI_2, [theta, FRAC_PI_4, -theta, theta]),
            Curve::E => (FRAC_PI_4, [theta, FRAC_PI_4, -theta, theta]),
            Curve::F => (FRAC_PI_4, [theta, 0.0, -theta, theta]),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Curve::A => 'a',
            Curve::B => 'b',
            Curve::C => 'c',
            Curve::D => 'd',
            Curve::E => 'e',
            Curve::F => 'f',
        }
    }
}

impl FromStr for Curve {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Curve::ALL
            .into_iter()
            .find(|c| s.len() == 1 && s.eq_ignore_ascii_case(&c.letter().to_string()))
            .ok_or_else(|| Error::Domain(format!("unknown curve {s:?}, expected a..f")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow {
    pub theta: f64,
    pub p_even: f64,
    pub p_odd: f64,
    pub expectation: f64,
}

/// Grid point `k` of `samples` uniform points on `[0, 2π]`.
pub fn grid_point(k: usize, samples: usize) -> f64 {
    if k + 1 == samples {
        TAU
    } else {
        TAU * k as f64 / (samples - 1) as f64
    }
}

/// Evaluate `curve` on a uniform grid of `samples ≥ 2` points over `[0, 2π]`.
pub fn scan(curve: Curve, samples: usize) -> Result<Vec<ScanRow>> {
    if samples < 2 {
        return Err(Error::Domain("a scan needs at least two samples".into()));
    }
    (0..samples)
        .into_par_iter()
        .map(|k| {
            let theta = grid_point(k, samples);
            let (tau, thetas) = curve.binding(theta);
            let e = parity_expectation(&general_singlet(tau).density(), &DirectionSet::polar(&thetas))?;
            Ok(ScanRow { theta, p_even: 0.5 * (1.0 + e), p_odd: 0.5 * (1.0 - e), expectation: e })
        })
        .collect()
}

/// Twelve significant digits, no trailing zeros.
fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let s = format!("{x:.11e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        let trimmed = if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            fixed
        };
        if trimmed == "-0" { "0".to_string() } else { trimmed }
    } else {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{m}e{exp}")
    }
}

pub fn format_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("theta,p_even,p_odd,expectation\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            sig12(r.theta),
            sig12(r.p_even),
            sig12(r.p_odd),
            sig12(r.expectation)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_a_endpoints() {
        let rows = scan(Curve::A, 3).unwrap();
        let e: Vec<f64> = rows.iter().map(|r| r.expectation).collect();
        assert!((e[0] - 1.0).abs() < 1e-14 && (e[1] + 1.0).abs() < 1e-14 && (e[2] - 1.0).abs() < 1e-14);
        assert_eq!(rows[2].theta, TAU);
        assert!((rows[0].p_even - 1.0).abs() < 1e-14);
    }

    #[test]
    fn curve_c_origin_and_grid() {
        assert!((scan(Curve::C, 2).unwrap()[0].expectation - 1.0).abs() < 1e-14);
        let rows = scan(Curve::F, 101).unwrap();
        assert_eq!(rows.len(), 101);
        assert!(rows.windows(2).all(|w| w[0].theta < w[1].theta));
        assert!(scan(Curve::A, 1).is_err());
        assert!("g".parse::<Curve>().is_err());
        assert_eq!("B".parse::<Curve>().unwrap(), Curve::B);
    }

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(-1.0), "-1");
        assert_eq!(sig12(TAU), "6.28318530718");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(-1e-17), "-1e-17");
        assert_eq!(sig12(-4e-17 * 0.0), "0");
        let csv = format_csv(&scan(Curve::A, 2).unwrap());
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("theta,p_even,p_odd,expectation"));
        let first: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(first[0], 0.0);
        assert!((first[3] - 1.0).abs() < 1e-12 && first[2].abs() < 1e-12);
    }
}
