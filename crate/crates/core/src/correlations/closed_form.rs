//! Published closed forms of parity expectations, evaluated directly.

use std::fmt;
use std::str::FromStr;

use super::{DirectionSet, PartialSigns};
use crate::error::{Error, Result};

/// Closed-form parity expectations, with and without selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    TwopartiteFull,
    TwopartiteTheta,
    TwopartiteEquatorial,
    Psi241Full,
    Psi241Theta,
    Psi241Equatorial,
    Psi242Full,
    Psi242Theta,
    TauTheta,
    TauFull,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 10] = [
        ClosedForm::TwopartiteFull,
        ClosedForm::TwopartiteTheta,
        ClosedForm::TwopartiteEquatorial,
        ClosedForm::Psi241Full,
        ClosedForm::Psi241Theta,
        ClosedForm::Psi241Equatorial,
        ClosedForm::Psi242Full,
        ClosedForm::Psi242Theta,
        ClosedForm::TauTheta,
        ClosedForm::TauFull,
    ];

    pub fn particles(self) -> usize {
        match self {
            ClosedForm::TwopartiteFull
            | ClosedForm::TwopartiteTheta
            | ClosedForm::TwopartiteEquatorial => 2,
            _ => 4,
        }
    }

    pub fn needs_tau(self) -> bool {
        matches!(self, ClosedForm::TauTheta | ClosedForm::TauFull)
    }

    /// Only polar angles enter; every azimuth must be zero.
    pub fn polar_only(self) -> bool {
        matches!(
            self,
            ClosedForm::TwopartiteTheta
                | ClosedForm::Psi241Theta
                | ClosedForm::Psi242Theta
                | ClosedForm::TauTheta
        )
    }

    /// Every polar angle must be π/2.
    pub fn equatorial(self) -> bool {
        matches!(self, ClosedForm::TwopartiteEquatorial | ClosedForm::Psi241Equatorial)
    }

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::TwopartiteFull => "twopartite_full",
            ClosedForm::TwopartiteTheta => "twopartite_theta",
            ClosedForm::TwopartiteEquatorial => "twopartite_equatorial",
            ClosedForm::Psi241Full => "psi241_full",
            ClosedForm::Psi241Theta => "psi241_theta",
            ClosedForm::Psi241Equatorial => "psi241_equatorial",
            ClosedForm::Psi242Full => "psi242_full",
            ClosedForm::Psi242Theta => "psi242_theta",
            ClosedForm::TauTheta => "tau_theta",
            ClosedForm::TauFull => "tau_full",
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClosedForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClosedForm::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown closed form {s:?}")))
    }
}

const EQUATOR_TOL: f64 = 1e-12;

/// Angle accessors, 1-based.
struct Angles<'a>(&'a DirectionSet);

impl Angles<'_> {
    fn t(&self, i: usize) -> f64 {
        self.0.get(i).theta
    }
    fn p(&self, i: usize) -> f64 {
        self.0.get(i).phi
    }
    fn c(&self, i: usize) -> f64 {
        self.t(i).cos()
    }
    fn s(&self, i: usize) -> f64 {
        self.t(i).sin()
    }
    /// cos(φᵢ − φⱼ)
    fn cp(&self, i: usize, j: usize) -> f64 {
        (self.p(i) - self.p(j)).cos()
    }
    /// cos(θᵢ − θⱼ)
    fn ct(&self, i: usize, j: usize) -> f64 {
        (self.t(i) - self.t(j)).cos()
    }
    fn cp_sum(&self) -> f64 {
        (self.p(1) + self.p(2) - self.p(3) - self.p(4)).cos()
    }
    fn ct_sum(&self) -> f64 {
        (self.t(1) + self.t(2) - self.t(3) - self.t(4)).cos()
    }
}

fn check_restrictions(polar_only: bool, equatorial: bool, dirs: &DirectionSet) -> Result<()> {
    if polar_only && dirs.as_slice().iter().any(|d| d.phi != 0.0) {
        return Err(Error::Domain("polar-angle form requires every phi = 0".into()));
    }
    if equatorial
        && dirs
            .as_slice()
            .iter()
            .any(|d| (d.theta - std::f64::consts::FRAC_PI_2).abs() > EQUATOR_TOL)
    {
        return Err(Error::Domain("equatorial form requires every theta = pi/2".into()));
    }
    Ok(())
}

/// Evaluate a closed-form parity expectation.
pub fn closed_form_e(which: ClosedForm, tau: Option<f64>, dirs: &DirectionSet) -> Result<f64> {
    if dirs.len() != which.particles() {
        return Err(Error::Domain(format!(
            "{which} takes {} directions, got {}",
            which.particles(),
            dirs.len()
        )));
    }
    let tau = match (which.needs_tau(), tau) {
        (true, Some(t)) => t,
        (true, None) => return Err(Error::Domain(format!("{which} requires tau"))),
        (false, Some(_)) => return Err(Error::Domain(format!("{which} takes no tau"))),
        (false, None) => 0.0,
    };
    check_restrictions(which.polar_only(), which.equatorial(), dirs)?;
    let a = Angles(dirs);
    let v = match which {
        ClosedForm::TwopartiteFull => -(a.c(1) * a.c(2) + a.cp(1, 2) * a.s(1) * a.s(2)),
        ClosedForm::TwopartiteTheta => -a.ct(1, 2),
        ClosedForm::TwopartiteEquatorial => -a.cp(1, 2),
        ClosedForm::Psi241Full => psi241_full(&a),
        ClosedForm::Psi241Equatorial => (2.0 * a.cp_sum() + a.cp(1, 2) * a.cp(3, 4)) / 3.0,
        ClosedForm::Psi241Theta => (2.0 * a.ct_sum() + a.ct(1, 2) * a.ct(3, 4)) / 3.0,
        ClosedForm::Psi242Theta => a.ct(1, 2) * a.ct(3, 4),
        ClosedForm::Psi242Full => {
            (a.c(1) * a.c(2) + a.cp(1, 2) * a.s(1) * a.s(2))
                * (a.c(3) * a.c(4) + a.cp(3, 4) * a.s(3) * a.s(4))
        }
        ClosedForm::TauTheta => {
            let (st, ct) = tau.sin_cos();
            let sq3 = 3f64.sqrt();
            ((2.0 + (2.0 * tau).cos()) * a.ct(1, 2) * a.ct(3, 4)
                + 2.0
                    * st
                    * (st * a.ct_sum()
                        + sq3 * ct * (a.t(1) - a.t(2)).sin() * (a.t(3) - a.t(4)).sin()))
                / 3.0
        }
        ClosedForm::TauFull => tau_full(&a, tau),
    };
    Ok(v)
}

fn psi241_full(a: &Angles) -> f64 {
    let (c1, c2, c3, c4) = (a.c(1), a.c(2), a.c(3), a.c(4));
    let (s1, s2, s3, s4) = (a.s(1), a.s(2), a.s(3), a.s(4));
    (c3 * s1 * (-c4 * a.cp(1, 2) * s2 + 2.0 * c2 * a.cp(1, 4) * s4)
        + s1 * s3
            * (2.0 * c2 * c4 * a.cp(1, 3)
                + (2.0 * a.cp_sum() + a.cp(1, 2) * a.cp(3, 4)) * s2 * s4)
        + c1 * (2.0 * s2 * (c4 * a.cp(2, 3) * s3 + c3 * a.cp(2, 4) * s4)
            + c2 * (3.0 * c3 * c4 - a.cp(3, 4) * s3 * s4)))
        / 3.0
}

fn tau_full(a: &Angles, tau: f64) -> f64 {
    let (c1, c2, c3, c4) = (a.c(1), a.c(2), a.c(3), a.c(4));
    let (s1, s2, s3, s4) = (a.s(1), a.s(2), a.s(3), a.s(4));
    let (st, ct) = tau.sin_cos();
    let sq3 = 3f64.sqrt();
    let c2t = (2.0 * tau).cos();
    let first = c1
        * (c2 * (3.0 * c3 * c4 + (2.0 * c2t + 1.0) * a.cp(3, 4) * s3 * s4)
            + 2.0
                * s2
                * st
                * (c3 * a.cp(2, 4) * s4 * (sq3 * ct + st) - c4 * a.cp(2, 3) * s3 * (sq3 * ct - st)));
    let second = s1
        * (c3
            * (c4 * (2.0 * c2t + 1.0) * a.cp(1, 2) * s2
                + 2.0 * c2 * a.cp(1, 4) * s4 * st * (st - sq3 * ct))
            + s3 * (2.0 * c2 * c4 * a.cp(1, 3) * st * (sq3 * ct + st)
                + s2 * s4
                    * (2.0 * a.cp_sum() * st * st
                        + (c2t + 2.0) * a.cp(1, 2) * a.cp(3, 4)
                        + sq3 * (2.0 * tau).sin() * (a.p(1) - a.p(2)).sin() * (a.p(3) - a.p(4)).sin())));
    (first + second) / 3.0
}

/// Printed four-particle rows with selection on particles 2, 3 or 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SelectedRow {
    /// `|±₄`, general directions.
    Pm4,
    /// `|±₃±₄`, polar angles only.
    Pm3Pm4Theta,
    /// `|±₃±₄`, general directions.
    Pm3Pm4Full,
    /// `|±₂±₄`, polar angles only.
    Pm2Pm4Theta,
    /// `|±₂±₄`, general directions.
    Pm2Pm4Full,
}

impl SelectedRow {
    pub const ALL: [SelectedRow; 5] = [
        SelectedRow::Pm4,
        SelectedRow::Pm3Pm4Theta,
        SelectedRow::Pm3Pm4Full,
        SelectedRow::Pm2Pm4Theta,
        SelectedRow::Pm2Pm4Full,
    ];

    /// Selected particles, 1-based.
    pub fn fixed(self) -> &'static [usize] {
        match self {
            SelectedRow::Pm4 => &[4],
            SelectedRow::Pm3Pm4Theta | SelectedRow::Pm3Pm4Full => &[3, 4],
            SelectedRow::Pm2Pm4Theta | SelectedRow::Pm2Pm4Full => &[2, 4],
        }
    }

    pub fn polar_only(self) -> bool {
        matches!(self, SelectedRow::Pm3Pm4Theta | SelectedRow::Pm2Pm4Theta)
    }

    pub fn name(self) -> &'static str {
        match self {
            SelectedRow::Pm4 => "pm4",
            SelectedRow::Pm3Pm4Theta => "pm3pm4_theta",
            SelectedRow::Pm3Pm4Full => "pm3pm4_full",
            SelectedRow::Pm2Pm4Theta => "pm2pm4_theta",
            SelectedRow::Pm2Pm4Full => "pm2pm4_full",
        }
    }
}

impl fmt::Display for SelectedRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectedRow {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SelectedRow::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown selection row {s:?}")))
    }
}

/// Evaluate a printed selection row. `signs` must fix exactly the row's
/// particles.
pub fn selected_expectation_closed_form(
    row: SelectedRow,
    signs: &PartialSigns,
    dirs: &DirectionSet,
) -> Result<f64> {
    if dirs.len() != 4 || signs.len() != 4 {
        return Err(Error::Domain("selection rows take four particles".into()));
    }
    if signs.fixed_positions() != row.fixed() {
        return Err(Error::Domain(format!("row {row} needs particles {:?} fixed", row.fixed())));
    }
    check_restrictions(row.polar_only(), false, dirs)?;
    let p = row.fixed().iter().map(|&i| signs.get(i).unwrap_or(1) as f64).product::<f64>();
    let a = Angles(dirs);
    let (c1, c2, c3, c4) = (a.c(1), a.c(2), a.c(3), a.c(4));
    let (s1, s2, s3, s4) = (a.s(1), a.s(2), a.s(3), a.s(4));
    let v = match row {
        SelectedRow::Pm4 => 1.0 / 12.0 + p * 0.5 * psi241_full(&a),
        SelectedRow::Pm3Pm4Theta => {
            (2.0 * p * a.ct_sum() + a.ct(1, 2) * (1.0 + p * a.ct(3, 4))) / 12.0
        }
        SelectedRow::Pm3Pm4Full => {
            (c1 * (2.0 * p * s2 * (c4 * a.cp(2, 3) * s3 + c3 * a.cp(2, 4) * s4)
                + c2 * (1.0 + 3.0 * p * c3 * c4 - p * a.cp(3, 4) * s3 * s4))
                + s1 * (a.cp(1, 2) * s2 * (1.0 - p * c3 * c4 + p * a.cp(3, 4) * s3 * s4)
                    + 2.0
                        * p
                        * (c2 * c4 * a.cp(1, 3) * s3
                            + c2 * c3 * a.cp(1, 4) * s4
                            + a.cp_sum() * s2 * s3 * s4)))
                / 12.0
        }
        SelectedRow::Pm2Pm4Theta => {
            (p * (2.0 * a.ct_sum() + a.ct(1, 2) * a.ct(3, 4)) - 2.0 * a.ct(1, 3)) / 12.0
        }
        SelectedRow::Pm2Pm4Full => {
            (c1 * (p * s3 * (2.0 * c4 * a.cp(2, 3) * s2 - c2 * a.cp(3, 4) * s4)
                + c3 * (-2.0 + 3.0 * p * c2 * c4 + 2.0 * p * a.cp(2, 4) * s2 * s4))
                + s1 * (p * c3 * (-c4 * a.cp(1, 2) * s2 + 2.0 * c2 * a.cp(1, 4) * s4)
                    + s3 * (2.0 * (-1.0 + p * c2 * c4) * a.cp(1, 3)
                        + p * (2.0 * a.cp_sum() + a.cp(1, 2) * a.cp(3, 4)) * s2 * s4)))
                / 12.0
        }
    };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn zero4() -> DirectionSet {
        DirectionSet::polar(&[0.0; 4])
    }

    #[test]
    fn two_particle_rows() {
        let d = DirectionSet::polar(&[0.8, 0.8]);
        assert!((closed_form_e(ClosedForm::TwopartiteTheta, None, &d).unwrap() + 1.0).abs() < 1e-15);
        let eq = DirectionSet::from_angles(&[FRAC_PI_2; 2], &[0.3, 1.0]).unwrap();
        let want = -(0.3f64 - 1.0).cos();
        assert!((closed_form_e(ClosedForm::TwopartiteEquatorial, None, &eq).unwrap() - want).abs() < 1e-15);
        assert!((closed_form_e(ClosedForm::TwopartiteFull, None, &eq).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn restrictions_are_enforced() {
        let d = DirectionSet::from_angles(&[0.1; 4], &[0.2; 4]).unwrap();
        assert!(matches!(closed_form_e(ClosedForm::Psi241Theta, None, &d), Err(Error::Domain(_))));
        assert!(closed_form_e(ClosedForm::Psi241Equatorial, None, &d).is_err());
        assert!(closed_form_e(ClosedForm::TauFull, None, &d).is_err());
        assert!(closed_form_e(ClosedForm::Psi241Full, Some(0.1), &d).is_err());
        assert!(closed_form_e(ClosedForm::TwopartiteFull, None, &d).is_err());
        assert!("psi999".parse::<ClosedForm>().is_err());
        assert!("bogus".parse::<SelectedRow>().is_err());
    }

    #[test]
    fn psi241_theta_single_angle() {
        for th in [0.0, 0.4, 2.0] {
            let d = DirectionSet::polar(&[th, 0.0, 0.0, 0.0]);
            let v = closed_form_e(ClosedForm::Psi241Theta, None, &d).unwrap();
            assert!((v - th.cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn printed_selection_rows_at_origin() {
        let s4 = PartialSigns::new(vec![None, None, None, Some(1)]).unwrap();
        let s34 = PartialSigns::new(vec![None, None, Some(1), Some(1)]).unwrap();
        let s24 = PartialSigns::new(vec![None, Some(1), None, Some(1)]).unwrap();
        let v = selected_expectation_closed_form(SelectedRow::Pm4, &s4, &zero4()).unwrap();
        assert!((v - 7.0 / 12.0).abs() < 1e-15);
        let v = selected_expectation_closed_form(SelectedRow::Pm3Pm4Theta, &s34, &zero4()).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
        let v = selected_expectation_closed_form(SelectedRow::Pm2Pm4Theta, &s24, &zero4()).unwrap();
        assert!((v - 1.0 / 12.0).abs() < 1e-15);
        assert!(selected_expectation_closed_form(SelectedRow::Pm4, &s34, &zero4()).is_err());
    }
}
