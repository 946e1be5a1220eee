//! Canonical JSON and text renderings of exact states.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::builder::{BasisWord, CoupledState, ExactVector, SingletBasis};
use crate::cg::HalfInt;
use crate::error::{Error, Result};
use crate::exactnum::{RadicalSum, Rational};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportedTerm {
    pub num: String,
    pub den: String,
    pub radicand: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportedAmplitude {
    pub word: String,
    pub terms: Vec<ExportedTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportedState {
    /// Doubled total angular momentum.
    pub j: i32,
    /// Doubled magnetic number.
    pub m: i32,
    pub index: usize,
    pub amplitudes: Vec<ExportedAmplitude>,
}

/// Serialized list of states of `n` particles with doubled spin `spin`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateExportDocument {
    pub schema_version: String,
    pub spin: i32,
    pub n: usize,
    pub states: Vec<ExportedState>,
}

/// `+`/`-` per site for spin one-half, comma-separated values otherwise.
pub fn word_token(word: &BasisWord, spin: HalfInt) -> String {
    if spin.twice == 1 {
        word.letters().iter().map(|&l| if l > 0 { '+' } else { '-' }).collect()
    } else {
        let parts: Vec<String> =
            word.letters().iter().map(|&l| HalfInt::from_twice(l as i32).to_string()).collect();
        parts.join(",")
    }
}

fn parse_half(s: &str) -> Result<i32> {
    let bad = || Error::Domain(format!("bad magnetic value {s:?}"));
    match s.split_once('/') {
        Some((n, "2")) => {
            let t: i32 = n.parse().map_err(|_| bad())?;
            if t % 2 == 0 {
                return Err(bad());
            }
            Ok(t)
        }
        Some(_) => Err(bad()),
        None => s.parse::<i32>().map(|v| 2 * v).map_err(|_| bad()),
    }
}

pub fn parse_word_token(token: &str, spin: HalfInt) -> Result<BasisWord> {
    let letters: Vec<i32> = if spin.twice == 1 {
        token
            .chars()
            .map(|ch| match ch {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Error::Domain(format!("bad spin-1/2 letter {ch:?}"))),
            })
            .collect::<Result<_>>()?
    } else {
        token.split(',').map(parse_half).collect::<Result<_>>()?
    };
    let mut out = Vec::with_capacity(letters.len());
    for l in letters {
        if l.abs() > spin.twice || (l - spin.twice) % 2 != 0 {
            return Err(Error::Domain(format!("letter {l}/2 not allowed for spin {spin}")));
        }
        out.push(l as i8);
    }
    Ok(BasisWord::from_twice(out))
}

fn export_amplitude(a: &RadicalSum) -> Vec<ExportedTerm> {
    a.terms()
        .map(|(r, q)| ExportedTerm { num: q.numer().to_string(), den: q.denom().to_string(), radicand: r })
        .collect()
}

fn import_amplitude(terms: &[ExportedTerm]) -> Result<RadicalSum> {
    let mut acc = RadicalSum::zero();
    for t in terms {
        let num: BigInt =
            t.num.parse().map_err(|_| Error::Domain(format!("bad numerator {:?}", t.num)))?;
        let den: BigInt =
            t.den.parse().map_err(|_| Error::Domain(format!("bad denominator {:?}", t.den)))?;
        if den == BigInt::from(0) {
            return Err(Error::Domain("zero denominator".into()));
        }
        acc += RadicalSum::term(Rational::new(num, den), t.radicand);
    }
    Ok(acc)
}

impl StateExportDocument {
    /// States sorted by `(j, m, index)`; kets in ascending letter order.
    pub fn from_states(spin: HalfInt, n: usize, states: &[CoupledState]) -> Self {
        let mut sorted: Vec<&CoupledState> = states.iter().collect();
        sorted.sort_by_key(|s| (s.j(), s.m(), s.index()));
        let states = sorted
            .into_iter()
            .map(|s| ExportedState {
                j: s.j().twice,
                m: s.m().twice,
                index: s.index(),
                amplitudes: s
                    .amplitudes()
                    .iter()
                    .map(|(w, a)| ExportedAmplitude {
                        word: word_token(w, spin),
                        terms: export_amplitude(a),
                    })
                    .collect(),
            })
            .collect();
        StateExportDocument { schema_version: SCHEMA_VERSION.to_string(), spin: spin.twice, n, states }
    }

    pub fn from_basis(basis: &SingletBasis) -> Self {
        Self::from_states(basis.spin, basis.n, &basis.states)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: StateExportDocument =
            serde_json::from_str(text).map_err(|e| Error::Domain(format!("invalid document: {e}")))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Domain(format!("unsupported schema {}", doc.schema_version)));
        }
        Ok(doc)
    }

    /// Rebuild exact states; coupling paths are not part of the document.
    pub fn to_states(&self) -> Result<Vec<CoupledState>> {
        let spin = HalfInt::from_twice(self.spin);
        self.states
            .iter()
            .map(|s| {
                let mut amps = ExactVector::new();
                for a in &s.amplitudes {
                    let w = parse_word_token(&a.word, spin)?;
                    if w.len() != self.n {
                        return Err(Error::Domain(format!("ket {} has wrong length", a.word)));
                    }
                    amps.add(w, &import_amplitude(&a.terms)?);
                }
                Ok(CoupledState::from_parts(
                    spin,
                    HalfInt::from_twice(s.j),
                    HalfInt::from_twice(s.m),
                    s.index,
                    Vec::new(),
                    amps,
                ))
            })
            .collect()
    }

    /// Ket notation, one amplitude per line.
    pub fn to_text(&self) -> String {
        let spin = HalfInt::from_twice(self.spin);
        let mut out = String::new();
        let _ = writeln!(out, "spin {spin}, N = {}, {} state(s)", self.n, self.states.len());
        for s in &self.states {
            let _ = writeln!(
                out,
                "\n|{}, {}, {}, {}>",
                self.n,
                HalfInt::from_twice(s.j),
                HalfInt::from_twice(s.m),
                s.index
            );
            for a in &s.amplitudes {
                let amp = import_amplitude(&a.terms).map(|v| v.to_string()).unwrap_or_default();
                let _ = writeln!(out, "  {amp:>24}  |{}>", a.word);
            }
        }
        out
    }
}
