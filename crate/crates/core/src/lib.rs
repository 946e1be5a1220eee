//! Exact construction of multi-particle singlet states and their
//! correlation observables.

pub mod builder;
pub mod cg;
pub mod correlations;
pub mod error;
pub mod exactnum;
pub mod export;
pub mod symmetry;

pub use builder::{BasisWord, CoupledState, ExactVector, Layer, SingletBasis};
pub use cg::HalfInt;
pub use correlations::{Direction, DirectionSet, OutcomeSigns, StateVector, DensityOperator};
pub use error::{Error, Result};
pub use exactnum::{RadicalSum, Rational};
pub use export::StateExportDocument;
pub use symmetry::{FlipBehaviour, Parity, Partition};
