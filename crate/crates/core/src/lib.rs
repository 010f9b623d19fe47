//! Exact computational checks for boundary Virasoro minimal models.
//!
//! Everything here is computed over the rationals with no floating point:
//! Gordon/Rogers-Ramanujan partition identities, Nahm-sum refined
//! characters, Feigin-Fuchs characters, Shapovalov Gram ranks of Verma
//! modules, singular vectors, vertex-operator mode expansions, and
//! bigraded dimensions of jet-algebra quotients.

pub mod characters;
pub mod filtration;
pub mod jets;
pub mod matrix;
pub mod modes;
pub mod partition;
pub mod rational;
pub mod series;
pub mod verma;

pub use characters::ModelParams;
pub use filtration::BigradedTable;
pub use jets::FreenessVerdict;
pub use matrix::RationalMatrix;
pub use partition::{Composition, Partition};
pub use rational::Rat;
pub use series::{BivariateSeries, QSeries};
pub use verma::{GramMatrix, ModuleKind, PbwVector};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("series has no inverse: constant term is zero")]
    NonUnitSeries,
    #[error("incompatible series: {0}")]
    IncompatibleSeries(String),
    #[error("invalid minimal model parameters: {0}")]
    InvalidParams(String),
    #[error("singular space at level {level} is {dim}-dimensional, expected 1")]
    SingularSpaceDimension { level: usize, dim: usize },
    #[error("zero vector has no leading power")]
    ZeroVector,
}
