//! Graded vertex algebras generated by a vertex algebroid, truncated by degree.

mod engine;
pub mod graded;
pub mod loop_algebra;
pub mod module;
pub mod pbw;

use thiserror::Error;

use crate::algebroid::AlgebroidError;

pub use graded::{build_vb, Certificate, GradedDim, GradedVA, VaVector, DEFAULT_CAP, DEFAULT_DEGREE};
pub use loop_algebra::{LoopAlgebra, Mode, ModeId};
pub use module::{induced_module, GradedModule};
pub use pbw::{GroundModule, InducedModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VaError {
    #[error("not a vertex algebroid: {0}")]
    NotAVertexAlgebroid(String),
    #[error("degree {degree} is outside the window 0..={max}")]
    DegreeOverflow { degree: i64, max: usize },
    #[error("PBW length cap {cap} is below the requested degree {degree}")]
    CapTooSmall { cap: usize, degree: usize },
    #[error("the ground module has no vacuum")]
    NoVacuum,
    #[error("bad module data: {0}")]
    BadModuleData(String),
    #[error("ideal generators must lie in the radical of A")]
    NotInRadical,
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
}
