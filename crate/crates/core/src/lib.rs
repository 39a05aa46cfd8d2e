//! Exact computations with vertex algebroids over cyclic Leibniz algebras,
//! the graded vertex algebras they generate, and the rank-one Heisenberg
//! vertex algebra.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod algebroid;
pub mod heisenberg;
pub mod leibniz;
pub mod linalg;
pub mod scalar;
pub mod va;

pub use algebra::{AlgElement, AlgebraError, FiniteAlgebra, LocalProfile};
pub use scalar::{q, GaussianRational, Scalar, ScalarError};
