//! Vertex algebroids over a finite algebra, the axiom checker and the
//! classified families in dimensions 2 and 3.

mod checks;
pub mod derive;
pub mod families;
pub mod lie;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteAlgebra};
use crate::leibniz::LeibnizAlgebra;
use crate::linalg::{self, DenseVec};
use crate::scalar::Scalar;

pub use checks::{AxiomCheck, AxiomGroup, AxiomReport};
pub use derive::{derive_dim3_constraints, Dim3Constraints};
pub use families::{Family, TypeDVariant};
pub use lie::{LieAlgebroid, ModuleCheck, OneDimModule, OneDimModules};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebroidError {
    #[error("bundle tables have the wrong shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("inconsistent parameters: {0}")]
    InconsistentParameters(String),
    #[error("quotient is ill-defined: {0}")]
    QuotientIllDefined(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("missing parameter {0:?}")]
    MissingParameter(String),
}

/// The bundle `(A, B, del, action, bracket0, pairing1, anchor)`.
///
/// Tables are indexed by basis elements: `del[i]` is the image of the i-th
/// basis element of `A` in `B`, `action[i][j]` is `e_i . f_j`, `bracket0[i][j]`
/// is `f_i(0) f_j`, `pairing1[i][j]` is `f_i(1) f_j` in `A`, and
/// `anchor[i][j]` is `f_i(0) e_j` in `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexAlgebroid {
    #[serde(rename = "A")]
    pub(crate) algebra: FiniteAlgebra,
    #[serde(rename = "B_dim")]
    pub(crate) b_dim: usize,
    #[serde(rename = "B_labels", default)]
    pub(crate) b_labels: Vec<String>,
    pub(crate) del: Vec<DenseVec>,
    pub(crate) action: Vec<Vec<DenseVec>>,
    pub(crate) bracket0: Vec<Vec<DenseVec>>,
    pub(crate) pairing1: Vec<Vec<DenseVec>>,
    pub(crate) anchor: Vec<Vec<DenseVec>>,
}

impl VertexAlgebroid {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        algebra: FiniteAlgebra,
        b_dim: usize,
        b_labels: Vec<String>,
        del: Vec<DenseVec>,
        action: Vec<Vec<DenseVec>>,
        bracket0: Vec<Vec<DenseVec>>,
        pairing1: Vec<Vec<DenseVec>>,
        anchor: Vec<Vec<DenseVec>>,
    ) -> Result<Self, AlgebroidError> {
        let bundle = VertexAlgebroid { algebra, b_dim, b_labels, del, action, bracket0, pairing1, anchor };
        bundle.validated()
    }

    /// Checks `A` and the table shapes, e.g. after deserialization; fills default labels.
    pub fn validated(mut self) -> Result<Self, AlgebroidError> {
        self.algebra = self.algebra.validated()?;
        let (na, nb) = (self.algebra.dim(), self.b_dim);
        if nb == 0 {
            return Err(AlgebroidError::Shape("B_dim must be positive".into()));
        }
        if self.b_labels.is_empty() {
            self.b_labels = (0..nb).map(|k| format!("f{k}")).collect();
        }
        if self.b_labels.len() != nb {
            return Err(AlgebroidError::Shape(format!("{} B labels for B_dim {nb}", self.b_labels.len())));
        }
        let vec_ok = |v: &DenseVec, n: usize| v.len() == n;
        let table_ok = |t: &Vec<Vec<DenseVec>>, rows: usize, cols: usize, n: usize| {
            t.len() == rows && t.iter().all(|r| r.len() == cols && r.iter().all(|v| vec_ok(v, n)))
        };
        if self.del.len() != na || !self.del.iter().all(|v| vec_ok(v, nb)) {
            return Err(AlgebroidError::Shape(format!("del must be {na} vectors of length {nb}")));
        }
        if !table_ok(&self.action, na, nb, nb) {
            return Err(AlgebroidError::Shape(format!("action must be {na}x{nb}x{nb}")));
        }
        if !table_ok(&self.bracket0, nb, nb, nb) {
            return Err(AlgebroidError::Shape(format!("bracket0 must be {nb}x{nb}x{nb}")));
        }
        if !table_ok(&self.pairing1, nb, nb, na) {
            return Err(AlgebroidError::Shape(format!("pairing1 must be {nb}x{nb}x{na}")));
        }
        if !table_ok(&self.anchor, nb, na, na) {
            return Err(AlgebroidError::Shape(format!("anchor must be {nb}x{na}x{na}")));
        }
        Ok(self)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn a_dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn b_dim(&self) -> usize {
        self.b_dim
    }

    pub fn a_labels(&self) -> &[String] {
        self.algebra.labels()
    }

    pub fn b_labels(&self) -> &[String] {
        &self.b_labels
    }

    pub fn del_table(&self) -> &[DenseVec] {
        &self.del
    }

    pub fn action_table(&self) -> &[Vec<DenseVec>] {
        &self.action
    }

    pub fn bracket_table(&self) -> &[Vec<DenseVec>] {
        &self.bracket0
    }

    pub fn pairing_table(&self) -> &[Vec<DenseVec>] {
        &self.pairing1
    }

    pub fn anchor_table(&self) -> &[Vec<DenseVec>] {
        &self.anchor
    }

    pub fn a_basis(&self, k: usize) -> DenseVec {
        linalg::unit(self.a_dim(), k)
    }

    pub fn b_basis(&self, k: usize) -> DenseVec {
        linalg::unit(self.b_dim, k)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> DenseVec {
        self.algebra.mul(x, y)
    }

    pub fn del(&self, x: &[Scalar]) -> DenseVec {
        let mut out = linalg::zeros(self.b_dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                linalg::axpy(&mut out, c, &self.del[i]);
            }
        }
        out
    }

    fn bilinear(table: &[Vec<DenseVec>], x: &[Scalar], y: &[Scalar], n: usize) -> DenseVec {
        let mut out = linalg::zeros(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    linalg::axpy(&mut out, &(xi * yj), &table[i][j]);
                }
            }
        }
        out
    }

    /// `a . v`
    pub fn act(&self, a: &[Scalar], v: &[Scalar]) -> DenseVec {
        Self::bilinear(&self.action, a, v, self.b_dim)
    }

    /// `u(0) v`
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> DenseVec {
        Self::bilinear(&self.bracket0, u, v, self.b_dim)
    }

    /// `u(1) v`
    pub fn pairing(&self, u: &[Scalar], v: &[Scalar]) -> DenseVec {
        Self::bilinear(&self.pairing1, u, v, self.a_dim())
    }

    /// `u(0) a`
    pub fn anchor(&self, u: &[Scalar], a: &[Scalar]) -> DenseVec {
        Self::bilinear(&self.anchor, u, a, self.a_dim())
    }

    pub fn check_axioms(&self) -> AxiomReport {
        checks::check_axioms(self)
    }

    /// The underlying Leibniz algebra `(B, u(0)v)`.
    pub fn leibniz(&self) -> LeibnizAlgebra {
        LeibnizAlgebra::new(self.b_dim, self.bracket0.clone()).expect("bracket table shape is validated")
    }

    /// Echelon basis of `span{a . del(a')}`.
    pub fn a_del_a(&self) -> Vec<DenseVec> {
        let mut vectors = Vec::new();
        for i in 0..self.a_dim() {
            for j in 0..self.a_dim() {
                vectors.push(self.act(&self.a_basis(i), &self.del[j]));
            }
        }
        linalg::span_basis(&vectors)
    }

    pub fn lie_algebroid_quotient(&self) -> Result<LieAlgebroid, AlgebroidError> {
        lie::quotient(self)
    }

    pub fn one_dim_modules(&self) -> Result<OneDimModules, AlgebroidError> {
        lie::one_dim_modules(self)
    }

    /// The residue of `pairing(u, u)` modulo the radical, for a local `A`.
    pub fn pairing_residue(&self, u: &[Scalar]) -> Result<Scalar, AlgebroidError> {
        Ok(self.algebra.residue(&self.pairing(u, u))?)
    }
}
