//! Modules induced from one-dimensional modules of `B / A del(A)`.

use serde::Serialize;

use super::engine;
use super::graded::{Certificate, GradedDim};
use super::loop_algebra::{LoopAlgebra, ModeId};
use super::pbw::{GroundModule, InducedModule};
use super::VaError;
use crate::algebroid::VertexAlgebroid;
use crate::linalg::{Accumulator, Echelon, SparseVec};
use crate::scalar::Scalar;

/// Graded dimensions of `M(U)`, of its quotient `M_B(U)` by the relations of
/// `E`, and of the simple quotient `L(U)` computed in two ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedModule {
    pub truncation: usize,
    pub lambda: Scalar,
    /// `e_i v = algebra_action[i] v`.
    pub algebra_action: Vec<Scalar>,
    /// `f_j(0) v = b_action[j] v`.
    pub b_action: Vec<Scalar>,
    pub induced: Vec<usize>,
    pub restricted: Vec<GradedDim>,
    /// `L(U)` from the largest submodule avoiding degree 0.
    pub simple: Vec<usize>,
    /// `L(U)` as the rank of all lowering words into degree 0.
    pub simple_by_words: Vec<usize>,
}

impl GradedModule {
    pub fn character(&self) -> &[GradedDim] {
        &self.restricted
    }

    pub fn methods_agree(&self) -> bool {
        self.simple == self.simple_by_words
    }
}

/// Builds `M(U)`, `M_B(U)` and `L(U)` in degrees `0..=n` for the module with
/// `q_0 v = lambda v` on which `A` acts through its residue.
pub fn induced_module(bundle: &VertexAlgebroid, lambda: &Scalar, n: usize) -> Result<GradedModule, VaError> {
    let report = bundle.check_axioms();
    if !report.all_passed() {
        let names: Vec<&str> = report.failures().iter().map(|c| c.name).collect();
        return Err(VaError::NotAVertexAlgebroid(names.join("; ")));
    }
    let modules = bundle.one_dim_modules()?;
    let standard = modules.standard(lambda);
    let check = modules.verify(&standard);
    if !check.passed {
        return Err(VaError::BadModuleData(check.violations.join("; ")));
    }
    let rho: Vec<Scalar> = modules.quotient.projection[0].iter().map(|p| p * lambda).collect();
    let ground = GroundModule::one_dim(&standard.algebra_action, &rho);
    let violations = ground.violations(bundle);
    if !violations.is_empty() {
        return Err(VaError::BadModuleData(violations.join("; ")));
    }
    let module = InducedModule::new(LoopAlgebra::new(bundle, n + 1), ground, n);
    let relations = engine::close(&module, engine::w_relations(&module)?, false)?;
    let empty = vec![Echelon::new(); n + 1];
    let simple = engine::simple_quotient_dims(&module, &empty, n)?;
    let simple_by_words = word_ranks(&module, n)?;
    let induced: Vec<usize> = (0..=n).map(|d| module.dim(d)).collect();
    let restricted = (0..=n)
        .map(|d| {
            let dim = module.dim(d) - relations[d].rank();
            GradedDim {
                degree: d,
                dim,
                lower_bound: simple[d],
                certificate: if dim == simple[d] { Certificate::Exact } else { Certificate::Upper },
            }
        })
        .collect();
    Ok(GradedModule {
        truncation: n,
        lambda: lambda.clone(),
        algebra_action: standard.algebra_action,
        b_action: rho,
        induced,
        restricted,
        simple,
        simple_by_words,
    })
}

/// Rank of the map sending `w` in degree `d` to the values of every sequence
/// of lowering basis modes carrying it down to degree 0.
fn word_ranks(module: &InducedModule, n: usize) -> Result<Vec<usize>, VaError> {
    let nb = module.lie().bundle().b_dim();
    // images[d][k]: the word values of the k-th basis vector of degree d
    let mut images: Vec<Vec<SparseVec>> = vec![(0..module.dim(0)).map(SparseVec::unit).collect()];
    let mut widths = vec![module.dim(0)];
    let mut ranks = vec![module.dim(0)];
    for d in 1..=n {
        let mut offsets = Vec::new();
        let mut width = 0;
        for k in 1..=d {
            for _ in 0..nb {
                offsets.push(width);
                width += widths[d - k];
            }
        }
        let mut column = Vec::with_capacity(module.dim(d));
        let mut ech = Echelon::new();
        for idx in 0..module.dim(d) {
            let mut acc = Accumulator::new();
            let mut block = 0;
            for k in 1..=d {
                for c in 0..nb {
                    let image = module.act_id(ModeId { degree: -(k as i64), index: c }, d, idx)?;
                    for (i, x) in image.iter() {
                        acc.add_vec(x, &images[d - k][i].map_indices(|j| j + offsets[block]));
                    }
                    block += 1;
                }
            }
            let v = acc.finish();
            ech.insert(&v);
            column.push(v);
        }
        ranks.push(ech.rank());
        images.push(column);
        widths.push(width);
    }
    Ok(ranks)
}
