//! Truncations of the graded vertex algebra of a vertex algebroid and of its
//! quotients by ideals generated in degree 0.

use num_traits::One;
use serde::Serialize;

use super::engine;
use super::loop_algebra::{LoopAlgebra, Mode};
use super::pbw::{GroundModule, InducedModule};
use super::VaError;
use crate::algebroid::VertexAlgebroid;
use crate::linalg::{self, Accumulator, DenseVec, Echelon, SparseVec};
use crate::scalar::Scalar;

pub const DEFAULT_DEGREE: usize = 6;
pub const DEFAULT_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Certificate {
    Exact,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDim {
    pub degree: usize,
    pub dim: usize,
    pub lower_bound: usize,
    pub certificate: Certificate,
}

/// A homogeneous vector in the PBW basis of the underlying induced module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VaVector {
    pub degree: usize,
    pub coeffs: SparseVec,
}

impl VaVector {
    pub fn zero(degree: usize) -> Self {
        VaVector { degree, coeffs: SparseVec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        VaVector { degree: self.degree, coeffs: self.coeffs.scaled(c) }
    }

    pub fn add_scaled(&self, c: &Scalar, other: &VaVector) -> Self {
        assert_eq!(self.degree, other.degree, "adding vectors of different degrees");
        VaVector { degree: self.degree, coeffs: self.coeffs.add_scaled(c, &other.coeffs) }
    }
}

/// `m (m-1) ... (m-i+1) / i!` for any integer `m`.
pub(crate) fn binomial(m: i64, i: i64) -> Scalar {
    let mut out = Scalar::one();
    for r in 0..i {
        out = &(&out * &Scalar::int(m - r)) / &Scalar::int(r + 1);
    }
    out
}

fn sign(k: i64) -> Scalar {
    if k.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        Scalar::int(-1)
    }
}

/// The smallest subspace containing `generators` that is an ideal of `A` and
/// stable under every anchor.
pub fn degree0_ideal(bundle: &VertexAlgebroid, generators: &[DenseVec]) -> Vec<DenseVec> {
    let mut basis = linalg::span_basis(generators);
    loop {
        let mut candidates = basis.clone();
        for v in &basis {
            for i in 0..bundle.a_dim() {
                candidates.push(bundle.mul(&bundle.a_basis(i), v));
            }
            for j in 0..bundle.b_dim() {
                candidates.push(bundle.anchor(&bundle.b_basis(j), v));
            }
        }
        let next = linalg::span_basis(&candidates);
        if next.len() == basis.len() {
            return basis;
        }
        basis = next;
    }
}

/// `V_B` (or its quotient by the ideal generated by a subset of `A`) in
/// degrees `0..=N`, realised as the induced module over `A` (or `A/I`)
/// modulo the closure of the relations `v_n u`, `v` in `E`.
#[derive(Debug)]
pub struct GradedVA {
    module: InducedModule,
    truncation: usize,
    cap: usize,
    generators: Vec<DenseVec>,
    ideal: Vec<DenseVec>,
    relations: Vec<Echelon>,
    dims: Vec<GradedDim>,
}

pub fn build_loop(bundle: &VertexAlgebroid, n: usize) -> LoopAlgebra {
    LoopAlgebra::new(bundle, n + 1)
}

/// Builds the truncation of `V_B` in degrees `0..=n`.
///
/// Words in degree `d` have at most `d` creation factors once `a(-1)`-strings
/// are absorbed into `A`, so the length cap only binds when `cap < n`.
pub fn build_vb(bundle: &VertexAlgebroid, n: usize, cap: usize) -> Result<GradedVA, VaError> {
    let report = bundle.check_axioms();
    if !report.all_passed() {
        let names: Vec<&str> = report.failures().iter().map(|c| c.name).collect();
        return Err(VaError::NotAVertexAlgebroid(names.join("; ")));
    }
    if cap < n {
        return Err(VaError::CapTooSmall { cap, degree: n });
    }
    GradedVA::build(bundle, n, cap, Vec::new())
}

impl GradedVA {
    fn build(bundle: &VertexAlgebroid, n: usize, cap: usize, generators: Vec<DenseVec>) -> Result<Self, VaError> {
        let ideal = degree0_ideal(bundle, &generators);
        if ideal.len() == bundle.a_dim() {
            return Err(VaError::NotInRadical);
        }
        let ground = GroundModule::algebra_quotient(bundle, &ideal);
        let module = InducedModule::new(LoopAlgebra::new(bundle, n + 1), ground, n);
        let mut seeds = engine::w_relations(&module)?;
        for (d, extra) in engine::ideal_seeds(&module, &generators)?.into_iter().enumerate() {
            seeds[d].extend(extra);
        }
        let relations = engine::close(&module, seeds, true)?;
        let lower = engine::simple_quotient_dims(&module, &relations, n)?;
        let sound = relations[0].rank() == 0;
        let dims = (0..=n)
            .map(|d| {
                let dim = module.dim(d) - relations[d].rank();
                let exact = sound && dim == lower[d];
                GradedDim {
                    degree: d,
                    dim,
                    lower_bound: lower[d],
                    certificate: if exact { Certificate::Exact } else { Certificate::Upper },
                }
            })
            .collect();
        Ok(GradedVA { module, truncation: n, cap, generators, ideal, relations, dims })
    }

    pub fn bundle(&self) -> &VertexAlgebroid {
        self.module.lie().bundle()
    }

    pub fn loop_algebra(&self) -> &LoopAlgebra {
        self.module.lie()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn character(&self) -> &[GradedDim] {
        &self.dims
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims[degree].dim
    }

    /// Basis of the degree-0 ideal that has been divided out.
    pub fn degree0_ideal(&self) -> &[DenseVec] {
        &self.ideal
    }

    pub fn relation_dim(&self, degree: usize) -> usize {
        self.relations[degree].rank()
    }

    pub fn spanning_dim(&self, degree: usize) -> usize {
        self.module.dim(degree)
    }

    fn check_degree(&self, degree: i64) -> Result<usize, VaError> {
        if degree < 0 || degree as usize > self.truncation {
            return Err(VaError::DegreeOverflow { degree, max: self.truncation });
        }
        Ok(degree as usize)
    }

    pub fn reduce(&self, v: &VaVector) -> VaVector {
        VaVector { degree: v.degree, coeffs: self.relations[v.degree].reduce(&v.coeffs) }
    }

    pub fn equal(&self, u: &VaVector, v: &VaVector) -> bool {
        u.degree == v.degree && self.reduce(&u.add_scaled(&Scalar::int(-1), v)).is_zero()
    }

    /// Representatives of a basis of the degree `d` piece.
    pub fn basis(&self, degree: usize) -> Vec<VaVector> {
        (0..self.module.dim(degree))
            .filter(|&k| !self.relations[degree].is_pivot(k))
            .map(|k| VaVector { degree, coeffs: SparseVec::unit(k) })
            .collect()
    }

    pub fn vacuum(&self) -> VaVector {
        let v = self.module.vacuum().expect("quotients of A have a vacuum");
        VaVector { degree: 0, coeffs: self.module.ground_vector(v) }
    }

    /// The state `x 1`.
    pub fn state(&self, x: &Mode) -> Result<VaVector, VaError> {
        self.apply(x, &self.vacuum())
    }

    /// `a(-1) 1`.
    pub fn a_state(&self, a: &[Scalar]) -> VaVector {
        self.state(&self.loop_algebra().a_mode(a, -1)).expect("degree 0 is in the window")
    }

    /// `b(-1) 1`.
    pub fn b_state(&self, b: &[Scalar]) -> Result<VaVector, VaError> {
        self.state(&self.loop_algebra().b_mode(b, -1))
    }

    /// The states `e_i` and `f_j(-1) 1` with their labels.
    pub fn generators(&self) -> Result<Vec<(String, VaVector)>, VaError> {
        let bundle = self.bundle();
        let mut out: Vec<(String, VaVector)> =
            (0..bundle.a_dim()).map(|i| (bundle.a_labels()[i].clone(), self.a_state(&bundle.a_basis(i)))).collect();
        for j in 0..bundle.b_dim() {
            out.push((bundle.b_labels()[j].clone(), self.b_state(&bundle.b_basis(j))?));
        }
        Ok(out)
    }

    /// `x v`, reduced.
    pub fn apply(&self, x: &Mode, v: &VaVector) -> Result<VaVector, VaError> {
        let t = self.check_degree(v.degree as i64 + x.degree)?;
        let raw = self.module.apply(x, v.degree, &v.coeffs)?;
        Ok(VaVector { degree: t, coeffs: self.relations[t].reduce(&raw) })
    }

    /// `D v`.
    pub fn translation(&self, v: &VaVector) -> Result<VaVector, VaError> {
        let t = self.check_degree(v.degree as i64 + 1)?;
        let raw = self.module.translation(v.degree, &v.coeffs)?;
        Ok(VaVector { degree: t, coeffs: self.relations[t].reduce(&raw) })
    }

    /// `u_n v`.
    pub fn product(&self, u: &VaVector, n: i64, v: &VaVector) -> Result<VaVector, VaError> {
        let t = self.check_degree(u.degree as i64 + v.degree as i64 - n - 1)?;
        let coeffs = self.product_raw(u.degree, &u.coeffs, n, v.degree, &v.coeffs)?;
        Ok(VaVector { degree: t, coeffs })
    }

    fn product_raw(&self, du: usize, u: &SparseVec, n: i64, dv: usize, v: &SparseVec) -> Result<SparseVec, VaError> {
        if du as i64 + dv as i64 - n - 1 < 0 || u.is_zero() || v.is_zero() {
            return Ok(SparseVec::new());
        }
        let mut acc = Accumulator::new();
        for (k, c) in u.iter() {
            acc.add_vec(c, &self.product_word(du, k, n, dv, v)?);
        }
        Ok(acc.finish())
    }

    /// `w_n v` for a PBW basis vector `w = x(m) w'` via the iterate formula
    /// `(x_m w')_n = sum_i (-1)^i C(m, i) (x_{m-i} w'_{n+i} - (-1)^m w'_{m+n-i} x_i)`.
    fn product_word(&self, du: usize, idx: usize, n: i64, dv: usize, v: &SparseVec) -> Result<SparseVec, VaError> {
        let t = du as i64 + dv as i64 - n - 1;
        if t < 0 {
            return Ok(SparseVec::new());
        }
        let t = self.check_degree(t)?;
        let lie = self.loop_algebra();
        let (word, k) = self.module.word(du, idx).clone();
        if word.is_empty() {
            let lift = self.module.lift(k).expect("quotients of A have lifts");
            let raw = self.module.apply(&lie.a_mode(lift, n), dv, v)?;
            return Ok(self.relations[t].reduce(&raw));
        }
        let (e, c) = (word[0].0 as usize, word[0].1 as usize);
        let rest_deg = du - e;
        let rest = self.module.index_of(rest_deg, &word[1..].to_vec(), k).expect("tail of a PBW word");
        let m = -(e as i64);
        let colour = self.bundle().b_basis(c);
        let mut acc = Accumulator::new();
        let mut i = 0i64;
        loop {
            let inner_deg = rest_deg as i64 + dv as i64 - (n + i) - 1;
            if inner_deg < 0 {
                break;
            }
            let inner = self.product_word(rest_deg, rest, n + i, dv, v)?;
            if !inner.is_zero() {
                let image = self.module.apply(&lie.b_mode(&colour, m - i), inner_deg as usize, &inner)?;
                acc.add_vec(&(&sign(i) * &binomial(m, i)), &image);
            }
            i += 1;
        }
        for i in 0..=dv as i64 {
            let xv = self.module.apply(&lie.b_mode(&colour, i), dv, v)?;
            if xv.is_zero() {
                continue;
            }
            let xv_deg = dv - i as usize;
            let xv = self.relations[xv_deg].reduce(&xv);
            let inner = self.product_raw(rest_deg, &SparseVec::unit(rest), m + n - i, xv_deg, &xv)?;
            let coef = -(&(&sign(m) * &sign(i)) * &binomial(m, i));
            acc.add_vec(&coef, &inner);
        }
        Ok(self.relations[t].reduce(&acc.finish()))
    }

    /// `u_n v = sum_j (-1)^{n+j+1} D^j (v_{n+j} u) / j!` for every `n` whose
    /// result lies in the window.
    pub fn check_skew_symmetry(&self, u: &VaVector, v: &VaVector) -> Result<bool, VaError> {
        let s = u.degree as i64 + v.degree as i64 - 1;
        for n in (s - self.truncation as i64)..=s {
            let lhs = self.product(u, n, v)?;
            let t = lhs.degree as i64;
            let mut rhs = VaVector::zero(lhs.degree);
            let mut factorial = Scalar::one();
            for j in 0..=t {
                if j > 0 {
                    factorial = &factorial * &Scalar::int(j);
                }
                let mut term = self.product(v, n + j, u)?;
                for _ in 0..j {
                    term = self.translation(&term)?;
                }
                let coef = &sign(n + j + 1) / &factorial;
                rhs = rhs.add_scaled(&coef, &term);
            }
            if !self.equal(&lhs, &rhs) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `[u_m, v_n] w = sum_i C(m, i) (u_i v)_{m+n-i} w` on every basis vector
    /// `w` for which all terms stay in the window.
    pub fn check_commutator(&self, u: &VaVector, v: &VaVector, m: i64, n: i64) -> Result<bool, VaError> {
        let (du, dv) = (u.degree as i64, v.degree as i64);
        let top = self.truncation as i64;
        let mut inner_products = Vec::new();
        for i in 0..(du + dv).max(0) {
            inner_products.push((i, self.product(u, i, v)?));
        }
        for dw in 0..=self.truncation {
            let dwi = dw as i64;
            let t = du + dv + dwi - m - n - 2;
            if t < 0 || t > top || dv + dwi - n - 1 > top || du + dwi - m - 1 > top {
                continue;
            }
            for w in self.basis(dw) {
                let lhs_a = self.product_raw(du as usize, &u.coeffs, m, self.nonneg(dv + dwi - n - 1), &self.raw_or_zero(v, n, &w)?)?;
                let lhs_b = self.product_raw(dv as usize, &v.coeffs, n, self.nonneg(du + dwi - m - 1), &self.raw_or_zero(u, m, &w)?)?;
                let mut diff = lhs_a.add_scaled(&Scalar::int(-1), &lhs_b);
                for (i, uv) in &inner_products {
                    let term = self.product_raw(uv.degree, &uv.coeffs, m + n - i, dw, &w.coeffs)?;
                    diff = diff.add_scaled(&-binomial(m, *i), &term);
                }
                if !self.relations[t as usize].reduce(&diff).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn nonneg(&self, d: i64) -> usize {
        d.max(0) as usize
    }

    fn raw_or_zero(&self, u: &VaVector, n: i64, w: &VaVector) -> Result<SparseVec, VaError> {
        self.product_raw(u.degree, &u.coeffs, n, w.degree, &w.coeffs)
    }

    /// Whether every in-window mode maps the relation space into itself.
    pub fn fixpoint_holds(&self) -> Result<bool, VaError> {
        Ok(engine::fixpoint_violation(&self.module, &self.relations)?.is_none())
    }

    /// The quotient by the ideal generated by `generators`, a subset of the radical of `A`.
    pub fn degree0_ideal_quotient(&self, generators: &[DenseVec]) -> Result<GradedVA, VaError> {
        let bundle = self.bundle();
        let radical = bundle.algebra().radical();
        for s in generators {
            let mut trial = radical.clone();
            trial.push(s.clone());
            if linalg::rank(&trial) > radical.len() {
                return Err(VaError::NotInRadical);
            }
        }
        let mut all = self.generators.clone();
        all.extend(generators.iter().cloned());
        GradedVA::build(bundle, self.truncation, self.cap, all)
    }

    pub fn describe(&self, v: &VaVector) -> String {
        self.module.describe(v.degree, &v.coeffs)
    }
}
