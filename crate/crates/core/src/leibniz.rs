//! Left Leibniz algebras given by bracket tables: identity checks, cyclic
//! generator search and classification of the cyclic non-Lie algebras of
//! dimension 2 and 3.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, DenseVec};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeibnizError {
    #[error("bracket table has the wrong shape: {0}")]
    Shape(String),
    #[error("no cyclic generator found within the search budget (inconclusive)")]
    NotCyclicOrInconclusive,
    #[error("the algebra is a Lie algebra")]
    IsLie,
    #[error("classification is only available in dimensions 2 and 3, got {0}")]
    UnsupportedDimension(usize),
    #[error("the powers of the given element do not span the algebra")]
    NotAGenerator,
    #[error("invalid normal-form parameter: {0}")]
    BadParameter(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeibnizAlgebra {
    dim: usize,
    bracket: Vec<Vec<Vec<Scalar>>>,
}

/// The presentation of a cyclic algebra through one generator `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicForm {
    pub generator: DenseVec,
    /// `b^1, ..., b^{dim+1}`.
    pub powers: Vec<DenseVec>,
    /// Coefficients of `b^{dim+1}` in the basis `b^2, ..., b^dim`.
    pub relation: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CyclicType {
    #[serde(rename = "dim2-null")]
    Dim2Null,
    #[serde(rename = "dim2-idem")]
    Dim2Idem,
    #[serde(rename = "3a")]
    Nilpotent3,
    #[serde(rename = "3b")]
    Diagonal3,
    #[serde(rename = "3c")]
    Jordan3,
    #[serde(rename = "3d")]
    NonSplit3,
}

impl CyclicType {
    pub fn tag(self) -> &'static str {
        match self {
            CyclicType::Dim2Null => "dim2-null",
            CyclicType::Dim2Idem => "dim2-idem",
            CyclicType::Nilpotent3 => "3a",
            CyclicType::Diagonal3 => "3b",
            CyclicType::Jordan3 => "3c",
            CyclicType::NonSplit3 => "3d",
        }
    }
}

impl std::fmt::Display for CyclicType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// The eigenvalue ratio of a type 3b algebra, recovered from `mu` up to `alpha <-> 1/alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaRoots {
    Pair(Scalar, Scalar),
    /// The discriminant `mu(mu + 4)` has no square root in the scalar field.
    Irrational { discriminant: Scalar },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub form: CyclicForm,
    pub cyclic_type: CyclicType,
    /// `c1^2 / c0` for dimension 3 when `c0 != 0`.
    pub scaling_invariant: Option<Scalar>,
    pub alpha: Option<AlphaRoots>,
}

/// Outcome of [`LeibnizAlgebra::check_left_leibniz`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub witness: Option<(usize, usize, usize)>,
}

/// Number of random candidates tried after the fixed pattern set.
const RANDOM_BUDGET: usize = 256;

impl LeibnizAlgebra {
    pub fn new(dim: usize, bracket: Vec<Vec<Vec<Scalar>>>) -> Result<Self, LeibnizError> {
        if dim == 0 {
            return Err(LeibnizError::Shape("dimension must be positive".into()));
        }
        if bracket.len() != dim || bracket.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(LeibnizError::Shape(format!("table must be {dim}x{dim}x{dim}")));
        }
        Ok(LeibnizAlgebra { dim, bracket })
    }

    /// Re-validates the table shape, e.g. after deserialization.
    pub fn validated(self) -> Result<Self, LeibnizError> {
        LeibnizAlgebra::new(self.dim, self.bracket)
    }

    /// Builds a table from the nonzero brackets `[e_i, e_j] = v`.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, DenseVec)]) -> Self {
        let mut bracket = vec![vec![linalg::zeros(dim); dim]; dim];
        for (i, j, v) in entries {
            bracket[*i][*j] = v.clone();
        }
        LeibnizAlgebra { dim, bracket }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.bracket
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> DenseVec {
        let mut out = linalg::zeros(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    linalg::axpy(&mut out, &(xi * yj), &self.bracket[i][j]);
                }
            }
        }
        out
    }

    fn basis(&self, k: usize) -> DenseVec {
        linalg::unit(self.dim, k)
    }

    pub fn check_left_leibniz(&self) -> IdentityCheck {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let lhs = self.bracket(&x, &self.bracket(&y, &z));
                    let rhs = linalg::add(
                        &self.bracket(&self.bracket(&x, &y), &z),
                        &self.bracket(&y, &self.bracket(&x, &z)),
                    );
                    if lhs != rhs {
                        return IdentityCheck { holds: false, witness: Some((i, j, k)) };
                    }
                }
            }
        }
        IdentityCheck { holds: true, witness: None }
    }

    pub fn is_lie(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                self.bracket[i][j] == self.bracket[j][i].iter().map(|c| -c.clone()).collect::<DenseVec>()
            })
        })
    }

    /// `v^1, ..., v^{count}` with `v^{n+1} = [v, v^n]`.
    pub fn powers(&self, v: &[Scalar], count: usize) -> Vec<DenseVec> {
        let mut out: Vec<DenseVec> = vec![v.to_vec()];
        while out.len() < count {
            let next = self.bracket(v, out.last().expect("nonempty"));
            out.push(next);
        }
        out
    }

    /// The cyclic presentation through `v`, if the powers of `v` span the algebra.
    pub fn cyclic_form(&self, v: &[Scalar]) -> Option<CyclicForm> {
        let powers = self.powers(v, self.dim + 1);
        if linalg::rank(&powers[..self.dim]) < self.dim {
            return None;
        }
        let coords = linalg::coordinates(&powers[..self.dim], &powers[self.dim])?;
        debug_assert!(coords[0].is_zero());
        Some(CyclicForm { generator: v.to_vec(), relation: coords[1..].to_vec(), powers })
    }

    /// Searches basis vectors, then signed subset sums, then seeded random
    /// vectors with small entries for an element whose powers span.
    pub fn find_cyclic_generator(&self, seed: u64) -> Option<CyclicForm> {
        for k in 0..self.dim {
            if let Some(form) = self.cyclic_form(&self.basis(k)) {
                return Some(form);
            }
        }
        let n = self.dim;
        let mut pattern = 1usize;
        let total = 3usize.checked_pow(n as u32).unwrap_or(usize::MAX);
        while pattern < total.min(1 << 16) {
            let mut digits = pattern;
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(Scalar::from((digits % 3) as i64 - 1));
                digits /= 3;
            }
            pattern += 1;
            if v.iter().filter(|c| !c.is_zero()).count() < 2 {
                continue;
            }
            if let Some(form) = self.cyclic_form(&v) {
                return Some(form);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..RANDOM_BUDGET {
            let v: DenseVec = (0..n)
                .map(|_| Scalar::from_ints(rng.gen_range(-5..=5), rng.gen_range(-5..=5)))
                .collect();
            if let Some(form) = self.cyclic_form(&v) {
                return Some(form);
            }
        }
        None
    }

    pub fn classify_cyclic(&self, seed: u64) -> Result<Classification, LeibnizError> {
        if !matches!(self.dim, 2 | 3) {
            return Err(LeibnizError::UnsupportedDimension(self.dim));
        }
        if self.is_lie() {
            return Err(LeibnizError::IsLie);
        }
        let form = self.find_cyclic_generator(seed).ok_or(LeibnizError::NotCyclicOrInconclusive)?;
        Ok(classify_form(form))
    }

    /// Classifies the presentation through a given generator.
    pub fn classify_with_generator(&self, v: &[Scalar]) -> Result<Classification, LeibnizError> {
        if self.is_lie() {
            return Err(LeibnizError::IsLie);
        }
        let form = self.cyclic_form(v).ok_or(LeibnizError::NotAGenerator)?;
        Ok(classify_form(form))
    }

    /// The cyclic algebra with basis `b, b^2, ..., b^dim` and
    /// `b^{dim+1} = sum_k relation[k] b^{k+2}`; all brackets `[b^k, -]`, k >= 2, vanish.
    pub fn from_relation(relation: &[Scalar]) -> Self {
        let dim = relation.len() + 1;
        let mut entries = Vec::new();
        for k in 0..dim - 1 {
            entries.push((0, k, linalg::unit(dim, k + 1)));
        }
        let mut top = linalg::zeros(dim);
        for (k, c) in relation.iter().enumerate() {
            top[k + 1] = c.clone();
        }
        entries.push((0, dim - 1, top));
        LeibnizAlgebra::from_entries(dim, &entries)
    }

    /// Changes basis: `new_basis[k]` (in old coordinates) becomes `e_k`.
    pub fn change_basis(&self, new_basis: &[DenseVec]) -> Option<Self> {
        let n = self.dim;
        let mut bracket = vec![vec![linalg::zeros(n); n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = self.bracket(&new_basis[i], &new_basis[j]);
                bracket[i][j] = linalg::coordinates(new_basis, &v)?;
            }
        }
        Some(LeibnizAlgebra { dim: n, bracket })
    }
}

fn classify_form(form: CyclicForm) -> Classification {
    let relation = form.relation.clone();
    if relation.len() == 1 {
        let cyclic_type = if relation[0].is_zero() { CyclicType::Dim2Null } else { CyclicType::Dim2Idem };
        return Classification { form, cyclic_type, scaling_invariant: None, alpha: None };
    }
    let (c0, c1) = (&relation[0], &relation[1]);
    if c0.is_zero() {
        let cyclic_type = if c1.is_zero() { CyclicType::Nilpotent3 } else { CyclicType::NonSplit3 };
        return Classification { form, cyclic_type, scaling_invariant: None, alpha: None };
    }
    let mu = &(c1 * c1) / c0;
    let four = Scalar::from(4);
    if mu == -four.clone() {
        return Classification { form, cyclic_type: CyclicType::Jordan3, scaling_invariant: Some(mu), alpha: None };
    }
    let alpha = alpha_from_invariant(&mu);
    Classification { form, cyclic_type: CyclicType::Diagonal3, scaling_invariant: Some(mu), alpha: Some(alpha) }
}

/// Roots of `alpha^2 + (2 + mu) alpha + 1 = 0`, i.e. `mu = -(alpha + 1)^2 / alpha`.
pub fn alpha_from_invariant(mu: &Scalar) -> AlphaRoots {
    let two = Scalar::from(2);
    let p = &two + mu;
    let discriminant = mu * &(mu + &Scalar::from(4));
    match discriminant.sqrt_if_square() {
        Some(root) => {
            let half = Scalar::ratio(1, 2);
            let first = &(&(-p.clone()) + &root) * &half;
            let second = &(&(-p) - &root) * &half;
            AlphaRoots::Pair(first, second)
        }
        None => AlphaRoots::Irrational { discriminant },
    }
}

/// `-(s^2 + 1)^2 / s^2`, the invariant of the type 3b algebra with `alpha = s^2`.
pub fn diagonal_invariant(s: &Scalar) -> Scalar {
    let alpha = s * s;
    let num = &alpha + &Scalar::one();
    -&(&(&num * &num) / &alpha)
}

/// The standard three-dimensional tables, in the basis `x, y, z`.
pub mod standard {
    use super::*;

    fn v(entries: [i64; 3]) -> DenseVec {
        entries.iter().map(|&c| Scalar::from(c)).collect()
    }

    /// `[x,x] = y`, `[x,y] = z`.
    pub fn nilpotent() -> LeibnizAlgebra {
        LeibnizAlgebra::from_entries(3, &[(0, 0, v([0, 1, 0])), (0, 1, v([0, 0, 1]))])
    }

    /// `[z,y] = y`, `[z,x] = alpha x`.
    pub fn diagonal(alpha: &Scalar) -> Result<LeibnizAlgebra, LeibnizError> {
        if alpha.is_zero() || alpha.is_one() {
            return Err(LeibnizError::BadParameter(format!("alpha = {alpha}")));
        }
        let ax = vec![alpha.clone(), Scalar::zero(), Scalar::zero()];
        Ok(LeibnizAlgebra::from_entries(3, &[(2, 1, v([0, 1, 0])), (2, 0, ax)]))
    }

    /// `[z,x] = x + y`, `[z,y] = y`.
    pub fn jordan() -> LeibnizAlgebra {
        LeibnizAlgebra::from_entries(3, &[(2, 0, v([1, 1, 0])), (2, 1, v([0, 1, 0]))])
    }

    /// `[z,x] = y`, `[z,y] = y`, `[z,z] = x`.
    pub fn non_split() -> LeibnizAlgebra {
        LeibnizAlgebra::from_entries(3, &[(2, 0, v([0, 1, 0])), (2, 1, v([0, 1, 0])), (2, 2, v([1, 0, 0]))])
    }

    /// `[b,b] = b^2` and `[b,b^2] = b^2` or `0`.
    pub fn two_dim(idempotent: bool) -> LeibnizAlgebra {
        let c = if idempotent { 1 } else { 0 };
        LeibnizAlgebra::from_relation(&[Scalar::from(c)])
    }
}

/// Relation coefficients `(c0, c1)` of the normal forms `b^4 = c0 b^2 + c1 b^3`.
pub mod normal_form {
    use super::*;

    /// Type 3b with `alpha = s^2`: `b^4 = b^2 - ((alpha + 1) / s) i b^3`.
    pub fn diagonal(s: &Scalar) -> Result<(Scalar, Scalar), LeibnizError> {
        let alpha = s * s;
        if s.is_zero() || alpha.is_one() {
            return Err(LeibnizError::BadParameter(format!("s = {s}")));
        }
        let c1 = -&(&(&(&alpha + &Scalar::one()) / s) * &Scalar::i());
        Ok((Scalar::one(), c1))
    }

    pub fn jordan() -> (Scalar, Scalar) {
        (Scalar::one(), Scalar::from_ints(0, 2))
    }

    pub fn non_split() -> (Scalar, Scalar) {
        (Scalar::zero(), Scalar::one())
    }

    pub fn nilpotent() -> (Scalar, Scalar) {
        (Scalar::zero(), Scalar::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn standard_tables_satisfy_leibniz() {
        for alg in [
            standard::nilpotent(),
            standard::diagonal(&q("4")).unwrap(),
            standard::jordan(),
            standard::non_split(),
            standard::two_dim(false),
            standard::two_dim(true),
        ] {
            assert!(alg.check_left_leibniz().holds);
            assert!(!alg.is_lie());
        }
    }

    #[test]
    fn corrupted_sl2_reports_triple() {
        // e, f, h with [h,e]=2e, [h,f]=-2f, [e,f]=h, antisymmetrized
        let v = |a: &str, b: &str, c: &str| vec![q(a), q(b), q(c)];
        let mut entries = vec![
            (2, 0, v("2", "0", "0")),
            (0, 2, v("-2", "0", "0")),
            (2, 1, v("0", "-2", "0")),
            (1, 2, v("0", "2", "0")),
            (0, 1, v("0", "0", "1")),
            (1, 0, v("0", "0", "-1")),
        ];
        let sl2 = LeibnizAlgebra::from_entries(3, &entries);
        assert!(sl2.check_left_leibniz().holds);
        assert!(sl2.is_lie());
        entries[4].2 = v("0", "0", "2");
        let bad = LeibnizAlgebra::from_entries(3, &entries);
        let check = bad.check_left_leibniz();
        assert!(!check.holds);
        assert!(check.witness.is_some());
    }

    #[test]
    fn abelian_is_lie() {
        let alg = LeibnizAlgebra::new(2, vec![vec![linalg::zeros(2); 2]; 2]).unwrap();
        assert!(alg.is_lie());
        assert_eq!(alg.classify_cyclic(0).unwrap_err(), LeibnizError::IsLie);
    }

    #[test]
    fn generator_and_relations_of_standard_tables() {
        let form = standard::nilpotent().find_cyclic_generator(0).unwrap();
        assert_eq!(form.generator, vec![q("1"), q("0"), q("0")]);
        assert_eq!(form.relation, vec![q("0"), q("0")]);

        let c = standard::nilpotent().classify_cyclic(0).unwrap();
        assert_eq!(c.cyclic_type, CyclicType::Nilpotent3);
        assert_eq!(standard::non_split().classify_cyclic(0).unwrap().cyclic_type, CyclicType::NonSplit3);
        let jordan = standard::jordan().classify_cyclic(0).unwrap();
        assert_eq!(jordan.cyclic_type, CyclicType::Jordan3);
        assert_eq!(jordan.scaling_invariant, Some(q("-4")));
        let diag = standard::diagonal(&q("4")).unwrap().classify_cyclic(0).unwrap();
        assert_eq!(diag.cyclic_type, CyclicType::Diagonal3);
        assert_eq!(diag.scaling_invariant, Some(q("-25/4")));
    }

    #[test]
    fn normal_form_relations() {
        let (c0, c1) = normal_form::jordan();
        let alg = LeibnizAlgebra::from_relation(&[c0, c1]);
        let c = alg.classify_cyclic(0).unwrap();
        assert_eq!(c.form.relation, vec![q("1"), q("2i")]);
        assert_eq!(c.cyclic_type, CyclicType::Jordan3);

        let (c0, c1) = normal_form::diagonal(&q("2")).unwrap();
        assert_eq!(c1, q("-5/2i"));
        let c = LeibnizAlgebra::from_relation(&[c0, c1]).classify_cyclic(0).unwrap();
        assert_eq!(c.scaling_invariant, Some(q("-25/4")));
        match c.alpha.unwrap() {
            AlphaRoots::Pair(x, y) => {
                let mut roots = [x.to_string(), y.to_string()];
                roots.sort();
                assert_eq!(roots, ["1/4".to_string(), "4".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(normal_form::diagonal(&q("-1")).is_err());
        assert!(normal_form::diagonal(&q("i")).is_ok());
    }

    #[test]
    fn irrational_alpha_is_reported() {
        // mu = 1: discriminant 5 is not a square
        let alg = LeibnizAlgebra::from_relation(&[q("1"), q("1")]);
        let c = alg.classify_cyclic(0).unwrap();
        assert_eq!(c.alpha, Some(AlphaRoots::Irrational { discriminant: q("5") }));
    }

    #[test]
    fn two_dim_tags() {
        assert_eq!(standard::two_dim(false).classify_cyclic(0).unwrap().cyclic_type, CyclicType::Dim2Null);
        let alg = LeibnizAlgebra::from_relation(&[q("3")]);
        assert_eq!(alg.classify_cyclic(0).unwrap().cyclic_type, CyclicType::Dim2Idem);
    }

    #[test]
    fn squares_are_left_central() {
        let alg = standard::non_split();
        for u in [vec![q("1"), q("2"), q("3")], vec![q("i"), q("0"), q("-1")]] {
            let sq = alg.bracket(&u, &u);
            for k in 0..3 {
                assert!(linalg::is_zero_vec(&alg.bracket(&sq, &linalg::unit(3, k))));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let alg = standard::jordan();
        let text = serde_json::to_string(&alg).unwrap();
        let back: LeibnizAlgebra = serde_json::from_str(&text).unwrap();
        assert_eq!(back.validated().unwrap(), alg);
    }
}
