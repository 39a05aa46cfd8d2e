//! Unital commutative associative algebras given by structure constants,
//! with radical and local-ring profile computations.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, DenseVec};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("structure constant table has the wrong shape: {0}")]
    Shape(String),
    #[error("not commutative: e{0}*e{1} != e{1}*e{0}")]
    NotCommutative(usize, usize),
    #[error("not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("e{unit} is not a unit: e{unit}*e{index} != e{index}")]
    NoUnit { unit: usize, index: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("not local: radical has codimension {0}")]
    NotLocal(usize),
    #[error("unknown template {0:?}")]
    UnknownTemplate(String),
}

/// An element of a [`FiniteAlgebra`] in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElement {
    pub coords: DenseVec,
}

impl AlgElement {
    pub fn new(coords: DenseVec) -> Self {
        AlgElement { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vec(&self.coords)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAlgebra {
    dim: usize,
    labels: Vec<String>,
    unit: usize,
    sc: Vec<Vec<Vec<Scalar>>>,
}

/// Radical and power filtration of a local algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalProfile {
    pub radical_basis: Vec<AlgElement>,
    pub nilpotency_index: usize,
    /// `dim rad^k` for k = 1, 2, ... ending with the first zero.
    pub power_dims: Vec<usize>,
}

impl FiniteAlgebra {
    pub fn new(
        dim: usize,
        labels: Vec<String>,
        unit: usize,
        sc: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::Shape("dimension must be positive".into()));
        }
        if labels.len() != dim {
            return Err(AlgebraError::Shape(format!("{} labels for dimension {dim}", labels.len())));
        }
        if unit >= dim {
            return Err(AlgebraError::Shape(format!("unit index {unit} out of range")));
        }
        if sc.len() != dim || sc.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(AlgebraError::Shape(format!("table must be {dim}x{dim}x{dim}")));
        }
        let alg = FiniteAlgebra { dim, labels, unit, sc };
        alg.validate()?;
        Ok(alg)
    }

    /// Re-runs the checks of [`FiniteAlgebra::new`], e.g. after deserialization.
    pub fn validated(self) -> Result<Self, AlgebraError> {
        FiniteAlgebra::new(self.dim, self.labels, self.unit, self.sc)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.dim;
        for j in 0..n {
            if self.sc[self.unit][j] != linalg::unit(n, j) {
                return Err(AlgebraError::NoUnit { unit: self.unit, index: j });
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul(&self.sc[i][j], &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.sc[j][k]);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.sc[i][j] != self.sc[j][i] {
                    return Err(AlgebraError::NotCommutative(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Scalar>>] {
        &self.sc
    }

    pub fn basis(&self, k: usize) -> DenseVec {
        linalg::unit(self.dim, k)
    }

    pub fn one(&self) -> DenseVec {
        self.basis(self.unit)
    }

    /// Product on raw coordinate vectors; both must have length `dim`.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> DenseVec {
        let mut out = linalg::zeros(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                linalg::axpy(&mut out, &c, &self.sc[i][j]);
            }
        }
        out
    }

    pub fn multiply(&self, x: &AlgElement, y: &AlgElement) -> Result<AlgElement, AlgebraError> {
        for v in [x, y] {
            if v.dim() != self.dim {
                return Err(AlgebraError::DimMismatch { expected: self.dim, got: v.dim() });
            }
        }
        Ok(AlgElement::new(self.mul(&x.coords, &y.coords)))
    }

    /// Matrix of multiplication by `x`, as rows indexed by output coordinate.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Vec<DenseVec> {
        let cols: Vec<DenseVec> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        (0..self.dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
    }

    pub fn trace_of_mul(&self, x: &[Scalar]) -> Scalar {
        let m = self.left_mul_matrix(x);
        (0..self.dim).map(|k| m[k][k].clone()).sum()
    }

    /// Gram matrix of the trace form `T(x, y) = tr(L_{x*y})`.
    pub fn trace_form(&self) -> Vec<DenseVec> {
        let traces: Vec<Scalar> = (0..self.dim).map(|k| self.trace_of_mul(&self.basis(k))).collect();
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.sc[i][j].iter().zip(&traces).map(|(c, t)| c * t).sum())
                    .collect()
            })
            .collect()
    }

    /// Basis of the nilradical, computed as the kernel of the trace form.
    pub fn radical(&self) -> Vec<DenseVec> {
        linalg::kernel(&self.trace_form(), self.dim)
    }

    /// Echelon basis of `span{x*y : x in left, y in right}`.
    pub fn product_span(&self, left: &[DenseVec], right: &[DenseVec]) -> Vec<DenseVec> {
        let products: Vec<DenseVec> = left
            .iter()
            .flat_map(|x| right.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.mul(x, y))
            .collect();
        linalg::span_basis(&products)
    }

    pub fn local_profile(&self) -> Result<LocalProfile, AlgebraError> {
        let radical = self.radical();
        if radical.len() + 1 != self.dim {
            return Err(AlgebraError::NotLocal(self.dim - radical.len()));
        }
        let mut power_dims = vec![radical.len()];
        let mut current = radical.clone();
        while !current.is_empty() {
            current = self.product_span(&current, &radical);
            power_dims.push(current.len());
        }
        if power_dims.len() > 1 && power_dims[0] == 0 {
            power_dims.truncate(1);
        }
        Ok(LocalProfile {
            radical_basis: radical.into_iter().map(AlgElement::new).collect(),
            nilpotency_index: power_dims.len(),
            power_dims,
        })
    }

    /// Whether the algebra matches one of the named local ring templates.
    pub fn profile_matches(&self, template: &str) -> Result<bool, AlgebraError> {
        let expected = RingTemplate::parse(template)?;
        match self.local_profile() {
            Ok(p) => Ok(self.dim == expected.dim() && p.power_dims == expected.power_dims()),
            Err(AlgebraError::NotLocal(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// The residue of `x` modulo the radical, as a scalar, for a local algebra.
    pub fn residue(&self, x: &[Scalar]) -> Result<Scalar, AlgebraError> {
        let profile = self.local_profile()?;
        let mut basis: Vec<DenseVec> = vec![self.one()];
        basis.extend(profile.radical_basis.iter().map(|r| r.coords.clone()));
        let coords = linalg::coordinates(&basis, x).expect("1 and the radical span a local algebra");
        Ok(coords[0].clone())
    }

    /// All idempotents of a local algebra, by solving `e*e = e` layer by layer
    /// along the radical filtration. Returns exactly `[0, 1]`.
    pub fn idempotents(&self) -> Result<Vec<DenseVec>, AlgebraError> {
        let profile = self.local_profile()?;
        let layers = self.filtration_layers(&profile);
        let mut adapted: Vec<DenseVec> = vec![self.one()];
        for layer in &layers {
            adapted.extend(layer.iter().cloned());
        }
        let mut solutions = Vec::new();
        // residue t with t² = t
        for t in [Scalar::zero(), Scalar::one()] {
            let two_t_minus_one = &(&t + &t) - &Scalar::one();
            let mut r = linalg::zeros(self.dim);
            let mut offset = 1;
            for layer in &layers {
                let sq = self.mul(&r, &r);
                // component of (2t-1) r + r² in this layer vanishes
                let coords = linalg::coordinates(&adapted, &sq).expect("adapted basis");
                for (k, basis_vec) in layer.iter().enumerate() {
                    let c = &-coords[offset + k].clone() / &two_t_minus_one;
                    linalg::axpy(&mut r, &c, basis_vec);
                }
                offset += layer.len();
            }
            let mut e = linalg::scale(&t, &self.one());
            e = linalg::add(&e, &r);
            debug_assert_eq!(self.mul(&e, &e), e);
            solutions.push(e);
        }
        Ok(solutions)
    }

    /// Complements of `rad^{k+1}` in `rad^k`, for k = 1, 2, ...
    fn filtration_layers(&self, profile: &LocalProfile) -> Vec<Vec<DenseVec>> {
        let radical: Vec<DenseVec> = profile.radical_basis.iter().map(|r| r.coords.clone()).collect();
        let mut powers = vec![radical.clone()];
        loop {
            let next = self.product_span(powers.last().expect("nonempty"), &radical);
            if next.is_empty() {
                break;
            }
            powers.push(next);
        }
        powers.push(Vec::new());
        let mut layers = Vec::new();
        for k in 0..powers.len() - 1 {
            let mut chosen: Vec<DenseVec> = powers[k + 1].clone();
            let mut layer = Vec::new();
            for v in &powers[k] {
                let mut trial = chosen.clone();
                trial.push(v.clone());
                if linalg::rank(&trial) > chosen.len() {
                    chosen.push(v.clone());
                    layer.push(v.clone());
                }
            }
            layers.push(layer);
        }
        layers
    }
}

/// The named quotient rings recognised by [`FiniteAlgebra::profile_matches`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingTemplate {
    /// `C[x]/(x^2)`
    DualNumbers,
    /// `C[x]/(x^3)`
    TruncatedCubic,
    /// `C[x,y]/(x^2,xy,y^2)`
    SquareZeroPlane,
}

impl RingTemplate {
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "C[x]/(x^2)" => Ok(RingTemplate::DualNumbers),
            "C[x]/(x^3)" => Ok(RingTemplate::TruncatedCubic),
            "C[x,y]/(x^2,xy,y^2)" | "C[x,y]/(x^2,y^2,xy)" => Ok(RingTemplate::SquareZeroPlane),
            _ => Err(AlgebraError::UnknownTemplate(text.to_string())),
        }
    }

    pub fn dim(self) -> usize {
        match self {
            RingTemplate::DualNumbers => 2,
            RingTemplate::TruncatedCubic | RingTemplate::SquareZeroPlane => 3,
        }
    }

    pub fn power_dims(self) -> Vec<usize> {
        match self {
            RingTemplate::DualNumbers => vec![1, 0],
            RingTemplate::TruncatedCubic => vec![2, 1, 0],
            RingTemplate::SquareZeroPlane => vec![2, 0],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|k| format!("e{k}")).collect()
    }

    fn table2(aa: [&str; 2]) -> Vec<Vec<Vec<Scalar>>> {
        let one = vec![q("1"), q("0")];
        let a = vec![q("0"), q("1")];
        vec![vec![one, a.clone()], vec![a, aa.iter().map(|t| q(t)).collect()]]
    }

    #[test]
    fn dual_numbers_are_valid_and_local() {
        let alg = FiniteAlgebra::new(2, labels(2), 0, table2(["0", "0"])).unwrap();
        let p = alg.local_profile().unwrap();
        assert_eq!(p.power_dims, vec![1, 0]);
        assert_eq!(p.nilpotency_index, 2);
        assert!(alg.profile_matches("C[x]/(x^2)").unwrap());
        assert!(!alg.profile_matches("C[x]/(x^3)").unwrap());
    }

    #[test]
    fn field_is_valid() {
        let alg = FiniteAlgebra::new(1, labels(1), 0, vec![vec![vec![q("1")]]]).unwrap();
        let p = alg.local_profile().unwrap();
        assert_eq!(p.power_dims, vec![0]);
        assert_eq!(p.nilpotency_index, 1);
    }

    #[test]
    fn corrupted_tables_are_rejected() {
        // a*1 = 0 while 1*a = a: (a*a)*a = a but a*(a*a) = 0
        let mut sc = table2(["1", "0"]);
        sc[1][0] = vec![q("0"), q("0")];
        let err = FiniteAlgebra::new(2, labels(2), 0, sc).unwrap_err();
        assert!(matches!(err, AlgebraError::NotAssociative(1, _, _)));

        let mut sc = table2(["0", "0"]);
        sc[0][1] = vec![q("0"), q("2")];
        sc[1][0] = vec![q("0"), q("2")];
        assert_eq!(FiniteAlgebra::new(2, labels(2), 0, sc).unwrap_err(), AlgebraError::NoUnit { unit: 0, index: 1 });

        let mut sc = vec![vec![vec![q("0"); 3]; 3]; 3];
        for j in 0..3 {
            sc[0][j] = linalg::unit(3, j);
            sc[j][0] = linalg::unit(3, j);
        }
        sc[1][2] = linalg::unit(3, 1);
        sc[2][1] = linalg::unit(3, 2);
        let err = FiniteAlgebra::new(3, labels(3), 0, sc).unwrap_err();
        assert!(matches!(err, AlgebraError::NotCommutative(..) | AlgebraError::NotAssociative(..)));

        assert!(matches!(
            FiniteAlgebra::new(2, labels(3), 0, table2(["0", "0"])),
            Err(AlgebraError::Shape(_))
        ));
    }

    #[test]
    fn split_algebra_is_not_local() {
        let alg = FiniteAlgebra::new(2, labels(2), 0, table2(["1", "0"])).unwrap();
        assert_eq!(alg.local_profile(), Err(AlgebraError::NotLocal(2)));
        assert!(!alg.profile_matches("C[x]/(x^2)").unwrap());
        // (1 ± a)/2 are idempotent
        let e = vec![q("1/2"), q("1/2")];
        assert_eq!(alg.mul(&e, &e), e);
    }

    #[test]
    fn dim_mismatch_and_unknown_template() {
        let alg = FiniteAlgebra::new(2, labels(2), 0, table2(["0", "0"])).unwrap();
        let short = AlgElement::new(vec![q("1")]);
        let ok = AlgElement::new(vec![q("1"), q("0")]);
        assert!(matches!(alg.multiply(&short, &ok), Err(AlgebraError::DimMismatch { .. })));
        assert!(matches!(alg.profile_matches("C[x]/(x^5)"), Err(AlgebraError::UnknownTemplate(_))));
    }

    #[test]
    fn local_idempotents_are_trivial() {
        let alg = FiniteAlgebra::new(2, labels(2), 0, table2(["-1", "2"])).unwrap();
        let ids = alg.idempotents().unwrap();
        assert_eq!(ids, vec![vec![q("0"), q("0")], vec![q("1"), q("0")]]);
    }
}
