//! The graded Lie algebra of modes spanned by `a(m)` and `b(n)` modulo
//! `del(a)(m) + m a(m-1)`.
//!
//! `a(m)` has degree `-m-1` and `b(n)` has degree `-n`. Away from degree 0
//! every `a(m)` is rewritten as `(1/d) del(a)(-d)` with `d = -m-1`, so the
//! degree `d` piece has the basis `f_0(-d), ..., f_{r-1}(-d)`. In degree 0 the
//! basis is `e_i(-1)` followed by `f_c(0)` for a complement of `del(A)` in `B`.

use num_traits::{One, Zero};

use crate::algebroid::VertexAlgebroid;
use crate::linalg::{self, DenseVec, SparseVec};
use crate::scalar::Scalar;

/// A basis element of the degree `degree` piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeId {
    pub degree: i64,
    pub index: usize,
}

/// A linear combination of basis elements of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mode {
    pub degree: i64,
    pub coeffs: SparseVec,
}

impl Mode {
    pub fn zero(degree: i64) -> Self {
        Mode { degree, coeffs: SparseVec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (ModeId, &Scalar)> + '_ {
        let degree = self.degree;
        self.coeffs.iter().map(move |(index, c)| (ModeId { degree, index }, c))
    }

    fn add(&self, other: &Mode) -> Mode {
        debug_assert_eq!(self.degree, other.degree);
        Mode { degree: self.degree, coeffs: self.coeffs.add_scaled(&Scalar::one(), &other.coeffs) }
    }
}

#[derive(Clone, Debug)]
pub struct LoopAlgebra {
    bundle: VertexAlgebroid,
    window: usize,
    complement: Vec<usize>,
    /// Coordinates of each standard basis vector of `B` modulo `del(A)`, in the complement.
    residues: Vec<DenseVec>,
}

impl LoopAlgebra {
    pub fn new(bundle: &VertexAlgebroid, window: usize) -> Self {
        let nb = bundle.b_dim();
        let image = linalg::span_basis(bundle.del_table());
        let mut basis = image.clone();
        let mut complement = Vec::new();
        for k in 0..nb {
            let mut trial = basis.clone();
            trial.push(bundle.b_basis(k));
            if linalg::rank(&trial) > basis.len() {
                basis.push(bundle.b_basis(k));
                complement.push(k);
            }
        }
        let offset = image.len();
        let residues = (0..nb)
            .map(|k| {
                let coords = linalg::coordinates(&basis, &bundle.b_basis(k)).expect("basis spans B");
                coords[offset..].to_vec()
            })
            .collect();
        LoopAlgebra { bundle: bundle.clone(), window, complement, residues }
    }

    pub fn bundle(&self) -> &VertexAlgebroid {
        &self.bundle
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Standard basis indices of `B` spanning a complement of `del(A)`.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn dim(&self, degree: i64) -> usize {
        if degree == 0 {
            self.bundle.a_dim() + self.complement.len()
        } else {
            self.bundle.b_dim()
        }
    }

    pub fn basis(&self, degree: i64) -> impl Iterator<Item = ModeId> {
        (0..self.dim(degree)).map(move |index| ModeId { degree, index })
    }

    pub fn unit(&self, id: ModeId) -> Mode {
        Mode { degree: id.degree, coeffs: SparseVec::unit(id.index) }
    }

    /// `a(m)`.
    pub fn a_mode(&self, a: &[Scalar], m: i64) -> Mode {
        let degree = -m - 1;
        if degree == 0 {
            return Mode { degree, coeffs: SparseVec::from_dense(a) };
        }
        let scale = Scalar::ratio(1, degree);
        let del = linalg::scale(&scale, &self.bundle.del(a));
        Mode { degree, coeffs: SparseVec::from_dense(&del) }
    }

    /// `b(n)`.
    pub fn b_mode(&self, b: &[Scalar], n: i64) -> Mode {
        let degree = -n;
        if degree != 0 {
            return Mode { degree, coeffs: SparseVec::from_dense(b) };
        }
        let na = self.bundle.a_dim();
        let mut out = linalg::zeros(self.complement.len());
        for (k, c) in b.iter().enumerate() {
            if !c.is_zero() {
                linalg::axpy(&mut out, c, &self.residues[k]);
            }
        }
        Mode { degree, coeffs: SparseVec::from_dense(&out).map_indices(|i| i + na) }
    }

    /// The raw description of a basis element: an element of `A` at mode `m`
    /// or an element of `B` at mode `n`.
    fn raw(&self, id: ModeId) -> Raw {
        let na = self.bundle.a_dim();
        if id.degree == 0 {
            if id.index < na {
                Raw::A(self.bundle.a_basis(id.index), -1)
            } else {
                Raw::B(self.bundle.b_basis(self.complement[id.index - na]), 0)
            }
        } else {
            Raw::B(self.bundle.b_basis(id.index), -id.degree)
        }
    }

    pub fn bracket_ids(&self, x: ModeId, y: ModeId) -> Mode {
        let degree = x.degree + y.degree;
        match (self.raw(x), self.raw(y)) {
            (Raw::A(..), Raw::A(..)) => Mode::zero(degree),
            (Raw::A(a, m), Raw::B(b, n)) => {
                // a_0 b = -b_0 a
                let a0b = linalg::scale(&Scalar::int(-1), &self.bundle.anchor(&b, &a));
                self.a_mode(&a0b, m + n)
            }
            (Raw::B(b, m), Raw::A(a, n)) => self.a_mode(&self.bundle.anchor(&b, &a), m + n),
            (Raw::B(b, m), Raw::B(c, n)) => {
                let zero = self.b_mode(&self.bundle.bracket(&b, &c), m + n);
                if m == 0 {
                    return zero;
                }
                let pairing = linalg::scale(&Scalar::int(m), &self.bundle.pairing(&b, &c));
                zero.add(&self.a_mode(&pairing, m + n - 1))
            }
        }
    }

    pub fn bracket(&self, x: &Mode, y: &Mode) -> Mode {
        let mut coeffs = SparseVec::new();
        for (i, ci) in x.terms() {
            for (j, cj) in y.terms() {
                let b = self.bracket_ids(i, j);
                coeffs.add_assign_scaled(&(ci * cj), &b.coeffs);
            }
        }
        Mode { degree: x.degree + y.degree, coeffs }
    }

    pub fn label(&self, id: ModeId) -> String {
        let na = self.bundle.a_dim();
        if id.degree == 0 && id.index < na {
            format!("{}(-1)", self.bundle.a_labels()[id.index])
        } else if id.degree == 0 {
            format!("{}(0)", self.bundle.b_labels()[self.complement[id.index - na]])
        } else {
            format!("{}({})", self.bundle.b_labels()[id.index], -id.degree)
        }
    }

    /// Antisymmetry and Jacobi on basis elements of degrees in `[-w, w]` with
    /// results in the same range. Returns the first failing triple.
    pub fn check_identities(&self, w: i64) -> Result<(), String> {
        let ids: Vec<ModeId> = (-w..=w).flat_map(|d| self.basis(d)).collect();
        for &x in &ids {
            for &y in &ids {
                if (x.degree + y.degree).abs() > w {
                    continue;
                }
                let xy = self.bracket_ids(x, y);
                let yx = self.bracket_ids(y, x);
                if !xy.coeffs.add_scaled(&Scalar::int(1), &yx.coeffs).is_zero() {
                    return Err(format!("[{}, {}] is not antisymmetric", self.label(x), self.label(y)));
                }
                for &z in &ids {
                    if (x.degree + y.degree + z.degree).abs() > w {
                        continue;
                    }
                    let ux = self.unit(x);
                    let uy = self.unit(y);
                    let uz = self.unit(z);
                    let a = self.bracket(&ux, &self.bracket(&uy, &uz));
                    let b = self.bracket(&uy, &self.bracket(&uz, &ux));
                    let c = self.bracket(&uz, &self.bracket(&ux, &uy));
                    if !a.add(&b).add(&c).is_zero() {
                        return Err(format!(
                            "Jacobi fails on ({}, {}, {})",
                            self.label(x),
                            self.label(y),
                            self.label(z)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

enum Raw {
    A(DenseVec, i64),
    B(DenseVec, i64),
}
