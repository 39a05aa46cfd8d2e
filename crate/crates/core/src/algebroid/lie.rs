//! The Lie algebroid `B / A del(A)` and its one-dimensional modules.

use num_traits::{One, Zero};

use super::{AlgebroidError, VertexAlgebroid};
use crate::algebra::FiniteAlgebra;
use crate::linalg::{self, DenseVec};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebroid {
    pub algebra: FiniteAlgebra,
    pub q_dim: usize,
    /// `bracket[i][j]` in `Q`.
    pub bracket: Vec<Vec<DenseVec>>,
    /// `action[i][j] = e_i q_j` in `Q`.
    pub action: Vec<Vec<DenseVec>>,
    /// `anchor[i][j] = q_i(e_j)` in `A`.
    pub anchor: Vec<Vec<DenseVec>>,
    /// Rows of the projection `B -> Q`.
    pub projection: Vec<DenseVec>,
    /// Representatives in `B` of the basis of `Q`.
    pub lift: Vec<DenseVec>,
}

impl LieAlgebroid {
    fn bilinear(table: &[Vec<DenseVec>], x: &[Scalar], y: &[Scalar], n: usize) -> DenseVec {
        let mut out = linalg::zeros(n);
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                if !xi.is_zero() && !yj.is_zero() {
                    linalg::axpy(&mut out, &(xi * yj), &table[i][j]);
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> DenseVec {
        Self::bilinear(&self.bracket, x, y, self.q_dim)
    }

    pub fn act(&self, a: &[Scalar], x: &[Scalar]) -> DenseVec {
        Self::bilinear(&self.action, a, x, self.q_dim)
    }

    pub fn anchor(&self, x: &[Scalar], a: &[Scalar]) -> DenseVec {
        Self::bilinear(&self.anchor, x, a, self.algebra.dim())
    }

    pub fn project(&self, v: &[Scalar]) -> DenseVec {
        self.projection.iter().map(|row| row.iter().zip(v).map(|(r, x)| r * x).sum()).collect()
    }

    /// Lie algebra and algebroid identities on basis tuples: `(name, passed)`.
    pub fn check(&self) -> Vec<(&'static str, bool)> {
        let (nq, na) = (self.q_dim, self.algebra.dim());
        let eq = |k: usize| linalg::unit(nq, k);
        let ea = |k: usize| linalg::unit(na, k);
        let mut out = Vec::new();
        let antisym = (0..nq).all(|i| {
            (0..nq).all(|j| linalg::is_zero_vec(&linalg::add(&self.bracket(&eq(i), &eq(j)), &self.bracket(&eq(j), &eq(i)))))
        });
        out.push(("antisymmetry", antisym));
        let jacobi = (0..nq).all(|i| {
            (0..nq).all(|j| {
                (0..nq).all(|k| {
                    let (x, y, z) = (eq(i), eq(j), eq(k));
                    let t1 = self.bracket(&x, &self.bracket(&y, &z));
                    let t2 = self.bracket(&y, &self.bracket(&z, &x));
                    let t3 = self.bracket(&z, &self.bracket(&x, &y));
                    linalg::is_zero_vec(&linalg::add(&linalg::add(&t1, &t2), &t3))
                })
            })
        });
        out.push(("Jacobi identity", jacobi));
        let module = (0..na).all(|x| {
            (0..na).all(|y| {
                (0..nq).all(|k| {
                    let lhs = self.act(&ea(x), &self.act(&ea(y), &eq(k)));
                    lhs == self.act(&self.algebra.mul(&ea(x), &ea(y)), &eq(k))
                })
            })
        }) && (0..nq).all(|k| self.act(&self.algebra.one(), &eq(k)) == eq(k));
        out.push(("A-module", module));
        let derivation = (0..nq).all(|k| {
            (0..na).all(|x| {
                (0..na).all(|y| {
                    let lhs = self.anchor(&eq(k), &self.algebra.mul(&ea(x), &ea(y)));
                    let rhs = linalg::add(
                        &self.algebra.mul(&ea(x), &self.anchor(&eq(k), &ea(y))),
                        &self.algebra.mul(&self.anchor(&eq(k), &ea(x)), &ea(y)),
                    );
                    lhs == rhs
                })
            })
        });
        out.push(("anchor acts by derivations", derivation));
        let hom = (0..nq).all(|i| {
            (0..nq).all(|j| {
                (0..na).all(|x| {
                    let lhs = self.anchor(&self.bracket(&eq(i), &eq(j)), &ea(x));
                    let rhs = linalg::sub(
                        &self.anchor(&eq(i), &self.anchor(&eq(j), &ea(x))),
                        &self.anchor(&eq(j), &self.anchor(&eq(i), &ea(x))),
                    );
                    lhs == rhs
                })
            })
        });
        out.push(("anchor is a Lie homomorphism", hom));
        let leibniz_rule = (0..nq).all(|i| {
            (0..na).all(|x| {
                (0..nq).all(|j| {
                    let (u, a, w) = (eq(i), ea(x), eq(j));
                    let lhs = self.bracket(&u, &self.act(&a, &w));
                    let rhs = linalg::add(&self.act(&a, &self.bracket(&u, &w)), &self.act(&self.anchor(&u, &a), &w));
                    lhs == rhs
                })
            })
        });
        out.push(("[u, av] = a[u,v] + (ua)v", leibniz_rule));
        let linear_anchor = (0..na).all(|x| {
            (0..nq).all(|i| {
                (0..na).all(|y| {
                    let lhs = self.algebra.mul(&ea(x), &self.anchor(&eq(i), &ea(y)));
                    lhs == self.anchor(&self.act(&ea(x), &eq(i)), &ea(y))
                })
            })
        });
        out.push(("a(ua') = (au)a'", linear_anchor));
        out
    }

    pub fn all_identities_hold(&self) -> bool {
        self.check().iter().all(|(_, ok)| *ok)
    }
}

pub(super) fn quotient(v: &VertexAlgebroid) -> Result<LieAlgebroid, AlgebroidError> {
    let nb = v.b_dim();
    let na = v.a_dim();
    let ideal = v.a_del_a();
    let mut basis = ideal.clone();
    let mut lift = Vec::new();
    for k in 0..nb {
        let mut trial = basis.clone();
        trial.push(v.b_basis(k));
        if linalg::rank(&trial) > basis.len() {
            basis.push(v.b_basis(k));
            lift.push(v.b_basis(k));
        }
    }
    let q_dim = lift.len();
    let offset = ideal.len();
    // projection rows: complement coordinates of each standard basis vector
    let mut projection = vec![linalg::zeros(nb); q_dim];
    for k in 0..nb {
        let coords = linalg::coordinates(&basis, &v.b_basis(k)).expect("basis spans B");
        for (r, row) in projection.iter_mut().enumerate() {
            row[k] = coords[offset + r].clone();
        }
    }
    let project = |x: &[Scalar]| -> DenseVec {
        projection.iter().map(|row| row.iter().zip(x).map(|(r, c)| r * c).sum()).collect()
    };
    for w in &ideal {
        for k in 0..nb {
            let u = v.b_basis(k);
            if !linalg::is_zero_vec(&project(&v.bracket(&u, w))) || !linalg::is_zero_vec(&project(&v.bracket(w, &u))) {
                return Err(AlgebroidError::QuotientIllDefined(format!("bracket with {} leaves the ideal", v.b_labels()[k])));
            }
        }
        for x in 0..na {
            if !linalg::is_zero_vec(&project(&v.act(&v.a_basis(x), w))) {
                return Err(AlgebroidError::QuotientIllDefined(format!(
                    "action of {} leaves the ideal",
                    v.a_labels()[x]
                )));
            }
            if !linalg::is_zero_vec(&v.anchor(w, &v.a_basis(x))) {
                return Err(AlgebroidError::QuotientIllDefined("anchor is nonzero on the ideal".into()));
            }
        }
    }
    let bracket = (0..q_dim)
        .map(|i| (0..q_dim).map(|j| project(&v.bracket(&lift[i], &lift[j]))).collect())
        .collect();
    let action = (0..na)
        .map(|x| (0..q_dim).map(|j| project(&v.act(&v.a_basis(x), &lift[j]))).collect())
        .collect();
    let anchor = (0..q_dim)
        .map(|i| (0..na).map(|x| v.anchor(&lift[i], &v.a_basis(x))).collect())
        .collect();
    Ok(LieAlgebroid { algebra: v.algebra().clone(), q_dim, bracket, action, anchor, projection, lift })
}

/// A one-dimensional space `C v` with `q_0 v = lambda v` and `e_i v = algebra_action[i] v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDimModule {
    pub lambda: Scalar,
    pub algebra_action: DenseVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleCheck {
    pub passed: bool,
    pub violations: Vec<String>,
}

/// The one-dimensional modules of `B / A del(A)` for a local `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDimModules {
    pub quotient: LieAlgebroid,
    /// Basis of the radical of `A`.
    pub radical: Vec<DenseVec>,
    /// The unique character of `A`: the residue of each basis element.
    pub residue: DenseVec,
    /// `m_k` with `r_k^{m_k} = 0` for each radical basis element, forcing `r_k v = 0`.
    pub radical_exponents: Vec<usize>,
}

pub(super) fn one_dim_modules(v: &VertexAlgebroid) -> Result<OneDimModules, AlgebroidError> {
    let quotient = quotient(v)?;
    if quotient.q_dim != 1 {
        return Err(AlgebroidError::BadParameter(format!("quotient has dimension {}, expected 1", quotient.q_dim)));
    }
    let algebra = v.algebra();
    let profile = algebra.local_profile()?;
    let radical: Vec<DenseVec> = profile.radical_basis.iter().map(|r| r.coords.clone()).collect();
    let residue = (0..algebra.dim()).map(|k| algebra.residue(&algebra.basis(k))).collect::<Result<_, _>>()?;
    let radical_exponents = radical
        .iter()
        .map(|r| {
            let mut power = r.clone();
            let mut m = 1;
            while !linalg::is_zero_vec(&power) {
                power = algebra.mul(&power, r);
                m += 1;
            }
            m
        })
        .collect();
    Ok(OneDimModules { quotient, radical, residue, radical_exponents })
}

impl OneDimModules {
    /// The module with `q_0 v = lambda v` and the given scalars for the radical basis.
    pub fn module(&self, lambda: &Scalar, radical_action: &[Scalar]) -> OneDimModule {
        let algebra = &self.quotient.algebra;
        let mut adapted = vec![algebra.one()];
        adapted.extend(self.radical.iter().cloned());
        let mut values = vec![Scalar::one()];
        values.extend(radical_action.iter().cloned());
        let algebra_action = (0..algebra.dim())
            .map(|k| {
                let coords = linalg::coordinates(&adapted, &algebra.basis(k)).expect("1 and the radical span A");
                coords.iter().zip(&values).map(|(c, x)| c * x).sum()
            })
            .collect();
        OneDimModule { lambda: lambda.clone(), algebra_action }
    }

    /// The module on which the radical acts as zero.
    pub fn standard(&self, lambda: &Scalar) -> OneDimModule {
        self.module(lambda, &vec![Scalar::zero(); self.radical.len()])
    }

    pub fn verify(&self, m: &OneDimModule) -> ModuleCheck {
        let q = &self.quotient;
        let algebra = &q.algebra;
        let na = algebra.dim();
        let phi = |x: &[Scalar]| -> Scalar { x.iter().zip(&m.algebra_action).map(|(c, v)| c * v).sum() };
        let rho = |x: &[Scalar]| -> Scalar { &x[0] * &m.lambda };
        let labels = algebra.labels();
        let mut violations = Vec::new();
        if m.algebra_action.len() != na {
            violations.push(format!("algebra action has length {}, expected {na}", m.algebra_action.len()));
            return ModuleCheck { passed: false, violations };
        }
        if !phi(&algebra.one()).is_one() {
            violations.push("1_A does not act as the identity".to_string());
        }
        for x in 0..na {
            for y in 0..na {
                let lhs = phi(&algebra.mul(&algebra.basis(x), &algebra.basis(y)));
                if lhs != &m.algebra_action[x] * &m.algebra_action[y] {
                    violations.push(format!("(a*a')w = a(a'w) fails at ({}, {})", labels[x], labels[y]));
                }
            }
        }
        let u = linalg::unit(1, 0);
        if !rho(&q.bracket(&u, &u)).is_zero() {
            violations.push("[u,v]w = u(vw) - v(uw) fails".to_string());
        }
        for x in 0..na {
            let a = algebra.basis(x);
            // u(aw) - a(uw) = (ua)w on a one-dimensional space
            if !phi(&q.anchor(&u, &a)).is_zero() {
                violations.push(format!("u(aw) - a(uw) = (ua)w fails at {}", labels[x]));
            }
            // a(uw) = (au)w
            if &m.algebra_action[x] * &m.lambda != rho(&q.act(&a, &u)) {
                violations.push(format!("a(uw) = (au)w fails at {}", labels[x]));
            }
        }
        ModuleCheck { passed: violations.is_empty(), violations }
    }
}

#[cfg(test)]
mod tests {
    use super::super::families;
    use crate::scalar::q;

    #[test]
    fn nilpotent_quotient() {
        let lie = families::dim2_nilpotent(&q("0")).lie_algebroid_quotient().unwrap();
        assert_eq!(lie.q_dim, 1);
        let a = lie.algebra.basis(1);
        assert_eq!(lie.act(&a, &[q("1")]), vec![q("0")]);
        assert_eq!(lie.anchor(&[q("1")], &a), vec![q("0"), q("0")]);
        assert!(lie.all_identities_hold());
    }

    #[test]
    fn solvable_quotient_preserves_maximal_ideal() {
        let lie = families::dim2_solvable(&q("2")).lie_algebroid_quotient().unwrap();
        let m = vec![q("-1"), q("1")];
        assert_eq!(lie.anchor(&[q("1")], &m), m);
        assert!(lie.all_identities_hold());
    }

    #[test]
    fn module_verification() {
        let modules = families::dim2_solvable(&q("2")).one_dim_modules().unwrap();
        for lambda in ["0", "1", "-2", "3/2", "i"] {
            assert!(modules.verify(&modules.standard(&q(lambda))).passed);
        }
        let bad = modules.module(&q("0"), &[q("1")]);
        let check = modules.verify(&bad);
        assert!(!check.passed);
        assert!(check.violations.iter().any(|v| v.contains("u(aw) - a(uw)")));
    }
}
