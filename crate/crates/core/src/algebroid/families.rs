//! Constructors for the classified vertex algebroids over cyclic Leibniz
//! algebras of dimension 2 and 3.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::checks::{affine_residuals, AFFINE_GROUPS};
use super::{AlgebroidError, VertexAlgebroid};
use crate::algebra::FiniteAlgebra;
use crate::leibniz::CyclicType;
use crate::linalg::{self, DenseVec};
use crate::scalar::Scalar;

fn s(v: i64) -> Scalar {
    Scalar::from(v)
}

fn half() -> Scalar {
    Scalar::ratio(1, 2)
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|n| n.to_string()).collect()
}

/// Which display of `a . del(a)` the type d constructor uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeDVariant {
    /// `1/2 (beta del a + beta del(b0a))`, the general three-dimensional formula.
    General,
    /// `1/2 (beta del a + 1/2 beta del(b0a))`, as displayed for the type d case.
    Displayed,
}

/// Data of a two-dimensional bundle in the bases `{1, a}` and `{b, del a}`.
struct Dim2Data {
    a_sq: [Scalar; 2],
    anchor_a: [Scalar; 2],
    a_b: [Scalar; 2],
    a_da: [Scalar; 2],
}

fn dim2_bundle(d: Dim2Data) -> VertexAlgebroid {
    let v2 = |x: &[Scalar; 2]| x.to_vec();
    let one = linalg::unit(2, 0);
    let a = linalg::unit(2, 1);
    let sc = vec![vec![one.clone(), a.clone()], vec![a.clone(), v2(&d.a_sq)]];
    let algebra = FiniteAlgebra::new(2, labels(&["1", "a"]), 0, sc).expect("two-dimensional table is valid");
    let (b, da) = (linalg::unit(2, 0), linalg::unit(2, 1));
    let del = vec![linalg::zeros(2), da.clone()];
    let anchor_b = vec![linalg::zeros(2), v2(&d.anchor_a)];
    let anchor = vec![anchor_b, vec![linalg::zeros(2); 2]];
    // del(b0 a) in B
    let del_b0a = linalg::scale(&d.anchor_a[1], &da);
    let bracket0 = vec![
        vec![linalg::scale(&half(), &da), del_b0a],
        vec![linalg::zeros(2), linalg::zeros(2)],
    ];
    let pairing1 = vec![vec![a.clone(), v2(&d.anchor_a)], vec![v2(&d.anchor_a), linalg::zeros(2)]];
    let action = vec![vec![b, da], vec![v2(&d.a_b), v2(&d.a_da)]];
    VertexAlgebroid::new(algebra, 2, labels(&["b", "da"]), del, action, bracket0, pairing1, anchor)
        .expect("two-dimensional tables have consistent shapes")
}

/// The case `b0(b0 b) = 0`: `a*a = 0`, `a . b = beta2 del a`, `a . del a = 0`.
pub fn dim2_nilpotent(beta2: &Scalar) -> VertexAlgebroid {
    dim2_bundle(Dim2Data {
        a_sq: [s(0), s(0)],
        anchor_a: [s(0), s(0)],
        a_b: [s(0), beta2.clone()],
        a_da: [s(0), s(0)],
    })
}

/// The case `b0(b0 b) = b0 b`.
pub fn dim2_solvable(alpha2: &Scalar) -> VertexAlgebroid {
    let h = &half() * alpha2;
    let quarter_sq = &(&Scalar::ratio(1, 4) * alpha2) * alpha2;
    dim2_bundle(Dim2Data {
        a_sq: [-quarter_sq, alpha2.clone()],
        anchor_a: [-h.clone(), s(1)],
        a_b: [h.clone(), &h - &s(1)],
        a_da: [s(0), h],
    })
}

/// Data of a three-dimensional bundle in the bases `{1, a, b0a}` and
/// `{b, del a, del(b0a)}`, with `b0(b0a) = chi 1 + c0 a + c1 b0a`.
struct Dim3Data {
    chi: Scalar,
    c0: Scalar,
    c1: Scalar,
    a_sq: [Scalar; 3],
    a_y: [Scalar; 3],
    a_b: [Scalar; 3],
    y_b: [Scalar; 3],
    a_da: [Scalar; 3],
}

/// Action entries `x . del(x')` left open by the displayed data: `a . del(b0a)` and `(b0a) . del a`.
const OPEN_SLOTS: [(usize, usize); 2] = [(1, 2), (2, 1)];

fn dim3_bundle(d: Dim3Data) -> VertexAlgebroid {
    let v3 = |x: &[Scalar; 3]| x.to_vec();
    let e = |k: usize| linalg::unit(3, k);
    let mut sc = vec![vec![linalg::zeros(3); 3]; 3];
    for j in 0..3 {
        sc[0][j] = e(j);
        sc[j][0] = e(j);
    }
    sc[1][1] = v3(&d.a_sq);
    sc[1][2] = v3(&d.a_y);
    sc[2][1] = v3(&d.a_y);
    let algebra =
        FiniteAlgebra::new(3, labels(&["1", "a", "b0a"]), 0, sc).expect("three-dimensional family tables are valid");
    let b0y = vec![d.chi.clone(), d.c0.clone(), d.c1.clone()];
    let del = vec![linalg::zeros(3), e(1), e(2)];
    let anchor_b = vec![linalg::zeros(3), e(2), b0y.clone()];
    let anchor = vec![anchor_b.clone(), vec![linalg::zeros(3); 3], vec![linalg::zeros(3); 3]];
    let del_b0y = vec![s(0), d.c0.clone(), d.c1.clone()];
    let mut bracket0 = vec![vec![linalg::zeros(3); 3]; 3];
    bracket0[0][0] = linalg::scale(&half(), &e(1));
    bracket0[0][1] = e(2);
    bracket0[0][2] = del_b0y;
    let mut pairing1 = vec![vec![linalg::zeros(3); 3]; 3];
    pairing1[0][0] = e(1);
    for x in 1..3 {
        pairing1[0][x] = anchor_b[x].clone();
        pairing1[x][0] = anchor_b[x].clone();
    }
    let mut action = vec![vec![linalg::zeros(3); 3]; 3];
    for j in 0..3 {
        action[0][j] = e(j);
    }
    action[1][0] = v3(&d.a_b);
    action[2][0] = v3(&d.y_b);
    action[1][1] = v3(&d.a_da);
    let bundle = VertexAlgebroid::new(algebra, 3, labels(&["b", "da", "d(b0a)"]), del, action, bracket0, pairing1, anchor)
        .expect("three-dimensional tables have consistent shapes");
    complete_open_entries(bundle)
}

/// Fills the open action entries by solving the identities that are affine in
/// them. Identity groups are added one at a time and a group that would make
/// the system inconsistent is skipped, so inconsistent parameters still yield
/// a bundle whose defects show up in the axiom report.
fn complete_open_entries(mut bundle: VertexAlgebroid) -> VertexAlgebroid {
    let dirs = [linalg::unit(3, 1), linalg::unit(3, 2)];
    let nvars = OPEN_SLOTS.len() * dirs.len();
    let assign = |bundle: &mut VertexAlgebroid, t: &[Scalar]| {
        for (k, &(i, j)) in OPEN_SLOTS.iter().enumerate() {
            let mut v = linalg::zeros(3);
            for (m, dir) in dirs.iter().enumerate() {
                linalg::axpy(&mut v, &t[k * dirs.len() + m], dir);
            }
            bundle.action[i][j] = v;
        }
    };
    let mut rows: Vec<DenseVec> = Vec::new();
    let mut rhs: DenseVec = Vec::new();
    for group in 0..AFFINE_GROUPS {
        assign(&mut bundle, &linalg::zeros(nvars));
        let base = affine_residuals(&bundle, group, 0);
        let mut cols = Vec::with_capacity(nvars);
        for k in 0..nvars {
            assign(&mut bundle, &linalg::unit(nvars, k));
            cols.push(linalg::sub(&affine_residuals(&bundle, group, 0), &base));
        }
        let mut trial_rows = rows.clone();
        let mut trial_rhs = rhs.clone();
        for (r, b) in base.iter().enumerate() {
            trial_rows.push(cols.iter().map(|c| c[r].clone()).collect());
            trial_rhs.push(-b.clone());
        }
        if linalg::solve(&trial_rows, &trial_rhs, nvars).is_some() {
            rows = trial_rows;
            rhs = trial_rhs;
        }
    }
    let (t, _) = linalg::solve(&rows, &rhs, nvars).unwrap_or((linalg::zeros(nvars), nvars));
    assign(&mut bundle, &t);
    bundle
}

/// The case `b0 del(b0a) = 0`.
pub fn dim3_nilpotent(gamma0: &Scalar, gamma1: &Scalar) -> VertexAlgebroid {
    let z = || s(0);
    dim3_bundle(Dim3Data {
        chi: z(),
        c0: z(),
        c1: z(),
        a_sq: [z(), z(), gamma0.clone()],
        a_y: [z(), z(), z()],
        a_b: [z(), gamma0.clone(), gamma1.clone()],
        y_b: [z(), z(), &Scalar::ratio(3, 4) * gamma0],
        a_da: [z(), z(), &half() * gamma0],
    })
}

/// `((s^2 + 1) / s) i`.
pub fn type_b_coefficient(s_root: &Scalar) -> Scalar {
    let alpha = s_root * s_root;
    &(&(&alpha + &Scalar::one()) / s_root) * &Scalar::i()
}

/// The case `b0 del(b0a) = del a - k del(b0a)` with `k = ((alpha + 1) / sqrt(alpha)) i` and `alpha = s^2`.
pub fn dim3_type_b(s_root: &Scalar, gamma1: &Scalar) -> Result<VertexAlgebroid, AlgebroidError> {
    let alpha = s_root * s_root;
    if s_root.is_zero() || alpha.is_one() {
        return Err(AlgebroidError::BadParameter(format!("s = {s_root} gives alpha = {alpha}")));
    }
    let k = type_b_coefficient(s_root);
    let g = gamma1 + &Scalar::one();
    let z = || s(0);
    Ok(dim3_bundle(Dim3Data {
        chi: -g.clone(),
        c0: s(1),
        c1: -k.clone(),
        a_sq: [-(&g * &g), &s(2) * &g, z()],
        a_y: [z(), z(), g.clone()],
        a_b: [g.clone(), &g * &k, gamma1.clone()],
        y_b: [z(), gamma1.clone(), k],
        a_da: [z(), g, z()],
    }))
}

/// The case `b0 del(b0a) = del a + 2i del(b0a)`.
pub fn dim3_type_c(gamma1: &Scalar) -> VertexAlgebroid {
    let g = gamma1 + &Scalar::one();
    let two_i = Scalar::from_ints(0, 2);
    let z = || s(0);
    dim3_bundle(Dim3Data {
        chi: -g.clone(),
        c0: s(1),
        c1: two_i.clone(),
        a_sq: [-(&g * &g), &s(2) * &g, z()],
        a_y: [z(), z(), g.clone()],
        a_b: [g.clone(), -(&two_i * &g), gamma1.clone()],
        y_b: [z(), gamma1.clone(), -two_i],
        a_da: [z(), g, z()],
    })
}

/// The case `b0 del(b0a) = del(b0a)`, with the general formula for `a . del a`.
pub fn dim3_type_d(gamma0: &Scalar, gamma1: &Scalar) -> VertexAlgebroid {
    dim3_type_d_variant(gamma0, gamma1, TypeDVariant::General)
}

pub fn dim3_type_d_variant(gamma0: &Scalar, gamma1: &Scalar, variant: TypeDVariant) -> VertexAlgebroid {
    let beta = &(gamma0 + gamma1) + &Scalar::one();
    let hb = &half() * &beta;
    let second = match variant {
        TypeDVariant::General => hb.clone(),
        TypeDVariant::Displayed => &Scalar::ratio(1, 4) * &beta,
    };
    let z = || s(0);
    dim3_bundle(Dim3Data {
        chi: z(),
        c0: z(),
        c1: s(1),
        a_sq: [z(), beta.clone(), beta.clone()],
        a_y: [z(), z(), beta.clone()],
        a_b: [beta.clone(), gamma0.clone(), gamma1.clone()],
        y_b: [z(), &Scalar::ratio(1, 4) * &beta, &(&Scalar::ratio(3, 4) * &beta) - &s(1)],
        a_da: [z(), hb, second],
    })
}

/// A family constructor together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Dim2Nilpotent { beta2: Scalar },
    Dim2Solvable { alpha2: Scalar },
    Dim3Nilpotent { gamma0: Scalar, gamma1: Scalar },
    Dim3TypeB { s: Scalar, gamma1: Scalar },
    Dim3TypeC { gamma1: Scalar },
    Dim3TypeD { gamma0: Scalar, gamma1: Scalar },
}

pub const FAMILY_NAMES: [&str; 6] =
    ["dim2_nilpotent", "dim2_solvable", "dim3_nilpotent", "dim3_type_b", "dim3_type_c", "dim3_type_d"];

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Dim2Nilpotent { .. } => FAMILY_NAMES[0],
            Family::Dim2Solvable { .. } => FAMILY_NAMES[1],
            Family::Dim3Nilpotent { .. } => FAMILY_NAMES[2],
            Family::Dim3TypeB { .. } => FAMILY_NAMES[3],
            Family::Dim3TypeC { .. } => FAMILY_NAMES[4],
            Family::Dim3TypeD { .. } => FAMILY_NAMES[5],
        }
    }

    /// Parses a family name and a parameter table; absent parameters default to 0.
    pub fn from_params(name: &str, params: &BTreeMap<String, Scalar>) -> Result<Self, AlgebroidError> {
        let allowed: &[&str] = match name {
            "dim2_nilpotent" => &["beta2"],
            "dim2_solvable" => &["alpha2"],
            "dim3_nilpotent" => &["gamma0", "gamma1"],
            "dim3_type_b" => &["s", "gamma1"],
            "dim3_type_c" => &["gamma1"],
            "dim3_type_d" => &["gamma0", "gamma1"],
            other => return Err(AlgebroidError::UnknownFamily(other.to_string())),
        };
        if let Some(extra) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(AlgebroidError::BadParameter(format!("{name} does not take {extra:?}")));
        }
        let get = |key: &str| params.get(key).cloned().unwrap_or_else(Scalar::zero);
        Ok(match name {
            "dim2_nilpotent" => Family::Dim2Nilpotent { beta2: get("beta2") },
            "dim2_solvable" => Family::Dim2Solvable { alpha2: get("alpha2") },
            "dim3_nilpotent" => Family::Dim3Nilpotent { gamma0: get("gamma0"), gamma1: get("gamma1") },
            "dim3_type_b" => {
                let s = params.get("s").cloned().ok_or_else(|| AlgebroidError::MissingParameter("s".into()))?;
                Family::Dim3TypeB { s, gamma1: get("gamma1") }
            }
            "dim3_type_c" => Family::Dim3TypeC { gamma1: get("gamma1") },
            _ => Family::Dim3TypeD { gamma0: get("gamma0"), gamma1: get("gamma1") },
        })
    }

    pub fn params(&self) -> BTreeMap<String, Scalar> {
        let pairs: Vec<(&str, &Scalar)> = match self {
            Family::Dim2Nilpotent { beta2 } => vec![("beta2", beta2)],
            Family::Dim2Solvable { alpha2 } => vec![("alpha2", alpha2)],
            Family::Dim3Nilpotent { gamma0, gamma1 } => vec![("gamma0", gamma0), ("gamma1", gamma1)],
            Family::Dim3TypeB { s, gamma1 } => vec![("s", s), ("gamma1", gamma1)],
            Family::Dim3TypeC { gamma1 } => vec![("gamma1", gamma1)],
            Family::Dim3TypeD { gamma0, gamma1 } => vec![("gamma0", gamma0), ("gamma1", gamma1)],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    pub fn build(&self) -> Result<VertexAlgebroid, AlgebroidError> {
        Ok(match self {
            Family::Dim2Nilpotent { beta2 } => dim2_nilpotent(beta2),
            Family::Dim2Solvable { alpha2 } => dim2_solvable(alpha2),
            Family::Dim3Nilpotent { gamma0, gamma1 } => dim3_nilpotent(gamma0, gamma1),
            Family::Dim3TypeB { s, gamma1 } => dim3_type_b(s, gamma1)?,
            Family::Dim3TypeC { gamma1 } => dim3_type_c(gamma1),
            Family::Dim3TypeD { gamma0, gamma1 } => dim3_type_d(gamma0, gamma1),
        })
    }

    /// The Leibniz type of `B` for this family.
    pub fn expected_type(&self) -> CyclicType {
        match self {
            Family::Dim2Nilpotent { .. } => CyclicType::Dim2Null,
            Family::Dim2Solvable { .. } => CyclicType::Dim2Idem,
            Family::Dim3Nilpotent { .. } => CyclicType::Nilpotent3,
            Family::Dim3TypeB { .. } => CyclicType::Diagonal3,
            Family::Dim3TypeC { .. } => CyclicType::Jordan3,
            Family::Dim3TypeD { .. } => CyclicType::NonSplit3,
        }
    }
}
