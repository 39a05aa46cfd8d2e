//! Basis-exhaustive evaluation of the algebroid identities.

use std::fmt;


use super::VertexAlgebroid;
use crate::linalg::{self, DenseVec};
use crate::scalar::Scalar;

/// Which family of identities a check belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomGroup {
    /// Axioms of the 1-truncated conformal algebra on `A + B`.
    Conformal,
    /// Structure maps and identities of the vertex algebroid.
    Algebroid,
    /// Compatibility conditions between the module structure and the conformal products.
    Compatibility,
}

impl AxiomGroup {
    pub fn name(self) -> &'static str {
        match self {
            AxiomGroup::Conformal => "conformal",
            AxiomGroup::Algebroid => "algebroid",
            AxiomGroup::Compatibility => "compatibility",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub group: AxiomGroup,
    pub name: &'static str,
    pub passed: bool,
    /// Basis labels of the first failing tuple.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "{status:4} [{}] {}", c.group.name(), c.name)?;
            if let Some(w) = &c.witness {
                write!(f, " at {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Names of every check, in report order.
pub const CHECK_NAMES: [&str; 28] = [
    "(del a)_0 = 0",
    "(del a)_1 = -a_0",
    "del(u_0 a) = u_0 del a",
    "u_0 a = -a_0 u",
    "u_0 v = -v_0 u + del(u_1 v)",
    "u_1 v = v_1 u",
    "x_0 y_i z = y_i x_0 z + (x_0 y)_i z",
    "1 . v = v",
    "left Leibniz identity on B",
    "anchor acts by derivations",
    "anchor is a Leibniz homomorphism",
    "pairing is symmetric",
    "anchor vanishes on del(A)",
    "a.(a'.v) - (a*a').v = v_0a . del a' + v_0a' . del a",
    "[u, a.v] = u_0a . v + a.[u,v]",
    "[u,v] + [v,u] = del<u,v>",
    "anchor(a.v) = a anchor(v)",
    "<a.u, v> = a*<u,v> - u_0 v_0 a",
    "v_0<v1,v2> = <[v,v1],v2> + <v1,[v,v2]>",
    "del(a*a') = a.del a' + a'.del a",
    "[v, del a] = del(v_0 a)",
    "<v, del a> = v_0 a",
    "module associator",
    "u_0(a.v) - a.(u_0 v) = (u_0 a).v",
    "u_0(a*a') = a*(u_0 a') + (u_0 a)*a'",
    "a_0(a'.v) = a'*(a_0 v)",
    "(a.u)_1 v = a*(u_1 v) - u_0 v_0 a",
    "del(a*a') = a.del(a') + a'.del(a)",
];

/// An element of `C = A + B`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Elem {
    a: DenseVec,
    b: DenseVec,
}

struct Ctx<'a> {
    v: &'a VertexAlgebroid,
    na: usize,
    nb: usize,
}

impl<'a> Ctx<'a> {
    fn zero(&self) -> Elem {
        Elem { a: linalg::zeros(self.na), b: linalg::zeros(self.nb) }
    }

    fn c_basis(&self, k: usize) -> Elem {
        let mut e = self.zero();
        if k < self.na {
            e.a[k] = Scalar::from(1);
        } else {
            e.b[k - self.na] = Scalar::from(1);
        }
        e
    }

    fn c_label(&self, k: usize) -> String {
        if k < self.na {
            self.v.a_labels()[k].clone()
        } else {
            self.v.b_labels()[k - self.na].clone()
        }
    }

    /// `x_0 y` on `C`.
    fn prod0(&self, x: &Elem, y: &Elem) -> Elem {
        let a = linalg::sub(&self.v.anchor(&x.b, &y.a), &self.v.anchor(&y.b, &x.a));
        Elem { a, b: self.v.bracket(&x.b, &y.b) }
    }

    /// `x_1 y` on `C`.
    fn prod1(&self, x: &Elem, y: &Elem) -> Elem {
        Elem { a: self.v.pairing(&x.b, &y.b), b: linalg::zeros(self.nb) }
    }

    fn prod(&self, i: usize, x: &Elem, y: &Elem) -> Elem {
        if i == 0 {
            self.prod0(x, y)
        } else {
            self.prod1(x, y)
        }
    }

    fn add(&self, x: &Elem, y: &Elem) -> Elem {
        Elem { a: linalg::add(&x.a, &y.a), b: linalg::add(&x.b, &y.b) }
    }

    fn neg(&self, x: &Elem) -> Elem {
        let m = Scalar::from(-1);
        Elem { a: linalg::scale(&m, &x.a), b: linalg::scale(&m, &x.b) }
    }

    fn del_c(&self, x: &Elem) -> Elem {
        Elem { a: linalg::zeros(self.na), b: self.v.del(&x.a) }
    }

    fn a_of(&self, a: &DenseVec) -> Elem {
        Elem { a: a.clone(), b: linalg::zeros(self.nb) }
    }

    fn b_of(&self, b: &DenseVec) -> Elem {
        Elem { a: linalg::zeros(self.na), b: b.clone() }
    }
}

struct Recorder {
    checks: Vec<AxiomCheck>,
}

impl Recorder {
    fn run<F>(&mut self, group: AxiomGroup, name: &'static str, f: F)
    where
        F: FnOnce() -> Option<String>,
    {
        let witness = f();
        self.checks.push(AxiomCheck { group, name, passed: witness.is_none(), witness });
    }
}

fn tuple(labels: &[&String]) -> String {
    let inner: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    format!("({})", inner.join(", "))
}

pub(super) fn check_axioms(v: &VertexAlgebroid) -> AxiomReport {
    let (na, nb) = (v.a_dim(), v.b_dim());
    let ctx = Ctx { v, na, nb };
    let al = v.a_labels();
    let bl = v.b_labels();
    let ea = |k: usize| v.a_basis(k);
    let eb = |k: usize| v.b_basis(k);
    let mut rec = Recorder { checks: Vec::new() };
    use AxiomGroup::*;

    // 1-truncated conformal algebra on C = A + B
    rec.run(Conformal, CHECK_NAMES[0], || {
        for i in 0..na {
            let d = ctx.b_of(&v.del(&ea(i)));
            for k in 0..na + nb {
                if ctx.prod0(&d, &ctx.c_basis(k)) != ctx.zero() {
                    return Some(tuple(&[&al[i], &ctx.c_label(k)]));
                }
            }
        }
        None
    });
    rec.run(Conformal, CHECK_NAMES[1], || {
        for i in 0..na {
            let a = ctx.a_of(&ea(i));
            let d = ctx.b_of(&v.del(&ea(i)));
            for k in 0..na + nb {
                let e = ctx.c_basis(k);
                if ctx.prod1(&d, &e) != ctx.neg(&ctx.prod0(&a, &e)) {
                    return Some(tuple(&[&al[i], &ctx.c_label(k)]));
                }
            }
        }
        None
    });
    rec.run(Conformal, CHECK_NAMES[2], || {
        for j in 0..nb {
            for i in 0..na {
                let lhs = v.del(&v.anchor(&eb(j), &ea(i)));
                let rhs = v.bracket(&eb(j), &v.del(&ea(i)));
                if lhs != rhs {
                    return Some(tuple(&[&bl[j], &al[i]]));
                }
            }
        }
        None
    });
    rec.run(Conformal, CHECK_NAMES[3], || {
        for j in 0..nb {
            for i in 0..na {
                let (u, a) = (ctx.b_of(&eb(j)), ctx.a_of(&ea(i)));
                if ctx.prod0(&u, &a) != ctx.neg(&ctx.prod0(&a, &u)) {
                    return Some(tuple(&[&bl[j], &al[i]]));
                }
            }
        }
        None
    });
    rec.run(Conformal, CHECK_NAMES[4], || {
        for i in 0..nb {
            for j in 0..nb {
                let (u, w) = (ctx.b_of(&eb(i)), ctx.b_of(&eb(j)));
                let rhs = ctx.add(&ctx.neg(&ctx.prod0(&w, &u)), &ctx.del_c(&ctx.prod1(&u, &w)));
                if ctx.prod0(&u, &w) != rhs {
                    return Some(tuple(&[&bl[i], &bl[j]]));
                }
            }
        }
        None
    });
    rec.run(Conformal, CHECK_NAMES[5], || {
        for i in 0..nb {
            for j in 0..nb {
                if v.pairing(&eb(i), &eb(j)) != v.pairing(&eb(j), &eb(i)) {
                    return Some(tuple(&[&bl[i], &bl[j]]));
                }
            }
        }
        None
    });
    rec.run(Conformal, CHECK_NAMES[6], || {
        let n = na + nb;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for i in 0..2 {
                        let (ex, ey, ez) = (ctx.c_basis(x), ctx.c_basis(y), ctx.c_basis(z));
                        let lhs = ctx.prod0(&ex, &ctx.prod(i, &ey, &ez));
                        let rhs = ctx.add(
                            &ctx.prod(i, &ey, &ctx.prod0(&ex, &ez)),
                            &ctx.prod(i, &ctx.prod0(&ex, &ey), &ez),
                        );
                        if lhs != rhs {
                            let idx = format!("i={i}");
                            return Some(tuple(&[&ctx.c_label(x), &ctx.c_label(y), &ctx.c_label(z), &idx]));
                        }
                    }
                }
            }
        }
        None
    });

    // structure maps
    rec.run(Algebroid, CHECK_NAMES[7], || {
        let one = v.algebra().one();
        (0..nb).find(|&j| v.act(&one, &eb(j)) != eb(j)).map(|j| tuple(&[&bl[j]]))
    });
    rec.run(Algebroid, CHECK_NAMES[8], || {
        v.leibniz().check_left_leibniz().witness.map(|(i, j, k)| tuple(&[&bl[i], &bl[j], &bl[k]]))
    });
    let derivation_check = || {
        for j in 0..nb {
            for x in 0..na {
                for y in 0..na {
                    let u = eb(j);
                    let lhs = v.anchor(&u, &v.mul(&ea(x), &ea(y)));
                    let rhs = linalg::add(
                        &v.mul(&ea(x), &v.anchor(&u, &ea(y))),
                        &v.mul(&v.anchor(&u, &ea(x)), &ea(y)),
                    );
                    if lhs != rhs {
                        return Some(tuple(&[&bl[j], &al[x], &al[y]]));
                    }
                }
            }
        }
        None
    };
    rec.run(Algebroid, CHECK_NAMES[9], derivation_check);
    rec.run(Algebroid, CHECK_NAMES[10], || {
        for i in 0..nb {
            for j in 0..nb {
                for k in 0..na {
                    let (u, w, a) = (eb(i), eb(j), ea(k));
                    let lhs = v.anchor(&v.bracket(&u, &w), &a);
                    let rhs = linalg::sub(&v.anchor(&u, &v.anchor(&w, &a)), &v.anchor(&w, &v.anchor(&u, &a)));
                    if lhs != rhs {
                        return Some(tuple(&[&bl[i], &bl[j], &al[k]]));
                    }
                }
            }
        }
        None
    });
    rec.run(Algebroid, CHECK_NAMES[11], || {
        for i in 0..nb {
            for j in 0..nb {
                if v.pairing(&eb(i), &eb(j)) != v.pairing(&eb(j), &eb(i)) {
                    return Some(tuple(&[&bl[i], &bl[j]]));
                }
            }
        }
        None
    });
    rec.run(Algebroid, CHECK_NAMES[12], || {
        for i in 0..na {
            let d = v.del(&ea(i));
            for k in 0..na {
                if !linalg::is_zero_vec(&v.anchor(&d, &ea(k))) {
                    return Some(tuple(&[&al[i], &al[k]]));
                }
            }
        }
        None
    });

    // the nine identities
    rec.run(Algebroid, CHECK_NAMES[13], || first_associator_failure(v));
    rec.run(Algebroid, CHECK_NAMES[14], || {
        for i in 0..nb {
            for k in 0..na {
                for j in 0..nb {
                    let (u, a, w) = (eb(i), ea(k), eb(j));
                    let lhs = v.bracket(&u, &v.act(&a, &w));
                    let rhs = linalg::add(&v.act(&v.anchor(&u, &a), &w), &v.act(&a, &v.bracket(&u, &w)));
                    if lhs != rhs {
                        return Some(tuple(&[&bl[i], &al[k], &bl[j]]));
                    }
                }
            }
        }
        None
    });
    rec.run(Algebroid, CHECK_NAMES[15], || {
        for i in 0..nb {
            for j in 0..nb {
                let (u, w) = (eb(i), eb(j));
                let lhs = linalg::add(&v.bracket(&u, &w), &v.bracket(&w, &u));
                if lhs != v.del(&v.pairing(&u, &w)) {
                    return Some(tuple(&[&bl[i], &bl[j]]));
                }
            }
        }
        None
    });
    rec.run(Algebroid, CHECK_NAMES[16], || {
        for k in 0..na {
            for j in 0..nb {
                for x in 0..na {
                    let (a, w, y) = (ea(k), eb(j), ea(x));
                    let lhs = v.anchor(&v.act(&a, &w), &y);
                    let rhs = v.mul(&a, &v.anchor(&w, &y));
                    if lhs != rhs {
                        return Some(tuple(&[&al[k], &bl[j], &al[x]]));
                    }
                }
            }
        }
        None
    });
    let pairing_module_check = || {
        for k in 0..na {
            for i in 0..nb {
                for j in 0..nb {
                    let (a, u, w) = (ea(k), eb(i), eb(j));
                    let lhs = v.pairing(&v.act(&a, &u), &w);
                    let rhs = linalg::sub(&v.mul(&a, &v.pairing(&u, &w)), &v.anchor(&u, &v.anchor(&w, &a)));
                    if lhs != rhs {
                        return Some(tuple(&[&al[k], &bl[i], &bl[j]]));
                    }
                }
            }
        }
        None
    };
    rec.run(Algebroid, CHECK_NAMES[17], pairing_module_check);
    rec.run(Algebroid, CHECK_NAMES[18], || {
        for i in 0..nb {
            for j in 0..nb {
                for k in 0..nb {
                    let (w, w1, w2) = (eb(i), eb(j), eb(k));
                    let lhs = v.anchor(&w, &v.pairing(&w1, &w2));
                    let rhs = linalg::add(
                        &v.pairing(&v.bracket(&w, &w1), &w2),
                        &v.pairing(&w1, &v.bracket(&w, &w2)),
                    );
                    if lhs != rhs {
                        return Some(tuple(&[&bl[i], &bl[j], &bl[k]]));
                    }
                }
            }
        }
        None
    });
    let del_product_check = || {
        for x in 0..na {
            for y in 0..na {
                let (a, b) = (ea(x), ea(y));
                let lhs = v.del(&v.mul(&a, &b));
                let rhs = linalg::add(&v.act(&a, &v.del(&b)), &v.act(&b, &v.del(&a)));
                if lhs != rhs {
                    return Some(tuple(&[&al[x], &al[y]]));
                }
            }
        }
        None
    };
    rec.run(Algebroid, CHECK_NAMES[19], del_product_check);
    rec.run(Algebroid, CHECK_NAMES[20], || {
        for j in 0..nb {
            for k in 0..na {
                let lhs = v.bracket(&eb(j), &v.del(&ea(k)));
                if lhs != v.del(&v.anchor(&eb(j), &ea(k))) {
                    return Some(tuple(&[&bl[j], &al[k]]));
                }
            }
        }
        None
    });
    rec.run(Algebroid, CHECK_NAMES[21], || {
        for j in 0..nb {
            for k in 0..na {
                if v.pairing(&eb(j), &v.del(&ea(k))) != v.anchor(&eb(j), &ea(k)) {
                    return Some(tuple(&[&bl[j], &al[k]]));
                }
            }
        }
        None
    });

    // compatibility conditions on C
    rec.run(Compatibility, CHECK_NAMES[22], || first_associator_failure(v));
    rec.run(Compatibility, CHECK_NAMES[23], || {
        for i in 0..nb {
            for k in 0..na {
                for j in 0..nb {
                    let (u, a, w) = (ctx.b_of(&eb(i)), ea(k), eb(j));
                    let lhs = linalg::sub(
                        &ctx.prod0(&u, &ctx.b_of(&v.act(&a, &w))).b,
                        &v.act(&a, &ctx.prod0(&u, &ctx.b_of(&w)).b),
                    );
                    let rhs = v.act(&ctx.prod0(&u, &ctx.a_of(&a)).a, &w);
                    if lhs != rhs {
                        return Some(tuple(&[&bl[i], &al[k], &bl[j]]));
                    }
                }
            }
        }
        None
    });
    rec.run(Compatibility, CHECK_NAMES[24], derivation_check);
    rec.run(Compatibility, CHECK_NAMES[25], || {
        for k in 0..na {
            for x in 0..na {
                for j in 0..nb {
                    let (a, a2, w) = (ctx.a_of(&ea(k)), ea(x), eb(j));
                    let lhs = ctx.prod0(&a, &ctx.b_of(&v.act(&a2, &w))).a;
                    let rhs = v.mul(&a2, &ctx.prod0(&a, &ctx.b_of(&w)).a);
                    if lhs != rhs {
                        return Some(tuple(&[&al[k], &al[x], &bl[j]]));
                    }
                }
            }
        }
        None
    });
    rec.run(Compatibility, CHECK_NAMES[26], pairing_module_check);
    rec.run(Compatibility, CHECK_NAMES[27], del_product_check);

    AxiomReport { checks: rec.checks }
}

fn first_associator_failure(v: &VertexAlgebroid) -> Option<String> {
    let (na, nb) = (v.a_dim(), v.b_dim());
    for x in 0..na {
        for y in 0..na {
            for j in 0..nb {
                let (a, a2, w) = (v.a_basis(x), v.a_basis(y), v.b_basis(j));
                let lhs = linalg::sub(&v.act(&a, &v.act(&a2, &w)), &v.act(&v.mul(&a, &a2), &w));
                let rhs = linalg::add(
                    &v.act(&v.anchor(&w, &a), &v.del(&a2)),
                    &v.act(&v.anchor(&w, &a2), &v.del(&a)),
                );
                if lhs != rhs {
                    return Some(tuple(&[&v.a_labels()[x], &v.a_labels()[y], &v.b_labels()[j]]));
                }
            }
        }
    }
    None
}

/// Residuals of the identities that are affine in the action table entries
/// `x . del(y)`, grouped so that callers can solve for unknown entries.
pub(crate) fn affine_residuals(v: &VertexAlgebroid, group: usize, anchor_generator: usize) -> DenseVec {
    let (na, nb) = (v.a_dim(), v.b_dim());
    let ea = |k: usize| v.a_basis(k);
    let eb = |k: usize| v.b_basis(k);
    let mut out: DenseVec = Vec::new();
    let g = eb(anchor_generator);
    match group {
        // del(a*a') = a.del a' + a'.del a
        0 => {
            for x in 0..na {
                for y in 0..na {
                    let lhs = v.del(&v.mul(&ea(x), &ea(y)));
                    let rhs = linalg::add(&v.act(&ea(x), &v.del(&ea(y))), &v.act(&ea(y), &v.del(&ea(x))));
                    out.extend(linalg::sub(&lhs, &rhs));
                }
            }
        }
        // <a.u, v> = a*<u,v> - u_0 v_0 a
        1 => {
            for k in 0..na {
                for i in 0..nb {
                    for j in 0..nb {
                        let lhs = v.pairing(&v.act(&ea(k), &eb(i)), &eb(j));
                        let rhs = linalg::sub(
                            &v.mul(&ea(k), &v.pairing(&eb(i), &eb(j))),
                            &v.anchor(&eb(i), &v.anchor(&eb(j), &ea(k))),
                        );
                        out.extend(linalg::sub(&lhs, &rhs));
                    }
                }
            }
        }
        // anchor(a.v) = a anchor(v)
        2 => {
            for k in 0..na {
                for j in 0..nb {
                    for x in 0..na {
                        let lhs = v.anchor(&v.act(&ea(k), &eb(j)), &ea(x));
                        out.extend(linalg::sub(&lhs, &v.mul(&ea(k), &v.anchor(&eb(j), &ea(x)))));
                    }
                }
            }
        }
        // [g, a.v] = g_0a . v + a.[g,v]
        3 => {
            for k in 0..na {
                for j in 0..nb {
                    let lhs = v.bracket(&g, &v.act(&ea(k), &eb(j)));
                    let rhs = linalg::add(&v.act(&v.anchor(&g, &ea(k)), &eb(j)), &v.act(&ea(k), &v.bracket(&g, &eb(j))));
                    out.extend(linalg::sub(&lhs, &rhs));
                }
            }
        }
        // associator with v = g
        _ => {
            for x in 0..na {
                for y in 0..na {
                    let (a, a2) = (ea(x), ea(y));
                    let lhs = linalg::sub(&v.act(&a, &v.act(&a2, &g)), &v.act(&v.mul(&a, &a2), &g));
                    let rhs = linalg::add(
                        &v.act(&v.anchor(&g, &a), &v.del(&a2)),
                        &v.act(&v.anchor(&g, &a2), &v.del(&a)),
                    );
                    out.extend(linalg::sub(&lhs, &rhs));
                }
            }
        }
    }
    out
}

pub(crate) const AFFINE_GROUPS: usize = 5;
