//! Shared fixtures: parameter samples and the displayed product tables,
//! written out independently of the family constructors.
#![allow(dead_code)]

use std::collections::BTreeMap;

use algebroid::algebroid::families::{self, Family, FAMILY_NAMES};
use algebroid::algebroid::VertexAlgebroid;
use algebroid::linalg::DenseVec;
use algebroid::{q, Scalar};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn v(xs: &[&str]) -> DenseVec {
    xs.iter().map(|x| q(x)).collect()
}

/// A random element `p/r + (p'/r') i` with small numerators and denominators.
pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let re = Scalar::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
    let im = if rng.gen_bool(0.3) { Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2)) } else { Scalar::zero() };
    &re + &(&im * &Scalar::i())
}

/// `count` parameter tuples for a family, drawn freely from its parameter space.
pub fn free_samples(name: &str, count: usize, seed: u64) -> Vec<Family> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let mut p = BTreeMap::new();
        match name {
            "dim2_nilpotent" => {
                p.insert("beta2".to_string(), random_scalar(&mut rng));
            }
            "dim2_solvable" => {
                p.insert("alpha2".to_string(), random_scalar(&mut rng));
            }
            "dim3_type_b" => {
                let s = random_scalar(&mut rng);
                if s.is_zero() || (&s * &s).is_one() {
                    continue;
                }
                p.insert("s".to_string(), s);
                p.insert("gamma1".to_string(), random_scalar(&mut rng));
            }
            "dim3_type_c" => {
                p.insert("gamma1".to_string(), random_scalar(&mut rng));
            }
            _ => {
                p.insert("gamma0".to_string(), random_scalar(&mut rng));
                p.insert("gamma1".to_string(), random_scalar(&mut rng));
            }
        }
        out.push(Family::from_params(name, &p).unwrap());
    }
    out
}

fn params(pairs: &[(&str, &str)]) -> BTreeMap<String, Scalar> {
    pairs.iter().map(|(k, x)| (k.to_string(), q(x))).collect()
}

/// One parameter choice per family on which the bundle is a vertex algebroid.
pub fn consistent_families() -> Vec<Family> {
    let table: [(&str, &[(&str, &str)]); 6] = [
        ("dim2_nilpotent", &[("beta2", "0")]),
        ("dim2_solvable", &[("alpha2", "2")]),
        ("dim3_nilpotent", &[("gamma0", "0"), ("gamma1", "1")]),
        ("dim3_type_b", &[("s", "2"), ("gamma1", "1/2")]),
        ("dim3_type_c", &[("gamma1", "0")]),
        ("dim3_type_d", &[("gamma0", "1"), ("gamma1", "-2")]),
    ];
    table.iter().map(|(name, p)| Family::from_params(name, &params(p)).unwrap()).collect()
}

pub fn all_names() -> [&'static str; 6] {
    FAMILY_NAMES
}

/// Three parameter samples per classification result.
pub fn table_samples() -> Vec<Family> {
    let mut out = Vec::new();
    for x in ["0", "3", "-1/2+i"] {
        out.push(Family::Dim2Nilpotent { beta2: q(x) });
    }
    for x in ["2", "-1", "1/3+2i"] {
        out.push(Family::Dim2Solvable { alpha2: q(x) });
    }
    for (g0, g1) in [("0", "1"), ("4", "0"), ("-2/3", "i")] {
        out.push(Family::Dim3Nilpotent { gamma0: q(g0), gamma1: q(g1) });
    }
    for (s, g1) in [("2", "1/2"), ("3", "0"), ("1+i", "-3")] {
        out.push(Family::Dim3TypeB { s: q(s), gamma1: q(g1) });
    }
    for g1 in ["0", "2", "1/2-i"] {
        out.push(Family::Dim3TypeC { gamma1: q(g1) });
    }
    for (g0, g1) in [("1", "-2"), ("0", "0"), ("2", "1")] {
        out.push(Family::Dim3TypeD { gamma0: q(g0), gamma1: q(g1) });
    }
    out
}

/// A displayed product: its name, the constructor's value and the displayed value.
pub struct Product {
    pub name: &'static str,
    pub emitted: DenseVec,
    pub displayed: DenseVec,
}

fn s(x: i64) -> Scalar {
    Scalar::from(x)
}

fn vec3(a: Scalar, b: Scalar, c: Scalar) -> DenseVec {
    vec![a, b, c]
}

/// Every displayed product of the classification result for `family`.
///
/// Bases: `{1, a}`, `{b, da}` in dimension 2 and `{1, a, b0a}`,
/// `{b, da, d(b0a)}` in dimension 3.
pub fn displayed_products(family: &Family) -> Vec<Product> {
    let bundle = family.build().unwrap();
    let a = bundle.a_basis(1);
    let b = bundle.b_basis(0);
    let da = bundle.b_basis(1);
    let mut out = Vec::new();
    let mut push = |name, emitted, displayed| out.push(Product { name, emitted, displayed });
    let half = Scalar::ratio(1, 2);
    // shared by every family
    push("b_0 b = 1/2 da", bundle.bracket(&b, &b), {
        let mut x = vec![Scalar::zero(); bundle.b_dim()];
        x[1] = half.clone();
        x
    });
    push("b_1 b = a", bundle.pairing(&b, &b), a.clone());
    match family {
        Family::Dim2Nilpotent { beta2 } => {
            push("b_0 a = 0", bundle.anchor(&b, &a), v(&["0", "0"]));
            push("a.b = beta2 da", bundle.act(&a, &b), vec![s(0), beta2.clone()]);
            push("a*a = 0", bundle.mul(&a, &a), v(&["0", "0"]));
            push("a.da = 0", bundle.act(&a, &da), v(&["0", "0"]));
        }
        Family::Dim2Solvable { alpha2 } => {
            let h = &half * alpha2;
            push("b_0 a = a - 1/2 alpha2 1", bundle.anchor(&b, &a), vec![-h.clone(), s(1)]);
            push("a.b = 1/2 alpha2 b + (1/2 alpha2 - 1) da", bundle.act(&a, &b), vec![h.clone(), &h - &s(1)]);
            let alpha1 = -(&(alpha2 * alpha2) * &Scalar::ratio(1, 4));
            push("a*a = alpha2 a - 1/4 alpha2^2 1", bundle.mul(&a, &a), vec![alpha1, alpha2.clone()]);
            push("a.da = alpha2/2 da", bundle.act(&a, &da), vec![s(0), h]);
        }
        Family::Dim3Nilpotent { gamma0, gamma1 } => {
            let y = bundle.a_basis(2);
            let dy = bundle.b_basis(2);
            push("b_0 d(b0a) = 0", bundle.bracket(&b, &dy), v(&["0", "0", "0"]));
            push("a*(b0a) = 0", bundle.mul(&a, &y), v(&["0", "0", "0"]));
            push("a*a = gamma0 b0a", bundle.mul(&a, &a), vec3(s(0), s(0), gamma0.clone()));
            push("a.b = gamma0 da + gamma1 d(b0a)", bundle.act(&a, &b), vec3(s(0), gamma0.clone(), gamma1.clone()));
            push("a.da = 1/2 gamma0 d(b0a)", bundle.act(&a, &da), vec3(s(0), s(0), &half * gamma0));
            let three_quarters = &Scalar::ratio(3, 4) * gamma0;
            push("(b0a).b = 3/4 gamma0 d(b0a)", bundle.act(&y, &b), vec3(s(0), s(0), three_quarters));
            push("b_0(b0a) = 0", bundle.anchor(&b, &y), v(&["0", "0", "0"]));
        }
        Family::Dim3TypeB { s: root, gamma1 } => {
            let y = bundle.a_basis(2);
            let dy = bundle.b_basis(2);
            let alpha = root * root;
            let k = &(&(&alpha + &s(1)) / root) * &Scalar::i();
            let g = gamma1 + &s(1);
            push("b_0 d(b0a) = da - k d(b0a)", bundle.bracket(&b, &dy), vec3(s(0), s(1), -k.clone()));
            push("a*(b0a) = (gamma1+1) b0a", bundle.mul(&a, &y), vec3(s(0), s(0), g.clone()));
            push("a.da = (gamma1+1) da", bundle.act(&a, &da), vec3(s(0), g.clone(), s(0)));
            push("(b0a).b = gamma1 da + k d(b0a)", bundle.act(&y, &b), vec3(s(0), gamma1.clone(), k.clone()));
            push(
                "a.b = (gamma1+1) b + (gamma1+1) k da + gamma1 d(b0a)",
                bundle.act(&a, &b),
                vec3(g.clone(), &g * &k, gamma1.clone()),
            );
            push("b_0(b0a) = -(gamma1+1) 1 + a - k b0a", bundle.anchor(&b, &y), vec3(-g.clone(), s(1), -k));
            push("a*a = -(gamma1+1)^2 1 + 2(gamma1+1) a", bundle.mul(&a, &a), vec3(-(&g * &g), &s(2) * &g, s(0)));
        }
        Family::Dim3TypeC { gamma1 } => {
            let y = bundle.a_basis(2);
            let dy = bundle.b_basis(2);
            let two_i = &s(2) * &Scalar::i();
            let g = gamma1 + &s(1);
            push("b_0 d(b0a) = da + 2i d(b0a)", bundle.bracket(&b, &dy), vec3(s(0), s(1), two_i.clone()));
            push("a*(b0a) = (gamma1+1) b0a", bundle.mul(&a, &y), vec3(s(0), s(0), g.clone()));
            push("a*a = -(gamma1+1)^2 1 + 2(gamma1+1) a", bundle.mul(&a, &a), vec3(-(&g * &g), &s(2) * &g, s(0)));
            push("a.da = (gamma1+1) da", bundle.act(&a, &da), vec3(s(0), g.clone(), s(0)));
            push("(b0a).b = gamma1 da - 2i d(b0a)", bundle.act(&y, &b), vec3(s(0), gamma1.clone(), -two_i.clone()));
            push(
                "a.b = (gamma1+1) b - 2i(gamma1+1) da + gamma1 d(b0a)",
                bundle.act(&a, &b),
                vec3(g.clone(), -(&two_i * &g), gamma1.clone()),
            );
        }
        Family::Dim3TypeD { gamma0, gamma1 } => {
            let y = bundle.a_basis(2);
            let dy = bundle.b_basis(2);
            let beta = &(gamma0 + gamma1) + &s(1);
            push("b_0 d(b0a) = d(b0a)", bundle.bracket(&b, &dy), v(&["0", "0", "1"]));
            push("b_0(b0a) = b0a", bundle.anchor(&b, &y), v(&["0", "0", "1"]));
            push("a*(b0a) = beta b0a", bundle.mul(&a, &y), vec3(s(0), s(0), beta.clone()));
            push("a*a = beta a + beta b0a", bundle.mul(&a, &a), vec3(s(0), beta.clone(), beta.clone()));
            push("a.b = beta b + gamma0 da + gamma1 d(b0a)", bundle.act(&a, &b), vec3(beta.clone(), gamma0.clone(), gamma1.clone()));
            // general formula; the 1/4 beta form breaks del(a*a') = a.del a' + a'.del a
            push("a.da = 1/2 beta (da + d(b0a))", bundle.act(&a, &da), vec3(s(0), &half * &beta, &half * &beta));
            if beta.is_zero() {
                push("(b0a).b = -d(b0a)", bundle.act(&y, &b), v(&["0", "0", "-1"]));
            }
        }
    }
    out
}

/// `a.da` as displayed for type d, for comparison with the displayed variant.
pub fn type_d_displayed_a_da(gamma0: &Scalar, gamma1: &Scalar) -> (DenseVec, DenseVec) {
    let bundle = families::dim3_type_d_variant(gamma0, gamma1, families::TypeDVariant::Displayed);
    let beta = &(gamma0 + gamma1) + &s(1);
    let displayed = vec3(s(0), &Scalar::ratio(1, 2) * &beta, &Scalar::ratio(1, 4) * &beta);
    (bundle.act(&bundle.a_basis(1), &bundle.b_basis(1)), displayed)
}

/// The bundle's JSON with one table entry replaced.
pub fn corrupt(bundle: &VertexAlgebroid, path: &[&str], index: &[usize], value: &str) -> VertexAlgebroid {
    let mut json = serde_json::to_value(bundle).unwrap();
    let mut node = &mut json;
    for key in path {
        node = &mut node[*key];
    }
    for &i in index {
        node = &mut node[i];
    }
    *node = serde_json::Value::String(value.to_string());
    serde_json::from_value(json).unwrap()
}
