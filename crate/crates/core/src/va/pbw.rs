//! Induced modules `U(L) (x) U` over the non-positive part, in the PBW basis
//! `x_1(-n_1) ... x_k(-n_k) u` with `n_1 >= ... >= n_k >= 1`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use super::loop_algebra::{LoopAlgebra, Mode, ModeId};
use super::VaError;
use crate::algebroid::VertexAlgebroid;
use crate::linalg::{self, Accumulator, DenseVec, SparseVec};
use crate::scalar::Scalar;

/// A creation factor `(degree, colour)`: the mode `f_colour(-degree)`.
pub type Factor = (u8, u8);
pub type Word = Vec<Factor>;

fn factor_key(f: Factor) -> (std::cmp::Reverse<u8>, u8) {
    (std::cmp::Reverse(f.0), f.1)
}

/// The degree-zero space `U` with the actions of `e_i(-1)` and `f_j(0)`.
///
/// Matrices are stored by columns: `algebra_action[i][k]` is the image of the
/// k-th basis vector of `U` under `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundModule {
    pub(crate) dim: usize,
    pub(crate) labels: Vec<String>,
    pub(crate) algebra_action: Vec<Vec<DenseVec>>,
    pub(crate) b_action: Vec<Vec<DenseVec>>,
    /// For quotients of `A`: the index of the class of `1_A` and a lift of each basis vector.
    pub(crate) vacuum: Option<(usize, Vec<DenseVec>)>,
}

fn apply_matrix(columns: &[DenseVec], x: &[Scalar]) -> DenseVec {
    let mut out = linalg::zeros(x.len());
    for (k, c) in x.iter().enumerate() {
        if !c.is_zero() {
            linalg::axpy(&mut out, c, &columns[k]);
        }
    }
    out
}

impl GroundModule {
    /// `A` acting on itself by multiplication and anchors.
    pub fn regular(bundle: &VertexAlgebroid) -> Self {
        Self::algebra_quotient(bundle, &[])
    }

    /// `A / I` for a subspace `I` that is an ideal stable under the anchors.
    pub fn algebra_quotient(bundle: &VertexAlgebroid, ideal: &[DenseVec]) -> Self {
        let na = bundle.a_dim();
        let ideal = linalg::span_basis(ideal);
        let mut basis = ideal.clone();
        let mut lift = Vec::new();
        // prefer keeping 1_A as a representative
        let mut order: Vec<usize> = vec![bundle.algebra().unit_index()];
        order.extend((0..na).filter(|&k| k != bundle.algebra().unit_index()));
        for k in order {
            let mut trial = basis.clone();
            trial.push(bundle.a_basis(k));
            if linalg::rank(&trial) > basis.len() {
                basis.push(bundle.a_basis(k));
                lift.push(bundle.a_basis(k));
            }
        }
        let offset = ideal.len();
        let project = |x: &[Scalar]| -> DenseVec {
            let coords = linalg::coordinates(&basis, x).expect("basis spans A");
            coords[offset..].to_vec()
        };
        let dim = lift.len();
        let labels = lift
            .iter()
            .map(|v| {
                let k = v.iter().position(|c| !c.is_zero()).expect("nonzero lift");
                bundle.a_labels()[k].clone()
            })
            .collect();
        let algebra_action = (0..na)
            .map(|i| lift.iter().map(|l| project(&bundle.mul(&bundle.a_basis(i), l))).collect())
            .collect();
        let b_action = (0..bundle.b_dim())
            .map(|j| lift.iter().map(|l| project(&bundle.anchor(&bundle.b_basis(j), l))).collect())
            .collect();
        let vacuum = project(&bundle.algebra().one()).iter().position(|c| !c.is_zero());
        GroundModule {
            dim,
            labels,
            algebra_action,
            b_action,
            vacuum: vacuum.map(|v| (v, lift)),
        }
    }

    /// The one-dimensional space with `e_i v = phi[i] v` and `f_j(0) v = rho[j] v`.
    pub fn one_dim(phi: &[Scalar], rho: &[Scalar]) -> Self {
        GroundModule {
            dim: 1,
            labels: vec!["v".to_string()],
            algebra_action: phi.iter().map(|c| vec![vec![c.clone()]]).collect(),
            b_action: rho.iter().map(|c| vec![vec![c.clone()]]).collect(),
            vacuum: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn act_a(&self, a: &[Scalar], u: &[Scalar]) -> DenseVec {
        let mut out = linalg::zeros(self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                linalg::axpy(&mut out, c, &apply_matrix(&self.algebra_action[i], u));
            }
        }
        out
    }

    fn act_b(&self, b: &[Scalar], u: &[Scalar]) -> DenseVec {
        let mut out = linalg::zeros(self.dim);
        for (j, c) in b.iter().enumerate() {
            if !c.is_zero() {
                linalg::axpy(&mut out, c, &apply_matrix(&self.b_action[j], u));
            }
        }
        out
    }

    /// Identities making `U` a module for the degree-zero and negative modes;
    /// returns the violated ones.
    pub fn violations(&self, bundle: &VertexAlgebroid) -> Vec<String> {
        let (na, nb) = (bundle.a_dim(), bundle.b_dim());
        let mut out = Vec::new();
        if self.algebra_action.len() != na || self.b_action.len() != nb {
            out.push("action tables have the wrong shape".to_string());
            return out;
        }
        let ea = |k: usize| bundle.a_basis(k);
        let eb = |k: usize| bundle.b_basis(k);
        let al = bundle.a_labels();
        let bl = bundle.b_labels();
        for k in 0..self.dim {
            let u = linalg::unit(self.dim, k);
            if self.act_a(&bundle.algebra().one(), &u) != u {
                out.push("1_A does not act as the identity".to_string());
            }
            for x in 0..na {
                if !linalg::is_zero_vec(&self.act_b(&bundle.del(&ea(x)), &u)) {
                    out.push(format!("del {} acts nontrivially", al[x]));
                }
                for y in 0..na {
                    let lhs = self.act_a(&ea(x), &self.act_a(&ea(y), &u));
                    if lhs != self.act_a(&bundle.mul(&ea(x), &ea(y)), &u) {
                        out.push(format!("{}({} u) != ({}*{}) u", al[x], al[y], al[x], al[y]));
                    }
                }
                for j in 0..nb {
                    let (a, b) = (ea(x), eb(j));
                    let comm = linalg::sub(&self.act_b(&b, &self.act_a(&a, &u)), &self.act_a(&a, &self.act_b(&b, &u)));
                    if comm != self.act_a(&bundle.anchor(&b, &a), &u) {
                        out.push(format!("[{}(0), {}] != {}_0 {}", bl[j], al[x], bl[j], al[x]));
                    }
                    if self.act_a(&a, &self.act_b(&b, &u)) != self.act_b(&bundle.act(&a, &b), &u) {
                        out.push(format!("{}({} u) != ({}.{}) u", al[x], bl[j], al[x], bl[j]));
                    }
                }
            }
            for i in 0..nb {
                for j in 0..nb {
                    let comm = linalg::sub(
                        &self.act_b(&eb(i), &self.act_b(&eb(j), &u)),
                        &self.act_b(&eb(j), &self.act_b(&eb(i), &u)),
                    );
                    if comm != self.act_b(&bundle.bracket(&eb(i), &eb(j)), &u) {
                        out.push(format!("[{}(0), {}(0)] != ({}_0 {})(0)", bl[i], bl[j], bl[i], bl[j]));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Clone, Debug, Default)]
struct DegreeBasis {
    words: Vec<(Word, usize)>,
    index: HashMap<(Word, usize), usize>,
}

/// The induced module, truncated to degrees `0..=window`.
#[derive(Debug)]
pub struct InducedModule {
    lie: LoopAlgebra,
    ground: GroundModule,
    window: usize,
    degrees: Vec<DegreeBasis>,
    cache: Mutex<HashMap<(ModeId, usize, usize), SparseVec>>,
    d_cache: Mutex<HashMap<(usize, usize), SparseVec>>,
}

fn words_of_degree(d: usize, colours: usize) -> Vec<Word> {
    fn rec(remaining: usize, max: Option<Factor>, colours: usize, prefix: &mut Word, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for deg in (1..=remaining).rev() {
            for c in 0..colours {
                let f = (deg as u8, c as u8);
                if let Some(m) = max {
                    if factor_key(f) < factor_key(m) {
                        continue;
                    }
                }
                prefix.push(f);
                rec(remaining - deg, Some(f), colours, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(d, None, colours, &mut Vec::new(), &mut out);
    out
}

impl InducedModule {
    pub fn new(lie: LoopAlgebra, ground: GroundModule, window: usize) -> Self {
        let nb = lie.bundle().b_dim();
        let preferred = ground.vacuum.as_ref().map(|(v, _)| *v).unwrap_or(0);
        let degrees = (0..=window)
            .map(|d| {
                let mut words: Vec<(Word, usize)> = words_of_degree(d, nb)
                    .into_iter()
                    .flat_map(|w| (0..ground.dim).map(move |u| (w.clone(), u)))
                    .collect();
                // pivots are taken at the smallest index: put words with high
                // colours and non-preferred ground vectors first
                words.sort_by_key(|(w, u)| {
                    let colour_sum: usize = w.iter().map(|f| f.1 as usize).sum();
                    (*u == preferred, std::cmp::Reverse(colour_sum), w.clone(), *u)
                });
                let index = words.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
                DegreeBasis { words, index }
            })
            .collect();
        InducedModule {
            lie,
            ground,
            window,
            degrees,
            cache: Mutex::new(HashMap::new()),
            d_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn lie(&self) -> &LoopAlgebra {
        &self.lie
    }

    pub fn ground(&self) -> &GroundModule {
        &self.ground
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.degrees[degree].words.len()
    }

    pub fn word(&self, degree: usize, index: usize) -> &(Word, usize) {
        &self.degrees[degree].words[index]
    }

    pub fn index_of(&self, degree: usize, word: &Word, u: usize) -> Option<usize> {
        self.degrees.get(degree)?.index.get(&(word.clone(), u)).copied()
    }

    /// `u` in degree 0.
    pub fn ground_vector(&self, u: usize) -> SparseVec {
        SparseVec::unit(self.index_of(0, &Vec::new(), u).expect("ground basis"))
    }

    fn target(&self, d: usize, shift: i64) -> Result<Option<usize>, VaError> {
        let t = d as i64 + shift;
        if t < 0 {
            return Ok(None);
        }
        if t as usize > self.window {
            return Err(VaError::DegreeOverflow { degree: t, max: self.window });
        }
        Ok(Some(t as usize))
    }

    /// The basis element `x` applied to the basis vector `idx` of degree `d`.
    pub fn act_id(&self, x: ModeId, d: usize, idx: usize) -> Result<SparseVec, VaError> {
        let Some(t) = self.target(d, x.degree)? else {
            return Ok(SparseVec::new());
        };
        if let Some(v) = self.cache.lock().expect("cache lock").get(&(x, d, idx)) {
            return Ok(v.clone());
        }
        let (word, u) = self.degrees[d].words[idx].clone();
        let out = if word.is_empty() && x.degree <= 0 {
            if x.degree < 0 {
                SparseVec::new()
            } else {
                let na = self.lie.bundle().a_dim();
                let columns = if x.index < na {
                    &self.ground.algebra_action[x.index]
                } else {
                    &self.ground.b_action[self.lie.complement()[x.index - na]]
                };
                let image = &columns[u];
                SparseVec::from_pairs(
                    image.iter().enumerate().map(|(k, c)| (self.degrees[0].index[&(Vec::new(), k)], c.clone())),
                )
            }
        } else if x.degree > 0 && (word.is_empty() || factor_key((x.degree as u8, x.index as u8)) <= factor_key(word[0])) {
            let mut w = Vec::with_capacity(word.len() + 1);
            w.push((x.degree as u8, x.index as u8));
            w.extend_from_slice(&word);
            SparseVec::unit(self.degrees[t].index[&(w, u)])
        } else {
            // x m1 rest = m1 (x rest) + [x, m1] rest
            let m1 = word[0];
            let m1_id = ModeId { degree: m1.0 as i64, index: m1.1 as usize };
            let rd = d - m1.0 as usize;
            let rest = self.degrees[rd].index[&(word[1..].to_vec(), u)];
            let inner = self.act_id(x, rd, rest)?;
            let mut acc = Accumulator::new();
            if !inner.is_zero() {
                let inner_deg = (rd as i64 + x.degree) as usize;
                acc.add_vec(&Scalar::one(), &self.apply(&self.lie.unit(m1_id), inner_deg, &inner)?);
            }
            let comm = self.lie.bracket_ids(x, m1_id);
            if !comm.is_zero() {
                acc.add_vec(&Scalar::one(), &self.apply(&comm, rd, &SparseVec::unit(rest))?);
            }
            acc.finish()
        };
        self.cache.lock().expect("cache lock").insert((x, d, idx), out.clone());
        Ok(out)
    }

    /// `x v` for a vector `v` of degree `d`.
    pub fn apply(&self, x: &Mode, d: usize, v: &SparseVec) -> Result<SparseVec, VaError> {
        if self.target(d, x.degree)?.is_none() || v.is_zero() {
            return Ok(SparseVec::new());
        }
        let mut acc = Accumulator::new();
        for (id, c) in x.terms() {
            for (k, vk) in v.iter() {
                let image = self.act_id(id, d, k)?;
                acc.add_vec(&(c * vk), &image);
            }
        }
        Ok(acc.finish())
    }

    /// Translation on the vacuum module of a quotient of `A`:
    /// `D(x(-n) w) = n x(-n-1) w + x(-n) D w` and `D u = del(u)(-1) 1`.
    pub fn translation_id(&self, d: usize, idx: usize) -> Result<SparseVec, VaError> {
        let (vacuum, lift) = self.ground.vacuum.as_ref().ok_or(VaError::NoVacuum)?;
        self.target(d, 1)?;
        if let Some(v) = self.d_cache.lock().expect("cache lock").get(&(d, idx)) {
            return Ok(v.clone());
        }
        let (word, u) = self.degrees[d].words[idx].clone();
        let out = if word.is_empty() {
            let bundle = self.lie.bundle();
            let x = self.lie.b_mode(&bundle.del(&lift[u]), -1);
            self.apply(&x, 0, &self.ground_vector(*vacuum))?
        } else {
            let m1 = word[0];
            let rd = d - m1.0 as usize;
            let rest = self.degrees[rd].index[&(word[1..].to_vec(), u)];
            let raised = ModeId { degree: m1.0 as i64 + 1, index: m1.1 as usize };
            let mut acc = Accumulator::new();
            acc.add_vec(&Scalar::int(m1.0 as i64), &self.act_id(raised, rd, rest)?);
            let inner = self.translation_id(rd, rest)?;
            let m1_id = ModeId { degree: m1.0 as i64, index: m1.1 as usize };
            acc.add_vec(&Scalar::one(), &self.apply(&self.lie.unit(m1_id), rd + 1, &inner)?);
            acc.finish()
        };
        self.d_cache.lock().expect("cache lock").insert((d, idx), out.clone());
        Ok(out)
    }

    pub fn translation(&self, d: usize, v: &SparseVec) -> Result<SparseVec, VaError> {
        let mut acc = Accumulator::new();
        for (k, c) in v.iter() {
            acc.add_vec(c, &self.translation_id(d, k)?);
        }
        Ok(acc.finish())
    }

    /// Lift of the k-th ground vector to `A`, for quotients of `A`.
    pub fn lift(&self, u: usize) -> Option<&DenseVec> {
        self.ground.vacuum.as_ref().map(|(_, lift)| &lift[u])
    }

    pub fn vacuum(&self) -> Option<usize> {
        self.ground.vacuum.as_ref().map(|(v, _)| *v)
    }

    /// Human-readable form of a vector of degree `d`.
    pub fn describe(&self, d: usize, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let labels = self.lie.bundle().b_labels();
        let terms: Vec<String> = v
            .iter()
            .map(|(k, c)| {
                let (word, u) = &self.degrees[d].words[k];
                let mut s = String::new();
                for f in word {
                    s.push_str(&format!("{}(-{})", labels[f.1 as usize], f.0));
                }
                s.push_str(&format!("[{}]", self.ground.labels[*u]));
                if c.is_one() {
                    s
                } else {
                    format!("({c}) {s}")
                }
            })
            .collect();
        terms.join(" + ")
    }
}
