//! Exact linear algebra over `Q(i)`: small dense routines and an
//! incremental sparse row-echelon form used by the graded builders.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type DenseVec = Vec<Scalar>;

pub fn zeros(n: usize) -> DenseVec {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, k: usize) -> DenseVec {
    let mut v = zeros(n);
    v[k] = Scalar::one();
    v
}

pub fn add(x: &[Scalar], y: &[Scalar]) -> DenseVec {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[Scalar], y: &[Scalar]) -> DenseVec {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale(c: &Scalar, x: &[Scalar]) -> DenseVec {
    x.iter().map(|a| c * a).collect()
}

pub fn axpy(acc: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

pub fn is_zero_vec(x: &[Scalar]) -> bool {
    x.iter().all(Zero::is_zero)
}

/// Reduced row-echelon form in place. Zero rows are dropped; returns the
/// pivot column of each remaining row.
pub fn rref(rows: &mut Vec<DenseVec>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        rows[r] = scale(&inv, &rows[r]);
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[col].is_zero() {
                let c = -row[col].clone();
                axpy(row, &c, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[DenseVec]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : M x = 0}` where `M` is given by rows of length `ncols`.
pub fn kernel(rows: &[DenseVec], ncols: usize) -> Vec<DenseVec> {
    let mut m: Vec<DenseVec> = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = unit(ncols, f);
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A basis (in reduced echelon form) of the span of `vectors`.
pub fn span_basis(vectors: &[DenseVec]) -> Vec<DenseVec> {
    let mut m = vectors.to_vec();
    rref(&mut m);
    m
}

/// Solves `M x = rhs`. Returns a particular solution (free variables set to
/// zero) and the dimension of the solution space of the homogeneous system.
pub fn solve(rows: &[DenseVec], rhs: &[Scalar], ncols: usize) -> Option<(DenseVec, usize)> {
    let mut m: Vec<DenseVec> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = zeros(ncols);
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some((x, ncols - pivots.len()))
}

/// Coordinates of `target` in terms of `basis` (which must be independent).
pub fn coordinates(basis: &[DenseVec], target: &[Scalar]) -> Option<DenseVec> {
    let n = target.len();
    let rows: Vec<DenseVec> = (0..n)
        .map(|i| basis.iter().map(|b| b[i].clone()).collect())
        .collect();
    solve(&rows, target, basis.len()).map(|(x, _)| x)
}

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(k: usize) -> Self {
        SparseVec { entries: vec![(k, Scalar::one())] }
    }

    pub fn single(k: usize, c: Scalar) -> Self {
        if c.is_zero() {
            Self::new()
        } else {
            SparseVec { entries: vec![(k, c)] }
        }
    }

    /// Builds from arbitrary (index, coefficient) pairs, summing repeats.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, c) in pairs {
            if c.is_zero() {
                continue;
            }
            *acc.entry(k).or_insert_with(Scalar::zero) += c;
        }
        SparseVec { entries: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> DenseVec {
        let mut v = zeros(n);
        for (k, c) in &self.entries {
            v[*k] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(k, c)| (*k, c))
    }

    pub fn get(&self, k: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&k, |(i, _)| *i)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(k, c)| (*k, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(k, _)| *k)
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(k, x)| (*k, c * x)).collect() }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, c * &b[j].1));
                j += 1;
            } else {
                let s = &a[i].1 + &(c * &b[j].1);
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add_assign_scaled(&mut self, c: &Scalar, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        *self = self.add_scaled(c, other);
    }

    pub fn map_indices<F: Fn(usize) -> usize>(&self, f: F) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(k, c)| (f(*k), c.clone())))
    }
}

/// Accumulates `Σ cᵢ·vᵢ` into a sparse vector.
#[derive(Default)]
pub struct Accumulator {
    acc: BTreeMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator { acc: BTreeMap::new() }
    }

    pub fn add(&mut self, k: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.acc.entry(k).or_insert_with(Scalar::zero);
        *slot += c;
    }

    pub fn add_vec(&mut self, c: &Scalar, v: &SparseVec) {
        if c.is_zero() {
            return;
        }
        if c.is_one() {
            for (k, x) in v.iter() {
                self.add(k, x);
            }
        } else {
            for (k, x) in v.iter() {
                self.add(k, &(c * x));
            }
        }
    }

    pub fn finish(self) -> SparseVec {
        SparseVec {
            entries: self.acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

/// Incrementally maintained reduced row-echelon basis of a subspace.
///
/// Every stored row has leading coefficient one, and no other row has a
/// nonzero entry in that pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().expect("nonzero row").0)
    }

    /// Remainder of `v` modulo the subspace; supported on non-pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter_map(|(k, c)| self.pivot_row.get(&k).map(|&r| (r, c.clone())))
            .collect();
        if hits.is_empty() {
            return v.clone();
        }
        let mut acc = Accumulator::new();
        acc.add_vec(&Scalar::one(), v);
        for (r, c) in hits {
            acc.add_vec(&-c, &self.rows[r]);
        }
        acc.finish()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the subspace. Returns false if it was already contained.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((col, lead)) = r.leading() else {
            return false;
        };
        let r = r.scaled(&lead.inv().expect("nonzero"));
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(col) {
                let c = -c.clone();
                *row = row.add_scaled(&c, &r);
            }
        }
        self.pivot_row.insert(col, self.rows.len());
        self.rows.push(r);
        true
    }
}
