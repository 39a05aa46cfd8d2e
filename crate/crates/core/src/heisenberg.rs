//! The rank-one Heisenberg vertex algebra truncated by degree, and a checker
//! for the map onto the radical quotient of a graded vertex algebra.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebroid::VertexAlgebroid;
use crate::linalg::{self, Accumulator, DenseVec, Echelon, SparseVec};
use crate::scalar::Scalar;
use crate::va::{build_vb, Certificate, GradedVA, VaError, VaVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeisenbergError {
    #[error("NotHeisenbergFamily: {0}")]
    NotHeisenbergFamily(String),
    #[error(transparent)]
    Va(#[from] VaError),
}

/// Partitions of `n` with parts in non-increasing order, in reverse
/// lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `p(n)` by Euler's pentagonal recurrence.
pub fn partition_count(n: usize) -> u128 {
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total: i128 = 0;
        for k in 1.. {
            let k = k as i64;
            let mut any = false;
            for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
                if g as usize <= m {
                    any = true;
                    let term = p[m - g as usize] as i128;
                    total += if k % 2 == 1 { term } else { -term };
                }
            }
            if !any {
                break;
            }
        }
        p[m] = total as u128;
    }
    p[n]
}

/// `p(n)` by counting partitions directly, via parts bounded by `max`.
pub fn partition_count_by_enumeration(n: usize) -> u128 {
    fn count(n: usize, max: usize, memo: &mut HashMap<(usize, usize), u128>) -> u128 {
        if n == 0 {
            return 1;
        }
        if let Some(&c) = memo.get(&(n, max)) {
            return c;
        }
        let c = (1..=n.min(max)).map(|part| count(n - part, part, memo)).sum();
        memo.insert((n, max), c);
        c
    }
    count(n, n, &mut HashMap::new())
}

/// `M(1)` in degrees `0..=N` with basis `h(-k_1)...h(-k_j) 1` indexed by partitions.
#[derive(Clone, Debug)]
pub struct FockTruncation {
    truncation: usize,
    bases: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

/// A homogeneous vector of the truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector {
    pub degree: usize,
    pub coeffs: SparseVec,
}

pub fn build_m1(n: usize) -> FockTruncation {
    let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(partitions).collect();
    let index = bases.iter().map(|b| b.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect()).collect();
    FockTruncation { truncation: n, bases, index }
}

impl FockTruncation {
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.bases[degree].len()
    }

    pub fn partition(&self, degree: usize, k: usize) -> &[usize] {
        &self.bases[degree][k]
    }

    pub fn basis_vector(&self, degree: usize, k: usize) -> FockVector {
        FockVector { degree, coeffs: SparseVec::unit(k) }
    }

    pub fn vacuum(&self) -> FockVector {
        self.basis_vector(0, 0)
    }

    /// `h(m) v`, or `None` when the result falls outside the truncation.
    pub fn apply_h(&self, m: i64, v: &FockVector) -> Option<FockVector> {
        let target = v.degree as i64 - m;
        if target < 0 || target > self.truncation as i64 {
            return None;
        }
        let target = target as usize;
        let mut acc = Accumulator::new();
        for (k, c) in v.coeffs.iter() {
            let parts = &self.bases[v.degree][k];
            if m < 0 {
                let mut next = parts.clone();
                next.push((-m) as usize);
                next.sort_unstable_by(|a, b| b.cmp(a));
                acc.add(self.index[target][&next], c);
            } else if m > 0 {
                // [h(m), h(-m)] = m, so each part equal to m contributes m
                let mult = parts.iter().filter(|&&p| p as i64 == m).count() as i64;
                if mult > 0 {
                    let mut next = parts.clone();
                    let pos = next.iter().position(|&p| p as i64 == m).unwrap();
                    next.remove(pos);
                    acc.add(self.index[target][&next], &(c * &Scalar::int(m * mult)));
                }
            }
        }
        Some(FockVector { degree: target, coeffs: acc.finish() })
    }

    /// `h(m)h(n)w - h(n)h(m)w = m delta_{m+n,0} w` on every basis vector for
    /// which both sides stay in the truncation; returns the first failure.
    pub fn check_commutator(&self, max_mode: i64) -> Result<(), (i64, i64, usize, usize)> {
        for m in -max_mode..=max_mode {
            for n in -max_mode..=max_mode {
                for d in 0..=self.truncation {
                    for k in 0..self.dim(d) {
                        let w = self.basis_vector(d, k);
                        let paths = (
                            self.apply_h(n, &w).and_then(|x| self.apply_h(m, &x)),
                            self.apply_h(m, &w).and_then(|x| self.apply_h(n, &x)),
                        );
                        let (Some(a), Some(b)) = paths else { continue };
                        let mut diff = a.coeffs.add_scaled(&Scalar::int(-1), &b.coeffs);
                        if m + n == 0 {
                            diff = diff.add_scaled(&Scalar::int(-m), &w.coeffs);
                        }
                        if !diff.is_zero() {
                            return Err((m, n, d, k));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `u_n v` from the normally ordered field of `u`:
    /// `Y(h(-k_1)...h(-k_j) 1, z) = :prod_i d^{k_i - 1} h(z) / (k_i - 1)!:`.
    pub fn product(&self, u: &FockVector, n: i64, v: &FockVector) -> Option<FockVector> {
        let target = u.degree as i64 + v.degree as i64 - n - 1;
        if target < 0 || target > self.truncation as i64 {
            return None;
        }
        let mut acc = Accumulator::new();
        for (ku, cu) in u.coeffs.iter() {
            let parts = self.bases[u.degree][ku].clone();
            for (kv, cv) in v.coeffs.iter() {
                let w = self.basis_vector(v.degree, kv);
                let mut modes = Vec::new();
                self.normal_ordered(&parts, n + 1, v.degree as i64, &mut modes, &Scalar::one(), &w, &mut acc, &(cu * cv));
            }
        }
        Some(FockVector { degree: target as usize, coeffs: acc.finish() })
    }

    /// Sums over mode tuples `(m_1, ..., m_j)` with `sum (m_i + k_i) = total`,
    /// weighted by `prod C(-m_i - 1, k_i - 1)`.
    #[allow(clippy::too_many_arguments)]
    fn normal_ordered(
        &self,
        parts: &[usize],
        total: i64,
        top: i64,
        modes: &mut Vec<i64>,
        weight: &Scalar,
        w: &FockVector,
        acc: &mut Accumulator,
        scale: &Scalar,
    ) {
        let i = modes.len();
        if i == parts.len() {
            let sum: i64 = modes.iter().zip(parts).map(|(m, k)| m + *k as i64).sum();
            if sum != total {
                return;
            }
            let mut ordered = modes.clone();
            // annihilators act first
            ordered.sort_unstable_by(|a, b| b.cmp(a));
            let mut state = w.clone();
            for &m in &ordered {
                match self.apply_h(m, &state) {
                    Some(next) => state = next,
                    None => return,
                }
            }
            acc.add_vec(&(weight * scale), &state.coeffs);
            return;
        }
        let k = parts[i] as i64;
        for m in -(self.truncation as i64)..=top {
            if m == 0 {
                continue;
            }
            let c = crate::va::graded::binomial(-m - 1, k - 1);
            if c.is_zero() {
                continue;
            }
            modes.push(m);
            self.normal_ordered(parts, total, top, modes, &(weight * &c), w, acc, scale);
            modes.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Dimensions and bijectivity checked; intertwining skipped.
    DimensionsOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub partitions: usize,
    pub quotient_dim: usize,
    pub certificate: Certificate,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VAHomomorphismReport {
    pub truncation: usize,
    /// Residue of `pairing(b, b)` for the generator `b` of `B / A del(A)`.
    pub residue: Scalar,
    /// `s` with `b_bar = s b`, when `residue` is a square.
    pub rescale_factor: Option<Scalar>,
    pub degrees: Vec<DegreeReport>,
    pub vacuum_preserved: bool,
    pub samples: usize,
    pub failures: Vec<String>,
    pub skipped: Option<String>,
    pub verdict: Verdict,
}

/// Index of the first standard basis vector of `B` outside `A del(A)`, when
/// that quotient is one-dimensional.
fn quotient_generator(bundle: &VertexAlgebroid) -> Result<DenseVec, HeisenbergError> {
    let image = bundle.a_del_a();
    let codim = bundle.b_dim() - image.len();
    if codim != 1 {
        return Err(HeisenbergError::NotHeisenbergFamily(format!("B / A del(A) has dimension {codim}")));
    }
    (0..bundle.b_dim())
        .map(|k| bundle.b_basis(k))
        .find(|b| {
            let mut trial = image.clone();
            trial.push(b.clone());
            linalg::rank(&trial) > image.len()
        })
        .ok_or_else(|| HeisenbergError::NotHeisenbergFamily("B equals A del(A)".to_string()))
}

/// Builds the radical quotient of `V_B` in degrees `0..=n` and compares it with
/// `M(1)` through `h(-k_1)...h(-k_j) 1 -> b_bar(-k_1)...b_bar(-k_j) 1`.
pub fn heisenberg_check(bundle: &VertexAlgebroid, n: usize) -> Result<VAHomomorphismReport, HeisenbergError> {
    let b = quotient_generator(bundle)?;
    let residue = bundle.pairing_residue(&b).map_err(VaError::from)?;
    if residue.is_zero() {
        return Err(HeisenbergError::NotHeisenbergFamily("the residue of pairing(b, b) is 0".to_string()));
    }
    let va = build_vb(bundle, n, n.max(crate::va::DEFAULT_CAP))?;
    let quotient = va.degree0_ideal_quotient(&bundle.algebra().radical())?;
    let rescale_factor = residue.sqrt_if_square().map(|r| Scalar::one() / r);
    let b_bar = match &rescale_factor {
        Some(s) => linalg::scale(s, &b),
        None => b.clone(),
    };
    let fock = build_m1(n);
    let images = fock_images(&fock, &quotient, &b_bar)?;

    let mut degrees = Vec::new();
    for d in 0..=n {
        let mut ech = Echelon::new();
        for v in &images[d] {
            ech.insert(&quotient.reduce(v).coeffs);
        }
        let quotient_dim = quotient.dim(d);
        let partitions = fock.dim(d);
        degrees.push(DegreeReport {
            degree: d,
            partitions,
            quotient_dim,
            certificate: quotient.character()[d].certificate,
            bijective: quotient_dim == partitions && ech.rank() == partitions,
        });
    }
    let vacuum_preserved = quotient.equal(&images[0][0], &quotient.vacuum());

    let mut samples = 0;
    let mut failures = Vec::new();
    let skipped = if rescale_factor.is_none() {
        Some(format!("the residue {residue} is not a square in Q(i); intertwining not checked"))
    } else {
        for du in 0..=n.min(2) {
            for dv in 0..=n.min(2) {
                for ku in 0..fock.dim(du) {
                    for kv in 0..fock.dim(dv) {
                        let (u, v) = (fock.basis_vector(du, ku), fock.basis_vector(dv, kv));
                        let top = du as i64 + dv as i64 - 1;
                        for index in (top - n as i64)..=top {
                            let lhs = fock.product(&u, index, &v).expect("in the window");
                            let lhs = map_vector(&images, &lhs);
                            let rhs = quotient.product(&images[du][ku], index, &images[dv][kv])?;
                            samples += 1;
                            if !quotient.equal(&lhs, &rhs) {
                                failures.push(format!(
                                    "f(u_{index} v) != f(u)_{index} f(v) for u = {:?}, v = {:?}",
                                    fock.partition(du, ku),
                                    fock.partition(dv, kv)
                                ));
                            }
                        }
                    }
                }
            }
        }
        None
    };
    let flags = vacuum_preserved
        && degrees.iter().all(|d| d.bijective && d.certificate == Certificate::Exact)
        && failures.is_empty();
    let verdict = match (flags, &skipped) {
        (false, _) => Verdict::Fail,
        (true, None) => Verdict::Pass,
        (true, Some(_)) => Verdict::DimensionsOnly,
    };
    Ok(VAHomomorphismReport {
        truncation: n,
        residue,
        rescale_factor,
        degrees,
        vacuum_preserved,
        samples,
        failures,
        skipped,
        verdict,
    })
}

/// `f` on every partition basis vector.
fn fock_images(fock: &FockTruncation, quotient: &GradedVA, b_bar: &[Scalar]) -> Result<Vec<Vec<VaVector>>, VaError> {
    let lie = quotient.loop_algebra();
    let mut out = Vec::new();
    for d in 0..=fock.truncation() {
        let mut row = Vec::new();
        for k in 0..fock.dim(d) {
            let mut state = quotient.vacuum();
            for &part in fock.partition(d, k).iter().rev() {
                state = quotient.apply(&lie.b_mode(b_bar, -(part as i64)), &state)?;
            }
            row.push(state);
        }
        out.push(row);
    }
    Ok(out)
}

fn map_vector(images: &[Vec<VaVector>], v: &FockVector) -> VaVector {
    let mut out = VaVector::zero(v.degree);
    for (k, c) in v.coeffs.iter() {
        out = out.add_scaled(c, &images[v.degree][k]);
    }
    out
}
