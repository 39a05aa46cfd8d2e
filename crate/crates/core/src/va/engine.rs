//! Relation closure inside a truncated induced module and the lower bound
//! from the maximal submodule meeting degree 0 trivially.

use std::collections::VecDeque;

use num_traits::One;

use super::loop_algebra::ModeId;
use super::pbw::InducedModule;
use super::VaError;
use crate::linalg::{Accumulator, DenseVec, Echelon, SparseVec};
use crate::scalar::Scalar;

fn sub(x: &SparseVec, y: &SparseVec) -> SparseVec {
    x.add_scaled(&Scalar::int(-1), y)
}

/// `v_n u` for `v` in `E` and every ground basis vector `u`, sorted by degree.
///
/// `E` is spanned by `1_A - 1`, `a(-1)a' - a*a'` and `a(-1)b - a.b`; their
/// modes on `u` are the normally ordered sums
/// `sum_s a(-1-s) x(n+s) u`, all other terms killing `u`.
pub(crate) fn w_relations(module: &InducedModule) -> Result<Vec<Vec<SparseVec>>, VaError> {
    let lie = module.lie();
    let bundle = lie.bundle();
    let (na, nb) = (bundle.a_dim(), bundle.b_dim());
    let w = module.window();
    let mut out = vec![Vec::new(); w + 1];
    for u in 0..module.ground().dim() {
        let base = module.ground_vector(u);
        let one = lie.a_mode(&bundle.algebra().one(), -1);
        out[0].push(sub(&module.apply(&one, 0, &base)?, &base));
        for d in 0..=w {
            let di = d as i64;
            for i in 0..na {
                for j in i..na {
                    let n = -di - 1;
                    let mut acc = Accumulator::new();
                    for s in 0..=di {
                        let inner = module.apply(&lie.a_mode(&bundle.a_basis(j), n + s), 0, &base)?;
                        let outer = module.apply(&lie.a_mode(&bundle.a_basis(i), -1 - s), (d as i64 - s) as usize, &inner)?;
                        acc.add_vec(&Scalar::one(), &outer);
                    }
                    let prod = bundle.mul(&bundle.a_basis(i), &bundle.a_basis(j));
                    acc.add_vec(&Scalar::int(-1), &module.apply(&lie.a_mode(&prod, n), 0, &base)?);
                    out[d].push(acc.finish());
                }
                for j in 0..nb {
                    let n = -di;
                    let mut acc = Accumulator::new();
                    for s in 0..=di {
                        let inner = module.apply(&lie.b_mode(&bundle.b_basis(j), n + s), 0, &base)?;
                        let outer = module.apply(&lie.a_mode(&bundle.a_basis(i), -1 - s), (d as i64 - s) as usize, &inner)?;
                        acc.add_vec(&Scalar::one(), &outer);
                    }
                    let prod = bundle.act(&bundle.a_basis(i), &bundle.b_basis(j));
                    acc.add_vec(&Scalar::int(-1), &module.apply(&lie.b_mode(&prod, n), 0, &base)?);
                    out[d].push(acc.finish());
                }
            }
        }
    }
    Ok(out)
}

/// `s(-1-k) 1` for each generator `s` and every degree `k` in the window:
/// the states `D^k s / k!` generating the ideal of `s`.
pub(crate) fn ideal_seeds(module: &InducedModule, generators: &[DenseVec]) -> Result<Vec<Vec<SparseVec>>, VaError> {
    let vacuum = module.vacuum().ok_or(VaError::NoVacuum)?;
    let base = module.ground_vector(vacuum);
    let mut out = vec![Vec::new(); module.window() + 1];
    for s in generators {
        for (k, slot) in out.iter_mut().enumerate() {
            slot.push(module.apply(&module.lie().a_mode(s, -1 - k as i64), 0, &base)?);
        }
    }
    Ok(out)
}

fn operators(module: &InducedModule, d: usize) -> Vec<ModeId> {
    let w = module.window() as i64;
    let d = d as i64;
    (-d..=w - d).flat_map(|k| module.lie().basis(k)).collect()
}

/// Smallest subspace containing the seeds and stable under every mode (and
/// the translation, if requested) with source and target inside the window.
pub(crate) fn close(module: &InducedModule, seeds: Vec<Vec<SparseVec>>, translation: bool) -> Result<Vec<Echelon>, VaError> {
    let w = module.window();
    let mut rel = vec![Echelon::new(); w + 1];
    let mut queue: VecDeque<(usize, SparseVec)> = VecDeque::new();
    let push = |rel: &mut Vec<Echelon>, queue: &mut VecDeque<(usize, SparseVec)>, d: usize, v: SparseVec| {
        let r = rel[d].reduce(&v);
        if !r.is_zero() {
            rel[d].insert(&r);
            queue.push_back((d, r));
        }
    };
    for (d, vs) in seeds.into_iter().enumerate() {
        for v in vs {
            push(&mut rel, &mut queue, d, v);
        }
    }
    while let Some((d, v)) = queue.pop_front() {
        for id in operators(module, d) {
            let image = module.apply(&module.lie().unit(id), d, &v)?;
            push(&mut rel, &mut queue, (d as i64 + id.degree) as usize, image);
        }
        if translation && d < w {
            let image = module.translation(d, &v)?;
            push(&mut rel, &mut queue, d + 1, image);
        }
    }
    Ok(rel)
}

/// First relation basis vector whose image under an in-window mode leaves
/// the relation space, as `(degree, row, mode)`.
pub(crate) fn fixpoint_violation(module: &InducedModule, rel: &[Echelon]) -> Result<Option<(usize, usize, ModeId)>, VaError> {
    for (d, ech) in rel.iter().enumerate() {
        for (r, row) in ech.rows().iter().enumerate() {
            for id in operators(module, d) {
                let image = module.apply(&module.lie().unit(id), d, row)?;
                if !rel[(d as i64 + id.degree) as usize].contains(&image) {
                    return Ok(Some((d, r, id)));
                }
            }
        }
    }
    Ok(None)
}

/// Dimensions of `M / J` in degrees `0..=max`, where `J` is the largest
/// submodule meeting degree 0 trivially, computed recursively: `w` lies in `J`
/// iff every lowering basis mode sends it into `J`. The relation space `rel`
/// must be stable under lowering modes and vanish in degree 0; it is used
/// only to shrink the domain.
pub(crate) fn simple_quotient_dims(module: &InducedModule, rel: &[Echelon], max: usize) -> Result<Vec<usize>, VaError> {
    let nb = module.lie().bundle().b_dim();
    let mut j: Vec<Echelon> = Vec::with_capacity(max + 1);
    j.push(rel[0].clone());
    let mut dims = vec![module.dim(0) - rel[0].rank()];
    for d in 1..=max {
        let reps: Vec<usize> = (0..module.dim(d)).filter(|&k| !rel[d].is_pivot(k)).collect();
        let mut offsets = Vec::new();
        let mut total = 0;
        for k in 1..=d {
            for _ in 0..nb {
                offsets.push(total);
                total += module.dim(d - k);
            }
        }
        let mut ech = Echelon::new();
        for (pos, &rep) in reps.iter().enumerate() {
            let mut acc = Accumulator::new();
            let mut block = 0;
            for k in 1..=d {
                for c in 0..nb {
                    let image = module.act_id(ModeId { degree: -(k as i64), index: c }, d, rep)?;
                    let reduced = j[d - k].reduce(&image);
                    for (i, x) in reduced.iter() {
                        acc.add(offsets[block] + i, x);
                    }
                    block += 1;
                }
            }
            acc.add(total + pos, &Scalar::one());
            ech.insert(&acc.finish());
        }
        let mut jd = rel[d].clone();
        let mut rank = 0;
        for row in ech.rows() {
            let (lead, _) = row.leading().expect("nonzero row");
            if lead < total {
                rank += 1;
            } else {
                let kernel = SparseVec::from_pairs(row.iter().map(|(i, x)| (reps[i - total], x.clone())));
                jd.insert(&kernel);
            }
        }
        dims.push(rank);
        j.push(jd);
    }
    Ok(dims)
}
