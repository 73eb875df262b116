//! Weyl reflections on dimension vectors and positive roots of Dynkin quivers.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::quiver::{
    dynkin::dynkin_quiver, require_finite_type, symmetrized_matrix, tits_form, tits_form_signed,
    DimVector, DynkinType, Orientation, Quiver,
};

/// Positive roots of a finite-type quiver, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    quiver: Quiver,
    roots: Vec<DimVector>,
}

impl RootSet {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn roots(&self) -> &[DimVector] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, d: &DimVector) -> bool {
        self.roots.binary_search(d).is_ok()
    }
}

/// `s_i(d) = d - (d^T B e_i) e_i` with `B` the symmetrized Tits matrix.
pub fn simple_reflection(q: &Quiver, i: usize, d: &[i64]) -> Result<Vec<i64>> {
    if i >= q.vertex_count() || d.len() != q.vertex_count() {
        return Err(Error::ShapeMismatch(format!(
            "reflection at {i} of a length-{} vector on {} vertices",
            d.len(),
            q.vertex_count()
        )));
    }
    if q.has_loop_at(i) {
        return Err(Error::LoopAtVertex(i));
    }
    Ok(reflect_with(&symmetrized_matrix(q), i, d))
}

fn reflect_with(b: &[Vec<i64>], i: usize, d: &[i64]) -> Vec<i64> {
    let pairing: i64 = d.iter().zip(&b[i]).map(|(x, y)| x * y).sum();
    let mut out = d.to_vec();
    out[i] -= pairing;
    out
}

/// Closes the simple roots under all simple reflections and keeps the
/// non-negative members. Negative intermediate vectors stay in the frontier.
pub fn positive_roots(q: &Quiver) -> Result<RootSet> {
    require_finite_type(q)?;
    let n = q.vertex_count();
    let b = symmetrized_matrix(q);
    // a root system of rank n <= 8 has at most 240 roots; anything far beyond
    // that means the finite-type check was wrong
    let cap = 4 * n * n * n + 256;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let e = DimVector::unit(n, i).to_signed();
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let w = reflect_with(&b, i, &v);
            if seen.insert(w.clone()) {
                if seen.len() > cap {
                    return Err(Error::Internal(format!(
                        "reflection closure exceeded {cap} vectors"
                    )));
                }
                queue.push_back(w);
            }
        }
    }
    let mut roots = Vec::new();
    for v in seen {
        if let Some(d) = DimVector::from_signed(&v) {
            if tits_form(q, &d)? != 1 {
                return Err(Error::Internal(format!("closure produced non-root {d}")));
            }
            roots.push(d);
        }
    }
    roots.sort();
    Ok(RootSet {
        quiver: q.clone(),
        roots,
    })
}

/// Every nonzero `d` with coordinates in `0..=bound` and `q(d) = 1`, by
/// exhaustive scan of the box. Independent of the reflection machinery.
pub fn box_scan_roots(q: &Quiver, bound: usize, execution: Execution) -> Vec<DimVector> {
    let n = q.vertex_count();
    let base = bound + 1;
    let total = base.pow(n as u32);
    const CHUNK: usize = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let found: Vec<Vec<DimVector>> = execution.map_range(chunks, |c| {
        let mut out = Vec::new();
        let mut digits = vec![0i64; n];
        for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
            let mut rest = idx;
            for d in digits.iter_mut().rev() {
                *d = (rest % base) as i64;
                rest /= base;
            }
            if idx != 0 && tits_form_signed(q, &digits).expect("sized") == 1 {
                out.push(DimVector::from_signed(&digits).expect("non-negative"));
            }
        }
        out
    });
    let mut roots: Vec<DimVector> = found.into_iter().flatten().collect();
    roots.sort();
    roots
}

/// Number of positive roots for every Dynkin type of rank at most `max_rank`,
/// each computed by reflection closure on the linear orientation.
pub fn root_count_table(max_rank: usize) -> Result<Vec<(DynkinType, usize)>> {
    if max_rank > 8 {
        return Err(Error::InvalidQuiver(format!(
            "root tables are provided up to rank 8, not {max_rank}"
        )));
    }
    DynkinType::all_up_to(max_rank)
        .into_iter()
        .map(|t| {
            Ok((
                t,
                positive_roots(&dynkin_quiver(t, Orientation::Linear))?.len(),
            ))
        })
        .collect()
}

/// Distinct dimension vectors as a set, for orientation comparisons.
pub fn root_set_of(roots: &RootSet) -> BTreeSet<DimVector> {
    roots.roots.iter().cloned().collect()
}
