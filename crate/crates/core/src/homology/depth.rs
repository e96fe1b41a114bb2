use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::{FaceLattice, FieldChoice, MAX_COMPLEX_VERTICES};
use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::polymatroid::{analytic_spread, is_polymatroidal};
use crate::primes::tail_start;
use crate::staircase::{BoxShape, MembershipTable};

const CHUNK: usize = 1 << 14;

/// `pd(S/I)` without materializing the Betti table.
///
/// Scans every point `b` of the staircase box, skips upper Koszul complexes
/// that are cones or too small to beat the best homological degree found so
/// far, and computes only the top homology groups of the rest.
pub fn projective_dimension(ideal: &MonomialIdeal, field: FieldChoice) -> Result<usize> {
    if ideal.is_unit() {
        return Err(Error::input("depth of the zero module (unit ideal) is undefined"));
    }
    if ideal.is_zero() {
        return Ok(0);
    }
    let n = ideal.n();
    let table = MembershipTable::new(ideal)?;
    let shape = table.shape().clone();
    // β_i(I) ≠ 0 forces i <= n - 1
    let ceiling = n - 1;
    let best = AtomicUsize::new(0);
    let chunks = shape.size().div_ceil(CHUNK);
    (0..chunks).into_par_iter().try_for_each(|c| {
        if best.load(Ordering::Relaxed) >= ceiling {
            return Ok(());
        }
        let lo = c * CHUNK;
        let hi = (lo + CHUNK).min(shape.size());
        scan_chunk(&table, &shape, lo, hi, field, &best, ceiling)
    })?;
    Ok(best.load(Ordering::Relaxed) + 1)
}

fn decode(shape: &BoxShape, mut idx: usize) -> Vec<u32> {
    shape
        .bounds()
        .iter()
        .map(|&b| {
            let r = b as usize + 1;
            let c = (idx % r) as u32;
            idx /= r;
            c
        })
        .collect()
}

fn scan_chunk(
    table: &MembershipTable,
    shape: &BoxShape,
    lo: usize,
    hi: usize,
    field: FieldChoice,
    best: &AtomicUsize,
    ceiling: usize,
) -> Result<()> {
    let strides = shape.strides();
    let bounds = shape.bounds();
    let n = bounds.len();
    let mut coords = decode(shape, lo);
    let mut offsets: Vec<usize> = Vec::new();
    let mut is_face: Vec<bool> = Vec::new();
    for idx in lo..hi {
        if idx > lo {
            for i in 0..n {
                if coords[i] < bounds[i] {
                    coords[i] += 1;
                    break;
                }
                coords[i] = 0;
            }
        }
        if !table.contains_index(idx) {
            continue;
        }
        let current = best.load(Ordering::Relaxed);
        if current >= ceiling {
            return Ok(());
        }
        let support: Vec<usize> = (0..n).filter(|&i| coords[i] > 0).collect();
        let s = support.len();
        if s <= current {
            continue;
        }
        if s > MAX_COMPLEX_VERTICES {
            return Err(Error::capability(format!(
                "upper Koszul complex on {s} vertices exceeds the limit of {MAX_COMPLEX_VERTICES}"
            )));
        }
        let full = 1usize << s;
        offsets.clear();
        offsets.resize(full, 0);
        is_face.clear();
        is_face.resize(full, false);
        let mut top = 0usize;
        for sub in 0..full {
            if sub > 0 {
                let low = sub.trailing_zeros() as usize;
                offsets[sub] = offsets[sub & (sub - 1)] + strides[support[low]];
            }
            if table.contains_index(idx - offsets[sub]) {
                is_face[sub] = true;
                top = top.max(sub.count_ones() as usize);
            }
        }
        if top <= current {
            continue;
        }
        // a cone apex v: every face W has W ∪ {v} as a face
        let is_cone = (0..s).any(|v| {
            let bit = 1usize << v;
            (0..full).all(|sub| !is_face[sub] || is_face[sub | bit])
        });
        if is_cone {
            continue;
        }
        let faces = FaceLattice::from_faces((0..full).filter(|&m| is_face[m]).map(|m| m as u64));
        for size in (current + 1..=top).rev() {
            if faces.reduced_betti(size, field) > 0 {
                best.fetch_max(size, Ordering::Relaxed);
                break;
            }
        }
    }
    Ok(())
}

/// `depth(S/I) = n - pd(S/I)`.
pub fn depth(ideal: &MonomialIdeal, field: FieldChoice) -> Result<usize> {
    Ok(ideal.n() - projective_dimension(ideal, field)?)
}

/// `depth S/I^k` for `k = 1..=horizon`.
pub fn depth_function(ideal: &MonomialIdeal, horizon: u32, field: FieldChoice) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(horizon as usize);
    let mut power = ideal.clone();
    for k in 1..=horizon {
        if k > 1 {
            power = power.multiply(ideal);
        }
        out.push(depth(&power, field)?);
    }
    Ok(out)
}

/// Depth function with its observed stability index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthStability {
    pub field: FieldChoice,
    pub horizon: u32,
    pub depth_function: Vec<usize>,
    /// Least `k` such that `depth S/I^j` is constant for `k <= j <= K`.
    pub dstab: u32,
    pub certified: bool,
    pub certificate: String,
}

/// Observe the depth function up to `horizon` and its stability index.
///
/// With `certify_polymatroidal`, a polymatroidal ideal is certified when the
/// horizon reaches `ℓ(I) - 1` and the depth there equals the limit value
/// `n - ℓ(I)`.
pub fn dstab(ideal: &MonomialIdeal, horizon: u32, field: FieldChoice, certify_polymatroidal: bool) -> Result<DepthStability> {
    if horizon == 0 {
        return Err(Error::input("horizon must be at least 1"));
    }
    let values = depth_function(ideal, horizon, field)?;
    depth_stability(ideal, values, field, certify_polymatroidal)
}

/// Stability data for an already computed depth function (entry `k - 1` is
/// `depth S/I^k`).
pub fn depth_stability(
    ideal: &MonomialIdeal,
    values: Vec<usize>,
    field: FieldChoice,
    certify_polymatroidal: bool,
) -> Result<DepthStability> {
    let horizon = values.len() as u32;
    if horizon == 0 {
        return Err(Error::input("horizon must be at least 1"));
    }
    let index = tail_start(&values);
    let mut certified = false;
    let mut certificate = format!("within horizon {horizon}");
    if certify_polymatroidal && is_polymatroidal(ideal) {
        let spread = analytic_spread(ideal)?;
        let at = spread.saturating_sub(1).max(1);
        let limit = ideal.n() - spread;
        if horizon as usize >= at {
            if values[at - 1] == limit {
                certified = true;
                certificate = format!(
                    "polymatroidal stability bound: depth S/I^k = n - analytic spread = {limit} for k >= {at}"
                );
            } else {
                certificate = format!(
                    "within horizon {horizon}; depth at power {at} is {} but the limit value is {limit}",
                    values[at - 1]
                );
            }
        } else {
            certificate = format!("within horizon {horizon}; certification needs horizon >= {at}");
        }
    }
    Ok(DepthStability {
        field,
        horizon,
        depth_function: values,
        dstab: index,
        certified,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;
    use crate::homology::betti_table;
    use crate::monomial::Monomial;

    #[test]
    fn probe_matches_table_on_small_ideals() {
        let ideals = vec![
            MonomialIdeal::maximal(3),
            SimpleGraph::cycle(5).unwrap().edge_ideal(),
            SimpleGraph::cycle(4).unwrap().edge_ideal().power(2),
            MonomialIdeal::from_exponents(3, vec![vec![2, 1, 0], vec![0, 2, 1], vec![1, 0, 2]]).unwrap(),
        ];
        for i in ideals {
            let t = betti_table(&i, FieldChoice::Rationals).unwrap();
            assert_eq!(depth(&i, FieldChoice::Rationals).unwrap(), t.depth(), "{i}");
        }
    }

    #[test]
    fn principal_depth_is_constant() {
        let i = MonomialIdeal::principal(Monomial::var(3, 0));
        let d = dstab(&i, 3, FieldChoice::Rationals, true).unwrap();
        assert_eq!(d.depth_function, vec![2, 2, 2]);
        assert_eq!(d.dstab, 1);
        assert!(d.certified);
    }

    #[test]
    fn zero_and_unit_ideals() {
        assert_eq!(depth(&MonomialIdeal::zero(3), FieldChoice::Rationals).unwrap(), 3);
        assert!(depth(&MonomialIdeal::unit(3), FieldChoice::Rationals).is_err());
    }
}
