//! Simplicial complexes, reduced homology over exact fields, multigraded Betti
//! numbers and depth.

mod betti;
mod depth;

pub use betti::{betti_table, has_linear_resolution, lcm_lattice, upper_koszul, BettiEntry, BettiTable, MAX_BETTI_GENERATORS};
pub use depth::{depth, depth_function, depth_stability, dstab, projective_dimension, DepthStability};
pub use crate::linalg::FieldChoice;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank_over, IntMatrix};

/// Vertex-count limit for homology computations (faces are enumerated).
pub const MAX_COMPLEX_VERTICES: usize = 20;

/// A simplicial complex on vertices `0..n`, stored by its facets as bit masks.
///
/// The void complex has no faces at all; the complex `{∅}` has the single
/// facet `∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<u64>,
}

impl SimplicialComplex {
    /// Complex generated by the given faces (vertex index lists).
    pub fn new(n: usize, faces: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        if n > MAX_COMPLEX_VERTICES {
            return Err(Error::capability(format!(
                "simplicial complexes limited to {MAX_COMPLEX_VERTICES} vertices"
            )));
        }
        let mut masks = Vec::new();
        for f in faces {
            let mut m = 0u64;
            for v in f {
                if v >= n {
                    return Err(Error::input(format!("vertex {} out of range", v + 1)));
                }
                m |= 1 << v;
            }
            masks.push(m);
        }
        Ok(Self::from_masks(n, masks))
    }

    pub(crate) fn from_masks(n: usize, mut masks: Vec<u64>) -> Self {
        masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
        masks.dedup();
        let mut facets: Vec<u64> = Vec::new();
        for m in masks {
            if !facets.iter().any(|&f| f & m == m) {
                facets.push(m);
            }
        }
        facets.sort_by_key(|m| (m.count_ones(), *m));
        SimplicialComplex { n, facets }
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: Vec::new() }
    }

    pub fn simplex(n: usize) -> Self {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        SimplicialComplex { n, facets: vec![full] }
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&m| mask_vertices(m)).collect()
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        let m = face.iter().fold(0u64, |m, &v| m | 1 << v);
        self.facets.iter().any(|&f| f & m == m)
    }

    /// All faces grouped by vertex count.
    pub(crate) fn face_lattice(&self) -> FaceLattice {
        let mut all = std::collections::BTreeSet::new();
        for &f in &self.facets {
            // enumerate submasks of f
            let mut sub = f;
            loop {
                all.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        FaceLattice::from_faces(all)
    }

    pub fn reduced_homology(&self, field: FieldChoice) -> ReducedHomology {
        self.face_lattice().reduced_homology(field)
    }
}

fn mask_vertices(m: u64) -> Vec<usize> {
    (0..64).filter(|i| m >> i & 1 == 1).collect()
}

/// Faces of a complex grouped by size, each group sorted.
pub(crate) struct FaceLattice {
    by_size: Vec<Vec<u64>>,
}

impl FaceLattice {
    pub(crate) fn from_faces(faces: impl IntoIterator<Item = u64>) -> Self {
        let mut by_size: Vec<Vec<u64>> = Vec::new();
        for f in faces {
            let s = f.count_ones() as usize;
            if by_size.len() <= s {
                by_size.resize(s + 1, Vec::new());
            }
            by_size[s].push(f);
        }
        for g in &mut by_size {
            g.sort_unstable();
            g.dedup();
        }
        FaceLattice { by_size }
    }

    /// Largest face size, or `None` for the void complex.
    pub(crate) fn max_face_size(&self) -> Option<usize> {
        (0..self.by_size.len()).rev().find(|&s| !self.by_size[s].is_empty())
    }

    fn count(&self, s: usize) -> usize {
        self.by_size.get(s).map_or(0, Vec::len)
    }

    /// Matrix of the boundary from faces of size `s` to faces of size `s - 1`.
    fn boundary(&self, s: usize) -> IntMatrix {
        let rows = &self.by_size[s - 1];
        let cols = &self.by_size[s];
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (c, &face) in cols.iter().enumerate() {
            let mut sign = 1;
            let mut rest = face;
            while rest != 0 {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                let r = rows.binary_search(&(face & !(1 << v))).expect("complex is closed under subsets");
                m.set(r, c, sign);
                sign = -sign;
            }
        }
        m
    }

    pub(crate) fn boundary_rank(&self, s: usize, field: FieldChoice) -> usize {
        if s == 0 || self.count(s) == 0 || self.count(s - 1) == 0 {
            return 0;
        }
        rank_over(&self.boundary(s), field)
    }

    /// `dim H̃_{s-1}`.
    pub(crate) fn reduced_betti(&self, s: usize, field: FieldChoice) -> usize {
        self.count(s) - self.boundary_rank(s, field) - self.boundary_rank(s + 1, field)
    }

    pub(crate) fn reduced_homology(&self, field: FieldChoice) -> ReducedHomology {
        let Some(top) = self.max_face_size() else {
            return ReducedHomology { ranks: Vec::new() };
        };
        let ranks: Vec<usize> = (0..=top + 1).map(|s| self.boundary_rank(s, field)).collect();
        let mut betti: Vec<usize> = (0..=top)
            .map(|s| self.count(s) - ranks[s] - ranks[s + 1])
            .collect();
        while betti.last() == Some(&0) {
            betti.pop();
        }
        ReducedHomology { ranks: betti }
    }
}

/// Ranks of reduced homology; entry `k` is `dim H̃_{k-1}`, so entry 0 is the
/// `(-1)`-dimensional group. Trailing zeros are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct ReducedHomology {
    pub ranks: Vec<usize>,
}

impl ReducedHomology {
    /// `dim H̃_d` for `d >= -1`.
    pub fn rank(&self, d: isize) -> usize {
        usize::try_from(d + 1).ok().and_then(|k| self.ranks.get(k).copied()).unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }
}

/// Reduced homology ranks of `complex` over `field`.
pub fn reduced_homology_ranks(complex: &SimplicialComplex, field: FieldChoice) -> ReducedHomology {
    complex.reduced_homology(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hollow_triangle_has_one_loop() {
        let c = SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let h = c.reduced_homology(FieldChoice::Rationals);
        assert_eq!(h.rank(1), 1);
        assert_eq!(h.rank(0), 0);
    }

    #[test]
    fn simplex_is_acyclic() {
        for n in 1..6 {
            assert!(SimplicialComplex::simplex(n).reduced_homology(FieldChoice::Rationals).is_acyclic());
        }
    }

    #[test]
    fn empty_face_complex_has_minus_one_homology() {
        let c = SimplicialComplex::from_masks(3, vec![0]);
        assert_eq!(c.reduced_homology(FieldChoice::Rationals).rank(-1), 1);
        assert!(SimplicialComplex::void(3).reduced_homology(FieldChoice::Rationals).is_acyclic());
    }

    #[test]
    fn two_points_have_reduced_zero_homology() {
        let c = SimplicialComplex::new(2, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(c.reduced_homology(FieldChoice::Prime(3)).ranks, vec![0, 1]);
    }

    #[test]
    fn facets_are_maximal() {
        let c = SimplicialComplex::new(4, vec![vec![0, 1, 2], vec![0, 1], vec![3]]).unwrap();
        assert_eq!(c.facets(), vec![vec![3], vec![0, 1, 2]]);
        assert!(c.contains_face(&[1, 2]));
        assert!(!c.contains_face(&[2, 3]));
    }
}
