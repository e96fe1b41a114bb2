//! Dense membership tables over exponent boxes.
//!
//! A monomial ideal with `lcm(G(I)) = x^L` is determined by its staircase inside
//! the box `[0, L]`: for any exponent vector `a`, `x^a ∈ I` iff `x^min(a, L) ∈ I`.
//! The tables here store that staircase as a bitmap so that membership becomes
//! an index computation.

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Largest number of lattice points a box may contain.
pub const MAX_BOX_POINTS: usize = 1 << 28;

#[derive(Clone, Debug)]
pub(crate) struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub(crate) fn new(len: usize) -> Self {
        Bitset { words: vec![0; len.div_ceil(64)] }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }
}

/// The lattice points `0 <= a <= bound`, indexed in mixed radix with `x1`
/// varying fastest.
#[derive(Clone, Debug)]
pub struct BoxShape {
    bounds: Vec<u32>,
    strides: Vec<usize>,
    size: usize,
}

impl BoxShape {
    pub fn new(bounds: &[u32]) -> Result<Self> {
        let mut strides = Vec::with_capacity(bounds.len());
        let mut size: usize = 1;
        for &b in bounds {
            strides.push(size);
            size = size
                .checked_mul(b as usize + 1)
                .filter(|&s| s <= MAX_BOX_POINTS)
                .ok_or_else(|| {
                    Error::capability(format!(
                        "exponent box with bounds {bounds:?} exceeds {MAX_BOX_POINTS} points"
                    ))
                })?;
        }
        Ok(BoxShape { bounds: bounds.to_vec(), strides, size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub(crate) fn strides(&self) -> &[usize] {
        &self.strides
    }

    #[inline]
    pub(crate) fn index(&self, a: &[u32]) -> usize {
        a.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum()
    }

    #[inline]
    pub(crate) fn index_clamped(&self, a: &[u32]) -> usize {
        a.iter()
            .zip(&self.bounds)
            .zip(&self.strides)
            .map(|((&c, &b), &s)| c.min(b) as usize * s)
            .sum()
    }

    /// Visit every point in increasing index order.
    pub(crate) fn for_each(&self, mut f: impl FnMut(usize, &[u32])) {
        let n = self.bounds.len();
        let mut coords = vec![0u32; n];
        for idx in 0..self.size {
            f(idx, &coords);
            for i in 0..n {
                if coords[i] < self.bounds[i] {
                    coords[i] += 1;
                    break;
                }
                coords[i] = 0;
            }
        }
    }

    pub(crate) fn bitmap(&self, mut pred: impl FnMut(&[u32]) -> bool) -> Bitset {
        let mut bits = Bitset::new(self.size);
        self.for_each(|idx, a| {
            if pred(a) {
                bits.set(idx);
            }
        });
        bits
    }

    /// Points of an up-closed set none of whose lower neighbours are in the set.
    pub(crate) fn minimal_points(&self, members: &Bitset) -> Vec<Monomial> {
        let mut out = Vec::new();
        self.for_each(|idx, a| {
            if !members.get(idx) {
                return;
            }
            let minimal = a
                .iter()
                .zip(&self.strides)
                .all(|(&c, &s)| c == 0 || !members.get(idx - s));
            if minimal {
                out.push(Monomial::new(a.to_vec()));
            }
        });
        out
    }
}

/// Staircase of a monomial ideal over the box below the lcm of its generators.
#[derive(Clone, Debug)]
pub struct MembershipTable {
    shape: BoxShape,
    bits: Bitset,
}

impl MembershipTable {
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        let shape = BoxShape::new(ideal.lcm_of_generators().exponents())?;
        Ok(Self::with_shape(ideal, shape))
    }

    /// `shape` must dominate every generator exponent.
    pub(crate) fn with_shape(ideal: &MonomialIdeal, shape: BoxShape) -> Self {
        let mut bits = Bitset::new(shape.size);
        for g in ideal.generators() {
            bits.set(shape.index(g.exponents()));
        }
        let strides = shape.strides.clone();
        shape.for_each(|idx, a| {
            if bits.get(idx) {
                return;
            }
            if a.iter()
                .zip(&strides)
                .any(|(&c, &s)| c > 0 && bits.get(idx - s))
            {
                bits.set(idx);
            }
        });
        MembershipTable { shape, bits }
    }

    pub fn shape(&self) -> &BoxShape {
        &self.shape
    }

    #[inline]
    pub fn contains_exponents(&self, a: &[u32]) -> bool {
        self.bits.get(self.shape.index_clamped(a))
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.contains_exponents(u.exponents())
    }

    /// Membership of a point given by its box index.
    #[inline]
    pub(crate) fn contains_index(&self, idx: usize) -> bool {
        self.bits.get(idx)
    }

    /// Monomials `w` with `w ∉ I` and `x_i w ∈ I` for every variable.
    ///
    /// Such `w` satisfy `w_i < L_i` for all `i`, so the scan stays inside the box.
    /// With `first_only` the scan stops at the first hit.
    pub fn socle_monomials(&self, first_only: bool) -> Vec<Monomial> {
        let bounds = &self.shape.bounds;
        let mut out = Vec::new();
        if bounds.contains(&0) {
            return out;
        }
        let inner: Vec<u32> = bounds.iter().map(|b| b - 1).collect();
        let inner_shape = BoxShape::new(&inner).expect("sub-box fits");
        let strides = &self.shape.strides;
        let mut done = false;
        inner_shape.for_each(|_, w| {
            if done {
                return;
            }
            let idx = self.shape.index(w);
            if self.bits.get(idx) {
                return;
            }
            if strides.iter().all(|&s| self.bits.get(idx + s)) {
                out.push(Monomial::new(w.to_vec()));
                done = first_only;
            }
        });
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_agrees_with_generator_scan() {
        let i = MonomialIdeal::from_exponents(3, vec![vec![2, 1, 0], vec![0, 2, 2], vec![1, 0, 1]])
            .unwrap();
        let t = MembershipTable::new(&i).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    let u = Monomial::new(vec![a, b, c]);
                    assert_eq!(t.contains(&u), i.contains(&u), "{u}");
                }
            }
        }
    }

    #[test]
    fn oversized_box_is_a_capability_error() {
        let err = BoxShape::new(&[1000, 1000, 1000]).unwrap_err();
        assert!(matches!(err, Error::Capability(_)));
    }

    #[test]
    fn minimal_points_recover_generators() {
        let i = MonomialIdeal::from_exponents(2, vec![vec![3, 0], vec![1, 1], vec![0, 2]]).unwrap();
        let t = MembershipTable::new(&i).unwrap();
        let mut pts = t.shape().minimal_points(&t.bits);
        pts.sort();
        assert_eq!(pts, i.generators());
    }
}
