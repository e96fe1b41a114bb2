use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use super::{FaceLattice, FieldChoice, SimplicialComplex, MAX_COMPLEX_VERTICES};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Generator-count limit for full Betti tables.
pub const MAX_BETTI_GENERATORS: usize = 200;

/// All least common multiples of nonempty sets of minimal generators, sorted.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Vec<Monomial> {
    let gens = ideal.generators();
    let mut seen: HashSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = gens.to_vec();
    while let Some(x) = frontier.pop() {
        for g in gens {
            let l = x.lcm(g);
            if !seen.contains(&l) {
                seen.insert(l.clone());
                frontier.push(l);
            }
        }
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort();
    out
}

/// `K^b(I) = { W ⊆ supp(b) : x^b / x_W ∈ I }`, on the vertices `0..n`.
pub fn upper_koszul(ideal: &MonomialIdeal, b: &Monomial) -> Result<SimplicialComplex> {
    Ok(SimplicialComplex::from_masks(ideal.n(), koszul_faces(ideal, b)?))
}

fn koszul_faces(ideal: &MonomialIdeal, b: &Monomial) -> Result<Vec<u64>> {
    let support = b.support();
    if support.len() > MAX_COMPLEX_VERTICES {
        return Err(Error::capability(format!(
            "upper Koszul complex on {} vertices exceeds the limit of {MAX_COMPLEX_VERTICES}",
            support.len()
        )));
    }
    let mut faces = Vec::new();
    for sub in 0u64..1 << support.len() {
        let mut w = b.clone();
        let mut mask = 0u64;
        for (k, &v) in support.iter().enumerate() {
            if sub >> k & 1 == 1 {
                w = w.div_var(v).unwrap();
                mask |= 1 << v;
            }
        }
        if ideal.contains(&w) {
            faces.push(mask);
        }
    }
    Ok(faces)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub homological_degree: usize,
    pub multidegree: Monomial,
    pub value: usize,
}

/// Nonzero multigraded Betti numbers `β_{i,b}(I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    field: FieldChoice,
    entries: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    pub fn field(&self) -> FieldChoice {
        self.field
    }

    pub fn get(&self, i: usize, b: &Monomial) -> usize {
        self.entries.get(&(i, b.clone())).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> Vec<BettiEntry> {
        self.entries
            .iter()
            .map(|((i, b), &v)| BettiEntry { homological_degree: *i, multidegree: b.clone(), value: v })
            .collect()
    }

    /// `β_i(I)`.
    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((j, _), _)| *j == i).map(|(_, v)| v).sum()
    }

    /// `β_{i,j}(I)` collected by total degree `j`.
    pub fn graded(&self) -> BTreeMap<(usize, u64), usize> {
        let mut out = BTreeMap::new();
        for ((i, b), v) in &self.entries {
            *out.entry((*i, b.degree())).or_insert(0) += v;
        }
        out
    }

    /// `pd(S/I) = 1 + max{i : β_i(I) ≠ 0}`, and `0` for the zero ideal.
    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| i + 1).max().unwrap_or(0)
    }

    /// `depth(S/I) = n - pd(S/I)`.
    pub fn depth(&self) -> usize {
        self.n - self.projective_dimension()
    }
}

/// Betti table of `I` over `field` from the reduced homology of the upper
/// Koszul complexes at the lcm-lattice points.
pub fn betti_table(ideal: &MonomialIdeal, field: FieldChoice) -> Result<BettiTable> {
    if ideal.is_unit() {
        return Err(Error::input("Betti table of the unit ideal"));
    }
    if ideal.len() > MAX_BETTI_GENERATORS {
        return Err(Error::capability(format!(
            "Betti tables limited to {MAX_BETTI_GENERATORS} generators (ideal has {}); use the depth probe instead",
            ideal.len()
        )));
    }
    let mut entries = BTreeMap::new();
    for b in lcm_lattice(ideal) {
        let faces = koszul_faces(ideal, &b)?;
        let closed: BTreeSet<u64> = faces.into_iter().collect();
        let h = FaceLattice::from_faces(closed).reduced_homology(field);
        for (i, &r) in h.ranks.iter().enumerate() {
            if r > 0 {
                entries.insert((i, b.clone()), r);
            }
        }
    }
    Ok(BettiTable { n: ideal.n(), field, entries })
}

/// Equigenerated in degree `d` with `β_{i,b} = 0` unless `|b| = d + i`;
/// `false` for ideals generated in several degrees.
pub fn has_linear_resolution(ideal: &MonomialIdeal, field: FieldChoice) -> Result<bool> {
    let Some(d) = ideal.equigenerated_degree() else {
        return Ok(false);
    };
    let table = betti_table(ideal, field)?;
    Ok(table.entries.keys().all(|(i, b)| b.degree() == d + *i as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
    }

    #[test]
    fn lattice_small_cases() {
        let single = MonomialIdeal::principal(Monomial::new(vec![2, 1]));
        assert_eq!(lcm_lattice(&single), single.generators().to_vec());
        let m = MonomialIdeal::maximal(2);
        assert_eq!(lcm_lattice(&m).len(), 3);
    }

    #[test]
    fn koszul_complex_of_maximal_ideal() {
        for n in 1..=5 {
            let t = betti_table(&MonomialIdeal::maximal(n), FieldChoice::Rationals).unwrap();
            for i in 0..n {
                assert_eq!(t.total(i), binom(n, i + 1));
            }
            assert_eq!(t.depth(), 0);
        }
    }

    #[test]
    fn upper_koszul_basic_shapes() {
        let i = MonomialIdeal::from_exponents(2, vec![vec![1, 1]]).unwrap();
        let at_gen = upper_koszul(&i, &Monomial::new(vec![1, 1])).unwrap();
        assert!(at_gen.contains_face(&[]));
        let below = upper_koszul(&i, &Monomial::new(vec![1, 0])).unwrap();
        assert!(below.is_void());
    }

    #[test]
    fn zeroth_betti_numbers_are_generators() {
        let i = SimpleGraph::cycle(5).unwrap().edge_ideal();
        let t = betti_table(&i, FieldChoice::Rationals).unwrap();
        for g in i.generators() {
            assert_eq!(t.get(0, g), 1);
        }
        assert_eq!(t.total(0), 5);
        assert_eq!(t.depth(), 2);
    }

    #[test]
    fn powers_of_maximal_ideal_have_linear_resolution() {
        for d in 1..=3 {
            let i = MonomialIdeal::maximal(3).power(d);
            assert!(has_linear_resolution(&i, FieldChoice::Rationals).unwrap());
        }
        let mixed = MonomialIdeal::from_exponents(2, vec![vec![1, 0], vec![0, 2]]).unwrap();
        assert!(!has_linear_resolution(&mixed, FieldChoice::Rationals).unwrap());
    }

    #[test]
    fn guard_rejects_large_tables() {
        let i = MonomialIdeal::maximal(5).power(6);
        assert!(i.len() > MAX_BETTI_GENERATORS);
        assert!(matches!(betti_table(&i, FieldChoice::Rationals), Err(Error::Capability(_))));
    }
}
