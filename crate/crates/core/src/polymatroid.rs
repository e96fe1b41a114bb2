//! Discrete polymatroids, polymatroidal ideals and analytic spread.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, UnionFind};
use crate::linalg::{rank_rational, IntMatrix};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::primes::{candidate_primes, monomial_localization, MonomialPrime};
use crate::relation_graph::RelationGraph;

/// Base set of a candidate polymatroid: vectors of common coordinate sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSet {
    n: usize,
    rank: u64,
    bases: Vec<Vec<u32>>,
}

/// Failure of the exchange property: no `j` with `b(j) > a(j)` and
/// `a - e_i + e_j` a base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeViolation {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub i: usize,
}

impl BaseSet {
    pub fn new(n: usize, bases: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        let set: BTreeSet<Monomial> = bases.into_iter().map(Monomial::new).collect();
        if set.is_empty() {
            return Err(Error::input("a base set needs at least one vector"));
        }
        if let Some(bad) = set.iter().find(|b| b.n() != n) {
            return Err(Error::input(format!("base {:?} does not have length {n}", bad.exponents())));
        }
        let rank = set.first().unwrap().degree();
        if set.iter().any(|b| b.degree() != rank) {
            return Err(Error::input("bases of a polymatroid must share one coordinate sum"));
        }
        Ok(BaseSet { n, rank, bases: set.into_iter().map(Monomial::into_exponents).collect() })
    }

    pub fn from_ideal(ideal: &MonomialIdeal) -> Result<Self> {
        Self::new(ideal.n(), ideal.generators().iter().map(|g| g.exponents().to_vec()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn bases(&self) -> &[Vec<u32>] {
        &self.bases
    }

    /// Exhaustive check of the exchange property; first violation in
    /// canonical order.
    pub fn exchange_check(&self) -> Option<ExchangeViolation> {
        let set: HashSet<&[u32]> = self.bases.iter().map(Vec::as_slice).collect();
        let mut probe = vec![0u32; self.n];
        for a in &self.bases {
            for b in &self.bases {
                for i in (0..self.n).filter(|&i| a[i] > b[i]) {
                    let ok = (0..self.n).filter(|&j| b[j] > a[j]).any(|j| {
                        probe.copy_from_slice(a);
                        probe[i] -= 1;
                        probe[j] += 1;
                        set.contains(probe.as_slice())
                    });
                    if !ok {
                        return Some(ExchangeViolation { a: a.clone(), b: b.clone(), i });
                    }
                }
            }
        }
        None
    }

    pub fn is_polymatroid(&self) -> bool {
        self.exchange_check().is_none()
    }
}

/// `½ Σ |a(i) - b(i)|`.
pub fn base_distance(a: &[u32], b: &[u32]) -> u64 {
    a.iter().zip(b).map(|(&x, &y)| (x as i64 - y as i64).unsigned_abs()).sum::<u64>() / 2
}

/// Generated in one degree with exponent vectors satisfying the exchange property.
pub fn is_polymatroidal(ideal: &MonomialIdeal) -> bool {
    if ideal.is_zero() || ideal.equigenerated_degree().is_none() {
        return false;
    }
    BaseSet::from_ideal(ideal).is_ok_and(|b| b.is_polymatroid())
}

/// Ideal of the graphic matroid: one squarefree generator per maximal
/// spanning forest, variables indexed by edges.
pub fn graphic_matroid_ideal(graph: &SimpleGraph) -> Result<MonomialIdeal> {
    let m = graph.edges().len();
    if m == 0 {
        return Err(Error::input("graphic matroid ideal of a graph without edges"));
    }
    let forests = graph.spanning_forests()?;
    MonomialIdeal::minimalize(m, forests.into_iter().map(|f| Monomial::squarefree(m, f)))
}

/// Product of the monomial primes `(x_i : i ∈ F_k)`.
pub fn transversal_ideal(n: usize, sets: &[BTreeSet<usize>]) -> Result<MonomialIdeal> {
    if sets.is_empty() {
        return Err(Error::input("transversal ideal needs at least one set"));
    }
    let mut acc = MonomialIdeal::unit(n);
    for f in sets {
        let p = MonomialPrime::new(n, f.iter().copied())?;
        acc = acc.multiply(&p.as_ideal(n));
    }
    Ok(acc)
}

/// All exponent vectors with coordinate sum `d` bounded by `bounds`.
pub fn veronese_type_ideal(n: usize, d: u32, bounds: &[u32]) -> Result<MonomialIdeal> {
    if bounds.len() != n {
        return Err(Error::input(format!("bound vector has length {}, expected {n}", bounds.len())));
    }
    if bounds.iter().map(|&c| c as u64).sum::<u64>() < d as u64 {
        return Err(Error::input(format!(
            "no exponent vector of degree {d} fits under bounds {bounds:?}"
        )));
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    compositions(0, d, bounds, &mut cur, &mut out);
    MonomialIdeal::minimalize(n, out.into_iter().map(Monomial::new))
}

fn compositions(i: usize, left: u32, bounds: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i == bounds.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let rest: u64 = bounds[i + 1..].iter().map(|&c| c as u64).sum();
    for e in 0..=bounds[i].min(left) {
        if (left - e) as u64 > rest {
            continue;
        }
        cur[i] = e;
        compositions(i + 1, left - e, bounds, cur, out);
    }
    cur[i] = 0;
}

/// Analytic spread of an ideal generated in one degree: the rational rank of
/// the matrix of generator exponent vectors.
pub fn analytic_spread(ideal: &MonomialIdeal) -> Result<usize> {
    if ideal.is_zero() {
        return Err(Error::input("analytic spread of the zero ideal"));
    }
    if ideal.equigenerated_degree().is_none() {
        return Err(Error::capability(
            "analytic spread is computed as an exponent-matrix rank only for ideals generated in a single degree",
        ));
    }
    let rows: Vec<Vec<i64>> = ideal
        .generators()
        .iter()
        .map(|g| g.exponents().iter().map(|&e| e as i64).collect())
        .collect();
    Ok(rank_rational(&IntMatrix::from_rows(&rows)))
}

/// `r - s + 1` from the relation graph; exact for polymatroidal ideals,
/// otherwise a lower bound for the analytic spread.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpreadEstimate {
    pub value: usize,
    pub exact: bool,
}

pub fn analytic_spread_via_gamma(ideal: &MonomialIdeal) -> SpreadEstimate {
    let c = RelationGraph::build(ideal).components();
    SpreadEstimate {
        value: c.vertex_count - c.component_count + 1,
        exact: is_polymatroidal(ideal),
    }
}

/// Spread of a graphic matroid ideal from its biconnected components with at
/// least two edges: `|E(G_1 ∪ … ∪ G_s)| - s + 1`.
pub fn graphic_spread(graph: &SimpleGraph) -> usize {
    let blocks: Vec<Vec<usize>> = graph
        .biconnected_components()
        .into_iter()
        .filter(|b| b.len() >= 2)
        .collect();
    let edges: usize = blocks.iter().map(Vec::len).sum();
    edges - blocks.len() + 1
}

/// Predicted relation graph of a transversal ideal: complete graphs on the
/// vertex sets of the connected components of the complex generated by the
/// non-singleton sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalGamma {
    /// Product of the variables of the singleton sets, factored out first.
    pub stripped: Monomial,
    pub components: Vec<Vec<usize>>,
    pub edges: BTreeSet<(usize, usize)>,
}

pub fn transversal_gamma_structure(n: usize, sets: &[BTreeSet<usize>]) -> Result<TransversalGamma> {
    let mut stripped = Monomial::one(n);
    let mut kept = Vec::new();
    for f in sets {
        if let Some(&bad) = f.iter().find(|&&v| v >= n) {
            return Err(Error::input(format!("variable index {} out of range", bad + 1)));
        }
        match f.len() {
            0 => return Err(Error::input("transversal sets must be nonempty")),
            1 => stripped = stripped.times_var(*f.first().unwrap()),
            _ => kept.push(f),
        }
    }
    let mut uf = UnionFind::new(n);
    let mut used = BTreeSet::new();
    for f in &kept {
        let first = *f.first().unwrap();
        for &v in f.iter() {
            uf.union(first, v);
            used.insert(v);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &v in &used {
        groups.entry(uf.find(v)).or_default().push(v);
    }
    let mut components: Vec<Vec<usize>> = groups.into_values().collect();
    components.sort();
    let edges = components
        .iter()
        .flat_map(|c| {
            c.iter()
                .enumerate()
                .flat_map(move |(k, &a)| c[k + 1..].iter().map(move |&b| (a, b)))
        })
        .collect();
    Ok(TransversalGamma { stripped, components, edges })
}

/// One row of the localization spread table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSpread {
    pub prime: MonomialPrime,
    pub spread: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationSpreadCheck {
    pub spread: usize,
    pub holds: bool,
    pub table: Vec<LocalSpread>,
}

/// Check `ℓ(I(P)) <= ℓ(I)` for every monomial prime containing `I`.
pub fn localization_spread_check(ideal: &MonomialIdeal) -> Result<LocalizationSpreadCheck> {
    if !is_polymatroidal(ideal) {
        return Err(Error::capability("localization spread check requires a polymatroidal ideal"));
    }
    let spread = analytic_spread(ideal)?;
    let table = candidate_primes(ideal)?
        .into_iter()
        .map(|p| {
            let local = monomial_localization(ideal, &p);
            Ok(LocalSpread { spread: analytic_spread(&local)?, prime: p })
        })
        .collect::<Result<Vec<_>>>()?;
    let holds = table.iter().all(|row| row.spread <= spread);
    Ok(LocalizationSpreadCheck { spread, holds, table })
}
