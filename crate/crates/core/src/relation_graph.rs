//! The linear relation graph of a monomial ideal.
//!
//! `{i, j}` is an edge when two minimal generators satisfy `x_i u = x_j v`.
//! Every edge keeps one witnessing pair so it can be re-checked by monomial
//! arithmetic alone.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::staircase::MembershipTable;

/// Witness `(a, b)` for the edge `{i, j}`, `i < j`: `x_i * a = x_j * b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeWitness {
    pub left: Monomial,
    pub right: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), EdgeWitness>,
}

/// Connected components of a relation graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
    /// Number of vertices `r`.
    pub vertex_count: usize,
    /// Number of components `s`.
    pub component_count: usize,
    /// Vertex sets, each sorted, ordered by smallest vertex.
    pub parts: Vec<Vec<usize>>,
}

/// One edge of an ordered spanning forest.
///
/// `free` is new when the edge is added; `x_free * multiplier = x_anchor * partner`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForestEdge {
    pub anchor: usize,
    pub free: usize,
    pub multiplier: Monomial,
    pub partner: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderedSpanningForest {
    pub edges: Vec<ForestEdge>,
}

impl OrderedSpanningForest {
    /// Every `free` endpoint is absent from all earlier edges and from its own anchor.
    pub fn has_free_vertex_property(&self) -> bool {
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            seen.insert(e.anchor);
            if seen.contains(&e.free) {
                return false;
            }
            seen.insert(e.free);
        }
        true
    }
}

/// Socle element built from a spanning tree of a connected relation graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleWitness {
    pub monomial: Monomial,
    pub forest: OrderedSpanningForest,
    /// The vertex that is never a free endpoint.
    pub root: usize,
    /// The power `n - 1` the witness lives in.
    pub power: u32,
    /// `w ∉ I^(n-1)` and `x_i w ∈ I^(n-1)` for all `i`.
    pub verified: bool,
    /// `v w` checked the same way in `I^n` for the first generator `v`.
    pub next_power_verified: bool,
}

impl RelationGraph {
    /// Scan every generator `u`, variable `j` dividing it and variable `i != j`,
    /// and look up `x_i u / x_j` among the generators.
    pub fn build(ideal: &MonomialIdeal) -> RelationGraph {
        let n = ideal.n();
        let gens = ideal.generators();
        let index: HashSet<&Monomial> = gens.iter().collect();
        let mut edges: BTreeMap<(usize, usize), EdgeWitness> = BTreeMap::new();
        for u in gens {
            for j in u.support() {
                let base = u.div_var(j).unwrap();
                for i in (0..n).filter(|&i| i != j) {
                    let v = base.times_var(i);
                    if !index.contains(&v) {
                        continue;
                    }
                    // x_i u = x_j v
                    let (key, w) = if i < j {
                        ((i, j), EdgeWitness { left: u.clone(), right: v })
                    } else {
                        ((j, i), EdgeWitness { left: v, right: u.clone() })
                    };
                    edges
                        .entry(key)
                        .and_modify(|old| {
                            if (&w.left, &w.right) < (&old.left, &old.right) {
                                *old = w.clone();
                            }
                        })
                        .or_insert(w);
                }
            }
        }
        RelationGraph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.keys().copied()
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges.keys().copied().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn witness(&self, i: usize, j: usize) -> Option<&EdgeWitness> {
        self.edges.get(&(i.min(j), i.max(j)))
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.edges.keys().flat_map(|&(a, b)| [a, b]).collect()
    }

    /// Recheck `x_i a = x_j b` for every stored witness against `G(I)`.
    pub fn verify_witnesses(&self, ideal: &MonomialIdeal) -> bool {
        let gens: HashSet<&Monomial> = ideal.generators().iter().collect();
        self.edges.iter().all(|(&(i, j), w)| {
            gens.contains(&w.left) && gens.contains(&w.right) && w.left.times_var(i) == w.right.times_var(j)
        })
    }

    fn adjacency(&self) -> BTreeMap<usize, BTreeSet<usize>> {
        let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for &(a, b) in self.edges.keys() {
            adj.entry(a).or_default().insert(b);
            adj.entry(b).or_default().insert(a);
        }
        adj
    }

    pub fn components(&self) -> Components {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut parts = Vec::new();
        for &start in adj.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut part = vec![start];
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        part.push(w);
                        queue.push(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        Components {
            vertex_count: seen.len(),
            component_count: parts.len(),
            parts,
        }
    }

    /// Depth-first forest: each component is explored from its smallest
    /// vertex, smallest neighbour first; tree edges are listed in discovery
    /// order with the newly reached vertex as the free endpoint.
    pub fn ordered_spanning_forest(&self) -> OrderedSpanningForest {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut edges = Vec::new();
        for &root in adj.keys() {
            if !seen.insert(root) {
                continue;
            }
            let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, adj[&root].iter().copied().collect())];
            while let Some((v, pending)) = stack.last_mut() {
                let v = *v;
                if pending.is_empty() {
                    stack.pop();
                    continue;
                }
                let w = pending.remove(0);
                if !seen.insert(w) {
                    continue;
                }
                edges.push(self.forest_edge(v, w));
                stack.push((w, adj[&w].iter().copied().collect()));
            }
        }
        OrderedSpanningForest { edges }
    }

    fn forest_edge(&self, anchor: usize, free: usize) -> ForestEdge {
        let w = self.witness(anchor, free).expect("tree edge is a graph edge");
        // stored: x_min * left = x_max * right
        let (multiplier, partner) = if anchor < free {
            // x_anchor * left = x_free * right
            (w.right.clone(), w.left.clone())
        } else {
            (w.left.clone(), w.right.clone())
        };
        ForestEdge { anchor, free, multiplier, partner }
    }

    /// Graphviz text; `names` label the variables, `with_witnesses` adds the
    /// witness pair to each edge label.
    pub fn to_dot(&self, names: &[String], with_witnesses: bool) -> String {
        let mut out = String::from("graph Gamma {\n");
        for v in self.vertices() {
            let _ = writeln!(out, "  \"{}\";", names[v]);
        }
        for (&(a, b), w) in &self.edges {
            if with_witnesses {
                let _ = writeln!(
                    out,
                    "  \"{}\" -- \"{}\" [label=\"{} | {}\"];",
                    names[a],
                    names[b],
                    w.left.display_with(names),
                    w.right.display_with(names)
                );
            } else {
                let _ = writeln!(out, "  \"{}\" -- \"{}\";", names[a], names[b]);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Default variable names `x1..xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Bounds `(t, n - t - 1)` for `t = 1..=r-s`; only defined for ideals
/// generated in one degree.
pub fn depth_upper_bounds(ideal: &MonomialIdeal) -> Result<Vec<(u32, u32)>> {
    if ideal.equigenerated_degree().is_none() {
        return Err(Error::input(
            "depth bounds from the relation graph need an ideal generated in a single degree",
        ));
    }
    let comps = RelationGraph::build(ideal).components();
    let n = ideal.n() as u32;
    let top = (comps.vertex_count - comps.component_count) as u32;
    Ok((1..=top).map(|t| (t, n - t - 1)).collect())
}

/// The socle element `(∏ multipliers) / x_root` of `S/I^(n-1)` attached to a
/// spanning tree of a connected relation graph covering all variables.
pub fn socle_witness(ideal: &MonomialIdeal) -> Result<SocleWitness> {
    let n = ideal.n();
    if ideal.equigenerated_degree().is_none() {
        return Err(Error::input("socle witness requires an ideal generated in a single degree"));
    }
    let graph = RelationGraph::build(ideal);
    let comps = graph.components();
    if comps.vertex_count != n {
        return Err(Error::input(format!(
            "socle witness requires the relation graph to cover all {n} variables; it covers {}",
            comps.vertex_count
        )));
    }
    if comps.component_count != 1 {
        return Err(Error::input(format!(
            "socle witness requires a connected relation graph; it has {} components",
            comps.component_count
        )));
    }
    let forest = graph.ordered_spanning_forest();
    let free: BTreeSet<usize> = forest.edges.iter().map(|e| e.free).collect();
    let root = (0..n).find(|v| !free.contains(v)).expect("tree leaves one vertex unreached");
    let product = forest
        .edges
        .iter()
        .fold(Monomial::one(n), |acc, e| acc.mul(&e.multiplier));
    let monomial = product
        .div_var(root)
        .ok_or_else(|| Error::input("product of tree multipliers is not divisible by the root variable"))?;
    let power = (n - 1) as u32;
    let base = ideal.power(power);
    let verified = is_socle_monomial(&base, &monomial)?;
    let next = base.multiply(ideal);
    let lifted = monomial.mul(&ideal.generators()[0]);
    let next_power_verified = is_socle_monomial(&next, &lifted)?;
    Ok(SocleWitness {
        monomial,
        forest,
        root,
        power,
        verified,
        next_power_verified,
    })
}

/// `w ∉ J` and `x_i w ∈ J` for every variable.
pub(crate) fn is_socle_monomial(ideal: &MonomialIdeal, w: &Monomial) -> Result<bool> {
    let table = MembershipTable::new(ideal)?;
    Ok(!table.contains(w) && (0..ideal.n()).all(|i| table.contains(&w.times_var(i))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    fn cycle_ideal(n: usize) -> MonomialIdeal {
        SimpleGraph::cycle(n).unwrap().edge_ideal()
    }

    #[test]
    fn principal_ideal_has_empty_graph() {
        let i = MonomialIdeal::principal(Monomial::new(vec![1, 2, 0]));
        let g = RelationGraph::build(&i);
        assert_eq!(g.edge_count(), 0);
        let c = g.components();
        assert_eq!((c.vertex_count, c.component_count), (0, 0));
        assert!(depth_upper_bounds(&i).unwrap().is_empty());
        assert_eq!(g.to_dot(&default_names(3), false), "graph Gamma {\n}\n");
    }

    #[test]
    fn five_cycle_graph_is_the_skip_cycle() {
        let i = cycle_ideal(5);
        let g = RelationGraph::build(&i);
        let expected: BTreeSet<(usize, usize)> =
            (0..5).map(|k| (k.min((k + 2) % 5), k.max((k + 2) % 5))).collect();
        assert_eq!(g.edge_set(), expected);
        assert!(g.verify_witnesses(&i));
        let c = g.components();
        assert_eq!((c.vertex_count, c.component_count), (5, 1));
        assert_eq!(
            depth_upper_bounds(&i).unwrap(),
            vec![(1, 3), (2, 2), (3, 1), (4, 0)]
        );
    }

    #[test]
    fn forest_of_five_cycle_follows_the_odd_chain() {
        let g = RelationGraph::build(&cycle_ideal(5));
        let f = g.ordered_spanning_forest();
        let pairs: Vec<(usize, usize)> = f.edges.iter().map(|e| (e.anchor, e.free)).collect();
        // {1,3},{3,5},{5,2},{2,4} in 1-based labels
        assert_eq!(pairs, vec![(0, 2), (2, 4), (4, 1), (1, 3)]);
        assert!(f.has_free_vertex_property());
        for e in &f.edges {
            assert_eq!(e.multiplier.times_var(e.free), e.partner.times_var(e.anchor));
        }
    }

    #[test]
    fn six_cycle_graph_has_two_triangles() {
        let g = RelationGraph::build(&cycle_ideal(6));
        let c = g.components();
        assert_eq!(c.parts, vec![vec![0, 2, 4], vec![1, 3, 5]]);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(depth_upper_bounds(&cycle_ideal(6)).unwrap().len(), 4);
    }

    #[test]
    fn five_cycle_socle_witness() {
        let w = socle_witness(&cycle_ideal(5)).unwrap();
        assert_eq!(w.monomial, Monomial::new(vec![1, 2, 2, 1, 1]));
        assert_eq!(w.root, 0);
        assert_eq!(w.power, 4);
        assert!(w.verified && w.next_power_verified);
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let err = socle_witness(&cycle_ideal(6)).unwrap_err();
        assert!(err.to_string().contains("connected"), "{err}");
    }

    #[test]
    fn squarefree_veronese_witness() {
        let i = MonomialIdeal::from_exponents(3, vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]])
            .unwrap();
        let w = socle_witness(&i).unwrap();
        assert!(w.verified);
        let sq = i.power(2);
        assert!(!sq.contains(&w.monomial));
        for k in 0..3 {
            assert!(sq.contains(&w.monomial.times_var(k)));
        }
    }

    #[test]
    fn non_equigenerated_inputs_are_refused() {
        let i = MonomialIdeal::from_exponents(2, vec![vec![1, 0], vec![0, 2]]).unwrap();
        assert!(depth_upper_bounds(&i).is_err());
        assert!(socle_witness(&i).is_err());
    }
}
