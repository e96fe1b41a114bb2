//! Finite simple graphs: edge ideals, connected and biconnected components,
//! spanning forests.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Edge-count limit for spanning-forest enumeration.
pub const MAX_FOREST_EDGES: usize = 16;

/// Undirected graph on vertices `0..vertex_count` without loops or multiple edges.
///
/// Edges are stored as `(u, v)` with `u < v`, in the order given; edge `i`
/// corresponds to the variable `x_{i+1}` of the graphic matroid ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::input(format!("loop at vertex {}", a + 1)));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::input(format!(
                    "edge {}-{} out of range for {vertex_count} vertices",
                    a + 1,
                    b + 1
                )));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::input(format!("repeated edge {}-{}", e.0 + 1, e.1 + 1)));
            }
            out.push(e);
        }
        Ok(SimpleGraph { vertex_count, edges: out })
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::input("a cycle needs at least 3 vertices"));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Edge ideal `(x_u x_v : {u,v} ∈ E)` in `vertex_count` variables.
    pub fn edge_ideal(&self) -> MonomialIdeal {
        let n = self.vertex_count;
        MonomialIdeal::from_candidates(
            n,
            self.edges.iter().map(|&(a, b)| Monomial::squarefree(n, [a, b])).collect(),
        )
    }

    /// Number of connected components `c(G)`, isolated vertices included.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        (0..self.vertex_count).filter(|&v| uf.find(v) == v).count()
    }

    /// Rank of the graphic matroid: `|V| - c(G)`.
    pub fn forest_rank(&self) -> usize {
        self.vertex_count - self.component_count()
    }

    /// Edge-index sets of all maximal spanning forests.
    pub fn spanning_forests(&self) -> Result<Vec<Vec<usize>>> {
        if self.edges.len() > MAX_FOREST_EDGES {
            return Err(Error::capability(format!(
                "spanning-forest enumeration limited to {MAX_FOREST_EDGES} edges, graph has {}",
                self.edges.len()
            )));
        }
        let rank = self.forest_rank();
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(rank);
        self.extend_forests(0, rank, &mut chosen, &UnionFind::new(self.vertex_count), &mut out);
        Ok(out)
    }

    fn extend_forests(
        &self,
        next: usize,
        rank: usize,
        chosen: &mut Vec<usize>,
        uf: &UnionFind,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == rank {
            out.push(chosen.clone());
            return;
        }
        if self.edges.len() - next < rank - chosen.len() {
            return;
        }
        let (a, b) = self.edges[next];
        let mut with = uf.clone();
        if with.union(a, b) {
            chosen.push(next);
            self.extend_forests(next + 1, rank, chosen, &with, out);
            chosen.pop();
        }
        self.extend_forests(next + 1, rank, chosen, uf, out);
    }

    /// Biconnected components as sorted edge-index lists, ordered by smallest
    /// edge index. Bridges form single-edge components.
    pub fn biconnected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count;
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (idx, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, idx));
            adj[b].push((a, idx));
        }
        let mut state = LowpointState {
            adj,
            disc: vec![usize::MAX; n],
            low: vec![0; n],
            time: 0,
            stack: Vec::new(),
            out: Vec::new(),
        };
        for root in 0..n {
            if state.disc[root] == usize::MAX {
                state.visit(root, usize::MAX);
            }
        }
        let mut comps = state.out;
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort();
        comps
    }
}

struct LowpointState {
    adj: Vec<Vec<(usize, usize)>>,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl LowpointState {
    fn visit(&mut self, v: usize, parent_edge: usize) {
        self.disc[v] = self.time;
        self.low[v] = self.time;
        self.time += 1;
        for k in 0..self.adj[v].len() {
            let (w, e) = self.adj[v][k];
            if e == parent_edge {
                continue;
            }
            if self.disc[w] == usize::MAX {
                self.stack.push(e);
                self.visit(w, e);
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] >= self.disc[v] {
                    let mut comp = Vec::new();
                    while let Some(top) = self.stack.pop() {
                        comp.push(top);
                        if top == e {
                            break;
                        }
                    }
                    self.out.push(comp);
                }
            } else if self.disc[w] < self.disc[v] {
                self.stack.push(e);
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}
