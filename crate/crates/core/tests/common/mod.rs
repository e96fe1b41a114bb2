//! Brute-force reference implementations used by the integration tests.
//!
//! Nothing here calls into the engine beyond constructing ideals, so every
//! comparison is against an independent computation.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use powerstab_core::{FieldChoice, Monomial, MonomialIdeal};
use rand::rngs::StdRng;
use rand::Rng;

pub fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

pub fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(n, gens.iter().map(|g| g.to_vec())).unwrap()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Membership by scanning the generator list.
pub fn member(gens: &[Vec<u32>], u: &[u32]) -> bool {
    gens.iter().any(|g| divides(g, u))
}

pub fn exps(ideal: &MonomialIdeal) -> Vec<Vec<u32>> {
    ideal.generators().iter().map(|g| g.exponents().to_vec()).collect()
}

/// All exponent vectors in `[0, bound]`.
pub fn box_points(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=b).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

/// Minimal elements of a set of exponent vectors, sorted.
pub fn minimal(points: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    points
        .iter()
        .filter(|p| !points.iter().any(|q| q != *p && divides(q, p)))
        .cloned()
        .collect()
}

pub fn gen_set(ideal: &MonomialIdeal) -> BTreeSet<Vec<u32>> {
    exps(ideal).into_iter().collect()
}

fn lcm_bound(n: usize, gens: &[Vec<u32>]) -> Vec<u32> {
    (0..n).map(|i| gens.iter().map(|g| g[i]).max().unwrap_or(0)).collect()
}

/// `G(I : J)` by testing every point of the box below `lcm(G(I))`.
pub fn colon_oracle(n: usize, i: &[Vec<u32>], j: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let inside: Vec<Vec<u32>> = box_points(&lcm_bound(n, i))
        .into_iter()
        .filter(|w| {
            j.iter().all(|g| {
                let prod: Vec<u32> = w.iter().zip(g).map(|(a, b)| a + b).collect();
                member(i, &prod)
            })
        })
        .collect();
    minimal(&inside)
}

/// `G(I ∩ J)` by testing every point of the box below `lcm(G(I) ∪ G(J))`.
pub fn intersection_oracle(n: usize, i: &[Vec<u32>], j: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let all: Vec<Vec<u32>> = i.iter().chain(j).cloned().collect();
    let inside: Vec<Vec<u32>> = box_points(&lcm_bound(n, &all))
        .into_iter()
        .filter(|w| member(i, w) && member(j, w))
        .collect();
    minimal(&inside)
}

/// Monomials `w` below `lcm(G(I))` with `w ∉ I` and `x_i w ∈ I` for all `i`.
pub fn socle_oracle(n: usize, gens: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    box_points(&lcm_bound(n, gens))
        .into_iter()
        .filter(|w| {
            !member(gens, w)
                && (0..n).all(|i| {
                    let mut v = w.clone();
                    v[i] += 1;
                    member(gens, &v)
                })
        })
        .collect()
}

/// A random ideal with `n` variables, 1 to `max_gens` generators, exponents
/// at most `max_exp`, never containing the unit.
pub fn random_ideal(rng: &mut StdRng, n: usize, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    let m = rng.gen_range(1..=max_gens);
    let gens: Vec<Vec<u32>> = (0..m)
        .map(|_| loop {
            let g: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            if g.iter().any(|&e| e > 0) {
                break g;
            }
        })
        .collect();
    MonomialIdeal::from_exponents(n, gens).unwrap()
}

/// Random simple graph as an edge list on `0..v`.
pub fn random_graph(rng: &mut StdRng, v: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Exact rank over the rationals by fraction-free elimination on big integers.
pub fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != BigInt::from(0)) else { continue };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for k in c + 1..cols {
                let v = (&m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k]) / &prev;
                m[r][k] = v;
            }
            m[r][c] = BigInt::from(0);
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Rank modulo a prime `p` by ordinary elimination.
pub fn rank_p(rows: &[Vec<i64>], p: u64) -> usize {
    let p = p as i128;
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| (x as i128).rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % p;
                for k in c..cols {
                    m[r][k] = (m[r][k] - f * m[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i128, mut e: i128, p: i128) -> i128 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn rank_over(rows: &[Vec<i64>], field: FieldChoice) -> usize {
    match field {
        FieldChoice::Rationals => rank_q(rows),
        other => rank_p(rows, other.characteristic()),
    }
}

/// Multigraded Betti numbers `β_{i,b}(I)` from the degree-`b` strand of the
/// Taylor complex.
///
/// After tensoring with the field, the strand in degree `b` has a basis of the
/// generator subsets `σ` with `lcm(σ) = b`, with the simplicial boundary
/// restricted to those subsets. Its homology in position `|σ| = i + 1` is
/// `Tor_{i+1}(S/I, k)_b = β_{i,b}(I)`.
pub fn taylor_betti(ideal: &MonomialIdeal, field: FieldChoice) -> BTreeMap<(usize, Vec<u32>), usize> {
    let gens = exps(ideal);
    let m = gens.len();
    assert!(m <= 12, "Taylor oracle is exponential in the generator count");
    let n = ideal.n();
    let mut by_lcm: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
    for mask in 1u32..(1 << m) {
        let l = (0..n)
            .map(|v| (0..m).filter(|g| mask >> g & 1 == 1).map(|g| gens[g][v]).max().unwrap())
            .collect();
        by_lcm.entry(l).or_default().push(mask);
    }
    let mut out = BTreeMap::new();
    for (b, masks) in by_lcm {
        let mut layers: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for &s in &masks {
            layers.entry(s.count_ones() as usize).or_default().push(s);
        }
        let boundary_rank = |size: usize| -> usize {
            let (Some(src), Some(dst)) = (layers.get(&size), layers.get(&(size - 1))) else { return 0 };
            let index: BTreeMap<u32, usize> = dst.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            let rows: Vec<Vec<i64>> = src
                .iter()
                .map(|&s| {
                    let mut row = vec![0i64; dst.len()];
                    for (pos, g) in (0..m).filter(|g| s >> g & 1 == 1).enumerate() {
                        if let Some(&j) = index.get(&(s & !(1 << g))) {
                            row[j] = if pos % 2 == 0 { 1 } else { -1 };
                        }
                    }
                    row
                })
                .collect();
            rank_over(&rows, field)
        };
        for (&size, layer) in &layers {
            let outgoing = if size > 1 { boundary_rank(size) } else { 0 };
            let incoming = boundary_rank(size + 1);
            let h = layer.len() - outgoing - incoming;
            if h > 0 {
                out.insert((size - 1, b.clone()), h);
            }
        }
    }
    out
}

/// `depth S/I = n - pd(S/I)` read off the Taylor oracle.
pub fn taylor_depth(ideal: &MonomialIdeal, field: FieldChoice) -> usize {
    let pd = taylor_betti(ideal, field).keys().map(|(i, _)| i + 1).max().unwrap_or(0);
    ideal.n() - pd
}
pub mod suites;
