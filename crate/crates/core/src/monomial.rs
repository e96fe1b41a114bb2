//! Monomials and monomial ideals.
//!
//! A [`MonomialIdeal`] always stores its unique minimal generating set in
//! canonical order: ascending total degree, then descending lexicographic
//! order of the exponent vectors (so `x1^2 < x1*x2 < x2^2`). Two ideals are
//! equal exactly when their generator sequences are equal.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::staircase::{BoxShape, MembershipTable};

/// Largest ambient variable count supported by the engine.
pub const MAX_VARIABLES: usize = 64;

/// A monomial `x^a` given by its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The unit monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable `x_i` (0-based index) in `n` variables.
    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    /// The squarefree monomial on the given variable indices.
    pub fn squarefree(n: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let mut exps = vec![0; n];
        for i in vars {
            exps[i] = 1;
        }
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.exps
    }

    /// Ambient variable count.
    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Exponent of `x_i`.
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.n(), other.n());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n(), other.n());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        }
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.n(), other.n());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Monomial { exps })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    /// `self^k`.
    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|a| a.checked_mul(k).expect("exponent overflow"))
                .collect(),
        }
    }

    /// Multiply by `x_i`.
    pub fn times_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] = exps[i].checked_add(1).expect("exponent overflow");
        Monomial { exps }
    }

    /// Divide by `x_i`, if possible.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(Monomial { exps })
    }

    /// Indices of variables dividing the monomial.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.exps[i] > 0).collect()
    }

    /// Support as a bit mask (requires `n <= 64`).
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << i))
    }

    /// Render with custom variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        NamedMonomial { mono: self, names }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct NamedMonomial<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, name: &dyn Fn(usize) -> String) -> fmt::Result {
    if m.is_one() {
        return write!(f, "1");
    }
    let mut first = true;
    for (i, &e) in m.exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for NamedMonomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, self.mono, &|i| self.names[i].clone())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, self, &|i| format!("x{}", i + 1))
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A monomial ideal given by its minimal generators.
///
/// The zero ideal has no generators; the unit ideal has the single generator `1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Build the ideal generated by `gens`, discarding redundant generators.
    pub fn minimalize(n: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        if n > MAX_VARIABLES {
            return Err(Error::input(format!(
                "{n} variables exceeds the supported maximum of {MAX_VARIABLES}"
            )));
        }
        let gens: Vec<Monomial> = gens.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| g.n() != n) {
            return Err(Error::input(format!(
                "monomial {bad} has {} exponents, expected {n}",
                bad.n()
            )));
        }
        Ok(Self::from_candidates(n, gens))
    }

    /// Build from raw exponent vectors.
    pub fn from_exponents(n: usize, gens: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        Self::minimalize(n, gens.into_iter().map(Monomial::new))
    }

    /// Candidates must already have length `n`.
    pub(crate) fn from_candidates(n: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort_unstable();
        gens.dedup();
        if gens.first().is_some_and(|g| g.is_one()) {
            return MonomialIdeal { n, gens: vec![Monomial::one(n)] };
        }
        let masks: Vec<u64> = gens.iter().map(Monomial::support_mask).collect();
        let mut kept: Vec<usize> = Vec::with_capacity(gens.len());
        // kept[..lower_end] holds generators of strictly smaller degree than the candidate
        let mut lower_end = 0;
        let mut current_degree = None;
        for (idx, cand) in gens.iter().enumerate() {
            let deg = cand.degree();
            if current_degree != Some(deg) {
                current_degree = Some(deg);
                lower_end = kept.len();
            }
            let cmask = masks[idx];
            let redundant = kept[..lower_end]
                .iter()
                .any(|&k| masks[k] & !cmask == 0 && gens[k].divides(cand));
            if !redundant {
                kept.push(idx);
            }
        }
        let mut gens: Vec<Option<Monomial>> = gens.into_iter().map(Some).collect();
        let gens = kept.into_iter().map(|k| gens[k].take().unwrap()).collect();
        MonomialIdeal { n, gens }
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![Monomial::one(n)] }
    }

    /// The maximal ideal `(x1, ..., xn)`.
    pub fn maximal(n: usize) -> Self {
        Self::from_candidates(n, (0..n).map(|i| Monomial::var(n, i)).collect())
    }

    pub fn principal(u: Monomial) -> Self {
        let n = u.n();
        Self::from_candidates(n, vec![u])
    }

    /// Ambient variable count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    /// Number of minimal generators.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    /// Membership test: some generator divides `u`.
    pub fn contains(&self, u: &Monomial) -> bool {
        debug_assert_eq!(u.n(), self.n);
        let umask = u.support_mask();
        self.gens
            .iter()
            .any(|g| g.support_mask() & !umask == 0 && g.divides(u))
    }

    /// `I ⊆ J`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Componentwise maximum of all generator exponents.
    pub fn lcm_of_generators(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.n), |acc, g| acc.lcm(g))
    }

    /// Variable indices dividing some generator.
    pub fn support(&self) -> Vec<usize> {
        self.lcm_of_generators().support()
    }

    /// `Some(d)` when all generators have total degree `d`.
    pub fn equigenerated_degree(&self) -> Option<u64> {
        let d = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.exps.iter().all(|&e| e <= 1))
    }

    /// Minimalized product `I * J`.
    pub fn multiply(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.n, other.n, "ambient variable counts differ");
        let mut cands = Vec::with_capacity(self.len() * other.len());
        for u in &self.gens {
            for v in &other.gens {
                cands.push(u.mul(v));
            }
        }
        Self::from_candidates(self.n, cands)
    }

    /// `I^k` by iterated multiplication; `I^0` is the unit ideal.
    pub fn power(&self, k: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.n);
        for _ in 0..k {
            acc = acc.multiply(self);
        }
        acc
    }

    /// `I : v` for a monomial `v`.
    pub fn colon_monomial(&self, v: &Monomial) -> MonomialIdeal {
        assert_eq!(self.n, v.n(), "ambient variable counts differ");
        Self::from_candidates(
            self.n,
            self.gens.iter().map(|u| u.div(&u.gcd(v)).unwrap()).collect(),
        )
    }

    /// `I : J`; fails when `J` is the zero ideal.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        assert_eq!(self.n, other.n, "ambient variable counts differ");
        if other.is_zero() {
            return Err(Error::input("colon by the zero ideal"));
        }
        if self.is_zero() || self.is_unit() {
            return Ok(self.clone());
        }
        match BoxShape::new(self.lcm_of_generators().exponents()) {
            Ok(shape) if other.len() > 1 => Ok(self.colon_ideal_by_table(other, shape)),
            _ => Ok(self.colon_ideal_by_intersection(other)),
        }
    }

    pub(crate) fn colon_ideal_by_intersection(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.n);
        for v in &other.gens {
            acc = acc.intersect_pairwise(&self.colon_monomial(v));
        }
        acc
    }

    /// Scans the exponent box below `lcm(G(I))`, which contains every minimal
    /// generator of the colon.
    pub(crate) fn colon_ideal_by_table(&self, other: &MonomialIdeal, shape: BoxShape) -> MonomialIdeal {
        let table = MembershipTable::with_shape(self, shape.clone());
        let mut probe = vec![0u32; self.n];
        let members = shape.bitmap(|w| {
            other.gens.iter().all(|v| {
                for (p, (a, b)) in probe.iter_mut().zip(w.iter().zip(v.exponents())) {
                    *p = a + b;
                }
                table.contains_exponents(&probe)
            })
        });
        Self::from_sorted_minimal(self.n, shape.minimal_points(&members))
    }

    /// `I ∩ J`.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.n, other.n, "ambient variable counts differ");
        if self.is_zero() || other.is_zero() {
            return MonomialIdeal::zero(self.n);
        }
        if self.len() * other.len() > 4096 {
            let bound = self.lcm_of_generators().lcm(&other.lcm_of_generators());
            if let Ok(shape) = BoxShape::new(bound.exponents()) {
                return self.intersect_by_table(other, shape);
            }
        }
        self.intersect_pairwise(other)
    }

    pub(crate) fn intersect_pairwise(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut cands = Vec::with_capacity(self.len() * other.len());
        for u in &self.gens {
            for v in &other.gens {
                cands.push(u.lcm(v));
            }
        }
        Self::from_candidates(self.n, cands)
    }

    pub(crate) fn intersect_by_table(&self, other: &MonomialIdeal, shape: BoxShape) -> MonomialIdeal {
        let a = MembershipTable::new(self).expect("box fits");
        let b = MembershipTable::new(other).expect("box fits");
        let members = shape.bitmap(|w| a.contains_exponents(w) && b.contains_exponents(w));
        Self::from_sorted_minimal(self.n, shape.minimal_points(&members))
    }

    fn from_sorted_minimal(n: usize, mut gens: Vec<Monomial>) -> MonomialIdeal {
        gens.sort_unstable();
        if gens.first().is_some_and(|g| g.is_one()) {
            gens.truncate(1);
        }
        MonomialIdeal { n, gens }
    }

    /// Render the generator list with custom variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        NamedIdeal { ideal: self, names }
    }

    /// Generators as strings, canonical order.
    pub fn generator_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }
}

struct NamedIdeal<'a> {
    ideal: &'a MonomialIdeal,
    names: &'a [String],
}

impl fmt::Display for NamedIdeal<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.ideal.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g.display_with(self.names))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.n).map(|i| format!("x{i}")).collect();
        let shown = self.display_with(&names).to_string();
        f.write_str(&shown)
    }
}
