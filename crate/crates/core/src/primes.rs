//! Monomial primes, monomial localization and associated primes of powers.
//!
//! For a monomial prime `P`, the localization `I(P)` substitutes `1` for every
//! variable outside `P`. Then `P ∈ Ass(I^k)` iff the maximal ideal of the
//! smaller ring is associated to `I(P)^k`, i.e. iff `I(P)^k` has a nonzero socle.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::polymatroid::{analytic_spread, is_polymatroidal};
use crate::staircase::MembershipTable;

/// Largest support size for which candidate primes are enumerated.
pub const MAX_PRIME_SEARCH_VARIABLES: usize = 20;

/// Default power horizon for ideals without a stability certificate.
pub const DEFAULT_HORIZON: u32 = 4;

/// A prime generated by variables, stored as sorted 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialPrime {
    vars: Vec<usize>,
}

impl MonomialPrime {
    pub fn new(n: usize, vars: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = vars.into_iter().collect();
        if set.is_empty() {
            return Err(Error::input("a monomial prime needs at least one variable"));
        }
        if let Some(&bad) = set.iter().find(|&&v| v >= n) {
            return Err(Error::input(format!("variable index {} out of range for {n} variables", bad + 1)));
        }
        Ok(MonomialPrime { vars: set.into_iter().collect() })
    }

    /// The maximal ideal of the ring in `n` variables.
    pub fn maximal(n: usize) -> Self {
        MonomialPrime { vars: (0..n).collect() }
    }

    pub(crate) fn from_mask(mask: u64) -> Self {
        MonomialPrime {
            vars: (0..64).filter(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    /// Number of variables, the dimension of the localized ring.
    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn mask(&self) -> u64 {
        self.vars.iter().fold(0, |m, &v| m | 1 << v)
    }

    /// `I ⊆ P`: every generator involves a variable of `P`.
    pub fn contains_ideal(&self, ideal: &MonomialIdeal) -> bool {
        let mask = self.mask();
        ideal.generators().iter().all(|g| g.support_mask() & mask != 0)
    }

    /// Carry a monomial of the localized ring back to `n` variables.
    pub fn lift(&self, u: &Monomial, n: usize) -> Monomial {
        let mut exps = vec![0; n];
        for (k, &v) in self.vars.iter().enumerate() {
            exps[v] = u.exp(k);
        }
        Monomial::new(exps)
    }

    /// Ideal `(x_i : i ∈ P)` in `n` variables.
    pub fn as_ideal(&self, n: usize) -> MonomialIdeal {
        MonomialIdeal::from_candidates(n, self.vars.iter().map(|&v| Monomial::var(n, v)).collect())
    }
}

impl Ord for MonomialPrime {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.vars.len().cmp(&other.vars.len()).then_with(|| self.vars.cmp(&other.vars))
    }
}

impl PartialOrd for MonomialPrime {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MonomialPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.vars.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{}", v + 1)?;
        }
        write!(f, ")")
    }
}

impl Serialize for MonomialPrime {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `I(P)`: set the variables outside `P` to `1`, re-index to `|P|` variables.
pub fn monomial_localization(ideal: &MonomialIdeal, prime: &MonomialPrime) -> MonomialIdeal {
    let vars = prime.vars();
    if ideal.is_zero() {
        return MonomialIdeal::zero(vars.len());
    }
    let gens = ideal
        .generators()
        .iter()
        .map(|g| Monomial::new(vars.iter().map(|&v| g.exp(v)).collect()))
        .collect();
    MonomialIdeal::from_candidates(vars.len(), gens)
}

/// Monomial basis of `(I : m) / I`.
///
/// Equivalent to `G(∩_i (I : x_i)) \ I`; computed by scanning the staircase
/// for standard monomials whose every upper neighbour lies in `I`.
pub fn socle_basis(ideal: &MonomialIdeal) -> Result<Vec<Monomial>> {
    socle_scan(ideal, false)
}

/// Whether `(I : m) / I` is nonzero, i.e. the maximal ideal is associated to `I`.
pub fn has_socle(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(!socle_scan(ideal, true)?.is_empty())
}

fn socle_scan(ideal: &MonomialIdeal, first_only: bool) -> Result<Vec<Monomial>> {
    if ideal.is_unit() {
        return Err(Error::input("the unit ideal has no socle"));
    }
    if ideal.is_zero() {
        return Ok(if ideal.n() == 0 { vec![Monomial::one(0)] } else { Vec::new() });
    }
    Ok(MembershipTable::new(ideal)?.socle_monomials(first_only))
}

/// `P ∈ Ass(I^k)`.
pub fn is_associated(ideal: &MonomialIdeal, prime: &MonomialPrime, k: u32) -> Result<bool> {
    let local = monomial_localization(ideal, prime);
    if local.is_unit() || local.is_zero() {
        return Ok(false);
    }
    has_socle(&local.power(k))
}

/// Monomial primes containing `I` whose variables all lie in `supp(I)`, in
/// canonical order (size, then lexicographic).
///
/// Primes with variables outside the support never carry associated primes,
/// and their localizations only differ by unused variables.
pub fn candidate_primes(ideal: &MonomialIdeal) -> Result<Vec<MonomialPrime>> {
    let support = ideal.support();
    if support.len() > MAX_PRIME_SEARCH_VARIABLES {
        return Err(Error::capability(format!(
            "prime enumeration limited to {MAX_PRIME_SEARCH_VARIABLES} variables in the support, ideal uses {}",
            support.len()
        )));
    }
    if ideal.is_unit() || ideal.is_zero() {
        return Ok(Vec::new());
    }
    let masks: Vec<u64> = ideal.generators().iter().map(Monomial::support_mask).collect();
    let s = support.len();
    let mut out: Vec<MonomialPrime> = (1u64..1 << s)
        .map(|sub| {
            (0..s)
                .filter(|k| sub >> k & 1 == 1)
                .fold(0u64, |m, k| m | 1 << support[k])
        })
        .filter(|&p| masks.iter().all(|&g| g & p != 0))
        .map(MonomialPrime::from_mask)
        .collect();
    out.sort();
    Ok(out)
}

/// `Ass(I^k)` in canonical order.
pub fn ass(ideal: &MonomialIdeal, k: u32) -> Result<Vec<MonomialPrime>> {
    let profile = ass_by_prime(ideal, k)?;
    Ok(profile.into_iter().filter_map(|(p, flags)| flags[k as usize - 1].then_some(p)).collect())
}

/// For each candidate prime, membership in `Ass(I^j)` for `j = 1..=k`.
fn ass_by_prime(ideal: &MonomialIdeal, k: u32) -> Result<Vec<(MonomialPrime, Vec<bool>)>> {
    if k == 0 {
        return Err(Error::input("powers start at 1"));
    }
    let primes = candidate_primes(ideal)?;
    primes
        .into_par_iter()
        .map(|p| {
            let local = monomial_localization(ideal, &p);
            let mut flags = Vec::with_capacity(k as usize);
            let mut power = local.clone();
            for j in 1..=k {
                if j > 1 {
                    power = power.multiply(&local);
                }
                flags.push(has_socle(&power)?);
            }
            Ok((p, flags))
        })
        .collect()
}

/// `Ass(I^k)` for `k = 1..=K` with the stability index observed in that range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssProfile {
    pub horizon: u32,
    /// Entry `k - 1` is `Ass(I^k)`.
    pub per_power: Vec<Vec<MonomialPrime>>,
    /// Least `k` such that `Ass(I^j)` is constant for `k <= j <= K`.
    pub astab: u32,
    pub certified: bool,
    /// Names the certificate, or carries the horizon qualifier.
    pub certificate: String,
}

impl AssProfile {
    pub fn stable_set(&self) -> &[MonomialPrime] {
        self.per_power.last().map_or(&[], Vec::as_slice)
    }

    /// `Ass(I^k) ⊆ Ass(I^{k+1})` for `k = 1..K-1`.
    pub fn chain(&self) -> Vec<bool> {
        self.per_power
            .windows(2)
            .map(|w| w[0].iter().all(|p| w[1].contains(p)))
            .collect()
    }
}

/// Least index from which a sequence is constant.
pub(crate) fn tail_start<T: PartialEq>(values: &[T]) -> u32 {
    let Some(last) = values.last() else { return 1 };
    let mut k = values.len();
    while k > 1 && values[k - 2] == *last {
        k -= 1;
    }
    k as u32
}

/// Compute `Ass(I^k)` up to `horizon` and the observed stability index.
///
/// With `certify_polymatroidal`, a polymatroidal ideal observed up to at least
/// `ℓ(I) - 1` gets a certified index: its associated primes are constant from
/// that power on.
pub fn ass_profile(ideal: &MonomialIdeal, horizon: u32, certify_polymatroidal: bool) -> Result<AssProfile> {
    if horizon == 0 {
        return Err(Error::input("horizon must be at least 1"));
    }
    let by_prime = ass_by_prime(ideal, horizon)?;
    let per_power: Vec<Vec<MonomialPrime>> = (0..horizon as usize)
        .map(|j| by_prime.iter().filter(|(_, f)| f[j]).map(|(p, _)| p.clone()).collect())
        .collect();
    let astab = tail_start(&per_power);
    let (certified, certificate) = if certify_polymatroidal && is_polymatroidal(ideal) {
        let spread = analytic_spread(ideal)?;
        if horizon as usize + 1 >= spread {
            (
                true,
                format!(
                    "polymatroidal stability bound: Ass(I^k) is constant for k >= max(analytic spread - 1, 1) = {}",
                    spread.saturating_sub(1).max(1)
                ),
            )
        } else {
            (
                false,
                format!("within horizon {horizon}; certification needs horizon >= {}", spread - 1),
            )
        }
    } else {
        (false, format!("within horizon {horizon}"))
    };
    Ok(AssProfile { horizon, per_power, astab, certified, certificate })
}

/// `Ass^∞(I)` of a polymatroidal ideal: primes `P ⊇ I` with `ℓ(I(P)) = |P|`.
pub fn stable_primes_polymatroidal(ideal: &MonomialIdeal) -> Result<Vec<MonomialPrime>> {
    if !is_polymatroidal(ideal) {
        return Err(Error::capability(
            "the stable-prime criterion is only certified for polymatroidal ideals",
        ));
    }
    let mut out = Vec::new();
    for p in candidate_primes(ideal)? {
        let local = monomial_localization(ideal, &p);
        if analytic_spread(&local)? == p.len() {
            out.push(p);
        }
    }
    Ok(out)
}
