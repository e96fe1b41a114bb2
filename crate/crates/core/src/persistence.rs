//! Ratliff condition, strong persistence and the persistence property, each
//! within a finite horizon of powers.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::primes::{ass_profile, candidate_primes, monomial_localization, socle_basis, MonomialPrime};

/// Memoized powers `I^1, …, I^K` of one ideal.
#[derive(Clone, Debug)]
pub struct PowerTable {
    powers: Vec<MonomialIdeal>,
}

impl PowerTable {
    pub fn new(ideal: &MonomialIdeal) -> Self {
        PowerTable { powers: vec![ideal.clone()] }
    }

    pub fn base(&self) -> &MonomialIdeal {
        &self.powers[0]
    }

    /// Make `I^1..=I^k` available.
    pub fn fill(&mut self, k: u32) {
        while self.powers.len() < k as usize {
            let next = self.powers.last().unwrap().multiply(&self.powers[0]);
            self.powers.push(next);
        }
    }

    /// `I^k`; panics if the table was not filled that far or `k = 0`.
    pub fn get(&self, k: u32) -> &MonomialIdeal {
        &self.powers[k as usize - 1]
    }

    pub fn filled(&self) -> u32 {
        self.powers.len() as u32
    }
}

fn require_proper(ideal: &MonomialIdeal) -> Result<()> {
    if !ideal.is_proper() || ideal.is_zero() {
        return Err(Error::input("expected a proper nonzero ideal"));
    }
    Ok(())
}

fn require_horizon(horizon: u32) -> Result<()> {
    if horizon == 0 {
        return Err(Error::input("horizon must be at least 1"));
    }
    Ok(())
}

/// Entry `k - 1` tells whether `I^{k+1} : I = I^k`, for `k = 1..=K`.
pub fn ratliff_check(ideal: &MonomialIdeal, horizon: u32) -> Result<Vec<bool>> {
    let mut table = PowerTable::new(ideal);
    ratliff_with(&mut table, horizon)
}

fn ratliff_with(table: &mut PowerTable, horizon: u32) -> Result<Vec<bool>> {
    require_proper(table.base())?;
    require_horizon(horizon)?;
    table.fill(horizon + 1);
    (1..=horizon)
        .map(|k| Ok(table.get(k + 1).colon_ideal(table.base())? == *table.get(k)))
        .collect()
}

/// Quantifier over socle monomials in the strong persistence test.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessMode {
    /// Every socle monomial must have a non-absorbing multiplier.
    #[default]
    ForAll,
    /// Some socle monomial must have one (the weak witness condition).
    Exists,
}

/// A socle monomial `u` of `I(P)^k` with `u * I(P) ⊆ I(P)^{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PersistenceWitness {
    pub prime: MonomialPrime,
    pub power: u32,
    /// `u` in the variables of `P`.
    pub local: Monomial,
    /// A monomial of `S` lying in `(I^{k+1} : I) \ I^k`, obtained from `u` by
    /// raising the variables outside `P` to the top exponent of `I^{k+1}`.
    pub global: Monomial,
}

impl PersistenceWitness {
    /// Re-check the witness with membership tests only.
    pub fn verify(&self, ideal: &MonomialIdeal) -> bool {
        let local = monomial_localization(ideal, &self.prime);
        let lk = local.power(self.power);
        let next = lk.multiply(&local);
        let in_socle = !lk.contains(&self.local)
            && (0..local.n()).all(|i| lk.contains(&self.local.times_var(i)));
        let absorbed = local.generators().iter().all(|v| next.contains(&self.local.mul(v)));
        let g_next = ideal.power(self.power + 1);
        let global_ok = !ideal.power(self.power).contains(&self.global)
            && ideal.generators().iter().all(|v| g_next.contains(&self.global.mul(v)));
        in_socle && absorbed && global_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongPersistence {
    pub mode: WitnessMode,
    pub horizon: u32,
    pub holds: bool,
    /// Entry `k - 1`: the condition holds at power `k` for every prime.
    pub per_power: Vec<bool>,
    /// First violation in the order (power, prime).
    pub witness: Option<PersistenceWitness>,
}

/// Search every `P ∈ V*(I)` and `k <= K` for socle monomials `u` of `I(P)^k`
/// absorbed by `I(P)` into `I(P)^{k+1}`.
pub fn strong_persistence_check(ideal: &MonomialIdeal, horizon: u32, mode: WitnessMode) -> Result<StrongPersistence> {
    require_proper(ideal)?;
    require_horizon(horizon)?;
    let primes = candidate_primes(ideal)?;
    let per_prime: Vec<Vec<Option<Monomial>>> = primes
        .par_iter()
        .map(|p| violations_at(&monomial_localization(ideal, p), horizon, mode))
        .collect::<Result<_>>()?;
    let mut per_power = vec![true; horizon as usize];
    let mut witness = None;
    for k in 1..=horizon {
        for (p, found) in primes.iter().zip(&per_prime) {
            if let Some(u) = &found[k as usize - 1] {
                per_power[k as usize - 1] = false;
                if witness.is_none() {
                    witness = Some(PersistenceWitness {
                        prime: p.clone(),
                        power: k,
                        local: u.clone(),
                        global: lift_witness(ideal, p, u, k),
                    });
                }
            }
        }
    }
    Ok(StrongPersistence { mode, horizon, holds: witness.is_none(), per_power, witness })
}

fn violations_at(local: &MonomialIdeal, horizon: u32, mode: WitnessMode) -> Result<Vec<Option<Monomial>>> {
    let mut table = PowerTable::new(local);
    table.fill(horizon + 1);
    (1..=horizon)
        .map(|k| {
            let socle = socle_basis(table.get(k))?;
            let next = table.get(k + 1);
            let mut absorbed = socle
                .iter()
                .filter(|u| local.generators().iter().all(|v| next.contains(&u.mul(v))));
            Ok(match mode {
                WitnessMode::ForAll => absorbed.next().cloned(),
                WitnessMode::Exists => {
                    let all = absorbed.count() == socle.len();
                    if all { socle.first().cloned() } else { None }
                }
            })
        })
        .collect()
}

fn lift_witness(ideal: &MonomialIdeal, prime: &MonomialPrime, u: &Monomial, k: u32) -> Monomial {
    let top = ideal.lcm_of_generators();
    let mut exps = vec![0u32; ideal.n()];
    for (i, e) in exps.iter_mut().enumerate() {
        *e = top.exp(i) * (k + 1);
    }
    for (local, &v) in prime.vars().iter().enumerate() {
        exps[v] = u.exp(local);
    }
    Monomial::new(exps)
}

/// Entry `k - 1` tells whether `Ass(I^k) ⊆ Ass(I^{k+1})`, for `k = 1..K-1`.
pub fn persistence_check(ideal: &MonomialIdeal, horizon: u32) -> Result<Vec<bool>> {
    require_proper(ideal)?;
    require_horizon(horizon)?;
    Ok(ass_profile(ideal, horizon, false)?.chain())
}

/// `dim (I^k : m) / I^k` for `k = 1..=K`.
pub fn socle_dimension_profile(ideal: &MonomialIdeal, horizon: u32) -> Result<Vec<usize>> {
    let mut table = PowerTable::new(ideal);
    socle_profile_with(&mut table, horizon)
}

fn socle_profile_with(table: &mut PowerTable, horizon: u32) -> Result<Vec<usize>> {
    require_proper(table.base())?;
    require_horizon(horizon)?;
    table.fill(horizon);
    (1..=horizon).map(|k| Ok(socle_basis(table.get(k))?.len())).collect()
}

/// All persistence checks over one horizon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PersistenceReport {
    pub horizon: u32,
    pub ratliff: Vec<bool>,
    pub strong_persistence: StrongPersistence,
    pub weak_witness_condition: StrongPersistence,
    pub persistence_chain: Vec<bool>,
    pub socle_dimensions: Vec<usize>,
    /// `ratliff[k]` agrees with `strong_persistence.per_power[k]` for every `k`.
    pub ratliff_agrees_with_strong_persistence: bool,
}

pub fn persistence_report(ideal: &MonomialIdeal, horizon: u32) -> Result<PersistenceReport> {
    let mut table = PowerTable::new(ideal);
    let ratliff = ratliff_with(&mut table, horizon)?;
    let socle_dimensions = socle_profile_with(&mut table, horizon)?;
    let strong = strong_persistence_check(ideal, horizon, WitnessMode::ForAll)?;
    let weak = strong_persistence_check(ideal, horizon, WitnessMode::Exists)?;
    let persistence_chain = persistence_check(ideal, horizon)?;
    Ok(PersistenceReport {
        horizon,
        ratliff_agrees_with_strong_persistence: ratliff == strong.per_power,
        ratliff,
        strong_persistence: strong,
        weak_witness_condition: weak,
        persistence_chain,
        socle_dimensions,
    })
}
