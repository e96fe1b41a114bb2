//! Orchestrated analysis of one ideal, rendered as a key-sorted JSON report.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homology::{depth, depth_stability, FieldChoice};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::persistence::{persistence_check, strong_persistence_check, PowerTable, StrongPersistence, WitnessMode};
use crate::polymatroid::{
    analytic_spread, analytic_spread_via_gamma, is_polymatroidal, localization_spread_check,
};
use crate::primes::{ass_profile, socle_basis, stable_primes_polymatroidal, MonomialPrime};
use crate::relation_graph::{depth_upper_bounds, socle_witness, RelationGraph};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_HORIZON: u32 = 4;

/// Which sections to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Checks {
    pub gamma: bool,
    pub spread: bool,
    pub ass: bool,
    pub depth: bool,
    pub persistence: bool,
}

impl Checks {
    pub fn all() -> Self {
        Checks { gamma: true, spread: true, ass: true, depth: true, persistence: true }
    }

    pub fn none() -> Self {
        Checks { gamma: false, spread: false, ass: false, depth: false, persistence: false }
    }
}

impl Default for Checks {
    fn default() -> Self {
        Self::all()
    }
}

#[derive(Clone, Debug, Default)]
pub struct AnalysisConfig {
    /// `None` picks the analytic spread for polymatroidal ideals and
    /// [`DEFAULT_HORIZON`] otherwise.
    pub horizon: Option<u32>,
    pub field: FieldChoice,
    pub checks: Checks,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisReport {
    pub horizon: u32,
    /// Failures of properties the analysis checked, in plain words.
    pub counterexamples: Vec<String>,
    pub warnings: Vec<String>,
    /// Sections that could not be computed, with the error that stopped them.
    pub failed_sections: Vec<(String, Error)>,
    pub json: Value,
}

impl AnalysisReport {
    /// Pretty-printed JSON with a trailing newline; byte-deterministic.
    pub fn to_pretty_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("report serializes");
        s.push('\n');
        s
    }
}

/// The field compared against the chosen one for field-sensitivity warnings.
pub fn alternate_field(field: FieldChoice) -> FieldChoice {
    match field {
        FieldChoice::Rationals => FieldChoice::Prime(2),
        FieldChoice::Prime(_) => FieldChoice::Rationals,
    }
}

fn horizon_qualifier(k: u32) -> String {
    format!("within horizon {k}")
}

fn show(u: &Monomial, names: &[String]) -> String {
    u.display_with(names).to_string()
}

fn show_prime(p: &MonomialPrime, names: &[String]) -> String {
    let vars: Vec<&str> = p.vars().iter().map(|&v| names[v].as_str()).collect();
    format!("({})", vars.join(", "))
}

fn show_local(u: &Monomial, p: &MonomialPrime, names: &[String]) -> String {
    let local: Vec<String> = p.vars().iter().map(|&v| names[v].clone()).collect();
    show(u, &local)
}

struct Ctx<'a> {
    ideal: &'a MonomialIdeal,
    names: &'a [String],
    horizon: u32,
    field: FieldChoice,
    polymatroidal: bool,
    spread: Option<usize>,
    counterexamples: Vec<String>,
    warnings: Vec<String>,
    failed: Vec<(String, Error)>,
}

impl Ctx<'_> {
    fn section(&mut self, name: &str, f: impl FnOnce(&mut Self) -> Result<Value>) -> Value {
        match f(self) {
            Ok(v) => v,
            Err(e) => {
                self.warnings.push(format!("{name}: {e}"));
                self.failed.push((name.to_string(), e));
                Value::Null
            }
        }
    }
}

/// Run the requested checks on `ideal` and assemble the report.
///
/// Guard errors inside a section become warnings and leave that section
/// `null`; the rest of the report is still produced.
pub fn run_analysis(ideal: &MonomialIdeal, names: &[String], config: &AnalysisConfig) -> AnalysisReport {
    assert_eq!(names.len(), ideal.n(), "one name per variable");
    let polymatroidal = is_polymatroidal(ideal);
    let spread = ideal
        .equigenerated_degree()
        .filter(|_| !ideal.is_unit())
        .and_then(|_| analytic_spread(ideal).ok());
    let (horizon, horizon_source) = match config.horizon {
        Some(k) => (k.max(1), "requested"),
        None if polymatroidal => (spread.unwrap_or(1).max(1) as u32, "analytic spread (polymatroidal default)"),
        None => (DEFAULT_HORIZON, "default"),
    };
    let mut ctx = Ctx {
        ideal,
        names,
        horizon,
        field: config.field,
        polymatroidal,
        spread,
        counterexamples: Vec::new(),
        warnings: Vec::new(),
        failed: Vec::new(),
    };
    if !ideal.is_proper() || ideal.is_zero() {
        ctx.warnings.push("the ideal is zero or the unit ideal; only the ideal echo is reported".into());
    }
    let analyzable = ideal.is_proper() && !ideal.is_zero();
    let checks = config.checks;

    let mut table = PowerTable::new(ideal);
    let ideal_section = ideal_echo(ideal, names, polymatroidal);
    let gamma = if checks.gamma && analyzable { ctx.section("gamma", gamma_section) } else { Value::Null };
    let spread_v = if checks.spread && analyzable { ctx.section("spread", spread_section) } else { Value::Null };
    let ass = if checks.ass && analyzable { ctx.section("ass", ass_section) } else { Value::Null };
    let depth_v = if checks.depth && analyzable {
        ctx.section("depth", |c| depth_section(c, &mut table))
    } else {
        Value::Null
    };
    let persistence = if checks.persistence && analyzable {
        ctx.section("persistence", |c| persistence_section(c, &mut table))
    } else {
        Value::Null
    };

    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "field": config.field.to_string(),
        "horizon": horizon,
        "horizon_source": horizon_source,
        "ideal": ideal_section,
        "gamma": gamma,
        "spread": spread_v,
        "ass": ass,
        "depth": depth_v,
        "persistence": persistence,
        "counterexamples": ctx.counterexamples,
        "warnings": ctx.warnings,
    });
    AnalysisReport {
        horizon,
        counterexamples: ctx.counterexamples,
        warnings: ctx.warnings,
        failed_sections: ctx.failed,
        json,
    }
}

fn ideal_echo(ideal: &MonomialIdeal, names: &[String], polymatroidal: bool) -> Value {
    json!({
        "n": ideal.n(),
        "variables": names,
        "generators": ideal.generators().iter().map(|g| show(g, names)).collect::<Vec<_>>(),
        "generator_count": ideal.len(),
        "equigenerated_degree": ideal.equigenerated_degree(),
        "squarefree": ideal.is_squarefree(),
        "polymatroidal": polymatroidal,
        "support": ideal.support().iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
    })
}

fn gamma_section(ctx: &mut Ctx) -> Result<Value> {
    let ideal = ctx.ideal;
    let names = ctx.names;
    let graph = RelationGraph::build(ideal);
    let comps = graph.components();
    let edges: Vec<Value> = graph
        .edges()
        .map(|(i, j)| {
            let w = graph.witness(i, j).expect("edge has a witness");
            json!({
                "edge": [names[i], names[j]],
                "witness": [show(&w.left, names), show(&w.right, names)],
            })
        })
        .collect();
    let forest = graph.ordered_spanning_forest();
    let bounds = match depth_upper_bounds(ideal) {
        Ok(b) => json!(b.iter().map(|(t, b)| json!({"power": t, "depth_at_most": b})).collect::<Vec<_>>()),
        Err(e) => {
            ctx.warnings.push(format!("gamma: depth bounds: {e}"));
            Value::Null
        }
    };
    let witness = match socle_witness(ideal) {
        Ok(w) => {
            if !w.verified {
                ctx.counterexamples.push(format!(
                    "the relation-graph socle monomial {} is not a socle element of I^{}",
                    show(&w.monomial, names),
                    w.power
                ));
            }
            json!({
                "monomial": show(&w.monomial, names),
                "power": w.power,
                "verified": w.verified,
                "next_power_verified": w.next_power_verified,
                "maximal_ideal_associated_from_power": {
                    "value": w.power,
                    "certified": w.verified && w.next_power_verified,
                    "basis": "spanning-tree socle construction with verified base case and one extra power",
                },
            })
        }
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    Ok(json!({
        "vertex_count": comps.vertex_count,
        "component_count": comps.component_count,
        "components": comps.parts.iter().map(|p| p.iter().map(|&v| names[v].clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "edges": edges,
        "witnesses_verified": graph.verify_witnesses(ideal),
        "spanning_forest": forest.edges.iter().map(|e| json!({
            "anchor": names[e.anchor],
            "free": names[e.free],
            "multiplier": show(&e.multiplier, names),
            "partner": show(&e.partner, names),
        })).collect::<Vec<_>>(),
        "free_vertex_property": forest.has_free_vertex_property(),
        "depth_upper_bounds": bounds,
        "socle_witness": witness,
    }))
}

fn spread_section(ctx: &mut Ctx) -> Result<Value> {
    let ideal = ctx.ideal;
    let value = analytic_spread(ideal)?;
    let via = analytic_spread_via_gamma(ideal);
    if ctx.polymatroidal && via.value != value {
        ctx.counterexamples.push(format!(
            "polymatroidal ideal with analytic spread {value} but r - s + 1 = {}",
            via.value
        ));
    }
    if via.value > value {
        ctx.counterexamples.push(format!("r - s + 1 = {} exceeds the analytic spread {value}", via.value));
    }
    let localization = if ctx.polymatroidal {
        let check = localization_spread_check(ideal)?;
        if !check.holds {
            ctx.counterexamples.push("a monomial localization has larger analytic spread".into());
        }
        json!({
            "holds": check.holds,
            "primes_checked": check.table.len(),
            "max_local_spread": check.table.iter().map(|r| r.spread).max(),
        })
    } else {
        Value::Null
    };
    Ok(json!({
        "value": value,
        "method": "rank of the exponent matrix",
        "certified": true,
        "basis": "exact rank over QQ for an equigenerated ideal",
        "via_gamma": {
            "value": via.value,
            "exact": via.exact,
            "basis": if via.exact { "r - s + 1, equality for polymatroidal ideals" } else { "r - s + 1, lower bound only" },
        },
        "localization_check": localization,
    }))
}

fn ass_section(ctx: &mut Ctx) -> Result<Value> {
    let names = ctx.names;
    let profile = ass_profile(ctx.ideal, ctx.horizon, true)?;
    let stable = if ctx.polymatroidal {
        let primes = stable_primes_polymatroidal(ctx.ideal)?;
        if profile.certified && primes.as_slice() != profile.stable_set() {
            ctx.counterexamples.push("stable primes from localization spreads disagree with Ass at the horizon".into());
        }
        json!(primes.iter().map(|p| show_prime(p, names)).collect::<Vec<_>>())
    } else {
        Value::Null
    };
    if let (true, Some(spread)) = (profile.certified, ctx.spread) {
        if profile.astab as usize >= spread.max(2) {
            ctx.counterexamples.push(format!("astab {} is not below the analytic spread {spread}", profile.astab));
        }
    }
    let chain = profile.chain();
    Ok(json!({
        "per_power": profile.per_power.iter().enumerate().map(|(k, ps)| json!({
            "power": k + 1,
            "primes": ps.iter().map(|p| show_prime(p, names)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "astab": {
            "value": profile.astab,
            "certified": profile.certified,
            "basis": profile.certificate,
        },
        "ascending": chain.iter().all(|&b| b),
        "stable_primes_from_spread": stable,
    }))
}

fn depth_section(ctx: &mut Ctx, table: &mut PowerTable) -> Result<Value> {
    let ideal = ctx.ideal;
    let k = ctx.horizon;
    table.fill(k);
    let field = ctx.field;
    let other = alternate_field(field);
    let mut values = Vec::with_capacity(k as usize);
    let mut other_values = Vec::with_capacity(k as usize);
    for j in 1..=k {
        values.push(depth(table.get(j), field)?);
        other_values.push(depth(table.get(j), other)?);
    }
    let stability = depth_stability(ideal, values.clone(), field, true)?;
    if ctx.polymatroidal && !stability.certified && k as usize + 1 >= ctx.spread.unwrap_or(0) {
        ctx.counterexamples.push(format!("depth certification failed: {}", stability.certificate));
    }
    if let Ok(bounds) = depth_upper_bounds(ideal) {
        for (t, b) in bounds {
            if t <= k && values[t as usize - 1] > b as usize {
                ctx.counterexamples.push(format!(
                    "depth S/I^{t} = {} over {field} exceeds the relation-graph bound {b}",
                    values[t as usize - 1]
                ));
            }
        }
    }
    for j in 1..=k as usize {
        let zero = values[j - 1] == 0;
        let socle = !socle_basis(table.get(j as u32))?.is_empty();
        if zero != socle {
            ctx.counterexamples.push(format!("depth zero and nonzero socle disagree at power {j}"));
        }
    }
    let non_increasing = values.windows(2).all(|w| w[0] >= w[1]);
    let differs = values != other_values;
    if differs {
        ctx.warnings.push(format!("depth depends on the field: {field} gives {values:?}, {other} gives {other_values:?}"));
    }
    let entries = |vals: &[usize], f: FieldChoice| -> Vec<Value> {
        vals.iter()
            .enumerate()
            .map(|(j, d)| json!({"power": j + 1, "depth": d, "field": f.to_string()}))
            .collect()
    };
    Ok(json!({
        "field": field.to_string(),
        "per_power": entries(&values, field),
        "non_increasing": non_increasing,
        "non_increasing_basis": horizon_qualifier(k),
        "dstab": {
            "value": stability.dstab,
            "field": field.to_string(),
            "certified": stability.certified,
            "basis": stability.certificate,
        },
        "limit_value": ctx.spread.filter(|_| ctx.polymatroidal).map(|s| json!({
            "value": ideal.n() - s,
            "field": field.to_string(),
            "basis": "n - analytic spread for polymatroidal ideals",
        })),
        "alternate_field": {
            "field": other.to_string(),
            "differs": differs,
            "per_power": if differs { json!(entries(&other_values, other)) } else { Value::Null },
        },
    }))
}

fn strong_json(s: &StrongPersistence, names: &[String]) -> Value {
    json!({
        "holds": s.holds,
        "per_power": s.per_power,
        "basis": horizon_qualifier(s.horizon),
        "witness": s.witness.as_ref().map(|w| json!({
            "prime": show_prime(&w.prime, names),
            "power": w.power,
            "local_socle_monomial": show_local(&w.local, &w.prime, names),
            "global_monomial": show(&w.global, names),
        })),
    })
}

fn persistence_section(ctx: &mut Ctx, table: &mut PowerTable) -> Result<Value> {
    let ideal = ctx.ideal;
    let names = ctx.names;
    let k = ctx.horizon;
    table.fill(k + 1);
    let ratliff: Vec<bool> = (1..=k)
        .map(|j| Ok(table.get(j + 1).colon_ideal(ideal)? == *table.get(j)))
        .collect::<Result<_>>()?;
    let socle_dims: Vec<usize> = (1..=k).map(|j| Ok(socle_basis(table.get(j))?.len())).collect::<Result<_>>()?;
    let strong = strong_persistence_check(ideal, k, WitnessMode::ForAll)?;
    let weak = strong_persistence_check(ideal, k, WitnessMode::Exists)?;
    let chain = persistence_check(ideal, k)?;
    for (j, ok) in ratliff.iter().enumerate() {
        if !ok {
            ctx.counterexamples.push(format!("I^{} : I differs from I^{}", j + 2, j + 1));
        }
    }
    if let Some(w) = &strong.witness {
        ctx.counterexamples.push(format!(
            "strong persistence fails at {} for power {}: socle monomial {} is absorbed by I",
            show_prime(&w.prime, names),
            w.power,
            show_local(&w.local, &w.prime, names)
        ));
    }
    for (j, ok) in chain.iter().enumerate() {
        if !ok {
            ctx.counterexamples.push(format!("Ass(I^{}) is not contained in Ass(I^{})", j + 1, j + 2));
        }
    }
    let agrees = ratliff == strong.per_power;
    if !agrees {
        ctx.counterexamples.push("Ratliff check and per-prime strong persistence search disagree".into());
    }
    Ok(json!({
        "ratliff": {"per_power": ratliff, "basis": horizon_qualifier(k)},
        "strong_persistence": strong_json(&strong, names),
        "weak_witness_condition": strong_json(&weak, names),
        "persistence_chain": {"per_power": chain, "basis": horizon_qualifier(k)},
        "socle_dimensions": {"per_power": socle_dims, "basis": "observation"},
        "ratliff_agrees_with_strong_persistence": agrees,
    }))
}
