//! Built-in examples with golden expectations on their analysis reports.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::parse::parse_ideal;
use crate::report::{run_analysis, AnalysisConfig, AnalysisReport};

const GOLDEN: &str = include_str!("../corpus/golden.json");

/// Report fields pinned by the golden file.
pub const GOLDEN_POINTERS: &[&str] = &[
    "/ideal/generator_count",
    "/ideal/equigenerated_degree",
    "/ideal/polymatroidal",
    "/gamma/vertex_count",
    "/gamma/component_count",
    "/gamma/socle_witness/monomial",
    "/spread/value",
    "/spread/via_gamma/value",
    "/ass/astab",
    "/depth/per_power",
    "/depth/dstab",
    "/depth/alternate_field/per_power",
    "/persistence/ratliff/per_power",
    "/persistence/strong_persistence/holds",
    "/persistence/strong_persistence/witness",
    "/persistence/persistence_chain/per_power",
    "/persistence/socle_dimensions/per_power",
    "/counterexamples",
];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
    pub horizon: Option<u32>,
}

const RP2: &str = "\
# Stanley-Reisner ideal of the six-vertex triangulation of the real projective plane
vars x1..x6
x1*x2*x3, x1*x2*x4, x1*x3*x5, x1*x4*x6, x1*x5*x6
x2*x3*x6, x2*x4*x5, x2*x5*x6, x3*x4*x5, x3*x4*x6
";

const FIGURE_ONE: &str = "\
# 4-cycle, a bridge and a triangle; variables index the edges
graphic_matroid graph 7: 1-2 2-3 3-4 4-1 2-5 5-6 6-7 7-5
";

pub fn corpus_entries() -> Vec<CorpusEntry> {
    let e = |name, source, horizon| CorpusEntry { name, source, horizon };
    vec![
        e("rp2", RP2, Some(3)),
        e("c5", "edge_ideal cycle 5", Some(4)),
        e("c6", "edge_ideal cycle 6", Some(4)),
        e("c7", "edge_ideal cycle 7", Some(3)),
        e("figure1_graphic", FIGURE_ONE, None),
        e("transversal_12_23", "transversal 3: 1,2 | 2,3", None),
        e("transversal_12_34", "transversal 4: 1,2 | 3,4", None),
        e("transversal_123_34_45", "transversal 5: 1,2,3 | 3,4 | 4,5", None),
        e("transversal_12_23_34_45", "transversal 5: 1,2 | 2,3 | 3,4 | 4,5", None),
        e("veronese_3_2_111", "veronese 3 d=2 c=1,1,1", None),
        e("veronese_3_2_222", "veronese 3 d=2 c=2,2,2", None),
        e("veronese_4_2_1111", "veronese 4 d=2 c=1,1,1,1", None),
        e("veronese_4_3_2111", "veronese 4 d=3 c=2,1,1,1", None),
        e("veronese_5_3_22111", "veronese 5 d=3 c=2,2,1,1,1", None),
    ]
}

pub fn entry(name: &str) -> Option<CorpusEntry> {
    corpus_entries().into_iter().find(|e| e.name == name)
}

pub fn analyze_entry(entry: &CorpusEntry) -> Result<AnalysisReport> {
    let parsed = parse_ideal(entry.source)?;
    let config = AnalysisConfig { horizon: entry.horizon, ..Default::default() };
    Ok(run_analysis(&parsed.ideal, &parsed.names, &config))
}

/// The golden expectations shipped with the crate.
pub fn golden() -> Value {
    serde_json::from_str(GOLDEN).expect("golden file is valid JSON")
}

fn pinned(report: &AnalysisReport) -> Value {
    let mut map = Map::new();
    for &p in GOLDEN_POINTERS {
        map.insert(p.to_string(), report.json.pointer(p).cloned().unwrap_or(Value::Null));
    }
    Value::Object(map)
}

/// Current values of the pinned fields for every entry.
pub fn corpus_snapshot() -> Result<Value> {
    let mut map = Map::new();
    for e in corpus_entries() {
        map.insert(e.name.to_string(), pinned(&analyze_entry(&e)?));
    }
    Ok(Value::Object(map))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub entry: String,
    pub pointer: String,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryOutcome {
    pub entry: String,
    pub mismatches: Vec<Mismatch>,
}

impl EntryOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub outcomes: Vec<EntryOutcome>,
}

impl CorpusSummary {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(EntryOutcome::passed)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Mismatch> {
        self.outcomes.iter().flat_map(|o| &o.mismatches)
    }
}

/// Compare every entry against the shipped golden file.
pub fn corpus_run() -> Result<CorpusSummary> {
    corpus_run_against(&golden())
}

/// Compare every entry against `expected`; entries missing from `expected`
/// are an error, so a truncated golden file cannot pass silently.
pub fn corpus_run_against(expected: &Value) -> Result<CorpusSummary> {
    let mut outcomes = Vec::new();
    for e in corpus_entries() {
        let want = expected
            .get(e.name)
            .and_then(Value::as_object)
            .ok_or_else(|| Error::input(format!("golden file has no entry '{}'", e.name)))?;
        let report = analyze_entry(&e)?;
        let mut mismatches = Vec::new();
        for (pointer, value) in want {
            let actual = report.json.pointer(pointer).cloned().unwrap_or(Value::Null);
            if actual != *value {
                mismatches.push(Mismatch {
                    entry: e.name.to_string(),
                    pointer: pointer.clone(),
                    expected: value.clone(),
                    actual,
                });
            }
        }
        outcomes.push(EntryOutcome { entry: e.name.to_string(), mismatches });
    }
    Ok(CorpusSummary { outcomes })
}
