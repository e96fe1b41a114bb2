use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use powerstab_core::corpus::{corpus_run, corpus_snapshot};
use powerstab_core::parse::{parse_ideal, ParsedIdeal};
use powerstab_core::relation_graph::RelationGraph;
use powerstab_core::report::{run_analysis, AnalysisConfig, AnalysisReport, Checks};
use powerstab_core::{Error, FieldChoice, MonomialIdeal};

const EXIT_COUNTEREXAMPLE: u8 = 1;

/// Persistence and stability invariants of powers of monomial ideals.
#[derive(Parser)]
#[command(name = "powerstab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check and print the full report.
    Analyze(ReportArgs),
    /// Print the colon ideal I : J.
    Colon {
        /// File holding I.
        ideal: PathBuf,
        /// File holding J.
        by: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Associated primes of I^k for k up to the horizon.
    Ass(ReportArgs),
    /// Depth function and its stability index.
    Depth(ReportArgs),
    /// Linear relation graph, depth bounds and socle witness.
    Gamma(ReportArgs),
    /// Analytic spread and its relation-graph estimate.
    Spread(ReportArgs),
    /// Ratliff condition, strong persistence and persistence of Ass.
    Persistence(ReportArgs),
    /// Check the built-in examples against their golden values.
    Corpus {
        #[arg(long)]
        json: bool,
        /// Print current values of the pinned fields instead of comparing.
        #[arg(long)]
        snapshot: bool,
    },
}

#[derive(Args)]
struct ReportArgs {
    /// Ideal file, or '-' for standard input.
    file: PathBuf,
    /// Largest power K examined.
    #[arg(long = "max-power", value_name = "K")]
    max_power: Option<u32>,
    /// Coefficient field: q (rationals) or fp:P.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: FieldChoice,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write the linear relation graph as DOT to PATH.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

fn parse_field(s: &str) -> Result<FieldChoice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn read_ideal(path: &Path) -> Result<ParsedIdeal, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("reading standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("reading {}: {e}", path.display())))?
    };
    Ok(parse_ideal(&text)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Core(e)) => {
            eprintln!("powerstab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("powerstab: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Analyze(a) => report_command(a, Checks::all(), &ALL_SECTIONS),
        Command::Ass(a) => report_command(a, Checks { ass: true, ..Checks::none() }, &["ass"]),
        Command::Depth(a) => report_command(a, Checks { depth: true, ..Checks::none() }, &["depth"]),
        Command::Gamma(a) => report_command(a, Checks { gamma: true, ..Checks::none() }, &["gamma"]),
        Command::Spread(a) => report_command(a, Checks { spread: true, ..Checks::none() }, &["spread"]),
        Command::Persistence(a) => {
            report_command(a, Checks { persistence: true, ..Checks::none() }, &["persistence"])
        }
        Command::Colon { ideal, by, json } => {
            let (names, i, j) = common_ring(read_ideal(&ideal)?, read_ideal(&by)?)?;
            let c = i.colon_ideal(&j)?;
            let gens: Vec<String> = c.generators().iter().map(|g| g.display_with(&names).to_string()).collect();
            if json {
                print_json(&json!({ "generators": gens, "generator_count": gens.len() }));
            } else {
                for g in gens {
                    println!("{g}");
                }
            }
            Ok(0)
        }
        Command::Corpus { json, snapshot } => {
            if snapshot {
                print_json(&corpus_snapshot()?);
                return Ok(0);
            }
            let summary = corpus_run()?;
            if json {
                print_json(&serde_json::to_value(&summary).expect("summary serializes"));
            } else {
                for o in &summary.outcomes {
                    println!("{} {}", if o.passed() { "ok  " } else { "FAIL" }, o.entry);
                    for m in &o.mismatches {
                        println!("     {}: expected {} got {}", m.pointer, m.expected, m.actual);
                    }
                }
            }
            Ok(if summary.passed() { 0 } else { EXIT_COUNTEREXAMPLE })
        }
    }
}

fn pad(ideal: &MonomialIdeal, n: usize) -> Result<MonomialIdeal, Error> {
    MonomialIdeal::from_exponents(
        n,
        ideal.generators().iter().map(|g| {
            let mut e = g.exponents().to_vec();
            e.resize(n, 0);
            e
        }),
    )
}

/// Puts both ideals in the larger of their two rings, provided one variable
/// list extends the other.
fn common_ring(a: ParsedIdeal, b: ParsedIdeal) -> Result<(Vec<String>, MonomialIdeal, MonomialIdeal), Failure> {
    let (long, short) = if a.names.len() >= b.names.len() { (&a.names, &b.names) } else { (&b.names, &a.names) };
    if long[..short.len()] != short[..] {
        return Err(Failure::Core(Error::Input(format!(
            "variable lists differ: [{}] and [{}]",
            a.names.join(" "),
            b.names.join(" ")
        ))));
    }
    let n = long.len();
    Ok((long.clone(), pad(&a.ideal, n)?, pad(&b.ideal, n)?))
}

const ALL_SECTIONS: [&str; 5] = ["gamma", "spread", "ass", "depth", "persistence"];

fn report_command(args: ReportArgs, checks: Checks, sections: &[&str]) -> Result<u8, Failure> {
    let parsed = read_ideal(&args.file)?;
    if let Some(path) = &args.dot {
        let dot = RelationGraph::build(&parsed.ideal).to_dot(&parsed.names, true);
        fs::write(path, dot).map_err(|e| Failure::Io(format!("writing {}: {e}", path.display())))?;
    }
    let config = AnalysisConfig { horizon: args.max_power, field: args.field, checks };
    let report = run_analysis(&parsed.ideal, &parsed.names, &config);
    if args.json {
        print!("{}", report.to_pretty_string());
    } else {
        print_text(&report, sections);
    }
    if !report.counterexamples.is_empty() {
        return Ok(EXIT_COUNTEREXAMPLE);
    }
    if let Some((_, e)) = report.failed_sections.first() {
        return Ok(e.exit_code() as u8);
    }
    Ok(0)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("value serializes"));
}

fn flags(v: &Value) -> String {
    v.as_array()
        .map(|a| a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .unwrap_or_else(|| "-".into())
}

fn claim(v: &Value) -> String {
    let tag = if v["certified"] == true { "certified" } else { "not certified" };
    format!("{} ({tag}: {})", v["value"], v["basis"].as_str().unwrap_or(""))
}

fn print_text(report: &AnalysisReport, sections: &[&str]) {
    let j = &report.json;
    let ideal = &j["ideal"];
    let degree = match ideal["equigenerated_degree"].as_u64() {
        Some(d) => format!("generated in degree {d}"),
        None => "not equigenerated".into(),
    };
    println!(
        "ideal: {} generators in {} variables, {degree}, {}",
        ideal["generator_count"],
        ideal["n"],
        if ideal["polymatroidal"] == true { "polymatroidal" } else { "not polymatroidal" }
    );
    println!("horizon: {} ({})", j["horizon"], j["horizon_source"].as_str().unwrap_or(""));
    for s in sections {
        let v = &j[*s];
        if v.is_null() {
            continue;
        }
        match *s {
            "gamma" => {
                println!("relation graph: {} vertices, {} components, {} edges", v["vertex_count"], v["component_count"], v["edges"].as_array().map_or(0, Vec::len));
                for e in v["edges"].as_array().into_iter().flatten() {
                    println!("  {} -- {}", e["edge"][0].as_str().unwrap_or(""), e["edge"][1].as_str().unwrap_or(""));
                }
                if let Some(bounds) = v["depth_upper_bounds"].as_array() {
                    let list: Vec<String> = bounds.iter().map(|b| format!("k={}: <= {}", b["power"], b["depth_at_most"])).collect();
                    println!("depth bounds: {}", if list.is_empty() { "none".into() } else { list.join(", ") });
                }
                let w = &v["socle_witness"];
                if let Some(m) = w["monomial"].as_str() {
                    println!("socle witness of I^{}: {m} (verified: {})", w["power"], w["verified"]);
                } else if let Some(why) = w["unavailable"].as_str() {
                    println!("socle witness: unavailable ({why})");
                }
            }
            "spread" => {
                println!("analytic spread: {} (rank of the exponent matrix)", v["value"]);
                println!("r - s + 1: {} ({})", v["via_gamma"]["value"], v["via_gamma"]["basis"].as_str().unwrap_or(""));
                if !v["localization_check"].is_null() {
                    println!("localizations within spread: {}", v["localization_check"]["holds"]);
                }
            }
            "ass" => {
                for e in v["per_power"].as_array().into_iter().flatten() {
                    let primes: Vec<String> = e["primes"].as_array().into_iter().flatten().filter_map(|p| p.as_str().map(String::from)).collect();
                    println!("Ass(I^{}): {}", e["power"], primes.join(" "));
                }
                println!("astab: {}", claim(&v["astab"]));
            }
            "depth" => {
                let field = v["field"].as_str().unwrap_or("");
                let values: Vec<String> = v["per_power"].as_array().into_iter().flatten().map(|e| e["depth"].to_string()).collect();
                println!("depth S/I^k over {field}, k = 1..: {}", values.join(" "));
                println!("dstab over {field}: {}", claim(&v["dstab"]));
                let alt = &v["alternate_field"];
                if alt["differs"] == true {
                    let values: Vec<String> = alt["per_power"].as_array().into_iter().flatten().map(|e| e["depth"].to_string()).collect();
                    println!("depth S/I^k over {}: {}", alt["field"].as_str().unwrap_or(""), values.join(" "));
                }
            }
            "persistence" => {
                println!("ratliff I^(k+1):I = I^k: {}", flags(&v["ratliff"]["per_power"]));
                let sp = &v["strong_persistence"];
                println!("strong persistence: {} ({})", sp["holds"], sp["basis"].as_str().unwrap_or(""));
                if !sp["witness"].is_null() {
                    let w = &sp["witness"];
                    println!("  witness: prime {} power {} socle monomial {}", w["prime"].as_str().unwrap_or(""), w["power"], w["local_socle_monomial"].as_str().unwrap_or(""));
                }
                println!("weak witness condition: {}", v["weak_witness_condition"]["holds"]);
                println!("Ass(I^k) in Ass(I^(k+1)): {}", flags(&v["persistence_chain"]["per_power"]));
                println!("socle dimensions: {}", flags(&v["socle_dimensions"]["per_power"]));
            }
            _ => {}
        }
    }
    for c in &report.counterexamples {
        println!("counterexample: {c}");
    }
    for w in &report.warnings {
        println!("warning: {w}");
    }
}
