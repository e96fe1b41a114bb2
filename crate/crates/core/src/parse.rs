//! Text format for ideals.
//!
//! ```text
//! # comments start with '#'
//! vars x1..x6            # or: vars a b c
//! x1*x2*x3, x1^2*x4
//! (0,1,1,0,0,2)          # exponent vectors are accepted too
//! ```
//!
//! A file may instead (or additionally) hold one family directive:
//!
//! ```text
//! edge_ideal cycle 5
//! edge_ideal graph 4: 1-2 2-3 3-4
//! graphic_matroid graph 7: 1-2 2-3 3-4 4-1 2-5 5-6 6-7 7-5
//! transversal 4: 1,2 | 3,4
//! veronese 4 d=3 c=2,1,1,1
//! ```
//!
//! Without a `vars` line, names must be `x1, x2, …` and the ring is as large as
//! the highest index used.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::polymatroid::{graphic_matroid_ideal, transversal_ideal, veronese_type_ideal};

/// A parsed ideal together with its variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedIdeal {
    pub ideal: MonomialIdeal,
    pub names: Vec<String>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

/// Parse the text format into a minimalized ideal.
pub fn parse_ideal(text: &str) -> Result<ParsedIdeal> {
    let mut names: Option<Vec<String>> = None;
    let mut family: Option<(MonomialIdeal, usize)> = None;
    let mut pending: Vec<(usize, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let offset = body.len() - body.trim_start().len();
        let keyword = trimmed.split_whitespace().next().unwrap();
        let rest_at = offset + keyword.len();
        let rest = &body[rest_at..];
        match keyword {
            "vars" => {
                if names.is_some() {
                    return Err(syntax(line_no, offset + 1, "duplicate vars line"));
                }
                names = Some(parse_vars(rest, line_no, rest_at)?);
            }
            "edge_ideal" | "graphic_matroid" | "transversal" | "veronese" => {
                if family.is_some() {
                    return Err(syntax(line_no, offset + 1, "only one family directive is allowed"));
                }
                family = Some((parse_directive(keyword, rest, line_no, rest_at)?, line_no));
            }
            _ => pending.push((line_no, body.to_string())),
        }
    }

    let mut gens: Vec<Monomial> = Vec::new();
    let mut n_hint = names.as_ref().map(Vec::len);
    if let Some((ideal, line)) = &family {
        match n_hint {
            Some(n) if n != ideal.n() => {
                return Err(syntax(*line, 1, format!(
                    "directive builds an ideal in {} variables but {n} are declared",
                    ideal.n()
                )));
            }
            _ => n_hint = Some(ideal.n()),
        }
        gens.extend(ideal.generators().iter().cloned());
    }

    let mut raw_gens: Vec<(usize, usize, Term)> = Vec::new();
    for (line_no, body) in &pending {
        for (col, piece) in split_top_level(body) {
            raw_gens.push((*line_no, col, parse_term(piece, *line_no, col)?));
        }
    }

    let n = match n_hint {
        Some(n) => n,
        None => raw_gens
            .iter()
            .map(|(line, _, t)| t.implicit_width(*line))
            .try_fold(0usize, |acc, w| w.map(|w| acc.max(w)))?,
    };
    let names = names.unwrap_or_else(|| (1..=n).map(|i| format!("x{i}")).collect());
    for (line, col, term) in raw_gens {
        gens.push(term.resolve(&names, line, col)?);
    }
    let ideal = MonomialIdeal::minimalize(n, gens)?;
    Ok(ParsedIdeal { ideal, names })
}

fn parse_vars(rest: &str, line: usize, base: usize) -> Result<Vec<String>> {
    let mut names = Vec::new();
    for (col, tok) in tokens(rest, base) {
        if let Some((a, b)) = tok.split_once("..") {
            let (pa, ia) = split_index(a).ok_or_else(|| syntax(line, col, format!("bad range start '{a}'")))?;
            let (pb, ib) = split_index(b).ok_or_else(|| syntax(line, col, format!("bad range end '{b}'")))?;
            if pa != pb || ia > ib {
                return Err(syntax(line, col, format!("bad variable range '{tok}'")));
            }
            names.extend((ia..=ib).map(|i| format!("{pa}{i}")));
        } else if is_name(tok) {
            names.push(tok.to_string());
        } else {
            return Err(syntax(line, col, format!("bad variable name '{tok}'")));
        }
    }
    let distinct: BTreeSet<&String> = names.iter().collect();
    if distinct.len() != names.len() {
        return Err(syntax(line, base + 1, "repeated variable name"));
    }
    if names.is_empty() {
        return Err(syntax(line, base + 1, "vars line declares no variables"));
    }
    Ok(names)
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(s: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((base + st + 1, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn split_index(s: &str) -> Option<(&str, usize)> {
    let digits = s.len() - s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 || digits == s.len() {
        return None;
    }
    let (p, d) = s.split_at(s.len() - digits);
    is_name(p).then_some(())?;
    Some((p, d.parse().ok()?))
}

fn parse_usize(tok: &str, line: usize, col: usize, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| syntax(line, col, format!("expected {what}, found '{tok}'")))
}

fn parse_directive(keyword: &str, rest: &str, line: usize, base: usize) -> Result<MonomialIdeal> {
    let toks = tokens(rest, base);
    let missing = || syntax(line, base + 1, format!("incomplete {keyword} directive"));
    match keyword {
        "edge_ideal" | "graphic_matroid" => {
            let (col, kind) = *toks.first().ok_or_else(missing)?;
            let graph = match kind {
                "cycle" | "path" | "complete" => {
                    let (c, t) = *toks.get(1).ok_or_else(missing)?;
                    let k = parse_usize(t, line, c, "a vertex count")?;
                    if toks.len() > 2 {
                        return Err(syntax(line, toks[2].0, "unexpected token"));
                    }
                    let built = match kind {
                        "cycle" => SimpleGraph::cycle(k),
                        "path" => SimpleGraph::path(k),
                        _ => SimpleGraph::complete(k),
                    };
                    built.map_err(|e| syntax(line, c, e.to_string()))?
                }
                "graph" => parse_graph(&toks[1..], line, missing)?,
                _ => return Err(syntax(line, col, format!("unknown graph family '{kind}'"))),
            };
            if keyword == "edge_ideal" {
                Ok(graph.edge_ideal())
            } else {
                graphic_matroid_ideal(&graph)
            }
        }
        "transversal" => {
            let (c, t) = *toks.first().ok_or_else(missing)?;
            let n = parse_usize(t.trim_end_matches(':'), line, c, "a variable count")?;
            if !t.ends_with(':') {
                return Err(syntax(line, c + t.len(), "expected ':' after the variable count"));
            }
            let colon_at = rest.find(':').unwrap();
            let mut sets = Vec::new();
            let mut pos = colon_at + 1;
            for part in rest[colon_at + 1..].split('|') {
                let col = base + pos + 1;
                let mut set = BTreeSet::new();
                for item in part.split(',') {
                    let item = item.trim();
                    let v = parse_usize(item, line, col, "a variable index")?;
                    if v == 0 || v > n {
                        return Err(syntax(line, col, format!("variable index {v} outside 1..{n}")));
                    }
                    set.insert(v - 1);
                }
                sets.push(set);
                pos += part.len() + 1;
            }
            transversal_ideal(n, &sets)
        }
        "veronese" => {
            let (c, t) = *toks.first().ok_or_else(missing)?;
            let n = parse_usize(t, line, c, "a variable count")?;
            let mut degree = None;
            let mut bounds = None;
            for &(c, t) in &toks[1..] {
                if let Some(v) = t.strip_prefix("d=") {
                    degree = Some(parse_usize(v, line, c + 2, "a degree")? as u32);
                } else if let Some(v) = t.strip_prefix("c=") {
                    let list = v
                        .split(',')
                        .map(|x| parse_usize(x, line, c + 2, "a bound").map(|b| b as u32))
                        .collect::<Result<Vec<u32>>>()?;
                    bounds = Some(list);
                } else {
                    return Err(syntax(line, c, format!("unexpected token '{t}'")));
                }
            }
            let d = degree.ok_or_else(|| syntax(line, base + 1, "veronese directive needs d=D"))?;
            let bounds = bounds.unwrap_or_else(|| vec![d; n]);
            if bounds.len() != n {
                return Err(syntax(line, base + 1, format!("expected {n} bounds, found {}", bounds.len())));
            }
            veronese_type_ideal(n, d, &bounds)
        }
        _ => unreachable!(),
    }
}

fn parse_graph(toks: &[(usize, &str)], line: usize, missing: impl Fn() -> Error) -> Result<SimpleGraph> {
    let (c, t) = *toks.first().ok_or_else(&missing)?;
    let Some(count) = t.strip_suffix(':') else {
        return Err(syntax(line, c + t.len(), "expected ':' after the vertex count"));
    };
    let k = parse_usize(count, line, c, "a vertex count")?;
    let mut edges = Vec::new();
    for &(c, t) in &toks[1..] {
        let (a, b) = t.split_once('-').ok_or_else(|| syntax(line, c, format!("expected an edge like 1-2, found '{t}'")))?;
        let a = parse_usize(a, line, c, "a vertex")?;
        let b = parse_usize(b, line, c, "a vertex")?;
        if a == 0 || b == 0 {
            return Err(syntax(line, c, "vertices are numbered from 1"));
        }
        edges.push((a - 1, b - 1));
    }
    SimpleGraph::new(k, edges).map_err(|e| syntax(line, c, e.to_string()))
}

/// Split on commas outside parentheses, with 1-based columns of each piece.
fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out.into_iter()
        .map(|(st, p)| {
            let lead = p.len() - p.trim_start().len();
            (st + lead + 1, p.trim())
        })
        .collect()
}

enum Term {
    Vector(Vec<u32>),
    Product(Vec<(usize, String, u32)>),
}

impl Term {
    fn implicit_width(&self, line: usize) -> Result<usize> {
        match self {
            Term::Vector(v) => Ok(v.len()),
            Term::Product(fs) => fs.iter().try_fold(0, |acc, (c, name, _)| {
                match split_index(name) {
                    Some(("x", i)) if i >= 1 => Ok(acc.max(i)),
                    _ => Err(syntax(line, *c, format!("unknown variable '{name}' (declare it with a vars line)"))),
                }
            }),
        }
    }

    fn resolve(self, names: &[String], line: usize, col: usize) -> Result<Monomial> {
        let n = names.len();
        match self {
            Term::Vector(v) if v.len() == n => Ok(Monomial::new(v)),
            Term::Vector(v) => Err(syntax(line, col, format!("exponent vector has length {}, expected {n}", v.len()))),
            Term::Product(fs) => {
                let mut exps = vec![0u32; n];
                for (c, name, e) in fs {
                    let i = names
                        .iter()
                        .position(|x| *x == name)
                        .ok_or_else(|| syntax(line, c, format!("unknown variable '{name}'")))?;
                    exps[i] = exps[i]
                        .checked_add(e)
                        .ok_or_else(|| syntax(line, c, "exponent overflow"))?;
                }
                Ok(Monomial::new(exps))
            }
        }
    }
}

fn parse_term(s: &str, line: usize, col: usize) -> Result<Term> {
    if s.is_empty() {
        return Err(syntax(line, col, "empty generator"));
    }
    if let Some(inner) = s.strip_prefix('(') {
        let Some(inner) = inner.strip_suffix(')') else {
            return Err(syntax(line, col + s.len(), "expected ')'"));
        };
        let mut v = Vec::new();
        let mut pos = 1;
        for item in inner.split(',') {
            let t = item.trim();
            let c = col + pos + (item.len() - item.trim_start().len());
            v.push(t.parse::<u32>().map_err(|_| syntax(line, c, format!("expected a non-negative integer, found '{t}'")))?);
            pos += item.len() + 1;
        }
        return Ok(Term::Vector(v));
    }
    if s == "1" {
        return Ok(Term::Product(Vec::new()));
    }
    let mut factors = Vec::new();
    let mut pos = 0;
    for piece in s.split('*') {
        let c = col + pos + (piece.len() - piece.trim_start().len());
        let p = piece.trim();
        let (name, exp) = match p.split_once('^') {
            Some((name, e)) => {
                let e_col = c + name.len() + 1;
                let e = e.trim();
                let value: i64 = e
                    .parse()
                    .map_err(|_| syntax(line, e_col, format!("expected an exponent, found '{e}'")))?;
                if value <= 0 {
                    return Err(syntax(line, e_col, format!("exponent must be positive, found {value}")));
                }
                let value = u32::try_from(value).map_err(|_| syntax(line, e_col, "exponent too large"))?;
                (name.trim(), value)
            }
            None => (p, 1),
        };
        if !is_name(name) {
            return Err(syntax(line, c, format!("expected a variable name, found '{name}'")));
        }
        factors.push((c, name.to_string(), exp));
        pos += piece.len() + 1;
    }
    Ok(Term::Product(factors))
}

/// Canonical text: a `vars` line followed by one generator per line.
pub fn format_ideal(ideal: &MonomialIdeal, names: &[String]) -> String {
    let mut out = String::from("vars");
    for name in names {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for g in ideal.generators() {
        let _ = writeln!(out, "{}", g.display_with(names));
    }
    out
}
