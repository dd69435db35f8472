//! Line-based text formats, version 1.
//!
//! All formats are UTF-8 with `#` starting a comment that runs to the end of
//! the line.  Printed output is canonical: universes, extents, families and
//! name lists are sorted, rationals are in lowest terms, and weighted
//! instances annotate every set with `w=`, so parse/print closure is
//! byte-stable.
//!
//! Instance:
//! ```text
//! universe: a b c
//! set s1 w=1/2: a b
//! set s2: c
//! ```
//!
//! Solution: `solution: s1 s2`
//!
//! Modification (exactly one per file):
//! ```text
//! add-set s3 w=2: a c
//! rm-set s1
//! add-elem x into: s1 s2
//! rm-elem a
//! ```
//!
//! Graph: a `vertices: a b c` line followed by `edge a b` lines.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{ElementId, Instance, NamedSet, SetName, Solution, validate};
use crate::modifications::Modification;
use crate::rational::Rational;
use std::collections::BTreeSet;
use std::fmt::Write as _;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() { None } else { Some((i + 1, line)) }
    })
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Split a `set`-style line into header tokens and extent tokens at the
/// first `:`.
fn split_header(line: &str, lineno: usize) -> Result<(Vec<&str>, Vec<&str>)> {
    let (head, tail) = line
        .split_once(':')
        .ok_or_else(|| perr(lineno, "missing `:`"))?;
    Ok((
        head.split_whitespace().collect(),
        tail.split_whitespace().collect(),
    ))
}

fn parse_weight(tok: &str, lineno: usize) -> Result<Rational> {
    let rat = tok
        .strip_prefix("w=")
        .ok_or_else(|| perr(lineno, format!("expected w=<rat>, got `{tok}`")))?;
    rat.parse()
        .map_err(|e| perr(lineno, format!("bad weight: {e}")))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);
    let (first_no, first) = lines
        .next()
        .ok_or_else(|| perr(1, "empty instance file"))?;
    let universe_ids = first
        .strip_prefix("universe:")
        .ok_or_else(|| perr(first_no, "expected `universe: <id> ...` as the first line"))?;
    let mut universe = Vec::new();
    for tok in universe_ids.split_whitespace() {
        universe.push(ElementId::new(tok).map_err(|e| perr(first_no, e.to_string()))?);
    }

    let mut family = Vec::new();
    let mut weighted = false;
    for (lineno, line) in lines {
        if !line.starts_with("set ") && line != "set" {
            return Err(perr(lineno, format!("expected `set ...`, got `{line}`")));
        }
        let (head, ids) = split_header(line, lineno)?;
        let (name, weight) = match head.as_slice() {
            ["set", name] => (*name, Rational::ONE),
            ["set", name, w] => {
                weighted = true;
                (*name, parse_weight(w, lineno)?)
            }
            _ => return Err(perr(lineno, "expected `set <name> [w=<rat>]: <id> ...`")),
        };
        let name = SetName::new(name).map_err(|e| perr(lineno, e.to_string()))?;
        let mut extent = BTreeSet::new();
        for tok in ids {
            extent.insert(ElementId::new(tok).map_err(|e| perr(lineno, e.to_string()))?);
        }
        family.push(NamedSet::new(name, extent, weight));
    }

    let inst = Instance::new_unchecked(universe, family, weighted);
    match validate(&inst, false).first() {
        None => Ok(inst),
        Some(v) => Err(Error::InvalidInstance(v.to_string())),
    }
}

pub fn print_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str("universe:");
    for e in inst.universe() {
        let _ = write!(out, " {e}");
    }
    out.push('\n');
    for set in inst.family() {
        let _ = write!(out, "set {}", set.name);
        if inst.weighted() {
            let _ = write!(out, " w={}", set.weight);
        }
        out.push(':');
        for e in &set.extent {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
    out
}

/// Parse a solution file into its set names; binding to an instance (and
/// value computation) happens in [`Solution::new`].
pub fn parse_solution(text: &str) -> Result<BTreeSet<SetName>> {
    let mut lines = content_lines(text);
    let (lineno, line) = lines.next().ok_or_else(|| perr(1, "empty solution file"))?;
    let names = line
        .strip_prefix("solution:")
        .ok_or_else(|| perr(lineno, "expected `solution: <name> ...`"))?;
    if let Some((extra, _)) = lines.next() {
        return Err(perr(extra, "trailing content after the solution line"));
    }
    names
        .split_whitespace()
        .map(|tok| SetName::new(tok).map_err(|e| perr(lineno, e.to_string())))
        .collect()
}

pub fn print_solution(sol: &Solution) -> String {
    let mut out = String::from("solution:");
    for name in sol.chosen() {
        let _ = write!(out, " {name}");
    }
    out.push('\n');
    out
}

pub fn parse_modification(text: &str) -> Result<Modification> {
    let mut lines = content_lines(text);
    let (lineno, line) = lines
        .next()
        .ok_or_else(|| perr(1, "empty modification file"))?;
    if let Some((extra, _)) = lines.next() {
        return Err(perr(extra, "a modification file holds exactly one modification"));
    }

    let word = line.split_whitespace().next().unwrap_or("");
    match word {
        "add-set" => {
            let (head, ids) = split_header(line, lineno)?;
            let (name, weight) = match head.as_slice() {
                ["add-set", name] => (*name, Rational::ONE),
                ["add-set", name, w] => (*name, parse_weight(w, lineno)?),
                _ => return Err(perr(lineno, "expected `add-set <name> [w=<rat>]: <id> ...`")),
            };
            let name = SetName::new(name).map_err(|e| perr(lineno, e.to_string()))?;
            let mut extent = BTreeSet::new();
            for tok in ids {
                extent.insert(ElementId::new(tok).map_err(|e| perr(lineno, e.to_string()))?);
            }
            Ok(Modification::AddSet { name, extent, weight })
        }
        "rm-set" => match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["rm-set", name] => Ok(Modification::RemoveSet {
                name: SetName::new(*name).map_err(|e| perr(lineno, e.to_string()))?,
            }),
            _ => Err(perr(lineno, "expected `rm-set <name>`")),
        },
        "add-elem" => {
            let (head, names) = split_header(line, lineno)?;
            match head.as_slice() {
                ["add-elem", id, "into"] => {
                    let element = ElementId::new(*id).map_err(|e| perr(lineno, e.to_string()))?;
                    let mut into = BTreeSet::new();
                    for tok in names {
                        into.insert(SetName::new(tok).map_err(|e| perr(lineno, e.to_string()))?);
                    }
                    Ok(Modification::AddElement { element, into })
                }
                _ => Err(perr(lineno, "expected `add-elem <id> into: <name> ...`")),
            }
        }
        "rm-elem" => match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["rm-elem", id] => Ok(Modification::RemoveElement {
                element: ElementId::new(*id).map_err(|e| perr(lineno, e.to_string()))?,
            }),
            _ => Err(perr(lineno, "expected `rm-elem <id>`")),
        },
        _ => Err(perr(lineno, format!("unknown modification `{word}`"))),
    }
}

pub fn print_modification(m: &Modification) -> String {
    match m {
        Modification::AddSet { name, extent, weight } => {
            let mut out = format!("add-set {name} w={weight}:");
            for e in extent {
                let _ = write!(out, " {e}");
            }
            out.push('\n');
            out
        }
        Modification::RemoveSet { name } => format!("rm-set {name}\n"),
        Modification::AddElement { element, into } => {
            let mut out = format!("add-elem {element} into:");
            for name in into {
                let _ = write!(out, " {name}");
            }
            out.push('\n');
            out
        }
        Modification::RemoveElement { element } => format!("rm-elem {element}\n"),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (first_no, first) = lines.next().ok_or_else(|| perr(1, "empty graph file"))?;
    let verts = first
        .strip_prefix("vertices:")
        .ok_or_else(|| perr(first_no, "expected `vertices: <id> ...` as the first line"))?;
    let mut vertices = Vec::new();
    for tok in verts.split_whitespace() {
        vertices.push(ElementId::new(tok).map_err(|e| perr(first_no, e.to_string()))?);
    }
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["edge", u, v] => {
                let u = ElementId::new(*u).map_err(|e| perr(lineno, e.to_string()))?;
                let v = ElementId::new(*v).map_err(|e| perr(lineno, e.to_string()))?;
                edges.push((u, v));
            }
            _ => return Err(perr(lineno, format!("expected `edge <u> <v>`, got `{line}`"))),
        }
    }
    Graph::new(vertices, edges)
}

pub fn print_graph(g: &Graph) -> String {
    let mut out = String::from("vertices:");
    for v in g.vertices() {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
    for (u, v) in g.edges() {
        let _ = writeln!(out, "edge {u} {v}");
    }
    out
}
