//! The text format for a ribbon digraph with an optional chip-and-rotor state.
//!
//! ```text
//! # bidirected triangle
//! vertex a
//! vertex b
//! vertex c
//! out a: b c
//! out b: a c
//! out c: a b
//! rotor a = 1
//! chips b = 2
//! ```
//!
//! Vertices are indexed in declaration order; out-lists give the cyclic order
//! with slot 0 first. Rotors default to slot 0 and chips to 0.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::Zero;
use rotorlab::{Divisor, Drc, RibbonDigraph, RotorConfiguration};

#[derive(Debug)]
pub enum FileError {
    Syntax { line: usize, message: String },
    /// The text is well formed but the graph breaks a standing assumption.
    Graph { error: rotorlab::Error, names: Vec<String> },
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FileError::Syntax { line, message } => write!(f, "line {line}: {message}"),
            FileError::Graph { error, names } => f.write_str(&describe(error, &|v| names[v].clone())),
        }
    }
}

impl std::error::Error for FileError {}

#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: RibbonDigraph,
    pub drc: Drc,
}

fn syntax(line: usize, message: impl Into<String>) -> FileError {
    FileError::Syntax { line, message: message.into() }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.contains(|c: char| c.is_whitespace() || matches!(c, ':' | '=' | '#' | ','))
}

struct Line<'a> {
    number: usize,
    keyword: &'a str,
    rest: &'a str,
}

pub fn parse(text: &str) -> Result<GraphFile, FileError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        lines.push(Line { number: i + 1, keyword, rest: rest.trim() });
    }

    let mut names: Vec<String> = Vec::new();
    let mut declared_at: Vec<usize> = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    for line in lines.iter().filter(|l| l.keyword == "vertex") {
        let name = line.rest;
        if !valid_name(name) {
            return Err(syntax(line.number, format!("invalid vertex name '{name}'")));
        }
        if index.insert(name, names.len()).is_some() {
            return Err(syntax(line.number, format!("vertex '{name}' declared twice")));
        }
        names.push(name.to_string());
        declared_at.push(line.number);
    }
    if names.is_empty() {
        return Err(syntax(lines.first().map_or(1, |l| l.number), "no vertices declared"));
    }
    let lookup = |number: usize, name: &str| -> Result<usize, FileError> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| syntax(number, format!("unknown vertex '{name}'")))
    };

    let n = names.len();
    let mut outs: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut rotor_lines: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut chips: Vec<Option<BigInt>> = vec![None; n];
    for line in &lines {
        match line.keyword {
            "vertex" => {}
            "out" => {
                let (name, heads) = line
                    .rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line.number, "expected 'out <name>: <name> ...'"))?;
                let v = lookup(line.number, name.trim())?;
                if outs[v].is_some() {
                    return Err(syntax(line.number, format!("second out line for '{}'", names[v])));
                }
                let heads = heads
                    .split_whitespace()
                    .map(|h| lookup(line.number, h))
                    .collect::<Result<Vec<_>, _>>()?;
                outs[v] = Some(heads);
            }
            "rotor" | "chips" => {
                let (name, value) = line
                    .rest
                    .split_once('=')
                    .ok_or_else(|| syntax(line.number, format!("expected '{} <name> = <value>'", line.keyword)))?;
                let v = lookup(line.number, name.trim())?;
                let value = value.trim();
                if line.keyword == "rotor" {
                    let slot = value
                        .parse::<usize>()
                        .map_err(|_| syntax(line.number, format!("rotor slot '{value}' is not a nonnegative integer")))?;
                    if rotor_lines[v].replace((slot, line.number)).is_some() {
                        return Err(syntax(line.number, format!("second rotor line for '{}'", names[v])));
                    }
                } else {
                    let count = value
                        .parse::<BigInt>()
                        .map_err(|_| syntax(line.number, format!("chip count '{value}' is not an integer")))?;
                    if chips[v].replace(count).is_some() {
                        return Err(syntax(line.number, format!("second chips line for '{}'", names[v])));
                    }
                }
            }
            other => return Err(syntax(line.number, format!("unknown keyword '{other}'"))),
        }
    }

    let mut out_lists = Vec::with_capacity(n);
    for (v, out) in outs.into_iter().enumerate() {
        match out {
            Some(heads) => out_lists.push(heads),
            None => return Err(syntax(declared_at[v], format!("vertex '{}' has no out line", names[v]))),
        }
    }
    for (v, r) in rotor_lines.iter().enumerate() {
        if let Some((slot, number)) = *r {
            let d = out_lists[v].len();
            if slot >= d {
                return Err(syntax(number, format!("rotor slot {slot} out of range for '{}' (out-degree {d})", names[v])));
            }
        }
    }
    let graph = match RibbonDigraph::new(out_lists).and_then(|g| g.with_labels(names.clone())) {
        Ok(g) => g,
        Err(error) => return Err(FileError::Graph { error, names }),
    };
    let slots = rotor_lines.iter().map(|r| r.map_or(0, |(s, _)| s)).collect();
    let rotor = RotorConfiguration::new(&graph, slots).expect("slots checked above");
    let divisor = Divisor::new(chips.into_iter().map(Option::unwrap_or_default).collect());
    Ok(GraphFile { graph, drc: Drc::new(divisor, rotor) })
}

/// Error text with vertex indices replaced by names.
pub fn describe(error: &rotorlab::Error, name: &dyn Fn(usize) -> String) -> String {
    use rotorlab::{Error as E, Violation as V};
    match error {
        E::InvalidGraph(v) => {
            let detail = match v {
                V::HeadOutOfRange { tail, head } => format!("vertex {} has an out-edge to {head}, which is not a vertex", name(*tail)),
                V::Loop { vertex } => format!("loop at vertex {}", name(*vertex)),
                V::NoOutEdges { vertex } => format!("vertex {} has no out-edges", name(*vertex)),
                V::NotStronglyConnected { from, to } => {
                    format!("not strongly connected, no path {}->{}", name(*from), name(*to))
                }
                other => other.to_string(),
            };
            format!("invalid graph: {detail}")
        }
        E::IllegalRouting { vertex } => {
            format!("illegal routing at {}: it does not hold enough chips", name(*vertex))
        }
        E::NotEulerian { vertex } => format!(
            "graph is not Eulerian (in-degree differs from out-degree at {}); the rotor-router action is only defined for Eulerian digraphs",
            name(*vertex)
        ),
        E::NoSuchEdge { tail, head } => format!("no edge {}->{}", name(*tail), name(*head)),
        E::InvalidSlot { vertex, slot, out_degree } => {
            format!("slot {slot} out of range at {} (out-degree {out_degree})", name(*vertex))
        }
        other => other.to_string(),
    }
}

/// The graph section alone: vertex and out lines.
pub fn render_graph(graph: &RibbonDigraph) -> String {
    let mut s = String::new();
    for v in graph.vertices() {
        writeln!(s, "vertex {}", graph.name(v)).unwrap();
    }
    for v in graph.vertices() {
        let heads: Vec<String> = graph.out_list(v).iter().map(|&h| graph.name(h)).collect();
        writeln!(s, "out {}: {}", graph.name(v), heads.join(" ")).unwrap();
    }
    s
}

/// A complete file that parses back to the same graph and state. Every rotor
/// is written; zero chip counts are omitted.
pub fn render(graph: &RibbonDigraph, drc: &Drc) -> String {
    let mut s = render_graph(graph);
    for v in graph.vertices() {
        writeln!(s, "rotor {} = {}", graph.name(v), drc.rotor.slot(v)).unwrap();
    }
    for v in graph.vertices() {
        let c = &drc.divisor[v];
        if !c.is_zero() {
            writeln!(s, "chips {} = {}", graph.name(v), c).unwrap();
        }
    }
    s
}
