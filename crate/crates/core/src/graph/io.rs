//! Text and JSON graph formats.
//!
//! Text: a header line `n m` followed by `m` lines `u v` (0-indexed, `u < v`).
//! JSON: `{"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]}`.
//! Writers emit edges in the host's lexicographic order, so a parse/write
//! round trip reproduces the canonical text byte for byte.

use serde::{Deserialize, Serialize};

use super::{Edge, GameState, GraphError, HostGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Text,
    Json,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

fn parse_pair(line: usize, text: &str, what: &str) -> Result<(usize, usize), GraphError> {
    let mut it = text.split_whitespace();
    let mut next = |name: &str| -> Result<usize, GraphError> {
        let tok = it
            .next()
            .ok_or_else(|| parse_err(line, format!("missing {name} in {what}")))?;
        tok.parse()
            .map_err(|_| parse_err(line, format!("invalid {name} {tok:?} in {what}")))
    };
    let a = next("first value")?;
    let b = next("second value")?;
    if it.next().is_some() {
        return Err(parse_err(line, format!("trailing data in {what}")));
    }
    Ok((a, b))
}

/// Parses the text format. Blank lines and lines starting with `#` are
/// skipped; errors carry the 1-based line number.
pub fn parse_text(input: &str) -> Result<HostGraph, GraphError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let (n, m) = parse_pair(hline, header, "header \"n m\"")?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for (line, text) in lines {
        last_line = line;
        if edges.len() == m {
            return Err(parse_err(line, format!("more than the declared {m} edges")));
        }
        let (u, v) = parse_pair(line, text, "edge line")?;
        if u >= n || v >= n {
            return Err(parse_err(line, format!("node out of range for n = {n}")));
        }
        if u >= v {
            return Err(parse_err(line, format!("expected u < v, got {u} {v}")));
        }
        edges.push(Edge::new(u, v));
    }
    if edges.len() != m {
        return Err(parse_err(
            last_line,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    HostGraph::new(n, edges)
}

pub fn to_text(graph: &HostGraph) -> String {
    let mut out = format!("{} {}\n", graph.n(), graph.edge_count());
    for e in graph.edges() {
        out.push_str(&format!("{} {}\n", e.lo(), e.hi()));
    }
    out
}

pub fn parse_json(input: &str) -> Result<HostGraph, GraphError> {
    let g: GraphJson = serde_json::from_str(input).map_err(|e| parse_err(e.line(), e.to_string()))?;
    HostGraph::new(g.n, g.edges.iter().map(|&[u, v]| Edge::new(u, v)))
}

pub fn to_json(graph: &HostGraph) -> String {
    let g = GraphJson {
        n: graph.n(),
        edges: graph.edges().iter().map(|e| [e.lo(), e.hi()]).collect(),
    };
    serde_json::to_string(&g).expect("plain data serializes")
}

/// Picks the format from the first non-blank character.
pub fn detect(input: &str) -> GraphFormat {
    if input.trim_start().starts_with('{') {
        GraphFormat::Json
    } else {
        GraphFormat::Text
    }
}

pub fn parse(input: &str) -> Result<HostGraph, GraphError> {
    match detect(input) {
        GraphFormat::Text => parse_text(input),
        GraphFormat::Json => parse_json(input),
    }
}

pub fn write(graph: &HostGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Text => to_text(graph),
        GraphFormat::Json => to_json(graph) + "\n",
    }
}

/// The active subgraph of a state as a standalone graph.
pub fn state_graph(state: &GameState) -> HostGraph {
    HostGraph::new(state.n(), state.edges()).expect("game states are connected")
}
