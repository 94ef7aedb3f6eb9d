//! Line-oriented text formats.
//!
//! Graph format:
//! ```text
//! graph <n> <m>
//! <u> <v>            (m lines, 0-based, u != v)
//! label <v> <tag>    (optional, after the edges)
//! ```
//! `#` starts a comment anywhere on a line. Duplicate or reversed edge lines
//! are an error.
//!
//! Structure format:
//! ```text
//! structure <n>
//! sig <name> <arity>     (arity 0, 1 or 2; declare before use)
//! <name> <args...>       (0 args for a true nullary symbol)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;
use crate::structure::{RelStructure, Signature, StructureError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Eof(String),
}

impl ParseError {
    fn at(line: usize, msg: impl Into<String>) -> Self {
        ParseError::Line {
            line,
            msg: msg.into(),
        }
    }
}

/// Content lines with their 1-based line numbers, comments stripped.
fn content_lines(text: &str) -> Vec<(usize, Vec<String>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let stripped = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let tokens: Vec<String> = stripped.split_whitespace().map(str::to_string).collect();
            if tokens.is_empty() {
                None
            } else {
                Some((i + 1, tokens))
            }
        })
        .collect()
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::at(line, format!("invalid {what} {token:?}")))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    let (hline, header) = it
        .next()
        .ok_or_else(|| ParseError::Eof("missing `graph <n> <m>` header".into()))?;
    if header[0] != "graph" || header.len() != 3 {
        return Err(ParseError::at(*hline, "expected header `graph <n> <m>`"));
    }
    let n = parse_usize(*hline, &header[1], "vertex count")?;
    let m = parse_usize(*hline, &header[2], "edge count")?;

    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..m {
        let (eline, tokens) = it.next().ok_or_else(|| {
            ParseError::Eof(format!("expected {m} edge lines, found {}", edges.len()))
        })?;
        if tokens.len() != 2 || tokens[0] == "label" {
            return Err(ParseError::at(*eline, "expected edge line `<u> <v>`"));
        }
        let u = parse_usize(*eline, &tokens[0], "vertex id")?;
        let v = parse_usize(*eline, &tokens[1], "vertex id")?;
        if u >= n || v >= n {
            return Err(ParseError::at(
                *eline,
                format!("vertex id out of range (n = {n})"),
            ));
        }
        if u == v {
            return Err(ParseError::at(*eline, format!("loop edge at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::at(
                *eline,
                format!("duplicate or reversed edge {u} {v}"),
            ));
        }
        edges.push((u, v));
    }

    let mut graph = Graph::new(n, &edges)
        .map_err(|e| ParseError::at(*hline, format!("invalid graph: {e}")))?;
    for (lline, tokens) in it {
        if tokens[0] != "label" || tokens.len() != 3 {
            return Err(ParseError::at(
                *lline,
                "expected `label <v> <tag>` after the edge lines",
            ));
        }
        let v = parse_usize(*lline, &tokens[1], "vertex id")?;
        graph
            .set_label(v, tokens[2].clone())
            .map_err(|e| ParseError::at(*lline, e.to_string()))?;
    }
    Ok(graph)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    for (v, tag) in g.labels() {
        writeln!(out, "label {v} {tag}").unwrap();
    }
    out
}

pub fn parse_structure(text: &str) -> Result<RelStructure, ParseError> {
    let lines = content_lines(text);
    let mut it = lines.iter().peekable();
    let (hline, header) = it
        .next()
        .ok_or_else(|| ParseError::Eof("missing `structure <n>` header".into()))?;
    if header[0] != "structure" || header.len() != 2 {
        return Err(ParseError::at(*hline, "expected header `structure <n>`"));
    }
    let n = parse_usize(*hline, &header[1], "universe size")?;

    let mut symbols: Vec<(String, usize)> = Vec::new();
    let mut facts: Vec<(usize, String, Vec<usize>)> = Vec::new();
    for (line, tokens) in it {
        if tokens[0] == "sig" {
            if tokens.len() != 3 {
                return Err(ParseError::at(*line, "expected `sig <name> <arity>`"));
            }
            let arity = parse_usize(*line, &tokens[2], "arity")?;
            symbols.push((tokens[1].clone(), arity));
        } else {
            let args = tokens[1..]
                .iter()
                .map(|t| parse_usize(*line, t, "element id"))
                .collect::<Result<Vec<_>, _>>()?;
            facts.push((*line, tokens[0].clone(), args));
        }
    }

    let sig = Signature::new(symbols).map_err(|e| ParseError::at(*hline, e.to_string()))?;
    let mut s = RelStructure::new(sig, n);
    for (line, name, args) in facts {
        s.add_fact(&name, &args).map_err(|e| match e {
            StructureError::UnknownSymbol(_)
            | StructureError::ArityMismatch { .. }
            | StructureError::ElementOutOfRange { .. } => ParseError::at(line, e.to_string()),
            other => ParseError::at(line, other.to_string()),
        })?;
    }
    Ok(s)
}

pub fn write_structure(s: &RelStructure) -> String {
    let mut out = String::new();
    writeln!(out, "structure {}", s.universe_size()).unwrap();
    for (name, arity) in s.signature().symbols() {
        writeln!(out, "sig {name} {arity}").unwrap();
    }
    for (name, args) in s.facts() {
        write!(out, "{name}").unwrap();
        for a in args {
            write!(out, " {a}").unwrap();
        }
        writeln!(out).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_roundtrip_with_labels() {
        let text = "# a triangle with tags\ngraph 3 3\n0 1\n0 2 # chord\n1 2\nlabel 0 t\nlabel 2 t2\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.label(0), Some("t"));
        let written = write_graph(&g);
        assert_eq!(parse_graph(&written).unwrap(), g);
    }

    #[test]
    fn graph_rejects_duplicate_and_reversed_edges() {
        let err = parse_graph("graph 3 2\n0 1\n1 0\n").unwrap_err();
        assert!(err.to_string().contains("duplicate or reversed"));
        let err = parse_graph("graph 3 2\n0 1\n0 1\n").unwrap_err();
        assert!(err.to_string().contains("line 3"));
    }

    #[test]
    fn graph_rejects_bad_counts_and_ranges() {
        assert!(parse_graph("graph 2 1\n").is_err());
        assert!(parse_graph("graph 2 1\n0 5\n").is_err());
        assert!(parse_graph("graph 2 1\n1 1\n").is_err());
        assert!(parse_graph("graph 2 0\nlabel 9 x\n").is_err());
    }

    #[test]
    fn structure_roundtrip() {
        let text = "structure 3\nsig R 2\nsig P 1\nsig A 0\nR 0 1\nR 1 1\nP 2\nA\n";
        let s = parse_structure(text).unwrap();
        assert_eq!(s.universe_size(), 3);
        assert!(s.holds(0, &[1, 1]));
        assert!(s.nullary_true(2));
        let written = write_structure(&s);
        assert_eq!(parse_structure(&written).unwrap(), s);
    }

    #[test]
    fn structure_rejects_unknown_symbol_and_bad_arity() {
        let err = parse_structure("structure 2\nsig R 2\nQ 0 1\n").unwrap_err();
        assert!(err.to_string().contains("unknown relation symbol"));
        let err = parse_structure("structure 2\nsig R 2\nR 0\n").unwrap_err();
        assert!(err.to_string().contains("arity"));
        let err = parse_structure("structure 2\nsig R 3\n").unwrap_err();
        assert!(err.to_string().contains("unsupported"));
    }
}
