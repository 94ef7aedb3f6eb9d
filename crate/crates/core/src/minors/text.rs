//! Text form for minor certificates, re-parseable for verification.
//!
//! ```text
//! model topological r=<r|inf>
//! branch <v0> <v1> ...
//! path <i> <j> : <v0> <v1> ...
//! ```
//! ```text
//! model branch-sets r=<r|inf>
//! set <center> : <v0> <v1> ...
//! ```

use std::fmt::Write as _;

use crate::format::ParseError;

use super::{BranchSet, Depth, MinorModel, ModelKind, PathCert};

pub fn write_model(model: &MinorModel) -> String {
    let depth = match model.depth {
        Depth::Bounded(r) => r.to_string(),
        Depth::Unbounded => "inf".to_string(),
    };
    let mut out = String::new();
    match &model.kind {
        ModelKind::Topological { branches, paths } => {
            writeln!(out, "model topological r={depth}").unwrap();
            write!(out, "branch").unwrap();
            for b in branches {
                write!(out, " {b}").unwrap();
            }
            writeln!(out).unwrap();
            for p in paths {
                write!(out, "path {} {} :", p.ends.0, p.ends.1).unwrap();
                for v in &p.vertices {
                    write!(out, " {v}").unwrap();
                }
                writeln!(out).unwrap();
            }
        }
        ModelKind::BranchSets(sets) => {
            writeln!(out, "model branch-sets r={depth}").unwrap();
            for s in sets {
                write!(out, "set {} :", s.center).unwrap();
                for v in &s.vertices {
                    write!(out, " {v}").unwrap();
                }
                writeln!(out).unwrap();
            }
        }
    }
    out
}

pub fn parse_model(text: &str) -> Result<MinorModel, ParseError> {
    let err = |line: usize, msg: &str| ParseError::Line {
        line,
        msg: msg.to_string(),
    };
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let stripped = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let tokens: Vec<&str> = stripped.split_whitespace().collect();
            if tokens.is_empty() {
                None
            } else {
                Some((i + 1, tokens))
            }
        })
        .collect();
    let (hline, header) = lines
        .first()
        .ok_or_else(|| ParseError::Eof("missing `model` header".into()))?;
    if header.len() != 3 || header[0] != "model" || !header[2].starts_with("r=") {
        return Err(err(*hline, "expected `model <kind> r=<r|inf>`"));
    }
    let depth = match &header[2][2..] {
        "inf" => Depth::Unbounded,
        num => Depth::Bounded(
            num.parse()
                .map_err(|_| err(*hline, "invalid depth value"))?,
        ),
    };
    let parse_ids = |line: usize, tokens: &[&str]| -> Result<Vec<usize>, ParseError> {
        tokens
            .iter()
            .map(|t| t.parse().map_err(|_| err(line, "invalid vertex id")))
            .collect()
    };
    match header[1] {
        "topological" => {
            let mut branches = None;
            let mut paths = Vec::new();
            for (line, tokens) in &lines[1..] {
                match tokens[0] {
                    "branch" => {
                        if branches.is_some() {
                            return Err(err(*line, "duplicate `branch` line"));
                        }
                        branches = Some(parse_ids(*line, &tokens[1..])?);
                    }
                    "path" => {
                        if tokens.len() < 4 || tokens[3] != ":" {
                            return Err(err(*line, "expected `path <i> <j> : <v...>`"));
                        }
                        let i = tokens[1]
                            .parse()
                            .map_err(|_| err(*line, "invalid pattern index"))?;
                        let j = tokens[2]
                            .parse()
                            .map_err(|_| err(*line, "invalid pattern index"))?;
                        paths.push(PathCert {
                            ends: (i, j),
                            vertices: parse_ids(*line, &tokens[4..])?,
                        });
                    }
                    other => return Err(err(*line, &format!("unexpected line `{other}`"))),
                }
            }
            let branches =
                branches.ok_or_else(|| ParseError::Eof("missing `branch` line".into()))?;
            Ok(MinorModel {
                kind: ModelKind::Topological { branches, paths },
                depth,
            })
        }
        "branch-sets" => {
            let mut sets = Vec::new();
            for (line, tokens) in &lines[1..] {
                if tokens[0] != "set" || tokens.len() < 4 || tokens[2] != ":" {
                    return Err(err(*line, "expected `set <center> : <v...>`"));
                }
                let center = tokens[1]
                    .parse()
                    .map_err(|_| err(*line, "invalid vertex id"))?;
                sets.push(BranchSet {
                    center,
                    vertices: parse_ids(*line, &tokens[3..])?,
                });
            }
            Ok(MinorModel {
                kind: ModelKind::BranchSets(sets),
                depth,
            })
        }
        other => Err(err(*hline, &format!("unknown model kind `{other}`"))),
    }
}
