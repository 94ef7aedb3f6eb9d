//! Inline generator specs, so pipelines need no intermediate files.
//!
//! Forms: `clique:5`, `grid:2:3`, `subdivided-clique:3:1`, `half-graph:4`,
//! `independence-witness:2:1`, and ranges for single-parameter kinds:
//! `path:10-200` or `path:10-200/10`.

use anyhow::{anyhow, bail, Context, Result};
use flatgraph::generators::{
    half_graph, independence_witness, standard_graph, subdivided_clique, FamilySpec,
};
use flatgraph::Graph;

/// Expands one spec string into named members.
pub fn expand_spec(spec: &str) -> Result<Vec<(String, Graph)>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let kind = parts[0];
    let args = &parts[1..];
    let single = |n: usize| -> Result<FamilySpec> {
        Ok(match kind {
            "clique" => FamilySpec::Clique(n),
            "path" => FamilySpec::Path(n),
            "cycle" => FamilySpec::Cycle(n),
            "star" => FamilySpec::Star(n),
            "prism" => FamilySpec::Prism(n),
            "edgeless" => FamilySpec::Edgeless(n),
            other => bail!("kind {other:?} does not take a single size"),
        })
    };
    match kind {
        "clique" | "path" | "cycle" | "star" | "prism" | "edgeless" => {
            if args.len() != 1 {
                bail!("spec {spec:?}: expected `{kind}:<n>` or `{kind}:<lo>-<hi>[/<step>]`");
            }
            let mut out = Vec::new();
            for n in parse_sizes(args[0]).with_context(|| format!("spec {spec:?}"))? {
                let g = standard_graph(single(n)?)?;
                out.push((format!("{kind}:{n}"), g));
            }
            Ok(out)
        }
        "grid" => {
            let [rows, cols] = two_args(spec, args)?;
            let g = standard_graph(FamilySpec::Grid(rows, cols))?;
            Ok(vec![(format!("grid:{rows}:{cols}"), g)])
        }
        "subdivided-clique" => {
            let [m, r] = two_args(spec, args)?;
            Ok(vec![(
                format!("subdivided-clique:{m}:{r}"),
                subdivided_clique(m, r).gadget.graph,
            )])
        }
        "half-graph" => {
            let [n] = one_arg(spec, args)?;
            Ok(vec![(format!("half-graph:{n}"), half_graph(n).gadget.graph)])
        }
        "independence-witness" => {
            let [m, r] = two_args(spec, args)?;
            Ok(vec![(
                format!("independence-witness:{m}:{r}"),
                independence_witness(m, r).gadget.graph,
            )])
        }
        other => bail!("unknown generator kind {other:?}"),
    }
}

fn one_arg(spec: &str, args: &[&str]) -> Result<[usize; 1]> {
    if args.len() != 1 {
        bail!("spec {spec:?}: expected exactly one parameter");
    }
    Ok([parse_num(args[0])?])
}

fn two_args(spec: &str, args: &[&str]) -> Result<[usize; 2]> {
    if args.len() != 2 {
        bail!("spec {spec:?}: expected exactly two parameters");
    }
    Ok([parse_num(args[0])?, parse_num(args[1])?])
}

fn parse_num(token: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| anyhow!("invalid number {token:?}"))
}

fn parse_sizes(token: &str) -> Result<Vec<usize>> {
    let (range, step) = match token.split_once('/') {
        Some((r, s)) => (r, parse_num(s)?),
        None => (token, 1),
    };
    if step == 0 {
        bail!("step must be positive");
    }
    match range.split_once('-') {
        Some((lo, hi)) => {
            let (lo, hi) = (parse_num(lo)?, parse_num(hi)?);
            if lo > hi {
                bail!("empty range {token:?}");
            }
            Ok((lo..=hi).step_by(step).collect())
        }
        None => Ok(vec![parse_num(range)?]),
    }
}

/// Reads an input that is either a graph file or an inline generator spec.
pub fn load_inputs(inputs: &[String]) -> Result<Vec<(String, Graph)>> {
    let mut out = Vec::new();
    for input in inputs {
        if std::path::Path::new(input).exists() {
            let text = std::fs::read_to_string(input)
                .with_context(|| format!("reading {input:?}"))?;
            let g = flatgraph::format::parse_graph(&text)
                .with_context(|| format!("parsing {input:?}"))?;
            out.push((input.clone(), g));
        } else {
            let members = expand_spec(input)
                .with_context(|| format!("input {input:?} is neither a file nor a generator spec"))?;
            out.extend(members);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_expand_in_order() {
        let members = expand_spec("path:3-9/3").unwrap();
        let names: Vec<&str> = members.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, vec!["path:3", "path:6", "path:9"]);
    }

    #[test]
    fn two_parameter_kinds() {
        let members = expand_spec("subdivided-clique:3:1").unwrap();
        assert_eq!(members[0].1.n(), 6);
        let members = expand_spec("grid:2:3").unwrap();
        assert_eq!(members[0].1.edge_count(), 7);
    }

    #[test]
    fn bad_specs_are_rejected() {
        assert!(expand_spec("widget:3").is_err());
        assert!(expand_spec("clique:1-0").is_err());
        assert!(expand_spec("grid:3").is_err());
        assert!(expand_spec("clique:3-9/0").is_err());
    }
}
