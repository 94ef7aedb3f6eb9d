//! Family-level verdicts: edge-growth classification, superflat profile,
//! nowhere-dense and ultraflat sample verdicts, and the assembled report.
//!
//! Verdicts are tri-state. A "yes" is always labelled "(sample)": these are
//! facts about finite families at the given caps and budgets, which the
//! report echoes so results are self-describing. Budget exhaustion
//! surfaces as "inconclusive", never as a definite answer.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::budget::{SearchBudget, SearchOutcome};
use crate::exec::ordered_map;
use crate::generators::{standard_graph, FamilySpec};
use crate::graph::{Graph, GraphError, GraphStats};
use crate::minors::{
    clique_number_profile, contains_subdivided_clique, is_topological_minor, top_clique_minor,
    write_model, MinorModel, ProfileValue, SearchMode,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DensityError {
    #[error("need at least {needed} members with at least 2 vertices, got {got}")]
    TooFewMembers { needed: usize, got: usize },
    #[error("degenerate family: vertex counts of the edge-bearing members do not vary")]
    DegenerateSizes,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Default boundary between the linear and quadratic growth classes.
pub const DEFAULT_SLOPE_THRESHOLD: f64 = 1.5;

/// Least-squares fit of log edge count against log vertex count.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityFit {
    /// `None` when no member carries an edge (class 0 families).
    pub slope: Option<f64>,
    /// 0: constant-bounded, 1: roughly linear, 2: roughly quadratic.
    pub class: u8,
    pub threshold: f64,
}

pub fn density_exponent_fit(family: &[Graph]) -> Result<DensityFit, DensityError> {
    density_exponent_fit_with(family, DEFAULT_SLOPE_THRESHOLD)
}

pub fn density_exponent_fit_with(
    family: &[Graph],
    threshold: f64,
) -> Result<DensityFit, DensityError> {
    let eligible = family.iter().filter(|g| g.n() >= 2).count();
    if eligible < 3 {
        return Err(DensityError::TooFewMembers {
            needed: 3,
            got: eligible,
        });
    }
    // Class 0: edge counts are constant across the family.
    let first_edges = family[0].edge_count();
    if family.iter().all(|g| g.edge_count() == first_edges) {
        let points = fit_points(family);
        let slope = slope_of(&points);
        return Ok(DensityFit {
            slope,
            class: 0,
            threshold,
        });
    }
    let points = fit_points(family);
    let slope = slope_of(&points).ok_or(DensityError::DegenerateSizes)?;
    let class = if slope < threshold { 1 } else { 2 };
    Ok(DensityFit {
        slope: Some(slope),
        class,
        threshold,
    })
}

fn fit_points(family: &[Graph]) -> Vec<(f64, f64)> {
    family
        .iter()
        .filter(|g| g.edge_count() >= 1)
        .map(|g| ((g.n() as f64).ln(), (g.edge_count() as f64).ln()))
        .collect()
}

fn slope_of(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    Some(sxy / sxx)
}

/// Answer of one profile row: the least `m <= cap` absent from every
/// member, or above the cap, or undecided under the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowVerdict {
    MinimalAbsent(usize),
    AboveCap,
    Inconclusive,
}

impl fmt::Display for RowVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowVerdict::MinimalAbsent(m) => write!(f, "{m}"),
            RowVerdict::AboveCap => write!(f, ">cap"),
            RowVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriVerdict {
    Yes,
    No,
    Inconclusive,
}

impl fmt::Display for TriVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriVerdict::Yes => write!(f, "yes (sample)"),
            TriVerdict::No => write!(f, "no"),
            TriVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// One row of the superflat profile per depth, using exhaustive
/// subdivided-clique subgraph search on every member. A definite
/// `MinimalAbsent(m)` requires exhaustive negatives at `m` on all members.
pub fn superflat_profile(
    family: &[Graph],
    r_max: usize,
    m_cap: usize,
    budget: &SearchBudget,
) -> Vec<RowVerdict> {
    assert!(m_cap >= 2, "m_cap must be at least 2");
    (0..=r_max)
        .map(|r| superflat_row(family, r, m_cap, budget))
        .collect()
}

fn superflat_row(family: &[Graph], r: usize, m_cap: usize, budget: &SearchBudget) -> RowVerdict {
    for m in 1..=m_cap {
        let outcomes = ordered_map(family, |g| contains_subdivided_clique(g, m, r, budget));
        if outcomes.iter().any(|o| o.is_found()) {
            continue;
        }
        if outcomes
            .iter()
            .all(|o| matches!(o, SearchOutcome::Exhausted))
        {
            return RowVerdict::MinimalAbsent(m);
        }
        // No member contains it for sure, but some search ran out of
        // budget: the minimal absent m cannot be certified.
        return RowVerdict::Inconclusive;
    }
    RowVerdict::AboveCap
}

/// Aggregated clique-number profile over the family at one depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileCell {
    Value(usize),
    AtLeastCap,
    Inconclusive,
}

impl fmt::Display for ProfileCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileCell::Value(v) => write!(f, "{v}"),
            ProfileCell::AtLeastCap => write!(f, ">=cap"),
            ProfileCell::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Max of the per-member profiles; also reports which member (if any)
/// reached the cap.
fn profile_cell(
    family: &[Graph],
    r: usize,
    m_cap: usize,
    mode: SearchMode,
    budget: &SearchBudget,
) -> (ProfileCell, Option<usize>) {
    let per_member = ordered_map(family, |g| clique_number_profile(g, r, m_cap, mode, budget));
    if let Some(hit) = per_member
        .iter()
        .position(|p| matches!(p, ProfileValue::AtLeastCap(_)))
    {
        return (ProfileCell::AtLeastCap, Some(hit));
    }
    if per_member
        .iter()
        .any(|p| matches!(p, ProfileValue::BudgetExceeded { .. }))
    {
        return (ProfileCell::Inconclusive, None);
    }
    let max = per_member.iter().map(ProfileValue::known_at_least).max();
    (ProfileCell::Value(max.unwrap_or(0)), None)
}

/// "No" with a certificate when topological r-minor cliques reach the cap
/// at some depth; "yes (sample)" when every row is bounded with exhaustive
/// superflat negatives; "inconclusive" otherwise.
#[derive(Debug, Clone)]
pub struct NowhereDenseVerdict {
    pub verdict: TriVerdict,
    /// `(member index, r, model)` reaching the cap, for "no".
    pub witness: Option<(usize, usize, MinorModel)>,
}

pub fn nowhere_dense_verdict(
    family: &[Graph],
    r_max: usize,
    m_cap: usize,
    budget: &SearchBudget,
) -> NowhereDenseVerdict {
    let rows = depth_rows(family, r_max, m_cap, budget);
    verdict_from_rows(family, &rows, m_cap, budget)
}

fn verdict_from_rows(
    family: &[Graph],
    rows: &[DepthRow],
    m_cap: usize,
    budget: &SearchBudget,
) -> NowhereDenseVerdict {
    for row in rows {
        if row.top_clique == ProfileCell::AtLeastCap {
            let member = row.top_hit.expect("cap hits record the member");
            let model = top_clique_minor(&family[member], m_cap, row.r, budget)
                .found()
                .expect("profile already found the cap within the same budget");
            return NowhereDenseVerdict {
                verdict: TriVerdict::No,
                witness: Some((member, row.r, model)),
            };
        }
    }
    let all_bounded = rows.iter().all(|row| {
        matches!(row.superflat, RowVerdict::MinimalAbsent(_))
            && matches!(row.minor_clique, ProfileCell::Value(_))
            && matches!(row.top_clique, ProfileCell::Value(_))
    });
    NowhereDenseVerdict {
        verdict: if all_bounded {
            TriVerdict::Yes
        } else {
            TriVerdict::Inconclusive
        },
        witness: None,
    }
}

/// Least `m <= cap` such that `K_m` is absent as a topological minor
/// (unbounded depth) from every member.
#[derive(Debug, Clone)]
pub struct UltraflatVerdict {
    pub verdict: TriVerdict,
    pub minimal_absent: RowVerdict,
    /// `(member index, model)` of `K_cap` when the cap is reached.
    pub witness: Option<(usize, MinorModel)>,
}

pub fn ultraflat_verdict(
    family: &[Graph],
    m_cap: usize,
    budget: &SearchBudget,
) -> UltraflatVerdict {
    assert!(m_cap >= 2, "m_cap must be at least 2");
    for m in 1..=m_cap {
        let pattern = standard_graph(FamilySpec::Clique(m)).expect("m >= 1");
        let outcomes = ordered_map(family, |g| is_topological_minor(g, &pattern, budget));
        if let Some(hit) = outcomes.iter().position(|o| o.is_found()) {
            if m == m_cap {
                let model = outcomes.into_iter().nth(hit).unwrap().found().unwrap();
                return UltraflatVerdict {
                    verdict: TriVerdict::No,
                    minimal_absent: RowVerdict::AboveCap,
                    witness: Some((hit, model)),
                };
            }
            continue;
        }
        if outcomes
            .iter()
            .all(|o| matches!(o, SearchOutcome::Exhausted))
        {
            return UltraflatVerdict {
                verdict: TriVerdict::Yes,
                minimal_absent: RowVerdict::MinimalAbsent(m),
                witness: None,
            };
        }
        return UltraflatVerdict {
            verdict: TriVerdict::Inconclusive,
            minimal_absent: RowVerdict::Inconclusive,
            witness: None,
        };
    }
    unreachable!("the m loop always returns at m_cap")
}

/// One depth row of the family report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthRow {
    pub r: usize,
    pub superflat: RowVerdict,
    pub minor_clique: ProfileCell,
    pub top_clique: ProfileCell,
    top_hit: Option<usize>,
}

fn depth_rows(
    family: &[Graph],
    r_max: usize,
    m_cap: usize,
    budget: &SearchBudget,
) -> Vec<DepthRow> {
    (0..=r_max)
        .map(|r| {
            let superflat = superflat_row(family, r, m_cap, budget);
            let (minor_clique, _) = profile_cell(family, r, m_cap, SearchMode::Minor, budget);
            let (top_clique, top_hit) =
                profile_cell(family, r, m_cap, SearchMode::Topological, budget);
            DepthRow {
                r,
                superflat,
                minor_clique,
                top_clique,
                top_hit,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct AnalysisOptions {
    pub r_max: usize,
    pub m_cap: usize,
    pub budget: SearchBudget,
    pub slope_threshold: f64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            r_max: 1,
            m_cap: 4,
            budget: SearchBudget::default(),
            slope_threshold: DEFAULT_SLOPE_THRESHOLD,
        }
    }
}

/// Everything the `analyze` front end reports, assembled in input order.
#[derive(Debug, Clone)]
pub struct FamilyReport {
    pub names: Vec<String>,
    pub stats: Vec<GraphStats>,
    pub rows: Vec<DepthRow>,
    pub fit: Result<DensityFit, DensityError>,
    pub superflat_sample: TriVerdict,
    pub nowhere_dense: NowhereDenseVerdict,
    pub ultraflat: UltraflatVerdict,
    pub options: AnalysisOptions,
}

pub fn analyze_family(
    family: &[Graph],
    names: &[String],
    options: &AnalysisOptions,
) -> Result<FamilyReport, DensityError> {
    assert_eq!(family.len(), names.len(), "one name per member");
    let stats = ordered_map(family, Graph::stats)
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let rows = depth_rows(family, options.r_max, options.m_cap, &options.budget);
    let superflat_sample = if rows
        .iter()
        .all(|r| matches!(r.superflat, RowVerdict::MinimalAbsent(_)))
    {
        TriVerdict::Yes
    } else if rows.iter().any(|r| r.superflat == RowVerdict::AboveCap) {
        TriVerdict::No
    } else {
        TriVerdict::Inconclusive
    };
    let nowhere_dense = verdict_from_rows(family, &rows, options.m_cap, &options.budget);
    let ultraflat = ultraflat_verdict(family, options.m_cap, &options.budget);
    let fit = density_exponent_fit_with(family, options.slope_threshold);
    Ok(FamilyReport {
        names: names.to_vec(),
        stats,
        rows,
        fit,
        superflat_sample,
        nowhere_dense,
        ultraflat,
        options: *options,
    })
}

impl FamilyReport {
    /// Line-oriented `key = value` report; optionally appends the machine
    /// block (one tsv row per member and depth) and always appends the
    /// certificates backing "no" verdicts.
    pub fn render(&self, with_tsv: bool) -> String {
        let mut out = String::new();
        writeln!(out, "members = {}", self.names.len()).unwrap();
        writeln!(out, "r_max = {}", self.options.r_max).unwrap();
        writeln!(out, "m_cap = {}", self.options.m_cap).unwrap();
        writeln!(out, "budget = {}", self.options.budget.max_nodes).unwrap();
        writeln!(out, "slope_threshold = {}", self.options.slope_threshold).unwrap();
        writeln!(out).unwrap();
        for (name, st) in self.names.iter().zip(&self.stats) {
            let diameter = match st.diameter {
                Some(d) => d.to_string(),
                None => "inf".to_string(),
            };
            writeln!(
                out,
                "member {name} : vertices = {} ; edges = {} ; max_degree = {} ; diameter = {diameter}",
                st.vertex_count, st.edge_count, st.max_degree
            )
            .unwrap();
        }
        writeln!(out).unwrap();
        match &self.fit {
            Ok(fit) => {
                match fit.slope {
                    Some(s) => writeln!(out, "fit_slope = {s:.6}").unwrap(),
                    None => writeln!(out, "fit_slope = none").unwrap(),
                }
                writeln!(out, "fit_class = {}", fit.class).unwrap();
            }
            Err(e) => writeln!(out, "fit_error = {e}").unwrap(),
        }
        writeln!(out).unwrap();
        for row in &self.rows {
            writeln!(
                out,
                "r = {} : superflat_min_absent_m = {} ; minor_clique_max = {} ; top_clique_max = {}",
                row.r, row.superflat, row.minor_clique, row.top_clique
            )
            .unwrap();
        }
        writeln!(out).unwrap();
        writeln!(out, "superflat_sample = {}", self.superflat_sample).unwrap();
        writeln!(out, "nowhere_dense_sample = {}", self.nowhere_dense.verdict).unwrap();
        writeln!(out, "ultraflat_sample = {}", self.ultraflat.verdict).unwrap();
        writeln!(out, "ultraflat_min_absent_m = {}", self.ultraflat.minimal_absent).unwrap();
        if with_tsv {
            writeln!(out).unwrap();
            writeln!(out, "tsv:").unwrap();
            writeln!(out, "member\tvertices\tedges\tr\tsuperflat\tminor\ttopological").unwrap();
            for (name, st) in self.names.iter().zip(&self.stats) {
                for row in &self.rows {
                    writeln!(
                        out,
                        "{name}\t{}\t{}\t{}\t{}\t{}\t{}",
                        st.vertex_count,
                        st.edge_count,
                        row.r,
                        row.superflat,
                        row.minor_clique,
                        row.top_clique
                    )
                    .unwrap();
                }
            }
        }
        if let Some((member, r, model)) = &self.nowhere_dense.witness {
            writeln!(out).unwrap();
            writeln!(
                out,
                "# witness: member {} reaches the clique cap at depth {r}",
                self.names[*member]
            )
            .unwrap();
            out.push_str(&write_model(model));
        }
        if let Some((member, model)) = &self.ultraflat.witness {
            writeln!(out).unwrap();
            writeln!(
                out,
                "# witness: member {} contains the clique cap as a topological minor",
                self.names[*member]
            )
            .unwrap();
            out.push_str(&write_model(model));
        }
        out
    }
}
