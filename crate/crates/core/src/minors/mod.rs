//! Shallow-minor certificates and exhaustive witness search.
//!
//! A [`MinorModel`] is an explicit, independently re-checkable witness that
//! a clique (or an arbitrary pattern graph) occurs as an r-minor or
//! topological r-minor of a host. [`verify_minor_model`] re-validates every
//! defining clause and names the first one that fails.

mod search;
mod text;

pub use search::{
    clique_minor, clique_number_profile, contains_subdivided_clique, is_topological_minor,
    top_clique_minor, ProfileValue, SearchMode,
};
pub use text::{parse_model, write_model};

use thiserror::Error;

use crate::graph::Graph;

/// Search depth: `Bounded(r)` for r-minors, `Unbounded` for plain
/// topological minors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Bounded(usize),
    Unbounded,
}

/// One contracted class of a branch-set model: a connected set with a
/// designated center within distance r of every member (measured inside the
/// induced subgraph of the set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchSet {
    pub center: usize,
    /// Sorted; contains the center.
    pub vertices: Vec<usize>,
}

/// One subdivided pattern edge of a topological model: the full host path
/// from `branches[ends.0]` to `branches[ends.1]`, endpoints included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCert {
    pub ends: (usize, usize),
    pub vertices: Vec<usize>,
}

impl PathCert {
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn interior(&self) -> &[usize] {
        if self.vertices.len() < 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelKind {
    BranchSets(Vec<BranchSet>),
    Topological {
        branches: Vec<usize>,
        paths: Vec<PathCert>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorModel {
    pub kind: ModelKind,
    pub depth: Depth,
}

impl MinorModel {
    /// Number of pattern vertices the model realizes.
    pub fn pattern_size(&self) -> usize {
        match &self.kind {
            ModelKind::BranchSets(sets) => sets.len(),
            ModelKind::Topological { branches, .. } => branches.len(),
        }
    }

    /// True iff a topological model lists exactly one path per unordered
    /// pair of pattern indices (the clique pattern).
    pub fn covers_clique(&self, m: usize) -> bool {
        match &self.kind {
            ModelKind::BranchSets(sets) => sets.len() == m,
            ModelKind::Topological { branches, paths } => {
                if branches.len() != m {
                    return false;
                }
                let mut want: Vec<(usize, usize)> = (0..m)
                    .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
                    .collect();
                let mut got: Vec<(usize, usize)> = paths
                    .iter()
                    .map(|p| (p.ends.0.min(p.ends.1), p.ends.0.max(p.ends.1)))
                    .collect();
                want.sort_unstable();
                got.sort_unstable();
                want == got
            }
        }
    }

    /// True iff every path of a topological model has exactly `len` edges.
    pub fn paths_all_exact(&self, len: usize) -> bool {
        match &self.kind {
            ModelKind::Topological { paths, .. } => paths.iter().all(|p| p.len() == len),
            ModelKind::BranchSets(_) => false,
        }
    }
}

/// The first violated clause of a model, by name.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelViolation {
    #[error("dangling vertex id {0}")]
    DanglingVertex(usize),
    #[error("branch set {0} is empty")]
    EmptySet(usize),
    #[error("center {center} of branch set {set} is not a member")]
    CenterNotInSet { set: usize, center: usize },
    #[error("branch sets {0} and {1} share vertex {2}")]
    SetsOverlap(usize, usize, usize),
    #[error("branch set {set} is not connected (vertex {vertex} unreachable from its center)")]
    SetDisconnected { set: usize, vertex: usize },
    #[error("vertex {vertex} of branch set {set} is at distance {dist} > r = {r} from the center")]
    RadiusExceeded {
        set: usize,
        vertex: usize,
        dist: usize,
        r: usize,
    },
    #[error("branch sets {0} and {1} are not joined by any host edge")]
    SetsNotAdjacent(usize, usize),
    #[error("branch vertices are not pairwise distinct")]
    BranchesNotDistinct,
    #[error("path for pattern edge ({0}, {1}) has an invalid endpoint pair")]
    BadPatternEdge(usize, usize),
    #[error("path for pattern edge ({0}, {1}) does not start and end at its branch vertices")]
    PathEndpointMismatch(usize, usize),
    #[error("path for pattern edge ({0}, {1}) must have length at least 1")]
    PathTooShort(usize, usize),
    #[error("path for pattern edge ({i}, {j}) has {len} edges, more than 2r+1 = {max}")]
    PathTooLong {
        i: usize,
        j: usize,
        len: usize,
        max: usize,
    },
    #[error("path for pattern edge ({0}, {1}) is not a simple path in the host")]
    NotAPath(usize, usize),
    #[error("path interiors collide at vertex {0} (or hit a branch vertex)")]
    InteriorCollision(usize),
}

/// Re-checks every defining clause of a model against its host.
pub fn verify_minor_model(host: &Graph, model: &MinorModel) -> Result<(), ModelViolation> {
    match &model.kind {
        ModelKind::BranchSets(sets) => verify_branch_sets(host, sets, model.depth),
        ModelKind::Topological { branches, paths } => {
            verify_topological(host, branches, paths, model.depth)
        }
    }
}

fn verify_branch_sets(
    host: &Graph,
    sets: &[BranchSet],
    depth: Depth,
) -> Result<(), ModelViolation> {
    let n = host.n();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, set) in sets.iter().enumerate() {
        if set.vertices.is_empty() {
            return Err(ModelViolation::EmptySet(i));
        }
        if !set.vertices.contains(&set.center) {
            return Err(ModelViolation::CenterNotInSet {
                set: i,
                center: set.center,
            });
        }
        for &v in &set.vertices {
            if v >= n {
                return Err(ModelViolation::DanglingVertex(v));
            }
            match owner[v] {
                Some(j) => return Err(ModelViolation::SetsOverlap(j, i, v)),
                None => owner[v] = Some(i),
            }
        }
    }
    for (i, set) in sets.iter().enumerate() {
        let dist = induced_distances(host, &set.vertices, set.center);
        for &v in &set.vertices {
            match dist[v] {
                None => return Err(ModelViolation::SetDisconnected { set: i, vertex: v }),
                Some(d) => {
                    if let Depth::Bounded(r) = depth {
                        if d > r {
                            return Err(ModelViolation::RadiusExceeded {
                                set: i,
                                vertex: v,
                                dist: d,
                                r,
                            });
                        }
                    }
                }
            }
        }
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let joined = sets[i]
                .vertices
                .iter()
                .any(|&u| sets[j].vertices.iter().any(|&v| host.has_edge(u, v)));
            if !joined {
                return Err(ModelViolation::SetsNotAdjacent(i, j));
            }
        }
    }
    Ok(())
}

/// BFS from `center` inside the subgraph induced by `set`. Indexed by host
/// vertex id; vertices outside the set stay `None`.
pub(crate) fn induced_distances(host: &Graph, set: &[usize], center: usize) -> Vec<Option<usize>> {
    let mut in_set = vec![false; host.n()];
    for &v in set {
        in_set[v] = true;
    }
    let mut dist = vec![None; host.n()];
    dist[center] = Some(0);
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(center);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in host.neighbors(u) {
            if in_set[w] && dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

fn verify_topological(
    host: &Graph,
    branches: &[usize],
    paths: &[PathCert],
    depth: Depth,
) -> Result<(), ModelViolation> {
    let n = host.n();
    let mut is_branch = vec![false; n];
    for &b in branches {
        if b >= n {
            return Err(ModelViolation::DanglingVertex(b));
        }
        if is_branch[b] {
            return Err(ModelViolation::BranchesNotDistinct);
        }
        is_branch[b] = true;
    }
    let mut interior_used = vec![false; n];
    for p in paths {
        let (i, j) = p.ends;
        if i >= branches.len() || j >= branches.len() || i == j {
            return Err(ModelViolation::BadPatternEdge(i, j));
        }
        if p.vertices.len() < 2 {
            return Err(ModelViolation::PathTooShort(i, j));
        }
        if p.vertices[0] != branches[i] || *p.vertices.last().unwrap() != branches[j] {
            return Err(ModelViolation::PathEndpointMismatch(i, j));
        }
        if let Depth::Bounded(r) = depth {
            let max = 2 * r + 1;
            if p.len() > max {
                return Err(ModelViolation::PathTooLong {
                    i,
                    j,
                    len: p.len(),
                    max,
                });
            }
        }
        let mut seen_in_path = std::collections::BTreeSet::new();
        for w in p.vertices.windows(2) {
            if w[0] >= n || w[1] >= n {
                return Err(ModelViolation::DanglingVertex(w[0].max(w[1])));
            }
            if !host.has_edge(w[0], w[1]) {
                return Err(ModelViolation::NotAPath(i, j));
            }
        }
        for &v in &p.vertices {
            if !seen_in_path.insert(v) {
                return Err(ModelViolation::NotAPath(i, j));
            }
        }
        for &v in p.interior() {
            if is_branch[v] || interior_used[v] {
                return Err(ModelViolation::InteriorCollision(v));
            }
            interior_used[v] = true;
        }
    }
    Ok(())
}
