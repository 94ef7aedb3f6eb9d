//! Exhaustive backtracking search for (topological) clique r-minors and for
//! arbitrary topological minor patterns.
//!
//! Search order is fully deterministic: branch candidates are tried in
//! degree-descending order (ties by vertex id), paths shortest-first with
//! lexicographic tie-breaking. Re-running any search with the same budget
//! returns the identical certificate.

use crate::budget::{BudgetCounter, SearchBudget, SearchOutcome};
use crate::graph::Graph;

use super::{BranchSet, Depth, MinorModel, ModelKind, PathCert};

/// Marker unwinding the recursion once the budget is gone.
struct Stop;

type Step<T> = Result<Option<T>, Stop>;

fn candidate_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    order
}

fn all_pairs_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    (0..g.n())
        .map(|v| g.distances_from(v).expect("vertex in range"))
        .collect()
}

/// `K_m` with every edge subdivided exactly `r` times, as a subgraph: a
/// topological model whose paths all have length exactly `r + 1`.
pub fn contains_subdivided_clique(
    g: &Graph,
    m: usize,
    r: usize,
    budget: &SearchBudget,
) -> SearchOutcome<MinorModel> {
    assert!(m >= 1, "pattern size must be at least 1");
    let pattern = clique_pattern(m);
    let mut counter = budget.counter();
    TopoEngine::new(g, pattern, r + 1, r + 1, Depth::Bounded(r)).run(&mut counter)
}

/// `K_m` as a topological r-minor: paths of length between 1 and 2r + 1.
pub fn top_clique_minor(
    g: &Graph,
    m: usize,
    r: usize,
    budget: &SearchBudget,
) -> SearchOutcome<MinorModel> {
    assert!(m >= 1, "pattern size must be at least 1");
    let pattern = clique_pattern(m);
    let mut counter = budget.counter();
    TopoEngine::new(g, pattern, 1, 2 * r + 1, Depth::Bounded(r)).run(&mut counter)
}

/// Arbitrary pattern `h` as a topological minor (unbounded path lengths):
/// branch vertices in bijection with the pattern vertices, one internally
/// disjoint path per pattern edge.
pub fn is_topological_minor(
    g: &Graph,
    h: &Graph,
    budget: &SearchBudget,
) -> SearchOutcome<MinorModel> {
    let pattern = Pattern {
        n: h.n(),
        edges: h.edges().collect(),
        degrees: (0..h.n()).map(|v| h.degree(v)).collect(),
        symmetric: false,
    };
    let max_len = g.n().max(1);
    let mut counter = budget.counter();
    TopoEngine::new(g, pattern, 1, max_len, Depth::Unbounded).run(&mut counter)
}

struct Pattern {
    n: usize,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
    /// Clique patterns admit the symmetry reduction of choosing branch
    /// images in increasing candidate order.
    symmetric: bool,
}

fn clique_pattern(m: usize) -> Pattern {
    Pattern {
        n: m,
        edges: (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .collect(),
        degrees: vec![m.saturating_sub(1); m],
        symmetric: true,
    }
}

struct TopoEngine<'a> {
    host: &'a Graph,
    pattern: Pattern,
    min_len: usize,
    max_len: usize,
    depth: Depth,
    order: Vec<usize>,
    dist: Vec<Vec<Option<usize>>>,
}

impl<'a> TopoEngine<'a> {
    fn new(
        host: &'a Graph,
        pattern: Pattern,
        min_len: usize,
        max_len: usize,
        depth: Depth,
    ) -> Self {
        TopoEngine {
            host,
            pattern,
            min_len,
            max_len,
            depth,
            order: candidate_order(host),
            dist: all_pairs_distances(host),
        }
    }

    fn run(&self, counter: &mut BudgetCounter) -> SearchOutcome<MinorModel> {
        if self.pattern.n > self.host.n() {
            return SearchOutcome::Exhausted;
        }
        let mut branches = Vec::with_capacity(self.pattern.n);
        let mut used = vec![false; self.host.n()];
        match self.choose_branch(0, &mut branches, &mut used, counter) {
            Ok(Some(model)) => SearchOutcome::Found(model),
            Ok(None) => SearchOutcome::Exhausted,
            Err(Stop) => SearchOutcome::BudgetExceeded,
        }
    }

    fn choose_branch(
        &self,
        k: usize,
        branches: &mut Vec<usize>,
        used: &mut Vec<bool>,
        counter: &mut BudgetCounter,
    ) -> Step<MinorModel> {
        if k == self.pattern.n {
            let mut blocked = used.clone();
            let mut paths = Vec::with_capacity(self.pattern.edges.len());
            return self.route_edge(0, branches, &mut blocked, &mut paths, counter);
        }
        let start = if self.pattern.symmetric && k > 0 {
            // branches[k-1] sits somewhere in `order`; continue after it.
            self.order
                .iter()
                .position(|&v| v == branches[k - 1])
                .unwrap()
                + 1
        } else {
            0
        };
        for pos in start..self.order.len() {
            if !counter.tick() {
                return Err(Stop);
            }
            let v = self.order[pos];
            if used[v] || self.host.degree(v) < self.pattern.degrees[k] {
                continue;
            }
            branches.push(v);
            used[v] = true;
            let res = self.choose_branch(k + 1, branches, used, counter)?;
            used[v] = false;
            branches.pop();
            if res.is_some() {
                return Ok(res);
            }
        }
        Ok(None)
    }

    fn route_edge(
        &self,
        e: usize,
        branches: &[usize],
        blocked: &mut Vec<bool>,
        paths: &mut Vec<PathCert>,
        counter: &mut BudgetCounter,
    ) -> Step<MinorModel> {
        if e == self.pattern.edges.len() {
            return Ok(Some(MinorModel {
                kind: ModelKind::Topological {
                    branches: branches.to_vec(),
                    paths: paths.clone(),
                },
                depth: self.depth,
            }));
        }
        let (i, j) = self.pattern.edges[e];
        let (s, t) = (branches[i], branches[j]);
        for len in self.min_len..=self.max_len {
            let mut path = vec![s];
            let res =
                self.extend_path(e, (i, j), t, len, branches, &mut path, blocked, paths, counter)?;
            if res.is_some() {
                return Ok(res);
            }
        }
        Ok(None)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_path(
        &self,
        e: usize,
        ends: (usize, usize),
        target: usize,
        remaining: usize,
        branches: &[usize],
        path: &mut Vec<usize>,
        blocked: &mut Vec<bool>,
        paths: &mut Vec<PathCert>,
        counter: &mut BudgetCounter,
    ) -> Step<MinorModel> {
        if !counter.tick() {
            return Err(Stop);
        }
        let last = *path.last().unwrap();
        if remaining == 0 {
            if last != target {
                return Ok(None);
            }
            paths.push(PathCert {
                ends,
                vertices: path.clone(),
            });
            let interior = &paths.last().unwrap().vertices;
            let interior: Vec<usize> = interior[1..interior.len() - 1].to_vec();
            for &w in &interior {
                blocked[w] = true;
            }
            let res = self.route_edge(e + 1, branches, blocked, paths, counter);
            for &w in &interior {
                blocked[w] = false;
            }
            paths.pop();
            return res;
        }
        // Host distance is a lower bound on the remaining path length.
        match self.dist[last][target] {
            Some(d) if d <= remaining => {}
            _ => return Ok(None),
        }
        for &w in self.host.neighbors(last) {
            let final_step = remaining == 1;
            if final_step {
                if w != target {
                    continue;
                }
            } else if blocked[w] || path.contains(&w) {
                // Interior vertices avoid branch vertices, committed
                // interiors and the current partial path.
                continue;
            }
            path.push(w);
            let res = self.extend_path(
                e,
                ends,
                target,
                remaining - 1,
                branches,
                path,
                blocked,
                paths,
                counter,
            )?;
            path.pop();
            if res.is_some() {
                return Ok(res);
            }
        }
        Ok(None)
    }
}

/// `K_m` as an r-minor: `m` pairwise-adjacent disjoint connected branch
/// sets of radius at most `r`.
pub fn clique_minor(
    g: &Graph,
    m: usize,
    r: usize,
    budget: &SearchBudget,
) -> SearchOutcome<MinorModel> {
    assert!(m >= 1, "pattern size must be at least 1");
    let engine = MinorEngine {
        host: g,
        m,
        r,
        order: candidate_order(g),
        dist: all_pairs_distances(g),
        // A minimal branch set is a center plus shortest paths to at most
        // m - 1 attachment vertices, so larger sets never help.
        max_set: 1 + (m - 1) * r,
    };
    let mut counter = budget.counter();
    let mut sets: Vec<BranchSet> = Vec::with_capacity(m);
    let mut used = vec![false; g.n()];
    match engine.choose_center(0, &mut sets, &mut used, &mut counter) {
        Ok(Some(model)) => SearchOutcome::Found(model),
        Ok(None) => SearchOutcome::Exhausted,
        Err(Stop) => SearchOutcome::BudgetExceeded,
    }
}

struct MinorEngine<'a> {
    host: &'a Graph,
    m: usize,
    r: usize,
    order: Vec<usize>,
    dist: Vec<Vec<Option<usize>>>,
    max_set: usize,
}

impl<'a> MinorEngine<'a> {
    fn choose_center(
        &self,
        min_pos: usize,
        sets: &mut Vec<BranchSet>,
        used: &mut Vec<bool>,
        counter: &mut BudgetCounter,
    ) -> Step<MinorModel> {
        if sets.len() == self.m {
            return Ok(Some(MinorModel {
                kind: ModelKind::BranchSets(sets.clone()),
                depth: Depth::Bounded(self.r),
            }));
        }
        for pos in min_pos..self.order.len() {
            if !counter.tick() {
                return Err(Stop);
            }
            let c = self.order[pos];
            if used[c] {
                continue;
            }
            let mut set = vec![c];
            used[c] = true;
            // Growth candidates: unused vertices within host distance r of
            // the center, adjacent to the current set. `seen` enforces the
            // canonical growth order (each connected set enumerated once).
            let mut seen = vec![false; self.host.n()];
            seen[c] = true;
            let ext = self.fresh_neighbors(c, &set, used, &mut seen, c);
            let res = self.grow(pos, c, &mut set, ext, sets, used, counter)?;
            used[c] = false;
            if res.is_some() {
                return Ok(res);
            }
        }
        Ok(None)
    }

    fn fresh_neighbors(
        &self,
        v: usize,
        set: &[usize],
        used: &[bool],
        seen: &mut [bool],
        center: usize,
    ) -> Vec<usize> {
        let mut out = Vec::new();
        for &w in self.host.neighbors(v) {
            if used[w] || seen[w] || set.contains(&w) {
                continue;
            }
            if !matches!(self.dist[center][w], Some(d) if d <= self.r) {
                continue;
            }
            seen[w] = true;
            out.push(w);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn grow(
        &self,
        center_pos: usize,
        center: usize,
        set: &mut Vec<usize>,
        ext: Vec<usize>,
        sets: &mut Vec<BranchSet>,
        used: &mut Vec<bool>,
        counter: &mut BudgetCounter,
    ) -> Step<MinorModel> {
        if !counter.tick() {
            return Err(Stop);
        }
        // First option: close the set as it stands.
        if self.acceptable(center, set, sets) {
            let mut vertices = set.clone();
            vertices.sort_unstable();
            sets.push(BranchSet { center, vertices });
            let res = self.choose_center(center_pos + 1, sets, used, counter)?;
            sets.pop();
            if res.is_some() {
                return Ok(res);
            }
        }
        if set.len() >= self.max_set {
            return Ok(None);
        }
        // Then every extension, each one banning the alternatives before it.
        for (k, &v) in ext.iter().enumerate() {
            set.push(v);
            used[v] = true;
            let mut seen = vec![false; self.host.n()];
            for &s in set.iter() {
                seen[s] = true;
            }
            for &e in &ext {
                seen[e] = true;
            }
            let mut ext2: Vec<usize> = ext[k + 1..].to_vec();
            ext2.extend(self.fresh_neighbors(v, set, used, &mut seen, center));
            let res = self.grow(center_pos, center, set, ext2, sets, used, counter)?;
            used[v] = false;
            set.pop();
            if res.is_some() {
                return Ok(res);
            }
        }
        Ok(None)
    }

    /// A candidate set is closable when its induced radius from the center
    /// is at most r and it touches every previously committed set.
    fn acceptable(&self, center: usize, set: &[usize], sets: &[BranchSet]) -> bool {
        let dist = super::induced_distances(self.host, set, center);
        if set
            .iter()
            .any(|&v| !matches!(dist[v], Some(d) if d <= self.r))
        {
            return false;
        }
        sets.iter().all(|prev| {
            prev.vertices
                .iter()
                .any(|&u| set.iter().any(|&v| self.host.has_edge(u, v)))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Minor,
    Topological,
}

/// Result of a capped clique-number search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileValue {
    Exact(usize),
    AtLeastCap(usize),
    BudgetExceeded { known_at_least: usize },
}

impl ProfileValue {
    pub fn known_at_least(&self) -> usize {
        match *self {
            ProfileValue::Exact(v) => v,
            ProfileValue::AtLeastCap(v) => v,
            ProfileValue::BudgetExceeded { known_at_least } => known_at_least,
        }
    }
}

/// Largest `m <= cap` such that `K_m` is found at depth `r`, by ascending
/// linear search (containment is monotone in `m`). Each probe runs with the
/// full budget.
pub fn clique_number_profile(
    g: &Graph,
    r: usize,
    cap: usize,
    mode: SearchMode,
    budget: &SearchBudget,
) -> ProfileValue {
    assert!(cap >= 1, "cap must be at least 1");
    let mut best = 0;
    for m in 1..=cap {
        let outcome = match mode {
            SearchMode::Minor => clique_minor(g, m, r, budget),
            SearchMode::Topological => top_clique_minor(g, m, r, budget),
        };
        match outcome {
            SearchOutcome::Found(_) => best = m,
            SearchOutcome::Exhausted => return ProfileValue::Exact(best),
            SearchOutcome::BudgetExceeded => {
                return ProfileValue::BudgetExceeded {
                    known_at_least: best,
                }
            }
        }
    }
    ProfileValue::AtLeastCap(cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::SearchBudget;
    use crate::generators::{standard_graph, subdivided_clique, FamilySpec};
    use crate::minors::verify_minor_model;

    fn b() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn k4_inside_k5() {
        let k5 = standard_graph(FamilySpec::Clique(5)).unwrap();
        let found = contains_subdivided_clique(&k5, 4, 0, &b());
        let model = found.found().expect("K_4 is a subgraph of K_5");
        verify_minor_model(&k5, &model).unwrap();
        assert!(model.covers_clique(4));
        assert!(model.paths_all_exact(1));
    }

    #[test]
    fn c6_is_a_once_subdivided_triangle() {
        let c6 = standard_graph(FamilySpec::Cycle(6)).unwrap();
        let model = contains_subdivided_clique(&c6, 3, 1, &b())
            .found()
            .expect("C_6 realizes K_3^1");
        verify_minor_model(&c6, &model).unwrap();
        assert!(model.paths_all_exact(2));
    }

    #[test]
    fn paths_never_contain_subdivided_triangles() {
        let p10 = standard_graph(FamilySpec::Path(10)).unwrap();
        for r in 0..3 {
            assert_eq!(
                contains_subdivided_clique(&p10, 3, r, &b()),
                SearchOutcome::Exhausted
            );
        }
    }

    #[test]
    fn top_minor_identity_and_tree_negative() {
        let k5 = standard_graph(FamilySpec::Clique(5)).unwrap();
        let model = top_clique_minor(&k5, 5, 0, &b()).found().unwrap();
        verify_minor_model(&k5, &model).unwrap();

        let star = standard_graph(FamilySpec::Star(5)).unwrap();
        for r in 0..3 {
            assert_eq!(top_clique_minor(&star, 3, r, &b()), SearchOutcome::Exhausted);
        }
    }

    #[test]
    fn subdivided_k4_has_a_shallow_topological_k4() {
        let host = subdivided_clique(4, 2).gadget.graph;
        let model = top_clique_minor(&host, 4, 1, &b())
            .found()
            .expect("paths of length 3 fit within 2r+1 = 3");
        verify_minor_model(&host, &model).unwrap();
    }

    #[test]
    fn clique_minor_examples() {
        let p5 = standard_graph(FamilySpec::Path(5)).unwrap();
        let model = clique_minor(&p5, 2, 2, &b()).found().unwrap();
        verify_minor_model(&p5, &model).unwrap();

        let star = standard_graph(FamilySpec::Star(5)).unwrap();
        assert_eq!(clique_minor(&star, 3, 0, &b()), SearchOutcome::Exhausted);

        let grid = standard_graph(FamilySpec::Grid(3, 3)).unwrap();
        let model = clique_minor(&grid, 3, 1, &b()).found().unwrap();
        verify_minor_model(&grid, &model).unwrap();
    }

    #[test]
    fn topological_minor_pattern_examples() {
        let prism = standard_graph(FamilySpec::Prism(3)).unwrap();
        let k1 = standard_graph(FamilySpec::Clique(1)).unwrap();
        assert!(is_topological_minor(&prism, &k1, &b()).is_found());

        let k4 = standard_graph(FamilySpec::Clique(4)).unwrap();
        let model = is_topological_minor(&prism, &k4, &b()).found().unwrap();
        verify_minor_model(&prism, &model).unwrap();

        let star4 = standard_graph(FamilySpec::Star(4)).unwrap();
        assert_eq!(
            is_topological_minor(&prism, &star4, &b()),
            SearchOutcome::Exhausted
        );
    }

    #[test]
    fn profile_examples() {
        let k6 = standard_graph(FamilySpec::Clique(6)).unwrap();
        assert_eq!(
            clique_number_profile(&k6, 0, 10, SearchMode::Minor, &b()),
            ProfileValue::Exact(6)
        );
        assert_eq!(
            clique_number_profile(&k6, 0, 10, SearchMode::Topological, &b()),
            ProfileValue::Exact(6)
        );

        let c6 = standard_graph(FamilySpec::Cycle(6)).unwrap();
        assert_eq!(
            clique_number_profile(&c6, 1, 5, SearchMode::Topological, &b()),
            ProfileValue::Exact(3)
        );

        let e5 = standard_graph(FamilySpec::Edgeless(5)).unwrap();
        assert_eq!(
            clique_number_profile(&e5, 2, 4, SearchMode::Minor, &b()),
            ProfileValue::Exact(1)
        );
    }

    #[test]
    fn budget_exceeded_is_distinct() {
        let k5 = standard_graph(FamilySpec::Clique(5)).unwrap();
        assert_eq!(
            contains_subdivided_clique(&k5, 4, 0, &SearchBudget::new(1)),
            SearchOutcome::BudgetExceeded
        );
        assert_eq!(
            clique_minor(&k5, 3, 1, &SearchBudget::new(1)),
            SearchOutcome::BudgetExceeded
        );
    }

    #[test]
    fn determinism_same_certificate_twice() {
        let grid = standard_graph(FamilySpec::Grid(3, 4)).unwrap();
        let a = top_clique_minor(&grid, 3, 2, &b());
        let bb = top_clique_minor(&grid, 3, 2, &b());
        assert_eq!(a, bb);
        let a = clique_minor(&grid, 4, 2, &b());
        let bb = clique_minor(&grid, 4, 2, &b());
        assert_eq!(a, bb);
    }
}
