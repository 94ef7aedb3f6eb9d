//! Finite simple undirected graphs with dense integer vertex ids.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::budget::{BudgetCounter, SearchBudget};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} already carries label {1:?}")]
    DuplicateLabel(usize, String),
    #[error("operation undefined on the empty graph")]
    EmptyGraph,
    #[error("search budget exceeded")]
    BudgetExceeded,
}

/// Immutable simple undirected graph. Vertices are `0..n`; adjacency lists
/// are kept sorted so that all traversal orders are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    labels: BTreeMap<usize, String>,
}

impl Graph {
    /// Builds a graph from an edge list. Rejects loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edge_count: 0,
            labels: BTreeMap::new(),
        }
    }

    fn add_edge_checked(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        if self.adj[u].contains(&v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }

    /// Attaches a role tag to a vertex. Each vertex carries at most one label.
    pub fn set_label(&mut self, v: usize, tag: impl Into<String>) -> Result<(), GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        if let Some(existing) = self.labels.get(&v) {
            return Err(GraphError::DuplicateLabel(v, existing.clone()));
        }
        self.labels.insert(v, tag.into());
        Ok(())
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Result<Vec<Option<usize>>, GraphError> {
        if source >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: source,
                n: self.n,
            });
        }
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Shortest-path distance; `None` means the vertices are disconnected.
    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self.distances_from(u)?[v])
    }

    /// Maximum pairwise distance; `None` means the graph is disconnected.
    /// The empty graph is rejected.
    pub fn diameter(&self) -> Result<Option<usize>, GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut best = 0;
        for v in 0..self.n {
            let dist = self.distances_from(v)?;
            for d in dist {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(best))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        match self.distances_from(0) {
            Ok(dist) => dist.iter().all(Option::is_some),
            Err(_) => false,
        }
    }

    pub fn stats(&self) -> Result<GraphStats, GraphError> {
        Ok(GraphStats {
            vertex_count: self.n,
            edge_count: self.edge_count,
            max_degree: self.max_degree(),
            diameter: self.diameter()?,
        })
    }

    /// All `k`-vertex sets inducing complete subgraphs, in lexicographic
    /// order of their sorted vertex lists. Exhaustive; the budget bounds the
    /// number of extension attempts.
    pub fn cliques_of_size(
        &self,
        k: usize,
        budget: &SearchBudget,
    ) -> Result<Vec<Vec<usize>>, GraphError> {
        assert!(k >= 1, "clique size must be at least 1");
        let mut out = Vec::new();
        let mut counter = budget.counter();
        let mut current = Vec::with_capacity(k);
        for start in 0..self.n {
            current.push(start);
            self.extend_clique(k, &mut current, &mut out, &mut counter)?;
            current.pop();
        }
        Ok(out)
    }

    fn extend_clique(
        &self,
        k: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        counter: &mut BudgetCounter,
    ) -> Result<(), GraphError> {
        if !counter.tick() {
            return Err(GraphError::BudgetExceeded);
        }
        if current.len() == k {
            out.push(current.clone());
            return Ok(());
        }
        let last = *current.last().unwrap();
        // Candidates above `last` keep the output lexicographic.
        for &v in &self.adj[last] {
            if v <= last {
                continue;
            }
            if current[..current.len() - 1].iter().all(|&u| self.has_edge(u, v)) {
                current.push(v);
                self.extend_clique(k, current, out, counter)?;
                current.pop();
            }
        }
        Ok(())
    }

    /// All chordless (induced) cycles of length exactly `k`, each in
    /// canonical rotation: smallest vertex first, then its smaller cycle
    /// neighbor.
    pub fn chordless_cycles_of_length(
        &self,
        k: usize,
        budget: &SearchBudget,
    ) -> Result<Vec<Vec<usize>>, GraphError> {
        assert!(k >= 3, "cycle length must be at least 3");
        let mut out = Vec::new();
        let mut counter = budget.counter();
        let mut path = Vec::with_capacity(k);
        for v0 in 0..self.n {
            path.push(v0);
            self.extend_cycle(k, &mut path, &mut out, &mut counter)?;
            path.pop();
        }
        Ok(out)
    }

    fn extend_cycle(
        &self,
        k: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        counter: &mut BudgetCounter,
    ) -> Result<(), GraphError> {
        if !counter.tick() {
            return Err(GraphError::BudgetExceeded);
        }
        let v0 = path[0];
        if path.len() == k {
            // Close the cycle; the final vertex must not "chord" back into
            // the interior, which is already guaranteed by construction.
            if self.has_edge(*path.last().unwrap(), v0) && path[1] < path[k - 1] {
                out.push(path.clone());
            }
            return Ok(());
        }
        let last = *path.last().unwrap();
        for &w in &self.adj[last] {
            // Smallest vertex first: all others stay above v0.
            if w <= v0 || path.contains(&w) {
                continue;
            }
            // Chordlessness: w may touch only its predecessor among the
            // vertices picked so far; the edge back to v0 is allowed only
            // when w closes the cycle.
            let closes = path.len() == k - 1;
            let chord = path[..path.len() - 1]
                .iter()
                .enumerate()
                .any(|(idx, &u)| self.has_edge(u, w) && !(idx == 0 && closes));
            if chord {
                continue;
            }
            path.push(w);
            self.extend_cycle(k, path, out, counter)?;
            path.pop();
        }
        Ok(())
    }
}

/// Vertex/edge counts, maximum degree and diameter of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStats {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub max_degree: usize,
    /// `None` marks a disconnected graph (infinite diameter).
    pub diameter: Option<usize>,
}

/// Disjoint union of a family, with the offset table that recovers original
/// membership.
#[derive(Debug, Clone)]
pub struct DisjointUnion {
    pub graph: Graph,
    /// `offsets[i]` is the id of member `i`'s vertex 0 in the union.
    pub offsets: Vec<usize>,
}

impl DisjointUnion {
    /// Maps a union vertex back to `(member index, local vertex)`.
    pub fn member_of(&self, v: usize) -> Option<(usize, usize)> {
        if v >= self.graph.n() {
            return None;
        }
        let i = match self.offsets.binary_search(&v) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        Some((i, v - self.offsets[i]))
    }
}

/// Puts all members side by side, shifting vertex ids by cumulative offsets.
/// No cross-member edges are introduced; labels are carried along.
pub fn disjoint_union(family: &[Graph]) -> DisjointUnion {
    let mut offsets = Vec::with_capacity(family.len());
    let mut n = 0;
    for g in family {
        offsets.push(n);
        n += g.n();
    }
    let mut graph = Graph::empty(n);
    for (g, &off) in family.iter().zip(&offsets) {
        for (u, v) in g.edges() {
            graph
                .add_edge_checked(u + off, v + off)
                .expect("members are valid graphs");
        }
        for (&v, tag) in g.labels() {
            graph
                .set_label(v + off, tag.clone())
                .expect("members label each vertex at most once");
        }
    }
    for list in &mut graph.adj {
        list.sort_unstable();
    }
    DisjointUnion { graph, offsets }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::new(n, &edges).unwrap()
    }

    fn clique(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(GraphError::LoopEdge(0)));
        assert_eq!(
            Graph::new(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn distance_basics() {
        let p = path(3);
        assert_eq!(p.distance(0, 2).unwrap(), Some(2));
        assert_eq!(p.distance(1, 1).unwrap(), Some(0));
        let two = Graph::new(2, &[]).unwrap();
        assert_eq!(two.distance(0, 1).unwrap(), None);
        assert!(p.distance(0, 9).is_err());
    }

    #[test]
    fn diameter_basics() {
        assert_eq!(clique(3).diameter().unwrap(), Some(1));
        assert_eq!(path(5).diameter().unwrap(), Some(4));
        assert_eq!(Graph::new(2, &[]).unwrap().diameter().unwrap(), None);
        assert_eq!(Graph::empty(0).diameter(), Err(GraphError::EmptyGraph));
    }

    #[test]
    fn distance_one_iff_edge_and_triangle_inequality() {
        let g = cycle(6);
        for u in 0..6 {
            for v in 0..6 {
                let duv = g.distance(u, v).unwrap().unwrap();
                assert_eq!(duv == 1, g.has_edge(u, v));
                for w in 0..6 {
                    let duw = g.distance(u, w).unwrap().unwrap();
                    let dwv = g.distance(w, v).unwrap().unwrap();
                    assert!(duv <= duw + dwv);
                }
            }
        }
    }

    #[test]
    fn cliques_of_size_examples() {
        let b = SearchBudget::default();
        assert_eq!(
            clique(4).cliques_of_size(4, &b).unwrap(),
            vec![vec![0, 1, 2, 3]]
        );
        assert!(cycle(5).cliques_of_size(3, &b).unwrap().is_empty());
        // Oracle: K_5 has choose(5, 4) = 5 four-cliques.
        let found = clique(5).cliques_of_size(4, &b).unwrap();
        assert_eq!(found.len(), 5);
        // Lexicographic order of sorted vertex lists.
        let mut sorted = found.clone();
        sorted.sort();
        assert_eq!(found, sorted);
    }

    #[test]
    fn clique_budget_is_an_error() {
        let g = clique(6);
        assert_eq!(
            g.cliques_of_size(3, &SearchBudget::new(2)),
            Err(GraphError::BudgetExceeded)
        );
    }

    #[test]
    fn chordless_cycles_examples() {
        let b = SearchBudget::default();
        assert_eq!(
            cycle(4).chordless_cycles_of_length(4, &b).unwrap(),
            vec![vec![0, 1, 2, 3]]
        );
        assert!(clique(4).chordless_cycles_of_length(4, &b).unwrap().is_empty());
        assert!(cycle(6).chordless_cycles_of_length(4, &b).unwrap().is_empty());
        assert_eq!(cycle(6).chordless_cycles_of_length(6, &b).unwrap().len(), 1);
    }

    #[test]
    fn chordless_cycle_canonical_rotation() {
        // 4-cycle written with shuffled ids: edges {2,0},{0,3},{3,1},{1,2}.
        let g = Graph::new(4, &[(2, 0), (0, 3), (3, 1), (1, 2)]).unwrap();
        let cycles = g
            .chordless_cycles_of_length(4, &SearchBudget::default())
            .unwrap();
        assert_eq!(cycles, vec![vec![0, 2, 1, 3]]);
    }

    #[test]
    fn disjoint_union_examples() {
        let k2 = clique(2);
        let u = disjoint_union(&[k2.clone(), k2.clone()]);
        assert_eq!(u.graph.n(), 4);
        assert_eq!(u.graph.edge_count(), 2);
        assert!(!u.graph.is_connected());
        assert_eq!(u.member_of(3), Some((1, 1)));

        let empty = disjoint_union(&[]);
        assert_eq!(empty.graph.n(), 0);

        let u = disjoint_union(&[clique(3), path(2)]);
        assert_eq!(u.graph.n(), 5);
        assert_eq!(u.graph.edge_count(), 4);
    }

    #[test]
    fn labels_are_single_per_vertex() {
        let mut g = Graph::empty(2);
        g.set_label(0, "t").unwrap();
        assert_eq!(
            g.set_label(0, "u"),
            Err(GraphError::DuplicateLabel(0, "t".into()))
        );
        assert_eq!(g.label(0), Some("t"));
        assert_eq!(g.label(1), None);
    }
}
