//! Named graph families and gadget constructions.
//!
//! Every generator assigns vertex ids in a documented construction order and
//! tags each vertex with exactly one role label, so outputs are deterministic
//! and certificates can refer to roles by name.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::Graph;
use crate::structure::RelStructure;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// A generated graph in which every vertex carries a role tag.
#[derive(Debug, Clone)]
pub struct GadgetGraph {
    pub graph: Graph,
}

impl GadgetGraph {
    fn new(graph: Graph) -> Self {
        debug_assert!(
            (0..graph.n()).all(|v| graph.label(v).is_some()),
            "gadget vertices must all carry a role tag"
        );
        GadgetGraph { graph }
    }

    pub fn labeled(&self, tag: &str) -> Option<usize> {
        self.graph
            .labels()
            .iter()
            .find(|(_, t)| t.as_str() == tag)
            .map(|(&v, _)| v)
    }

    pub fn with_prefix(&self, prefix: &str) -> Vec<(usize, &str)> {
        self.graph
            .labels()
            .iter()
            .filter(|(_, t)| t.starts_with(prefix))
            .map(|(&v, t)| (v, t.as_str()))
            .collect()
    }
}

/// One subdivided branch edge: the pair of branch indices and the interior
/// vertices listed from the lower-index endpoint to the higher one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSegment {
    pub ends: (usize, usize),
    pub interior: Vec<usize>,
}

/// `K_m` with every edge subdivided exactly `r` times.
#[derive(Debug, Clone)]
pub struct SubdividedClique {
    pub gadget: GadgetGraph,
    pub branch: Vec<usize>,
    /// One segment per branch pair `(i, j)`, `i < j`, in lexicographic order.
    pub paths: Vec<PathSegment>,
}

/// Construction order: branch vertices `0..m`, then for each pair `(i, j)`
/// in lexicographic order the `r` subdivision vertices from `i` towards `j`.
pub fn subdivided_clique(m: usize, r: usize) -> SubdividedClique {
    assert!(m >= 1, "clique size must be at least 1");
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let n = m + r * pairs.len();
    let mut edges = Vec::new();
    let mut paths = Vec::new();
    let mut next = m;
    for &(i, j) in &pairs {
        let interior: Vec<usize> = (0..r).map(|s| next + s).collect();
        next += r;
        let mut prev = i;
        for &w in &interior {
            edges.push((prev, w));
            prev = w;
        }
        edges.push((prev, j));
        paths.push(PathSegment {
            ends: (i, j),
            interior,
        });
    }
    let mut g = Graph::new(n, &edges).expect("construction yields a simple graph");
    for b in 0..m {
        g.set_label(b, format!("branch{b}")).unwrap();
    }
    for seg in &paths {
        for (s, &w) in seg.interior.iter().enumerate() {
            g.set_label(w, format!("sub{}-{}-{}", seg.ends.0, seg.ends.1, s + 1))
                .unwrap();
        }
    }
    SubdividedClique {
        gadget: GadgetGraph::new(g),
        branch: (0..m).collect(),
        paths,
    }
}

/// Two sides `a_0..a_{n-1}`, `b_0..b_{n-1}` with `{a_i, b_j}` an edge iff
/// `i < j`.
#[derive(Debug, Clone)]
pub struct HalfGraph {
    pub gadget: GadgetGraph,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

pub fn half_graph(n: usize) -> HalfGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, n + j));
        }
    }
    let mut g = Graph::new(2 * n, &edges).expect("construction yields a simple graph");
    for i in 0..n {
        g.set_label(i, format!("a{i}")).unwrap();
        g.set_label(n + i, format!("b{i}")).unwrap();
    }
    HalfGraph {
        gadget: GadgetGraph::new(g),
        left: (0..n).collect(),
        right: (n..2 * n).collect(),
    }
}

/// One member of the standard test families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Clique(usize),
    Path(usize),
    Cycle(usize),
    /// rows x cols
    Grid(usize, usize),
    /// number of leaves
    Star(usize),
    /// prism over an n-gon (n >= 3): two n-cycles joined by spokes
    Prism(usize),
    Edgeless(usize),
}

pub fn standard_graph(spec: FamilySpec) -> Result<Graph, GeneratorError> {
    let bad = |msg: &str| Err(GeneratorError::InvalidParams(msg.to_string()));
    match spec {
        FamilySpec::Clique(n) => {
            if n == 0 {
                return bad("clique needs n >= 1");
            }
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            Ok(Graph::new(n, &edges).unwrap())
        }
        FamilySpec::Path(n) => {
            if n == 0 {
                return bad("path needs n >= 1");
            }
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Ok(Graph::new(n, &edges).unwrap())
        }
        FamilySpec::Cycle(n) => {
            if n < 3 {
                return bad("cycle needs n >= 3");
            }
            let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            edges.push((n - 1, 0));
            Ok(Graph::new(n, &edges).unwrap())
        }
        FamilySpec::Grid(rows, cols) => {
            if rows == 0 || cols == 0 {
                return bad("grid needs rows, cols >= 1");
            }
            let mut edges = Vec::new();
            for i in 0..rows {
                for j in 0..cols {
                    let v = i * cols + j;
                    if j + 1 < cols {
                        edges.push((v, v + 1));
                    }
                    if i + 1 < rows {
                        edges.push((v, v + cols));
                    }
                }
            }
            Ok(Graph::new(rows * cols, &edges).unwrap())
        }
        FamilySpec::Star(leaves) => {
            let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
            Ok(Graph::new(leaves + 1, &edges).unwrap())
        }
        FamilySpec::Prism(n) => {
            if n < 3 {
                return bad("prism needs n >= 3");
            }
            let mut edges = Vec::new();
            for i in 0..n {
                edges.push((i, (i + 1) % n));
                edges.push((n + i, n + (i + 1) % n));
                edges.push((i, n + i));
            }
            edges.sort_unstable();
            Ok(Graph::new(2 * n, &edges).unwrap())
        }
        FamilySpec::Edgeless(n) => Ok(Graph::empty(n)),
    }
}

pub fn standard_family(specs: &[FamilySpec]) -> Result<Vec<Graph>, GeneratorError> {
    crate::exec::ordered_map(specs, |&s| standard_graph(s))
        .into_iter()
        .collect()
}

/// The diameter-at-most-4 augmentation of a graph.
#[derive(Debug, Clone)]
pub struct Augmented {
    pub gadget: GadgetGraph,
    /// Original vertices keep their ids `0..n`.
    pub original: Vec<usize>,
    /// `((u, v), e)` for every original edge, `u < v`.
    pub edge_vertices: Vec<((usize, usize), usize)>,
    pub t: usize,
    pub t1: usize,
    pub t2: usize,
}

/// Replaces every edge `{a, b}` by a length-2 path through a fresh vertex,
/// adds an apex triangle `t, t1, t2`, and joins `t` to every original
/// vertex. Ids: originals `0..n`, edge vertices in lexicographic edge order,
/// then `t, t1, t2`.
pub fn augment_diameter4(a: &Graph) -> Augmented {
    let n = a.n();
    let m = a.edge_count();
    let t = n + m;
    let (t1, t2) = (t + 1, t + 2);
    let mut edges = Vec::with_capacity(2 * m + 3 + n);
    let mut edge_vertices = Vec::with_capacity(m);
    for (k, (u, v)) in a.edges().enumerate() {
        let e = n + k;
        edges.push((u, e));
        edges.push((e, v));
        edge_vertices.push(((u, v), e));
    }
    edges.push((t, t1));
    edges.push((t, t2));
    edges.push((t1, t2));
    for v in 0..n {
        edges.push((t, v));
    }
    let mut g = Graph::new(n + m + 3, &edges).expect("construction yields a simple graph");
    for v in 0..n {
        g.set_label(v, format!("v{v}")).unwrap();
    }
    for &((u, v), e) in &edge_vertices {
        g.set_label(e, format!("e{u}-{v}")).unwrap();
    }
    g.set_label(t, "t").unwrap();
    g.set_label(t1, "t1").unwrap();
    g.set_label(t2, "t2").unwrap();
    Augmented {
        gadget: GadgetGraph::new(g),
        original: (0..n).collect(),
        edge_vertices,
        t,
        t1,
        t2,
    }
}

/// The undirected-graph encoding of a coloured digraph.
#[derive(Debug, Clone)]
pub struct DigraphEncoding {
    pub gadget: GadgetGraph,
    /// Element `a` of the source structure maps to vertex `a` (ids are
    /// preserved: elements are the first `n` vertices).
    pub element_image: Vec<usize>,
    /// For each directed binary fact `(a, b)`, the vertex its tag path hangs
    /// at (the pair vertex adjacent to `b`, or the far loop vertex).
    pub fact_anchor: Vec<((usize, usize), usize)>,
    /// Apex of the nullary gadget (adjacent to the chordless 4-cycle).
    pub d_vertex: usize,
}

/// Builds the graph `G'` for a structure with arity <= 2, in six steps:
/// (i) per element a 4-clique hung off the element; (ii) per unary fact
/// `P_i(a)` a pendant path of `i` vertices at `a`; (iii) per unordered pair
/// `{a, b}` touched by any binary fact two middle vertices forming a path
/// `a - c_ba - c_ab - b` (for a loop `{a, a}` a triangle `a - c - c'`);
/// (iv) per directed fact `(a, b)` in the `i`-th binary symbol a pendant
/// path of `i` vertices at `c_ab` (at `c'` for loops); (v) a gadget `d`
/// pendant on a chordless 4-cycle `d0 d1 d2 d3`; (vi) per true `i`-th
/// nullary symbol a pendant path of `i` vertices at `d`. Vertex ids follow
/// exactly this order.
pub fn encode_digraph(m: &RelStructure) -> DigraphEncoding {
    let n = m.universe_size();
    let sig = m.signature();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut labels: Vec<(usize, String)> = Vec::new();
    let mut next = n;
    let mut fresh = |labels: &mut Vec<(usize, String)>, tag: String| {
        let v = next;
        labels.push((v, tag));
        next += 1;
        v
    };

    // (i) element gadgets
    for a in 0..n {
        labels.push((a, format!("el{a}")));
        let k: Vec<usize> = (0..4)
            .map(|j| fresh(&mut labels, format!("el{a}-k{j}")))
            .collect();
        edges.push((a, k[0]));
        for x in 0..4 {
            for y in x + 1..4 {
                edges.push((k[x], k[y]));
            }
        }
    }

    // (ii) unary pendant paths
    for (cls, idx) in sig.class(1) {
        for a in m.unary_facts(idx) {
            let mut prev = a;
            for s in 1..=cls {
                let c = fresh(&mut labels, format!("p{cls}-{a}-{s}"));
                edges.push((prev, c));
                prev = c;
            }
        }
    }

    // (iii) pair gadgets, one per unordered pair touched by any binary fact
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (_, idx) in sig.class(2) {
        for (a, b) in m.binary_facts(idx) {
            pairs.insert((a.min(b), a.max(b)));
        }
    }
    // anchor(a, b) = vertex the tag path for a directed fact (a, b) hangs at
    let mut anchor: std::collections::BTreeMap<(usize, usize), usize> =
        std::collections::BTreeMap::new();
    for &(x, y) in &pairs {
        if x == y {
            let c = fresh(&mut labels, format!("loop{x}-0"));
            let c2 = fresh(&mut labels, format!("loop{x}-1"));
            edges.push((x, c));
            edges.push((c, c2));
            edges.push((c2, x));
            anchor.insert((x, x), c2);
        } else {
            // c_yx is adjacent to x, c_xy adjacent to y.
            let cyx = fresh(&mut labels, format!("c{y}-{x}"));
            let cxy = fresh(&mut labels, format!("c{x}-{y}"));
            edges.push((x, cyx));
            edges.push((cyx, cxy));
            edges.push((cxy, y));
            anchor.insert((y, x), cyx);
            anchor.insert((x, y), cxy);
        }
    }

    // (iv) binary pendant paths
    let mut fact_anchor = Vec::new();
    for (cls, idx) in sig.class(2) {
        for (a, b) in m.binary_facts(idx) {
            let at = anchor[&(a, b)];
            fact_anchor.push(((a, b), at));
            let mut prev = at;
            for s in 1..=cls {
                let c = fresh(&mut labels, format!("r{cls}-{a}-{b}-{s}"));
                edges.push((prev, c));
                prev = c;
            }
        }
    }

    // (v) nullary gadget
    let d = fresh(&mut labels, "d".to_string());
    let d0 = fresh(&mut labels, "d0".to_string());
    let d1 = fresh(&mut labels, "d1".to_string());
    let d2 = fresh(&mut labels, "d2".to_string());
    let d3 = fresh(&mut labels, "d3".to_string());
    edges.push((d, d0));
    edges.push((d0, d1));
    edges.push((d1, d2));
    edges.push((d2, d3));
    edges.push((d3, d0));

    // (vi) nullary pendant paths
    for (cls, idx) in sig.class(0) {
        if m.nullary_true(idx) {
            let mut prev = d;
            for s in 1..=cls {
                let c = fresh(&mut labels, format!("q{cls}-{s}"));
                edges.push((prev, c));
                prev = c;
            }
        }
    }

    let mut g = Graph::new(next, &edges).expect("construction yields a simple graph");
    for (v, tag) in labels {
        g.set_label(v, tag).unwrap();
    }
    DigraphEncoding {
        gadget: GadgetGraph::new(g),
        element_image: (0..n).collect(),
        fact_anchor,
        d_vertex: d,
    }
}

/// The shattering witness graph `A_m` at path length `r + 1`.
#[derive(Debug, Clone)]
pub struct IndependenceWitness {
    pub gadget: GadgetGraph,
    /// `a[i]` = vertex for index i (ids `0..m`).
    pub a: Vec<usize>,
    /// `b[mask]` = vertex for the subset with that bitmask
    /// (ids `m..m + 2^m`, ordered by mask value).
    pub b: Vec<usize>,
    /// One segment per `(i, mask)` with bit `i` of `mask` set, ordered by
    /// `i` then `mask`; `ends = (a[i], b[mask])`.
    pub paths: Vec<PathSegment>,
}

/// Vertices `a_0..a_{m-1}`, one `b_J` per subset `J` of `{0..m-1}` (bit `i`
/// set iff `i` in `J`), and for every `i` in `J` an internally disjoint path
/// of length `r + 1` from `a_i` to `b_J`.
pub fn independence_witness(m: usize, r: usize) -> IndependenceWitness {
    assert!(m >= 1, "witness needs m >= 1");
    let subsets = 1usize << m;
    let a: Vec<usize> = (0..m).collect();
    let b: Vec<usize> = (0..subsets).map(|mask| m + mask).collect();
    let mut edges = Vec::new();
    let mut paths = Vec::new();
    let mut next = m + subsets;
    for i in 0..m {
        for mask in 0..subsets {
            if mask & (1 << i) == 0 {
                continue;
            }
            let interior: Vec<usize> = (0..r).map(|s| next + s).collect();
            next += r;
            let mut prev = a[i];
            for &w in &interior {
                edges.push((prev, w));
                prev = w;
            }
            edges.push((prev, b[mask]));
            paths.push(PathSegment {
                ends: (a[i], b[mask]),
                interior,
            });
        }
    }
    let mut g = Graph::new(next, &edges).expect("construction yields a simple graph");
    for i in 0..m {
        g.set_label(i, format!("a{i}")).unwrap();
    }
    for mask in 0..subsets {
        g.set_label(m + mask, format!("b{mask}")).unwrap();
    }
    for seg in &paths {
        let i = seg.ends.0;
        let mask = seg.ends.1 - m;
        for (s, &w) in seg.interior.iter().enumerate() {
            g.set_label(w, format!("w{}-{}-{}", i, mask, s + 1)).unwrap();
        }
    }
    IndependenceWitness {
        gadget: GadgetGraph::new(g),
        a,
        b,
        paths,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingViolation {
    #[error("vertex map is not injective at {0}")]
    NotInjective(usize),
    #[error("witness edge ({0}, {1}) does not map to a host edge")]
    EdgeNotPreserved(usize, usize),
}

/// An explicit subgraph embedding of `A_m` into `K_{m + 2^m}^r`.
#[derive(Debug, Clone)]
pub struct WitnessEmbedding {
    pub witness: IndependenceWitness,
    pub host: SubdividedClique,
    /// `map[v]` = host image of witness vertex `v`.
    pub map: Vec<usize>,
}

impl WitnessEmbedding {
    /// Re-checks the certificate edge by edge.
    pub fn validate(&self) -> Result<(), EmbeddingViolation> {
        let mut seen = vec![false; self.host.gadget.graph.n()];
        for &img in &self.map {
            if seen[img] {
                return Err(EmbeddingViolation::NotInjective(img));
            }
            seen[img] = true;
        }
        for (u, v) in self.witness.gadget.graph.edges() {
            if !self.host.gadget.graph.has_edge(self.map[u], self.map[v]) {
                return Err(EmbeddingViolation::EdgeNotPreserved(u, v));
            }
        }
        Ok(())
    }
}

/// Maps `a_i` and `b_J` onto branch vertices `i` and `m + J` of
/// `K_{m + 2^m}^r` and each witness path onto the subdivided branch edge
/// between the images.
pub fn embed_witness_in_subdivided_clique(m: usize, r: usize) -> WitnessEmbedding {
    let witness = independence_witness(m, r);
    let host = subdivided_clique(m + (1 << m), r);
    let mut map = vec![usize::MAX; witness.gadget.graph.n()];
    for i in 0..m {
        map[witness.a[i]] = host.branch[i];
    }
    for (mask, &bv) in witness.b.iter().enumerate() {
        map[bv] = host.branch[m + mask];
    }
    for seg in &witness.paths {
        let i = seg.ends.0;
        let mask = seg.ends.1 - m;
        let host_pair = (i, m + mask);
        let host_seg = host
            .paths
            .iter()
            .find(|s| s.ends == host_pair)
            .expect("host contains every branch pair");
        // Both interiors run from the a-side to the b-side.
        for (w, hw) in seg.interior.iter().zip(&host_seg.interior) {
            map[*w] = *hw;
        }
    }
    WitnessEmbedding { witness, host, map }
}
