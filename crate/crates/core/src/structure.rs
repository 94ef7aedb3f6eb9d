//! Finite relational structures with relation symbols of arity at most 2
//! ("coloured digraphs"), and their Gaifman graphs.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("relation symbol {0:?} declared twice")]
    DuplicateSymbol(String),
    #[error("arity {arity} of symbol {symbol:?} unsupported (must be 0, 1 or 2)")]
    UnsupportedArity { symbol: String, arity: usize },
    #[error("unknown relation symbol {0:?}")]
    UnknownSymbol(String),
    #[error("symbol {symbol:?} has arity {expected}, got {got} arguments")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        got: usize,
    },
    #[error("element {element} out of range (universe has {n} elements)")]
    ElementOutOfRange { element: usize, n: usize },
}

/// Relation symbols with arities in `{0, 1, 2}`. Symbol order is the
/// declaration order; within each arity class, symbols are numbered from 1
/// in declaration order (the class index used by the gadget encodings).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<(String, usize)>,
}

impl Signature {
    pub fn new(symbols: Vec<(String, usize)>) -> Result<Self, StructureError> {
        let mut seen = BTreeSet::new();
        for (name, arity) in &symbols {
            if *arity > 2 {
                return Err(StructureError::UnsupportedArity {
                    symbol: name.clone(),
                    arity: *arity,
                });
            }
            if !seen.insert(name.clone()) {
                return Err(StructureError::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Signature { symbols })
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|(s, _)| s == name)
    }

    pub fn arity(&self, idx: usize) -> usize {
        self.symbols[idx].1
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.symbols[idx].0
    }

    /// Symbols of one arity, as `(class index from 1, symbol index)`.
    pub fn class(&self, arity: usize) -> Vec<(usize, usize)> {
        self.symbols
            .iter()
            .enumerate()
            .filter(|(_, (_, a))| *a == arity)
            .enumerate()
            .map(|(k, (idx, _))| (k + 1, idx))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Relation {
    Nullary(bool),
    Unary(BTreeSet<usize>),
    Binary(BTreeSet<(usize, usize)>),
}

/// A finite structure over a [`Signature`]: a universe `0..n` plus one
/// relation per symbol. Immutable once facts are loaded; safe to share.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelStructure {
    sig: Signature,
    n: usize,
    rels: Vec<Relation>,
}

impl RelStructure {
    pub fn new(sig: Signature, n: usize) -> Self {
        let rels = sig
            .symbols()
            .iter()
            .map(|(_, arity)| match arity {
                0 => Relation::Nullary(false),
                1 => Relation::Unary(BTreeSet::new()),
                _ => Relation::Binary(BTreeSet::new()),
            })
            .collect();
        RelStructure { sig, n, rels }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    /// Asserts one fact. A nullary fact takes no arguments and sets the
    /// symbol true. Repeated facts are harmless (set semantics).
    pub fn add_fact(&mut self, symbol: &str, args: &[usize]) -> Result<(), StructureError> {
        let idx = self
            .sig
            .index_of(symbol)
            .ok_or_else(|| StructureError::UnknownSymbol(symbol.to_string()))?;
        let arity = self.sig.arity(idx);
        if args.len() != arity {
            return Err(StructureError::ArityMismatch {
                symbol: symbol.to_string(),
                expected: arity,
                got: args.len(),
            });
        }
        for &a in args {
            if a >= self.n {
                return Err(StructureError::ElementOutOfRange {
                    element: a,
                    n: self.n,
                });
            }
        }
        match &mut self.rels[idx] {
            Relation::Nullary(b) => *b = true,
            Relation::Unary(set) => {
                set.insert(args[0]);
            }
            Relation::Binary(set) => {
                set.insert((args[0], args[1]));
            }
        }
        Ok(())
    }

    pub fn holds(&self, idx: usize, args: &[usize]) -> bool {
        match &self.rels[idx] {
            Relation::Nullary(b) => *b,
            Relation::Unary(set) => set.contains(&args[0]),
            Relation::Binary(set) => set.contains(&(args[0], args[1])),
        }
    }

    pub fn nullary_true(&self, idx: usize) -> bool {
        matches!(&self.rels[idx], Relation::Nullary(true))
    }

    pub fn unary_facts(&self, idx: usize) -> Vec<usize> {
        match &self.rels[idx] {
            Relation::Unary(set) => set.iter().copied().collect(),
            _ => Vec::new(),
        }
    }

    pub fn binary_facts(&self, idx: usize) -> Vec<(usize, usize)> {
        match &self.rels[idx] {
            Relation::Binary(set) => set.iter().copied().collect(),
            _ => Vec::new(),
        }
    }

    /// All facts in deterministic order, for serialization.
    pub fn facts(&self) -> Vec<(String, Vec<usize>)> {
        let mut out = Vec::new();
        for (idx, (name, _)) in self.sig.symbols().iter().enumerate() {
            match &self.rels[idx] {
                Relation::Nullary(true) => out.push((name.clone(), Vec::new())),
                Relation::Nullary(false) => {}
                Relation::Unary(set) => {
                    out.extend(set.iter().map(|&a| (name.clone(), vec![a])));
                }
                Relation::Binary(set) => {
                    out.extend(set.iter().map(|&(a, b)| (name.clone(), vec![a, b])));
                }
            }
        }
        out
    }

    /// Views a graph as an `{E}`-structure (both orientations of each edge).
    pub fn from_graph(g: &Graph) -> Self {
        let sig = Signature::new(vec![("E".to_string(), 2)]).expect("fixed signature is valid");
        let mut s = RelStructure::new(sig, g.n());
        for (u, v) in g.edges() {
            s.add_fact("E", &[u, v]).expect("edge endpoints in range");
            s.add_fact("E", &[v, u]).expect("edge endpoints in range");
        }
        s
    }

    /// The Gaifman graph: same universe, with `{a, b}` an edge iff `a != b`
    /// and some tuple of some relation contains both. Nullary and unary
    /// relations contribute no edges; loop tuples contribute no edges.
    pub fn gaifman(&self) -> Graph {
        let mut edges = BTreeSet::new();
        for rel in &self.rels {
            if let Relation::Binary(set) = rel {
                for &(a, b) in set {
                    if a != b {
                        edges.insert((a.min(b), a.max(b)));
                    }
                }
            }
        }
        let edges: Vec<_> = edges.into_iter().collect();
        Graph::new(self.n, &edges).expect("facts were range-checked on insert")
    }
}

/// Convenience map from symbol names to indices, used by parsers.
pub fn symbol_table(sig: &Signature) -> BTreeMap<String, usize> {
    sig.symbols()
        .iter()
        .enumerate()
        .map(|(i, (name, _))| (name.clone(), i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig_rpa() -> Signature {
        Signature::new(vec![
            ("R".to_string(), 2),
            ("P".to_string(), 1),
            ("A".to_string(), 0),
        ])
        .unwrap()
    }

    #[test]
    fn signature_rejects_bad_input() {
        assert!(matches!(
            Signature::new(vec![("R".into(), 3)]),
            Err(StructureError::UnsupportedArity { .. })
        ));
        assert!(matches!(
            Signature::new(vec![("R".into(), 2), ("R".into(), 1)]),
            Err(StructureError::DuplicateSymbol(_))
        ));
    }

    #[test]
    fn add_fact_validates() {
        let mut s = RelStructure::new(sig_rpa(), 3);
        assert!(matches!(
            s.add_fact("Q", &[0]),
            Err(StructureError::UnknownSymbol(_))
        ));
        assert!(matches!(
            s.add_fact("R", &[0]),
            Err(StructureError::ArityMismatch { .. })
        ));
        assert!(matches!(
            s.add_fact("P", &[7]),
            Err(StructureError::ElementOutOfRange { .. })
        ));
        s.add_fact("R", &[0, 1]).unwrap();
        s.add_fact("A", &[]).unwrap();
        assert!(s.holds(0, &[0, 1]));
        assert!(!s.holds(0, &[1, 0]));
        assert!(s.nullary_true(2));
    }

    #[test]
    fn gaifman_single_tuple() {
        let mut s = RelStructure::new(sig_rpa(), 3);
        s.add_fact("R", &[0, 1]).unwrap();
        let g = s.gaifman();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn gaifman_ignores_loops_and_low_arity() {
        let mut s = RelStructure::new(sig_rpa(), 3);
        s.add_fact("R", &[0, 0]).unwrap();
        assert_eq!(s.gaifman().edge_count(), 0);

        let mut s = RelStructure::new(sig_rpa(), 3);
        s.add_fact("P", &[0]).unwrap();
        s.add_fact("P", &[1]).unwrap();
        s.add_fact("A", &[]).unwrap();
        assert_eq!(s.gaifman().edge_count(), 0);
    }

    #[test]
    fn gaifman_is_orientation_blind() {
        let mut fwd = RelStructure::new(sig_rpa(), 4);
        fwd.add_fact("R", &[2, 3]).unwrap();
        let mut rev = RelStructure::new(sig_rpa(), 4);
        rev.add_fact("R", &[3, 2]).unwrap();
        assert_eq!(fwd.gaifman(), rev.gaifman());
    }

    #[test]
    fn gaifman_idempotent_on_graphs() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let back = RelStructure::from_graph(&g).gaifman();
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            back.edges().collect::<Vec<_>>()
        );
    }

    #[test]
    fn class_indices_start_at_one() {
        let sig = Signature::new(vec![
            ("R1".into(), 2),
            ("P1".into(), 1),
            ("R2".into(), 2),
            ("A1".into(), 0),
        ])
        .unwrap();
        assert_eq!(sig.class(2), vec![(1, 0), (2, 2)]);
        assert_eq!(sig.class(1), vec![(1, 1)]);
        assert_eq!(sig.class(0), vec![(1, 3)]);
    }
}
