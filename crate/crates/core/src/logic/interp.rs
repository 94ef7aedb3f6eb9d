//! Interpretation of a coloured digraph inside its gadget encoding: a
//! domain formula identifying the element images plus one translation
//! formula per atomic symbol, machine-checked by exhaustive bi-evaluation.

use std::fmt;

use crate::budget::SearchBudget;
use crate::graph::Graph;
use crate::structure::{RelStructure, Signature};

use super::eval::Evaluator;
use super::formulas::{in_4clique, pendant_exact};
use super::{Formula, LogicError};

/// Interpretation data for one signature: the domain formula and the
/// per-atomic-symbol translations, in signature class order. Equality
/// translates to equality (the element correspondence is the identity on
/// `0..n`, matching the encoder's vertex layout).
#[derive(Debug, Clone)]
pub struct Interpretation {
    /// Free variable `y`: recognizes element images in the encoded graph.
    pub delta: Formula,
    /// Per unary symbol `(name, formula)`, free variable `x`.
    pub unary: Vec<(String, Formula)>,
    /// Per binary symbol `(name, formula)`, free variables `x, y`.
    pub binary: Vec<(String, Formula)>,
    /// Per nullary symbol `(name, closed formula)`.
    pub nullary: Vec<(String, Formula)>,
}

/// Domain formula: adjacent to a 4-clique vertex while lying in no
/// 4-clique.
fn delta_formula(var: &str) -> Formula {
    Formula::exists(
        "_z",
        Formula::edge(var, "_z").and(in_4clique("_z")),
    )
    .and(in_4clique(var).not())
}

/// Translation of the `i`-th binary symbol: a path `x - u - v - y` whose
/// middles are outside the domain and outside all 4-cliques, with the tag
/// path of length exactly `i` hanging at the `y`-side middle.
fn binary_translation(i: usize) -> Formula {
    let mid_v = Formula::edge("_u", "_v")
        .and(Formula::edge("_v", "y"))
        .and(in_4clique("_v").not())
        .and(delta_formula("_v").not())
        .and(pendant_exact("_v", i));
    Formula::exists(
        "_u",
        Formula::edge("x", "_u")
            .and(in_4clique("_u").not())
            .and(delta_formula("_u").not())
            .and(Formula::exists("_v", mid_v)),
    )
}

/// Translation of the `i`-th nullary symbol: the tag path of length exactly
/// `i` hangs at the vertex adjacent to (and off) the unique chordless
/// 4-cycle.
fn nullary_translation(i: usize) -> Formula {
    let cycle = Formula::edge("_w", "_e0").and(Formula::exists(
        "_e1",
        Formula::edge("_e0", "_e1")
            .and(Formula::neq("_w", "_e1"))
            .and(Formula::exists(
                "_e2",
                Formula::edge("_e1", "_e2")
                    .and(Formula::edge("_e0", "_e2").not())
                    .and(Formula::neq("_e0", "_e2"))
                    .and(Formula::neq("_w", "_e2"))
                    .and(Formula::exists(
                        "_e3",
                        Formula::edge("_e2", "_e3")
                            .and(Formula::edge("_e3", "_e0"))
                            .and(Formula::edge("_e1", "_e3").not())
                            .and(Formula::neq("_e1", "_e3"))
                            .and(Formula::neq("_w", "_e3")),
                    )),
            )),
    ));
    Formula::exists(
        "_w",
        Formula::exists("_e0", cycle).and(pendant_exact("_w", i)),
    )
}

/// Builds the interpretation for any signature with arities at most 2.
pub fn encoding_interpretation(sig: &Signature) -> Interpretation {
    let unary = sig
        .class(1)
        .into_iter()
        .map(|(cls, idx)| (sig.name(idx).to_string(), pendant_exact("x", cls)))
        .collect();
    let binary = sig
        .class(2)
        .into_iter()
        .map(|(cls, idx)| (sig.name(idx).to_string(), binary_translation(cls)))
        .collect();
    let nullary = sig
        .class(0)
        .into_iter()
        .map(|(cls, idx)| (sig.name(idx).to_string(), nullary_translation(cls)))
        .collect();
    Interpretation {
        delta: delta_formula("y"),
        unary,
        binary,
        nullary,
    }
}

/// One failed bi-satisfaction check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpViolation {
    pub symbol: String,
    pub args: Vec<usize>,
    pub expected: bool,
    pub got: bool,
}

impl fmt::Display for InterpViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({:?}): source says {}, translation says {}",
            self.symbol, self.args, self.expected, self.got
        )
    }
}

/// Checks the bi-satisfaction condition for every atomic symbol over every
/// tuple of the domain set. The target must be the encoding of `source`
/// (element images are vertices `0..n`); a domain-set mismatch is an error,
/// translation mismatches are returned as violations.
pub fn verify_interpretation(
    interp: &Interpretation,
    source: &RelStructure,
    target: &Graph,
) -> Result<Vec<InterpViolation>, LogicError> {
    let n = source.universe_size();
    let mut counter = SearchBudget::unlimited().counter();

    let mut delta_ev = Evaluator::new(target, &interp.delta, &["y"])?;
    let mut delta_set = Vec::new();
    for v in 0..target.n() {
        if delta_ev.eval_with(&[v], &mut counter)? {
            delta_set.push(v);
        }
    }
    let expected: Vec<usize> = (0..n).collect();
    if delta_set != expected {
        return Err(LogicError::InterpretationMismatch(format!(
            "domain set {delta_set:?} does not match the {n} element images"
        )));
    }

    let mut violations = Vec::new();
    let sig = source.signature();

    for ((_, idx), (name, formula)) in sig.class(1).into_iter().zip(&interp.unary) {
        let mut ev = Evaluator::new(target, formula, &["x"])?;
        for a in 0..n {
            let expected = source.holds(idx, &[a]);
            let got = ev.eval_with(&[a], &mut counter)?;
            if expected != got {
                violations.push(InterpViolation {
                    symbol: name.clone(),
                    args: vec![a],
                    expected,
                    got,
                });
            }
        }
    }

    for ((_, idx), (name, formula)) in sig.class(2).into_iter().zip(&interp.binary) {
        let mut ev = Evaluator::new(target, formula, &["x", "y"])?;
        for a in 0..n {
            for b in 0..n {
                let expected = source.holds(idx, &[a, b]);
                let got = ev.eval_with(&[a, b], &mut counter)?;
                if expected != got {
                    violations.push(InterpViolation {
                        symbol: name.clone(),
                        args: vec![a, b],
                        expected,
                        got,
                    });
                }
            }
        }
    }

    for ((_, idx), (name, formula)) in sig.class(0).into_iter().zip(&interp.nullary) {
        let mut ev = Evaluator::new(target, formula, &[])?;
        let expected = source.nullary_true(idx);
        let got = ev.eval_with(&[], &mut counter)?;
        if expected != got {
            violations.push(InterpViolation {
                symbol: name.clone(),
                args: Vec::new(),
                expected,
                got,
            });
        }
    }

    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::encode_digraph;
    use crate::graph::Graph;
    use crate::structure::{RelStructure, Signature};

    fn sig() -> Signature {
        Signature::new(vec![
            ("R1".into(), 2),
            ("P1".into(), 1),
            ("P2".into(), 1),
            ("A1".into(), 0),
        ])
        .unwrap()
    }

    #[test]
    fn single_element_no_facts_passes() {
        let m = RelStructure::new(sig(), 1);
        let enc = encode_digraph(&m);
        let interp = encoding_interpretation(m.signature());
        let violations = verify_interpretation(&interp, &m, &enc.gadget.graph).unwrap();
        assert!(violations.is_empty(), "{violations:?}");
    }

    #[test]
    fn two_elements_with_facts_pass() {
        let mut m = RelStructure::new(sig(), 2);
        m.add_fact("R1", &[0, 1]).unwrap();
        m.add_fact("P2", &[1]).unwrap();
        m.add_fact("A1", &[]).unwrap();
        let enc = encode_digraph(&m);
        let interp = encoding_interpretation(m.signature());
        let violations = verify_interpretation(&interp, &m, &enc.gadget.graph).unwrap();
        assert!(violations.is_empty(), "{violations:?}");
    }

    #[test]
    fn loop_facts_pass() {
        let mut m = RelStructure::new(sig(), 2);
        m.add_fact("R1", &[0, 0]).unwrap();
        m.add_fact("R1", &[0, 1]).unwrap();
        let enc = encode_digraph(&m);
        let interp = encoding_interpretation(m.signature());
        let violations = verify_interpretation(&interp, &m, &enc.gadget.graph).unwrap();
        assert!(violations.is_empty(), "{violations:?}");
    }

    #[test]
    fn direction_is_distinguished() {
        let mut m = RelStructure::new(sig(), 2);
        m.add_fact("R1", &[0, 1]).unwrap();
        let enc = encode_digraph(&m);
        let interp = encoding_interpretation(m.signature());
        // R1 holds for (0, 1) and must fail for (1, 0); zero violations
        // means the translation got both directions right.
        let violations = verify_interpretation(&interp, &m, &enc.gadget.graph).unwrap();
        assert!(violations.is_empty(), "{violations:?}");
    }

    #[test]
    fn perturbed_target_is_caught() {
        let mut m = RelStructure::new(sig(), 2);
        m.add_fact("R1", &[0, 1]).unwrap();
        m.add_fact("P2", &[1]).unwrap();
        let enc = encode_digraph(&m);
        let interp = encoding_interpretation(m.signature());

        // Splice one extra edge into a gadget: join the end of P2's tag
        // path back to element 0. The pendant degree tests then fail.
        let tail = enc.gadget.labeled("p2-1-2").unwrap();
        let mut edges: Vec<(usize, usize)> = enc.gadget.graph.edges().collect();
        edges.push((0.min(tail), tail.max(0)));
        edges.sort_unstable();
        let perturbed = Graph::new(enc.gadget.graph.n(), &edges).unwrap();

        let violations = verify_interpretation(&interp, &m, &perturbed).unwrap();
        assert!(!violations.is_empty());
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let m = RelStructure::new(sig(), 2);
        let enc = encode_digraph(&m);
        let interp = encoding_interpretation(m.signature());
        // Claim three elements although the target encodes two.
        let bigger = RelStructure::new(sig(), 3);
        assert!(matches!(
            verify_interpretation(&interp, &bigger, &enc.gadget.graph),
            Err(LogicError::InterpretationMismatch(_))
        ));
    }
}
