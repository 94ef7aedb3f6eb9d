//! Brute-force Tarskian evaluation by exhaustive quantifier expansion, with
//! memoization over (subformula, restriction of the assignment to its free
//! variables).

use thiserror::Error;

use crate::budget::BudgetCounter;
use crate::graph::Graph;
use crate::structure::RelStructure;

use super::Formula;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("unknown relation symbol {0:?}")]
    UnknownRelation(String),
    #[error("relation {rel:?} has arity {expected}, got {got} arguments")]
    ArityMismatch {
        rel: String,
        expected: usize,
        got: usize,
    },
    #[error("unbound variable {0:?}")]
    UnboundVariable(String),
    #[error("value {value} for variable {var:?} out of range (universe has {n} elements)")]
    ValueOutOfRange { var: String, value: usize, n: usize },
    #[error("evaluation budget exceeded")]
    BudgetExceeded,
}

/// Anything formulas can be evaluated over: a universe plus named relations.
pub trait Model {
    fn universe_size(&self) -> usize;
    /// Resolves a relation name to `(relation id, arity)`.
    fn resolve(&self, rel: &str) -> Option<(usize, usize)>;
    fn holds(&self, rel_id: usize, args: &[usize]) -> bool;
}

impl Model for Graph {
    fn universe_size(&self) -> usize {
        self.n()
    }

    fn resolve(&self, rel: &str) -> Option<(usize, usize)> {
        (rel == "E").then_some((0, 2))
    }

    fn holds(&self, _rel_id: usize, args: &[usize]) -> bool {
        self.has_edge(args[0], args[1])
    }
}

impl Model for RelStructure {
    fn universe_size(&self) -> usize {
        self.universe_size()
    }

    fn resolve(&self, rel: &str) -> Option<(usize, usize)> {
        self.signature()
            .index_of(rel)
            .map(|idx| (idx, self.signature().arity(idx)))
    }

    fn holds(&self, rel_id: usize, args: &[usize]) -> bool {
        RelStructure::holds(self, rel_id, args)
    }
}

/// Variable occurrences compiled to slots in a flat environment: free
/// variables take the first slots, each quantifier on the path to a node
/// takes the next one. Arities are at most 2 throughout, so atom arguments
/// fit a fixed array and nodes are `Copy`.
#[derive(Debug, Clone, Copy)]
enum Node {
    Eq(usize, usize),
    Atom {
        rel: usize,
        arity: usize,
        args: [usize; 2],
    },
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Forall { slot: usize, body: usize },
    Exists { slot: usize, body: usize },
}

#[derive(Debug, Clone)]
struct Compiled {
    nodes: Vec<Node>,
    root: usize,
    n_slots: usize,
    /// Per node: its free slots, sorted. Nodes with at most two free slots
    /// get a dense memo table.
    free_slots: Vec<Vec<usize>>,
}

fn compile<M: Model>(model: &M, f: &Formula, free: &[&str]) -> Result<Compiled, EvalError> {
    let mut scope: Vec<String> = free.iter().map(|s| s.to_string()).collect();
    let mut nodes = Vec::new();
    let mut free_slots = Vec::new();
    let root = compile_into(model, f, &mut scope, &mut nodes, &mut free_slots)?;
    let n_slots = max_slots(&nodes, free.len());
    Ok(Compiled {
        nodes,
        root,
        n_slots,
        free_slots,
    })
}

fn max_slots(nodes: &[Node], free: usize) -> usize {
    let mut max = free;
    for n in nodes {
        if let Node::Forall { slot, .. } | Node::Exists { slot, .. } = n {
            max = max.max(slot + 1);
        }
    }
    max
}

fn compile_into<M: Model>(
    model: &M,
    f: &Formula,
    scope: &mut Vec<String>,
    nodes: &mut Vec<Node>,
    free_slots: &mut Vec<Vec<usize>>,
) -> Result<usize, EvalError> {
    let lookup = |scope: &[String], name: &str| -> Result<usize, EvalError> {
        scope
            .iter()
            .rposition(|s| s == name)
            .ok_or_else(|| EvalError::UnboundVariable(name.to_string()))
    };
    let node = match f {
        Formula::Eq(a, b) => Node::Eq(lookup(scope, a)?, lookup(scope, b)?),
        Formula::Atom { rel, args } => {
            let (rel_id, arity) = model
                .resolve(rel)
                .ok_or_else(|| EvalError::UnknownRelation(rel.clone()))?;
            if args.len() != arity {
                return Err(EvalError::ArityMismatch {
                    rel: rel.clone(),
                    expected: arity,
                    got: args.len(),
                });
            }
            let mut slots = [0usize; 2];
            for (i, a) in args.iter().enumerate() {
                slots[i] = lookup(scope, a)?;
            }
            Node::Atom {
                rel: rel_id,
                arity,
                args: slots,
            }
        }
        Formula::Not(x) => Node::Not(compile_into(model, x, scope, nodes, free_slots)?),
        Formula::And(a, b) => Node::And(
            compile_into(model, a, scope, nodes, free_slots)?,
            compile_into(model, b, scope, nodes, free_slots)?,
        ),
        Formula::Or(a, b) => Node::Or(
            compile_into(model, a, scope, nodes, free_slots)?,
            compile_into(model, b, scope, nodes, free_slots)?,
        ),
        Formula::Implies(a, b) => Node::Implies(
            compile_into(model, a, scope, nodes, free_slots)?,
            compile_into(model, b, scope, nodes, free_slots)?,
        ),
        Formula::Forall(v, x) | Formula::Exists(v, x) => {
            let slot = scope.len();
            scope.push(v.clone());
            let body = compile_into(model, x, scope, nodes, free_slots)?;
            scope.pop();
            match f {
                Formula::Forall(..) => Node::Forall { slot, body },
                _ => Node::Exists { slot, body },
            }
        }
    };
    let fs = node_free_slots(&node, free_slots);
    nodes.push(node);
    free_slots.push(fs);
    Ok(nodes.len() - 1)
}

fn node_free_slots(node: &Node, free_slots: &[Vec<usize>]) -> Vec<usize> {
    let mut out: Vec<usize> = match node {
        Node::Eq(a, b) => vec![*a, *b],
        Node::Atom { arity, args, .. } => args[..*arity].to_vec(),
        Node::Not(x) => free_slots[*x].clone(),
        Node::And(a, b) | Node::Or(a, b) | Node::Implies(a, b) => {
            let mut v = free_slots[*a].clone();
            v.extend(&free_slots[*b]);
            v
        }
        Node::Forall { slot, body } | Node::Exists { slot, body } => free_slots[*body]
            .iter()
            .copied()
            .filter(|s| s != slot)
            .collect(),
    };
    out.sort_unstable();
    out.dedup();
    out
}

const MEMO_UNKNOWN: u8 = 2;

/// A formula compiled against one model, with a persistent memo shared
/// across calls. Reusing one evaluator over many argument tuples is what
/// makes the gadget-recognizer formulas affordable.
pub struct Evaluator<'m, M: Model> {
    model: &'m M,
    compiled: Compiled,
    free_names: Vec<String>,
    /// Dense memo per node, for nodes with at most 2 free slots.
    memo: Vec<Option<Vec<u8>>>,
}

impl<'m, M: Model> Evaluator<'m, M> {
    /// Compiles `f` with the given free-variable order. Every free variable
    /// of `f` must be listed (extra names are allowed and ignored).
    pub fn new(model: &'m M, f: &Formula, free: &[&str]) -> Result<Self, EvalError> {
        let compiled = compile(model, f, free)?;
        let n = model.universe_size();
        let memo = compiled
            .free_slots
            .iter()
            .map(|fs| match fs.len() {
                0 => Some(vec![MEMO_UNKNOWN; 1]),
                1 => Some(vec![MEMO_UNKNOWN; n]),
                2 => Some(vec![MEMO_UNKNOWN; n * n]),
                _ => None,
            })
            .collect();
        Ok(Evaluator {
            model,
            compiled,
            free_names: free.iter().map(|s| s.to_string()).collect(),
            memo,
        })
    }

    /// Evaluates with `args` bound to the free variables in declaration
    /// order. The counter is charged one unit per formula-node evaluation.
    pub fn eval_with(
        &mut self,
        args: &[usize],
        counter: &mut BudgetCounter,
    ) -> Result<bool, EvalError> {
        assert_eq!(args.len(), self.free_names.len(), "one value per free variable");
        let n = self.model.universe_size();
        for (name, &value) in self.free_names.iter().zip(args) {
            if value >= n {
                return Err(EvalError::ValueOutOfRange {
                    var: name.clone(),
                    value,
                    n,
                });
            }
        }
        let mut env = vec![0usize; self.compiled.n_slots.max(args.len())];
        env[..args.len()].copy_from_slice(args);
        self.go(self.compiled.root, &mut env, counter)
    }

    fn go(
        &mut self,
        id: usize,
        env: &mut Vec<usize>,
        counter: &mut BudgetCounter,
    ) -> Result<bool, EvalError> {
        if !counter.tick() {
            return Err(EvalError::BudgetExceeded);
        }
        let key = self.memo_key(id, env);
        if let Some(k) = key {
            let cached = self.memo[id].as_ref().unwrap()[k];
            if cached != MEMO_UNKNOWN {
                return Ok(cached == 1);
            }
        }
        let node = self.compiled.nodes[id];
        let value = match node {
            Node::Eq(a, b) => env[a] == env[b],
            Node::Atom { rel, arity, args } => {
                let mut vals = [0usize; 2];
                for i in 0..arity {
                    vals[i] = env[args[i]];
                }
                self.model.holds(rel, &vals[..arity])
            }
            Node::Not(x) => !self.go(x, env, counter)?,
            Node::And(a, b) => self.go(a, env, counter)? && self.go(b, env, counter)?,
            Node::Or(a, b) => self.go(a, env, counter)? || self.go(b, env, counter)?,
            Node::Implies(a, b) => !self.go(a, env, counter)? || self.go(b, env, counter)?,
            Node::Forall { slot, body } => {
                let mut all = true;
                for v in 0..self.model.universe_size() {
                    env[slot] = v;
                    if !self.go(body, env, counter)? {
                        all = false;
                        break;
                    }
                }
                all
            }
            Node::Exists { slot, body } => {
                let mut any = false;
                for v in 0..self.model.universe_size() {
                    env[slot] = v;
                    if self.go(body, env, counter)? {
                        any = true;
                        break;
                    }
                }
                any
            }
        };
        if let Some(k) = key {
            self.memo[id].as_mut().unwrap()[k] = value as u8;
        }
        Ok(value)
    }

    fn memo_key(&self, id: usize, env: &[usize]) -> Option<usize> {
        self.memo[id].as_ref()?;
        let fs = &self.compiled.free_slots[id];
        let n = self.model.universe_size();
        Some(match fs.len() {
            0 => 0,
            1 => env[fs[0]],
            _ => env[fs[0]] * n + env[fs[1]],
        })
    }
}

/// One-shot evaluation under a named assignment. The assignment must cover
/// every free variable of the formula.
pub fn eval<M: Model>(
    model: &M,
    f: &Formula,
    assignment: &[(&str, usize)],
) -> Result<bool, EvalError> {
    for v in f.free_vars() {
        if !assignment.iter().any(|(name, _)| *name == v) {
            return Err(EvalError::UnboundVariable(v));
        }
    }
    let names: Vec<&str> = assignment.iter().map(|(n, _)| *n).collect();
    let values: Vec<usize> = assignment.iter().map(|(_, v)| *v).collect();
    let mut ev = Evaluator::new(model, f, &names)?;
    let mut counter = crate::budget::SearchBudget::unlimited().counter();
    ev.eval_with(&values, &mut counter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{standard_graph, FamilySpec};
    use crate::logic::Formula;

    #[test]
    fn edge_atom_on_k2() {
        let k2 = standard_graph(FamilySpec::Clique(2)).unwrap();
        let f = Formula::edge("x", "y");
        assert!(eval(&k2, &f, &[("x", 0), ("y", 1)]).unwrap());
        assert!(!eval(&k2, &f, &[("x", 0), ("y", 0)]).unwrap());
    }

    #[test]
    fn equality_is_reflexive() {
        let g = standard_graph(FamilySpec::Edgeless(3)).unwrap();
        let f = Formula::eq("x", "x");
        for v in 0..3 {
            assert!(eval(&g, &f, &[("x", v)]).unwrap());
        }
    }

    #[test]
    fn two_step_reachability_on_p3() {
        let p3 = standard_graph(FamilySpec::Path(3)).unwrap();
        let f = Formula::exists("z", Formula::edge("x", "z").and(Formula::edge("z", "y")));
        assert!(eval(&p3, &f, &[("x", 0), ("y", 2)]).unwrap());
        assert!(!eval(&p3, &f, &[("x", 0), ("y", 1)]).unwrap());
    }

    #[test]
    fn quantifiers_and_shadowing() {
        let p3 = standard_graph(FamilySpec::Path(3)).unwrap();
        // Every vertex has a neighbor.
        let f = Formula::forall("x", Formula::exists("z", Formula::edge("x", "z")));
        assert!(eval(&p3, &f, &[]).unwrap());
        // Shadowed x: inner quantifier wins.
        let f = Formula::exists(
            "x",
            Formula::exists("x", Formula::edge("x", "y")).and(Formula::eq("x", "y")),
        );
        assert!(eval(&p3, &f, &[("y", 1)]).unwrap());
    }

    #[test]
    fn errors_are_reported() {
        let p3 = standard_graph(FamilySpec::Path(3)).unwrap();
        assert_eq!(
            eval(&p3, &Formula::edge("x", "y"), &[("x", 0)]),
            Err(EvalError::UnboundVariable("y".into()))
        );
        assert_eq!(
            eval(&p3, &Formula::atom("R", &["x"]), &[("x", 0)]),
            Err(EvalError::UnknownRelation("R".into()))
        );
        assert_eq!(
            eval(&p3, &Formula::atom("E", &["x"]), &[("x", 0)]),
            Err(EvalError::ArityMismatch {
                rel: "E".into(),
                expected: 2,
                got: 1
            })
        );
        assert!(matches!(
            eval(&p3, &Formula::edge("x", "y"), &[("x", 0), ("y", 9)]),
            Err(EvalError::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn budget_exceeded_in_evaluator() {
        let p3 = standard_graph(FamilySpec::Path(3)).unwrap();
        let f = Formula::forall("x", Formula::exists("z", Formula::edge("x", "z")));
        let mut ev = Evaluator::new(&p3, &f, &[]).unwrap();
        let mut counter = crate::budget::SearchBudget::new(2).counter();
        assert_eq!(
            ev.eval_with(&[], &mut counter),
            Err(EvalError::BudgetExceeded)
        );
    }

    #[test]
    fn structures_evaluate_their_own_symbols() {
        use crate::structure::{RelStructure, Signature};
        let sig = Signature::new(vec![("R".into(), 2), ("P".into(), 1), ("A".into(), 0)]).unwrap();
        let mut s = RelStructure::new(sig, 3);
        s.add_fact("R", &[0, 1]).unwrap();
        s.add_fact("P", &[2]).unwrap();
        let f = Formula::atom("R", &["x", "y"]);
        assert!(eval(&s, &f, &[("x", 0), ("y", 1)]).unwrap());
        assert!(!eval(&s, &f, &[("x", 1), ("y", 0)]).unwrap());
        let f = Formula::exists("z", Formula::atom("P", &["z"]));
        assert!(eval(&s, &f, &[]).unwrap());
        // Nullary atom is false unless asserted.
        let f = Formula::atom("A", &[]);
        assert!(!eval(&s, &f, &[]).unwrap());
    }
}
