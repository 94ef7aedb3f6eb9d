//! First-order formulas over graphs and coloured digraphs, brute-force
//! evaluation, and witness search for the model-theoretic dividing lines
//! (ladders, shattered sets, array patterns).

mod eval;
mod formulas;
mod interp;
mod parser;
mod search;

pub use eval::{eval, EvalError, Evaluator, Model};
pub use formulas::{
    augmentation_apex_formula, augmentation_original_formula, dist_le_formula, exact_path_formula,
};
pub use interp::{encoding_interpretation, verify_interpretation, InterpViolation, Interpretation};
pub use parser::parse_formula;
pub use search::{
    independence_index, ladder_index, opposite_index_check, sd_array_check, sd_array_search,
    IndexOutcome, LadderMode, LadderWitness, OppositeReport, SdArrayWitness, ShatterWitness,
};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Errors from the witness-search layer, on top of plain evaluation errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("incomplete witness: {0}")]
    IncompleteWitness(String),
    #[error("array size {0} unsupported (hard cap is 3)")]
    ArrayTooLarge(usize),
    #[error("interpreted structure mismatch: {0}")]
    InterpretationMismatch(String),
}

/// First-order formula AST. Variables are names; relation symbols are
/// resolved against the model at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Eq(String, String),
    Atom { rel: String, args: Vec<String> },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn eq(a: impl Into<String>, b: impl Into<String>) -> Self {
        Formula::Eq(a.into(), b.into())
    }

    pub fn atom(rel: impl Into<String>, args: &[&str]) -> Self {
        Formula::Atom {
            rel: rel.into(),
            args: args.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// The edge atom `E(a, b)`.
    pub fn edge(a: impl Into<String>, b: impl Into<String>) -> Self {
        Formula::Atom {
            rel: "E".into(),
            args: vec![a.into(), b.into()],
        }
    }

    pub fn neq(a: impl Into<String>, b: impl Into<String>) -> Self {
        Formula::eq(a, b).not()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    /// Right-nested conjunction; panics on an empty list.
    pub fn and_all(mut parts: Vec<Formula>) -> Self {
        assert!(!parts.is_empty(), "and_all needs at least one conjunct");
        let mut out = parts.pop().unwrap();
        while let Some(f) = parts.pop() {
            out = f.and(out);
        }
        out
    }

    /// Right-nested disjunction; panics on an empty list.
    pub fn or_all(mut parts: Vec<Formula>) -> Self {
        assert!(!parts.is_empty(), "or_all needs at least one disjunct");
        let mut out = parts.pop().unwrap();
        while let Some(f) = parts.pop() {
            out = f.or(out);
        }
        out
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) => {
                for v in [a, b] {
                    if !bound.contains(v) {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Atom { args, .. } => {
                for v in args {
                    if !bound.contains(v) {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "{a}={b}"),
            Formula::Atom { rel, args } => {
                write!(f, "{rel}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Formula::Not(x) => write!(f, "~{x}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::Forall(v, x) => write!(f, "forall {v}. {x}"),
            Formula::Exists(v, x) => write!(f, "exists {v}. {x}"),
        }
    }
}
