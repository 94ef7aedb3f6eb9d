//! Work budgets for exhaustive searches.
//!
//! Budgets are counted in decision nodes of the backtracking tree (for
//! structural searches) or in formula-node evaluations (for logic searches).
//! Exceeding a budget is always reported as a distinct outcome, never as a
//! negative answer.

/// Upper bound on the work a single search may perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl SearchBudget {
    pub const DEFAULT_NODES: u64 = 10_000_000;

    pub fn new(max_nodes: u64) -> Self {
        Self { max_nodes }
    }

    /// Effectively unlimited; used by tests and oracles.
    pub fn unlimited() -> Self {
        Self {
            max_nodes: u64::MAX,
        }
    }

    pub fn counter(&self) -> BudgetCounter {
        BudgetCounter {
            remaining: self.max_nodes,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: Self::DEFAULT_NODES,
        }
    }
}

/// Mutable countdown handed through a single search.
#[derive(Debug)]
pub struct BudgetCounter {
    remaining: u64,
}

impl BudgetCounter {
    /// Spends one unit. Returns `false` once the budget is gone.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.remaining == 0 {
            return false;
        }
        self.remaining -= 1;
        true
    }

    #[inline]
    pub fn exhausted(&self) -> bool {
        self.remaining == 0
    }
}

/// Tri-state result of a budgeted search.
///
/// `Exhausted` is a definite negative (the whole space was covered);
/// `BudgetExceeded` is an explicit "unknown".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    Exhausted,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::Exhausted => SearchOutcome::Exhausted,
            SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
        }
    }
}
