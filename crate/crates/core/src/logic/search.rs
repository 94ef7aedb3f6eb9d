//! Exhaustive witness search for the order property, the independence
//! property and the array pattern of strong dependence, restricted to
//! formulas `phi(x, y)` with single free variables.
//!
//! All searches first tabulate the relation `R[a][b] = phi(a, b)` (sharing
//! one budget between evaluation and search), then hunt for the pattern in
//! the matrix. Candidates are always tried in ascending element order, so
//! witnesses are canonical and runs are reproducible.

use crate::budget::{BudgetCounter, SearchBudget, SearchOutcome};

use super::eval::{EvalError, Evaluator, Model};
use super::{Formula, LogicError};

/// Outcome of a capped index search. `witness` is `None` only when the
/// established index is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexOutcome<W> {
    Determined { index: usize, witness: Option<W> },
    BudgetExceeded { known_at_least: usize, witness: Option<W> },
}

impl<W> IndexOutcome<W> {
    pub fn index(&self) -> Option<usize> {
        match self {
            IndexOutcome::Determined { index, .. } => Some(*index),
            IndexOutcome::BudgetExceeded { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            IndexOutcome::Determined { witness, .. }
            | IndexOutcome::BudgetExceeded { witness, .. } => witness.as_ref(),
        }
    }
}

/// `phi(a_i, b_j)` iff `i < j` (strict) or `i <= j` (reflexive).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderMode {
    Strict,
    Reflexive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderWitness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShatterWitness {
    /// The shattered elements, ascending.
    pub set: Vec<usize>,
    /// `b_for[mask]` traces exactly the subset with that bitmask.
    pub b_for: Vec<usize>,
}

/// Tabulates `R[a][b] = phi(a, b)` over the whole universe.
fn relation_matrix<M: Model>(
    model: &M,
    phi: &Formula,
    counter: &mut BudgetCounter,
) -> Result<Vec<Vec<bool>>, EvalError> {
    for v in phi.free_vars() {
        if v != "x" && v != "y" {
            return Err(EvalError::UnboundVariable(v));
        }
    }
    let n = model.universe_size();
    let mut ev = Evaluator::new(model, phi, &["x", "y"])?;
    let mut rows = Vec::with_capacity(n);
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        for b in 0..n {
            row.push(ev.eval_with(&[a, b], counter)?);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Largest `n <= cap` admitting the ladder pattern. Elements may repeat and
/// the two sequences may overlap; the pattern itself forces what must be
/// distinct.
pub fn ladder_index<M: Model>(
    model: &M,
    phi: &Formula,
    cap: usize,
    mode: LadderMode,
    budget: &SearchBudget,
) -> Result<IndexOutcome<LadderWitness>, LogicError> {
    let mut counter = budget.counter();
    let matrix = match relation_matrix(model, phi, &mut counter) {
        Ok(m) => m,
        Err(EvalError::BudgetExceeded) => {
            return Ok(IndexOutcome::BudgetExceeded {
                known_at_least: 0,
                witness: None,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let mut best: Option<LadderWitness> = None;
    for target in 1..=cap {
        match ladder_of_size(&matrix, target, mode, &mut counter) {
            Ok(Some(w)) => best = Some(w),
            Ok(None) => {
                return Ok(IndexOutcome::Determined {
                    index: target - 1,
                    witness: best,
                })
            }
            Err(Stop) => {
                return Ok(IndexOutcome::BudgetExceeded {
                    known_at_least: target - 1,
                    witness: best,
                })
            }
        }
    }
    Ok(IndexOutcome::Determined {
        index: cap,
        witness: best,
    })
}

struct Stop;

/// DFS over the column sequence `b_0..b_{T-1}`; per row `i` the candidate
/// set of rows whose trace matches the required prefix is kept and pruned.
fn ladder_of_size(
    matrix: &[Vec<bool>],
    t: usize,
    mode: LadderMode,
    counter: &mut BudgetCounter,
) -> Result<Option<LadderWitness>, Stop> {
    let n = matrix.len();
    if n == 0 {
        return Ok(None);
    }
    let want = |i: usize, j: usize| match mode {
        LadderMode::Strict => i < j,
        LadderMode::Reflexive => i <= j,
    };
    // cand[i] after choosing j columns: rows matching the pattern so far.
    let all: Vec<usize> = (0..n).collect();
    let mut cand: Vec<Vec<usize>> = vec![all; t];
    let mut cols: Vec<usize> = Vec::with_capacity(t);

    fn dfs(
        matrix: &[Vec<bool>],
        t: usize,
        want: &dyn Fn(usize, usize) -> bool,
        cand: &mut Vec<Vec<usize>>,
        cols: &mut Vec<usize>,
        counter: &mut BudgetCounter,
    ) -> Result<Option<LadderWitness>, Stop> {
        let j = cols.len();
        if j == t {
            let a: Vec<usize> = cand.iter().map(|c| c[0]).collect();
            return Ok(Some(LadderWitness {
                a,
                b: cols.clone(),
            }));
        }
        let n = matrix.len();
        for b in 0..n {
            if !counter.tick() {
                return Err(Stop);
            }
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(t);
            let mut ok = true;
            for (i, c) in cand.iter().enumerate() {
                let filtered: Vec<usize> = c
                    .iter()
                    .copied()
                    .filter(|&a| matrix[a][b] == want(i, j))
                    .collect();
                if filtered.is_empty() {
                    ok = false;
                    break;
                }
                next.push(filtered);
            }
            if !ok {
                continue;
            }
            cols.push(b);
            let saved = std::mem::replace(cand, next);
            let res = dfs(matrix, t, want, cand, cols, counter)?;
            *cand = saved;
            cols.pop();
            if res.is_some() {
                return Ok(res);
            }
        }
        Ok(None)
    }

    dfs(matrix, t, &want, &mut cand, &mut cols, counter)
}

/// Largest `n <= cap` such that some `n` elements are shattered by the
/// trace family `{a : phi(a, b)}` over all `b`.
pub fn independence_index<M: Model>(
    model: &M,
    phi: &Formula,
    cap: usize,
    budget: &SearchBudget,
) -> Result<IndexOutcome<ShatterWitness>, LogicError> {
    let mut counter = budget.counter();
    let matrix = match relation_matrix(model, phi, &mut counter) {
        Ok(m) => m,
        Err(EvalError::BudgetExceeded) => {
            return Ok(IndexOutcome::BudgetExceeded {
                known_at_least: 0,
                witness: None,
            })
        }
        Err(e) => return Err(e.into()),
    };
    Ok(shatter_search(&matrix, cap, &mut counter))
}

/// Independence index computed on an explicit relation matrix.
fn shatter_search(
    matrix: &[Vec<bool>],
    cap: usize,
    counter: &mut BudgetCounter,
) -> IndexOutcome<ShatterWitness> {
    let mut best: Option<ShatterWitness> = None;
    for target in 1..=cap {
        match shattered_set_of_size(matrix, target, counter) {
            Ok(Some(w)) => best = Some(w),
            Ok(None) => {
                return IndexOutcome::Determined {
                    index: target - 1,
                    witness: best,
                }
            }
            Err(Stop) => {
                return IndexOutcome::BudgetExceeded {
                    known_at_least: target - 1,
                    witness: best,
                }
            }
        }
    }
    IndexOutcome::Determined {
        index: cap,
        witness: best,
    }
}

fn shattered_set_of_size(
    matrix: &[Vec<bool>],
    t: usize,
    counter: &mut BudgetCounter,
) -> Result<Option<ShatterWitness>, Stop> {
    let n = matrix.len();
    if t > n {
        return Ok(None);
    }
    let masks = 1usize << t;
    // Lexicographic combinations of t elements.
    let mut set: Vec<usize> = (0..t).collect();
    loop {
        if !counter.tick() {
            return Err(Stop);
        }
        let mut b_for: Vec<Option<usize>> = vec![None; masks];
        let mut found = 0;
        for b in 0..n {
            if !counter.tick() {
                return Err(Stop);
            }
            let mut mask = 0usize;
            for (bit, &a) in set.iter().enumerate() {
                if matrix[a][b] {
                    mask |= 1 << bit;
                }
            }
            if b_for[mask].is_none() {
                b_for[mask] = Some(b);
                found += 1;
                if found == masks {
                    break;
                }
            }
        }
        if found == masks {
            return Ok(Some(ShatterWitness {
                set: set.clone(),
                b_for: b_for.into_iter().map(Option::unwrap).collect(),
            }));
        }
        // Advance the combination.
        let mut i = t;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if set[i] != i + n - t {
                break;
            }
        }
        set[i] += 1;
        for j in i + 1..t {
            set[j] = set[j - 1] + 1;
        }
    }
}

/// Independence indices of `phi(x, y)` and of the opposite `phi(y, x)`.
/// No numeric relation between the two finite values is asserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OppositeReport {
    pub forward: IndexOutcome<ShatterWitness>,
    pub opposite: IndexOutcome<ShatterWitness>,
}

pub fn opposite_index_check<M: Model>(
    model: &M,
    phi: &Formula,
    cap: usize,
    budget: &SearchBudget,
) -> Result<OppositeReport, LogicError> {
    let mut counter = budget.counter();
    let matrix = match relation_matrix(model, phi, &mut counter) {
        Ok(m) => m,
        Err(EvalError::BudgetExceeded) => {
            let out = IndexOutcome::BudgetExceeded {
                known_at_least: 0,
                witness: None,
            };
            return Ok(OppositeReport {
                forward: out.clone(),
                opposite: out,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let n = matrix.len();
    let transposed: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| matrix[b][a]).collect())
        .collect();
    let forward = shatter_search(&matrix, cap, &mut counter);
    let opposite = shatter_search(&transposed, cap, &mut counter);
    Ok(OppositeReport { forward, opposite })
}

/// Witness for the m x m array pattern: cells `b[i][j]` plus, for every
/// function `f` (encoded base m, digit `i` is `f(i)`), an element `a[f]`
/// with `phi^i(a_f, b^i_j)` iff `j = f(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdArrayWitness {
    pub b: Vec<Vec<usize>>,
    pub a: Vec<usize>,
}

pub(crate) fn function_count(m: usize) -> usize {
    m.pow(m as u32)
}

fn digit(f: usize, i: usize, m: usize) -> usize {
    (f / m.pow(i as u32)) % m
}

/// Checks the full pattern for every function, row and column.
pub fn sd_array_check<M: Model>(
    model: &M,
    formulas: &[Formula],
    witness: &SdArrayWitness,
) -> Result<bool, LogicError> {
    let m = formulas.len();
    if m == 0 {
        return Ok(true);
    }
    if witness.b.len() != m || witness.b.iter().any(|row| row.len() != m) {
        return Err(LogicError::IncompleteWitness(format!(
            "need an {m} x {m} cell array"
        )));
    }
    if witness.a.len() != function_count(m) {
        return Err(LogicError::IncompleteWitness(format!(
            "need one element per function ({} total)",
            function_count(m)
        )));
    }
    let mut counter = SearchBudget::unlimited().counter();
    let mut evs = Vec::with_capacity(m);
    for phi in formulas {
        for v in phi.free_vars() {
            if v != "x" && v != "y" {
                return Err(LogicError::Eval(EvalError::UnboundVariable(v)));
            }
        }
        evs.push(Evaluator::new(model, phi, &["x", "y"])?);
    }
    for f in 0..function_count(m) {
        for i in 0..m {
            for j in 0..m {
                let got = evs[i].eval_with(&[witness.a[f], witness.b[i][j]], &mut counter)?;
                if got != (j == digit(f, i, m)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Exhaustive search for an array witness; `m = formulas.len()` is capped
/// at 3. Cells are assigned row-major in ascending element order; the
/// per-function candidate sets are pruned after every assignment.
pub fn sd_array_search<M: Model>(
    model: &M,
    formulas: &[Formula],
    budget: &SearchBudget,
) -> Result<SearchOutcome<SdArrayWitness>, LogicError> {
    let m = formulas.len();
    if m == 0 {
        return Ok(SearchOutcome::Found(SdArrayWitness {
            b: Vec::new(),
            a: Vec::new(),
        }));
    }
    if m > 3 {
        return Err(LogicError::ArrayTooLarge(m));
    }
    let mut counter = budget.counter();
    let mut matrices = Vec::with_capacity(m);
    for phi in formulas {
        match relation_matrix(model, phi, &mut counter) {
            Ok(mt) => matrices.push(mt),
            Err(EvalError::BudgetExceeded) => return Ok(SearchOutcome::BudgetExceeded),
            Err(e) => return Err(e.into()),
        }
    }
    let n = model.universe_size();
    if n == 0 {
        return Ok(SearchOutcome::Exhausted);
    }
    let funcs = function_count(m);
    let all: Vec<usize> = (0..n).collect();
    let mut cand: Vec<Vec<usize>> = vec![all; funcs];
    let mut cells: Vec<usize> = Vec::with_capacity(m * m);

    fn dfs(
        matrices: &[Vec<Vec<bool>>],
        m: usize,
        n: usize,
        cells: &mut Vec<usize>,
        cand: &mut Vec<Vec<usize>>,
        counter: &mut BudgetCounter,
    ) -> Result<Option<SdArrayWitness>, Stop> {
        let pos = cells.len();
        if pos == m * m {
            let a: Vec<usize> = cand.iter().map(|c| c[0]).collect();
            let b: Vec<Vec<usize>> = (0..m)
                .map(|i| cells[i * m..(i + 1) * m].to_vec())
                .collect();
            return Ok(Some(SdArrayWitness { b, a }));
        }
        let (i, j) = (pos / m, pos % m);
        for v in 0..n {
            if !counter.tick() {
                return Err(Stop);
            }
            let mut next = Vec::with_capacity(cand.len());
            let mut ok = true;
            for (f, c) in cand.iter().enumerate() {
                let wanted = j == digit(f, i, m);
                let filtered: Vec<usize> = c
                    .iter()
                    .copied()
                    .filter(|&a| matrices[i][a][v] == wanted)
                    .collect();
                if filtered.is_empty() {
                    ok = false;
                    break;
                }
                next.push(filtered);
            }
            if !ok {
                continue;
            }
            cells.push(v);
            let saved = std::mem::replace(cand, next);
            let res = dfs(matrices, m, n, cells, cand, counter)?;
            *cand = saved;
            cells.pop();
            if res.is_some() {
                return Ok(res);
            }
        }
        Ok(None)
    }

    match dfs(&matrices, m, n, &mut cells, &mut cand, &mut counter) {
        Ok(Some(w)) => Ok(SearchOutcome::Found(w)),
        Ok(None) => Ok(SearchOutcome::Exhausted),
        Err(Stop) => Ok(SearchOutcome::BudgetExceeded),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{half_graph, independence_witness, standard_graph, FamilySpec};
    use crate::logic::{eval, exact_path_formula, Formula};

    fn b() -> SearchBudget {
        SearchBudget::default()
    }

    fn edge() -> Formula {
        Formula::edge("x", "y")
    }

    #[test]
    fn ladder_on_half_graph_matches_n() {
        for n in 1..=4 {
            let h = half_graph(n).gadget.graph;
            let out = ladder_index(&h, &edge(), n + 1, LadderMode::Strict, &b()).unwrap();
            assert_eq!(out.index(), Some(n), "half_graph({n})");
            // Witness revalidates under eval.
            let w = out.witness().unwrap();
            for i in 0..n {
                for j in 0..n {
                    let holds = eval(&h, &edge(), &[("x", w.a[i]), ("y", w.b[j])]).unwrap();
                    assert_eq!(holds, i < j);
                }
            }
        }
    }

    #[test]
    fn cliques_admit_no_two_ladder() {
        for n in 3..=6 {
            let k = standard_graph(FamilySpec::Clique(n)).unwrap();
            let out = ladder_index(&k, &edge(), 5, LadderMode::Strict, &b()).unwrap();
            assert_eq!(out.index(), Some(1));
        }
    }

    #[test]
    fn edgeless_ladder_is_one() {
        let e = standard_graph(FamilySpec::Edgeless(4)).unwrap();
        let out = ladder_index(&e, &edge(), 3, LadderMode::Strict, &b()).unwrap();
        assert_eq!(out.index(), Some(1));
    }

    #[test]
    fn strict_and_reflexive_differ_by_at_most_one() {
        let graphs = vec![
            half_graph(3).gadget.graph,
            standard_graph(FamilySpec::Clique(4)).unwrap(),
            standard_graph(FamilySpec::Path(6)).unwrap(),
            standard_graph(FamilySpec::Cycle(5)).unwrap(),
        ];
        for g in graphs {
            let s = ladder_index(&g, &edge(), 6, LadderMode::Strict, &b())
                .unwrap()
                .index()
                .unwrap();
            let r = ladder_index(&g, &edge(), 6, LadderMode::Reflexive, &b())
                .unwrap()
                .index()
                .unwrap();
            assert!(s.abs_diff(r) <= 1, "strict {s} vs reflexive {r}");
        }
    }

    #[test]
    fn shattering_on_the_designed_witness() {
        let w = independence_witness(2, 0).gadget.graph;
        let out = independence_index(&w, &exact_path_formula(1), 4, &b()).unwrap();
        assert_eq!(out.index(), Some(2));
        let sw = out.witness().unwrap();
        assert_eq!(sw.set.len(), 2);
        for mask in 0..4usize {
            let bv = sw.b_for[mask];
            for (bit, &a) in sw.set.iter().enumerate() {
                let holds = w.has_edge(a, bv);
                assert_eq!(holds, mask & (1 << bit) != 0);
            }
        }
    }

    #[test]
    fn cliques_shatter_only_singletons() {
        for n in 3..=6 {
            let k = standard_graph(FamilySpec::Clique(n)).unwrap();
            let out = independence_index(&k, &edge(), 3, &b()).unwrap();
            assert_eq!(out.index(), Some(1));
        }
    }

    #[test]
    fn edgeless_shatters_nothing() {
        let e = standard_graph(FamilySpec::Edgeless(4)).unwrap();
        let out = independence_index(&e, &edge(), 3, &b()).unwrap();
        assert_eq!(out.index(), Some(0));
        assert!(out.witness().is_none());
    }

    #[test]
    fn opposite_indices_agree_for_symmetric_formulas() {
        let g = independence_witness(2, 0).gadget.graph;
        let rep = opposite_index_check(&g, &edge(), 4, &b()).unwrap();
        assert_eq!(rep.forward.index(), rep.opposite.index());

        let e = standard_graph(FamilySpec::Edgeless(3)).unwrap();
        let rep = opposite_index_check(&e, &edge(), 3, &b()).unwrap();
        assert_eq!(rep.forward.index(), Some(0));
        assert_eq!(rep.opposite.index(), Some(0));
    }

    #[test]
    fn opposite_differs_for_directed_relations() {
        use crate::structure::{RelStructure, Signature};
        // Directed set membership: R(i, 2 + mask) iff bit i of mask is set.
        // Forward traces shatter {0, 1}; reverse traces do not separate the
        // subset elements, so the two finite indices differ.
        let sig = Signature::new(vec![("R".into(), 2)]).unwrap();
        let mut s = RelStructure::new(sig, 6);
        for i in 0..2usize {
            for mask in 0..4usize {
                if mask & (1 << i) != 0 {
                    s.add_fact("R", &[i, 2 + mask]).unwrap();
                }
            }
        }
        let phi = Formula::atom("R", &["x", "y"]);
        let rep = opposite_index_check(&s, &phi, 3, &b()).unwrap();
        assert_eq!(rep.forward.index(), Some(2));
        assert_eq!(rep.opposite.index(), Some(1));
    }

    #[test]
    fn sd_array_m1_equality() {
        let g = standard_graph(FamilySpec::Path(3)).unwrap();
        let formulas = vec![Formula::eq("x", "y")];
        let out = sd_array_search(&g, &formulas, &b()).unwrap();
        let w = out.found().expect("x=y always has the m=1 pattern");
        assert!(sd_array_check(&g, &formulas, &w).unwrap());
    }

    #[test]
    fn sd_array_edgeless_has_no_pattern() {
        let e = standard_graph(FamilySpec::Edgeless(3)).unwrap();
        let formulas = vec![edge(), edge()];
        assert_eq!(
            sd_array_search(&e, &formulas, &b()).unwrap(),
            SearchOutcome::Exhausted
        );
    }

    #[test]
    fn sd_array_m0_is_vacuous() {
        let g = standard_graph(FamilySpec::Path(2)).unwrap();
        let w = SdArrayWitness {
            b: Vec::new(),
            a: Vec::new(),
        };
        assert!(sd_array_check(&g, &[], &w).unwrap());
    }

    #[test]
    fn sd_array_check_rejects_wrong_witness() {
        let g = independence_witness(4, 0).gadget.graph;
        let formulas = vec![exact_path_formula(1), exact_path_formula(1)];
        let out = sd_array_search(&g, &formulas, &b()).unwrap();
        let mut w = out.found().expect("the 4-shattering supplies the m=2 array");
        assert!(sd_array_check(&g, &formulas, &w).unwrap());
        // a_f for two distinct functions satisfy different patterns, so
        // aliasing them must fail.
        w.a[0] = w.a[1];
        assert!(!sd_array_check(&g, &formulas, &w).unwrap());
        // Wrong dimensions are an error, not `false`.
        let short = SdArrayWitness {
            b: vec![vec![0]],
            a: vec![0; 4],
        };
        assert!(matches!(
            sd_array_check(&g, &formulas, &short),
            Err(LogicError::IncompleteWitness(_))
        ));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let h = half_graph(3).gadget.graph;
        let out = ladder_index(&h, &edge(), 4, LadderMode::Strict, &SearchBudget::new(3)).unwrap();
        assert!(matches!(out, IndexOutcome::BudgetExceeded { .. }));
    }
}
