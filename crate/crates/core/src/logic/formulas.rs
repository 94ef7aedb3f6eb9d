//! Generated formulas: distance and exact-path macros, bounded-quantifier
//! degree tests, and the gadget-recognizer formulas. Generated bound
//! variables are prefixed with `_`, which the parser reserves, so user
//! variables can never be captured.

use super::Formula;

/// Renames free occurrences of variables (used to bind macro arguments).
pub(crate) fn rename_free(f: &Formula, map: &[(&str, &str)]) -> Formula {
    fn subst(name: &str, bound: &[String], map: &[(&str, &str)]) -> String {
        if bound.iter().any(|b| b == name) {
            return name.to_string();
        }
        map.iter()
            .find(|(from, _)| *from == name)
            .map(|(_, to)| to.to_string())
            .unwrap_or_else(|| name.to_string())
    }
    fn go(f: &Formula, bound: &mut Vec<String>, map: &[(&str, &str)]) -> Formula {
        match f {
            Formula::Eq(a, b) => Formula::Eq(subst(a, bound, map), subst(b, bound, map)),
            Formula::Atom { rel, args } => Formula::Atom {
                rel: rel.clone(),
                args: args.iter().map(|a| subst(a, bound, map)).collect(),
            },
            Formula::Not(x) => go(x, bound, map).not(),
            Formula::And(a, b) => go(a, bound, map).and(go(b, bound, map)),
            Formula::Or(a, b) => go(a, bound, map).or(go(b, bound, map)),
            Formula::Implies(a, b) => go(a, bound, map).implies(go(b, bound, map)),
            Formula::Forall(v, x) => {
                bound.push(v.clone());
                let inner = go(x, bound, map);
                bound.pop();
                Formula::forall(v.clone(), inner)
            }
            Formula::Exists(v, x) => {
                bound.push(v.clone());
                let inner = go(x, bound, map);
                bound.pop();
                Formula::exists(v.clone(), inner)
            }
        }
    }
    go(f, &mut Vec::new(), map)
}

/// `dist<=d(x, y)`: there is a walk of at most `d` edges from `x` to `y`
/// (equivalently, distance at most `d`).
pub fn dist_le_formula(d: usize) -> Formula {
    fn go(cur: &str, remaining: usize, depth: usize) -> Formula {
        let here = Formula::eq(cur, "y");
        if remaining == 0 {
            return here;
        }
        let z = format!("_d{depth}");
        let step = Formula::exists(
            z.clone(),
            Formula::edge(cur, z.clone()).and(go(&z, remaining - 1, depth + 1)),
        );
        here.or(step)
    }
    go("x", d, 1)
}

/// `path=k(x, y)`: there is a simple path of exactly `k` edges from `x` to
/// `y` (all vertices pairwise distinct).
pub fn exact_path_formula(k: usize) -> Formula {
    assert!(k >= 1, "path length must be at least 1");
    fn go(prev: &str, step: usize, k: usize, names: &[String]) -> Formula {
        if step == k {
            return Formula::edge(prev, "y");
        }
        let c = names[step - 1].clone();
        let mut parts = vec![Formula::edge(prev, c.clone())];
        parts.push(Formula::neq(c.clone(), "x"));
        parts.push(Formula::neq(c.clone(), "y"));
        for earlier in &names[..step - 1] {
            parts.push(Formula::neq(c.clone(), earlier.clone()));
        }
        parts.push(go(&c, step + 1, k, names));
        Formula::exists(c, Formula::and_all(parts))
    }
    let names: Vec<String> = (1..k).map(|i| format!("_p{i}")).collect();
    Formula::neq("x", "y").and(go("x", 1, k, &names))
}

/// `var` has at least `k` pairwise distinct neighbors.
pub(crate) fn degree_at_least(var: &str, k: usize) -> Formula {
    if k == 0 {
        return Formula::eq(var, var);
    }
    fn go(var: &str, step: usize, k: usize) -> Formula {
        let g = format!("_g{step}");
        let mut parts = vec![Formula::edge(var, g.clone())];
        for j in 1..step {
            parts.push(Formula::neq(g.clone(), format!("_g{j}")));
        }
        if step < k {
            parts.push(go(var, step + 1, k));
        }
        Formula::exists(g, Formula::and_all(parts))
    }
    go(var, 1, k)
}

pub(crate) fn degree_exactly(var: &str, k: usize) -> Formula {
    degree_at_least(var, k).and(degree_at_least(var, k + 1).not())
}

/// `var` lies on a 3-cycle.
pub(crate) fn on_triangle(var: &str) -> Formula {
    Formula::exists(
        "_ta",
        Formula::edge(var, "_ta").and(Formula::exists(
            "_tb",
            Formula::edge(var, "_tb").and(Formula::edge("_ta", "_tb")),
        )),
    )
}

/// `var` lies in some 4-clique.
pub(crate) fn in_4clique(var: &str) -> Formula {
    Formula::exists(
        "_ka",
        Formula::edge(var, "_ka").and(Formula::exists(
            "_kb",
            Formula::edge(var, "_kb")
                .and(Formula::edge("_ka", "_kb"))
                .and(Formula::exists(
                    "_kc",
                    Formula::edge(var, "_kc")
                        .and(Formula::edge("_ka", "_kc"))
                        .and(Formula::edge("_kb", "_kc")),
                )),
        )),
    )
}

/// Recognizes the apex of the diameter-4 augmentation: degree greater than
/// 2 and on a 3-cycle. Free variable `x`.
pub fn augmentation_apex_formula() -> Formula {
    degree_at_least("x", 3).and(on_triangle("x"))
}

/// Recognizes the original vertices inside the diameter-4 augmentation:
/// adjacent to an apex and not on a 3-cycle. Free variable `x`.
pub fn augmentation_original_formula() -> Formula {
    Formula::exists(
        "_t",
        Formula::edge("x", "_t").and(rename_free(&augmentation_apex_formula(), &[("x", "_t")])),
    )
    .and(on_triangle("x").not())
}

/// A pendant path of length exactly `i` hangs at `var`: fresh vertices
/// `c_1..c_i`, consecutive edges, interior degrees exactly 2 in the host,
/// final degree exactly 1, all distinct from `var` and each other.
pub(crate) fn pendant_exact(var: &str, i: usize) -> Formula {
    assert!(i >= 1, "pendant length must be at least 1");
    fn go(anchor: &str, prev: &str, step: usize, i: usize, names: &[String]) -> Formula {
        let c = names[step - 1].clone();
        let mut parts = vec![Formula::edge(prev, c.clone())];
        parts.push(Formula::neq(c.clone(), anchor.to_string()));
        for earlier in &names[..step - 1] {
            parts.push(Formula::neq(c.clone(), earlier.clone()));
        }
        if step == i {
            parts.push(degree_exactly(&c, 1));
        } else {
            parts.push(degree_exactly(&c, 2));
            parts.push(go(anchor, &c, step + 1, i, names));
        }
        Formula::exists(c, Formula::and_all(parts))
    }
    let names: Vec<String> = (1..=i).map(|s| format!("_c{s}")).collect();
    go(var, var, 1, i, &names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{augment_diameter4, standard_graph, FamilySpec};
    use crate::graph::Graph;
    use crate::logic::eval;

    #[test]
    fn exact_path_1_is_adjacency_on_small_graphs() {
        let f = exact_path_formula(1);
        for spec in [
            FamilySpec::Path(5),
            FamilySpec::Cycle(6),
            FamilySpec::Clique(4),
            FamilySpec::Star(4),
        ] {
            let g = standard_graph(spec).unwrap();
            for u in 0..g.n() {
                for v in 0..g.n() {
                    assert_eq!(
                        eval(&g, &f, &[("x", u), ("y", v)]).unwrap(),
                        g.has_edge(u, v)
                    );
                }
            }
        }
    }

    #[test]
    fn dist_le_false_beyond_range() {
        let p4 = standard_graph(FamilySpec::Path(4)).unwrap();
        let f = dist_le_formula(2);
        assert!(!eval(&p4, &f, &[("x", 0), ("y", 3)]).unwrap());
        assert!(eval(&p4, &f, &[("x", 0), ("y", 2)]).unwrap());
        assert!(eval(&p4, &dist_le_formula(0), &[("x", 1), ("y", 1)]).unwrap());
    }

    #[test]
    fn exact_path_goes_the_long_way_around_c5() {
        let c5 = standard_graph(FamilySpec::Cycle(5)).unwrap();
        let f = exact_path_formula(4);
        assert!(eval(&c5, &f, &[("x", 0), ("y", 1)]).unwrap());
    }

    #[test]
    fn exact_path_requires_distinct_vertices() {
        // On a path graph there is no second route, so length-3 paths
        // between vertices at distance 1 must not exist.
        let p5 = standard_graph(FamilySpec::Path(5)).unwrap();
        let f = exact_path_formula(3);
        assert!(!eval(&p5, &f, &[("x", 0), ("y", 1)]).unwrap());
        assert!(eval(&p5, &f, &[("x", 0), ("y", 3)]).unwrap());
    }

    #[test]
    fn degree_tests_count_correctly() {
        let star = standard_graph(FamilySpec::Star(4)).unwrap();
        assert!(eval(&star, &degree_at_least("x", 4), &[("x", 0)]).unwrap());
        assert!(!eval(&star, &degree_at_least("x", 5), &[("x", 0)]).unwrap());
        assert!(eval(&star, &degree_exactly("x", 1), &[("x", 1)]).unwrap());
        assert!(!eval(&star, &degree_exactly("x", 1), &[("x", 0)]).unwrap());
        assert!(eval(&star, &degree_at_least("x", 0), &[("x", 2)]).unwrap());
    }

    #[test]
    fn apex_recognizer_finds_exactly_t() {
        let base = standard_graph(FamilySpec::Cycle(5)).unwrap();
        let aug = augment_diameter4(&base);
        let g = &aug.gadget.graph;
        let apex = augmentation_apex_formula();
        let hits: Vec<usize> = (0..g.n())
            .filter(|&v| eval(g, &apex, &[("x", v)]).unwrap())
            .collect();
        assert_eq!(hits, vec![aug.t]);

        let orig = augmentation_original_formula();
        let hits: Vec<usize> = (0..g.n())
            .filter(|&v| eval(g, &orig, &[("x", v)]).unwrap())
            .collect();
        assert_eq!(hits, aug.original);
    }

    #[test]
    fn pendant_recognizer_is_length_exact() {
        // Anchor 0 of a 5-path carries a pendant of length 4, so only the
        // full length matches at the anchor.
        let p5 = standard_graph(FamilySpec::Path(5)).unwrap();
        assert!(eval(&p5, &pendant_exact("x", 4), &[("x", 0)]).unwrap());
        assert!(!eval(&p5, &pendant_exact("x", 1), &[("x", 0)]).unwrap());
        assert!(!eval(&p5, &pendant_exact("x", 3), &[("x", 0)]).unwrap());

        // A vertex with two pendants of different lengths matches both.
        let mut edges = vec![(0, 1), (0, 2), (2, 3)];
        edges.sort_unstable();
        let g = Graph::new(4, &edges).unwrap();
        assert!(eval(&g, &pendant_exact("x", 1), &[("x", 0)]).unwrap());
        assert!(eval(&g, &pendant_exact("x", 2), &[("x", 0)]).unwrap());
        assert!(!eval(&g, &pendant_exact("x", 3), &[("x", 0)]).unwrap());
    }

    #[test]
    fn macros_agree_with_native_search_on_fixtures() {
        for spec in [FamilySpec::Path(6), FamilySpec::Cycle(5), FamilySpec::Grid(2, 3)] {
            let g = standard_graph(spec).unwrap();
            for d in 0..=3 {
                let f = dist_le_formula(d);
                for u in 0..g.n() {
                    for v in 0..g.n() {
                        let native = matches!(g.distance(u, v).unwrap(), Some(dd) if dd <= d);
                        assert_eq!(eval(&g, &f, &[("x", u), ("y", v)]).unwrap(), native);
                    }
                }
            }
        }
    }
}
