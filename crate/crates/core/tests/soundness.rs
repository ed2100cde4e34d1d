//! Extension replay and completion-cost checks for the relations each
//! theory supplies.

mod common;

use std::cmp::Ordering;

use common::*;
use ebfs::oracles::{self, find_replay_counterexample, subtree_optimum};
use ebfs::problems::{KnapsackTheory, PrimTheory, SpspTheory};
use ebfs::theory::replay;
use ebfs::{solve, EngineConfig, ProblemTheory};

const CAP: usize = 200_000;

/// Every ordered pair of distinct same-level reachable spaces.
fn level_pairs<T: ProblemTheory>(t: &T) -> Vec<(T::Space, T::Space)> {
    let levels = oracles::reachable_levels(t, t.max_depth(), CAP).unwrap();
    let mut pairs = Vec::new();
    for level in levels {
        for a in &level {
            for b in &level {
                if a != b {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
    }
    pairs
}

fn replay_counterexamples<T: ProblemTheory>(t: &T) -> usize {
    level_pairs(t)
        .into_iter()
        .filter(|(a, b)| t.semi_congruent(a, b))
        .filter(|(a, b)| {
            find_replay_counterexample(t, a, b, t.max_depth(), CAP)
                .unwrap()
                .is_some()
        })
        .count()
}

#[test]
fn knapsack_semi_congruence_replays() {
    for seed in 0..40 {
        let t = KnapsackTheory::new(knapsack(seed, 1..=6, 50));
        assert_eq!(replay_counterexamples(&t), 0, "seed {seed}");
    }
}

#[test]
fn tree_semi_congruence_replays() {
    for seed in 0..25 {
        assert_eq!(replay_counterexamples(&tiny_sssp(seed)), 0);
        assert_eq!(replay_counterexamples(&tiny_prim(seed)), 0);
        assert_eq!(replay_counterexamples(&tiny_kruskal(seed)), 0);
    }
}

#[test]
fn knapsack_dominance_keeps_the_best_completion() {
    for seed in 0..30 {
        let t = KnapsackTheory::new(knapsack(seed, 1..=6, 50));
        for (a, b) in level_pairs(&t) {
            if t.dominates(&a, &b) {
                let best_a = subtree_optimum(&t, &a, t.max_depth(), CAP).unwrap();
                let best_b = subtree_optimum(&t, &b, t.max_depth(), CAP).unwrap();
                assert!(best_a >= best_b, "{a:?} vs {b:?}");
            }
        }
    }
}

/// The least child of any reachable space completes at least as cheaply
/// as each of its siblings.
fn least_child_is_safe<T: ProblemTheory>(t: &T) {
    for level in oracles::reachable_levels(t, t.max_depth(), CAP).unwrap() {
        for parent in &level {
            let kids = t.split(parent);
            let Some(least) = kids.iter().min_by(|a, b| t.precedence(a, b).then_with(|| a.cmp(b))) else {
                continue;
            };
            let best = subtree_optimum(t, least, t.max_depth(), CAP).unwrap();
            for kid in &kids {
                assert!(t.dominates(least, kid));
                let other = subtree_optimum(t, kid, t.max_depth(), CAP).unwrap();
                if let Some(other) = other {
                    assert!(best.is_some_and(|c| c <= other), "{least:?} vs {kid:?}");
                }
            }
        }
    }
}

#[test]
fn greedy_choice_is_safe_for_trees() {
    for seed in 0..25 {
        least_child_is_safe(&tiny_sssp(seed));
        least_child_is_safe(&tiny_prim(seed));
        least_child_is_safe(&tiny_kruskal(seed));
    }
}

#[test]
fn ranking_between_non_least_siblings_is_not_a_completion_bound() {
    // r=0, a=1, b=2, c=3: adding r-b ranks ahead of adding r-c, yet only
    // the tree through r-c can still use both unit edges
    let t = PrimTheory::new(graph(4, &[(0, 1, 1), (1, 2, 1), (0, 2, 2), (0, 3, 3)]), 0).unwrap();
    let kids = t.split(&t.initial());
    let via = |edge| kids.iter().find(|k| k.edges() == vec![edge]).unwrap();
    let (rb, rc) = (via(2), via(3));
    assert!(t.dominates(rb, rc));
    assert_eq!(subtree_optimum(&t, rb, 3, CAP).unwrap(), Some(6));
    assert_eq!(subtree_optimum(&t, rc, 3, CAP).unwrap(), Some(5));
    // the engine never relies on it: the least sibling prunes both
    assert_eq!(solve(&t, &EngineConfig::greedy()).unwrap().optimal_cost, Some(5));
}

fn spsp_detour() -> SpspTheory {
    // s=0 x=1 c=2 d=3 t=4; t hangs off x only
    let g = graph(5, &[(0, 1, 1), (1, 2, 1), (0, 3, 2), (3, 2, 1), (1, 4, 5)]);
    SpspTheory::new(g, 0, 4).unwrap()
}

#[test]
fn end_node_congruence_does_not_replay_on_simple_paths() {
    let t = spsp_detour();
    let walk = |edges: &[usize]| {
        edges.iter().fold(t.initial(), |y, &e| {
            t.split(&y)
                .into_iter()
                .find(|c| t.increment(&y, c) == e)
                .unwrap()
        })
    };
    let via_x = walk(&[0, 1]);
    let via_d = walk(&[2, 3]);
    assert!(t.semi_congruent(&via_x, &via_d));
    assert_eq!(t.precedence(&via_x, &via_d), Ordering::Less);
    assert!(t.dominates(&via_x, &via_d));

    let found = find_replay_counterexample(&t, &via_x, &via_d, t.max_depth(), CAP)
        .unwrap()
        .expect("c-x-t completes s-d-c but needs x again after s-x-c");
    assert_eq!(found.increments, vec![1, 4]);
    assert!(replay(&t, &via_x, &found.increments).is_none());
    assert_eq!(subtree_optimum(&t, &via_x, 4, CAP).unwrap(), None);
    assert_eq!(subtree_optimum(&t, &via_d, 4, CAP).unwrap(), Some(9));

    // pruning s-d-c loses nothing: s-x-t is shorter than any path through c
    let r = solve(&t, &EngineConfig::default()).unwrap();
    assert_eq!(r.optimal_cost, Some(6));
    assert_eq!(r.optima, vec![vec![0, 4]]);
}

#[test]
fn spsp_replay_counterexamples_are_common_but_search_stays_exact() {
    let mut instances_with_counterexample = 0;
    for seed in 0..30 {
        let g = tiny_graph(seed, 8);
        let n = g.node_count();
        let t = SpspTheory::new(g, 0, n - 1).unwrap();
        if replay_counterexamples(&t) > 0 {
            instances_with_counterexample += 1;
        }
        let truth = oracles::brute_force(&t, t.max_depth(), CAP).unwrap();
        assert_eq!(solve(&t, &EngineConfig::default()).unwrap().optimal_cost, truth.optimal_cost);
    }
    assert!(instances_with_counterexample > 0);
}
