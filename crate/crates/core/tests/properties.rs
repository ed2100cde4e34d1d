mod common;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use common::*;
use ebfs::oracles::{self, DEFAULT_EXPANSION_CAP};
use ebfs::theory::WithoutDominance;
use ebfs::{solve, EngineConfig, ProblemTheory, Space};
use proptest::prelude::*;
use rand::Rng;

/// Distinct spaces per level, reached by seeded random descents.
fn sample_levels<T: ProblemTheory>(t: &T, seed: u64) -> Vec<Vec<T::Space>> {
    let mut r = rng(seed);
    let mut levels: Vec<BTreeSet<T::Space>> = vec![BTreeSet::new(); t.max_depth() + 1];
    for _ in 0..40 {
        let mut y = t.initial();
        loop {
            levels[y.level()].insert(y.clone());
            let mut kids = t.split(&y);
            if kids.is_empty() {
                break;
            }
            let i = r.gen_range(0..kids.len());
            y = kids.swap_remove(i);
        }
    }
    levels
        .into_iter()
        .filter(|level| level.len() > 1)
        .map(|level| level.into_iter().collect())
        .collect()
}

/// `derived` theories define dominance as semi-congruence plus a cost
/// comparison; the greedy tree theories compare siblings directly.
fn check_relation_laws<T: ProblemTheory>(t: &T, seed: u64, derived: bool) -> Result<(), TestCaseError> {
    for level in sample_levels(t, seed) {
        let level = &level[..level.len().min(24)];
        for a in level {
            prop_assert!(t.dominates(a, a));
            prop_assert!(t.semi_congruent(a, a));
            prop_assert_eq!(t.precedence(a, a), Ordering::Equal);
            for b in level {
                let ab = t.dominates(a, b);
                if ab {
                    prop_assert!(!derived || t.semi_congruent(a, b));
                    prop_assert!(t.dominance_key(a) == t.dominance_key(b));
                    prop_assert_ne!(t.precedence(a, b), Ordering::Greater);
                    if t.dominates(b, a) {
                        prop_assert_eq!(t.precedence(a, b), Ordering::Equal);
                    }
                }
                prop_assert_eq!(t.precedence(a, b), t.precedence(b, a).reverse());
                prop_assert_eq!(a.cmp(b), b.cmp(a).reverse());
                prop_assert_eq!(a == b, a.cmp(b) == Ordering::Equal);
                for c in level.iter().take(8) {
                    if ab && t.dominates(b, c) {
                        prop_assert!(t.dominates(a, c));
                    }
                    if t.semi_congruent(a, b) && t.semi_congruent(b, c) {
                        prop_assert!(t.semi_congruent(a, c));
                    }
                    if t.precedence(a, b) != Ordering::Greater && t.precedence(b, c) != Ordering::Greater {
                        prop_assert_ne!(t.precedence(a, c), Ordering::Greater);
                    }
                }
            }
        }
    }
    Ok(())
}

fn pruning_is_conservative<T: ProblemTheory + Clone>(t: &T) -> Result<(), TestCaseError> {
    let pruned = solve(t, &EngineConfig::default()).unwrap();
    let full = solve(&WithoutDominance(t.clone()), &EngineConfig::default()).unwrap();
    prop_assert_eq!(pruned.optimal_cost, full.optimal_cost);
    prop_assert!(pruned.stats.retained <= full.stats.retained);
    for z in &pruned.optima {
        prop_assert!(full.optima.contains(z));
    }
    prop_assert!(pruned.stats.is_balanced());
    prop_assert!(full.stats.is_balanced());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spsp_relation_laws(seed in any::<u64>()) {
        check_relation_laws(&small_spsp(seed), seed, true)?;
    }

    #[test]
    fn sssp_relation_laws(seed in any::<u64>()) {
        check_relation_laws(&small_sssp(seed), seed, false)?;
    }

    #[test]
    fn prim_relation_laws(seed in any::<u64>()) {
        check_relation_laws(&small_prim(seed), seed, false)?;
    }

    #[test]
    fn kruskal_relation_laws(seed in any::<u64>()) {
        check_relation_laws(&small_kruskal(seed), seed, false)?;
    }

    #[test]
    fn knapsack_relation_laws(seed in any::<u64>()) {
        check_relation_laws(&small_knapsack(seed), seed, true)?;
    }

    #[test]
    fn spsp_pruning_is_conservative(seed in any::<u64>()) {
        pruning_is_conservative(&small_spsp(seed))?;
    }

    #[test]
    fn tree_pruning_is_conservative(seed in any::<u64>()) {
        pruning_is_conservative(&tiny_sssp(seed))?;
        pruning_is_conservative(&tiny_prim(seed))?;
    }

    #[test]
    fn kruskal_pruning_is_conservative(seed in any::<u64>()) {
        pruning_is_conservative(&tiny_kruskal(seed))?;
    }

    #[test]
    fn knapsack_pruning_is_conservative(seed in any::<u64>()) {
        pruning_is_conservative(&small_knapsack(seed))?;
    }

    #[test]
    fn tree_order_matches_edge_sets(seed in any::<u64>()) {
        let t = small_prim(seed);
        for level in sample_levels(&t, seed) {
            for a in level.iter().take(20) {
                for b in level.iter().take(20) {
                    prop_assert_eq!(a.cmp(b), a.edges().cmp(&b.edges()));
                }
            }
        }
        let k = small_kruskal(seed);
        for level in sample_levels(&k, seed) {
            for a in level.iter().take(20) {
                for b in level.iter().take(20) {
                    prop_assert_eq!(a.cmp(b), a.edges().cmp(&b.edges()));
                }
            }
        }
    }

    #[test]
    fn stats_always_balance(seed in any::<u64>()) {
        for stats in [
            solve(&small_spsp(seed), &EngineConfig::default()).unwrap().stats,
            solve(&small_knapsack(seed), &EngineConfig::default()).unwrap().stats,
            solve(&small_kruskal(seed), &EngineConfig::greedy()).unwrap().stats,
        ] {
            prop_assert!(stats.is_balanced());
            prop_assert_eq!(stats.levels, stats.per_level_width.len());
        }
    }
}

#[test]
fn brute_force_agrees_with_itself_without_dominance() {
    // the oracle ignores dominance, so wrapping must not change it
    for seed in 0..10 {
        let t = small_knapsack(seed);
        let a = oracles::brute_force(&t, t.max_depth(), DEFAULT_EXPANSION_CAP).unwrap();
        let b = oracles::brute_force(&WithoutDominance(t.clone()), t.max_depth(), DEFAULT_EXPANSION_CAP).unwrap();
        assert_eq!(a, b);
    }
}
