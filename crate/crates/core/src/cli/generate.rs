//! Seeded random instances.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::problems::{Edge, Graph, Item, KnapsackInstance};
use crate::theory::Cost;

#[derive(Clone, Debug, PartialEq)]
pub struct GraphSpec {
    pub nodes: usize,
    /// Fraction of the `n(n-1)/2` node pairs that get an edge.
    pub density: f64,
    /// Exact edge count; overrides `density`.
    pub edges: Option<usize>,
    pub max_weight: Cost,
}

/// A connected simple graph: a random spanning tree plus extra distinct
/// pairs, weights uniform in `0..=max_weight`, edge order shuffled.
pub fn random_graph(spec: &GraphSpec, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_graph_with(spec, &mut rng)
}

pub fn random_graph_with(spec: &GraphSpec, rng: &mut impl Rng) -> Graph {
    let n = spec.nodes;
    let pairs = n * n.saturating_sub(1) / 2;
    let wanted = spec
        .edges
        .unwrap_or_else(|| (spec.density.clamp(0.0, 1.0) * pairs as f64).round() as usize)
        .clamp(n.saturating_sub(1), pairs);

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut chosen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 1..n {
        let (a, b) = (order[i], order[rng.gen_range(0..i)]);
        chosen.insert((a.min(b), a.max(b)));
    }
    if wanted * 2 > pairs {
        let mut rest: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|p| !chosen.contains(p))
            .collect();
        rest.shuffle(rng);
        let missing = wanted - chosen.len();
        chosen.extend(rest.into_iter().take(missing));
    } else {
        while chosen.len() < wanted {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b {
                chosen.insert((a.min(b), a.max(b)));
            }
        }
    }

    let mut edges: Vec<Edge> = chosen
        .into_iter()
        .map(|(a, b)| Edge::new(a, b, rng.gen_range(0..=spec.max_weight)))
        .collect();
    edges.shuffle(rng);
    Graph::new(n, edges).expect("generated edges are valid")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackSpec {
    pub items: usize,
    /// Defaults to half the total weight.
    pub capacity: Option<Cost>,
    pub max_weight: Cost,
    pub max_utility: Cost,
}

pub fn random_knapsack(spec: &KnapsackSpec, seed: u64) -> KnapsackInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_knapsack_with(spec, &mut rng)
}

pub fn random_knapsack_with(spec: &KnapsackSpec, rng: &mut impl Rng) -> KnapsackInstance {
    let items: Vec<Item> = (0..spec.items)
        .map(|_| Item {
            weight: rng.gen_range(0..=spec.max_weight),
            utility: rng.gen_range(0..=spec.max_utility),
        })
        .collect();
    let capacity = spec
        .capacity
        .unwrap_or_else(|| items.iter().map(|i| i.weight).sum::<Cost>() / 2);
    KnapsackInstance::new(capacity, items)
}
