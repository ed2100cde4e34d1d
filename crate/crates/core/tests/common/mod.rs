#![allow(dead_code)]

use ebfs::cli::generate::{random_graph_with, random_knapsack_with, GraphSpec, KnapsackSpec};
use ebfs::problems::{Edge, Graph, KnapsackInstance, KnapsackTheory, KruskalTheory, PathTreeTheory, PrimTheory, SpspTheory};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected graph with 4-8 nodes, density 0.3-0.9 and small weights, so
/// ties are common.
pub fn small_graph(seed: u64) -> Graph {
    let mut r = rng(seed);
    let spec = GraphSpec {
        nodes: r.gen_range(4..=8),
        density: r.gen_range(0.3..=0.9),
        edges: None,
        max_weight: 9,
    };
    random_graph_with(&spec, &mut r)
}

/// Connected graph with at most `max_edges` edges.
pub fn tiny_graph(seed: u64, max_edges: usize) -> Graph {
    let mut r = rng(seed);
    let nodes = r.gen_range(3..=6);
    let edges = r.gen_range(nodes - 1..=max_edges.min(nodes * (nodes - 1) / 2));
    let spec = GraphSpec {
        nodes,
        density: 0.0,
        edges: Some(edges),
        max_weight: 5,
    };
    random_graph_with(&spec, &mut r)
}

/// Adds an isolated node, which becomes the last node id.
pub fn with_isolated_node(g: &Graph) -> Graph {
    Graph::new(g.node_count() + 1, g.edges().to_vec()).unwrap()
}

/// Single-pair instance; every fifth seed targets an unreachable node.
pub fn small_spsp(seed: u64) -> SpspTheory {
    let g = small_graph(seed);
    let mut r = rng(seed ^ 0x5eed);
    let n = g.node_count();
    let source = r.gen_range(0..n);
    if seed % 5 == 4 {
        let g = with_isolated_node(&g);
        return SpspTheory::new(g, source, n).unwrap();
    }
    SpspTheory::new(g, source, r.gen_range(0..n)).unwrap()
}

pub fn small_sssp(seed: u64) -> PathTreeTheory {
    let g = small_graph(seed);
    let source = rng(seed ^ 0x5eed).gen_range(0..g.node_count());
    PathTreeTheory::new(g, source).unwrap()
}

pub fn small_prim(seed: u64) -> PrimTheory {
    let g = small_graph(seed);
    let root = rng(seed ^ 0x5eed).gen_range(0..g.node_count());
    PrimTheory::new(g, root).unwrap()
}

pub fn small_kruskal(seed: u64) -> KruskalTheory {
    KruskalTheory::new(small_graph(seed)).unwrap()
}

pub fn knapsack(seed: u64, items: std::ops::RangeInclusive<usize>, max_capacity: u64) -> KnapsackInstance {
    let mut r = rng(seed);
    let spec = KnapsackSpec {
        items: r.gen_range(items),
        capacity: Some(r.gen_range(0..=max_capacity)),
        max_weight: 30,
        max_utility: 30,
    };
    random_knapsack_with(&spec, &mut r)
}

pub fn small_knapsack(seed: u64) -> KnapsackTheory {
    KnapsackTheory::new(knapsack(seed, 3..=12, 60))
}

pub fn graph(n: usize, edges: &[(usize, usize, u64)]) -> Graph {
    Graph::new(n, edges.iter().map(|&(a, b, w)| Edge::new(a, b, w)).collect()).unwrap()
}

/// Graph theories over [`tiny_graph`], for searches without dominance.
pub fn tiny_prim(seed: u64) -> PrimTheory {
    PrimTheory::new(tiny_graph(seed, 8), 0).unwrap()
}

pub fn tiny_sssp(seed: u64) -> PathTreeTheory {
    PathTreeTheory::new(tiny_graph(seed, 8), 0).unwrap()
}

pub fn tiny_kruskal(seed: u64) -> KruskalTheory {
    KruskalTheory::new(tiny_graph(seed, 8)).unwrap()
}
