//! Ground truth for tests: exhaustive search without dominance, textbook
//! reference algorithms, and extension enumeration.
//!
//! The reference algorithms only share the instance types with the rest
//! of the crate. None of this is tuned for speed; expansion caps make an
//! oversized instance fail instead of hang.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use crate::problems::{Graph, KnapsackInstance, Node};
use crate::theory::{replay, Cost, ProblemTheory, Space};

pub const DEFAULT_EXPANSION_CAP: usize = 1_000_000;
pub const DEFAULT_DP_CELL_CAP: u64 = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("expanded more than {cap} spaces")]
    ExpansionCapExceeded { cap: usize },
    #[error("dynamic program needs {cells} cells, cap is {cap}")]
    CapExceeded { cells: u64, cap: u64 },
    #[error("graph is not connected")]
    GraphDisconnected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult<Z> {
    pub optimal_cost: Option<Cost>,
    /// Number of distinct optimal solutions.
    pub witness_count: usize,
    pub witness: Option<Z>,
}

fn best_of<T: ProblemTheory>(
    theory: &T,
    solutions: impl IntoIterator<Item = T::Solution>,
) -> OracleResult<T::Solution> {
    let dir = theory.direction();
    let mut optimum: Option<Cost> = None;
    let mut optimal: BTreeSet<T::Solution> = BTreeSet::new();
    for z in solutions {
        let c = theory.cost(&z);
        match optimum {
            Some(best) if dir.compare(c, best).is_gt() => {}
            Some(best) if c == best => {
                optimal.insert(z);
            }
            _ => {
                optimum = Some(c);
                optimal.clear();
                optimal.insert(z);
            }
        }
    }
    OracleResult {
        optimal_cost: optimum,
        witness_count: optimal.len(),
        witness: optimal.into_iter().next(),
    }
}

/// Expands the whole split tree down to `depth_bound`, removing only exact
/// duplicates, and returns the best feasible extraction.
pub fn brute_force<T: ProblemTheory>(
    theory: &T,
    depth_bound: usize,
    cap: usize,
) -> Result<OracleResult<T::Solution>, OracleError> {
    let mut feasible = Vec::new();
    let mut level: BTreeSet<T::Space> = BTreeSet::from([theory.initial()]);
    let mut expanded = 0usize;
    for depth in 0..=depth_bound {
        for y in &level {
            if let Some(z) = theory.extract(y).filter(|z| theory.feasible(z)) {
                feasible.push(z);
            }
        }
        if depth == depth_bound {
            break;
        }
        let mut next = BTreeSet::new();
        for y in &level {
            expanded += 1;
            if expanded > cap {
                return Err(OracleError::ExpansionCapExceeded { cap });
            }
            next.extend(theory.split(y));
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    Ok(best_of(theory, feasible))
}

/// Every feasible solution reachable from `y` within `depth` further
/// splits, `y`'s own extraction included.
pub fn enumerate_extensions<T: ProblemTheory>(
    theory: &T,
    y: &T::Space,
    depth: usize,
    cap: usize,
) -> Result<BTreeSet<T::Solution>, OracleError> {
    let mut found = BTreeSet::new();
    let mut stack = vec![(y.clone(), 0usize)];
    let mut expanded = 0usize;
    while let Some((space, d)) = stack.pop() {
        if let Some(z) = theory.extract(&space).filter(|z| theory.feasible(z)) {
            found.insert(z);
        }
        if d == depth {
            continue;
        }
        expanded += 1;
        if expanded > cap {
            return Err(OracleError::ExpansionCapExceeded { cap });
        }
        stack.extend(theory.split(&space).into_iter().map(|c| (c, d + 1)));
    }
    Ok(found)
}

/// Best feasible cost reachable from `y`, if any.
pub fn subtree_optimum<T: ProblemTheory>(
    theory: &T,
    y: &T::Space,
    depth: usize,
    cap: usize,
) -> Result<Option<Cost>, OracleError> {
    let all = enumerate_extensions(theory, y, depth, cap)?;
    Ok(best_of(theory, all).optimal_cost)
}

/// An extension that completes one space but not the other.
#[derive(Clone, Debug)]
pub struct ReplayCounterexample<I> {
    pub increments: Vec<I>,
}

/// Checks `y ⇝ other` by brute force: walks every split sequence below
/// `other` (up to `depth` steps) that ends in a feasible extraction and
/// replays it on `y`. Returns the first sequence that fails on `y`.
pub fn find_replay_counterexample<T: ProblemTheory>(
    theory: &T,
    y: &T::Space,
    other: &T::Space,
    depth: usize,
    cap: usize,
) -> Result<Option<ReplayCounterexample<T::Increment>>, OracleError> {
    let mut stack = vec![(other.clone(), Vec::new())];
    let mut expanded = 0usize;
    while let Some((space, path)) = stack.pop() {
        if theory.extract(&space).is_some_and(|z| theory.feasible(&z)) {
            let ok = replay(theory, y, &path)
                .and_then(|end| theory.extract(&end))
                .is_some_and(|z| theory.feasible(&z));
            if !ok {
                return Ok(Some(ReplayCounterexample { increments: path }));
            }
        }
        if path.len() == depth {
            continue;
        }
        expanded += 1;
        if expanded > cap {
            return Err(OracleError::ExpansionCapExceeded { cap });
        }
        for child in theory.split(&space) {
            let mut p = path.clone();
            p.push(theory.increment(&space, &child));
            stack.push((child, p));
        }
    }
    Ok(None)
}

/// Every distinct space reachable from the initial one, grouped by level.
pub fn reachable_levels<T: ProblemTheory>(
    theory: &T,
    depth_bound: usize,
    cap: usize,
) -> Result<Vec<Vec<T::Space>>, OracleError> {
    let mut levels = vec![vec![theory.initial()]];
    let mut total = 1usize;
    while levels.len() <= depth_bound {
        let next: BTreeSet<T::Space> = levels
            .last()
            .expect("non-empty")
            .iter()
            .flat_map(|y| theory.split(y))
            .collect();
        if next.is_empty() {
            break;
        }
        total += next.len();
        if total > cap {
            return Err(OracleError::ExpansionCapExceeded { cap });
        }
        debug_assert!(next.iter().all(|y| y.level() == levels.len()));
        levels.push(next.into_iter().collect());
    }
    Ok(levels)
}

// built from the edge list so the references never touch the graph's
// own adjacency index
fn adjacency(g: &Graph) -> Vec<Vec<(Node, Cost)>> {
    let mut adj = vec![Vec::new(); g.node_count()];
    for e in g.edges() {
        adj[e.a].push((e.b, e.w));
        adj[e.b].push((e.a, e.w));
    }
    adj
}

/// Single-source distances by label-setting (Dijkstra) over a binary heap.
/// Unreachable nodes are `None`.
pub fn reachable_distances(g: &Graph, s: Node) -> Vec<Option<Cost>> {
    let adj = adjacency(g);
    let mut dist: Vec<Option<Cost>> = vec![None; g.node_count()];
    let mut heap = BinaryHeap::from([Reverse((0, s))]);
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist[v].is_some() {
            continue;
        }
        dist[v] = Some(d);
        for &(u, w) in &adj[v] {
            if dist[u].is_none() {
                heap.push(Reverse((d + w, u)));
            }
        }
    }
    dist
}

/// Distances from `s` to every node; fails unless all are reachable.
pub fn shortest_path_ref(g: &Graph, s: Node) -> Result<Vec<Cost>, OracleError> {
    reachable_distances(g, s)
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(OracleError::GraphDisconnected)
}

/// Minimum spanning tree weight by lazy Prim over a heap.
pub fn mst_ref(g: &Graph) -> Result<Cost, OracleError> {
    let n = g.node_count();
    if n == 0 {
        return Ok(0);
    }
    let adj = adjacency(g);
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::from([Reverse((0, 0))]);
    let mut total = 0;
    let mut reached = 0;
    while let Some(Reverse((w, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        reached += 1;
        total += w;
        for &(u, wu) in &adj[v] {
            if !done[u] {
                heap.push(Reverse((wu, u)));
            }
        }
    }
    if reached == n {
        Ok(total)
    } else {
        Err(OracleError::GraphDisconnected)
    }
}

/// Maximum utility by dynamic programming over capacities.
pub fn knapsack_dp_ref(k: &KnapsackInstance, cell_cap: u64) -> Result<Cost, OracleError> {
    let cells = (k.capacity + 1).saturating_mul(k.items.len() as u64 + 1);
    if cells > cell_cap {
        return Err(OracleError::CapExceeded { cells, cap: cell_cap });
    }
    let cap = k.capacity as usize;
    let mut best = vec![0 as Cost; cap + 1];
    for item in &k.items {
        let w = item.weight as usize;
        if w > cap {
            continue;
        }
        for c in (w..=cap).rev() {
            best[c] = best[c].max(best[c - w] + item.utility);
        }
    }
    Ok(best[cap])
}
