//! Problem theories: single-pair shortest path, shortest-path tree,
//! two spanning-tree constructions and 0-1 knapsack.

mod forest;
mod graph;
mod knapsack;
mod overlay;
mod spsp;
mod tree;

pub use forest::{ForestSpace, KruskalTheory};
pub use graph::{Edge, EdgeId, Graph, Node, ProblemError};
pub use knapsack::{Item, KnapsackInstance, KnapsackSpace, KnapsackTheory};
pub use spsp::{PathSpace, SpspTheory};
pub use tree::{PathTreeTheory, PrimTheory, TreeSpace};

/// How the greedy graph theories rank equal-valued siblings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Fall back to the smaller edge id, so exactly one sibling survives.
    #[default]
    EdgeIndex,
    /// Compare values only; equal siblings are left incomparable.
    Strict,
}

/// `z` is a spanning tree of `graph`: valid distinct ids, `n - 1` edges,
/// no cycle.
pub(crate) fn spanning_tree_edges(graph: &Graph, z: &[EdgeId]) -> bool {
    let n = graph.node_count();
    if z.len() + 1 != n.max(1) || z.iter().any(|&id| id >= graph.edge_count()) {
        return false;
    }
    let mut parent: Vec<Node> = (0..n).collect();
    fn find(parent: &mut [Node], mut v: Node) -> Node {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for &id in z {
        let e = graph.edge(id);
        let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}
