//! Forest-based (Kruskal-like) minimum spanning tree.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::graph::{EdgeId, Graph, Node, ProblemError};
use super::overlay::{insert_sorted, Overlay};
use super::{spanning_tree_edges, TieBreak};
use crate::theory::{Cost, ProblemTheory, Space};

#[derive(Debug)]
struct ForestState {
    edges: Vec<EdgeId>,
    // component label of every node: the smallest node id in its tree
    component: Vec<Node>,
    cost: Cost,
    rank: Vec<(Cost, EdgeId)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Join {
    edge: EdgeId,
    w: Cost,
    // labels of the two components being joined
    left: Node,
    right: Node,
}

/// An acyclic edge set with its component partition.
#[derive(Clone)]
pub struct ForestSpace {
    base: Arc<ForestState>,
    step: Option<Join>,
}

impl ForestSpace {
    fn edge_view(&self) -> Overlay<'_, EdgeId> {
        Overlay::new(&self.base.edges, self.step.map(|s| s.edge))
    }

    fn rank_view(&self) -> Overlay<'_, (Cost, EdgeId)> {
        Overlay::new(&self.base.rank, self.step.map(|s| (s.w, s.edge)))
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        self.edge_view().to_vec()
    }

    /// Canonical component label of `v`.
    pub fn component(&self, v: Node) -> Node {
        let label = self.base.component[v];
        match self.step {
            Some(j) if label == j.left || label == j.right => j.left.min(j.right),
            _ => label,
        }
    }

    fn cost(&self) -> Cost {
        self.base.cost + self.step.map_or(0, |s| s.w)
    }

    fn shares_base(&self, other: &ForestSpace) -> bool {
        Arc::ptr_eq(&self.base, &other.base)
    }

    fn materialize(&self) -> Arc<ForestState> {
        let Some(join) = self.step else {
            return Arc::clone(&self.base);
        };
        let base = &*self.base;
        let mut edges = base.edges.clone();
        insert_sorted(&mut edges, join.edge);
        let mut rank = base.rank.clone();
        insert_sorted(&mut rank, (join.w, join.edge));
        let keep = join.left.min(join.right);
        let drop = join.left.max(join.right);
        let component = base
            .component
            .iter()
            .map(|&c| if c == drop { keep } else { c })
            .collect();
        Arc::new(ForestState {
            edges,
            component,
            cost: base.cost + join.w,
            rank,
        })
    }

    fn rank_cmp(&self, other: &ForestSpace, tie: TieBreak) -> Ordering {
        if let (true, Some(a), Some(b)) = (self.shares_base(other), self.step, other.step) {
            return match tie {
                TieBreak::EdgeIndex => (a.w, a.edge).cmp(&(b.w, b.edge)),
                TieBreak::Strict => a.w.cmp(&b.w),
            };
        }
        match tie {
            TieBreak::EdgeIndex => self.rank_view().cmp_by(&other.rank_view(), |r| r),
            TieBreak::Strict => self.rank_view().cmp_by(&other.rank_view(), |r| r.0),
        }
    }
}

impl PartialEq for ForestSpace {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ForestSpace {}

impl PartialOrd for ForestSpace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ForestSpace {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (true, Some(a), Some(b)) = (self.shares_base(other), self.step, other.step) {
            return a.edge.cmp(&b.edge);
        }
        self.edge_view().cmp_by(&other.edge_view(), |e| e)
    }
}

impl fmt::Debug for ForestSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ForestSpace").field(&self.edges()).finish()
    }
}

impl Space for ForestSpace {
    fn level(&self) -> usize {
        self.base.edges.len() + usize::from(self.step.is_some())
    }
}

/// Minimum spanning tree by joining component trees: the child adding the
/// lightest edge between two distinct components dominates its siblings.
#[derive(Clone, Debug)]
pub struct KruskalTheory {
    graph: Graph,
    tie: TieBreak,
}

impl KruskalTheory {
    pub fn new(graph: Graph) -> Result<Self, ProblemError> {
        Self::with_tie_break(graph, TieBreak::EdgeIndex)
    }

    pub fn with_tie_break(graph: Graph, tie: TieBreak) -> Result<Self, ProblemError> {
        if !graph.is_connected() {
            return Err(ProblemError::GraphDisconnected);
        }
        Ok(KruskalTheory { graph, tie })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

impl ProblemTheory for KruskalTheory {
    type Space = ForestSpace;
    type Solution = Vec<EdgeId>;
    type Key = ();
    type Increment = EdgeId;

    fn initial(&self) -> ForestSpace {
        ForestSpace {
            base: Arc::new(ForestState {
                edges: Vec::new(),
                component: (0..self.graph.node_count()).collect(),
                cost: 0,
                rank: Vec::new(),
            }),
            step: None,
        }
    }

    fn split(&self, y: &ForestSpace) -> Vec<ForestSpace> {
        let state = y.materialize();
        self.graph
            .edges()
            .iter()
            .enumerate()
            .filter_map(|(id, e)| {
                let (left, right) = (state.component[e.a], state.component[e.b]);
                (left != right).then(|| ForestSpace {
                    base: Arc::clone(&state),
                    step: Some(Join {
                        edge: id,
                        w: e.w,
                        left,
                        right,
                    }),
                })
            })
            .collect()
    }

    fn increment(&self, parent: &ForestSpace, child: &ForestSpace) -> EdgeId {
        let mut have = parent.edge_view().iter().peekable();
        for e in child.edge_view().iter() {
            if have.peek() == Some(&e) {
                have.next();
            } else {
                return e;
            }
        }
        panic!("child {child:?} does not extend {parent:?}")
    }

    fn extract(&self, y: &ForestSpace) -> Option<Vec<EdgeId>> {
        (y.level() + 1 >= self.graph.node_count()).then(|| y.edges())
    }

    fn feasible(&self, z: &Vec<EdgeId>) -> bool {
        spanning_tree_edges(&self.graph, z)
    }

    fn cost(&self, z: &Vec<EdgeId>) -> Cost {
        z.iter().map(|&id| self.graph.edge(id).w).sum()
    }

    fn partial_cost(&self, y: &ForestSpace) -> Cost {
        y.cost()
    }

    /// Equal component partitions admit exactly the same joining edges.
    fn semi_congruent(&self, y: &ForestSpace, other: &ForestSpace) -> bool {
        (0..self.graph.node_count()).all(|v| y.component(v) == other.component(v))
    }

    fn dominates(&self, y: &ForestSpace, other: &ForestSpace) -> bool {
        y == other || y.rank_cmp(other, self.tie) == Ordering::Less
    }

    fn dominance_key(&self, _y: &ForestSpace) {}

    fn precedence(&self, a: &ForestSpace, b: &ForestSpace) -> Ordering {
        a.rank_cmp(b, self.tie)
    }

    fn max_depth(&self) -> usize {
        self.graph.node_count().saturating_sub(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::graph::Edge;

    fn triangle() -> KruskalTheory {
        let g = Graph::new(
            3,
            vec![Edge::new(0, 1, 1), Edge::new(1, 2, 2), Edge::new(0, 2, 3)],
        )
        .unwrap();
        KruskalTheory::new(g).unwrap()
    }

    #[test]
    fn split_joins_distinct_components() {
        let t = triangle();
        let root = t.initial();
        assert_eq!(t.split(&root).len(), 3);
        let first = t.split(&root).remove(0);
        assert_eq!(first.component(1), 0);
        let next: Vec<_> = t.split(&first).iter().map(|c| c.edges()).collect();
        assert_eq!(next, vec![vec![0, 1], vec![0, 2]]);
        let full = t.split(&first).remove(0);
        assert!(t.split(&full).is_empty());
        assert_eq!(t.extract(&full), Some(vec![0, 1]));
        assert_eq!(t.partial_cost(&full), 3);
    }

    #[test]
    fn lightest_join_dominates() {
        let t = triangle();
        let kids = t.split(&t.initial());
        assert!(t.dominates(&kids[0], &kids[1]));
        assert!(t.dominates(&kids[0], &kids[2]));
        assert!(!t.dominates(&kids[2], &kids[1]));
    }

    #[test]
    fn same_edge_set_in_either_order() {
        let t = triangle();
        let kids = t.split(&t.initial());
        let a = t.split(&kids[0]).into_iter().find(|c| c.edges() == vec![0, 2]).unwrap();
        let b = t.split(&kids[2]).into_iter().find(|c| c.edges() == vec![0, 2]).unwrap();
        assert_eq!(a, b);
        assert!(t.semi_congruent(&a, &b));
    }

    #[test]
    fn semi_congruence_compares_partitions() {
        // nodes 0..3, parallel structure 0-1 and 2-3
        let g = Graph::new(
            4,
            vec![Edge::new(0, 1, 1), Edge::new(0, 1, 2), Edge::new(2, 3, 1), Edge::new(1, 2, 1)],
        )
        .unwrap();
        let t = KruskalTheory::new(g).unwrap();
        let kids = t.split(&t.initial());
        assert!(t.semi_congruent(&kids[0], &kids[1]));
        assert!(!t.semi_congruent(&kids[0], &kids[2]));
    }
}
