//! Trees grown from a root: the shortest-path tree and the cut-based
//! (Prim-like) minimum spanning tree.
//!
//! Both split a tree by adding an edge with exactly one endpoint inside
//! it. They differ in the value a new edge contributes: its weight for the
//! spanning tree, the new node's distance from the root for the path tree.
//! That value is both the cost increment and the greedy ranking key.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::graph::{EdgeId, Graph, Node, ProblemError};
use super::overlay::{insert_sorted, Overlay};
use super::{spanning_tree_edges, TieBreak};
use crate::theory::{Cost, ProblemTheory, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Metric {
    /// value = distance of the new node from the root
    PathTree,
    /// value = weight of the new edge
    EdgeWeight,
}

#[derive(Debug)]
struct TreeState {
    edges: Vec<EdgeId>,
    in_tree: Vec<bool>,
    nodes: usize,
    dist: Vec<Cost>,
    cost: Cost,
    // sorted (value, edge) pairs, one per tree edge
    rank: Vec<(Cost, EdgeId)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Step {
    edge: EdgeId,
    node: Node,
    value: Cost,
    dist: Cost,
}

/// A tree containing the root: a shared parent state plus at most one
/// added edge.
#[derive(Clone)]
pub struct TreeSpace {
    base: Arc<TreeState>,
    step: Option<Step>,
}

impl TreeSpace {
    fn edge_view(&self) -> Overlay<'_, EdgeId> {
        Overlay::new(&self.base.edges, self.step.map(|s| s.edge))
    }

    fn rank_view(&self) -> Overlay<'_, (Cost, EdgeId)> {
        Overlay::new(&self.base.rank, self.step.map(|s| (s.value, s.edge)))
    }

    /// Tree edges in increasing id order.
    pub fn edges(&self) -> Vec<EdgeId> {
        self.edge_view().to_vec()
    }

    pub fn node_count(&self) -> usize {
        self.base.nodes + usize::from(self.step.is_some())
    }

    pub fn contains_node(&self, v: Node) -> bool {
        self.base.in_tree[v] || self.step.is_some_and(|s| s.node == v)
    }

    /// Tree distance from the root, for nodes in the tree. Only
    /// meaningful for path trees.
    pub fn dist(&self, v: Node) -> Option<Cost> {
        match self.step {
            Some(s) if s.node == v => Some(s.dist),
            _ if self.base.in_tree[v] => Some(self.base.dist[v]),
            _ => None,
        }
    }

    fn cost(&self) -> Cost {
        self.base.cost + self.step.map_or(0, |s| s.value)
    }

    fn shares_base(&self, other: &TreeSpace) -> bool {
        Arc::ptr_eq(&self.base, &other.base)
    }

    fn materialize(&self) -> Arc<TreeState> {
        let Some(step) = self.step else {
            return Arc::clone(&self.base);
        };
        let base = &*self.base;
        let mut edges = base.edges.clone();
        insert_sorted(&mut edges, step.edge);
        let mut rank = base.rank.clone();
        insert_sorted(&mut rank, (step.value, step.edge));
        let mut in_tree = base.in_tree.clone();
        in_tree[step.node] = true;
        let mut dist = base.dist.clone();
        dist[step.node] = step.dist;
        Arc::new(TreeState {
            edges,
            in_tree,
            nodes: base.nodes + 1,
            dist,
            cost: base.cost + step.value,
            rank,
        })
    }

    fn rank_cmp(&self, other: &TreeSpace, tie: TieBreak) -> Ordering {
        if let (true, Some(a), Some(b)) = (self.shares_base(other), self.step, other.step) {
            return match tie {
                TieBreak::EdgeIndex => (a.value, a.edge).cmp(&(b.value, b.edge)),
                TieBreak::Strict => a.value.cmp(&b.value),
            };
        }
        match tie {
            TieBreak::EdgeIndex => self.rank_view().cmp_by(&other.rank_view(), |r| r),
            TieBreak::Strict => self.rank_view().cmp_by(&other.rank_view(), |r| r.0),
        }
    }
}

impl PartialEq for TreeSpace {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for TreeSpace {}

impl PartialOrd for TreeSpace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TreeSpace {
    fn cmp(&self, other: &Self) -> Ordering {
        // siblings: the set with the smaller added edge is lexicographically smaller
        if let (true, Some(a), Some(b)) = (self.shares_base(other), self.step, other.step) {
            return a.edge.cmp(&b.edge);
        }
        self.edge_view().cmp_by(&other.edge_view(), |e| e)
    }
}

impl fmt::Debug for TreeSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("TreeSpace").field(&self.edges()).finish()
    }
}

impl Space for TreeSpace {
    fn level(&self) -> usize {
        self.base.edges.len() + usize::from(self.step.is_some())
    }
}

#[derive(Clone, Debug)]
struct RootedTree {
    graph: Graph,
    root: Node,
    metric: Metric,
    tie: TieBreak,
}

impl RootedTree {
    fn new(graph: Graph, root: Node, metric: Metric, tie: TieBreak) -> Result<Self, ProblemError> {
        graph.check_node(root)?;
        if !graph.is_connected() {
            return Err(ProblemError::GraphDisconnected);
        }
        Ok(RootedTree { graph, root, metric, tie })
    }

    fn initial(&self) -> TreeSpace {
        let n = self.graph.node_count();
        let mut in_tree = vec![false; n];
        in_tree[self.root] = true;
        TreeSpace {
            base: Arc::new(TreeState {
                edges: Vec::new(),
                in_tree,
                nodes: 1,
                dist: vec![0; n],
                cost: 0,
                rank: Vec::new(),
            }),
            step: None,
        }
    }

    fn split(&self, y: &TreeSpace) -> Vec<TreeSpace> {
        let state = y.materialize();
        let mut children = Vec::new();
        for (id, e) in self.graph.edges().iter().enumerate() {
            let (inside, outside) = match (state.in_tree[e.a], state.in_tree[e.b]) {
                (true, false) => (e.a, e.b),
                (false, true) => (e.b, e.a),
                _ => continue,
            };
            let dist = state.dist[inside] + e.w;
            let value = match self.metric {
                Metric::PathTree => dist,
                Metric::EdgeWeight => e.w,
            };
            children.push(TreeSpace {
                base: Arc::clone(&state),
                step: Some(Step {
                    edge: id,
                    node: outside,
                    value,
                    dist,
                }),
            });
        }
        children
    }

    fn increment(&self, parent: &TreeSpace, child: &TreeSpace) -> EdgeId {
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

    fn extract(&self, y: &TreeSpace) -> Option<Vec<EdgeId>> {
        (y.node_count() == self.graph.node_count()).then(|| y.edges())
    }

    fn same_nodes(&self, y: &TreeSpace, other: &TreeSpace) -> bool {
        y.node_count() == other.node_count()
            && (0..self.graph.node_count()).all(|v| y.contains_node(v) == other.contains_node(v))
    }

    fn dominates(&self, y: &TreeSpace, other: &TreeSpace) -> bool {
        y == other || y.rank_cmp(other, self.tie) == Ordering::Less
    }
}

/// Single-source shortest paths as a spanning path tree rooted at the
/// source. The cost of a tree is the sum over all nodes of their tree
/// distance from the root.
///
/// Among siblings, the one whose new node is closest to the root
/// dominates; ties go to the smaller edge id unless the theory is built
/// with [`TieBreak::Strict`].
#[derive(Clone, Debug)]
pub struct PathTreeTheory(RootedTree);

impl PathTreeTheory {
    pub fn new(graph: Graph, source: Node) -> Result<Self, ProblemError> {
        Self::with_tie_break(graph, source, TieBreak::EdgeIndex)
    }

    pub fn with_tie_break(graph: Graph, source: Node, tie: TieBreak) -> Result<Self, ProblemError> {
        RootedTree::new(graph, source, Metric::PathTree, tie).map(PathTreeTheory)
    }

    pub fn graph(&self) -> &Graph {
        &self.0.graph
    }

    pub fn source(&self) -> Node {
        self.0.root
    }

    /// Root distances along the edges of the tree `z`, or `None` for
    /// nodes the tree does not reach.
    pub fn tree_distances(&self, z: &[EdgeId]) -> Vec<Option<Cost>> {
        let g = &self.0.graph;
        let mut dist = vec![None; g.node_count()];
        dist[self.0.root] = Some(0);
        let mut stack = vec![self.0.root];
        let mut adj = vec![Vec::new(); g.node_count()];
        for &id in z {
            let e = g.edge(id);
            adj[e.a].push(id);
            adj[e.b].push(id);
        }
        while let Some(v) = stack.pop() {
            let dv = dist[v].expect("stacked nodes have distances");
            for &id in &adj[v] {
                let e = g.edge(id);
                let u = e.other(v).expect("adjacent edge");
                if dist[u].is_none() {
                    dist[u] = Some(dv + e.w);
                    stack.push(u);
                }
            }
        }
        dist
    }
}

impl ProblemTheory for PathTreeTheory {
    type Space = TreeSpace;
    type Solution = Vec<EdgeId>;
    type Key = ();
    type Increment = EdgeId;

    fn initial(&self) -> TreeSpace {
        self.0.initial()
    }
    fn split(&self, y: &TreeSpace) -> Vec<TreeSpace> {
        self.0.split(y)
    }
    fn increment(&self, parent: &TreeSpace, child: &TreeSpace) -> EdgeId {
        self.0.increment(parent, child)
    }
    fn extract(&self, y: &TreeSpace) -> Option<Vec<EdgeId>> {
        self.0.extract(y)
    }
    fn feasible(&self, z: &Vec<EdgeId>) -> bool {
        spanning_tree_edges(&self.0.graph, z)
    }
    fn cost(&self, z: &Vec<EdgeId>) -> Cost {
        self.tree_distances(z).into_iter().flatten().sum()
    }
    fn partial_cost(&self, y: &TreeSpace) -> Cost {
        y.cost()
    }
    fn semi_congruent(&self, y: &TreeSpace, other: &TreeSpace) -> bool {
        self.0.same_nodes(y, other)
    }
    fn dominates(&self, y: &TreeSpace, other: &TreeSpace) -> bool {
        self.0.dominates(y, other)
    }
    fn dominance_key(&self, _y: &TreeSpace) {}
    fn precedence(&self, a: &TreeSpace, b: &TreeSpace) -> Ordering {
        a.rank_cmp(b, self.0.tie)
    }
    fn max_depth(&self) -> usize {
        self.0.graph.node_count().saturating_sub(1)
    }
}

/// Minimum spanning tree grown from a root across the cut: the child
/// adding the lightest crossing edge dominates its siblings.
#[derive(Clone, Debug)]
pub struct PrimTheory(RootedTree);

impl PrimTheory {
    pub fn new(graph: Graph, root: Node) -> Result<Self, ProblemError> {
        Self::with_tie_break(graph, root, TieBreak::EdgeIndex)
    }

    pub fn with_tie_break(graph: Graph, root: Node, tie: TieBreak) -> Result<Self, ProblemError> {
        RootedTree::new(graph, root, Metric::EdgeWeight, tie).map(PrimTheory)
    }

    pub fn graph(&self) -> &Graph {
        &self.0.graph
    }
}

impl ProblemTheory for PrimTheory {
    type Space = TreeSpace;
    type Solution = Vec<EdgeId>;
    type Key = ();
    type Increment = EdgeId;

    fn initial(&self) -> TreeSpace {
        self.0.initial()
    }
    fn split(&self, y: &TreeSpace) -> Vec<TreeSpace> {
        self.0.split(y)
    }
    fn increment(&self, parent: &TreeSpace, child: &TreeSpace) -> EdgeId {
        self.0.increment(parent, child)
    }
    fn extract(&self, y: &TreeSpace) -> Option<Vec<EdgeId>> {
        self.0.extract(y)
    }
    fn feasible(&self, z: &Vec<EdgeId>) -> bool {
        spanning_tree_edges(&self.0.graph, z)
    }
    fn cost(&self, z: &Vec<EdgeId>) -> Cost {
        z.iter().map(|&id| self.0.graph.edge(id).w).sum()
    }
    fn partial_cost(&self, y: &TreeSpace) -> Cost {
        y.cost()
    }
    fn semi_congruent(&self, y: &TreeSpace, other: &TreeSpace) -> bool {
        self.0.same_nodes(y, other)
    }
    fn dominates(&self, y: &TreeSpace, other: &TreeSpace) -> bool {
        self.0.dominates(y, other)
    }
    fn dominance_key(&self, _y: &TreeSpace) {}
    fn precedence(&self, a: &TreeSpace, b: &TreeSpace) -> Ordering {
        a.rank_cmp(b, self.0.tie)
    }
    fn max_depth(&self) -> usize {
        self.0.graph.node_count().saturating_sub(1)
    }
}
