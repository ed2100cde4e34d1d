//! Single-pair shortest path.
//!
//! Spaces are simple paths growing from the source. Two paths ending at
//! the same node are semi-congruent, and the cheaper one dominates.

use super::graph::{EdgeId, Graph, Node, ProblemError};
use crate::theory::{Cost, ProblemTheory, Space};

/// A simple path from the source, as a sequence of edge ids.
///
/// Only [`SpspTheory`] constructs these, so the path invariant (contiguous
/// from the source, no repeated node) always holds.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathSpace {
    edges: Vec<EdgeId>,
    // nodes[0] is the source, nodes[i + 1] the far end of edges[i]
    nodes: Vec<Node>,
    cost: Cost,
}

impl PathSpace {
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn end(&self) -> Node {
        *self.nodes.last().expect("path always holds its source")
    }

    pub fn cost(&self) -> Cost {
        self.cost
    }
}

impl Space for PathSpace {
    fn level(&self) -> usize {
        self.edges.len()
    }
}

#[derive(Clone, Debug)]
pub struct SpspTheory {
    graph: Graph,
    source: Node,
    target: Node,
}

impl SpspTheory {
    pub fn new(graph: Graph, source: Node, target: Node) -> Result<Self, ProblemError> {
        graph.check_node(source)?;
        graph.check_node(target)?;
        Ok(SpspTheory { graph, source, target })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn source(&self) -> Node {
        self.source
    }

    pub fn target(&self) -> Node {
        self.target
    }

    /// `path?(edges, from, to)`: contiguous, no repeated node. The empty
    /// sequence is a path exactly when `from == to`.
    pub fn is_path(&self, edges: &[EdgeId], from: Node, to: Node) -> bool {
        let mut visited = vec![false; self.graph.node_count()];
        let mut at = from;
        visited[at] = true;
        for &id in edges {
            let Some(next) = self.graph.edges().get(id).and_then(|e| e.other(at)) else {
                return false;
            };
            if visited[next] {
                return false;
            }
            visited[next] = true;
            at = next;
        }
        at == to
    }
}

impl ProblemTheory for SpspTheory {
    type Space = PathSpace;
    type Solution = Vec<EdgeId>;
    type Key = Node;
    type Increment = EdgeId;

    fn initial(&self) -> PathSpace {
        PathSpace {
            edges: Vec::new(),
            nodes: vec![self.source],
            cost: 0,
        }
    }

    fn split(&self, y: &PathSpace) -> Vec<PathSpace> {
        let end = y.end();
        self.graph
            .incident(end)
            .iter()
            .filter_map(|&id| {
                let e = self.graph.edge(id);
                let next = e.other(end)?;
                if y.nodes.contains(&next) {
                    return None;
                }
                let mut child = y.clone();
                child.edges.push(id);
                child.nodes.push(next);
                child.cost += e.w;
                debug_assert!(self.is_path(&child.edges, self.source, next));
                Some(child)
            })
            .collect()
    }

    fn increment(&self, _parent: &PathSpace, child: &PathSpace) -> EdgeId {
        *child.edges.last().expect("a split child has at least one edge")
    }

    fn extract(&self, y: &PathSpace) -> Option<Vec<EdgeId>> {
        (y.end() == self.target).then(|| y.edges.clone())
    }

    fn feasible(&self, z: &Vec<EdgeId>) -> bool {
        self.is_path(z, self.source, self.target)
    }

    fn cost(&self, z: &Vec<EdgeId>) -> Cost {
        z.iter().map(|&id| self.graph.edge(id).w).sum()
    }

    fn partial_cost(&self, y: &PathSpace) -> Cost {
        y.cost
    }

    // `y` is a valid path by construction, so only the end nodes matter.
    fn semi_congruent(&self, y: &PathSpace, other: &PathSpace) -> bool {
        y.end() == other.end()
    }

    fn dominance_key(&self, y: &PathSpace) -> Node {
        y.end()
    }

    fn max_depth(&self) -> usize {
        self.graph.edge_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::graph::Edge;
    use crate::theory::verdict;
    use crate::theory::DominanceVerdict;

    // s=0, a=1, t=2
    fn triangle() -> SpspTheory {
        let g = Graph::new(
            3,
            vec![Edge::new(0, 1, 1), Edge::new(1, 2, 1), Edge::new(0, 2, 3)],
        )
        .unwrap();
        SpspTheory::new(g, 0, 2).unwrap()
    }

    #[test]
    fn initial_is_empty_path() {
        let t = triangle();
        let root = t.initial();
        assert!(root.edges().is_empty());
        assert_eq!(root.level(), 0);
        assert_eq!(t.partial_cost(&root), 0);
    }

    #[test]
    fn split_follows_incident_non_revisiting_edges() {
        let g = Graph::new(3, vec![Edge::new(0, 1, 1), Edge::new(0, 2, 4)]).unwrap();
        let t = SpspTheory::new(g, 0, 2).unwrap();
        let kids = t.split(&t.initial());
        let seqs: Vec<_> = kids.iter().map(|k| k.edges().to_vec()).collect();
        assert_eq!(seqs, vec![vec![0], vec![1]]);

        let t = triangle();
        let sa = t.split(&t.initial()).remove(0);
        assert_eq!(sa.edges(), &[0]);
        assert_eq!(t.partial_cost(&sa), 1);
        let next: Vec<_> = t.split(&sa).iter().map(|k| k.edges().to_vec()).collect();
        assert_eq!(next, vec![vec![0, 1]]);
    }

    #[test]
    fn extract_and_feasibility() {
        let t = triangle();
        let sa = t.split(&t.initial()).remove(0);
        assert_eq!(t.extract(&sa), None);
        let sat = t.split(&sa).remove(0);
        let z = t.extract(&sat).unwrap();
        assert!(t.feasible(&z));
        assert_eq!(t.cost(&z), 2);
        assert!(!t.feasible(&vec![1]));
        assert!(!t.feasible(&vec![0, 0]));
        assert!(!t.feasible(&vec![9]));
    }

    #[test]
    fn same_source_and_target_is_the_empty_path() {
        let g = Graph::new(2, vec![Edge::new(0, 1, 3)]).unwrap();
        let t = SpspTheory::new(g, 1, 1).unwrap();
        assert_eq!(t.extract(&t.initial()), Some(vec![]));
        assert!(t.feasible(&vec![]));
    }

    #[test]
    fn end_node_dominance() {
        // 0=s, 1=a, 2=c, 3=d
        let g = Graph::new(
            4,
            vec![Edge::new(0, 1, 1), Edge::new(1, 2, 1), Edge::new(0, 2, 5), Edge::new(2, 3, 1)],
        )
        .unwrap();
        let t = SpspTheory::new(g, 0, 3).unwrap();
        let root = t.initial();
        let kids = t.split(&root);
        let via_a = t.split(&kids[0]).into_iter().find(|p| p.end() == 2).unwrap();
        let direct = kids.into_iter().find(|p| p.end() == 2).unwrap();
        assert_eq!(t.partial_cost(&via_a), 2);
        assert_eq!(t.partial_cost(&direct), 5);
        assert!(t.semi_congruent(&via_a, &direct));
        assert_eq!(verdict(&t, &via_a, &direct), DominanceVerdict::LeftDominates);
        assert_eq!(verdict(&t, &via_a, &via_a), DominanceVerdict::Mutual);
        assert_eq!(t.dominance_key(&via_a), t.dominance_key(&direct));
        let a = t.split(&root).remove(0);
        assert!(!t.semi_congruent(&a, &direct));
        assert_ne!(t.dominance_key(&a), t.dominance_key(&direct));
    }

    #[test]
    fn invalid_nodes_are_rejected() {
        let g = Graph::new(2, vec![]).unwrap();
        assert_eq!(
            SpspTheory::new(g.clone(), 0, 2).unwrap_err(),
            ProblemError::InvalidNode { node: 2, n: 2 }
        );
        assert!(SpspTheory::new(g, 5, 0).is_err());
    }

    #[test]
    fn max_depth_is_edge_count() {
        let g = Graph::new(
            4,
            vec![Edge::new(0, 1, 1), Edge::new(1, 2, 1), Edge::new(2, 3, 1), Edge::new(3, 0, 1)],
        )
        .unwrap();
        assert_eq!(SpspTheory::new(g, 0, 2).unwrap().max_depth(), 4);
    }
}
