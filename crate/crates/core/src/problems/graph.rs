use crate::theory::Cost;

pub type Node = usize;
pub type EdgeId = usize;

/// An undirected weighted edge. Endpoint order carries no meaning.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub a: Node,
    pub b: Node,
    pub w: Cost,
}

impl Edge {
    pub fn new(a: Node, b: Node, w: Cost) -> Self {
        Edge { a, b, w }
    }

    pub fn touches(&self, v: Node) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint opposite `v`, if `v` is an endpoint.
    pub fn other(&self, v: Node) -> Option<Node> {
        if self.a == v {
            Some(self.b)
        } else if self.b == v {
            Some(self.a)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProblemError {
    #[error("edge {edge} is a self-loop on node {node}")]
    SelfLoop { edge: EdgeId, node: Node },
    #[error("edge {edge} names node {node} but the graph has {n} nodes")]
    NodeOutOfRange { edge: EdgeId, node: Node, n: usize },
    #[error("node {node} is not in a graph of {n} nodes")]
    InvalidNode { node: Node, n: usize },
    #[error("graph is not connected")]
    GraphDisconnected,
}

/// Undirected multigraph on nodes `0..n`. Parallel edges are allowed,
/// self-loops are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self, ProblemError> {
        let mut adjacency = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            for node in [e.a, e.b] {
                if node >= n {
                    return Err(ProblemError::NodeOutOfRange { edge: id, node, n });
                }
            }
            if e.a == e.b {
                return Err(ProblemError::SelfLoop { edge: id, node: e.a });
            }
            adjacency[e.a].push(id);
            adjacency[e.b].push(id);
        }
        Ok(Graph { n, edges, adjacency })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    /// Edge ids incident to `v`, in increasing order.
    pub fn incident(&self, v: Node) -> &[EdgeId] {
        &self.adjacency[v]
    }

    pub fn check_node(&self, node: Node) -> Result<(), ProblemError> {
        if node < self.n {
            Ok(())
        } else {
            Err(ProblemError::InvalidNode { node, n: self.n })
        }
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &id in &self.adjacency[v] {
                let u = self.edges[id].other(v).expect("adjacency is consistent");
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops_and_out_of_range() {
        assert_eq!(
            Graph::new(2, vec![Edge::new(0, 0, 5)]),
            Err(ProblemError::SelfLoop { edge: 0, node: 0 })
        );
        assert_eq!(
            Graph::new(2, vec![Edge::new(0, 2, 1)]),
            Err(ProblemError::NodeOutOfRange { edge: 0, node: 2, n: 2 })
        );
    }

    #[test]
    fn parallel_edges_are_kept() {
        let g = Graph::new(2, vec![Edge::new(0, 1, 1), Edge::new(1, 0, 2)]).unwrap();
        assert_eq!(g.incident(0), &[0, 1]);
        assert!(g.is_connected());
    }

    #[test]
    fn connectivity() {
        assert!(Graph::new(1, vec![]).unwrap().is_connected());
        assert!(!Graph::new(3, vec![Edge::new(0, 1, 1)]).unwrap().is_connected());
    }
}
