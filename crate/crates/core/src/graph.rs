//! Directed two-terminal multigraphs.

use std::collections::VecDeque;

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge {0} is a self-loop")]
    SelfLoop(EdgeId),
    #[error("edge {edge} references unknown node {node}")]
    UnknownNode { edge: EdgeId, node: NodeId },
    #[error("source and sink must be distinct nodes")]
    SameTerminals,
    #[error("edge {0} lies on no source-sink path")]
    DeadEdge(EdgeId),
    #[error("more than {0} source-sink paths")]
    PathExplosion(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: NodeId,
    pub head: NodeId,
}

/// A directed s-t multigraph. Edge ids are the dense indices `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    names: Vec<String>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    source: NodeId,
    sink: NodeId,
}

impl Network {
    /// Builds a network over nodes `0..node_count`, named `v0, v1, ...`.
    pub fn new(
        node_count: usize,
        source: NodeId,
        sink: NodeId,
        arcs: &[(NodeId, NodeId)],
    ) -> Result<Self, GraphError> {
        let names = (0..node_count).map(|i| format!("v{i}")).collect();
        Self::with_names(names, source, sink, arcs)
    }

    pub fn with_names(
        names: Vec<String>,
        source: NodeId,
        sink: NodeId,
        arcs: &[(NodeId, NodeId)],
    ) -> Result<Self, GraphError> {
        let n = names.len();
        for terminal in [source, sink] {
            if terminal >= n {
                return Err(GraphError::UnknownNode { edge: usize::MAX, node: terminal });
            }
        }
        if source == sink {
            return Err(GraphError::SameTerminals);
        }
        let mut edges = Vec::with_capacity(arcs.len());
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (id, &(tail, head)) in arcs.iter().enumerate() {
            for node in [tail, head] {
                if node >= n {
                    return Err(GraphError::UnknownNode { edge: id, node });
                }
            }
            if tail == head {
                return Err(GraphError::SelfLoop(id));
            }
            edges.push(Edge { id, tail, head });
            out_edges[tail].push(id);
            in_edges[head].push(id);
        }
        Ok(Network { names, edges, out_edges, in_edges, source, sink })
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn node_name(&self, node: NodeId) -> &str {
        &self.names[node]
    }

    pub fn node_names(&self) -> &[String] {
        &self.names
    }

    pub fn out_edges(&self, node: NodeId) -> &[EdgeId] {
        &self.out_edges[node]
    }

    pub fn in_edges(&self, node: NodeId) -> &[EdgeId] {
        &self.in_edges[node]
    }

    /// Nodes reachable from `start` using only edges accepted by `keep`,
    /// walking forward (or backward when `forward` is false).
    pub fn reachable(&self, start: NodeId, forward: bool, keep: impl Fn(EdgeId) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let incident = if forward { &self.out_edges[u] } else { &self.in_edges[u] };
            for &e in incident {
                if !keep(e) {
                    continue;
                }
                let edge = self.edges[e];
                let v = if forward { edge.head } else { edge.tail };
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Rejects networks with an edge that no s-t walk can traverse.
    pub fn check_all_edges_live(&self) -> Result<(), GraphError> {
        let from_s = self.reachable(self.source, true, |_| true);
        let to_t = self.reachable(self.sink, false, |_| true);
        for edge in &self.edges {
            if !from_s[edge.tail] || !to_t[edge.head] || edge.tail == self.sink || edge.head == self.source {
                return Err(GraphError::DeadEdge(edge.id));
            }
        }
        Ok(())
    }

    /// All simple s-t paths, as edge-id sequences in DFS order over ascending
    /// edge ids.
    pub fn enumerate_st_paths(&self, cap: usize) -> Result<Vec<Vec<EdgeId>>, GraphError> {
        self.simple_paths(self.source, self.sink, |_| true, cap)
    }

    /// Simple `from`-`to` paths restricted to edges accepted by `keep`.
    pub fn simple_paths(
        &self,
        from: NodeId,
        to: NodeId,
        keep: impl Fn(EdgeId) -> bool,
        cap: usize,
    ) -> Result<Vec<Vec<EdgeId>>, GraphError> {
        let mut paths = Vec::new();
        let mut on_path = vec![false; self.node_count()];
        let mut stack: Vec<EdgeId> = Vec::new();
        // (node, index of next out-edge to try)
        let mut frames: Vec<(NodeId, usize)> = vec![(from, 0)];
        on_path[from] = true;
        while let Some(frame) = frames.last_mut() {
            let (u, next) = *frame;
            if u == to {
                if paths.len() == cap {
                    return Err(GraphError::PathExplosion(cap));
                }
                paths.push(stack.clone());
                frames.pop();
                on_path[u] = false;
                stack.pop();
                continue;
            }
            if next == self.out_edges[u].len() {
                frames.pop();
                on_path[u] = false;
                stack.pop();
                continue;
            }
            frame.1 += 1;
            let e = self.out_edges[u][next];
            let v = self.edges[e].head;
            if keep(e) && !on_path[v] {
                on_path[v] = true;
                stack.push(e);
                frames.push((v, 0));
            }
        }
        Ok(paths)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braess() -> Network {
        // s=0, u=1, v=2, t=3
        Network::new(4, 0, 3, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn rejects_self_loops_and_bad_nodes() {
        assert_eq!(Network::new(2, 0, 1, &[(0, 0)]).unwrap_err(), GraphError::SelfLoop(0));
        assert!(matches!(Network::new(2, 0, 1, &[(0, 5)]), Err(GraphError::UnknownNode { node: 5, .. })));
        assert_eq!(Network::new(2, 1, 1, &[]).unwrap_err(), GraphError::SameTerminals);
    }

    #[test]
    fn detects_dead_edges() {
        let net = Network::new(3, 0, 1, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(net.check_all_edges_live(), Err(GraphError::DeadEdge(1)));
        assert!(braess().check_all_edges_live().is_ok());
    }

    #[test]
    fn single_edge_has_one_path() {
        let net = Network::new(2, 0, 1, &[(0, 1)]).unwrap();
        assert_eq!(net.enumerate_st_paths(10).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn parallel_pair_has_two_paths() {
        let net = Network::new(2, 0, 1, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(net.enumerate_st_paths(10).unwrap(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn braess_paths_in_dfs_order() {
        let paths = braess().enumerate_st_paths(10).unwrap();
        assert_eq!(paths, vec![vec![0, 2, 4], vec![0, 3], vec![1, 4]]);
    }

    #[test]
    fn path_cap_is_enforced() {
        assert_eq!(braess().enumerate_st_paths(2), Err(GraphError::PathExplosion(2)));
        assert_eq!(braess().enumerate_st_paths(3).unwrap().len(), 3);
    }

    #[test]
    fn cycles_do_not_loop_forever() {
        // s -> a <-> b -> t
        let net = Network::new(4, 0, 3, &[(0, 1), (1, 2), (2, 1), (2, 3)]).unwrap();
        assert_eq!(net.enumerate_st_paths(10).unwrap(), vec![vec![0, 1, 3]]);
    }
}
