//! Series-parallel recognition by exhaustive series/parallel reduction, and
//! the resulting parse tree.
//!
//! Tree nodes live in an arena in creation order, so every child index is
//! smaller than its parent's and the root is the last node. Bottom-up passes
//! walk the arena forward; top-down passes walk it backward.

use crate::graph::{EdgeId, GraphError, Network, NodeId};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpError {
    #[error("network is not two-terminal series-parallel: {0}")]
    NotSeriesParallel(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type TreeIndex = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    /// A bundle of parallel edges between the node's two terminals.
    Leaf(Vec<EdgeId>),
    Series(TreeIndex, TreeIndex),
    Parallel(TreeIndex, TreeIndex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub kind: NodeKind,
    pub source: NodeId,
    pub sink: NodeId,
    /// Number of network edges below this node.
    pub edge_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseTree {
    nodes: Vec<TreeNode>,
}

impl ParseTree {
    pub fn root(&self) -> TreeIndex {
        self.nodes.len() - 1
    }

    pub fn node(&self, index: TreeIndex) -> &TreeNode {
        &self.nodes[index]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Network edges below `index`, in ascending id order.
    pub fn edges_under(&self, index: TreeIndex) -> Vec<EdgeId> {
        let mut out = Vec::new();
        let mut stack = vec![index];
        while let Some(i) = stack.pop() {
            match &self.nodes[i].kind {
                NodeKind::Leaf(bundle) => out.extend_from_slice(bundle),
                NodeKind::Series(a, b) | NodeKind::Parallel(a, b) => {
                    stack.push(*a);
                    stack.push(*b);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Checks that composing the tree reproduces `net`: terminals chain
    /// correctly, leaves carry edges between their terminals, and every edge
    /// appears in exactly one leaf.
    pub fn check_against(&self, net: &Network) -> Result<(), String> {
        let mut seen = vec![false; net.edge_count()];
        for (i, node) in self.nodes.iter().enumerate() {
            let mut count = 0;
            match &node.kind {
                NodeKind::Leaf(bundle) => {
                    if bundle.is_empty() {
                        return Err(format!("leaf {i} is empty"));
                    }
                    for &e in bundle {
                        let edge = net.edge(e);
                        if (edge.tail, edge.head) != (node.source, node.sink) {
                            return Err(format!("edge {e} does not join the terminals of leaf {i}"));
                        }
                        if std::mem::replace(&mut seen[e], true) {
                            return Err(format!("edge {e} appears twice"));
                        }
                    }
                    count = bundle.len();
                }
                NodeKind::Series(a, b) => {
                    let (l, r) = (&self.nodes[*a], &self.nodes[*b]);
                    if *a >= i || *b >= i || l.source != node.source || l.sink != r.source || r.sink != node.sink {
                        return Err(format!("series node {i} has inconsistent terminals"));
                    }
                    count += l.edge_count + r.edge_count;
                }
                NodeKind::Parallel(a, b) => {
                    let (l, r) = (&self.nodes[*a], &self.nodes[*b]);
                    let ends = (node.source, node.sink);
                    if *a >= i || *b >= i || (l.source, l.sink) != ends || (r.source, r.sink) != ends {
                        return Err(format!("parallel node {i} has inconsistent terminals"));
                    }
                    count += l.edge_count + r.edge_count;
                }
            }
            if count != node.edge_count {
                return Err(format!("node {i} miscounts its edges"));
            }
        }
        let root = &self.nodes[self.root()];
        if (root.source, root.sink) != (net.source(), net.sink()) {
            return Err("root terminals differ from the network's".into());
        }
        if let Some(e) = seen.iter().position(|s| !s) {
            return Err(format!("edge {e} is missing from the tree"));
        }
        Ok(())
    }
}

struct VirtualEdge {
    tail: NodeId,
    head: NodeId,
    tree: TreeIndex,
}

/// Builds a parse tree, or reports the irreducible remainder when `net` is
/// not two-terminal series-parallel.
pub fn build_parse_tree(net: &Network) -> Result<ParseTree, SpError> {
    net.check_all_edges_live()?;
    if net.edge_count() == 0 {
        return Err(SpError::NotSeriesParallel("network has no edges".into()));
    }

    let n = net.node_count();
    let mut nodes: Vec<TreeNode> = Vec::new();
    let mut vedges: Vec<Option<VirtualEdge>> = Vec::new();
    let mut outs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut ins: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];

    // Maximal parallel bundles become leaves.
    let mut bundles: BTreeMap<(NodeId, NodeId), Vec<EdgeId>> = BTreeMap::new();
    for edge in net.edges() {
        bundles.entry((edge.tail, edge.head)).or_default().push(edge.id);
    }
    for ((tail, head), bundle) in bundles {
        nodes.push(TreeNode { edge_count: bundle.len(), kind: NodeKind::Leaf(bundle), source: tail, sink: head });
        let id = vedges.len();
        vedges.push(Some(VirtualEdge { tail, head, tree: nodes.len() - 1 }));
        outs[tail].insert(id);
        ins[head].insert(id);
    }

    let (s, t) = (net.source(), net.sink());
    let mut queue: Vec<NodeId> = (0..n).rev().filter(|&v| v != s && v != t).collect();
    while let Some(v) = queue.pop() {
        if ins[v].len() != 1 || outs[v].len() != 1 {
            continue;
        }
        let first = *ins[v].iter().next().unwrap();
        let second = *outs[v].iter().next().unwrap();
        let (u, w) = (vedges[first].as_ref().unwrap().tail, vedges[second].as_ref().unwrap().head);
        if u == w {
            continue;
        }
        let (a, b) = (vedges[first].take().unwrap(), vedges[second].take().unwrap());
        outs[u].remove(&first);
        ins[v].remove(&first);
        outs[v].remove(&second);
        ins[w].remove(&second);

        let count = nodes[a.tree].edge_count + nodes[b.tree].edge_count;
        nodes.push(TreeNode { kind: NodeKind::Series(a.tree, b.tree), source: u, sink: w, edge_count: count });
        let mut merged = nodes.len() - 1;

        let twin = outs[u].iter().copied().find(|&id| vedges[id].as_ref().unwrap().head == w);
        if let Some(twin) = twin {
            let other = vedges[twin].take().unwrap();
            outs[u].remove(&twin);
            ins[w].remove(&twin);
            let count = nodes[other.tree].edge_count + nodes[merged].edge_count;
            nodes.push(TreeNode { kind: NodeKind::Parallel(other.tree, merged), source: u, sink: w, edge_count: count });
            merged = nodes.len() - 1;
        }
        let id = vedges.len();
        vedges.push(Some(VirtualEdge { tail: u, head: w, tree: merged }));
        outs[u].insert(id);
        ins[w].insert(id);
        for x in [u, w] {
            if x != s && x != t {
                queue.push(x);
            }
        }
    }

    let remaining: Vec<&VirtualEdge> = vedges.iter().flatten().collect();
    match remaining.as_slice() {
        [only] if only.tail == s && only.head == t => {
            debug_assert_eq!(only.tree, nodes.len() - 1);
            Ok(ParseTree { nodes })
        }
        rest => {
            let mut touched: Vec<NodeId> = rest.iter().flat_map(|e| [e.tail, e.head]).collect();
            touched.sort_unstable();
            touched.dedup();
            let arcs: Vec<String> = rest
                .iter()
                .take(12)
                .map(|e| format!("{}->{}", net.node_name(e.tail), net.node_name(e.head)))
                .collect();
            Err(SpError::NotSeriesParallel(format!(
                "irreducible remainder of {} edges on {} nodes [{}{}]",
                rest.len(),
                touched.len(),
                arcs.join(", "),
                if rest.len() > 12 { ", ..." } else { "" }
            )))
        }
    }
}
