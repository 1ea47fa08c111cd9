//! Exact single-source shortest paths with nonnegative rational weights.

use crate::graph::{NodeId, Network};
use crate::rational::Rational;
use num_traits::Zero;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Dijkstra from `from`; `None` marks unreachable nodes. Weights must be
/// nonnegative.
pub fn shortest_distances(net: &Network, from: NodeId, costs: &[Rational]) -> Vec<Option<Rational>> {
    let mut dist: Vec<Option<Rational>> = vec![None; net.node_count()];
    let mut done = vec![false; net.node_count()];
    let mut heap = BinaryHeap::new();
    dist[from] = Some(Rational::zero());
    heap.push(Reverse((Rational::zero(), from)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if std::mem::replace(&mut done[u], true) {
            continue;
        }
        for &e in net.out_edges(u) {
            let v = net.edge(e).head;
            let candidate = &d + &costs[e];
            if dist[v].as_ref().is_none_or(|cur| candidate < *cur) {
                dist[v] = Some(candidate.clone());
                heap.push(Reverse((candidate, v)));
            }
        }
    }
    dist
}
