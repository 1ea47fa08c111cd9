//! Hardness-reduction instances (vertex cover and partition) with their
//! optimal flows and known toll vectors, plus seeded random
//! series-parallel instances.

use crate::flows::{Flow, LinearLatency, TollVector};
use crate::graph::{EdgeId, Network};
use crate::linstance::LInstance;
use crate::rational::{int, ratio, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GadgetError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid set: {0}")]
    InvalidSet(String),
    #[error("vertex set is not a cover: edge {{{0}, {1}}} is uncovered")]
    NotACover(usize, usize),
    #[error("not a partition: {0}")]
    NotAPartition(String),
}

/// A network with linear latencies, a demand and a flow, plus a name for
/// every edge.
#[derive(Debug, Clone)]
pub struct Instance {
    pub network: Network,
    pub latencies: Vec<LinearLatency>,
    pub demand: Rational,
    pub flow: Option<Flow>,
    pub edge_labels: Vec<String>,
}

impl Instance {
    pub fn edge_named(&self, label: &str) -> Option<EdgeId> {
        self.edge_labels.iter().position(|l| l == label)
    }
}

/// Simple undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcInput {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl VcInput {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GadgetError> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u == v {
                return Err(GadgetError::InvalidGraph(format!("self-loop at {u}")));
            }
            if !(1..=n).contains(&u) || !(1..=n).contains(&v) {
                return Err(GadgetError::InvalidGraph(format!("edge {{{u}, {v}}} leaves 1..={n}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GadgetError::InvalidGraph(format!("duplicate edge {{{u}, {v}}}")));
            }
        }
        Ok(VcInput { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

struct Builder {
    names: Vec<String>,
    arcs: Vec<(usize, usize)>,
    latencies: Vec<LinearLatency>,
    flows: Vec<Rational>,
    labels: Vec<String>,
}

impl Builder {
    fn new() -> Self {
        Builder { names: Vec::new(), arcs: Vec::new(), latencies: Vec::new(), flows: Vec::new(), labels: Vec::new() }
    }

    fn node(&mut self, name: String) -> usize {
        self.names.push(name);
        self.names.len() - 1
    }

    fn edge(&mut self, label: String, u: usize, v: usize, latency: LinearLatency, flow: Rational) {
        self.arcs.push((u, v));
        self.latencies.push(latency);
        self.flows.push(flow);
        self.labels.push(label);
    }

    fn finish(self, s: usize, t: usize, demand: Rational) -> Instance {
        let network = Network::with_names(self.names, s, t, &self.arcs).expect("gadget network is well formed");
        Instance {
            network,
            latencies: self.latencies,
            flow: Some(Flow::new(self.flows, demand.clone())),
            demand,
            edge_labels: self.labels,
        }
    }
}

fn lat(a: Rational, b: Rational) -> LinearLatency {
    LinearLatency::new(a, b)
}

/// Vertex-cover reduction: one four-node gadget per vertex, two cross edges
/// per graph edge, demand `2n`.
pub fn gen_vc_gadget(vc: &VcInput) -> Instance {
    let mut g = Builder::new();
    let s = g.node("s".into());
    let t = g.node("t".into());
    let mut abcd = Vec::with_capacity(vc.n);
    for i in 1..=vc.n {
        let ids = [
            g.node(format!("a{i}")),
            g.node(format!("b{i}")),
            g.node(format!("c{i}")),
            g.node(format!("d{i}")),
        ];
        abcd.push(ids);
    }
    let zero = || lat(int(0), int(0));
    let half_x = || lat(ratio(1, 2), ratio(1, 2));
    for i in 1..=vc.n {
        let [a, b, c, d] = abcd[i - 1];
        g.edge(format!("s1_{i}"), s, a, zero(), int(2));
        g.edge(format!("e1_{i}"), a, b, half_x(), int(1));
        g.edge(format!("e2_{i}"), b, c, zero(), int(1));
        g.edge(format!("e3_{i}"), c, d, half_x(), int(1));
        g.edge(format!("e4_{i}"), a, d, lat(int(0), int(3)), int(1));
        g.edge(format!("t1_{i}"), d, t, zero(), int(2));
        g.edge(format!("s2_{i}"), s, b, lat(int(0), ratio(3, 2)), int(0));
        g.edge(format!("t2_{i}"), c, t, lat(int(0), ratio(3, 2)), int(0));
    }
    for (k, &(vi, vj)) in vc.edges.iter().enumerate() {
        let k = k + 1;
        let (bi, ci) = (abcd[vi - 1][1], abcd[vi - 1][2]);
        let (bj, cj) = (abcd[vj - 1][1], abcd[vj - 1][2]);
        g.edge(format!("g1_{k}"), bi, cj, lat(int(0), ratio(1, 2)), int(0));
        g.edge(format!("g2_{k}"), bj, ci, lat(int(0), ratio(1, 2)), int(0));
    }
    g.finish(s, t, int(2 * vc.n as i64))
}

/// Tolls `1/2` on both outer gadget edges of covered vertices and `1` on the
/// middle edge of the others.
pub fn known_vc_tolls(vc: &VcInput, gadget: &Instance, cover: &[usize]) -> Result<TollVector, GadgetError> {
    let cover: BTreeSet<usize> = cover.iter().copied().collect();
    if let Some(&v) = cover.iter().find(|&&v| !(1..=vc.n).contains(&v)) {
        return Err(GadgetError::InvalidSet(format!("vertex {v} out of range")));
    }
    if let Some(&(u, v)) = vc.edges.iter().find(|(u, v)| !cover.contains(u) && !cover.contains(v)) {
        return Err(GadgetError::NotACover(u, v));
    }
    let mut tolls = TollVector::zeros(gadget.network.edge_count());
    let id = |label: String| gadget.edge_named(&label).expect("gadget edge label");
    for i in 1..=vc.n {
        if cover.contains(&i) {
            tolls.set(id(format!("e1_{i}")), ratio(1, 2));
            tolls.set(id(format!("e3_{i}")), ratio(1, 2));
        } else {
            tolls.set(id(format!("e2_{i}")), int(1));
        }
    }
    Ok(tolls)
}

/// Multiset of positive rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInput {
    alphas: Vec<Rational>,
}

impl PartitionInput {
    pub fn new(alphas: Vec<Rational>) -> Result<Self, GadgetError> {
        if alphas.is_empty() {
            return Err(GadgetError::InvalidSet("empty multiset".into()));
        }
        if let Some(a) = alphas.iter().find(|a| !a.is_positive()) {
            return Err(GadgetError::InvalidSet(format!("element {a} is not positive")));
        }
        Ok(PartitionInput { alphas })
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    /// Half the total.
    pub fn half(&self) -> Rational {
        self.alphas.iter().sum::<Rational>() / int(2)
    }
}

/// Partition reduction: a chain of six-edge gadgets from `s` to `t` plus a
/// direct `s-t` edge of constant latency `11B`, demand 4.
pub fn gen_partition_gadget(p: &PartitionInput) -> Instance {
    let n = p.alphas.len();
    let mut g = Builder::new();
    let s = g.node("s".into());
    let mut u = s;
    for (i, alpha) in p.alphas.iter().enumerate() {
        let i = i + 1;
        let w = g.node(format!("w{i}"));
        let x = g.node(format!("x{i}"));
        let v = g.node(if i == n { "t".into() } else { format!("v{i}") });
        let outer = || lat(alpha / int(4), alpha / int(2));
        let cross = || lat(alpha.clone(), alpha * ratio(3, 2));
        let side = || lat(int(0), alpha * int(4));
        g.edge(format!("a_{i}"), u, w, outer(), int(2));
        g.edge(format!("c1_{i}"), w, x, cross(), ratio(1, 2));
        g.edge(format!("c2_{i}"), w, x, cross(), ratio(1, 2));
        g.edge(format!("b_{i}"), x, v, outer(), int(2));
        g.edge(format!("q_{i}"), w, v, side(), int(1));
        g.edge(format!("g_{i}"), u, x, side(), int(1));
        u = v;
    }
    let t = u;
    g.edge("h".into(), s, t, lat(int(0), p.half() * int(11)), int(1));
    g.finish(s, t, int(4))
}

/// Tolls `alpha_i` on both outer edges for `i` in the first part and on both
/// cross edges for `i` in the second. Indices are 1-based.
pub fn known_partition_tolls(
    p: &PartitionInput,
    gadget: &Instance,
    first: &[usize],
    second: &[usize],
) -> Result<TollVector, GadgetError> {
    let n = p.alphas.len();
    let mut seen = vec![false; n + 1];
    for &i in first.iter().chain(second) {
        if !(1..=n).contains(&i) {
            return Err(GadgetError::NotAPartition(format!("index {i} out of range")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(GadgetError::NotAPartition(format!("index {i} appears twice")));
        }
    }
    if seen[1..].iter().any(|s| !s) {
        return Err(GadgetError::NotAPartition("some index is missing".into()));
    }
    let sum = |part: &[usize]| part.iter().map(|&i| &p.alphas[i - 1]).sum::<Rational>();
    let (s1, s2) = (sum(first), sum(second));
    if s1 != s2 {
        return Err(GadgetError::NotAPartition(format!("part sums differ: {s1} vs {s2}")));
    }
    let mut tolls = TollVector::zeros(gadget.network.edge_count());
    let id = |label: String| gadget.edge_named(&label).expect("gadget edge label");
    for &i in first {
        tolls.set(id(format!("a_{i}")), p.alphas[i - 1].clone());
        tolls.set(id(format!("b_{i}")), p.alphas[i - 1].clone());
    }
    for &i in second {
        tolls.set(id(format!("c1_{i}")), p.alphas[i - 1].clone());
        tolls.set(id(format!("c2_{i}")), p.alphas[i - 1].clone());
    }
    Ok(tolls)
}

/// Random two-terminal series-parallel network with exactly `target_m`
/// edges, grown from a single edge by subdividing edges, doubling edges and
/// adding parallel two-edge detours.
pub fn random_sp_network(rng: &mut impl Rng, target_m: usize) -> Network {
    assert!(target_m >= 1, "need at least one edge");
    let mut nodes = 2usize;
    let mut arcs: Vec<(usize, usize)> = vec![(0, 1)];
    while arcs.len() < target_m {
        let e = rng.gen_range(0..arcs.len());
        let (u, v) = arcs[e];
        let room = target_m - arcs.len();
        match rng.gen_range(0..if room >= 2 { 3 } else { 2 }) {
            0 => {
                let w = nodes;
                nodes += 1;
                arcs[e] = (u, w);
                arcs.push((w, v));
            }
            1 => arcs.push((u, v)),
            _ => {
                let w = nodes;
                nodes += 1;
                arcs.push((u, w));
                arcs.push((w, v));
            }
        }
    }
    Network::new(nodes, 0, 1, &arcs).expect("grown network is well formed")
}

/// Seeded random series-parallel instance with integer latency coefficients
/// in `0..=coeff_bound` and a positive rational demand.
pub fn gen_random_sp(seed: u64, target_m: usize, coeff_bound: u32) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let network = random_sp_network(&mut rng, target_m);
    let bound = coeff_bound as i64;
    let mut latencies: Vec<LinearLatency> = (0..network.edge_count())
        .map(|_| lat(int(rng.gen_range(0..=bound)), int(rng.gen_range(0..=bound))))
        .collect();
    // a network of constant latencies has no unique optimum to speak of;
    // keep at least one edge load dependent when the bound allows
    if bound > 0 && latencies.iter().all(|l| l.a.is_zero()) {
        let e = rng.gen_range(0..latencies.len());
        latencies[e].a = int(rng.gen_range(1..=bound));
    }
    let demand = ratio(rng.gen_range(1..=12), rng.gen_range(1..=4));
    let edge_labels = (0..network.edge_count()).map(|e| format!("e{e}")).collect();
    Instance { network, latencies, demand, flow: None, edge_labels }
}

/// Seeded random series-parallel l-instance: integer lengths in
/// `0..=max_len` and the union of a few random source-sink paths as the
/// used set.
pub fn gen_random_sp_l_instance(seed: u64, target_m: usize, max_len: i64) -> LInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let network = random_sp_network(&mut rng, target_m);
    let lengths = (0..network.edge_count()).map(|_| int(rng.gen_range(0..=max_len))).collect();
    let mut used = vec![false; network.edge_count()];
    for _ in 0..rng.gen_range(1..=3) {
        let mut node = network.source();
        while node != network.sink() {
            let out = network.out_edges(node);
            let e = out[rng.gen_range(0..out.len())];
            used[e] = true;
            node = network.edge(e).head;
        }
    }
    LInstance::new(network, lengths, used).expect("used set is a union of source-sink paths")
}

/// Every used set a flow can produce on one seeded random series-parallel
/// network with integer lengths in `0..=max_len`, as l-instances.
pub fn gen_sp_l_corpus(seed: u64, target_m: usize, max_len: i64) -> Vec<LInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let network = random_sp_network(&mut rng, target_m);
    let m = network.edge_count();
    let lengths: Vec<Rational> = (0..m).map(|_| int(rng.gen_range(0..=max_len))).collect();
    (1u64..1 << m)
        .filter_map(|mask| {
            let used = (0..m).map(|e| mask >> e & 1 == 1).collect();
            LInstance::new(network.clone(), lengths.clone(), used).ok()
        })
        .collect()
}
