//! Linear latencies, exact equilibria and social optima on series-parallel
//! networks, and equilibrium/toll verification on arbitrary networks.

use crate::graph::{EdgeId, Network};
use crate::linstance::{LInstance, LInstanceError};
use crate::pwl::PiecewiseLinearFn;
use crate::rational::{int, Rational};
use crate::shortest::shortest_distances;
use crate::sp::{build_parse_tree, NodeKind, ParseTree, SpError};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlowError {
    #[error("infeasible flow: {0}")]
    InfeasibleFlow(String),
    #[error(transparent)]
    NotSeriesParallel(#[from] SpError),
    #[error(transparent)]
    LInstance(#[from] LInstanceError),
    #[error("expected {expected} per-edge values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// `x -> a x + b` with `a, b >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearLatency {
    pub a: Rational,
    pub b: Rational,
}

impl LinearLatency {
    pub fn new(a: Rational, b: Rational) -> Self {
        assert!(!a.is_negative() && !b.is_negative(), "latency coefficients must be nonnegative");
        LinearLatency { a, b }
    }

    pub fn constant(b: Rational) -> Self {
        Self::new(Rational::zero(), b)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &self.a * x + &self.b
    }

    /// `l(x) + x l'(x)`.
    pub fn marginal(&self) -> Self {
        LinearLatency { a: &self.a * int(2), b: self.b.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    edge_flows: Vec<Rational>,
    demand: Rational,
}

impl Flow {
    pub fn new(edge_flows: Vec<Rational>, demand: Rational) -> Self {
        Flow { edge_flows, demand }
    }

    pub fn zero(m: usize) -> Self {
        Flow { edge_flows: vec![Rational::zero(); m], demand: Rational::zero() }
    }

    pub fn edge_flows(&self) -> &[Rational] {
        &self.edge_flows
    }

    pub fn on(&self, e: EdgeId) -> &Rational {
        &self.edge_flows[e]
    }

    pub fn demand(&self) -> &Rational {
        &self.demand
    }

    pub fn set(&mut self, e: EdgeId, value: Rational) {
        self.edge_flows[e] = value;
    }

    /// Checks nonnegativity and conservation, with net outflow `demand` at
    /// the source.
    pub fn check_feasible(&self, net: &Network) -> Result<(), FlowError> {
        if self.edge_flows.len() != net.edge_count() {
            return Err(FlowError::LengthMismatch { expected: net.edge_count(), got: self.edge_flows.len() });
        }
        if self.demand.is_negative() {
            return Err(FlowError::InfeasibleFlow("negative demand".into()));
        }
        if let Some(e) = self.edge_flows.iter().position(|f| f.is_negative()) {
            return Err(FlowError::InfeasibleFlow(format!("negative flow on edge {e}")));
        }
        let mut excess = vec![Rational::zero(); net.node_count()];
        for edge in net.edges() {
            excess[edge.tail] -= &self.edge_flows[edge.id];
            excess[edge.head] += &self.edge_flows[edge.id];
        }
        for (v, ex) in excess.iter().enumerate() {
            let expected = if v == net.source() {
                -self.demand.clone()
            } else if v == net.sink() {
                self.demand.clone()
            } else {
                Rational::zero()
            };
            if *ex != expected {
                return Err(FlowError::InfeasibleFlow(format!(
                    "conservation violated at node {}",
                    net.node_name(v)
                )));
            }
        }
        Ok(())
    }
}

/// Nonnegative per-edge tolls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TollVector {
    tolls: Vec<Rational>,
}

impl TollVector {
    pub fn zeros(m: usize) -> Self {
        TollVector { tolls: vec![Rational::zero(); m] }
    }

    pub fn from_values(tolls: Vec<Rational>) -> Option<Self> {
        tolls.iter().all(|t| !t.is_negative()).then_some(TollVector { tolls })
    }

    pub fn set(&mut self, e: EdgeId, toll: Rational) {
        assert!(!toll.is_negative(), "tolls must be nonnegative");
        self.tolls[e] = toll;
    }

    pub fn get(&self, e: EdgeId) -> &Rational {
        &self.tolls[e]
    }

    pub fn values(&self) -> &[Rational] {
        &self.tolls
    }

    pub fn len(&self) -> usize {
        self.tolls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tolls.is_empty()
    }

    /// Edges with strictly positive toll, ascending.
    pub fn support(&self) -> Vec<EdgeId> {
        (0..self.tolls.len()).filter(|&e| self.tolls[e].is_positive()).collect()
    }

    pub fn support_size(&self) -> usize {
        self.tolls.iter().filter(|t| t.is_positive()).count()
    }
}

/// Total latency `sum_e f_e l_e(f_e)`.
pub fn social_cost(net: &Network, latencies: &[LinearLatency], flow: &Flow) -> Result<Rational, FlowError> {
    check_latencies(net, latencies)?;
    flow.check_feasible(net)?;
    Ok(flow.edge_flows.iter().zip(latencies).map(|(f, l)| f * l.eval(f)).sum())
}

fn check_latencies(net: &Network, latencies: &[LinearLatency]) -> Result<(), FlowError> {
    if latencies.len() != net.edge_count() {
        return Err(FlowError::LengthMismatch { expected: net.edge_count(), got: latencies.len() });
    }
    Ok(())
}

/// Effective latency of every parse-tree node, indexed like the tree.
pub fn node_latencies(tree: &ParseTree, latencies: &[LinearLatency]) -> Vec<PiecewiseLinearFn> {
    let mut out: Vec<PiecewiseLinearFn> = Vec::with_capacity(tree.len());
    for node in tree.nodes() {
        let f = match &node.kind {
            NodeKind::Leaf(bundle) => {
                let mut links = bundle.iter().map(|&e| PiecewiseLinearFn::affine(latencies[e].a.clone(), latencies[e].b.clone()));
                let first = links.next().unwrap();
                links.fold(first, |acc, link| acc.parallel(&link))
            }
            NodeKind::Series(a, b) => out[*a].add(&out[*b]),
            NodeKind::Parallel(a, b) => out[*a].parallel(&out[*b]),
        };
        out.push(f);
    }
    out
}

/// The common path latency of an equilibrium routing `x` units through the
/// whole network, as a function of `x`.
pub fn effective_latency(tree: &ParseTree, latencies: &[LinearLatency]) -> PiecewiseLinearFn {
    node_latencies(tree, latencies).pop().unwrap()
}

/// Exact Wardrop equilibrium of a series-parallel network.
pub fn compute_equilibrium(net: &Network, latencies: &[LinearLatency], demand: &Rational) -> Result<Flow, FlowError> {
    check_latencies(net, latencies)?;
    let tree = build_parse_tree(net)?;
    Ok(equilibrium_on_tree(net, &tree, latencies, demand))
}

/// Exact social optimum: the equilibrium under marginal latencies.
pub fn compute_social_optimum(net: &Network, latencies: &[LinearLatency], demand: &Rational) -> Result<Flow, FlowError> {
    let marginal: Vec<LinearLatency> = latencies.iter().map(LinearLatency::marginal).collect();
    compute_equilibrium(net, &marginal, demand)
}

/// Splits `demand` top-down through the tree. At a parallel node the children
/// take their smallest preimages of the common level first; any slack left by
/// flat stretches is shared evenly within each child's range.
pub fn equilibrium_on_tree(net: &Network, tree: &ParseTree, latencies: &[LinearLatency], demand: &Rational) -> Flow {
    assert!(!demand.is_negative(), "demand must be nonnegative");
    let curves = node_latencies(tree, latencies);
    let mut through: Vec<Rational> = vec![Rational::zero(); tree.len()];
    through[tree.root()] = demand.clone();
    let mut flow = Flow::zero(net.edge_count());
    flow.demand = demand.clone();

    for index in (0..tree.len()).rev() {
        let x = through[index].clone();
        match &tree.node(index).kind {
            NodeKind::Series(a, b) => {
                through[*a] = x.clone();
                through[*b] = x;
            }
            NodeKind::Parallel(a, b) => {
                let level = curves[index].eval(&x);
                let (xa, xb) = split_between(&curves[*a], &curves[*b], &level, &x);
                through[*a] = xa;
                through[*b] = xb;
            }
            NodeKind::Leaf(bundle) => {
                let level = curves[index].eval(&x);
                let mut rest = x;
                let mut flat = Vec::new();
                for &e in bundle {
                    let l = &latencies[e];
                    if l.a.is_zero() {
                        if l.b == level {
                            flat.push(e);
                        }
                    } else if l.b < level {
                        let f = (&level - &l.b) / &l.a;
                        rest -= &f;
                        flow.edge_flows[e] = f;
                    }
                }
                debug_assert!(!rest.is_negative());
                if !flat.is_empty() {
                    let share = rest / int(flat.len() as i64);
                    for e in flat {
                        flow.edge_flows[e] = share.clone();
                    }
                } else {
                    debug_assert!(rest.is_zero());
                }
            }
        }
    }
    flow
}

fn split_between(
    left: &PiecewiseLinearFn,
    right: &PiecewiseLinearFn,
    level: &Rational,
    total: &Rational,
) -> (Rational, Rational) {
    let (lo_a, lo_b) = (left.min_preimage(level).unwrap(), right.min_preimage(level).unwrap());
    let rest = total - &lo_a - &lo_b;
    if rest.is_zero() {
        return (lo_a, lo_b);
    }
    let slack_a = left.max_preimage(level).map(|hi| hi - &lo_a);
    let slack_b = right.max_preimage(level).map(|hi| hi - &lo_b);
    // extra for the left child must lie in [rest - slack_b, slack_a] within [0, rest]
    let mut lower = Rational::zero();
    if let Some(sb) = &slack_b {
        lower = lower.max(&rest - sb);
    }
    let mut upper = rest.clone();
    if let Some(sa) = &slack_a {
        upper = upper.min(sa.clone());
    }
    let half = &rest / int(2);
    let extra = half.max(lower).min(upper);
    let xa = lo_a + &extra;
    let xb = total - &xa;
    (xa, xb)
}

/// Whether every used edge is tight for exact shortest-path distances from
/// the source under `edge_costs`, i.e. every flow-carrying path is a cheapest
/// s-t path.
pub fn verify_wardrop(net: &Network, edge_costs: &[Rational], flow: &Flow) -> Result<bool, FlowError> {
    if edge_costs.len() != net.edge_count() {
        return Err(FlowError::LengthMismatch { expected: net.edge_count(), got: edge_costs.len() });
    }
    flow.check_feasible(net)?;
    let dist = shortest_distances(net, net.source(), edge_costs);
    for edge in net.edges() {
        if !flow.edge_flows[edge.id].is_positive() {
            continue;
        }
        match (&dist[edge.tail], &dist[edge.head]) {
            (Some(du), Some(dv)) if *dv == du + &edge_costs[edge.id] => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Whether `flow` is an equilibrium under marginal latencies `2 a x + b`,
/// which for convex costs is equivalent to social optimality.
pub fn verify_social_optimum(net: &Network, latencies: &[LinearLatency], flow: &Flow) -> bool {
    if latencies.len() != net.edge_count() {
        return false;
    }
    let costs: Vec<Rational> = latencies.iter().zip(&flow.edge_flows).map(|(l, f)| l.marginal().eval(f)).collect();
    verify_wardrop(net, &costs, flow).unwrap_or(false)
}

/// Whether `flow` is an equilibrium of the tolled instance `l_e + theta_e`.
pub fn verify_opt_inducing(
    net: &Network,
    latencies: &[LinearLatency],
    demand: &Rational,
    flow: &Flow,
    tolls: &TollVector,
) -> Result<bool, FlowError> {
    check_latencies(net, latencies)?;
    if tolls.len() != net.edge_count() {
        return Err(FlowError::LengthMismatch { expected: net.edge_count(), got: tolls.len() });
    }
    if flow.demand() != demand {
        return Err(FlowError::InfeasibleFlow("flow does not route the stated demand".into()));
    }
    let costs: Vec<Rational> = latencies
        .iter()
        .zip(&flow.edge_flows)
        .zip(tolls.values())
        .map(|((l, f), t)| l.eval(f) + t)
        .collect();
    verify_wardrop(net, &costs, flow)
}

/// Freezes lengths `l_e(f_e)` and the used set `{e : f_e > 0}`.
pub fn build_l_instance(net: &Network, latencies: &[LinearLatency], flow: &Flow) -> Result<LInstance, FlowError> {
    check_latencies(net, latencies)?;
    flow.check_feasible(net)?;
    if !flow.demand.is_positive() {
        return Err(FlowError::InfeasibleFlow("an l-instance needs positive demand".into()));
    }
    let lengths = latencies.iter().zip(&flow.edge_flows).map(|(l, f)| l.eval(f)).collect();
    let used = flow.edge_flows.iter().map(|f| f.is_positive()).collect();
    Ok(LInstance::new(net.clone(), lengths, used)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn lat(a: i64, b: i64) -> LinearLatency {
        LinearLatency::new(int(a), int(b))
    }

    fn two_links() -> Network {
        Network::new(2, 0, 1, &[(0, 1), (0, 1)]).unwrap()
    }

    fn flows(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(p, q)| ratio(p, q)).collect()
    }

    #[test]
    fn social_cost_examples() {
        let net = Network::new(2, 0, 1, &[(0, 1)]).unwrap();
        let one = Flow::new(vec![int(1)], int(1));
        assert_eq!(social_cost(&net, &[lat(1, 0)], &one).unwrap(), int(1));
        assert_eq!(social_cost(&net, &[lat(1, 0)], &Flow::zero(1)).unwrap(), int(0));
        let bad = Flow::new(vec![int(2)], int(1));
        assert!(matches!(social_cost(&net, &[lat(1, 0)], &bad), Err(FlowError::InfeasibleFlow(_))));
    }

    #[test]
    fn offset_links_equilibrium() {
        let net = two_links();
        let lats = [lat(1, 0), lat(1, 1)];
        let f = compute_equilibrium(&net, &lats, &int(1)).unwrap();
        assert_eq!(f.edge_flows(), flows(&[(1, 1), (0, 1)]).as_slice());
        let f = compute_equilibrium(&net, &lats, &int(3)).unwrap();
        assert_eq!(f.edge_flows(), flows(&[(2, 1), (1, 1)]).as_slice());
        let f = compute_equilibrium(&net, &lats, &int(0)).unwrap();
        assert_eq!(f.edge_flows(), flows(&[(0, 1), (0, 1)]).as_slice());
    }

    #[test]
    fn pigou_optimum_splits_evenly() {
        let net = two_links();
        let lats = [lat(1, 0), lat(0, 1)];
        let opt = compute_social_optimum(&net, &lats, &int(1)).unwrap();
        assert_eq!(opt.edge_flows(), flows(&[(1, 2), (1, 2)]).as_slice());
        assert_eq!(social_cost(&net, &lats, &opt).unwrap(), ratio(3, 4));
        assert!(verify_social_optimum(&net, &lats, &opt));
        assert!(!verify_social_optimum(&net, &lats, &Flow::new(vec![int(1), int(0)], int(1))));
    }

    #[test]
    fn identical_links_split_evenly() {
        let net = Network::new(2, 0, 1, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let lats = [lat(2, 1), lat(2, 1), lat(2, 1)];
        let opt = compute_social_optimum(&net, &lats, &int(3)).unwrap();
        assert_eq!(opt.edge_flows(), &[int(1), int(1), int(1)]);
        let tied = [lat(0, 2), lat(0, 2), lat(0, 5)];
        let eq = compute_equilibrium(&net, &tied, &int(3)).unwrap();
        assert_eq!(eq.edge_flows(), flows(&[(3, 2), (3, 2), (0, 1)]).as_slice());
    }

    #[test]
    fn tied_constant_branches_share_demand() {
        // two parallel 2-edge paths with constant latencies
        let net = Network::new(4, 0, 3, &[(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        let lats = [lat(0, 1), lat(0, 1), lat(0, 2), lat(0, 0)];
        let eq = compute_equilibrium(&net, &lats, &int(4)).unwrap();
        assert_eq!(eq.edge_flows(), &[int(2), int(2), int(2), int(2)]);
        assert!(verify_wardrop(&net, &[int(1), int(1), int(2), int(0)], &eq).unwrap());
    }

    #[test]
    fn single_edge_takes_everything() {
        let net = Network::new(2, 0, 1, &[(0, 1)]).unwrap();
        let opt = compute_social_optimum(&net, &[lat(3, 1)], &ratio(5, 2)).unwrap();
        assert_eq!(opt.edge_flows(), &[ratio(5, 2)]);
    }

    #[test]
    fn wardrop_rejects_flow_on_a_longer_path() {
        let net = two_links();
        let costs = [int(1), int(2)];
        assert!(verify_wardrop(&net, &costs, &Flow::new(vec![int(1), int(0)], int(1))).unwrap());
        assert!(!verify_wardrop(&net, &costs, &Flow::new(vec![ratio(3, 4), ratio(1, 4)], int(1))).unwrap());
        assert!(verify_wardrop(&net, &costs, &Flow::zero(2)).unwrap());
        assert!(verify_wardrop(&net, &costs, &Flow::new(vec![int(1), int(0)], int(2))).is_err());
    }

    #[test]
    fn pigou_needs_a_toll() {
        let net = two_links();
        let lats = [lat(1, 0), lat(0, 1)];
        let opt = Flow::new(flows(&[(1, 2), (1, 2)]), int(1));
        let zero = TollVector::zeros(2);
        assert!(!verify_opt_inducing(&net, &lats, &int(1), &opt, &zero).unwrap());
        let mut marginal = TollVector::zeros(2);
        marginal.set(0, ratio(1, 2));
        assert!(verify_opt_inducing(&net, &lats, &int(1), &opt, &marginal).unwrap());
    }

    #[test]
    fn l_instance_examples() {
        let net = two_links();
        let lats = [lat(1, 0), lat(0, 1)];
        let opt = Flow::new(flows(&[(1, 2), (1, 2)]), int(1));
        let inst = build_l_instance(&net, &lats, &opt).unwrap();
        assert_eq!(inst.lengths(), &[ratio(1, 2), int(1)]);
        assert_eq!(inst.used(), &[true, true]);

        let single = Network::new(2, 0, 1, &[(0, 1)]).unwrap();
        let inst = build_l_instance(&single, &[lat(2, 3)], &Flow::new(vec![int(2)], int(2))).unwrap();
        assert_eq!(inst.lengths(), &[int(7)]);

        let inst = build_l_instance(&net, &[lat(1, 0), lat(1, 4)], &Flow::new(vec![int(1), int(0)], int(1))).unwrap();
        assert_eq!(inst.lengths(), &[int(1), int(4)]);
        assert_eq!(inst.used(), &[true, false]);
    }
}
