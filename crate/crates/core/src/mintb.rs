//! Minimum-support opt-inducing tolls on series-parallel networks.
//!
//! Every parse-tree node gets an edge-length list: entry `(eta, len)` says
//! that `len` is the largest length inducible in the node's subnetwork while
//! tolling at most `eta` of its edges. Inducing a length `L` means raising
//! edge lengths so that every used terminal-to-terminal path has length
//! exactly `L` and every unused one has length at least `L`. Lists are built
//! bottom-up by merging the children's lists, then a top-down pass splits
//! the target length among children and tolls leaf edges.
//!
//! Subtrees without a used path only need all their paths to reach at least
//! the target. Their lists start at `(0, shortest path length)` and are
//! merged with the same rules; they never contribute to the lower bound of a
//! parallel parent.

use crate::flows::{build_l_instance, verify_social_optimum, Flow, FlowError, LinearLatency, TollVector};
use crate::graph::{EdgeId, Network};
use crate::linstance::LInstance;
use crate::rational::{Exact, Rational};
use crate::sp::{build_parse_tree, NodeKind, ParseTree, SpError, TreeIndex};
use std::fmt;
use std::ops::Add;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MintbError {
    #[error("bundle has no used edge")]
    NoUsedEdge,
    #[error("no used source-sink path")]
    NoUsedPath,
    #[error("length {requested} is below the smallest inducible length {minimum}")]
    LengthTooSmall { requested: Box<LengthValue>, minimum: Box<LengthValue> },
    #[error("target length must be finite")]
    InfiniteTarget,
    #[error("flow is not a social optimum")]
    NotOptimalFlow,
    #[error("parse tree and instance disagree: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    NotSeriesParallel(#[from] SpError),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

/// A rational length or `+inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LengthValue {
    Finite(Rational),
    Infinite,
}

impl LengthValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            LengthValue::Finite(v) => Some(v),
            LengthValue::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, LengthValue::Infinite)
    }
}

impl From<Rational> for LengthValue {
    fn from(v: Rational) -> Self {
        LengthValue::Finite(v)
    }
}

impl Add for &LengthValue {
    type Output = LengthValue;

    fn add(self, rhs: &LengthValue) -> LengthValue {
        match (self, rhs) {
            (LengthValue::Finite(a), LengthValue::Finite(b)) => LengthValue::Finite(a + b),
            _ => LengthValue::Infinite,
        }
    }
}

impl fmt::Display for LengthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthValue::Finite(v) => write!(f, "{}", Exact(v)),
            LengthValue::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListEntry {
    pub eta: usize,
    pub length: LengthValue,
    /// Index into the first child's list.
    pub left: Option<usize>,
    /// Index into the second child's list.
    pub right: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLengthList {
    entries: Vec<ListEntry>,
    used: bool,
}

impl EdgeLengthList {
    pub fn entries(&self) -> &[ListEntry] {
        &self.entries
    }

    /// Whether the subnetwork contains a used terminal-to-terminal path.
    pub fn is_used(&self) -> bool {
        self.used
    }

    pub fn first(&self) -> &ListEntry {
        &self.entries[0]
    }

    pub fn last(&self) -> &ListEntry {
        self.entries.last().unwrap()
    }

    /// Consecutive `eta`, nondecreasing lengths, a finite head and an
    /// infinite tail.
    pub fn check_order(&self) -> Result<(), String> {
        if self.entries.is_empty() {
            return Err("empty list".into());
        }
        if self.first().length.is_infinite() {
            return Err("first length is infinite".into());
        }
        if !self.last().length.is_infinite() {
            return Err("last length is finite".into());
        }
        for w in self.entries.windows(2) {
            if w[1].eta != w[0].eta + 1 {
                return Err(format!("eta jumps from {} to {}", w[0].eta, w[1].eta));
            }
            if w[1].length < w[0].length {
                return Err(format!("length drops at eta {}", w[1].eta));
            }
        }
        Ok(())
    }

    /// Human-readable dump, `(eta:len)*`.
    pub fn render(&self) -> String {
        self.entries.iter().map(|e| format!("{}:{}", e.eta, e.length)).collect::<Vec<_>>().join(" ")
    }
}

/// List of a parallel-link bundle given each edge's `(length, used)`.
pub fn make_list_pl(bundle: &[(Rational, bool)]) -> Result<EdgeLengthList, MintbError> {
    let max_used = bundle.iter().filter(|(_, used)| *used).map(|(l, _)| l).max().ok_or(MintbError::NoUsedEdge)?;
    Ok(bundle_list(bundle, Some(max_used)))
}

/// List of a bundle none of whose edges is used: with `i` tolls the shortest
/// edge can be pushed up to the `(i+1)`-th smallest length.
pub fn make_list_pl_unused(bundle: &[Rational]) -> EdgeLengthList {
    let pairs: Vec<(Rational, bool)> = bundle.iter().map(|l| (l.clone(), false)).collect();
    bundle_list(&pairs, None)
}

fn bundle_list(bundle: &[(Rational, bool)], max_used: Option<&Rational>) -> EdgeLengthList {
    let mut sorted: Vec<LengthValue> = bundle.iter().map(|(l, _)| LengthValue::Finite(l.clone())).collect();
    sorted.sort();
    sorted.push(LengthValue::Infinite);
    let m = bundle.len();
    // every edge strictly shorter than the longest used edge must be tolled
    let first = match max_used {
        Some(lmax) => {
            let lmax = LengthValue::Finite(lmax.clone());
            (0..=m).find(|&i| sorted[i] >= lmax).unwrap()
        }
        None => 0,
    };
    let entries = (first..=m)
        .map(|i| ListEntry { eta: i, length: sorted[i].clone(), left: None, right: None })
        .collect();
    EdgeLengthList { entries, used: max_used.is_some() }
}

/// Best division of `eta` tolls for every count in range, where `merge`
/// combines the two children's lengths. Ties keep the smallest left index.
fn combine_with(
    first: &EdgeLengthList,
    second: &EdgeLengthList,
    start: usize,
    end: usize,
    used: bool,
    merge: impl Fn(&LengthValue, &LengthValue) -> LengthValue,
) -> EdgeLengthList {
    let (a, b) = (&first.entries, &second.entries);
    let base = a[0].eta + b[0].eta;
    let mut entries = Vec::with_capacity(end + 1 - start);
    for eta in start..=end {
        let offset = eta - base;
        // j1 + j2 = offset, 0 <= j1 < |a|, 0 <= j2 < |b|
        let lo = offset.saturating_sub(b.len() - 1);
        let hi = offset.min(a.len() - 1);
        let mut best: Option<(LengthValue, usize)> = None;
        for j1 in lo..=hi {
            let candidate = merge(&a[j1].length, &b[offset - j1].length);
            if best.as_ref().is_none_or(|(len, _)| candidate > *len) {
                best = Some((candidate, j1));
            }
        }
        let (length, j1) = best.expect("every count in range has a division");
        entries.push(ListEntry { eta, length, left: Some(j1), right: Some(offset - j1) });
    }
    EdgeLengthList { entries, used }
}

/// Lists of two subnetworks joined in series: lengths add.
pub fn combine_series(first: &EdgeLengthList, second: &EdgeLengthList) -> EdgeLengthList {
    let start = first.first().eta + second.first().eta;
    let end = (first.last().eta + second.first().eta).min(first.first().eta + second.last().eta);
    combine_with(first, second, start, end, first.used && second.used, |x, y| x + y)
}

/// Lists of two subnetworks joined in parallel: both must reach the length,
/// so the shorter one binds. Counts start where each side can reach the
/// larger of the used sides' minimum lengths.
pub fn combine_parallel(first: &EdgeLengthList, second: &EdgeLengthList) -> EdgeLengthList {
    let floor = [first, second].into_iter().filter(|l| l.used).map(|l| &l.first().length).max();
    let needed = |list: &EdgeLengthList| match floor {
        Some(floor) => list.entries.iter().find(|e| e.length >= *floor).unwrap().eta,
        None => list.first().eta,
    };
    let start = needed(first) + needed(second);
    let end = first.last().eta + second.last().eta;
    combine_with(first, second, start, end, first.used || second.used, |x, y| x.min(y).clone())
}

/// Smallest-index entry whose length reaches `target`, as `(index, eta)`.
/// Lists of used subnetworks cannot induce anything below their head.
pub fn min_edges_to_induce(list: &EdgeLengthList, target: &LengthValue) -> Result<(usize, usize), MintbError> {
    if list.used && *target < list.first().length {
        return Err(MintbError::LengthTooSmall { requested: Box::new(target.clone()), minimum: Box::new(list.first().length.clone()) });
    }
    let index = list.entries.partition_point(|e| e.length < *target);
    Ok((index, list.entries[index].eta))
}

fn bundle_of(tree: &ParseTree, index: TreeIndex) -> &[EdgeId] {
    match &tree.node(index).kind {
        NodeKind::Leaf(bundle) => bundle,
        _ => unreachable!(),
    }
}

/// Longest used terminal-to-terminal path of every node; `None` for nodes
/// without a used path.
pub fn max_used_path_lengths(tree: &ParseTree, inst: &LInstance) -> Vec<Option<Rational>> {
    let mut out: Vec<Option<Rational>> = Vec::with_capacity(tree.len());
    for (index, node) in tree.nodes().iter().enumerate() {
        let value = match &node.kind {
            NodeKind::Leaf(_) => bundle_of(tree, index).iter().filter(|&&e| inst.is_used(e)).map(|&e| inst.length(e)).max().cloned(),
            NodeKind::Series(a, b) => match (&out[*a], &out[*b]) {
                (Some(x), Some(y)) => Some(x + y),
                _ => None,
            },
            NodeKind::Parallel(a, b) => out[*a].clone().max(out[*b].clone()),
        };
        out.push(value);
    }
    out
}

/// Longest used s-t path of the whole network.
pub fn max_used_path_length(tree: &ParseTree, inst: &LInstance) -> Result<LengthValue, MintbError> {
    max_used_path_lengths(tree, inst).pop().flatten().map(LengthValue::Finite).ok_or(MintbError::NoUsedPath)
}

/// Lists for every tree node, indexed like the tree.
pub fn make_list(tree: &ParseTree, inst: &LInstance) -> Result<Vec<EdgeLengthList>, MintbError> {
    let mut lists: Vec<EdgeLengthList> = Vec::with_capacity(tree.len());
    for (index, node) in tree.nodes().iter().enumerate() {
        let list = match &node.kind {
            NodeKind::Leaf(bundle) => {
                let pairs: Vec<(Rational, bool)> = bundle.iter().map(|&e| (inst.length(e).clone(), inst.is_used(e))).collect();
                match make_list_pl(&pairs) {
                    Ok(list) => list,
                    Err(MintbError::NoUsedEdge) => make_list_pl_unused(&pairs.into_iter().map(|p| p.0).collect::<Vec<_>>()),
                    Err(other) => return Err(other),
                }
            }
            NodeKind::Series(a, b) => {
                if lists[*a].used != lists[*b].used {
                    return Err(MintbError::Inconsistent(format!("series node {index} mixes used and unused parts")));
                }
                combine_series(&lists[*a], &lists[*b])
            }
            NodeKind::Parallel(a, b) => combine_parallel(&lists[*a], &lists[*b]),
        };
        debug_assert!(list.check_order().is_ok(), "node {index}: {:?}", list.check_order());
        lists.push(list);
    }
    Ok(lists)
}

/// Tolls inducing `target` in the whole network with the fewest tolled
/// edges, plus the length each leaf was asked to induce.
pub fn place_toll(
    tree: &ParseTree,
    lists: &[EdgeLengthList],
    inst: &LInstance,
    target: &Rational,
) -> Result<Placement, MintbError> {
    let root = tree.root();
    min_edges_to_induce(&lists[root], &LengthValue::Finite(target.clone()))?;

    let mut targets: Vec<Option<Rational>> = vec![None; tree.len()];
    targets[root] = Some(target.clone());
    let mut tolls = TollVector::zeros(inst.network().edge_count());

    for index in (0..tree.len()).rev() {
        let Some(goal) = targets[index].take() else { continue };
        let list = &lists[index];
        // an unused subnetwork already at or above the goal needs nothing
        if !list.used && LengthValue::Finite(goal.clone()) <= list.first().length {
            continue;
        }
        match &tree.node(index).kind {
            NodeKind::Leaf(bundle) => {
                for &e in bundle {
                    if *inst.length(e) < goal {
                        tolls.set(e, &goal - inst.length(e));
                    }
                }
                targets[index] = Some(goal);
            }
            NodeKind::Parallel(a, b) => {
                targets[*a] = Some(goal.clone());
                targets[*b] = Some(goal.clone());
                targets[index] = Some(goal);
            }
            NodeKind::Series(a, b) => {
                let (opt, _) = min_edges_to_induce(list, &LengthValue::Finite(goal.clone()))?;
                let entry = &list.entries[opt];
                let right_len = &lists[*b].entries[entry.right.unwrap()].length;
                let left_floor = lists[*a].first().length.finite().unwrap();
                // right side takes its pointed length, capped so the left
                // side is never pushed below its own minimum
                let slack = &goal - left_floor;
                let right_goal = match right_len {
                    LengthValue::Finite(r) if *r < slack => r.clone(),
                    _ => slack,
                };
                targets[*a] = Some(&goal - &right_goal);
                targets[*b] = Some(right_goal);
                targets[index] = Some(goal);
            }
        }
    }
    let mut per_edge = vec![None; inst.network().edge_count()];
    for (node, goal) in tree.nodes().iter().zip(targets) {
        if let NodeKind::Leaf(bundle) = &node.kind {
            for &e in bundle {
                per_edge[e] = goal.clone();
            }
        }
    }
    Ok(Placement { tolls, leaf_targets: per_edge })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub tolls: TollVector,
    /// For each edge, the length its leaf was asked to induce (`None` when
    /// the leaf needed no tolls at all).
    pub leaf_targets: Vec<Option<Rational>>,
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    /// Induce this length instead of the longest used path length.
    pub induce: Option<Rational>,
    /// Trust the caller that the flow is optimal.
    pub skip_optimality_check: bool,
}

#[derive(Debug, Clone)]
pub struct MintbSolution {
    pub tolls: TollVector,
    pub support: usize,
    pub induced_length: Rational,
    pub tree: ParseTree,
    pub lists: Vec<EdgeLengthList>,
    pub leaf_targets: Vec<Option<Rational>>,
}

/// Runs the list DP on an l-instance and induces `target` (default: the
/// longest used path length, which is optimal on series-parallel networks).
pub fn solve_l_instance(inst: &LInstance, tree: &ParseTree, target: Option<&Rational>) -> Result<MintbSolution, MintbError> {
    tree.check_against(inst.network()).map_err(MintbError::Inconsistent)?;
    let lmax = max_used_path_length(tree, inst)?;
    let lists = make_list(tree, inst)?;
    let goal = match target {
        Some(t) => t.clone(),
        None => lmax.finite().unwrap().clone(),
    };
    let placement = place_toll(tree, &lists, inst, &goal)?;
    let support = placement.tolls.support_size();
    debug_assert_eq!(Some(support), min_edges_to_induce(&lists[tree.root()], &LengthValue::Finite(goal.clone())).ok().map(|x| x.1));
    Ok(MintbSolution {
        tolls: placement.tolls,
        support,
        induced_length: goal,
        tree: tree.clone(),
        lists,
        leaf_targets: placement.leaf_targets,
    })
}

/// Minimum-support opt-inducing tolls for `flow` on a series-parallel
/// network.
pub fn solve_mintb(
    net: &Network,
    latencies: &[LinearLatency],
    demand: &Rational,
    flow: &Flow,
    options: &SolveOptions,
) -> Result<MintbSolution, MintbError> {
    let tree = build_parse_tree(net)?;
    flow.check_feasible(net)?;
    if flow.demand() != demand {
        return Err(FlowError::InfeasibleFlow("flow does not route the stated demand".into()).into());
    }
    if !options.skip_optimality_check && !verify_social_optimum(net, latencies, flow) {
        return Err(MintbError::NotOptimalFlow);
    }
    let inst = match build_l_instance(net, latencies, flow) {
        Err(FlowError::LInstance(crate::linstance::LInstanceError::NoUsedPath)) => return Err(MintbError::NoUsedPath),
        other => other?,
    };
    solve_l_instance(&inst, &tree, options.induce.as_ref())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn fin(n: i64) -> LengthValue {
        LengthValue::Finite(int(n))
    }

    fn list(pairs: &[(usize, Option<i64>)], used: bool) -> EdgeLengthList {
        EdgeLengthList {
            entries: pairs
                .iter()
                .map(|&(eta, l)| ListEntry { eta, length: l.map_or(LengthValue::Infinite, fin), left: None, right: None })
                .collect(),
            used,
        }
    }

    fn pairs(l: &EdgeLengthList) -> Vec<(usize, Option<i64>)> {
        l.entries()
            .iter()
            .map(|e| (e.eta, e.length.finite().map(|v| v.to_integer().try_into().unwrap())))
            .collect()
    }

    fn used_bundle(lengths: &[i64]) -> Vec<(Rational, bool)> {
        lengths.iter().map(|&l| (int(l), true)).collect()
    }

    #[test]
    fn length_value_arithmetic() {
        assert_eq!(&fin(2) + &fin(3), fin(5));
        assert_eq!(&fin(2) + &LengthValue::Infinite, LengthValue::Infinite);
        assert!(LengthValue::Infinite > fin(1_000_000));
        assert_eq!(fin(4).min(LengthValue::Infinite), fin(4));
        assert_eq!(LengthValue::Finite(ratio(7, 2)).to_string(), "7/2");
        assert_eq!(LengthValue::Infinite.to_string(), "inf");
    }

    #[test]
    fn bundle_lists() {
        assert_eq!(pairs(&make_list_pl(&used_bundle(&[1, 2, 3])).unwrap()), vec![(2, Some(3)), (3, None)]);
        assert_eq!(pairs(&make_list_pl(&used_bundle(&[5])).unwrap()), vec![(0, Some(5)), (1, None)]);
        let mixed = [(int(1), true), (int(4), false)];
        assert_eq!(pairs(&make_list_pl(&mixed).unwrap()), vec![(0, Some(1)), (1, Some(4)), (2, None)]);
        assert_eq!(make_list_pl(&[(int(1), false)]), Err(MintbError::NoUsedEdge));
        assert_eq!(pairs(&make_list_pl_unused(&[int(3), int(1)])), vec![(0, Some(1)), (1, Some(3)), (2, None)]);
    }

    #[test]
    fn bundle_with_tied_lengths() {
        // used 2 and 3, unused 3: toll the 2, and a second toll still leaves a 3
        let bundle = [(int(2), true), (int(3), true), (int(3), false)];
        assert_eq!(pairs(&make_list_pl(&bundle).unwrap()), vec![(1, Some(3)), (2, Some(3)), (3, None)]);
    }

    #[test]
    fn series_combination() {
        let a = list(&[(1, Some(2)), (2, None)], true);
        let b = list(&[(0, Some(5)), (1, None)], true);
        let s = combine_series(&a, &b);
        assert_eq!(pairs(&s), vec![(1, Some(7)), (2, None)]);
        assert_eq!((s.entries()[0].left, s.entries()[0].right), (Some(0), Some(0)));

        let c = list(&[(0, Some(4)), (1, None)], true);
        assert_eq!(pairs(&combine_series(&c, &c)), vec![(0, Some(8)), (1, None)]);
    }

    #[test]
    fn parallel_combination() {
        let a = list(&[(1, Some(2)), (2, None)], true);
        let b = list(&[(0, Some(5)), (1, None)], true);
        assert_eq!(pairs(&combine_parallel(&a, &b)), vec![(2, Some(5)), (3, None)]);

        let c = list(&[(0, Some(4)), (1, None)], true);
        let p = combine_parallel(&c, &c);
        assert_eq!(pairs(&p), vec![(0, Some(4)), (1, Some(4)), (2, None)]);
        assert_eq!(p.first().eta, 0);
    }

    #[test]
    fn unused_side_does_not_raise_the_floor() {
        let used = list(&[(0, Some(3)), (1, None)], true);
        let unused = list(&[(0, Some(1)), (1, Some(6)), (2, None)], false);
        let p = combine_parallel(&used, &unused);
        assert!(p.is_used());
        assert_eq!(pairs(&p), vec![(1, Some(3)), (2, Some(6)), (3, None)]);
    }

    #[test]
    fn lookup() {
        let l = list(&[(2, Some(3)), (3, None)], true);
        assert_eq!(min_edges_to_induce(&l, &fin(3)).unwrap(), (0, 2));
        assert_eq!(min_edges_to_induce(&l, &LengthValue::Finite(ratio(7, 2))).unwrap(), (1, 3));
        assert!(matches!(min_edges_to_induce(&l, &fin(2)), Err(MintbError::LengthTooSmall { .. })));
        let unused = list(&[(0, Some(3)), (1, None)], false);
        assert_eq!(min_edges_to_induce(&unused, &fin(1)).unwrap(), (0, 0));
    }

    fn leaf_instance(lengths: &[i64]) -> (ParseTree, LInstance) {
        let arcs = vec![(0, 1); lengths.len()];
        let net = Network::new(2, 0, 1, &arcs).unwrap();
        let tree = build_parse_tree(&net).unwrap();
        let inst = LInstance::new(net, lengths.iter().map(|&l| int(l)).collect(), vec![true; lengths.len()]).unwrap();
        (tree, inst)
    }

    #[test]
    fn leaf_placement() {
        let (tree, inst) = leaf_instance(&[1, 2, 3]);
        let lists = make_list(&tree, &inst).unwrap();
        let placed = place_toll(&tree, &lists, &inst, &int(3)).unwrap();
        assert_eq!(placed.tolls.values(), &[int(2), int(1), int(0)]);
        assert_eq!(placed.tolls.support_size(), 2);
    }

    #[test]
    fn series_placement_follows_pointers() {
        // left bundle (1, 2) used, right single edge 5
        let net = Network::new(3, 0, 2, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        let tree = build_parse_tree(&net).unwrap();
        let inst = LInstance::new(net, vec![int(1), int(2), int(5)], vec![true; 3]).unwrap();
        let lists = make_list(&tree, &inst).unwrap();
        assert_eq!(pairs(&lists[tree.root()]), vec![(1, Some(7)), (2, None)]);
        let placed = place_toll(&tree, &lists, &inst, &int(7)).unwrap();
        assert_eq!(placed.tolls.values(), &[int(1), int(0), int(0)]);
    }

    #[test]
    fn series_split_keeps_left_above_its_floor() {
        // left: used 0 with an unused 0 beside it; right: used 0 with an
        // unused 100 beside it; the whole thing sits in parallel with a used
        // edge of length 50
        let arcs = [(0, 1), (0, 1), (1, 2), (1, 2), (0, 2)];
        let net = Network::new(3, 0, 2, &arcs).unwrap();
        let tree = build_parse_tree(&net).unwrap();
        let inst = LInstance::new(
            net,
            vec![int(0), int(0), int(0), int(100), int(50)],
            vec![true, false, true, false, true],
        )
        .unwrap();
        let sol = solve_l_instance(&inst, &tree, None).unwrap();
        assert_eq!(sol.induced_length, int(50));
        assert_eq!(sol.support, 1);
        assert_eq!(sol.tolls.values(), &[int(0), int(0), int(50), int(0), int(0)]);
        assert_eq!(inst.induced_length(&sol.tolls), Some(int(50)));
    }

    #[test]
    fn pigou_needs_one_toll() {
        let net = Network::new(2, 0, 1, &[(0, 1), (0, 1)]).unwrap();
        let lats = [LinearLatency::new(int(1), int(0)), LinearLatency::constant(int(1))];
        let opt = Flow::new(vec![ratio(1, 2), ratio(1, 2)], int(1));
        let sol = solve_mintb(&net, &lats, &int(1), &opt, &SolveOptions::default()).unwrap();
        assert_eq!(sol.support, 1);
        assert_eq!(sol.tolls.values(), &[ratio(1, 2), int(0)]);
        assert_eq!(sol.induced_length, int(1));
        assert_eq!(sol.lists[0].render(), "1:1 2:inf");
    }

    #[test]
    fn single_edge_needs_nothing() {
        let net = Network::new(2, 0, 1, &[(0, 1)]).unwrap();
        let lats = [LinearLatency::new(int(1), int(1))];
        let opt = Flow::new(vec![int(2)], int(2));
        let sol = solve_mintb(&net, &lats, &int(2), &opt, &SolveOptions::default()).unwrap();
        assert_eq!(sol.support, 0);
    }

    #[test]
    fn rejects_non_optimal_flow_and_short_targets() {
        let net = Network::new(2, 0, 1, &[(0, 1), (0, 1)]).unwrap();
        let lats = [LinearLatency::new(int(1), int(0)), LinearLatency::constant(int(1))];
        let nash = Flow::new(vec![int(1), int(0)], int(1));
        assert_eq!(solve_mintb(&net, &lats, &int(1), &nash, &SolveOptions::default()).unwrap_err(), MintbError::NotOptimalFlow);
        let opt = Flow::new(vec![ratio(1, 2), ratio(1, 2)], int(1));
        let low = SolveOptions { induce: Some(ratio(1, 2)), ..Default::default() };
        assert!(matches!(solve_mintb(&net, &lats, &int(1), &opt, &low), Err(MintbError::LengthTooSmall { .. })));
        let high = SolveOptions { induce: Some(int(3)), ..Default::default() };
        assert_eq!(solve_mintb(&net, &lats, &int(1), &opt, &high).unwrap().support, 2);
    }

    #[test]
    fn non_series_parallel_is_reported() {
        let net = Network::new(4, 0, 3, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let lats = vec![LinearLatency::constant(int(1)); 5];
        let flow = Flow::new(vec![int(1), int(0), int(0), int(1), int(0)], int(1));
        assert!(matches!(
            solve_mintb(&net, &lats, &int(1), &flow, &SolveOptions::default()),
            Err(MintbError::NotSeriesParallel(_))
        ));
    }
}
