//! Brute-force ground truth for small instances: which supports can induce
//! which lengths, decided exactly by Fourier-Motzkin elimination over path
//! constraints.

use crate::flows::TollVector;
use crate::fm::LinearSystem;
use crate::graph::{EdgeId, GraphError, Network, NodeId};
use crate::linstance::LInstance;
use crate::mintb::LengthValue;
use crate::rational::{int, Rational};
use crate::sp::{ParseTree, TreeIndex};
use num_traits::{One, Zero};

pub const PATH_CAP: usize = 100_000;
pub const SUBSET_CHECK_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{checks} subset checks exceed the cap of {cap}")]
    CapExceeded { checks: u64, cap: u64 },
    #[error(transparent)]
    PathExplosion(#[from] GraphError),
    #[error("no support of size at most {0} works")]
    NoFeasibleSupport(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Length(LengthValue),
    Free,
}

/// A two-terminal piece of an instance's network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subnetwork {
    pub source: NodeId,
    pub sink: NodeId,
    pub edges: Vec<EdgeId>,
}

impl Subnetwork {
    pub fn whole(net: &Network) -> Self {
        Subnetwork { source: net.source(), sink: net.sink(), edges: (0..net.edge_count()).collect() }
    }

    pub fn of_tree_node(tree: &ParseTree, index: TreeIndex) -> Self {
        let node = tree.node(index);
        Subnetwork { source: node.source, sink: node.sink, edges: tree.edges_under(index) }
    }

    /// Simple terminal-to-terminal paths inside the piece.
    pub fn paths(&self, net: &Network) -> Result<Vec<Vec<EdgeId>>, OracleError> {
        let mut inside = vec![false; net.edge_count()];
        for &e in &self.edges {
            inside[e] = true;
        }
        Ok(net.simple_paths(self.source, self.sink, |e| inside[e], PATH_CAP)?)
    }
}

/// Closed range of lengths `[lo, hi]`; `hi = None` is unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthRange {
    pub lo: Rational,
    pub hi: Option<Rational>,
}

impl LengthRange {
    pub fn contains(&self, target: &LengthValue) -> bool {
        match target {
            LengthValue::Finite(l) => *l >= self.lo && self.hi.as_ref().is_none_or(|h| l <= h),
            LengthValue::Infinite => self.hi.is_none(),
        }
    }

    pub fn upper(&self) -> LengthValue {
        self.hi.clone().map_or(LengthValue::Infinite, LengthValue::Finite)
    }
}

/// Variables are the tolls on `support` in order, then `L` last.
fn path_system(inst: &LInstance, paths: &[Vec<EdgeId>], support: &[EdgeId]) -> LinearSystem {
    let k = support.len();
    let mut slot = vec![None; inst.network().edge_count()];
    for (i, &e) in support.iter().enumerate() {
        slot[e] = Some(i);
    }
    let mut sys = LinearSystem::new(k + 1);
    for i in 0..=k {
        let mut row = vec![Rational::zero(); k + 1];
        row[i] = Rational::one();
        sys.add_ge(row, Rational::zero());
    }
    for path in paths {
        let mut row = vec![Rational::zero(); k + 1];
        let mut length = Rational::zero();
        for &e in path {
            length += inst.length(e);
            if let Some(i) = slot[e] {
                row[i] += Rational::one();
            }
        }
        row[k] = -Rational::one();
        if path.iter().all(|&e| inst.is_used(e)) {
            sys.add_eq(row, length);
        } else {
            sys.add_ge(row, length);
        }
    }
    sys
}

/// Lengths `L` inducible with tolls on `support` only, where paths made of
/// used edges must have length exactly `L` and the others at least `L`.
pub fn length_range(inst: &LInstance, paths: &[Vec<EdgeId>], support: &[EdgeId]) -> Option<LengthRange> {
    let sys = path_system(inst, paths, support);
    let order: Vec<usize> = (0..support.len()).collect();
    let projection = sys.eliminate(&order)?;
    let (lo, hi) = projection.interval(support.len())?;
    Some(LengthRange { lo: lo.unwrap_or_else(Rational::zero), hi })
}

pub fn feasible_support(inst: &LInstance, paths: &[Vec<EdgeId>], support: &[EdgeId], target: &Target) -> bool {
    match (length_range(inst, paths, support), target) {
        (None, _) => false,
        (Some(_), Target::Free) => true,
        (Some(range), Target::Length(l)) => range.contains(l),
    }
}

/// Tolls on `support` inducing the finite `length`, if any exist.
pub fn witness(inst: &LInstance, paths: &[Vec<EdgeId>], support: &[EdgeId], length: &Rational) -> Option<TollVector> {
    let sys = path_system(inst, paths, support);
    let order: Vec<usize> = (0..support.len()).collect();
    let projection = sys.eliminate(&order)?;
    let range = projection.interval(support.len())?;
    let in_range = range.0.as_ref().is_none_or(|lo| length >= lo) && range.1.as_ref().is_none_or(|hi| length <= hi);
    if !in_range {
        return None;
    }
    let mut x = vec![None; support.len() + 1];
    x[support.len()] = Some(length.clone());
    projection.complete(&mut x);
    let mut tolls = TollVector::zeros(inst.network().edge_count());
    for (i, &e) in support.iter().enumerate() {
        tolls.set(e, x[i].take().unwrap());
    }
    Some(tolls)
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

fn check_budget(n: usize, sizes: impl Iterator<Item = usize>) -> Result<(), OracleError> {
    let checks = sizes.map(|k| binomial(n, k)).fold(0u64, u64::saturating_add);
    if checks > SUBSET_CHECK_CAP {
        return Err(OracleError::CapExceeded { checks, cap: SUBSET_CHECK_CAP });
    }
    Ok(())
}

/// Calls `visit` on every `k`-subset of `items` in lexicographic order until
/// it returns `true`.
fn for_each_subset(items: &[EdgeId], k: usize, mut visit: impl FnMut(&[EdgeId]) -> bool) -> bool {
    let n = items.len();
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut chosen: Vec<EdgeId> = Vec::with_capacity(k);
    loop {
        chosen.clear();
        chosen.extend(idx.iter().map(|&i| items[i]));
        if visit(&chosen) {
            return true;
        }
        let Some(pos) = (0..k).rev().find(|&p| idx[p] != p + n - k) else { return false };
        idx[pos] += 1;
        for p in pos + 1..k {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

/// Smallest support that makes the instance's used edges exactly the
/// shortest-path edges for some length, with a witness toll vector.
pub fn brute_force_mintb(inst: &LInstance, max_support: usize) -> Result<(usize, TollVector), OracleError> {
    let net = inst.network();
    let m = net.edge_count();
    let cap = max_support.min(m);
    check_budget(m, 0..=cap)?;
    let paths = net.enumerate_st_paths(PATH_CAP)?;
    let edges: Vec<EdgeId> = (0..m).collect();
    for k in 0..=cap {
        let mut found = None;
        for_each_subset(&edges, k, |support| {
            if let Some(range) = length_range(inst, &paths, support) {
                found = witness(inst, &paths, support, &range.lo);
            }
            found.is_some()
        });
        if let Some(tolls) = found {
            return Ok((k, tolls));
        }
    }
    Err(OracleError::NoFeasibleSupport(cap))
}

/// Smallest support inducing `target` on the whole network, with a witness
/// when the target is finite.
pub fn min_support_to_induce(
    inst: &LInstance,
    target: &LengthValue,
    max_support: usize,
) -> Result<Option<(usize, Option<TollVector>)>, OracleError> {
    let net = inst.network();
    let m = net.edge_count();
    let cap = max_support.min(m);
    check_budget(m, 0..=cap)?;
    let paths = net.enumerate_st_paths(PATH_CAP)?;
    let edges: Vec<EdgeId> = (0..m).collect();
    for k in 0..=cap {
        let mut hit: Option<Vec<EdgeId>> = None;
        for_each_subset(&edges, k, |support| {
            let ok = length_range(inst, &paths, support).is_some_and(|r| r.contains(target));
            if ok {
                hit = Some(support.to_vec());
            }
            ok
        });
        if let Some(support) = hit {
            let tolls = target.finite().map(|l| witness(inst, &paths, &support, l).expect("feasible support has a witness"));
            return Ok(Some((k, tolls)));
        }
    }
    Ok(None)
}

/// Largest length inducible inside `sub` with at most `eta` tolled edges of
/// the piece; `None` when no such support works at all. Pieces without a
/// used path only need every path to reach the length.
pub fn max_inducible_length(inst: &LInstance, sub: &Subnetwork, eta: usize) -> Result<Option<LengthValue>, OracleError> {
    let k = eta.min(sub.edges.len());
    check_budget(sub.edges.len(), std::iter::once(k))?;
    let paths = sub.paths(inst.network())?;
    let mut best: Option<LengthValue> = None;
    for_each_subset(&sub.edges, k, |support| {
        if let Some(range) = length_range(inst, &paths, support) {
            let up = range.upper();
            if best.as_ref().is_none_or(|b| up > *b) {
                best = Some(up);
            }
        }
        best == Some(LengthValue::Infinite)
    });
    Ok(best)
}

/// Inducible ranges of every support up to a size, for answering many
/// length queries on one small instance.
#[derive(Debug, Clone)]
pub struct SupportProfile {
    ranges: Vec<(Vec<EdgeId>, LengthRange)>,
}

impl SupportProfile {
    pub fn build(inst: &LInstance, max_support: usize) -> Result<Self, OracleError> {
        Self::for_subnetwork(inst, &Subnetwork::whole(inst.network()), max_support)
    }

    /// Supports drawn from the piece's edges, constraints from its paths.
    pub fn for_subnetwork(inst: &LInstance, sub: &Subnetwork, max_support: usize) -> Result<Self, OracleError> {
        let cap = max_support.min(sub.edges.len());
        check_budget(sub.edges.len(), 0..=cap)?;
        let paths = sub.paths(inst.network())?;
        let mut ranges = Vec::new();
        for k in 0..=cap {
            for_each_subset(&sub.edges, k, |support| {
                if let Some(range) = length_range(inst, &paths, support) {
                    ranges.push((support.to_vec(), range));
                }
                false
            });
        }
        Ok(SupportProfile { ranges })
    }

    pub fn min_support(&self, target: &LengthValue) -> Option<usize> {
        self.ranges.iter().filter(|(_, r)| r.contains(target)).map(|(s, _)| s.len()).min()
    }

    /// Smallest inducible length over all supports.
    pub fn min_length(&self) -> Option<Rational> {
        self.ranges.iter().map(|(_, r)| r.lo.clone()).min()
    }
}

/// An instance where a longer target needs strictly fewer tolls than a
/// shorter one.
#[derive(Debug, Clone)]
pub struct NonMonotoneWitness {
    pub instance: LInstance,
    pub shorter: (Rational, usize),
    pub longer: (Rational, usize),
}

/// Searches l-instances on the 4-node bridge network `s->a, s->b, a->b,
/// a->t, b->t` with integer lengths in `0..=max_len`, and every used set
/// that a flow can produce, for a length pair breaking monotonicity.
pub fn find_non_monotone_witness(max_len: i64) -> Option<NonMonotoneWitness> {
    let net = Network::with_names(
        ["s", "a", "b", "t"].iter().map(|s| s.to_string()).collect(),
        0,
        3,
        &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)],
    )
    .expect("bridge network is valid");
    let m = net.edge_count();
    let values = (max_len + 1) as usize;
    for code in 0..values.pow(m as u32) {
        let mut rest = code;
        let lengths: Vec<Rational> = (0..m)
            .map(|_| {
                let v = rest % values;
                rest /= values;
                int(v as i64)
            })
            .collect();
        for mask in 1u32..(1 << m) {
            let used: Vec<bool> = (0..m).map(|e| mask >> e & 1 == 1).collect();
            let Ok(inst) = LInstance::new(net.clone(), lengths.clone(), used) else { continue };
            let profile = SupportProfile::build(&inst, m).ok()?;
            let Some(start) = profile.min_length() else { continue };
            let samples: Vec<Rational> = (0..=2 * values as i64).map(|d| &start + int(d)).collect();
            let counts: Vec<Option<usize>> = samples.iter().map(|l| profile.min_support(&LengthValue::Finite(l.clone()))).collect();
            for i in 0..samples.len() {
                for j in i + 1..samples.len() {
                    if let (Some(a), Some(b)) = (counts[i], counts[j]) {
                        if b < a {
                            return Some(NonMonotoneWitness {
                                instance: inst,
                                shorter: (samples[i].clone(), a),
                                longer: (samples[j].clone(), b),
                            });
                        }
                    }
                }
            }
        }
    }
    None
}
