//! Length instances: a network with edge lengths frozen at an optimal flow and
//! the set of edges that flow uses.

use crate::flows::TollVector;
use crate::graph::{EdgeId, Network};
use crate::rational::Rational;
use crate::shortest::shortest_distances;
use num_traits::Signed;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LInstanceError {
    #[error("expected {expected} per-edge values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("edge {0} has a negative length")]
    NegativeLength(EdgeId),
    #[error("no used source-sink path")]
    NoUsedPath,
    #[error("used edge {0} lies on no all-used source-sink path")]
    StrayUsedEdge(EdgeId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LInstance {
    network: Network,
    lengths: Vec<Rational>,
    used: Vec<bool>,
}

impl LInstance {
    /// Validates that the used edges support an s-t flow: each used edge
    /// sits on an s-t path made only of used edges, and such a path exists.
    pub fn new(network: Network, lengths: Vec<Rational>, used: Vec<bool>) -> Result<Self, LInstanceError> {
        let m = network.edge_count();
        for got in [lengths.len(), used.len()] {
            if got != m {
                return Err(LInstanceError::LengthMismatch { expected: m, got });
            }
        }
        if let Some(e) = lengths.iter().position(|l| l.is_negative()) {
            return Err(LInstanceError::NegativeLength(e));
        }
        let from_s = network.reachable(network.source(), true, |e| used[e]);
        let to_t = network.reachable(network.sink(), false, |e| used[e]);
        if !from_s[network.sink()] {
            return Err(LInstanceError::NoUsedPath);
        }
        for edge in network.edges() {
            if used[edge.id] && !(from_s[edge.tail] && to_t[edge.head]) {
                return Err(LInstanceError::StrayUsedEdge(edge.id));
            }
        }
        Ok(LInstance { network, lengths, used })
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn lengths(&self) -> &[Rational] {
        &self.lengths
    }

    pub fn length(&self, e: EdgeId) -> &Rational {
        &self.lengths[e]
    }

    pub fn used(&self) -> &[bool] {
        &self.used
    }

    pub fn is_used(&self, e: EdgeId) -> bool {
        self.used[e]
    }

    /// Whether `tolls` induce a common length on all used paths that no
    /// unused path undercuts. Returns that length when they do.
    pub fn induced_length(&self, tolls: &TollVector) -> Option<Rational> {
        let costs: Vec<Rational> = self.lengths.iter().zip(tolls.values()).map(|(l, t)| l + t).collect();
        let dist = shortest_distances(&self.network, self.network.source(), &costs);
        for edge in self.network.edges() {
            if !self.used[edge.id] {
                continue;
            }
            match (&dist[edge.tail], &dist[edge.head]) {
                (Some(du), Some(dv)) if *dv == du + &costs[edge.id] => {}
                _ => return None,
            }
        }
        dist[self.network.sink()].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pigou() -> LInstance {
        let net = Network::new(2, 0, 1, &[(0, 1), (0, 1)]).unwrap();
        LInstance::new(net, vec![ratio(1, 2), int(1)], vec![true, true]).unwrap()
    }

    #[test]
    fn rejects_stray_and_missing_used_edges() {
        // s -> u -> t plus s -> t; mark only s -> u used
        let net = Network::new(3, 0, 2, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let lengths = vec![int(1), int(1), int(1)];
        assert_eq!(
            LInstance::new(net.clone(), lengths.clone(), vec![true, false, true]).unwrap_err(),
            LInstanceError::StrayUsedEdge(0)
        );
        assert_eq!(
            LInstance::new(net, lengths, vec![false, false, false]).unwrap_err(),
            LInstanceError::NoUsedPath
        );
    }

    #[test]
    fn induced_length_checks_definition() {
        let inst = pigou();
        assert_eq!(inst.induced_length(&TollVector::zeros(2)), None);
        let mut tolls = TollVector::zeros(2);
        tolls.set(0, ratio(1, 2));
        assert_eq!(inst.induced_length(&tolls), Some(int(1)));
    }
}
