//! Exact minimum-support tolls that enforce the social optimum as an
//! equilibrium on series-parallel networks with linear latencies.

pub mod flows;
pub mod fm;
pub mod format;
pub mod gadgets;
pub mod graph;
pub mod linstance;
pub mod mintb;
pub mod oracle;
pub mod pwl;
pub mod rational;
pub mod shortest;
pub mod sp;

pub use flows::{Flow, FlowError, LinearLatency, TollVector};
pub use graph::{EdgeId, GraphError, Network, NodeId};
pub use linstance::{LInstance, LInstanceError};
pub use mintb::{solve_mintb, EdgeLengthList, LengthValue, MintbError, MintbSolution, SolveOptions};
pub use rational::Rational;
pub use sp::{build_parse_tree, ParseTree, SpError};
