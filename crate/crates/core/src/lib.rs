//! Exact and fixed-parameter solvers for the Terminal Monitoring Set problem
//! and its slack relaxation α-RTMS.
//!
//! Every solver reduces to hitting set over shortest-path vertex sets and is
//! cross-checked against the brute-force [`oracle`].

pub mod cluster;
pub mod config;
pub mod core_invariant;
pub mod error;
pub mod fen;
pub mod graph;
pub mod hitting_set;
pub mod instance;
pub mod nd;
pub mod oracle;
pub mod reductions;
pub mod vc;
pub mod weight;

use std::collections::BTreeSet;

use num_rational::Ratio;

pub use config::SolverConfig;
pub use error::SolveError;
pub use instance::{SolveResult, Verdict};
pub use weight::Weight;

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

/// Exact path length. Wide enough that sums of `u64` weights never overflow.
pub type Distance = u128;

/// Slack parameter α as an exact fraction.
pub type Alpha = Ratio<u64>;

/// Graph with `u64` edge weights.
pub type Graph = graph::Graph<u64>;
/// Instance over `u64` edge weights.
pub type TmsInstance = instance::TmsInstance<u64>;
