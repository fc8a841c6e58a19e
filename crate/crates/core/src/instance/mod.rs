//! Instance model and result type.

mod format;
mod generate;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::weight::Weight;
use crate::{Alpha, Vertex, VertexSet};

pub use format::{parse_instance, write_instance, ParseError};
pub use generate::{
    gen_cluster_like, gen_fen_like, gen_nd_like, gen_random, gen_vc_like, GenError, RandomSpec,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("terminal pair ({0}, {1}) listed twice")]
    DuplicatePair(Vertex, Vertex),
    #[error("terminal pair ({0}, {1}) spans two components")]
    CrossComponent(Vertex, Vertex),
}

/// Graph, terminal pairs, budget and slack. `alpha == 0` is plain TMS.
///
/// Pairs are stored with the smaller endpoint first and keep their input
/// order otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmsInstance<W> {
    pub graph: Graph<W>,
    pub terminals: Vec<(Vertex, Vertex)>,
    pub k: usize,
    pub alpha: Alpha,
}

impl<W: Weight> TmsInstance<W> {
    pub fn new(
        graph: Graph<W>,
        terminals: Vec<(Vertex, Vertex)>,
        k: usize,
        alpha: Alpha,
    ) -> Result<Self, InstanceError> {
        let label = graph.component_ids();
        let mut seen = BTreeSet::new();
        let mut pairs = Vec::with_capacity(terminals.len());
        for (u, v) in terminals {
            graph.check_vertex(u)?;
            graph.check_vertex(v)?;
            let p = (u.min(v), u.max(v));
            if !seen.insert(p) {
                return Err(InstanceError::DuplicatePair(p.0, p.1));
            }
            if label[u] != label[v] {
                return Err(InstanceError::CrossComponent(p.0, p.1));
            }
            pairs.push(p);
        }
        Ok(TmsInstance {
            graph,
            terminals: pairs,
            k,
            alpha,
        })
    }

    /// Plain TMS instance.
    pub fn plain(
        graph: Graph<W>,
        terminals: Vec<(Vertex, Vertex)>,
        k: usize,
    ) -> Result<Self, InstanceError> {
        Self::new(graph, terminals, k, Alpha::zero())
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn is_plain(&self) -> bool {
        self.alpha.is_zero()
    }

    pub fn with_k(&self, k: usize) -> Self {
        TmsInstance { k, ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

/// Solver answer. `stats` counters are deterministic for a given input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub verdict: Verdict,
    pub certificate: Option<VertexSet>,
    pub algorithm: String,
    pub stats: BTreeMap<String, u64>,
}

#[derive(Serialize)]
struct JsonResult<'a> {
    verdict: Verdict,
    certificate: Option<Vec<usize>>,
    algorithm: &'a str,
    stats: &'a BTreeMap<String, u64>,
}

impl SolveResult {
    pub fn yes(certificate: VertexSet, algorithm: impl Into<String>) -> Self {
        SolveResult {
            verdict: Verdict::Yes,
            certificate: Some(certificate),
            algorithm: algorithm.into(),
            stats: BTreeMap::new(),
        }
    }

    pub fn no(algorithm: impl Into<String>) -> Self {
        SolveResult {
            verdict: Verdict::No,
            certificate: None,
            algorithm: algorithm.into(),
            stats: BTreeMap::new(),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }

    pub fn with_stat(mut self, key: &str, value: u64) -> Self {
        self.stats.insert(key.to_owned(), value);
        self
    }

    pub fn add_stat(&mut self, key: &str, value: u64) {
        *self.stats.entry(key.to_owned()).or_default() += value;
    }

    /// Single-line JSON with 1-based certificate vertices, matching the file
    /// format's numbering.
    pub fn to_json(&self) -> String {
        let out = JsonResult {
            verdict: self.verdict,
            certificate: self
                .certificate
                .as_ref()
                .map(|c| c.iter().map(|&v| v + 1).collect()),
            algorithm: &self.algorithm,
            stats: &self.stats,
        };
        serde_json::to_string(&out).expect("plain data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = Graph<u64>;

    #[test]
    fn rejects_duplicates_in_either_orientation() {
        let g = G::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            TmsInstance::plain(g, vec![(0, 2), (2, 0)], 1),
            Err(InstanceError::DuplicatePair(0, 2))
        );
    }

    #[test]
    fn rejects_cross_component_pairs() {
        let g = G::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(
            TmsInstance::plain(g, vec![(2, 1)], 1),
            Err(InstanceError::CrossComponent(1, 2))
        );
    }

    #[test]
    fn degenerate_pairs_are_allowed() {
        let g = G::from_edges(2, [(0, 1)]).unwrap();
        let inst = TmsInstance::plain(g, vec![(1, 1)], 1).unwrap();
        assert_eq!(inst.terminals, vec![(1, 1)]);
    }

    #[test]
    fn json_is_one_based() {
        let r = SolveResult::yes(VertexSet::from([0, 3]), "bruteforce").with_stat("subsets", 7);
        assert_eq!(
            r.to_json(),
            r#"{"verdict":"yes","certificate":[1,4],"algorithm":"bruteforce","stats":{"subsets":7}}"#
        );
        assert_eq!(
            SolveResult::no("vc").to_json(),
            r#"{"verdict":"no","certificate":null,"algorithm":"vc","stats":{}}"#
        );
    }
}
