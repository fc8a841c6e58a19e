//! Solver parameterized by solution size plus distance to a cluster graph.
//!
//! Terminals split by where their endpoints sit relative to the modulator
//! `M`: `t0` adjacent (or degenerate) pairs, `t1` clique-to-`M`, `t2`
//! clique-to-clique and `t3` inside `M`. Pairs of `t1`/`t2` are grouped by
//! how their shortest paths enter and leave `M`; large same-type groups are
//! core-invariant and get trimmed. Whatever survives becomes a hitting-set
//! instance small enough for the subset DP.

mod reduce;
mod types;

use std::collections::BTreeMap;

use crate::config::SolverConfig;
use crate::core_invariant::{norm, Pair, RuleOneLog, SpTable};
use crate::error::SolveError;
use crate::graph::{
    compute_parameter, ensure_connected, is_cluster_deletion_set, Distances, Graph, ParameterKind,
    Witness,
};
use crate::hitting_set::{buss_reduce, minimum_hitting_set, BussOutcome, Set};
use crate::instance::{SolveResult, TmsInstance};
use crate::oracle::verify_with;
use crate::weight::Weight;
use crate::{Vertex, VertexSet};

pub use reduce::{reduce_t1, reduce_t2, t1_bound, t2_bound};
pub use types::{T1Type, T2Type};

/// Distances on a connected graph together with a cluster modulator.
#[derive(Clone, Debug)]
pub struct ClusterView {
    pub dist: Distances,
    pub modulator: VertexSet,
    /// Components of `G - M`, each sorted, ordered by smallest member.
    pub cliques: Vec<Vec<Vertex>>,
    pub clique_of: Vec<Option<usize>>,
}

impl ClusterView {
    pub fn new<W: Weight>(g: &Graph<W>, modulator: VertexSet) -> Result<Self, SolveError> {
        if !is_cluster_deletion_set(g, &modulator) {
            return Err(SolveError::Precondition(format!(
                "{modulator:?} is not a cluster deletion set"
            )));
        }
        let (rest, old) = g.without_vertices(&modulator);
        let cliques: Vec<Vec<Vertex>> = rest
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(|v| old[v]).collect())
            .collect();
        let mut clique_of = vec![None; g.n()];
        for (i, c) in cliques.iter().enumerate() {
            for &v in c {
                clique_of[v] = Some(i);
            }
        }
        Ok(ClusterView {
            dist: Distances::new(g),
            modulator,
            cliques,
            clique_of,
        })
    }

    pub fn q(&self) -> usize {
        self.modulator.len()
    }

    fn in_m(&self, v: Vertex) -> bool {
        self.modulator.contains(&v)
    }

    /// Splits the pairs four ways. `t1` pairs are stored clique endpoint
    /// first; all others with the smaller id first.
    pub fn partition(&self, terminals: &[Pair]) -> TerminalPartition {
        let mut part = TerminalPartition::default();
        for &p in terminals {
            let (u, v) = norm(p);
            if u == v || self.dist.d(u, v) == 1 {
                part.t0.push((u, v));
            } else {
                match (self.in_m(u), self.in_m(v)) {
                    (true, true) => part.t3.push((u, v)),
                    (false, true) => part.t1.push((u, v)),
                    (true, false) => part.t1.push((v, u)),
                    (false, false) => part.t2.push((u, v)),
                }
            }
        }
        part
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TerminalPartition {
    pub t0: Vec<Pair>,
    pub t1: Vec<Pair>,
    pub t2: Vec<Pair>,
    pub t3: Vec<Pair>,
}

impl TerminalPartition {
    pub fn len(&self) -> usize {
        self.t0.len() + self.t1.len() + self.t2.len() + self.t3.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn saturating_pow2(e: usize) -> u128 {
    if e >= 128 {
        u128::MAX
    } else {
        1u128 << e
    }
}

pub(crate) fn require_plain_unit<W: Weight>(inst: &TmsInstance<W>, who: &str) -> Result<(), SolveError> {
    if !inst.is_plain() {
        return Err(SolveError::Precondition(format!("{who} solver needs alpha = 0")));
    }
    if !inst.graph.is_unit_weight() {
        return Err(SolveError::Precondition(format!("{who} solver needs unit weights")));
    }
    Ok(())
}

/// Solves the hitting-set instance built from large sets plus Buss-reduced
/// small sets, then re-verifies the answer against the instance.
pub(crate) fn finish_with_dp<W: Weight>(
    inst: &TmsInstance<W>,
    dist: &Distances,
    large: Vec<Set>,
    small: Vec<Set>,
    cfg: &SolverConfig,
    mut result_stats: BTreeMap<String, u64>,
    algorithm: &str,
) -> Result<SolveResult, SolveError> {
    let k = inst.k;
    let reduced_small = match buss_reduce(&small, k)? {
        BussOutcome::No => {
            let mut r = SolveResult::no(algorithm);
            result_stats.insert("buss_no".into(), 1);
            r.stats = result_stats;
            return Ok(r);
        }
        BussOutcome::Reduced(f3) => f3,
    };
    if reduced_small.len() > k * k + k {
        return Err(SolveError::Internal(format!(
            "reduced small family has {} sets, above k^2 + k",
            reduced_small.len()
        )));
    }
    result_stats.insert("small_sets_reduced".into(), reduced_small.len() as u64);
    let family: Vec<Set> = large.into_iter().chain(reduced_small).collect();
    result_stats.insert("hs_sets".into(), family.len() as u64);
    let best = minimum_hitting_set(&family, cfg.dp_cap)?;
    let mut r = if best.len() <= k {
        if !verify_with(inst, dist, &best) {
            return Err(SolveError::Internal(format!(
                "{algorithm} produced {best:?}, which does not verify"
            )));
        }
        SolveResult::yes(best, algorithm)
    } else {
        SolveResult::no(algorithm)
    };
    r.stats = result_stats;
    Ok(r)
}

/// Full pipeline. `modulator` is validated if given, computed otherwise
/// (bounded by `cfg.parameter_cap`).
pub fn solve_cluster<W: Weight>(
    inst: &TmsInstance<W>,
    modulator: Option<&VertexSet>,
    cfg: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    const NAME: &str = "cluster";
    require_plain_unit(inst, NAME)?;
    let connected = ensure_connected(&inst.graph, &inst.terminals)?;
    let g = &connected.graph;
    let m = match modulator {
        Some(m) => {
            if !is_cluster_deletion_set(&inst.graph, m) {
                return Err(SolveError::Precondition(format!(
                    "{m:?} is not a cluster deletion set"
                )));
            }
            let mut m = m.clone();
            m.extend(connected.hub);
            m
        }
        None => match compute_parameter(g, ParameterKind::ClusterDeletion, cfg.parameter_cap)?.witness {
            Witness::Vertices(s) => s,
            _ => unreachable!("cluster deletion yields a vertex set"),
        },
    };
    let view = ClusterView::new(g, m)?;
    let part = view.partition(&inst.terminals);
    let table = SpTable::new(&view.dist, &inst.terminals)?;
    let k = inst.k;
    let mut log = RuleOneLog::default();
    let t2 = reduce_t2(&view, &table, &part.t2, k, &mut log)?;
    let t1 = reduce_t1(&view, &table, &part.t1, k, &mut log)?;
    let q = view.q();
    if t2.len() as u128 > t2_bound(q, k) {
        return Err(SolveError::Internal(format!("|T2| = {} exceeds its bound", t2.len())));
    }
    if t1.len() as u128 > t1_bound(q, k) {
        return Err(SolveError::Internal(format!("|T1| = {} exceeds its bound", t1.len())));
    }
    if part.t3.len() > q * q {
        return Err(SolveError::Internal(format!("|T3| = {} exceeds q^2", part.t3.len())));
    }

    let stats: BTreeMap<String, u64> = [
        ("modulator", q),
        ("t0", part.t0.len()),
        ("t1", part.t1.len()),
        ("t2", part.t2.len()),
        ("t3", part.t3.len()),
        ("t1_reduced", t1.len()),
        ("t2_reduced", t2.len()),
    ]
    .into_iter()
    .map(|(key, v)| (key.to_string(), v as u64))
    .chain([
        ("rule1_checks".to_string(), log.checks),
        ("rule1_fired".to_string(), log.fired),
    ])
    .collect();

    let large: Vec<Set> = t1
        .iter()
        .chain(&t2)
        .chain(&part.t3)
        .map(|&p| table.get(p).clone())
        .collect();
    let small: Vec<Set> = part.t0.iter().map(|&p| table.get(p).clone()).collect();
    let dist = Distances::new(&inst.graph);
    finish_with_dp(inst, &dist, large, small, cfg, stats, NAME)
}
