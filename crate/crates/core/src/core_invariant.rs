//! Core-invariant pair families and the rule that trims them.
//!
//! If the shortest-path sets of `k + 2` or more pairs form a sunflower, any
//! solution of size `k` hits `k + 1` of them only by hitting the common core,
//! which then hits them all. So all but `k + 1` pairs can be dropped.

use std::collections::BTreeMap;

use crate::error::SolveError;
use crate::graph::{Distances, GraphError};
use crate::hitting_set::is_sunflower;
use crate::{Vertex, VertexSet};

pub type Pair = (Vertex, Vertex);

/// Shortest-path set per terminal pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpTable {
    sets: BTreeMap<Pair, VertexSet>,
}

impl SpTable {
    pub fn new(dist: &Distances, pairs: &[Pair]) -> Result<Self, GraphError> {
        let mut sets = BTreeMap::new();
        for &(u, v) in pairs {
            sets.insert(norm((u, v)), dist.sp(u, v)?);
        }
        Ok(SpTable { sets })
    }

    /// Panics if the pair was not tabulated.
    pub fn get(&self, p: Pair) -> &VertexSet {
        &self.sets[&norm(p)]
    }

    /// Overwrites one entry. Exists so tests can corrupt a table and watch
    /// the core-invariance check fail.
    pub fn replace(&mut self, p: Pair, set: VertexSet) {
        self.sets.insert(norm(p), set);
    }
}

pub fn norm((u, v): Pair) -> Pair {
    (u.min(v), u.max(v))
}

pub fn is_core_invariant(table: &SpTable, pairs: &[Pair]) -> bool {
    is_sunflower(pairs.iter().map(|&p| table.get(p)))
}

/// Counters for rule applications.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RuleOneLog {
    pub checks: u64,
    pub fired: u64,
    pub removed: u64,
}

/// Checks `family` is core-invariant and returns the pairs to drop (all
/// after the first `k + 1`). Fails loudly instead of trimming a family that
/// is not a sunflower.
pub fn apply_rule_one(
    table: &SpTable,
    family: &[Pair],
    k: usize,
    log: &mut RuleOneLog,
) -> Result<Vec<Pair>, SolveError> {
    if family.len() < k + 2 {
        return Err(SolveError::Internal(format!(
            "rule needs {} pairs, got {}",
            k + 2,
            family.len()
        )));
    }
    log.checks += 1;
    if !is_core_invariant(table, family) {
        return Err(SolveError::CoreInvariance(format!(
            "shortest-path sets of {family:?} do not form a sunflower"
        )));
    }
    log.fired += 1;
    log.removed += (family.len() - k - 1) as u64;
    Ok(family[k + 1..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn star() -> Distances {
        Distances::new(&Graph::<u64>::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap())
    }

    #[test]
    fn star_leaf_pairs_are_core_invariant() {
        let pairs = [(1, 2), (3, 4)];
        let table = SpTable::new(&star(), &pairs).unwrap();
        assert!(is_core_invariant(&table, &pairs));
        assert!(is_core_invariant(&table, &pairs[..1]));
    }

    #[test]
    fn overlapping_pairs_are_not() {
        let pairs = [(1, 2), (2, 3), (3, 4)];
        let table = SpTable::new(&star(), &pairs).unwrap();
        assert!(!is_core_invariant(&table, &pairs));
    }

    #[test]
    fn rule_trims_to_k_plus_one() {
        let pairs = [(1, 2), (3, 4)];
        let table = SpTable::new(&star(), &pairs).unwrap();
        let mut log = RuleOneLog::default();
        assert_eq!(apply_rule_one(&table, &pairs, 0, &mut log).unwrap(), vec![(3, 4)]);
        assert_eq!(log, RuleOneLog { checks: 1, fired: 1, removed: 1 });
    }

    #[test]
    fn corrupted_table_trips_the_check() {
        let g = Graph::<u64>::from_edges(7, (1..7).map(|v| (0, v))).unwrap();
        let pairs = [(1, 2), (3, 4), (5, 6)];
        let mut table = SpTable::new(&Distances::new(&g), &pairs).unwrap();
        let mut log = RuleOneLog::default();
        assert!(apply_rule_one(&table, &pairs, 1, &mut log).is_ok());
        table.replace((6, 5), VertexSet::from([0, 1, 5, 6]));
        assert!(matches!(
            apply_rule_one(&table, &pairs, 1, &mut log),
            Err(SolveError::CoreInvariance(_))
        ));
        assert_eq!((log.checks, log.fired), (2, 1));
    }
}
