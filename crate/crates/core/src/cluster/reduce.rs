//! Trimming same-type groups of `t1` and `t2` pairs.
//!
//! Rules fire as soon as a qualifying family of `k + 2` pairs exists, not only
//! once a group passes its worst-case size bound. Every family is checked to
//! be core-invariant before pairs are dropped. When nothing fires, the
//! greedy arguments below cap each group, which is what the `*_bound`
//! functions assert.

use std::collections::{BTreeMap, BTreeSet};

use super::ClusterView;
use crate::core_invariant::{apply_rule_one, Pair, RuleOneLog, SpTable};
use crate::error::SolveError;
use crate::Vertex;

/// `(2(k+2))^5 * 2^(4q^2)`, saturating.
pub fn t2_bound(q: usize, k: usize) -> u128 {
    let base = (2 * (k as u128 + 2)).saturating_pow(5);
    base.saturating_mul(super::saturating_pow2(4 * q * q))
}

/// `q (k+2)^2 2^(2q)`, saturating.
pub fn t1_bound(q: usize, k: usize) -> u128 {
    (q as u128)
        .saturating_mul((k as u128 + 2).pow(2))
        .saturating_mul(super::saturating_pow2(2 * q))
}

/// Greedily keeps items whose keys are all unused so far.
fn greedy_distinct<T: Copy, K: Ord>(items: impl IntoIterator<Item = T>, keys: impl Fn(T) -> Vec<K>) -> Vec<T> {
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for it in items {
        let ks = keys(it);
        if ks.iter().all(|k| !used.contains(k)) {
            used.extend(ks);
            out.push(it);
        }
    }
    out
}

fn enough(family: Vec<Pair>, need: usize) -> Option<Vec<Pair>> {
    (family.len() >= need).then_some(family)
}

/// A core-invariant family of at least `k + 2` same-type `t2` pairs, if one
/// of the known patterns applies.
fn t2_family(view: &ClusterView, alive: &[Pair], k: usize) -> Option<Vec<Pair>> {
    let need = k + 2;
    let c = |v: Vertex| view.clique_of[v].expect("t2 endpoints lie in cliques");

    // Pairs between pairwise distinct cliques share exactly the middle part.
    let matching = greedy_distinct(alive.iter().copied(), |(u, v)| vec![c(u), c(v)]);
    if let Some(f) = enough(matching, need) {
        return Some(f);
    }

    // Many pairs at one clique, all entering it from the same side.
    let cliques: BTreeSet<usize> = alive.iter().flat_map(|&(u, v)| [c(u), c(v)]).collect();
    for &cl in &cliques {
        for side in 0..2 {
            let class: Vec<(Vertex, usize, Pair)> = alive
                .iter()
                .filter_map(|&(u, v)| {
                    let (near, far) = if side == 0 { (u, v) } else { (v, u) };
                    (c(near) == cl).then_some((near, c(far), (u, v)))
                })
                .collect();
            if class.len() < need {
                continue;
            }
            let nears: BTreeSet<Vertex> = class.iter().map(|t| t.0).collect();
            for &x in &nears {
                let star = greedy_distinct(class.iter().filter(|t| t.0 == x).copied(), |t| vec![t.1]);
                if let Some(f) = enough(star.into_iter().map(|t| t.2).collect(), need) {
                    return Some(f);
                }
            }
            let spread = greedy_distinct(class.iter().copied(), |t| vec![(0, t.0), (1, t.1)]);
            if let Some(f) = enough(spread.into_iter().map(|t| t.2).collect(), need) {
                return Some(f);
            }
        }
    }

    // Many pairs between one ordered pair of cliques.
    let mut buckets: BTreeMap<(usize, usize), Vec<Pair>> = BTreeMap::new();
    for &(u, v) in alive {
        buckets.entry((c(u), c(v))).or_default().push((u, v));
    }
    for bucket in buckets.values().filter(|b| b.len() >= need) {
        for side in 0..2 {
            let mut by_end: BTreeMap<Vertex, Vec<Pair>> = BTreeMap::new();
            for &p in bucket {
                by_end.entry(if side == 0 { p.0 } else { p.1 }).or_default().push(p);
            }
            if let Some(f) = by_end.into_values().find(|f| f.len() >= need) {
                return Some(f);
            }
        }
        let matching = greedy_distinct(bucket.iter().copied(), |(u, v)| vec![(0, u), (1, v)]);
        if let Some(f) = enough(matching, need) {
            return Some(f);
        }
    }
    None
}

/// A core-invariant family among same-type `t1` pairs sharing their
/// modulator endpoint.
fn t1_family(view: &ClusterView, alive: &[Pair], k: usize) -> Option<Vec<Pair>> {
    let need = k + 2;
    let c = |v: Vertex| view.clique_of[v].expect("t1 endpoint lies in a clique");
    let spread = greedy_distinct(alive.iter().copied(), |(u, _)| vec![c(u)]);
    if let Some(f) = enough(spread, need) {
        return Some(f);
    }
    let mut buckets: BTreeMap<usize, Vec<Pair>> = BTreeMap::new();
    for &(u, m) in alive {
        buckets.entry(c(u)).or_default().push((u, m));
    }
    buckets.into_values().find(|b| b.len() >= need)
}

fn trim_groups<K: Ord>(
    pairs: &[Pair],
    key: impl Fn(Pair) -> Result<K, SolveError>,
    family: impl Fn(&[Pair]) -> Option<Vec<Pair>>,
    table: &SpTable,
    k: usize,
    log: &mut RuleOneLog,
) -> Result<Vec<Pair>, SolveError> {
    let mut groups: BTreeMap<K, Vec<Pair>> = BTreeMap::new();
    for &p in pairs {
        groups.entry(key(p)?).or_default().push(p);
    }
    let mut dropped = BTreeSet::new();
    for mut alive in groups.into_values() {
        while let Some(f) = family(&alive) {
            let gone = apply_rule_one(table, &f, k, log)?;
            alive.retain(|p| !gone.contains(p));
            dropped.extend(gone);
        }
    }
    Ok(pairs.iter().copied().filter(|p| !dropped.contains(p)).collect())
}

/// Trims `t2` pairs (oriented smaller id first). Surviving pairs keep their
/// input order.
///
/// Without a firing pattern, a type's clique graph has a greedy matching of
/// at most `k+1` edges, each clique meets at most `2(k+1)(k+2)` others, and
/// each clique pair carries at most `4(k+1)^2` pairs; the product stays
/// under `(2(k+2))^5`.
pub fn reduce_t2(
    view: &ClusterView,
    table: &SpTable,
    t2: &[Pair],
    k: usize,
    log: &mut RuleOneLog,
) -> Result<Vec<Pair>, SolveError> {
    trim_groups(t2, |p| view.t2_type(p), |a| t2_family(view, a, k), table, k, log)
}

/// Trims `t1` pairs `(clique vertex, modulator vertex)`. Afterwards each
/// (modulator vertex, type) group touches at most `k+1` cliques with at
/// most `k+1` pairs each.
pub fn reduce_t1(
    view: &ClusterView,
    table: &SpTable,
    t1: &[Pair],
    k: usize,
    log: &mut RuleOneLog,
) -> Result<Vec<Pair>, SolveError> {
    trim_groups(
        t1,
        |p| view.t1_type(p).map(|t| (p.1, t)),
        |a| t1_family(view, a, k),
        table,
        k,
        log,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::VertexSet;

    /// Hub `0` adjacent to singleton cliques `1..=n`.
    fn hub(n: usize) -> (ClusterView, Vec<Pair>) {
        let g = Graph::<u64>::from_edges(n + 1, (1..=n).map(|v| (0, v))).unwrap();
        let view = ClusterView::new(&g, VertexSet::from([0])).unwrap();
        let pairs = (0..n / 2).map(|i| (2 * i + 1, 2 * i + 2)).collect();
        (view, pairs)
    }

    #[test]
    fn small_t2_is_unchanged() {
        let (view, pairs) = hub(4);
        let table = SpTable::new(&view.dist, &pairs).unwrap();
        let mut log = RuleOneLog::default();
        assert_eq!(reduce_t2(&view, &table, &pairs, 1, &mut log).unwrap(), pairs);
        assert_eq!(log.fired, 0);
    }

    #[test]
    fn disjoint_same_type_pairs_shrink_to_one() {
        let (view, pairs) = hub(10);
        assert_eq!(pairs.len(), 5);
        let table = SpTable::new(&view.dist, &pairs).unwrap();
        let mut log = RuleOneLog::default();
        let out = reduce_t2(&view, &table, &pairs, 0, &mut log).unwrap();
        assert_eq!(out, vec![(1, 2)]);
        assert!(log.fired >= 1 && log.checks == log.fired);
    }

    #[test]
    fn corrupted_sp_set_aborts_the_reduction() {
        let (view, pairs) = hub(10);
        let mut table = SpTable::new(&view.dist, &pairs).unwrap();
        table.replace((3, 4), VertexSet::from([0, 1, 3, 4]));
        let mut log = RuleOneLog::default();
        assert!(matches!(
            reduce_t2(&view, &table, &pairs, 0, &mut log),
            Err(SolveError::CoreInvariance(_))
        ));
    }

    #[test]
    fn t1_pairs_into_distinct_cliques_shrink() {
        // Modulator {0, 1}: 0 joined to 1 and to singleton cliques 2..=5.
        let k = 2;
        let g = Graph::<u64>::from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let view = ClusterView::new(&g, VertexSet::from([0, 1])).unwrap();
        let pairs: Vec<Pair> = (2..6).map(|u| (u, 1)).collect();
        let table = SpTable::new(&view.dist, &pairs).unwrap();
        let mut log = RuleOneLog::default();
        let out = reduce_t1(&view, &table, &pairs, k, &mut log).unwrap();
        assert_eq!(out.len(), k + 1);
        assert_eq!(log.fired, 1);
    }

    #[test]
    fn bounds_are_exact_formulas() {
        assert_eq!(t2_bound(0, 0), 1024);
        assert_eq!(t2_bound(1, 1), 6u128.pow(5) * 16);
        assert_eq!(t1_bound(2, 1), 2 * 9 * 16);
        assert_eq!(t2_bound(8, 3), u128::MAX);
    }
}
