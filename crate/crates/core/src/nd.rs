//! Solver parameterized by solution size plus neighborhood diversity.
//!
//! Vertices of one type class have identical distances to everything
//! outside themselves, so every pair between classes `i` and `j` has the
//! shortest-path set `{u, v}` plus a part shared by the whole class pair.
//! Two routes use that: trimming stars and matchings of pairs directly
//! (`Claim` mode), or the generic effective-size kernel with `d = 2`
//! (`Kernel` mode).

use std::collections::{BTreeMap, BTreeSet};

use petgraph::algo::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};

use crate::cluster::{finish_with_dp, require_plain_unit};
use crate::config::SolverConfig;
use crate::core_invariant::{apply_rule_one, norm, Pair, RuleOneLog, SpTable};
use crate::error::SolveError;
use crate::graph::{ensure_connected, nd_partition, Distances};
use crate::hitting_set::{effective_size_kernel, sunflower_threshold, CoredFamily, Set};
use crate::instance::{SolveResult, TmsInstance};
use crate::weight::Weight;
use crate::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NdMode {
    Kernel,
    Claim,
}

/// Non-degenerate pairs grouped by class pair `(i, j)`, `i <= j`.
pub fn group_by_classes(classes: &[Vec<Vertex>], pairs: &[Pair]) -> BTreeMap<(usize, usize), Vec<Pair>> {
    let mut class_of = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        for &v in c {
            class_of.insert(v, i);
        }
    }
    let mut out: BTreeMap<(usize, usize), Vec<Pair>> = BTreeMap::new();
    for &p in pairs {
        let (u, v) = norm(p);
        if u != v {
            let (a, b) = (class_of[&u], class_of[&v]);
            out.entry((a.min(b), a.max(b))).or_default().push((u, v));
        }
    }
    out
}

/// A star of `k + 2` pairs at one vertex, or a matching of at least `k + 2`
/// pairs. One of the two exists whenever there are more than `(k+2)^2`
/// pairs: with every degree at most `k + 1` the edges split into `k + 2`
/// matchings, the largest of which then has over `k + 2` edges.
fn star_or_matching(alive: &[Pair], n: usize, k: usize) -> Option<Vec<Pair>> {
    let need = k + 2;
    let mut by_vertex: BTreeMap<Vertex, Vec<Pair>> = BTreeMap::new();
    for &(u, v) in alive {
        by_vertex.entry(u).or_default().push((u, v));
        by_vertex.entry(v).or_default().push((u, v));
    }
    if let Some(star) = by_vertex.into_values().find(|s| s.len() >= need) {
        return Some(star[..need].to_vec());
    }
    let mut h = UnGraph::<(), ()>::with_capacity(n, alive.len());
    for _ in 0..n {
        h.add_node(());
    }
    for &(u, v) in alive {
        h.add_edge(NodeIndex::new(u), NodeIndex::new(v), ());
    }
    let mut matched: Vec<Pair> = maximum_matching(&h)
        .edges()
        .map(|(a, b)| norm((a.index(), b.index())))
        .collect();
    matched.sort_unstable();
    (matched.len() >= need).then(|| matched[..need].to_vec())
}

/// Trims every class pair to at most `(k+2)^2` pairs. Survivors keep input
/// order; degenerate pairs are left out.
pub fn reduce_nd(
    classes: &[Vec<Vertex>],
    n: usize,
    table: &SpTable,
    pairs: &[Pair],
    k: usize,
    log: &mut RuleOneLog,
) -> Result<Vec<Pair>, SolveError> {
    let limit = (k + 2) * (k + 2);
    let mut kept = BTreeSet::new();
    for (key, mut alive) in group_by_classes(classes, pairs) {
        while alive.len() > limit {
            let family = star_or_matching(&alive, n, k).ok_or_else(|| {
                SolveError::Internal(format!("class pair {key:?} has neither a star nor a matching"))
            })?;
            let gone = apply_rule_one(table, &family, k, log)?;
            alive.retain(|p| !gone.contains(p));
        }
        kept.extend(alive);
    }
    Ok(pairs.iter().map(|&p| norm(p)).filter(|p| kept.contains(p)).collect())
}

pub fn solve_nd<W: Weight>(
    inst: &TmsInstance<W>,
    mode: NdMode,
    cfg: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    let name = match mode {
        NdMode::Kernel => "nd-kernel",
        NdMode::Claim => "nd",
    };
    require_plain_unit(inst, name)?;
    let connected = ensure_connected(&inst.graph, &inst.terminals)?;
    let g = &connected.graph;
    let classes = nd_partition(g);
    let t = classes.len();
    let dist = Distances::new(g);
    let table = SpTable::new(&dist, &inst.terminals)?;
    let k = inst.k;
    let mut stats = BTreeMap::new();
    stats.insert("classes".to_string(), t as u64);

    let large: Vec<Set> = match mode {
        NdMode::Claim => {
            let mut log = RuleOneLog::default();
            let kept = reduce_nd(&classes, g.n(), &table, &inst.terminals, k, &mut log)?;
            for (key, group) in group_by_classes(&classes, &kept) {
                if group.len() > (k + 2) * (k + 2) {
                    return Err(SolveError::Internal(format!(
                        "class pair {key:?} keeps {} pairs, above (k+2)^2",
                        group.len()
                    )));
                }
            }
            stats.insert("rule1_checks".into(), log.checks);
            stats.insert("rule1_fired".into(), log.fired);
            stats.insert("pairs_reduced".into(), kept.len() as u64);
            kept.iter().map(|&p| table.get(p).clone()).collect()
        }
        NdMode::Kernel => {
            let families: Vec<CoredFamily> = group_by_classes(&classes, &inst.terminals)
                .into_values()
                .map(|group| CoredFamily::with_exact_core(group.iter().map(|&p| table.get(p).clone()).collect()))
                .collect();
            for fam in &families {
                if fam.max_effective_size() > 2 {
                    return Err(SolveError::Internal(format!(
                        "class-pair family has effective size {}",
                        fam.max_effective_size()
                    )));
                }
            }
            let kernel = effective_size_kernel(&families, 2, k)?;
            let bound = sunflower_threshold(2, k);
            if kernel.iter().any(|f| f.sets.len() as u128 > bound) {
                return Err(SolveError::Internal("kernel family above d!(k+1)^d".into()));
            }
            let sets: Vec<Set> = kernel.into_iter().flat_map(|f| f.sets).collect();
            stats.insert("pairs_reduced".into(), sets.len() as u64);
            sets
        }
    };
    let small: Vec<Set> = inst
        .terminals
        .iter()
        .filter(|(u, v)| u == v)
        .map(|&(v, _)| Set::from([v]))
        .collect();
    let dist = Distances::new(&inst.graph);
    finish_with_dp(inst, &dist, large, small, cfg, stats, name)
}
