//! Certificate verification and the exhaustive reference solver.

use itertools::Itertools;

use crate::config::SolverConfig;
use crate::error::SolveError;
use crate::graph::Distances;
use crate::instance::{SolveResult, TmsInstance};
use crate::weight::Weight;
use crate::{Alpha, Distance, Vertex, VertexSet};

/// `a * b <= c * d` without overflow.
fn product_le(a: u128, b: u128, c: u128, d: u128) -> bool {
    wide_mul(a, b) <= wide_mul(c, d)
}

/// Full 256-bit product as `(high, low)`.
fn wide_mul(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (a1, a0) = (a >> 64, a & MASK);
    let (b1, b0) = (b >> 64, b & MASK);
    let low = a0 * b0;
    let mid1 = a1 * b0;
    let mid2 = a0 * b1;
    let high = a1 * b1;
    let (mid, mid_carry) = mid1.overflowing_add(mid2);
    let (lo, lo_carry) = low.overflowing_add(mid << 64);
    let hi = high + (mid >> 64) + ((mid_carry as u128) << 64) + lo_carry as u128;
    (hi, lo)
}

/// Whether `w` monitors `{u, v}` under slack `alpha`:
/// `q * (d(u,w) + d(w,v)) <= (q + p) * d(u,v)` for `alpha = p/q`.
pub fn monitors(dist: &Distances, alpha: &Alpha, u: Vertex, v: Vertex, w: Vertex) -> bool {
    let (Some(duw), Some(dwv)) = (dist.get(u, w), dist.get(w, v)) else {
        return false;
    };
    let duv = dist.d(u, v);
    let p = *alpha.numer() as u128;
    let q = *alpha.denom() as u128;
    product_le(q, duw + dwv, q + p, duv)
}

/// `table[i][w]` says whether `w` monitors pair `i`.
struct MonitorTable(Vec<Vec<bool>>);

impl MonitorTable {
    fn new<W: Weight>(inst: &TmsInstance<W>, dist: &Distances) -> Self {
        MonitorTable(
            inst.terminals
                .iter()
                .map(|&(u, v)| (0..inst.n()).map(|w| monitors(dist, &inst.alpha, u, v, w)).collect())
                .collect(),
        )
    }

    fn hits(&self, s: &[Vertex]) -> bool {
        self.0.iter().all(|row| s.iter().any(|&w| row[w]))
    }
}

pub fn verify_certificate<W: Weight>(inst: &TmsInstance<W>, s: &VertexSet) -> bool {
    verify_with(inst, &Distances::new(&inst.graph), s)
}

/// As [`verify_certificate`] with a precomputed distance table.
pub fn verify_with<W: Weight>(inst: &TmsInstance<W>, dist: &Distances, s: &VertexSet) -> bool {
    s.len() <= inst.k
        && s.iter().all(|&w| w < inst.n())
        && inst
            .terminals
            .iter()
            .all(|&(u, v)| s.iter().any(|&w| monitors(dist, &inst.alpha, u, v, w)))
}

fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let exact = (0..r.min(n - r)).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1));
    u64::try_from(exact).unwrap_or(u64::MAX)
}

fn check_size<W: Weight>(inst: &TmsInstance<W>, cfg: &SolverConfig) -> Result<(), SolveError> {
    let limit = cfg.brute_force_cap;
    if inst.n() > limit {
        return Err(SolveError::CapExceeded {
            what: "vertex count for brute force",
            limit,
            actual: inst.n(),
        });
    }
    Ok(())
}

/// Tries all vertex subsets by increasing size, lexicographically within a
/// size; the first that verifies is returned. Work is split on the smallest
/// chosen vertex, and the lowest split wins, so the answer and the `subsets`
/// counter do not depend on `cfg.jobs`.
pub fn brute_force_solve<W: Weight>(
    inst: &TmsInstance<W>,
    cfg: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    check_size(inst, cfg)?;
    let n = inst.n();
    let dist = Distances::new(&inst.graph);
    let table = MonitorTable::new(inst, &dist);
    let mut before = 0u64;
    for size in 0..=inst.k.min(n) {
        if size == 0 {
            before += 1;
            if table.hits(&[]) {
                return Ok(SolveResult::yes(VertexSet::new(), "bruteforce").with_stat("subsets", before));
            }
            continue;
        }
        let found = cfg.find_first(n, |first| {
            let mut tried = 0u64;
            (first + 1..n).combinations(size - 1).find_map(|mut rest| {
                tried += 1;
                rest.push(first);
                let hit = table.hits(&rest);
                rest.pop();
                hit.then_some((first, rest, tried))
            })
        });
        if let Some((first, rest, tried)) = found {
            let skipped: u64 = (0..first).map(|j| binomial(n - 1 - j, size - 1)).sum();
            let cert: VertexSet = std::iter::once(first).chain(rest).collect();
            return Ok(SolveResult::yes(cert, "bruteforce").with_stat("subsets", before + skipped + tried));
        }
        before += binomial(n, size);
    }
    Ok(SolveResult::no("bruteforce").with_stat("subsets", before))
}

/// Treats each pair's monitor set as a set to hit and runs the subset DP.
/// Works at any slack; limited by `cfg.dp_cap` on the number of distinct
/// inclusion-minimal monitor sets.
pub fn solve_hitting_dp<W: Weight>(
    inst: &TmsInstance<W>,
    cfg: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    const NAME: &str = "hitting-dp";
    let dist = Distances::new(&inst.graph);
    let family: Vec<crate::hitting_set::Set> = MonitorTable::new(inst, &dist)
        .0
        .iter()
        .map(|row| (0..inst.n()).filter(|&w| row[w]).collect())
        .collect();
    let best = crate::hitting_set::minimum_hitting_set(&family, cfg.dp_cap)?;
    let result = if best.len() <= inst.k {
        SolveResult::yes(best, NAME)
    } else {
        SolveResult::no(NAME)
    };
    Ok(result.with_stat("hs_sets", family.len() as u64))
}

/// Every solution of minimum size, in lexicographic order; `None` when the
/// minimum exceeds `k`.
pub fn all_minimum_solutions<W: Weight>(
    inst: &TmsInstance<W>,
    cfg: &SolverConfig,
) -> Result<Option<Vec<VertexSet>>, SolveError> {
    check_size(inst, cfg)?;
    let dist = Distances::new(&inst.graph);
    let table = MonitorTable::new(inst, &dist);
    for size in 0..=inst.k.min(inst.n()) {
        let sols: Vec<VertexSet> = (0..inst.n())
            .combinations(size)
            .filter(|c| table.hits(c))
            .map(|c| c.into_iter().collect())
            .collect();
        if !sols.is_empty() {
            return Ok(Some(sols));
        }
    }
    Ok(None)
}

/// Exact distance used by slack checks elsewhere.
pub fn slack_le(alpha: &Alpha, walk: Distance, shortest: Distance) -> bool {
    let p = *alpha.numer() as u128;
    let q = *alpha.denom() as u128;
    product_le(q, walk, q + p, shortest)
}
