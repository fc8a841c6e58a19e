//! Unit-weight solver parameterized by feedback edge number.
//!
//! After peeling degree-one vertices the graph splits into at most `2t`
//! high-degree vertices and at most `3t` petal paths. A guess says which
//! high-degree vertices are picked and whether each petal gets its interval
//! optimum or one more; each guess leaves a flower instance.

mod decompose;
mod flower;
mod hpfb;
mod intervals;
mod preprocess;

use itertools::Itertools;

use crate::config::SolverConfig;
use crate::core_invariant::Pair;
use crate::error::SolveError;
use crate::graph::Distances;
use crate::instance::{SolveResult, TmsInstance};
use crate::oracle::verify_certificate;
use crate::weight::Weight;
use crate::{Vertex, VertexSet};

pub use decompose::{decompose, Decomposition};
pub use flower::{build_hpfb, random_flower, FlowerBuild, FlowerInstance};
pub use hpfb::{hpfb_brute_force, solve_hpfb};
pub use intervals::{opt_d, stab_points};
pub use preprocess::{preprocess_degree_one, Preprocessed};

const NAME: &str = "fen";
const CHUNK: usize = 256;

/// Feedback edge number `m - n + c`.
pub fn feedback_edge_number<W: Weight>(g: &crate::graph::Graph<W>) -> usize {
    g.m() + g.components().len() - g.n()
}

/// Everything shared by the guesses of one run.
#[derive(Clone, Debug)]
pub struct GuessSpace {
    pub pre: Preprocessed,
    pub dec: Decomposition,
    pub sp_sets: Vec<VertexSet>,
    /// Interval optimum per petal.
    pub opts: Vec<usize>,
    /// High-degree vertices that may be picked (the added clique never is).
    pub guessable: Vec<Vertex>,
}

impl GuessSpace {
    pub fn new(pre: Preprocessed) -> Result<Self, SolveError> {
        let h = &pre.graph;
        let dec = decompose(h)?;
        let t = feedback_edge_number(h);
        if dec.high.len() > 2 * t || dec.petals.len() > 3 * t {
            return Err(SolveError::Internal(format!(
                "{} high vertices and {} petals exceed the bounds for t = {t}",
                dec.high.len(),
                dec.petals.len()
            )));
        }
        let dist = Distances::new(h);
        let sp_sets = pre
            .pairs
            .iter()
            .map(|&(u, v)| dist.sp(u, v))
            .collect::<Result<Vec<_>, _>>()?;
        let mut opts = Vec::with_capacity(dec.petals.len());
        for p in &dec.petals {
            let place = |v: &Vertex| p.iter().position(|w| w == v);
            let intervals: Vec<(usize, usize)> = sp_sets
                .iter()
                .filter_map(|s| {
                    let at: Vec<usize> = s.iter().map(place).collect::<Option<_>>()?;
                    let (lo, hi) = (*at.iter().min()?, *at.iter().max()?);
                    if hi - lo + 1 != at.len() {
                        return Some(Err(SolveError::Internal(format!("{s:?} is not a subpath"))));
                    }
                    Some(Ok((lo, hi)))
                })
                .collect::<Result<_, _>>()?;
            opts.push(opt_d(p.len(), &intervals)?);
        }
        let guessable = dec.high.iter().copied().filter(|v| !pre.clique.contains(v)).collect();
        Ok(GuessSpace { pre, dec, sp_sets, opts, guessable })
    }

    /// Number of binary guess coordinates.
    pub fn width(&self) -> usize {
        self.guessable.len() + self.dec.petals.len()
    }

    /// Coordinates set to one, as `(picked high vertices, extra per petal)`.
    pub fn split(&self, ones: &[usize]) -> (VertexSet, Vec<bool>) {
        let a = self.guessable.len();
        let mut extra = vec![false; self.dec.petals.len()];
        let mut high = VertexSet::new();
        for &i in ones {
            if i < a {
                high.insert(self.guessable[i]);
            } else {
                extra[i - a] = true;
            }
        }
        (high, extra)
    }

    /// Solution on the compacted graph for one guess, if any.
    pub fn try_guess(&self, ones: &[usize]) -> Result<Option<VertexSet>, SolveError> {
        let (high, extra) = self.split(ones);
        let Some(build) =
            build_hpfb(self.pre.graph.n(), &self.dec, &self.sp_sets, &self.opts, &high, &extra)?
        else {
            return Ok(None);
        };
        Ok(solve_hpfb(&build.flower)?.map(|s| high.into_iter().chain(s).collect()))
    }

    /// Guesses within budget: by number of ones, then lexicographically.
    pub fn guesses(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let base: usize = self.opts.iter().sum();
        let spare = self.pre.k.checked_sub(base);
        let width = self.width();
        (0..=spare.map_or(0, |r| r.min(width)))
            .filter(move |_| spare.is_some())
            .flat_map(move |c| (0..width).combinations(c))
    }
}

pub fn solve_fen<W: Weight>(inst: &TmsInstance<W>, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    crate::cluster::require_plain_unit(inst, NAME)?;
    let t0 = feedback_edge_number(&inst.graph);
    if t0 > cfg.fen_cap {
        return Err(SolveError::CapExceeded {
            what: "feedback edge number",
            limit: cfg.fen_cap,
            actual: t0,
        });
    }
    let Some(pre) = preprocess_degree_one(inst) else {
        return Ok(SolveResult::no(NAME).with_stat("fen", t0 as u64));
    };
    let forced = pre.forced.clone();
    let remaining: Vec<Pair> = pre.pairs.clone();
    let space = GuessSpace::new(pre)?;
    // The clique adds three to the feedback edge number but is never
    // guessed, so the bounds hold for the input's own `t`.
    let (a, d) = (space.guessable.len(), space.dec.petals.len());
    if a > 2 * t0 || d > 3 * t0 || a + d > 5 * t0 {
        return Err(SolveError::Internal(format!(
            "{a} guessable vertices and {d} petals exceed the bounds for t = {t0}"
        )));
    }

    let lift = |s: VertexSet| -> VertexSet {
        s.into_iter()
            .filter_map(|v| space.pre.orig_of[v])
            .chain(forced.iter().copied())
            .collect()
    };
    let mut explored = 0u64;
    let mut found = None;
    if remaining.is_empty() {
        explored = 1;
        found = Some(lift(VertexSet::new()));
    } else {
        let mut stream = space.guesses();
        loop {
            let chunk: Vec<Vec<usize>> = stream.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            let hit = cfg.find_first(chunk.len(), |i| match space.try_guess(&chunk[i]) {
                Ok(None) => None,
                Ok(Some(s)) => Some(Ok((i, s))),
                Err(e) => Some(Err(e)),
            });
            match hit {
                Some(Err(e)) => return Err(e),
                Some(Ok((i, s))) => {
                    explored += i as u64 + 1;
                    found = Some(lift(s));
                    break;
                }
                None => explored += chunk.len() as u64,
            }
        }
    }

    let mut result = match found {
        Some(cert) => {
            if cert.len() > inst.k || !verify_certificate(inst, &cert) {
                return Err(SolveError::Internal(format!("fen certificate {cert:?} does not verify")));
            }
            SolveResult::yes(cert, NAME)
        }
        None => SolveResult::no(NAME),
    };
    result.add_stat("fen", t0 as u64);
    result.add_stat("forced", forced.len() as u64);
    result.add_stat("high_vertices", space.dec.high.len() as u64);
    result.add_stat("guessable_high", space.guessable.len() as u64);
    result.add_stat("petals", space.dec.petals.len() as u64);
    result.add_stat("guess_width", space.width() as u64);
    result.add_stat("guesses_explored", explored);
    Ok(result)
}
