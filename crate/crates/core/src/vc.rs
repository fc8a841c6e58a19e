//! Weighted solver parameterized by vertex cover number.
//!
//! For a cover `C`, guess which cover pairs `{a, b}` (diagonal included)
//! have their shortest-path set hit by the solution. Pairs guessed "missed"
//! rule out their whole set `S0`; pairs guessed "hit" become sets to hit
//! outside `S0`. A terminal pair not already implied by one of those can only
//! be monitored at its own endpoints, so it contributes a set of at most two
//! vertices, which the Buss rule shrinks.

use std::collections::BTreeMap;

use crate::config::SolverConfig;
use crate::core_invariant::Pair;
use crate::error::SolveError;
use crate::graph::{compute_parameter, is_vertex_cover, Distances, ParameterKind, Witness};
use crate::hitting_set::{buss_reduce, minimum_hitting_set, BussOutcome, HittingSetInstance, Set};
use crate::instance::{SolveResult, TmsInstance};
use crate::oracle::verify_with;
use crate::weight::Weight;
use crate::{Vertex, VertexSet};

/// A guess over the cover pairs: `bits[i]` belongs to `pairs[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityMatrix {
    pub cover: Vec<Vertex>,
    pub pairs: Vec<Pair>,
    pub bits: Vec<bool>,
}

impl CompatibilityMatrix {
    /// Cover pairs `(a, b)`, `a <= b`, in the same component, in
    /// lexicographic order; guess `index` sets bit `i` from bit `i` of the
    /// index.
    pub fn from_index(cover: &[Vertex], dist: &Distances, index: u64) -> Self {
        let pairs = cover_pairs(cover, dist);
        let bits = (0..pairs.len()).map(|i| index >> i & 1 == 1).collect();
        CompatibilityMatrix {
            cover: cover.to_vec(),
            pairs,
            bits,
        }
    }

    pub fn get(&self, a: Vertex, b: Vertex) -> bool {
        let p = (a.min(b), a.max(b));
        self.pairs
            .iter()
            .position(|&q| q == p)
            .is_some_and(|i| self.bits[i])
    }
}

fn cover_pairs(cover: &[Vertex], dist: &Distances) -> Vec<Pair> {
    let mut out = Vec::new();
    for (i, &a) in cover.iter().enumerate() {
        for &b in &cover[i..] {
            if dist.get(a, b).is_some() {
                out.push((a.min(b), a.max(b)));
            }
        }
    }
    out
}

/// Hitting-set instance for one guess plus bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessInstance {
    pub s0: Set,
    /// Sets from cover pairs guessed "hit".
    pub f1: Vec<Set>,
    /// Endpoint sets of the terminal pairs not implied by `f1`.
    pub f2: Vec<Set>,
    /// Terminal pairs implied by some `f1` set.
    pub implied: usize,
    /// Single-vertex sets in `f2` (an independent endpoint whose partner is
    /// a cover vertex ruled out by `S0`).
    pub forced: usize,
}

impl GuessInstance {
    pub fn to_hitting_set(&self, n: usize, k: usize) -> HittingSetInstance {
        let universe: Set = (0..n).filter(|v| !self.s0.contains(v)).collect();
        HittingSetInstance::new(universe, [self.f1.clone(), self.f2.clone()].concat(), k)
            .expect("sets avoid S0 and are nonempty")
    }
}

/// Builds the hitting-set side of guess `m`, or `None` when no solution can
/// follow the guess (some required set lies inside `S0`).
pub fn build_hs_for_matrix<W: Weight>(
    inst: &TmsInstance<W>,
    dist: &Distances,
    m: &CompatibilityMatrix,
) -> Result<Option<GuessInstance>, SolveError> {
    let sp = |(a, b): Pair| dist.sp(a, b);
    let mut s0 = Set::new();
    for (&p, &bit) in m.pairs.iter().zip(&m.bits) {
        if !bit {
            s0.extend(sp(p)?);
        }
    }
    let outside = |p: Pair| -> Result<Set, SolveError> { Ok(sp(p)?.difference(&s0).copied().collect()) };
    let mut f1 = Vec::new();
    for (&p, &bit) in m.pairs.iter().zip(&m.bits) {
        if bit {
            let s = outside(p)?;
            if s.is_empty() {
                return Ok(None);
            }
            f1.push(s);
        }
    }
    let in_cover: VertexSet = m.cover.iter().copied().collect();
    let mut f2 = Vec::new();
    let mut implied = 0;
    let mut forced = 0;
    for &(u, v) in &inst.terminals {
        let s = outside((u, v))?;
        if s.is_empty() {
            return Ok(None);
        }
        if f1.iter().any(|f| f.is_subset(&s)) {
            implied += 1;
            continue;
        }
        // Interior vertices are in S0 or the pair would be implied.
        let ends: Set = [u, v].into_iter().filter(|x| !s0.contains(x)).collect();
        if s != ends {
            return Err(SolveError::Internal(format!(
                "pair ({u}, {v}) keeps interior vertices {s:?} outside S0"
            )));
        }
        if s.len() == 1 && u != v && [u, v].iter().any(|x| in_cover.contains(x)) {
            forced += 1;
        }
        f2.push(s);
    }
    Ok(Some(GuessInstance {
        s0,
        f1,
        f2,
        implied,
        forced,
    }))
}

/// Checks that `s` hits exactly the cover pairs the guess says it hits.
pub fn is_consistent(dist: &Distances, m: &CompatibilityMatrix, s: &Set) -> bool {
    m.pairs.iter().zip(&m.bits).all(|(&(a, b), &bit)| {
        let hit = dist.sp(a, b).is_ok_and(|sp| !sp.is_disjoint(s));
        hit == bit
    })
}

fn resolve_cover<W: Weight>(
    inst: &TmsInstance<W>,
    cover: Option<&VertexSet>,
    cfg: &SolverConfig,
) -> Result<Vec<Vertex>, SolveError> {
    let c = match cover {
        Some(c) => {
            if !is_vertex_cover(&inst.graph, c) {
                return Err(SolveError::Precondition(format!("{c:?} is not a vertex cover")));
            }
            c.clone()
        }
        None => match compute_parameter(&inst.graph, ParameterKind::VertexCover, cfg.cover_cap)?.witness {
            Witness::Vertices(c) => c,
            _ => unreachable!("vertex cover yields a vertex set"),
        },
    };
    if c.len() > cfg.cover_cap {
        return Err(SolveError::CapExceeded {
            what: "vertex cover",
            limit: cfg.cover_cap,
            actual: c.len(),
        });
    }
    Ok(c.into_iter().collect())
}

pub fn solve_vc<W: Weight>(
    inst: &TmsInstance<W>,
    cover: Option<&VertexSet>,
    cfg: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    const NAME: &str = "vc";
    if !inst.is_plain() {
        return Err(SolveError::Precondition("vc solver needs alpha = 0".into()));
    }
    let cover = resolve_cover(inst, cover, cfg)?;
    let dist = Distances::new(&inst.graph);
    let k = inst.k;

    // The cover meets every pair at distance at least one; degenerate pairs
    // outside it need their own vertex.
    let mut easy: Set = cover.iter().copied().collect();
    easy.extend(inst.terminals.iter().filter(|(u, v)| u == v).map(|&(u, _)| u));
    if easy.len() <= k {
        return Ok(SolveResult::yes(easy, NAME)
            .with_stat("cover", cover.len() as u64)
            .with_stat("guesses_explored", 0));
    }

    let bits = cover_pairs(&cover, &dist).len();
    let guesses = 1usize << bits;
    let attempt = |index: usize| -> Option<Result<(Set, BTreeMap<String, u64>), SolveError>> {
        let m = CompatibilityMatrix::from_index(&cover, &dist, index as u64);
        let built = match build_hs_for_matrix(inst, &dist, &m) {
            Ok(Some(b)) => b,
            Ok(None) => return None,
            Err(e) => return Some(Err(e)),
        };
        let f3 = match buss_reduce(&built.f2, k) {
            Ok(BussOutcome::No) => return None,
            Ok(BussOutcome::Reduced(f3)) => f3,
            Err(e) => return Some(Err(e.into())),
        };
        let family: Vec<Set> = built.f1.iter().cloned().chain(f3).collect();
        let size_bound = cover.len() * cover.len() + k * k + k;
        if family.len() > size_bound {
            return Some(Err(SolveError::Internal(format!(
                "guess {index} built {} sets, above t^2 + k^2 + k",
                family.len()
            ))));
        }
        let best = match minimum_hitting_set(&family, cfg.dp_cap) {
            Ok(b) => b,
            Err(e) => return Some(Err(e.into())),
        };
        if best.len() > k {
            return None;
        }
        if !is_consistent(&dist, &m, &best) {
            return Some(Err(SolveError::Internal(format!(
                "certificate {best:?} breaks guess {index}"
            ))));
        }
        let stats = BTreeMap::from([
            ("winning_guess".to_string(), index as u64),
            ("guesses_explored".to_string(), index as u64 + 1),
            ("hs_sets".to_string(), family.len() as u64),
            ("implied_pairs".to_string(), built.implied as u64),
            ("forced_singletons".to_string(), built.forced as u64),
        ]);
        Some(Ok((best, stats)))
    };

    let mut result = match cfg.find_first(guesses, attempt) {
        Some(Err(e)) => return Err(e),
        Some(Ok((cert, stats))) => {
            if !verify_with(inst, &dist, &cert) {
                return Err(SolveError::Internal(format!("vc certificate {cert:?} does not verify")));
            }
            let mut r = SolveResult::yes(cert, NAME);
            r.stats = stats;
            r
        }
        None => SolveResult::no(NAME).with_stat("guesses_explored", guesses as u64),
    };
    result.add_stat("cover", cover.len() as u64);
    result.add_stat("guesses", guesses as u64);
    Ok(result)
}
