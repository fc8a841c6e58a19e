//! Hitting set: exact subset DP, brute force, and the kernelization rules
//! the graph solvers feed into.

mod buss;
mod sunflower;

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::instance::SolveResult;

pub use buss::{buss_reduce, BussOutcome};
pub use sunflower::{
    effective_size_kernel, find_sunflower, is_sunflower, sunflower_threshold, CoredFamily, Sunflower,
};

pub type Element = usize;
pub type Set = BTreeSet<Element>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HittingSetError {
    #[error("set {0} of the family is empty")]
    EmptySet(usize),
    #[error("element {0} is not in the universe")]
    NotInUniverse(Element),
    #[error("{what} is {actual}, above the cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("set {index} has {size} elements; expected 1 or 2")]
    BadSetSize { index: usize, size: usize },
    #[error("set {index} has effective size {size}, above the bound {bound}")]
    EffectiveSize {
        index: usize,
        size: usize,
        bound: usize,
    },
    #[error("core {0:?} is not contained in every set")]
    CoreNotShared(Set),
    #[error("no sunflower found in a family above the sunflower threshold")]
    SunflowerMissing,
}

/// Universe, family and budget. Sets are deduplicated and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSetInstance {
    pub universe: Set,
    pub family: Vec<Set>,
    pub k: usize,
}

impl HittingSetInstance {
    pub fn new(universe: Set, family: Vec<Set>, k: usize) -> Result<Self, HittingSetError> {
        for (i, s) in family.iter().enumerate() {
            if s.is_empty() {
                return Err(HittingSetError::EmptySet(i));
            }
            if let Some(&x) = s.iter().find(|x| !universe.contains(x)) {
                return Err(HittingSetError::NotInUniverse(x));
            }
        }
        Ok(HittingSetInstance {
            universe,
            family: canonical(family),
            k,
        })
    }

    /// Universe taken as the union of the family.
    pub fn from_family(family: Vec<Set>, k: usize) -> Result<Self, HittingSetError> {
        let universe = family.iter().flatten().copied().collect();
        Self::new(universe, family, k)
    }
}

pub(crate) fn canonical(mut family: Vec<Set>) -> Vec<Set> {
    family.sort();
    family.dedup();
    family
}

pub fn hits_all(family: &[Set], s: &Set) -> bool {
    family.iter().all(|f| !f.is_disjoint(s))
}

/// Drops every set that strictly contains another; hitting the smaller one
/// hits it too.
pub fn remove_supersets(family: &[Set]) -> Vec<Set> {
    let mut sorted = canonical(family.to_vec());
    sorted.sort_by_key(|s| s.len());
    let mut kept: Vec<Set> = Vec::new();
    for s in sorted {
        if !kept.iter().any(|t| t.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Minimum hitting set by DP over subsets of the family.
///
/// `dp[mask]` is the fewest elements hitting every set in `mask`; the lowest
/// set in `mask` must be hit by one of its own elements, which gives the
/// recurrence. Fails if the family, after superset removal, is above `cap`.
pub fn minimum_hitting_set(family: &[Set], cap: usize) -> Result<Set, HittingSetError> {
    if let Some(i) = family.iter().position(|s| s.is_empty()) {
        return Err(HittingSetError::EmptySet(i));
    }
    let family = remove_supersets(family);
    let m = family.len();
    if m > cap || m > 30 {
        return Err(HittingSetError::CapExceeded {
            what: "hitting-set family",
            limit: cap.min(30),
            actual: m,
        });
    }
    if m == 0 {
        return Ok(Set::new());
    }
    let elements: Vec<Element> = family.iter().flatten().copied().sorted().dedup().collect();
    let cover = |e: Element| -> u32 {
        family
            .iter()
            .enumerate()
            .filter(|(_, s)| s.contains(&e))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    };
    let cov: std::collections::BTreeMap<Element, u32> =
        elements.iter().map(|&e| (e, cover(e))).collect();
    let options: Vec<Vec<u32>> = family
        .iter()
        .map(|s| s.iter().map(|e| cov[e]).collect())
        .collect();

    let full: u32 = (1u32 << m) - 1;
    let mut dp = vec![0u8; full as usize + 1];
    for mask in 1..=full {
        let i = mask.trailing_zeros() as usize;
        dp[mask as usize] = 1 + options[i]
            .iter()
            .map(|&c| dp[(mask & !c) as usize])
            .min()
            .expect("sets are nonempty");
    }

    let mut chosen = Set::new();
    let mut mask = full;
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        let want = dp[mask as usize] - 1;
        let e = *family[i]
            .iter()
            .find(|e| dp[(mask & !cov[e]) as usize] == want)
            .expect("some element realizes the minimum");
        chosen.insert(e);
        mask &= !cov[&e];
    }
    Ok(chosen)
}

pub fn hs_solve_dp(inst: &HittingSetInstance, cap: usize) -> Result<SolveResult, HittingSetError> {
    let best = minimum_hitting_set(&inst.family, cap)?;
    let size = remove_supersets(&inst.family).len() as u64;
    let result = if best.len() <= inst.k {
        SolveResult::yes(best, "hitting-dp")
    } else {
        SolveResult::no("hitting-dp")
    };
    Ok(result.with_stat("hs_sets", size))
}

/// Exhaustive search by increasing size over the universe; the certificate
/// is the lexicographically least minimum hitting set.
pub fn hs_brute_force(inst: &HittingSetInstance, cap: usize) -> Result<SolveResult, HittingSetError> {
    let u = inst.universe.len();
    if u > cap {
        return Err(HittingSetError::CapExceeded {
            what: "hitting-set universe",
            limit: cap,
            actual: u,
        });
    }
    let mut tried = 0u64;
    for size in 0..=inst.k.min(u) {
        for combo in inst.universe.iter().copied().combinations(size) {
            tried += 1;
            let s: Set = combo.into_iter().collect();
            if hits_all(&inst.family, &s) {
                return Ok(SolveResult::yes(s, "hitting-bruteforce").with_stat("subsets", tried));
            }
        }
    }
    Ok(SolveResult::no("hitting-bruteforce").with_stat("subsets", tried))
}
