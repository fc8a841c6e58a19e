//! Sunflowers and the effective-size kernel.

use std::collections::BTreeMap;

use super::{canonical, Element, HittingSetError, Set};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sunflower {
    pub core: Set,
    /// Indices into the searched family, ascending.
    pub petals: Vec<usize>,
}

/// All pairwise intersections equal.
pub fn is_sunflower<'a, I>(sets: I) -> bool
where
    I: IntoIterator<Item = &'a Set>,
{
    let sets: Vec<&Set> = sets.into_iter().collect();
    if sets.len() < 2 {
        return true;
    }
    let core: Set = sets[0].intersection(sets[1]).copied().collect();
    sets.iter().enumerate().all(|(i, a)| {
        sets[i + 1..]
            .iter()
            .all(|b| a.intersection(b).eq(core.iter()))
    })
}

/// Erdős–Rado search for `r` sets forming a sunflower.
///
/// A greedy maximal disjoint subfamily either has `r` members (empty core)
/// or its union meets every set, so the most frequent element lies in a
/// large share of them; recurse on those with the element removed. For sets
/// of size at most `d` this always succeeds above `d! * (r-1)^d` sets.
pub fn find_sunflower(family: &[Set], r: usize) -> Option<Sunflower> {
    assert!(r >= 2, "a sunflower needs at least two petals");
    let sets: Vec<(usize, Set)> = family.iter().cloned().enumerate().collect();
    let mut found = search(sets, r)?;
    found.petals.sort_unstable();
    debug_assert!(is_sunflower(found.petals.iter().map(|&i| &family[i])));
    Some(found)
}

fn search(sets: Vec<(usize, Set)>, r: usize) -> Option<Sunflower> {
    if sets.len() < r {
        return None;
    }
    let mut used = Set::new();
    let mut disjoint = Vec::new();
    for (i, s) in &sets {
        if s.is_disjoint(&used) {
            used.extend(s.iter().copied());
            disjoint.push(*i);
            if disjoint.len() == r {
                return Some(Sunflower {
                    core: Set::new(),
                    petals: disjoint,
                });
            }
        }
    }
    let mut freq: BTreeMap<Element, usize> = BTreeMap::new();
    for (_, s) in &sets {
        for &x in s {
            *freq.entry(x).or_default() += 1;
        }
    }
    // Highest frequency, smallest element on ties.
    let (&x, _) = freq.iter().rev().max_by_key(|&(_, &c)| c)?;
    let inner: Vec<(usize, Set)> = sets
        .into_iter()
        .filter(|(_, s)| s.contains(&x))
        .map(|(i, mut s)| {
            s.remove(&x);
            (i, s)
        })
        .collect();
    let mut found = search(inner, r)?;
    found.core.insert(x);
    Some(found)
}

/// Sets sharing a declared core; effective size is `|S \ core|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoredFamily {
    pub sets: Vec<Set>,
    pub core: Set,
}

impl CoredFamily {
    pub fn new(sets: Vec<Set>, core: Set) -> Result<Self, HittingSetError> {
        if sets.iter().any(|s| !core.is_subset(s)) {
            return Err(HittingSetError::CoreNotShared(core));
        }
        Ok(CoredFamily {
            sets: canonical(sets),
            core,
        })
    }

    /// Family with its exact core, the intersection of all sets.
    pub fn with_exact_core(sets: Vec<Set>) -> Self {
        let core = match sets.split_first() {
            Some((first, rest)) => rest
                .iter()
                .fold(first.clone(), |acc, s| acc.intersection(s).copied().collect()),
            None => Set::new(),
        };
        CoredFamily {
            sets: canonical(sets),
            core,
        }
    }

    pub fn effective_size(&self, i: usize) -> usize {
        self.sets[i].len() - self.core.len()
    }

    pub fn max_effective_size(&self) -> usize {
        (0..self.sets.len())
            .map(|i| self.effective_size(i))
            .max()
            .unwrap_or(0)
    }
}

/// `d! * (k+1)^d`, saturating.
pub fn sunflower_threshold(d: usize, k: usize) -> u128 {
    let fact = (1..=d as u128).fold(1u128, |a, b| a.saturating_mul(b));
    fact.saturating_mul((k as u128 + 1).saturating_pow(d as u32))
}

/// Shrinks each family to at most `d! * (k+1)^d` sets. While above that, a
/// sunflower with `k + 2` petals exists among the core-stripped sets; a
/// solution of size `k` must hit its core, so one petal can go.
pub fn effective_size_kernel(
    families: &[CoredFamily],
    d: usize,
    k: usize,
) -> Result<Vec<CoredFamily>, HittingSetError> {
    let threshold = sunflower_threshold(d, k);
    families
        .iter()
        .map(|fam| {
            for index in 0..fam.sets.len() {
                let size = fam.effective_size(index);
                if size > d {
                    return Err(HittingSetError::EffectiveSize { index, size, bound: d });
                }
            }
            let mut stripped: Vec<Set> = fam
                .sets
                .iter()
                .map(|s| s.difference(&fam.core).copied().collect())
                .collect();
            while stripped.len() as u128 > threshold {
                let flower = find_sunflower(&stripped, k + 2).ok_or(HittingSetError::SunflowerMissing)?;
                stripped.remove(*flower.petals.last().expect("k + 2 petals"));
            }
            let sets = stripped
                .into_iter()
                .map(|s| s.union(&fam.core).copied().collect())
                .collect();
            Ok(CoredFamily {
                sets,
                core: fam.core.clone(),
            })
        })
        .collect()
}
