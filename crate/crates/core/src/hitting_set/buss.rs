use std::collections::BTreeMap;

use super::{canonical, Element, HittingSetError, Set};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BussOutcome {
    No,
    /// Forced singletons followed by the surviving sets.
    Reduced(Vec<Set>),
}

/// Shrinks a family of 1- and 2-element sets without changing the answer at
/// budget `k`, whatever other sets sit beside it.
///
/// An element in more than `k` sets must be picked: otherwise those sets need
/// more than `k` distinct partners. It is emitted as a singleton and its sets
/// dropped. Every other element then hits at most `k` survivors, so with `f`
/// forced elements more than `(k - f) * k` survivors means NO. The output
/// therefore never exceeds `k * k` sets.
pub fn buss_reduce(f2: &[Set], k: usize) -> Result<BussOutcome, HittingSetError> {
    for (index, s) in f2.iter().enumerate() {
        if s.is_empty() || s.len() > 2 {
            return Err(HittingSetError::BadSetSize {
                index,
                size: s.len(),
            });
        }
    }
    let mut rest = canonical(f2.to_vec());
    let mut forced: Vec<Element> = Vec::new();
    loop {
        let mut count: BTreeMap<Element, usize> = BTreeMap::new();
        for s in &rest {
            for &x in s {
                *count.entry(x).or_default() += 1;
            }
        }
        let Some((&x, _)) = count.iter().find(|&(_, &c)| c > k) else {
            break;
        };
        forced.push(x);
        if forced.len() > k {
            return Ok(BussOutcome::No);
        }
        rest.retain(|s| !s.contains(&x));
    }
    if rest.len() > (k - forced.len()) * k {
        return Ok(BussOutcome::No);
    }
    let mut out: Vec<Set> = forced.into_iter().map(|x| Set::from([x])).collect();
    out.extend(rest);
    Ok(BussOutcome::Reduced(out))
}
