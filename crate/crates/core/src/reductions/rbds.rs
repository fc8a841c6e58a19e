//! Red-blue domination to TMS: every red vertex gets a twin with the same
//! blue neighbors, and each red vertex is paired with its twin.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::TmsInstance;
use crate::{Graph, VertexSet};

use super::ReductionError;

/// Blue vertices `0..blue`, red vertices `0..red`; an edge `(b, r)` joins
/// blue `b` to red `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbdsInstance {
    pub blue: usize,
    pub red: usize,
    pub edges: Vec<(usize, usize)>,
    pub k: usize,
}

impl RbdsInstance {
    /// Each blue-red edge independently with probability `p`; a red vertex
    /// left without neighbors gets one uniformly random blue neighbor, so
    /// the instance is never trivially unsolvable when `blue > 0`.
    pub fn random(blue: usize, red: usize, k: usize, p: f64, seed: u64) -> Result<Self, ReductionError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(ReductionError::BadSource(format!("edge probability {p}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for r in 0..red {
            let before = edges.len();
            edges.extend((0..blue).filter(|_| rng.random_bool(p)).map(|b| (b, r)));
            if edges.len() == before && blue > 0 {
                edges.push((rng.random_range(0..blue), r));
            }
        }
        edges.sort_unstable();
        Ok(RbdsInstance { blue, red, edges, k })
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        if let Some(&(b, r)) = self.edges.iter().find(|&&(b, r)| b >= self.blue || r >= self.red) {
            return Err(ReductionError::BadSource(format!("edge ({b}, {r}) out of range")));
        }
        if let Some(e) = self.edges.iter().duplicates().next() {
            return Err(ReductionError::BadSource(format!("edge {e:?} listed twice")));
        }
        Ok(())
    }

    pub fn dominates(&self, picked: &VertexSet) -> bool {
        picked.len() <= self.k
            && (0..self.red).all(|r| self.edges.iter().any(|&(b, q)| q == r && picked.contains(&b)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RbdsGadget {
    /// Blue `b` is vertex `b`, red `r` is `blue + r`, its twin `blue + red + r`.
    Instance(TmsInstance),
    /// A red vertex without blue neighbors: the source has no solution and
    /// its twin pair would span two components.
    TriviallyNo { red: usize },
}

pub fn gen_from_rbds(r: &RbdsInstance) -> Result<RbdsGadget, ReductionError> {
    r.validate()?;
    if let Some(red) = (0..r.red).find(|&x| r.edges.iter().all(|&(_, q)| q != x)) {
        return Ok(RbdsGadget::TriviallyNo { red });
    }
    let (nb, nr) = (r.blue, r.red);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(2 * r.edges.len());
    for &(b, q) in &r.edges {
        edges.push((b, nb + q));
        edges.push((b, nb + nr + q));
    }
    let g = Graph::from_edges(nb + 2 * nr, edges).map_err(crate::instance::InstanceError::from)?;
    let pairs = (0..nr).map(|q| (nb + q, nb + nr + q)).collect();
    Ok(RbdsGadget::Instance(TmsInstance::plain(g, pairs, r.k)?))
}

/// Smallest dominating blue set within budget, lexicographically first.
pub fn rbds_brute_force(r: &RbdsInstance) -> Option<VertexSet> {
    (0..=r.k.min(r.blue))
        .flat_map(|size| (0..r.blue).combinations(size))
        .map(|c| c.into_iter().collect::<VertexSet>())
        .find(|s| r.dominates(s))
}
