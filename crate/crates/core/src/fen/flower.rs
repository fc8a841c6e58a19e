//! Flower instances: a core `z` that may not be picked, petal paths whose
//! ends both touch `z`, and a per-petal budget.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SolveError;
use crate::{Vertex, VertexSet};

use super::Decomposition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowerInstance {
    pub z: Vertex,
    /// Each petal end to end; both ends are adjacent to `z`.
    pub petals: Vec<Vec<Vertex>>,
    /// Sets to hit; each induces a simple path of the flower.
    pub paths: Vec<VertexSet>,
    /// Exact number of picks per petal, at least one.
    pub budgets: Vec<usize>,
}

impl FlowerInstance {
    pub fn edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        let mut out = BTreeSet::new();
        let mut add = |a: Vertex, b: Vertex| {
            out.insert((a.min(b), a.max(b)));
        };
        for p in &self.petals {
            for w in p.windows(2) {
                add(w[0], w[1]);
            }
            add(self.z, p[0]);
            add(self.z, p[p.len() - 1]);
        }
        out
    }

    /// Petal index and position of every petal vertex.
    pub fn positions(&self) -> BTreeMap<Vertex, (usize, usize)> {
        let mut out = BTreeMap::new();
        for (i, p) in self.petals.iter().enumerate() {
            for (j, &v) in p.iter().enumerate() {
                out.insert(v, (i, j));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.budgets.len() != self.petals.len() {
            return Err("one budget per petal".into());
        }
        if self.budgets.contains(&0) {
            return Err("budgets must be positive".into());
        }
        if self.petals.iter().any(Vec::is_empty) {
            return Err("empty petal".into());
        }
        let pos = self.positions();
        let total: usize = self.petals.iter().map(Vec::len).sum();
        if pos.len() != total || pos.contains_key(&self.z) {
            return Err("petals must be disjoint and avoid z".into());
        }
        let edges = self.edges();
        for (i, path) in self.paths.iter().enumerate() {
            if let Some(v) = path.iter().find(|&&v| v != self.z && !pos.contains_key(&v)) {
                return Err(format!("path {i} uses unknown vertex {v}"));
            }
            if !induces_simple_path(&edges, path) {
                return Err(format!("path {i} does not induce a simple path"));
            }
        }
        Ok(())
    }

    pub fn is_solution(&self, s: &VertexSet) -> bool {
        let pos = self.positions();
        let mut used = vec![0; self.petals.len()];
        for v in s {
            match pos.get(v) {
                Some(&(i, _)) => used[i] += 1,
                None => return false,
            }
        }
        used == self.budgets && self.paths.iter().all(|p| !p.is_disjoint(s))
    }
}

fn induces_simple_path(edges: &BTreeSet<(Vertex, Vertex)>, set: &VertexSet) -> bool {
    if set.is_empty() {
        return false;
    }
    let inner: Vec<&(Vertex, Vertex)> = edges
        .iter()
        .filter(|(a, b)| set.contains(a) && set.contains(b))
        .collect();
    let mut degree: BTreeMap<Vertex, usize> = BTreeMap::new();
    for &&(a, b) in &inner {
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
    }
    if inner.len() + 1 != set.len() || degree.values().any(|&d| d > 2) {
        return false;
    }
    // A forest with |V| - 1 edges is a tree.
    let mut parent: BTreeMap<Vertex, Vertex> = set.iter().map(|&v| (v, v)).collect();
    fn root(parent: &mut BTreeMap<Vertex, Vertex>, v: Vertex) -> Vertex {
        let p = parent[&v];
        if p == v {
            return v;
        }
        let r = root(parent, p);
        parent.insert(v, r);
        r
    }
    for &&(a, b) in &inner {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent.insert(ra, rb);
    }
    true
}

/// Flower built for one guess, with the decomposition petal behind each
/// flower petal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowerBuild {
    pub flower: FlowerInstance,
    pub petal_of: Vec<usize>,
}

/// Guess data: `high_picked` are the high-degree vertices in the solution,
/// petal `i` gets `opts[i] + extra[i]` vertices.
///
/// Sets hit by `high_picked`, or containing a whole petal with a positive
/// budget, are settled. Zero-budget petals are dropped from the remaining
/// sets and every unpicked high-degree vertex merges into `z` (id `n`).
/// Returns `None` when some set is left with nothing but `z`.
pub fn build_hpfb(
    n: usize,
    dec: &Decomposition,
    sp_sets: &[VertexSet],
    opts: &[usize],
    high_picked: &VertexSet,
    extra: &[bool],
) -> Result<Option<FlowerBuild>, SolveError> {
    let z = n;
    let budgets: Vec<usize> = opts.iter().zip(extra).map(|(&o, &e)| o + usize::from(e)).collect();
    let mut keep = vec![false; n];
    for (i, p) in dec.petals.iter().enumerate() {
        if budgets[i] > 0 {
            for &v in p {
                keep[v] = true;
            }
        }
    }
    let mut paths = Vec::new();
    'sets: for s in sp_sets {
        if !s.is_disjoint(high_picked) {
            continue;
        }
        for (i, p) in dec.petals.iter().enumerate() {
            if budgets[i] > 0 && p.iter().all(|v| s.contains(v)) {
                continue 'sets;
            }
        }
        let mut out: VertexSet = s.iter().copied().filter(|&v| keep[v]).collect();
        if out.len() < s.len() {
            out.insert(z);
        }
        if out.len() == 1 && out.contains(&z) {
            return Ok(None);
        }
        paths.push(out);
    }
    paths.sort();
    paths.dedup();
    let petal_of: Vec<usize> = (0..dec.petals.len()).filter(|&i| budgets[i] > 0).collect();
    let flower = FlowerInstance {
        z,
        petals: petal_of.iter().map(|&i| dec.petals[i].clone()).collect(),
        paths,
        budgets: petal_of.iter().map(|&i| budgets[i]).collect(),
    };
    flower
        .validate()
        .map_err(|e| SolveError::Internal(format!("flower construction: {e}")))?;
    Ok(Some(FlowerBuild { flower, petal_of }))
}

/// Random valid flower with up to four petals of length at most six, at
/// most eight paths and budgets of one or two.
pub fn random_flower(seed: u64) -> FlowerInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut rng;
    let count = rng.random_range(1..=4);
    let mut petals = Vec::new();
    let mut next = 0;
    for _ in 0..count {
        let len = rng.random_range(1..=6);
        petals.push((next..next + len).collect::<Vec<_>>());
        next += len;
    }
    let z = next;
    let budgets = (0..count).map(|_| rng.random_range(1..=2)).collect();
    // Longest arm from one end that leaves the petal a path with z.
    let reach = |len: usize| if len == 1 { 1 } else { len - 1 };
    let mut paths = Vec::new();
    for _ in 0..rng.random_range(0..=8) {
        let i = rng.random_range(0..count);
        let p: &Vec<usize> = &petals[i];
        let len = p.len();
        let set: VertexSet = match rng.random_range(0..10) {
            0..=2 => {
                let a = rng.random_range(0..len);
                let b = rng.random_range(0..len);
                p[a.min(b)..=a.max(b)].iter().copied().collect()
            }
            3..=5 => {
                let depth = rng.random_range(1..=reach(len));
                let arm: Vec<usize> = if rng.random_bool(0.5) {
                    p[..depth].to_vec()
                } else {
                    p[len - depth..].to_vec()
                };
                arm.into_iter().chain([z]).collect()
            }
            6 if len >= 3 => {
                let a = rng.random_range(1..=len - 2);
                let c = rng.random_range(1..=len - 1 - a);
                p[..a].iter().chain(&p[len - c..]).copied().chain([z]).collect()
            }
            9 if rng.random_bool(0.1) => VertexSet::from([z]),
            _ => {
                let j = rng.random_range(0..count);
                if j == i {
                    continue;
                }
                let q = &petals[j];
                let d1 = rng.random_range(1..=reach(len));
                let d2 = rng.random_range(1..=reach(q.len()));
                let first = if rng.random_bool(0.5) { &p[..d1] } else { &p[len - d1..] };
                let second = if rng.random_bool(0.5) { &q[..d2] } else { &q[q.len() - d2..] };
                first.iter().chain(second).copied().chain([z]).collect()
            }
        };
        paths.push(set);
    }
    FlowerInstance { z, petals, paths, budgets }
}
