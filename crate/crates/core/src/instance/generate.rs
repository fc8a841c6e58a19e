//! Seeded instance generators. Equal specs give identical instances.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::TmsInstance;
use crate::graph::{ensure_connected, Graph};
use crate::{Alpha, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("{requested} terminal pairs requested but only {available} exist")]
    TooManyPairs { requested: usize, available: usize },
    #[error("invalid generator parameter: {0}")]
    BadParameter(String),
}

/// Shared knobs. `weights` is an inclusive range; `degenerate` allows
/// `{v, v}` pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomSpec {
    pub n: usize,
    pub edge_prob: f64,
    pub num_terminals: usize,
    pub k: usize,
    pub weights: (u64, u64),
    pub seed: u64,
    pub degenerate: bool,
}

impl RandomSpec {
    pub fn new(n: usize, edge_prob: f64, num_terminals: usize, k: usize, seed: u64) -> Self {
        RandomSpec {
            n,
            edge_prob,
            num_terminals,
            k,
            weights: (1, 1),
            seed,
            degenerate: true,
        }
    }

    fn check(&self) -> Result<ChaCha8Rng, GenError> {
        if !(0.0..=1.0).contains(&self.edge_prob) {
            return Err(GenError::BadParameter(format!("edge probability {}", self.edge_prob)));
        }
        let (lo, hi) = self.weights;
        if lo == 0 || lo > hi {
            return Err(GenError::BadParameter(format!("weight range {lo}..={hi}")));
        }
        let available = pair_count(self.n, self.degenerate);
        if self.num_terminals > available {
            return Err(GenError::TooManyPairs {
                requested: self.num_terminals,
                available,
            });
        }
        Ok(ChaCha8Rng::seed_from_u64(self.seed))
    }

    fn weight(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.random_range(self.weights.0..=self.weights.1)
    }
}

fn pair_count(n: usize, degenerate: bool) -> usize {
    if degenerate {
        n * (n + 1) / 2
    } else {
        n * n.saturating_sub(1) / 2
    }
}

/// Distinct pairs over `0..n`, sorted.
fn sample_pairs(rng: &mut ChaCha8Rng, n: usize, count: usize, degenerate: bool) -> Vec<(Vertex, Vertex)> {
    let all: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u..n).map(move |v| (u, v)))
        .filter(|&(u, v)| degenerate || u != v)
        .collect();
    let mut picked: Vec<(Vertex, Vertex)> = index::sample(rng, all.len(), count)
        .into_iter()
        .map(|i| all[i])
        .collect();
    picked.sort_unstable();
    picked
}

fn finish(
    spec: &RandomSpec,
    rng: &mut ChaCha8Rng,
    graph: Graph<u64>,
) -> Result<TmsInstance<u64>, GenError> {
    let n = graph.n();
    let connected = ensure_connected(&graph, &[]).expect("no pairs yet");
    let pairs = sample_pairs(rng, n, spec.num_terminals, spec.degenerate);
    Ok(TmsInstance::new(connected.graph, pairs, spec.k, Alpha::new(0, 1))
        .expect("generated pairs are distinct and the graph is connected"))
}

/// Relabels `edges` through a random permutation so structure does not
/// line up with vertex ids.
fn shuffled_graph(
    spec: &RandomSpec,
    rng: &mut ChaCha8Rng,
    n: usize,
    edges: &[(Vertex, Vertex)],
) -> Graph<u64> {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let mut g = Graph::new(n);
    for &(u, v) in edges {
        let w = spec.weight(rng);
        g.add_weighted_edge(perm[u], perm[v], w)
            .expect("generator edges are simple");
    }
    g
}

/// Erdős–Rényi graph, joined through a hub vertex if disconnected. Pairs are
/// drawn over the original `n` vertices.
pub fn gen_random(spec: &RandomSpec) -> Result<TmsInstance<u64>, GenError> {
    let mut rng = spec.check()?;
    let mut g = Graph::new(spec.n);
    for u in 0..spec.n {
        for v in u + 1..spec.n {
            if rng.random_bool(spec.edge_prob) {
                let w = spec.weight(&mut rng);
                g.add_weighted_edge(u, v, w).expect("fresh pair");
            }
        }
    }
    let connected = ensure_connected(&g, &[]).expect("no pairs yet");
    let pairs = sample_pairs(&mut rng, spec.n, spec.num_terminals, spec.degenerate);
    Ok(TmsInstance::new(connected.graph, pairs, spec.k, Alpha::new(0, 1))
        .expect("generated pairs are distinct and the graph is connected"))
}

/// Random cliques plus `q` modulator vertices with random attachments.
/// Distance to cluster is at most `q` (at most 1 when `q = 0`, from the hub).
pub fn gen_cluster_like(spec: &RandomSpec, q: usize) -> Result<TmsInstance<u64>, GenError> {
    let mut rng = spec.check()?;
    let n = spec.n;
    if q > n {
        return Err(GenError::BadParameter(format!("modulator {q} larger than n = {n}")));
    }
    let mut edges = Vec::new();
    let mut clique_start = q;
    let mut reps = Vec::new();
    while clique_start < n {
        let size = rng.random_range(1..=(n - clique_start).min(4));
        let members = clique_start..clique_start + size;
        reps.push(clique_start);
        for u in members.clone() {
            for v in u + 1..members.end {
                edges.push((u, v));
            }
        }
        clique_start += size;
    }
    for m in 0..q {
        for v in m + 1..n {
            if rng.random_bool(spec.edge_prob) {
                edges.push((m, v));
            }
        }
    }
    if q > 0 {
        // Tie stray cliques to modulator vertex 0 so no hub is needed.
        let probe = Graph::<u64>::from_edges(n, edges.iter().copied()).expect("simple");
        let label = probe.component_ids();
        for r in reps {
            if label[r] != label[0] && !edges.contains(&(0, r)) {
                edges.push((0, r));
            }
        }
    }
    let g = shuffled_graph(spec, &mut rng, n, &edges);
    finish(spec, &mut rng, g)
}

/// Blow-up of a connected random type graph on `t` classes, each class a
/// clique or an independent set. Neighborhood diversity is at most `t`.
pub fn gen_nd_like(spec: &RandomSpec, t: usize) -> Result<TmsInstance<u64>, GenError> {
    let mut rng = spec.check()?;
    let n = spec.n;
    if t == 0 || t > n {
        return Err(GenError::BadParameter(format!("{t} classes for n = {n}")));
    }
    let mut class: Vec<usize> = (0..t).collect();
    class.extend((t..n).map(|_| rng.random_range(0..t)));
    // A single class must be a clique to stay connected.
    let clique: Vec<bool> = (0..t).map(|_| t == 1 || rng.random_bool(0.5)).collect();
    let mut type_edge = vec![vec![false; t]; t];
    for c in 1..t {
        let parent = rng.random_range(0..c);
        type_edge[c][parent] = true;
        type_edge[parent][c] = true;
    }
    for a in 0..t {
        for b in a + 1..t {
            if rng.random_bool(spec.edge_prob) {
                type_edge[a][b] = true;
                type_edge[b][a] = true;
            }
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = (class[u], class[v]);
            if (a == b && clique[a]) || (a != b && type_edge[a][b]) {
                edges.push((u, v));
            }
        }
    }
    let g = shuffled_graph(spec, &mut rng, n, &edges);
    finish(spec, &mut rng, g)
}

/// Random tree plus `t` extra edges, so the feedback edge number is exactly
/// `t` (capped by the number of non-edges).
pub fn gen_fen_like(spec: &RandomSpec, t: usize) -> Result<TmsInstance<u64>, GenError> {
    let mut rng = spec.check()?;
    let n = spec.n;
    let mut edges: Vec<(Vertex, Vertex)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    let mut non_edges: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|e| !edges.contains(e))
        .collect();
    non_edges.shuffle(&mut rng);
    edges.extend(non_edges.into_iter().take(t));
    let g = shuffled_graph(spec, &mut rng, n, &edges);
    finish(spec, &mut rng, g)
}

/// Cover of `c` vertices (a random tree plus extra edges inside it) and an
/// independent remainder attached only to the cover. Vertex cover number is
/// at most `c`. Weights are drawn from `spec.weights`.
pub fn gen_vc_like(spec: &RandomSpec, c: usize) -> Result<TmsInstance<u64>, GenError> {
    let mut rng = spec.check()?;
    let n = spec.n;
    if c == 0 && n > 1 {
        return Err(GenError::BadParameter("empty cover on more than one vertex".into()));
    }
    if c > n {
        return Err(GenError::BadParameter(format!("cover {c} larger than n = {n}")));
    }
    let mut edges: Vec<(Vertex, Vertex)> = (1..c).map(|v| (rng.random_range(0..v), v)).collect();
    for u in 0..c {
        for v in u + 1..c {
            if !edges.contains(&(u, v)) && rng.random_bool(spec.edge_prob) {
                edges.push((u, v));
            }
        }
    }
    for i in c..n {
        let first = rng.random_range(0..c);
        for u in 0..c {
            if u == first || rng.random_bool(spec.edge_prob) {
                edges.push((u, i));
            }
        }
    }
    let g = shuffled_graph(spec, &mut rng, n, &edges);
    finish(spec, &mut rng, g)
}
