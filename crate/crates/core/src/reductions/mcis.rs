//! Multicolored independent set to α-RTMS on a bounded feedback vertex
//! number graph.
//!
//! Each color class `i` becomes a cycle through two `n`-vertex paths `U_i`
//! and `U'_i` (joined end to end by `z_i` and `z'_i`), a pendant path of
//! length `L_p` from `p_i` to the middle of `U_i`, and a spoke of length `L`
//! from every `U_i ∪ U'_i` vertex to a shared bridge `b`. Pair
//! `{p_i, middle}` forces a pick near the middle of `U_i`; each source edge
//! between classes `i` and `j` becomes a pair on `U'_i × U'_j`, which a pick
//! on `U_i` monitors unless it sits at the same index.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::TmsInstance;
use crate::{Alpha, Graph, Vertex};

use super::ReductionError;

/// `k` classes of `n` vertices each; `parts[i][j]` is vertex `j` of class `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McisInstance {
    pub graph: Graph,
    pub parts: Vec<Vec<Vertex>>,
}

impl McisInstance {
    /// Vertex `j` of class `i` gets id `i * n + j`.
    pub fn from_classes(
        n: usize,
        k: usize,
        edges: &[((usize, usize), (usize, usize))],
    ) -> Result<Self, ReductionError> {
        let id = |(i, j): (usize, usize)| i * n + j;
        let mut graph = Graph::new(n * k);
        for &(a, b) in edges {
            if a.0 >= k || b.0 >= k || a.1 >= n || b.1 >= n {
                return Err(ReductionError::BadSource(format!("edge {a:?}-{b:?} out of range")));
            }
            graph
                .add_edge(id(a), id(b))
                .map_err(|e| ReductionError::BadSource(e.to_string()))?;
        }
        let parts = (0..k).map(|i| (0..n).map(|j| id((i, j))).collect()).collect();
        let m = McisInstance { graph, parts };
        m.validate()?;
        Ok(m)
    }

    /// Each edge between distinct classes independently with probability `p`.
    pub fn random(n: usize, k: usize, p: f64, seed: u64) -> Result<Self, ReductionError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(ReductionError::BadSource(format!("edge probability {p}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for (i, j) in (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))) {
            for a in 0..n {
                for b in 0..n {
                    if rng.random_bool(p) {
                        edges.push(((i, a), (j, b)));
                    }
                }
            }
        }
        Self::from_classes(n, k, &edges)
    }

    pub fn n(&self) -> usize {
        self.parts.first().map_or(0, Vec::len)
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        let n = self.n();
        if n.is_multiple_of(2) || self.parts.iter().any(|p| p.len() != n) {
            return Err(ReductionError::BadSource("classes must share one odd size".into()));
        }
        let mut seen = vec![false; self.graph.n()];
        for &v in self.parts.iter().flatten() {
            if v >= seen.len() || std::mem::replace(&mut seen[v], true) {
                return Err(ReductionError::BadSource("classes must partition the vertices".into()));
            }
        }
        if seen.contains(&false) {
            return Err(ReductionError::BadSource("classes must partition the vertices".into()));
        }
        Ok(())
    }

    /// Whether `pick` (one index per class) selects pairwise nonadjacent vertices.
    pub fn is_independent(&self, pick: &[usize]) -> bool {
        let vs: Vec<Vertex> = pick.iter().zip(&self.parts).map(|(&j, p)| p[j]).collect();
        vs.iter().enumerate().all(|(a, &x)| vs[a + 1..].iter().all(|&y| !self.graph.has_edge(x, y)))
    }
}

/// Where each class gadget sits in the generated graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassLayout {
    pub u: Vec<Vertex>,
    pub u_prime: Vec<Vertex>,
    /// Joins `u_prime[0]` and `u[n - 1]`.
    pub z: Vertex,
    /// Joins `u_prime[n - 1]` and `u[0]`.
    pub z_prime: Vertex,
    /// `p_i` first, then the inner vertices toward the middle of `u`.
    pub pendant: Vec<Vertex>,
    /// Inner vertices of the spokes to the bridge, `u` first then `u_prime`.
    pub spokes: Vec<Vec<Vertex>>,
}

impl ClassLayout {
    pub fn p(&self) -> Vertex {
        self.pendant[0]
    }

    pub fn middle(&self) -> Vertex {
        self.u[self.u.len() / 2]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McisGadget {
    pub instance: TmsInstance,
    /// Spoke length, `ceil(n / (2 alpha))`.
    pub l: usize,
    /// Pendant length, `ceil((n - 1) / alpha)`.
    pub l_p: usize,
    pub bridge: Vertex,
    pub classes: Vec<ClassLayout>,
}

fn ceil_div(a: u128, b: u128) -> usize {
    usize::try_from(a.div_ceil(b)).expect("gadget length fits in usize")
}

/// Ids are class-major: each class lists `U`, `U'`, `z`, `z'`, the pendant
/// and then the spokes; the bridge comes last.
pub fn gen_from_mcis(m: &McisInstance, alpha: Alpha) -> Result<McisGadget, ReductionError> {
    m.validate()?;
    let (p, q) = (*alpha.numer() as u128, *alpha.denom() as u128);
    if p == 0 || 2 * p > q {
        return Err(ReductionError::AlphaOutOfRange);
    }
    let (n, k) = (m.n(), m.k());
    let l = ceil_div(n as u128 * q, 2 * p);
    let l_p = ceil_div((n as u128 - 1) * q, p);

    let mut next = 0;
    let mut take = |count: usize| -> Vec<Vertex> {
        let out = (next..next + count).collect();
        next += count;
        out
    };
    let mut classes = Vec::with_capacity(k);
    for _ in 0..k {
        let u = take(n);
        let u_prime = take(n);
        let z = take(1)[0];
        let z_prime = take(1)[0];
        let pendant = take(l_p);
        let spokes = (0..2 * n).map(|_| take(l - 1)).collect();
        classes.push(ClassLayout { u, u_prime, z, z_prime, pendant, spokes });
    }
    let bridge = take(1)[0];

    let mut edges = Vec::new();
    let path = |vs: &[Vertex], edges: &mut Vec<(Vertex, Vertex)>| {
        edges.extend(vs.windows(2).map(|w| (w[0], w[1])));
    };
    for c in &classes {
        path(&c.u, &mut edges);
        path(&c.u_prime, &mut edges);
        path(&[c.u_prime[0], c.z, c.u[n - 1]], &mut edges);
        path(&[c.u_prime[n - 1], c.z_prime, c.u[0]], &mut edges);
        let pendant: Vec<Vertex> = c.pendant.iter().copied().chain([c.middle()]).collect();
        path(&pendant, &mut edges);
        for (end, inner) in c.u.iter().chain(&c.u_prime).zip(&c.spokes) {
            let spoke: Vec<Vertex> = std::iter::once(*end).chain(inner.iter().copied()).chain([bridge]).collect();
            path(&spoke, &mut edges);
        }
    }
    let g = Graph::from_edges(next, edges).map_err(crate::instance::InstanceError::from)?;

    let mut pairs: Vec<(Vertex, Vertex)> = classes.iter().map(|c| (c.p(), c.middle())).collect();
    for (i, j) in (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))) {
        for (a, &x) in m.parts[i].iter().enumerate() {
            for (b, &y) in m.parts[j].iter().enumerate() {
                if m.graph.has_edge(x, y) {
                    pairs.push((classes[i].u_prime[a], classes[j].u_prime[b]));
                }
            }
        }
    }
    let instance = TmsInstance::new(g, pairs, k, alpha)?;
    Ok(McisGadget { instance, l, l_p, bridge, classes })
}

/// First independent transversal in lexicographic order of class indices.
pub fn mcis_brute_force(m: &McisInstance) -> Result<Option<Vec<usize>>, ReductionError> {
    const LIMIT: u64 = 1_000_000;
    m.validate()?;
    let (n, k) = (m.n() as u64, m.k() as u32);
    let count = n.checked_pow(k).unwrap_or(u64::MAX);
    if count > LIMIT {
        return Err(ReductionError::CapExceeded { what: "n^k", limit: LIMIT, actual: count });
    }
    Ok((0..count).map(|code| {
        let mut c = code;
        let mut pick = vec![0; m.k()];
        for slot in pick.iter_mut().rev() {
            *slot = (c % n) as usize;
            c /= n;
        }
        pick
    })
    .find(|pick| m.is_independent(pick)))
}
