//! Structural parameters with self-validating witnesses.

use std::fmt;

use super::{Graph, GraphError};
use crate::weight::Weight;
use crate::{Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParameterKind {
    VertexCover,
    ClusterDeletion,
    FeedbackEdge,
    NdPartition,
}

impl fmt::Display for ParameterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParameterKind::VertexCover => "vertex-cover",
            ParameterKind::ClusterDeletion => "cluster-deletion",
            ParameterKind::FeedbackEdge => "feedback-edge",
            ParameterKind::NdPartition => "nd-partition",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Vertices(VertexSet),
    Edges(Vec<(Vertex, Vertex)>),
    Partition(Vec<Vec<Vertex>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterWitness {
    pub kind: ParameterKind,
    pub value: usize,
    pub witness: Witness,
}

impl ParameterWitness {
    /// Checks the witness against `g` and that `value` matches its size.
    pub fn validate<W: Weight>(&self, g: &Graph<W>) -> bool {
        match (self.kind, &self.witness) {
            (ParameterKind::VertexCover, Witness::Vertices(s)) => {
                s.len() == self.value && is_vertex_cover(g, s)
            }
            (ParameterKind::ClusterDeletion, Witness::Vertices(s)) => {
                s.len() == self.value && is_cluster_deletion_set(g, s)
            }
            (ParameterKind::FeedbackEdge, Witness::Edges(es)) => {
                es.len() == self.value && leaves_forest(g, es)
            }
            (ParameterKind::NdPartition, Witness::Partition(blocks)) => {
                blocks.len() == self.value && is_type_partition(g, blocks)
            }
            _ => false,
        }
    }
}

pub fn is_vertex_cover<W: Weight>(g: &Graph<W>, s: &VertexSet) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v, _)| s.contains(&u) || s.contains(&v))
}

pub fn is_cluster_deletion_set<W: Weight>(g: &Graph<W>, s: &VertexSet) -> bool {
    find_p3(g, s).is_none()
}

/// `N(u) \ {v} = N(v) \ {u}`.
pub fn same_type<W: Weight>(g: &Graph<W>, u: Vertex, v: Vertex) -> bool {
    let a = g.neighbors(u).filter(|&x| x != v);
    let b = g.neighbors(v).filter(|&x| x != u);
    a.eq(b)
}

/// Coarsest partition into same-type classes, each sorted, ordered by
/// smallest member.
pub fn nd_partition<W: Weight>(g: &Graph<W>) -> Vec<Vec<Vertex>> {
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    for v in 0..g.n() {
        match blocks.iter_mut().find(|b| same_type(g, b[0], v)) {
            Some(b) => b.push(v),
            None => blocks.push(vec![v]),
        }
    }
    blocks
}

fn is_type_partition<W: Weight>(g: &Graph<W>, blocks: &[Vec<Vertex>]) -> bool {
    let mut seen = vec![false; g.n()];
    for b in blocks {
        for &v in b {
            if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        for (i, &u) in b.iter().enumerate() {
            if b[i + 1..].iter().any(|&v| !same_type(g, u, v)) {
                return false;
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn leaves_forest<W: Weight>(g: &Graph<W>, removed: &[(Vertex, Vertex)]) -> bool {
    let cut: std::collections::BTreeSet<(Vertex, Vertex)> =
        removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    if cut.len() != removed.len() || cut.iter().any(|&(u, v)| !g.has_edge(u, v)) {
        return false;
    }
    let mut dsu = Dsu::new(g.n());
    g.edges()
        .into_iter()
        .filter(|&(u, v, _)| !cut.contains(&(u, v)))
        .all(|(u, v, _)| dsu.union(u, v))
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// False if `u` and `v` were already joined.
    fn union(&mut self, u: usize, v: usize) -> bool {
        let (a, b) = (self.find(u), self.find(v));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }
}

/// First induced P3 `(a, b, c)` with centre `b`, ignoring vertices in `skip`.
fn find_p3<W: Weight>(g: &Graph<W>, skip: &VertexSet) -> Option<[Vertex; 3]> {
    for b in (0..g.n()).filter(|b| !skip.contains(b)) {
        let nb: Vec<Vertex> = g.neighbors(b).filter(|x| !skip.contains(x)).collect();
        for (i, &a) in nb.iter().enumerate() {
            if let Some(&c) = nb[i + 1..].iter().find(|&&c| !g.has_edge(a, c)) {
                return Some([a, b, c]);
            }
        }
    }
    None
}

fn first_uncovered_edge<W: Weight>(g: &Graph<W>, s: &VertexSet) -> Option<[Vertex; 2]> {
    g.edges()
        .into_iter()
        .find(|&(u, v, _)| !s.contains(&u) && !s.contains(&v))
        .map(|(u, v, _)| [u, v])
}

/// Depth-bounded branching on an obstruction until none remains.
fn branch<const K: usize>(
    budget: usize,
    chosen: &mut VertexSet,
    obstruction: &dyn Fn(&VertexSet) -> Option<[Vertex; K]>,
) -> bool {
    let Some(obs) = obstruction(chosen) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for v in obs {
        chosen.insert(v);
        if branch(budget - 1, chosen, obstruction) {
            return true;
        }
        chosen.remove(&v);
    }
    false
}

fn minimum_by_deepening<const K: usize>(
    kind: ParameterKind,
    cap: usize,
    obstruction: &dyn Fn(&VertexSet) -> Option<[Vertex; K]>,
) -> Result<ParameterWitness, GraphError> {
    for budget in 0..=cap {
        let mut chosen = VertexSet::new();
        if branch(budget, &mut chosen, obstruction) {
            return Ok(ParameterWitness {
                kind,
                value: chosen.len(),
                witness: Witness::Vertices(chosen),
            });
        }
    }
    Err(GraphError::ParameterTooLarge { kind, cap })
}

/// Computes a minimum witness for `kind`.
///
/// Vertex cover and cluster deletion branch with iterative deepening up to
/// `cap`; the other two kinds are polynomial and ignore it.
pub fn compute_parameter<W: Weight>(
    g: &Graph<W>,
    kind: ParameterKind,
    cap: usize,
) -> Result<ParameterWitness, GraphError> {
    match kind {
        ParameterKind::VertexCover => {
            minimum_by_deepening(kind, cap, &|s| first_uncovered_edge(g, s))
        }
        ParameterKind::ClusterDeletion => minimum_by_deepening(kind, cap, &|s| find_p3(g, s)),
        ParameterKind::FeedbackEdge => {
            let mut dsu = Dsu::new(g.n());
            let edges: Vec<(Vertex, Vertex)> = g
                .edges()
                .into_iter()
                .filter(|&(u, v, _)| !dsu.union(u, v))
                .map(|(u, v, _)| (u, v))
                .collect();
            Ok(ParameterWitness {
                kind,
                value: edges.len(),
                witness: Witness::Edges(edges),
            })
        }
        ParameterKind::NdPartition => {
            let blocks = nd_partition(g);
            Ok(ParameterWitness {
                kind,
                value: blocks.len(),
                witness: Witness::Partition(blocks),
            })
        }
    }
}
