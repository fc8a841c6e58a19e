//! Undirected simple graphs with positive integer edge weights.

mod connect;
mod params;
mod paths;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::weight::Weight;
use crate::{Vertex, VertexSet};

pub use connect::{ensure_connected, Connected};
pub use params::{
    compute_parameter, is_cluster_deletion_set, is_vertex_cover, nd_partition, same_type,
    ParameterKind, ParameterWitness, Witness,
};
pub use paths::{shortest_distances, sp_set, DistanceRow, Distances};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(Vertex, Vertex),
    #[error("edge ({0}, {1}) has a zero weight")]
    ZeroWeight(Vertex, Vertex),
    #[error("vertices {0} and {1} are in different components")]
    Unreachable(Vertex, Vertex),
    #[error("terminal pair ({0}, {1}) spans two components")]
    Infeasible(Vertex, Vertex),
    #[error("{kind} exceeds the branching cap of {cap}")]
    ParameterTooLarge { kind: ParameterKind, cap: usize },
}

/// Undirected simple graph on vertices `0..n`.
///
/// Adjacency lists are kept sorted, so iteration order (and everything built
/// on top of it) is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph<W> {
    adj: Vec<Vec<(Vertex, W)>>,
    edge_count: usize,
}

impl<W: Weight> Graph<W> {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a unit-weight graph from an edge list.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn from_weighted_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, W)>,
    {
        let mut g = Graph::new(n);
        for (u, v, w) in edges {
            g.add_weighted_edge(u, v, w)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.add_weighted_edge(u, v, W::one())
    }

    pub fn add_weighted_edge(&mut self, u: Vertex, v: Vertex, w: W) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if w.is_zero() {
            return Err(GraphError::ZeroWeight(u.min(v), u.max(v)));
        }
        let pos = match self.adj[u].binary_search_by_key(&v, |&(x, _)| x) {
            Ok(_) => return Err(GraphError::ParallelEdge(u.min(v), u.max(v))),
            Err(pos) => pos,
        };
        self.adj[u].insert(pos, (v, w));
        let pos = self.adj[v]
            .binary_search_by_key(&u, |&(x, _)| x)
            .unwrap_err();
        self.adj[v].insert(pos, (u, w));
        self.edge_count += 1;
        Ok(())
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().map(|&(u, _)| u)
    }

    pub fn weighted_neighbors(&self, v: Vertex) -> &[(Vertex, W)] {
        &self.adj[v]
    }

    pub fn neighbor_set(&self, v: Vertex) -> VertexSet {
        self.neighbors(v).collect()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<W> {
        let row = self.adj.get(u)?;
        row.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| row[i].1)
    }

    /// Edges as `(u, v, w)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex, W)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, row) in self.adj.iter().enumerate() {
            for &(v, w) in row {
                if u < v {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    pub fn is_unit_weight(&self) -> bool {
        self.adj.iter().flatten().all(|&(_, w)| w.is_one())
    }

    /// Component label per vertex; labels are numbered by smallest member.
    pub fn component_ids(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n()];
        let mut next = 0;
        for s in 0..self.n() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let ids = self.component_ids();
        let count = ids.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut comps = vec![Vec::new(); count];
        for (v, &c) in ids.iter().enumerate() {
            comps[c].push(v);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by the vertices not in `removed`, relabelled to
    /// `0..n'` in increasing order. Returns the graph and the old id of each
    /// new vertex.
    pub fn without_vertices(&self, removed: &VertexSet) -> (Graph<W>, Vec<Vertex>) {
        let kept: Vec<Vertex> = (0..self.n()).filter(|v| !removed.contains(v)).collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let mut g = Graph::new(kept.len());
        for (u, v, w) in self.edges() {
            if new_id[u] != usize::MAX && new_id[v] != usize::MAX {
                g.add_weighted_edge(new_id[u], new_id[v], w)
                    .expect("induced subgraph of a simple graph is simple");
            }
        }
        (g, kept)
    }

    /// Whether the subgraph induced by `set` is connected.
    pub fn induces_connected(&self, set: &VertexSet) -> bool {
        let Some(&start) = set.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if set.contains(&v) && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen.len() == set.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = Graph<u32>;

    #[test]
    fn rejects_loops_parallel_edges_and_zero_weights() {
        let mut g = G::new(3);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(GraphError::ParallelEdge(0, 1)));
        assert_eq!(g.add_weighted_edge(1, 2, 0), Err(GraphError::ZeroWeight(1, 2)));
        assert!(matches!(
            g.add_edge(0, 3),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let g = G::from_weighted_edges(4, [(2, 0, 3), (0, 1, 1), (3, 0, 2)]).unwrap();
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(g.weight(2, 0), Some(3));
        assert_eq!(g.weight(0, 2), Some(3));
        assert_eq!(g.edges(), vec![(0, 1, 1), (0, 2, 3), (0, 3, 2)]);
        assert!(!g.is_unit_weight());
    }

    #[test]
    fn components_ordered_by_smallest_member() {
        let g = G::from_edges(5, [(3, 4), (0, 2)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 2], vec![1], vec![3, 4]]);
        assert!(!g.is_connected());
    }

    #[test]
    fn without_vertices_relabels() {
        let g = G::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let (h, old) = g.without_vertices(&VertexSet::from([1]));
        assert_eq!(old, vec![0, 2, 3]);
        assert_eq!(h.edges(), vec![(1, 2, 1)]);
    }
}
