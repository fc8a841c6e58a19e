//! Exact shortest-path distances and shortest-path vertex sets.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{Graph, GraphError};
use crate::weight::Weight;
use crate::{Distance, Vertex, VertexSet};

/// Single-source distances; `None` marks an unreachable vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: Vertex,
    pub dist: Vec<Option<Distance>>,
}

impl DistanceRow {
    pub fn get(&self, v: Vertex) -> Option<Distance> {
        self.dist[v]
    }
}

/// Dijkstra from `source`. Unit-weight graphs take the same path; at desk
/// scale the heap overhead is irrelevant.
pub fn shortest_distances<W: Weight>(g: &Graph<W>, source: Vertex) -> DistanceRow {
    let mut dist: Vec<Option<Distance>> = vec![None; g.n()];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(0);
    heap.push(Reverse((0u128, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u].is_some_and(|best| d > best) {
            continue;
        }
        for &(v, w) in g.weighted_neighbors(u) {
            let nd = d + w.widen();
            if dist[v].is_none_or(|old| nd < old) {
                dist[v] = Some(nd);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    DistanceRow { source, dist }
}

/// All-pairs distance table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distances {
    rows: Vec<DistanceRow>,
}

impl Distances {
    pub fn new<W: Weight>(g: &Graph<W>) -> Self {
        Distances {
            rows: (0..g.n()).map(|s| shortest_distances(g, s)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, u: Vertex) -> &DistanceRow {
        &self.rows[u]
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Option<Distance> {
        self.rows[u].dist[v]
    }

    /// Distance between two vertices known to be connected; panics otherwise.
    pub fn d(&self, u: Vertex, v: Vertex) -> Distance {
        self.get(u, v)
            .unwrap_or_else(|| panic!("{u} and {v} are not connected"))
    }

    /// `{x : d(u,x) + d(x,v) = d(u,v)}`.
    pub fn sp(&self, u: Vertex, v: Vertex) -> Result<VertexSet, GraphError> {
        let duv = self.get(u, v).ok_or(GraphError::Unreachable(u, v))?;
        let (ru, rv) = (&self.rows[u], &self.rows[v]);
        Ok((0..self.n())
            .filter(|&x| match (ru.dist[x], rv.dist[x]) {
                (Some(a), Some(b)) => a + b == duv,
                _ => false,
            })
            .collect())
    }
}

/// Shortest-path vertex set of one pair without building the full table.
pub fn sp_set<W: Weight>(g: &Graph<W>, u: Vertex, v: Vertex) -> Result<VertexSet, GraphError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let ru = shortest_distances(g, u);
    let duv = ru.dist[v].ok_or(GraphError::Unreachable(u, v))?;
    let rv = shortest_distances(g, v);
    Ok((0..g.n())
        .filter(|&x| match (ru.dist[x], rv.dist[x]) {
            (Some(a), Some(b)) => a + b == duv,
            _ => false,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = Graph<u64>;

    #[test]
    fn path_distances() {
        let g = G::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(shortest_distances(&g, 0).dist, vec![Some(0), Some(1), Some(2)]);
    }

    #[test]
    fn heavy_edge_is_bypassed() {
        let g = G::from_weighted_edges(3, [(0, 1, 5), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(shortest_distances(&g, 0).get(1), Some(2));
    }

    #[test]
    fn unreachable_is_none() {
        let g = G::new(2);
        assert_eq!(shortest_distances(&g, 0).get(1), None);
        assert_eq!(sp_set(&g, 0, 1), Err(GraphError::Unreachable(0, 1)));
    }

    #[test]
    fn sp_sets_small_cases() {
        let edge = G::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(sp_set(&edge, 0, 1).unwrap(), VertexSet::from([0, 1]));
        assert_eq!(sp_set(&edge, 1, 1).unwrap(), VertexSet::from([1]));
        let c4 = G::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(sp_set(&c4, 0, 2).unwrap(), VertexSet::from([0, 1, 2, 3]));
        assert_eq!(sp_set(&c4, 0, 1).unwrap(), VertexSet::from([0, 1]));
        let table = Distances::new(&c4);
        assert_eq!(table.sp(2, 0).unwrap(), sp_set(&c4, 0, 2).unwrap());
    }

    #[test]
    fn weighted_triangle_sp() {
        let g = G::from_weighted_edges(3, [(0, 1, 5), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(sp_set(&g, 0, 1).unwrap(), VertexSet::from([0, 1, 2]));
    }
}
