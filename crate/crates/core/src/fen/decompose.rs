//! Splitting a minimum-degree-two graph into high-degree vertices and
//! petal paths.

use crate::error::SolveError;
use crate::Graph;
use crate::{Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Vertices of degree at least three, ascending.
    pub high: Vec<Vertex>,
    /// Path components of `G - high`, each listed end to end with the
    /// smaller end id first; ordered by smallest member.
    pub petals: Vec<Vec<Vertex>>,
}

pub fn decompose(g: &Graph) -> Result<Decomposition, SolveError> {
    if !g.is_connected() || (0..g.n()).any(|v| g.degree(v) < 2) {
        return Err(SolveError::Precondition(
            "decomposition needs a connected graph of minimum degree two".into(),
        ));
    }
    let high: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) >= 3).collect();
    if high.is_empty() {
        return Err(SolveError::Precondition("a cycle has no vertex of degree three".into()));
    }
    let high_set: VertexSet = high.iter().copied().collect();
    let (rest, old) = g.without_vertices(&high_set);
    let mut petals = Vec::new();
    for comp in rest.components() {
        let members: VertexSet = comp.iter().copied().collect();
        let start = comp
            .iter()
            .copied()
            .find(|&v| rest.neighbors(v).filter(|w| members.contains(w)).count() <= 1)
            .expect("petals are paths");
        let mut path = vec![start];
        let mut prev = None;
        let mut cur = start;
        while let Some(next) = rest.neighbors(cur).find(|&w| Some(w) != prev) {
            prev = Some(cur);
            cur = next;
            path.push(cur);
        }
        if path.len() != comp.len() {
            return Err(SolveError::Internal("petal is not a path".into()));
        }
        let mut path: Vec<Vertex> = path.into_iter().map(|v| old[v]).collect();
        if path[0] > path[path.len() - 1] {
            path.reverse();
        }
        petals.push(path);
    }
    petals.sort_by_key(|p| *p.iter().min().expect("nonempty"));
    Ok(Decomposition { high, petals })
}
