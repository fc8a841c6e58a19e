//! Attaching the 4-clique and peeling degree-one vertices.

use std::collections::BTreeSet;

use crate::core_invariant::{norm, Pair};
use crate::Graph;
use crate::instance::TmsInstance;
use crate::weight::Weight;
use crate::{Vertex, VertexSet};

/// Minimum-degree-two graph left after peeling, with the pairs rewritten
/// onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preprocessed {
    /// Compacted graph; includes the four clique vertices.
    pub graph: Graph,
    /// Original id of each compacted vertex, `None` for clique vertices.
    pub orig_of: Vec<Option<Vertex>>,
    /// Compacted ids of the clique vertices.
    pub clique: VertexSet,
    /// Rewritten pairs in compacted ids, normalized and deduplicated.
    pub pairs: Vec<Pair>,
    /// Original ids that every solution must contain.
    pub forced: VertexSet,
    /// Budget left after paying for `forced`.
    pub k: usize,
}

/// Joins a 4-clique to the lowest vertex of every component, then repeatedly
/// removes the lowest degree-one vertex `v` with neighbor `u`. A pair `{v, v}`
/// forces `v` (budget drops by one, pairs at `v` are settled); otherwise
/// every pair at `v` moves to `u`, since `v` lies on no other shortest path
/// and `u` lies on all of its own.
///
/// Returns `None` when the forced vertices exceed the budget.
pub fn preprocess_degree_one<W: Weight>(inst: &TmsInstance<W>) -> Option<Preprocessed> {
    let g = &inst.graph;
    let n = g.n();
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    adj.extend((0..4).map(|_| BTreeSet::new()));
    let link = |a: Vertex, b: Vertex, adj: &mut Vec<BTreeSet<Vertex>>| {
        adj[a].insert(b);
        adj[b].insert(a);
    };
    for a in n..n + 4 {
        for b in a + 1..n + 4 {
            link(a, b, &mut adj);
        }
    }
    for comp in g.components() {
        link(n, comp[0], &mut adj);
    }

    let mut alive = vec![true; n + 4];
    let mut pairs: BTreeSet<Pair> = inst.terminals.iter().map(|&p| norm(p)).collect();
    let mut forced = VertexSet::new();
    let mut k = inst.k;
    while let Some(v) = (0..n).find(|&v| alive[v] && adj[v].len() == 1) {
        let u = *adj[v].iter().next().expect("degree one");
        if pairs.contains(&(v, v)) {
            if k == 0 {
                return None;
            }
            k -= 1;
            forced.insert(v);
            pairs.retain(|&(a, b)| a != v && b != v);
        } else {
            pairs = pairs
                .into_iter()
                .map(|(a, b)| {
                    let a = if a == v { u } else { a };
                    let b = if b == v { u } else { b };
                    norm((a, b))
                })
                .collect();
        }
        adj[u].remove(&v);
        adj[v].clear();
        alive[v] = false;
    }

    let kept: Vec<Vertex> = (0..n + 4).filter(|&v| alive[v]).collect();
    let mut new_id = vec![usize::MAX; n + 4];
    for (i, &v) in kept.iter().enumerate() {
        new_id[v] = i;
    }
    let mut graph = Graph::new(kept.len());
    for &v in &kept {
        for &w in &adj[v] {
            if v < w {
                graph.add_edge(new_id[v], new_id[w]).expect("simple");
            }
        }
    }
    Some(Preprocessed {
        graph,
        orig_of: kept.iter().map(|&v| (v < n).then_some(v)).collect(),
        clique: (n..n + 4).map(|v| new_id[v]).collect(),
        pairs: pairs.into_iter().map(|(a, b)| norm((new_id[a], new_id[b]))).collect(),
        forced,
        k,
    })
}
