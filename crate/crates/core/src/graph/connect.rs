use super::{Graph, GraphError};
use crate::weight::Weight;
use crate::Vertex;

/// Output of [`ensure_connected`]; `hub` is the added joining vertex, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connected<W> {
    pub graph: Graph<W>,
    pub hub: Option<Vertex>,
}

/// Joins all components through a fresh hub vertex attached to the lowest
/// vertex of each component.
///
/// Fails if some terminal pair spans two components. Within-component
/// distances are unchanged because every route through the hub leaves and
/// re-enters a component through the same vertex.
pub fn ensure_connected<W: Weight>(
    g: &Graph<W>,
    terminals: &[(Vertex, Vertex)],
) -> Result<Connected<W>, GraphError> {
    let label = g.component_ids();
    for &(u, v) in terminals {
        g.check_vertex(u)?;
        g.check_vertex(v)?;
        if label[u] != label[v] {
            return Err(GraphError::Infeasible(u.min(v), u.max(v)));
        }
    }
    let comps = g.components();
    if comps.len() <= 1 {
        return Ok(Connected {
            graph: g.clone(),
            hub: None,
        });
    }
    let mut graph = g.clone();
    let hub = graph.add_vertex();
    for comp in &comps {
        graph
            .add_edge(hub, comp[0])
            .expect("hub is fresh, so the edge is new");
    }
    Ok(Connected {
        graph,
        hub: Some(hub),
    })
}
