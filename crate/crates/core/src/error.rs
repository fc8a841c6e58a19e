use thiserror::Error;

use crate::graph::GraphError;
use crate::hitting_set::HittingSetError;
use crate::Vertex;

/// Failure modes shared by the solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    HittingSet(#[from] HittingSetError),
    #[error("terminal pair ({0}, {1}) spans two components")]
    Infeasible(Vertex, Vertex),
    #[error("{what} is {actual}, above the cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("core-invariance check failed: {0}")]
    CoreInvariance(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl SolveError {
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            SolveError::CapExceeded { .. }
                | SolveError::Graph(GraphError::ParameterTooLarge { .. })
                | SolveError::HittingSet(HittingSetError::CapExceeded { .. })
        )
    }
}
