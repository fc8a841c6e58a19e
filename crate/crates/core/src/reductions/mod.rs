//! Hardness constructions as instance generators, with brute-force solvers
//! for their source problems.

mod mcis;
mod rbds;

use thiserror::Error;

use crate::instance::InstanceError;

pub use mcis::{gen_from_mcis, mcis_brute_force, ClassLayout, McisGadget, McisInstance};
pub use rbds::{gen_from_rbds, rbds_brute_force, RbdsGadget, RbdsInstance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("invalid source instance: {0}")]
    BadSource(String),
    #[error("alpha must lie in (0, 1/2]")]
    AlphaOutOfRange,
    #[error("{what} is {actual}, above the cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: u64,
        actual: u64,
    },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}
