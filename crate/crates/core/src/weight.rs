//! Edge-weight scalar abstraction.
//!
//! Distances are compared for exact equality (shortest-path membership) and
//! for exact rational slack, so only unsigned integer scalars qualify.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned};

/// Positive integer edge weight. Implemented for every unsigned primitive.
pub trait Weight:
    PrimInt + Unsigned + Hash + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossless widening used by slack comparisons.
    fn widen(self) -> u128 {
        self.to_u128().expect("unsigned primitive fits in u128")
    }
}

impl<T> Weight for T where
    T: PrimInt + Unsigned + Hash + Debug + Display + Default + Send + Sync + 'static
{
}
