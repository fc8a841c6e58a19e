//! How shortest paths of a pair enter and leave the modulator.

use super::ClusterView;
use crate::core_invariant::Pair;
use crate::error::SolveError;

/// Tuples `(x, i, y, j)`: some shortest `u`–`v` path leaves `u` at modulator
/// vertex `x` after `i` steps and reaches `v` from `y` in `j` steps.
pub type T2Type = Vec<(usize, u8, usize, u8)>;

/// Tuples `(x, i)`: some shortest path from the clique endpoint reaches the
/// modulator first at `x`, after `i` steps.
pub type T1Type = Vec<(usize, u8)>;

impl ClusterView {
    /// Type of a clique-to-clique pair, oriented smaller id first.
    pub fn t2_type(&self, (u, v): Pair) -> Result<T2Type, SolveError> {
        if self.clique_of[u].is_none() || self.clique_of[v].is_none() || u >= v {
            return Err(SolveError::Precondition(format!("({u}, {v}) is not an oriented T2 pair")));
        }
        let d = &self.dist;
        let duv = d.d(u, v);
        let mut out = T2Type::new();
        for &x in &self.modulator {
            for i in 1..=2u8 {
                if d.d(u, x) != i as u128 {
                    continue;
                }
                for &y in &self.modulator {
                    for j in 1..=2u8 {
                        if d.d(y, v) == j as u128 && d.d(x, y) + (i + j) as u128 == duv {
                            out.push((x, i, y, j));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Type of a clique-to-modulator pair `(u, m)`.
    pub fn t1_type(&self, (u, m): Pair) -> Result<T1Type, SolveError> {
        if self.clique_of[u].is_none() || !self.modulator.contains(&m) {
            return Err(SolveError::Precondition(format!("({u}, {m}) is not a T1 pair")));
        }
        let d = &self.dist;
        let dum = d.d(u, m);
        Ok(self
            .modulator
            .iter()
            .flat_map(|&x| (1..=2u8).map(move |i| (x, i)))
            .filter(|&(x, i)| d.d(u, x) == i as u128 && i as u128 + d.d(x, m) == dum)
            .collect())
    }
}
