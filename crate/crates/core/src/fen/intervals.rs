//! Stabbing intervals on a path.

use crate::error::SolveError;

/// Fewest points hitting every inclusive interval `(start, end)` on a path
/// of `len` positions.
pub fn opt_d(len: usize, intervals: &[(usize, usize)]) -> Result<usize, SolveError> {
    Ok(stab_points(len, intervals)?.len())
}

/// The points chosen by the right-endpoint greedy, ascending.
pub fn stab_points(len: usize, intervals: &[(usize, usize)]) -> Result<Vec<usize>, SolveError> {
    if let Some(&(s, e)) = intervals.iter().find(|&&(s, e)| s > e || e >= len) {
        return Err(SolveError::Precondition(format!(
            "interval ({s}, {e}) is not a subpath of a {len}-vertex path"
        )));
    }
    let mut sorted = intervals.to_vec();
    sorted.sort_by_key(|&(s, e)| (e, s));
    let mut points: Vec<usize> = Vec::new();
    for (s, e) in sorted {
        if points.last().is_none_or(|&p| p < s) {
            points.push(e);
        }
    }
    Ok(points)
}
