//! Resource caps and worker count shared by every solver.

use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Worker threads for guess fan-out; `1` runs everything on the caller.
    pub jobs: usize,
    /// Largest family the subset DP accepts.
    pub dp_cap: usize,
    /// Largest vertex count the brute-force oracle accepts.
    pub brute_force_cap: usize,
    /// Largest universe the hitting-set brute force accepts.
    pub hs_brute_force_cap: usize,
    /// Largest vertex cover the compatibility-matrix solver accepts.
    pub cover_cap: usize,
    /// Branching depth bound when computing vertex cover / cluster deletion.
    pub parameter_cap: usize,
    /// Largest feedback edge number the flower solver accepts.
    pub fen_cap: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            jobs: 1,
            dp_cap: 24,
            brute_force_cap: 20,
            hs_brute_force_cap: 20,
            cover_cap: 5,
            parameter_cap: 8,
            fen_cap: 12,
        }
    }
}

impl SolverConfig {
    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    /// Returns `f(i)` for the smallest `i < count` where it is `Some`.
    ///
    /// The answer never depends on `jobs`: parallel runs still report the
    /// lowest index.
    pub(crate) fn find_first<T, F>(&self, count: usize, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        if self.jobs <= 1 || count < 2 {
            return (0..count).find_map(f);
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.jobs).build() {
            Ok(pool) => pool.install(|| (0..count).into_par_iter().find_map_first(&f)),
            Err(_) => (0..count).find_map(f),
        }
    }
}
