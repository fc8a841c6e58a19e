//! Solver-versus-oracle sweeps with timings.

use std::io::Write;
use std::time::Instant;

use clap::Args;
use tms_core::instance::{gen_cluster_like, gen_fen_like, gen_nd_like, gen_random, gen_vc_like, RandomSpec};
use tms_core::oracle::{brute_force_solve, verify_certificate};
use tms_core::{Alpha, SolverConfig, TmsInstance};

use super::{emit, solve_with, Algo, Failure, EXIT_VERIFY, EXIT_YES};

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Instances per solver.
    #[arg(long, default_value_t = 100)]
    instances: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub checked: u64,
    pub skipped: u64,
    pub mismatches: u64,
}

fn spec(seed: u64) -> RandomSpec {
    let n = 4 + (seed % 9) as usize;
    let pairs = (1 + (seed % 8) as usize).min(n * (n - 1) / 2);
    RandomSpec::new(n, 0.3, pairs, (seed % 4) as usize, seed)
}

/// Instance `i` of the sweep for `algo`.
pub fn sweep_instance(algo: Algo, seed: u64) -> TmsInstance {
    let s = spec(seed);
    let param = 1 + (seed % 3) as usize;
    let made = match algo {
        Algo::Cluster => gen_cluster_like(&s, param),
        Algo::Nd | Algo::NdKernel => gen_nd_like(&s, param + 1),
        Algo::Fen => gen_fen_like(&s, param),
        Algo::Vc => {
            let mut w = s.clone();
            w.weights = (1, 5);
            gen_vc_like(&w, param + 1)
        }
        _ => gen_random(&s).map(|mut inst| {
            inst.alpha = Alpha::new(seed % 3, 4);
            inst
        }),
    };
    made.expect("sweep parameters are valid")
}

/// Runs `count` instances of `algo` against the oracle.
pub fn sweep(algo: Algo, count: u64, seed: u64, cfg: &SolverConfig) -> SweepStats {
    let mut stats = SweepStats::default();
    for i in 0..count {
        let inst = sweep_instance(algo, seed.wrapping_add(i));
        let fast = match solve_with(&inst, algo, cfg) {
            Ok(r) => r,
            Err(e) if e.is_cap() => {
                stats.skipped += 1;
                continue;
            }
            Err(_) => {
                stats.mismatches += 1;
                continue;
            }
        };
        let Ok(slow) = brute_force_solve(&inst, cfg) else {
            stats.skipped += 1;
            continue;
        };
        let cert_ok = fast.certificate.as_ref().is_none_or(|c| verify_certificate(&inst, c));
        if fast.verdict != slow.verdict || !cert_ok {
            stats.mismatches += 1;
        }
        stats.checked += 1;
    }
    stats
}

pub fn run<O: Write>(a: BenchArgs, out: &mut O) -> Result<i32, Failure> {
    let cfg = SolverConfig::default().with_jobs(a.jobs);
    let algos = [Algo::Cluster, Algo::Nd, Algo::NdKernel, Algo::Vc, Algo::Fen, Algo::HittingDp, Algo::Auto];
    emit(out, &format!("{:<11} {:>8} {:>8} {:>10} {:>9}  result", "solver", "checked", "skipped", "mismatch", "seconds"))?;
    let mut failed = false;
    for algo in algos {
        let start = Instant::now();
        let s = sweep(algo, a.instances, a.seed, &cfg);
        let name = clap::ValueEnum::to_possible_value(&algo).expect("named").get_name().to_owned();
        let pass = s.mismatches == 0;
        failed |= !pass;
        emit(
            out,
            &format!(
                "{:<11} {:>8} {:>8} {:>10} {:>9.3}  {}",
                name,
                s.checked,
                s.skipped,
                s.mismatches,
                start.elapsed().as_secs_f64(),
                if pass { "PASS" } else { "FAIL" }
            ),
        )?;
    }
    Ok(if failed { EXIT_VERIFY } else { EXIT_YES })
}
