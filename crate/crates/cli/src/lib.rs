//! Command-line front end: solve, generate, params, verify and bench.
//!
//! Exit codes: 0 YES (or success), 1 NO, 2 usage or bad input, 3 resource
//! cap or timeout, 4 failed verification or internal error.

mod bench;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::json;
use tms_core::cluster::solve_cluster;
use tms_core::fen::solve_fen;
use tms_core::graph::{compute_parameter, ParameterKind};
use tms_core::instance::{
    gen_cluster_like, gen_fen_like, gen_nd_like, gen_random, gen_vc_like, parse_instance,
    write_instance, RandomSpec,
};
use tms_core::nd::{solve_nd, NdMode};
use tms_core::oracle::{brute_force_solve, solve_hitting_dp, verify_certificate};
use tms_core::reductions::{gen_from_mcis, gen_from_rbds, McisInstance, RbdsGadget, RbdsInstance};
use tms_core::vc::solve_vc;
use tms_core::{Alpha, SolveError, SolveResult, SolverConfig, TmsInstance, VertexSet};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "tms", version, about = "Terminal monitoring set solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide an instance and print the result as JSON.
    Solve(SolveArgs),
    /// Write a generated instance.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Compute the structural parameters of an instance.
    Params {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
    /// Check a certificate against an instance.
    Verify(VerifyArgs),
    /// Run solver-versus-oracle sweeps and print a pass/fail table.
    Bench(bench::BenchArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Auto,
    Bruteforce,
    Cluster,
    Nd,
    NdKernel,
    Vc,
    Fen,
    HittingDp,
}

#[derive(Args, Debug, Clone)]
struct Caps {
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    cap_dp: Option<usize>,
    #[arg(long)]
    cap_brute_force: Option<usize>,
    #[arg(long)]
    cap_cover: Option<usize>,
    #[arg(long)]
    cap_parameter: Option<usize>,
    #[arg(long)]
    cap_fen: Option<usize>,
}

impl Caps {
    fn config(&self) -> SolverConfig {
        let mut cfg = SolverConfig::default().with_jobs(self.jobs);
        let set = |slot: &mut usize, v: Option<usize>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut cfg.dp_cap, self.cap_dp);
        set(&mut cfg.brute_force_cap, self.cap_brute_force);
        set(&mut cfg.cover_cap, self.cap_cover);
        set(&mut cfg.parameter_cap, self.cap_parameter);
        set(&mut cfg.fen_cap, self.cap_fen);
        cfg
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    algo: Algo,
    #[arg(long)]
    input: PathBuf,
    /// Also write the JSON result here.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Re-check a YES certificate before exiting.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    timeout_ms: Option<u64>,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated 1-based vertices.
    #[arg(long, conflicts_with = "result", required_unless_present = "result")]
    certificate: Option<String>,
    /// JSON result file whose certificate is checked.
    #[arg(long)]
    result: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Shape {
    Plain,
    Cluster,
    Nd,
    Fen,
    Vc,
}

#[derive(Subcommand, Debug)]
enum GenerateKind {
    /// Random instance, optionally shaped to keep one parameter small.
    Random {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        edge_prob: f64,
        #[arg(long, default_value_t = 4)]
        terminals: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        max_weight: u64,
        #[arg(long, value_enum, default_value_t = Shape::Plain)]
        shape: Shape,
        /// Parameter bound for the shaped generators.
        #[arg(long, default_value_t = 2)]
        param: usize,
        #[arg(long, default_value = "0")]
        alpha: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Red-blue domination source mapped to TMS.
    Rbds {
        #[arg(long)]
        blue: usize,
        #[arg(long)]
        red: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Multicolored independent set source mapped to slack TMS.
    Mcis {
        /// Class size (odd).
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Number of classes, which is also the budget.
        #[arg(long, default_value_t = 2)]
        classes: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, default_value = "1/2")]
        alpha: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match &e {
            _ if e.is_cap() => EXIT_CAP,
            SolveError::Internal(_) | SolveError::CoreInvariance(_) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`.
pub fn run_with<O: Write, E: Write>(args: &[String], out: &mut O, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn run(args: Vec<String>) -> i32 {
    run_with(&args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn dispatch<O: Write>(command: Command, out: &mut O) -> Result<i32, Failure> {
    match command {
        Command::Solve(a) => solve_command(a, out),
        Command::Generate { kind } => generate_command(kind, out),
        Command::Params { input, caps } => params_command(&input, &caps, out),
        Command::Verify(a) => verify_command(a, out),
        Command::Bench(a) => bench::run(a, out),
    }
}

fn emit<O: Write>(out: &mut O, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::usage(format!("cannot write output: {e}")))
}

fn read_instance(path: &Path) -> Result<TmsInstance, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn parse_alpha(text: &str) -> Result<Alpha, Failure> {
    let bad = || Failure::usage(format!("alpha must look like p/q, got {text:?}"));
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
        None => (text.trim().parse().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(p, q))
}

/// Runs one named algorithm.
pub fn solve_with(inst: &TmsInstance, algo: Algo, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    match algo {
        Algo::Auto => solve_auto(inst, cfg),
        Algo::Bruteforce => brute_force_solve(inst, cfg),
        Algo::Cluster => solve_cluster(inst, None, cfg),
        Algo::Nd => solve_nd(inst, NdMode::Claim, cfg),
        Algo::NdKernel => solve_nd(inst, NdMode::Kernel, cfg),
        Algo::Vc => solve_vc(inst, None, cfg),
        Algo::Fen => solve_fen(inst, cfg),
        Algo::HittingDp => solve_hitting_dp(inst, cfg),
    }
}

/// Applicable parameterized solvers with their parameter values, smallest
/// first; ties keep the listed order.
pub fn auto_candidates(inst: &TmsInstance, cfg: &SolverConfig) -> Vec<(Algo, usize)> {
    if !inst.is_plain() {
        return Vec::new();
    }
    let g = &inst.graph;
    let value = |kind, cap| compute_parameter(g, kind, cap).ok().map(|w| w.value);
    let mut out = Vec::new();
    if g.is_unit_weight() {
        if let Some(q) = value(ParameterKind::ClusterDeletion, cfg.parameter_cap) {
            out.push((Algo::Cluster, q));
        }
        if let Some(t) = value(ParameterKind::NdPartition, cfg.parameter_cap) {
            if t <= cfg.parameter_cap {
                out.push((Algo::Nd, t));
            }
        }
    }
    if let Some(c) = value(ParameterKind::VertexCover, cfg.cover_cap.min(cfg.parameter_cap)) {
        out.push((Algo::Vc, c));
    }
    if g.is_unit_weight() {
        if let Some(t) = value(ParameterKind::FeedbackEdge, cfg.fen_cap) {
            if t <= cfg.fen_cap {
                out.push((Algo::Fen, t));
            }
        }
    }
    out.sort_by_key(|&(_, v)| v);
    out
}

fn solve_auto(inst: &TmsInstance, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    let candidates = auto_candidates(inst, cfg);
    for (rank, &(algo, value)) in candidates.iter().enumerate() {
        match solve_with(inst, algo, cfg) {
            Ok(r) => {
                return Ok(r
                    .with_stat("auto_parameter", value as u64)
                    .with_stat("auto_rank", rank as u64)
                    .with_stat("auto_candidates", candidates.len() as u64))
            }
            Err(e) if e.is_cap() => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(brute_force_solve(inst, cfg)?.with_stat("auto_candidates", candidates.len() as u64))
}

fn solve_command<O: Write>(a: SolveArgs, out: &mut O) -> Result<i32, Failure> {
    let inst = read_instance(&a.input)?;
    let cfg = a.caps.config();
    let result = match a.timeout_ms {
        None => solve_with(&inst, a.algo, &cfg)?,
        Some(ms) => {
            let (tx, rx) = mpsc::channel();
            let (job, algo, c) = (inst.clone(), a.algo, cfg.clone());
            std::thread::spawn(move || {
                let _ = tx.send(solve_with(&job, algo, &c));
            });
            match rx.recv_timeout(Duration::from_millis(ms)) {
                Ok(r) => r?,
                Err(_) => {
                    return Err(Failure { code: EXIT_CAP, message: format!("timed out after {ms} ms") })
                }
            }
        }
    };
    if a.verify {
        if let Some(c) = &result.certificate {
            if !verify_certificate(&inst, c) {
                return Err(Failure {
                    code: EXIT_VERIFY,
                    message: format!("{} returned a certificate that does not verify", result.algorithm),
                });
            }
        }
    }
    let text = result.to_json();
    if let Some(path) = &a.output {
        fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    emit(out, &text)?;
    Ok(if result.is_yes() { EXIT_YES } else { EXIT_NO })
}

fn write_or_print<O: Write>(text: &str, output: Option<&Path>, out: &mut O) -> Result<i32, Failure> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("cannot write output: {e}")))?,
    }
    Ok(EXIT_YES)
}

fn generate_command<O: Write>(kind: GenerateKind, out: &mut O) -> Result<i32, Failure> {
    match kind {
        GenerateKind::Random { n, edge_prob, terminals, k, max_weight, shape, param, alpha, seed, output } => {
            let mut spec = RandomSpec::new(n, edge_prob, terminals, k, seed);
            spec.weights = (1, max_weight);
            let made = match shape {
                Shape::Plain => gen_random(&spec),
                Shape::Cluster => gen_cluster_like(&spec, param),
                Shape::Nd => gen_nd_like(&spec, param),
                Shape::Fen => gen_fen_like(&spec, param),
                Shape::Vc => gen_vc_like(&spec, param),
            };
            let mut inst = made.map_err(|e| Failure::usage(e.to_string()))?;
            inst.alpha = parse_alpha(&alpha)?;
            write_or_print(&write_instance(&inst), output.as_deref(), out)
        }
        GenerateKind::Rbds { blue, red, k, edge_prob, seed, output } => {
            let src = RbdsInstance::random(blue, red, k, edge_prob, seed)
                .map_err(|e| Failure::usage(e.to_string()))?;
            match gen_from_rbds(&src).map_err(|e| Failure::usage(e.to_string()))? {
                RbdsGadget::Instance(inst) => write_or_print(&write_instance(&inst), output.as_deref(), out),
                RbdsGadget::TriviallyNo { red } => Err(Failure::usage(format!(
                    "red vertex {} has no blue neighbor; the source has no solution",
                    red + 1
                ))),
            }
        }
        GenerateKind::Mcis { n, classes, edge_prob, alpha, seed, output } => {
            let src = McisInstance::random(n, classes, edge_prob, seed)
                .map_err(|e| Failure::usage(e.to_string()))?;
            let gadget = gen_from_mcis(&src, parse_alpha(&alpha)?).map_err(|e| Failure::usage(e.to_string()))?;
            write_or_print(&write_instance(&gadget.instance), output.as_deref(), out)
        }
    }
}

fn params_command<O: Write>(input: &Path, caps: &Caps, out: &mut O) -> Result<i32, Failure> {
    let inst = read_instance(input)?;
    let cfg = caps.config();
    let g = &inst.graph;
    let value = |kind| compute_parameter(g, kind, cfg.parameter_cap).ok().map(|w| w.value);
    let report = json!({
        "vertices": g.n(),
        "edges": g.m(),
        "terminals": inst.terminals.len(),
        "k": inst.k,
        "unit_weight": g.is_unit_weight(),
        "vertex_cover": value(ParameterKind::VertexCover),
        "cluster_deletion": value(ParameterKind::ClusterDeletion),
        "nd_partition": value(ParameterKind::NdPartition),
        "feedback_edge": value(ParameterKind::FeedbackEdge),
    });
    emit(out, &report.to_string())?;
    Ok(EXIT_YES)
}

fn parse_certificate(text: &str, n: usize) -> Result<VertexSet, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s.parse::<usize>() {
            Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
            _ => Err(Failure::usage(format!("{s:?} is not a vertex in 1..={n}"))),
        })
        .collect()
}

fn verify_command<O: Write>(a: VerifyArgs, out: &mut O) -> Result<i32, Failure> {
    let inst = read_instance(&a.input)?;
    let cert = match (&a.certificate, &a.result) {
        (Some(text), _) => parse_certificate(text, inst.n())?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            let list = value["certificate"]
                .as_array()
                .ok_or_else(|| Failure::usage("result has no certificate"))?
                .iter()
                .map(|v| v.as_u64().map(|v| v.to_string()).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(",");
            parse_certificate(&list, inst.n())?
        }
        (None, None) => return Err(Failure::usage("give --certificate or --result")),
    };
    let valid = verify_certificate(&inst, &cert);
    emit(out, &json!({ "valid": valid, "size": cert.len() }).to_string())?;
    Ok(if valid { EXIT_YES } else { EXIT_VERIFY })
}
