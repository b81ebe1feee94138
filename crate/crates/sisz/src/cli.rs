//! Argument parsing and command dispatch for the `sisz` binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sisz_core::gaussian::{smoothing_estimate, smoothing_estimate_with, EtaTilde, Epsilon};
use sisz_core::lattice::random_basis;
use sisz_core::reduction::{
    collect_independent, eta_schedule, select_eta, sivp_approximate, total_call_budget, ReductionConfig,
    ReductionContext, SivpOptions, SivpResult, SivpRun, TrialOrder, FALLBACK_CALL_CAP,
};
use sisz_core::rng::{derive_seed, stream};
use sisz_core::sis::{
    default_beta, oracle_by_name, siegel_report, verify_solution, SisInstance, SolveOutcome,
};
use sisz_core::stats::{
    column_uniformity_test, exact_mod_distance, incompatibility_report, lift_check_with, uniformity_null_band,
    UniformityChannel, LIFT_SCAN_BUDGET,
};
use sisz_core::LatticeBasis;

use crate::config::{expand_config, fresh_seed};
use crate::error::CliError;
use crate::formats::{parse_basis, parse_instance, write_basis, write_instance, write_solution};
use crate::report;
use crate::summary::{write_rows, SummaryRow, SweepRow};

#[derive(Debug, Parser, Serialize)]
#[command(name = "sisz", version, about = "Exact lattice toolkit: SIS_Z solvers, smoothing brackets and the SIVP reduction")]
#[command(args_override_self = true)]
pub struct Cli {
    /// JSON object of default flag values, applied before the command line.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Generate a random SIS instance or lattice basis.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Solve an SIS_Z instance.
    #[command(args_override_self = true)]
    Solve(SolveArgs),
    /// Run the SIVP reduction on a basis and write a transcript.
    #[command(args_override_self = true)]
    Reduce(ReduceArgs),
    /// Exact and Monte Carlo statistics.
    #[command(subcommand)]
    Stats(StatsCommand),
    /// Run the reduction over a grid of random bases, in parallel.
    #[command(args_override_self = true)]
    Sweep(SweepArgs),
    /// Print the η̃ schedule and smoothing brackets for a basis.
    #[command(args_override_self = true)]
    Eta(EtaArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenCommand {
    /// Uniform A ∈ {0,…,Q−1}^{n×m}.
    #[command(args_override_self = true)]
    Instance(GenInstanceArgs),
    /// Full-rank basis with entries in [−M, M].
    #[command(args_override_self = true)]
    Basis(GenBasisArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct GenInstanceArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long = "Q")]
    #[serde(rename = "Q")]
    pub big_q: u64,
    /// Defaults to ⌈β_n⌉ + 1.
    #[arg(long)]
    pub beta: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct GenBasisArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    pub entry_bound: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverChoice {
    BruteForce,
    KernelLllEnum,
    Disabled,
}

impl SolverChoice {
    pub fn name(self) -> &'static str {
        match self {
            SolverChoice::BruteForce => "brute-force",
            SolverChoice::KernelLllEnum => "kernel-lll-enum",
            SolverChoice::Disabled => "disabled",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value = "kernel-lll-enum")]
    pub solver: SolverChoice,
    /// Brute-force box size or enumeration node budget.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Replaces the instance's β.
    #[arg(long)]
    pub beta: Option<u64>,
    /// Solution file; stdout when absent.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// JSON report with checks and the Siegel bound.
    #[arg(long)]
    #[serde(skip)]
    pub report: Option<PathBuf>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderChoice {
    Written,
    Reordered,
}

#[derive(Debug, Args, Serialize)]
pub struct ReduceArgs {
    #[arg(long)]
    pub basis: PathBuf,
    /// Basis entry bound; defaults to the largest absolute entry.
    #[arg(long = "M")]
    #[serde(rename = "M")]
    pub entry_bound: Option<u64>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long = "Q")]
    #[serde(rename = "Q")]
    pub big_q: Option<u64>,
    #[arg(long)]
    pub beta: Option<u64>,
    /// Fixed η̃; without it the whole halving schedule is run.
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long, value_enum, default_value = "kernel-lll-enum")]
    pub solver: SolverChoice,
    /// Oracle budget, see `solve --budget`.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Calls per η̃ candidate; defaults to n^{⌈c₀⌉+2}.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Instances used to measure the oracle's success rate.
    #[arg(long, default_value_t = 20)]
    pub profile_trials: u64,
    #[arg(long, value_enum, default_value = "written")]
    pub order: OrderChoice,
    /// Skip bracketing η̃ against the smoothing parameter.
    #[arg(long)]
    pub no_certify: bool,
    /// Record exact x_j, y_j per trial.
    #[arg(long)]
    pub full: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Transcript JSON; stdout when absent.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// One-row CSV summary.
    #[arg(long)]
    #[serde(skip)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatsCommand {
    /// Exact distance of (U mod q) from uniform, U uniform on {0,…,Q−1}.
    #[command(args_override_self = true)]
    Moddist(ModdistArgs),
    /// Lifting check of an instance modulo q.
    #[command(args_override_self = true)]
    Lift(LiftArgs),
    /// Whether lifting and uniformity can hold together.
    #[command(args_override_self = true)]
    Incompat(IncompatArgs),
    /// Monte Carlo uniformity of the columns ⌊Q·B⁻¹y⌋.
    #[command(args_override_self = true)]
    Uniformity(UniformityArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct ModdistArgs {
    #[arg(long = "Q")]
    #[serde(rename = "Q")]
    pub big_q: u64,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct LiftArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Defaults to m(Q−1)β + 1.
    #[arg(long)]
    pub q: Option<u64>,
    /// Largest exhaustive scan.
    #[arg(long, default_value_t = LIFT_SCAN_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct IncompatArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub m: u64,
    #[arg(long = "Q")]
    #[serde(rename = "Q")]
    pub big_q: u64,
    #[arg(long)]
    pub beta: u64,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct UniformityArgs {
    #[arg(long)]
    pub basis: PathBuf,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    pub entry_bound: Option<u64>,
    #[arg(long = "Q")]
    #[serde(rename = "Q")]
    pub big_q: u64,
    /// Explicit η̃. Otherwise `eta_factor` times the upper smoothing bracket.
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long, default_value_t = 4.0)]
    pub eta_factor: f64,
    /// Smoothing tolerance for the bracket.
    #[arg(long, default_value_t = 0.01)]
    pub eps: f64,
    /// Use the exact-uniform sanity channel instead of the Gaussian.
    #[arg(long)]
    pub uniform: bool,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    /// Exact-uniform replicates for the null band; 0 skips it.
    #[arg(long, default_value_t = 0)]
    pub replicates: u64,
    #[arg(long, default_value_t = 0.99)]
    pub quantile: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    /// Dimensions, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Entry bounds, comma separated.
    #[arg(long = "M", value_delimiter = ',', required = true)]
    #[serde(rename = "M")]
    pub entry_bound: Vec<u64>,
    /// Random bases per (n, M) cell.
    #[arg(long, default_value_t = 1)]
    pub reps: u64,
    #[arg(long, value_enum, default_value = "kernel-lll-enum")]
    pub solver: SolverChoice,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Calls per η̃ candidate.
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, default_value_t = 20)]
    pub profile_trials: u64,
    /// Worker threads; defaults to rayon's choice.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV output; stdout when absent.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct EtaArgs {
    #[arg(long)]
    pub basis: PathBuf,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    pub entry_bound: Option<u64>,
    /// Smoothing tolerance; defaults to n^{−log₂ n}.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Relative width of the bisection bracket.
    #[arg(long, default_value_t = 0.01)]
    pub rel_width: f64,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Output goes to `stdout`, diagnostics to `stderr`.
pub fn run_with_io<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let result = expand_config(args).and_then(|args| match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli, stdout, stderr),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{text}");
                Ok(())
            } else {
                Err(CliError::Usage(text.trim_start_matches("error: ").trim_end().to_string()))
            }
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "sisz: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(GenCommand::Instance(a)) => gen_instance(a, stdout),
        Command::Gen(GenCommand::Basis(a)) => gen_basis(a, stdout),
        Command::Solve(a) => solve(a, stdout),
        Command::Reduce(a) => reduce(a, stdout, stderr),
        Command::Stats(StatsCommand::Moddist(a)) => moddist(a, stdout),
        Command::Stats(StatsCommand::Lift(a)) => lift(a, stdout),
        Command::Stats(StatsCommand::Incompat(a)) => incompat(a, stdout),
        Command::Stats(StatsCommand::Uniformity(a)) => uniformity(a, stdout),
        Command::Sweep(a) => sweep(a, stdout, stderr),
        Command::Eta(a) => eta(a, stdout),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Writes to `path`, or to `stdout` when there is none.
fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn config_value<T: Serialize>(args: &T) -> Value {
    serde_json::to_value(args).unwrap_or(Value::Null)
}

fn load_basis(path: &Path, entry_bound: Option<u64>) -> Result<LatticeBasis, CliError> {
    Ok(parse_basis(&read(path)?, entry_bound)?)
}

fn gen_instance(mut a: GenInstanceArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let seed = *a.seed.get_or_insert_with(fresh_seed);
    let beta = a.beta.unwrap_or_else(|| default_beta(a.n as u64, a.big_q));
    let inst = SisInstance::random(a.n, a.m, a.big_q, beta, &mut stream(seed, 0))?;
    let text = format!("# sisz gen instance seed={seed}\n{}", write_instance(&inst));
    emit(a.out.as_deref(), &text, stdout)
}

fn gen_basis(mut a: GenBasisArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let seed = *a.seed.get_or_insert_with(fresh_seed);
    let m = i64::try_from(a.entry_bound).map_err(|_| CliError::Usage("M too large".into()))?;
    let basis = random_basis(a.n, m, &mut stream(seed, 0))?;
    let text = format!("# sisz gen basis seed={seed} M={}\n{}", a.entry_bound, write_basis(&basis));
    emit(a.out.as_deref(), &text, stdout)
}

fn solve(a: SolveArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut inst = parse_instance(&read(&a.instance)?)?;
    if let Some(b) = a.beta {
        inst = inst.with_beta(b)?;
    }
    let oracle = oracle_by_name(a.solver.name(), a.budget)?;
    let start = Instant::now();
    let outcome = oracle.solve(&inst);
    let elapsed = start.elapsed();
    let entry_bound = inst.q().saturating_sub(1).max(1);
    let siegel = siegel_report(inst.n() as u64, inst.m() as u64, entry_bound, inst.q(), Some(inst.beta())).ok();
    let (status, z, checks) = match &outcome {
        Ok(SolveOutcome::Found(s)) => {
            let c = verify_solution(&inst, &s.z)?;
            let checks = json!({
                "nonzero": c.nonzero,
                "product_zero": c.product_zero,
                "within_bound": c.within_bound,
            });
            ("found", Some(s.z.clone()), Some(checks))
        }
        Ok(SolveOutcome::Infeasible) => ("infeasible", None, None),
        Ok(SolveOutcome::Exhausted) => ("exhausted", None, None),
        Err(_) => ("error", None, None),
    };
    if let Some(path) = &a.report {
        let mut result = json!({
            "instance": {
                "n": inst.n(),
                "m": inst.m(),
                "Q": inst.q(),
                "beta": inst.beta(),
                "A_hash": report::matrix_hash(inst.matrix()),
            },
            "solver": a.solver.name(),
            "status": status,
            "z": z,
            "checks": checks,
            "siegel": siegel.as_ref().map(report::siegel),
        });
        if let Err(e) = &outcome {
            result["error"] = json!(e.to_string());
        }
        if a.timing {
            result["elapsed_ms"] = json!(elapsed.as_secs_f64() * 1e3);
        }
        let text = report::to_text(&report::envelope("solve", config_value(&a), None, result));
        emit(Some(path), &text, stdout)?;
    }
    match outcome? {
        SolveOutcome::Found(s) => emit(a.out.as_deref(), &write_solution(&s.z), stdout),
        SolveOutcome::Infeasible => Err(CliError::Failed("no solution within the bound (certified)".into())),
        SolveOutcome::Exhausted => Err(CliError::Failed("solver budget exhausted without a solution".into())),
    }
}

/// Resolves the reduction configuration from CLI overrides.
fn reduction_config(basis: &LatticeBasis, a: &ReduceArgsView) -> Result<ReductionConfig, CliError> {
    let mut cfg = ReductionConfig::for_basis(basis, EtaTilde::manual(a.eta.unwrap_or(1.0)))?;
    if let Some(m) = a.entry_bound {
        cfg = ReductionConfig::defaults(basis.dim(), m, cfg.eta);
    }
    if let Some(m) = a.m {
        cfg.m = m;
        cfg.q = sisz_core::reduction::default_q(cfg.n as u64, m as u64, cfg.entry_bound);
        cfg.beta = default_beta(cfg.n as u64, cfg.q);
    }
    if let Some(q) = a.big_q {
        cfg.q = q;
        cfg.beta = default_beta(cfg.n as u64, q);
    }
    if let Some(b) = a.beta {
        cfg.beta = b;
    }
    cfg.solver = a.solver.name().into();
    cfg.solver_budget = a.budget;
    cfg.order = match a.order {
        OrderChoice::Written => TrialOrder::Written,
        OrderChoice::Reordered => TrialOrder::Reordered,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// The fields of [`ReduceArgs`] and [`SweepArgs`] that shape a configuration.
struct ReduceArgsView {
    entry_bound: Option<u64>,
    m: Option<usize>,
    big_q: Option<u64>,
    beta: Option<u64>,
    eta: Option<f64>,
    solver: SolverChoice,
    budget: Option<u64>,
    order: OrderChoice,
}

fn summary_row(cfg: &ReductionConfig, eta: f64, calls: u64, successes: u64, res: Option<&SivpResult>) -> SummaryRow {
    SummaryRow {
        n: cfg.n,
        m: cfg.m,
        entry_bound: cfg.entry_bound,
        big_q: cfg.q,
        beta: cfg.beta,
        eta,
        calls,
        successes,
        max_norm: res.map(|r| r.max_norm),
        lambda_n: res.map(|r| r.lambda_n),
        factor: res.map(|r| r.achieved_factor),
    }
}

fn run_summary(run: &SivpRun) -> SummaryRow {
    let best = run.best.map(|i| &run.candidates[i]);
    let eta = best.map_or(run.schedule.eta_hat, |c| c.eta.value);
    summary_row(&run.config, eta, run.total_calls, run.total_successes, run.best_result())
}

fn reduce(mut a: ReduceArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let seed = *a.seed.get_or_insert_with(fresh_seed);
    let basis = load_basis(&a.basis, a.entry_bound)?;
    let view = ReduceArgsView {
        entry_bound: a.entry_bound,
        m: a.m,
        big_q: a.big_q,
        beta: a.beta,
        eta: a.eta,
        solver: a.solver,
        budget: a.budget,
        order: a.order,
    };
    let mut cfg = reduction_config(&basis, &view)?;
    let n = basis.dim();
    let estimate = if a.no_certify { None } else { smoothing_estimate(&basis, Epsilon::reduction_default(n)).ok() };
    let (mut transcript, row, full_rank) = match a.eta {
        Some(value) => {
            let mut eta = EtaTilde::manual(value);
            if let Some(est) = &estimate {
                eta.certify(est);
            }
            cfg.eta = eta;
            let ctx = ReductionContext::new(basis, cfg.clone())?;
            let c = collect_independent(&ctx, seed, a.trials.unwrap_or(FALLBACK_CALL_CAP))?;
            let res = if c.is_full_rank(n) { Some(SivpResult::from_vectors(&ctx, c.vectors.clone())?) } else { None };
            let mut t = report::single_transcript(&cfg, seed, &c, res.as_ref(), a.full);
            t["smoothing"] = estimate.as_ref().map_or(Value::Null, report::smoothing);
            let row = summary_row(&cfg, value, c.calls, c.successes, res.as_ref());
            (t, row, res.is_some())
        }
        None => {
            let opts = SivpOptions {
                profile_trials: a.profile_trials,
                calls_per_candidate: a.trials,
                certify: !a.no_certify,
            };
            let run = sivp_approximate(&basis, &cfg, seed, &opts)?;
            let mut t = report::transcript(&run, estimate.as_ref(), a.profile_trials.max(1), a.full);
            t["total_call_budget"] = json!(total_call_budget(&run.schedule, run.calls_per_candidate));
            (t, run_summary(&run), run.best.is_some())
        }
    };
    transcript["tool"] = json!(report::TOOL);
    transcript["version"] = json!(report::VERSION);
    transcript["cli"] = config_value(&a);
    emit(a.out.as_deref(), &report::to_text(&transcript), stdout)?;
    if let Some(p) = &a.csv {
        let text = write_rows(std::slice::from_ref(&row))?;
        emit(Some(p), &text, stdout)?;
    }
    if full_rank {
        Ok(())
    } else {
        let _ = writeln!(stderr, "sisz: transcript written; no η̃ produced {n} independent vectors");
        Err(CliError::Failed("reduction did not reach full rank".into()))
    }
}

fn moddist(a: ModdistArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let r = exact_mod_distance(a.big_q, a.q)?;
    let text = report::to_text(&report::envelope("stats moddist", config_value(&a), None, report::moddist(&r)));
    emit(a.out.as_deref(), &text, stdout)
}

fn lift(a: LiftArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let inst = parse_instance(&read(&a.instance)?)?;
    let q = match a.q {
        Some(q) => q,
        None => (inst.m() as u64)
            .checked_mul(inst.q().saturating_sub(1))
            .and_then(|x| x.checked_mul(inst.beta()))
            .and_then(|x| x.checked_add(1))
            .ok_or_else(|| CliError::Usage("default q overflows u64; pass --q".into()))?,
    };
    let r = lift_check_with(inst.matrix(), inst.q(), inst.beta(), q, a.budget)?;
    let text = report::to_text(&report::envelope("stats lift", config_value(&a), None, report::lift(&r)));
    emit(a.out.as_deref(), &text, stdout)
}

fn incompat(a: IncompatArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let r = incompatibility_report(a.n, a.m, a.big_q, a.beta);
    let text = report::to_text(&report::envelope("stats incompat", config_value(&a), None, report::incompat(&r)));
    emit(a.out.as_deref(), &text, stdout)
}

fn uniformity(mut a: UniformityArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let seed = *a.seed.get_or_insert_with(fresh_seed);
    let basis = load_basis(&a.basis, a.entry_bound)?;
    let mut bracket = None;
    let channel = if a.uniform {
        UniformityChannel::ExactUniform
    } else {
        let eta = match a.eta {
            Some(e) => e,
            None => {
                let est = smoothing_estimate(&basis, Epsilon::new(a.eps)?)?;
                let e = a.eta_factor * est.upper;
                bracket = Some(est);
                e
            }
        };
        UniformityChannel::Gaussian { eta }
    };
    let r = column_uniformity_test(&basis, a.big_q, channel, a.trials, derive_seed(seed, 0))?;
    let band = if a.replicates > 0 {
        Some(uniformity_null_band(&basis, a.big_q, a.trials, a.replicates, a.quantile, derive_seed(seed, 1))?)
    } else {
        None
    };
    let mut result = report::uniformity(&r);
    result["smoothing"] = bracket.as_ref().map_or(Value::Null, report::smoothing);
    result["null_band"] = json!(band);
    result["within_band"] = json!(band.map(|b| r.statistic() <= b));
    let text = report::to_text(&report::envelope("stats uniformity", config_value(&a), Some(seed), result));
    emit(a.out.as_deref(), &text, stdout)
}

fn sweep(mut a: SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let seed = *a.seed.get_or_insert_with(fresh_seed);
    let mut cells = Vec::new();
    for &n in &a.n {
        for &m in &a.entry_bound {
            for rep in 0..a.reps {
                cells.push((n, m, rep));
            }
        }
    }
    let opts = SivpOptions { profile_trials: a.profile_trials, calls_per_candidate: a.trials, certify: true };
    let run_cell = |i: usize, &(n, m_bound, _rep): &(usize, u64, u64)| -> SweepRow {
        let cell_seed = derive_seed(seed, i as u64);
        let outcome = (|| -> Result<SivpRun, CliError> {
            let m = i64::try_from(m_bound).map_err(|_| CliError::Usage("M too large".into()))?;
            let basis = random_basis(n, m, &mut stream(cell_seed, 0))?;
            let view = ReduceArgsView {
                entry_bound: Some(m_bound),
                m: None,
                big_q: None,
                beta: None,
                eta: None,
                solver: a.solver,
                budget: a.budget,
                order: OrderChoice::Written,
                    };
            let cfg = reduction_config(&basis, &view)?;
            Ok(sivp_approximate(&basis, &cfg, derive_seed(cell_seed, 1), &opts)?)
        })();
        match outcome {
            Ok(run) => {
                let status = if run.best.is_some() { "ok" } else { "no-full-rank" };
                SweepRow::new(run_summary(&run), cell_seed, status.into(), Some(run.oracle_rate))
            }
            Err(e) => SweepRow::new(SummaryRow::empty(n, m_bound), cell_seed, format!("error: {e}"), None),
        }
    };
    let compute = || -> Vec<SweepRow> { cells.par_iter().enumerate().map(|(i, c)| run_cell(i, c)).collect() };
    let rows = match a.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?
            .install(compute),
        None => compute(),
    };
    let failed = rows.iter().filter(|r| r.status != "ok").count();
    emit(a.out.as_deref(), &write_rows(&rows)?, stdout)?;
    if failed > 0 {
        let _ = writeln!(stderr, "sisz: {failed} of {} cells did not reach full rank", rows.len());
        return Err(CliError::Failed(format!("{failed} sweep cells failed")));
    }
    Ok(())
}

fn eta(a: EtaArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let basis = load_basis(&a.basis, a.entry_bound)?;
    let n = basis.dim();
    let eps = match a.eps {
        Some(e) => Epsilon::new(e)?,
        None => Epsilon::reduction_default(n),
    };
    let schedule = eta_schedule(&basis)?;
    let est = smoothing_estimate_with(&basis, eps, a.rel_width)?;
    let chosen = select_eta(&schedule, &est);
    let certified: Vec<bool> = schedule
        .candidates
        .iter()
        .enumerate()
        .map(|(k, &c)| EtaTilde::candidate(k, c).certify(&est))
        .collect();
    let result = json!({
        "schedule": report::schedule(&schedule),
        "smoothing": report::smoothing(&est),
        "certified": certified,
        "selected": report::eta(&chosen),
    });
    let text = report::to_text(&report::envelope("eta", config_value(&a), None, result));
    emit(a.out.as_deref(), &text, stdout)
}
