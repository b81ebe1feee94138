//! JSON renderings of core results. Rationals are `"p/q"` strings, large
//! integers are decimal strings; key order is sorted, so output is stable.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use sisz_core::gaussian::{EtaProvenance, EtaTilde, SmoothingEstimate, SmoothingMethod};
use sisz_core::reduction::{
    CandidateRun, CollectResult, EtaSchedule, ReductionConfig, SivpResult, SivpRun, TrialOutcome, TrialRecord,
};
use sisz_core::sis::{wilson_interval, SiegelReport, SuccessProfile};
use sisz_core::stats::{
    EmpiricalDistance, IncompatibilityReport, LiftReport, ModDistanceReport, UniformityChannel, UniformityReport,
};
use sisz_core::IntegerMatrix;

use crate::formats::{format_rational, small_ints, write_matrix};

pub const TOOL: &str = "sisz";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Wraps a command's payload with tool, version, resolved config and seed.
pub fn envelope(command: &str, config: Value, seed: Option<u64>, result: Value) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "config": config,
        "seed": seed,
        "result": result,
    })
}

pub fn rational(x: &BigRational) -> Value {
    Value::String(format_rational(x))
}

pub fn ints(v: &[BigInt]) -> Value {
    match small_ints(v) {
        Some(s) => json!(s),
        None => json!(v.iter().map(ToString::to_string).collect::<Vec<_>>()),
    }
}

fn rationals(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

/// Non-finite floats become `null`.
fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Hex SHA-256 of the matrix in text format.
pub fn matrix_hash(a: &IntegerMatrix) -> String {
    format!("{:x}", Sha256::digest(write_matrix(a).as_bytes()))
}

pub fn moddist(r: &ModDistanceReport) -> Value {
    json!({
        "Q": r.big_q,
        "q": r.q,
        "t": r.t,
        "r": r.r,
        "delta_exact": rational(&r.delta_exact),
        "upper_bound": rational(&r.upper_bound),
        "uniform": r.uniform,
    })
}

pub fn lift(r: &LiftReport) -> Value {
    json!({
        "Q": r.big_q,
        "beta": r.beta,
        "q": r.q,
        "threshold": r.threshold.to_string(),
        "analytic": r.analytic,
        "holds": r.holds(),
        "exhaustive": r.exhaustive.as_ref().map(|s| json!({
            "checked": s.checked,
            "violations": s.violations,
            "first_violation": s.first_violation,
        })),
    })
}

pub fn incompat(r: &IncompatibilityReport) -> Value {
    json!({
        "n": r.n,
        "m": r.m,
        "Q": r.big_q,
        "beta": r.beta,
        "lifting_threshold": r.lifting_threshold.to_string(),
        "uniformity_ceiling": rational(&r.uniformity_ceiling),
        "uniformity_bound_at_threshold": rational(&r.uniformity_bound_at_threshold),
        "max_uniform_q": r.max_uniform_q,
        "verdict": r.verdict.as_str(),
        "witness": r.witness,
    })
}

fn empirical(d: &EmpiricalDistance) -> Value {
    json!({
        "domain_size": d.domain_size,
        "samples": d.samples,
        "estimate": num(d.estimate),
        "half_width": num(d.half_width),
        "bias_warning": d.bias_warning,
    })
}

pub fn uniformity(r: &UniformityReport) -> Value {
    let channel = match r.channel {
        UniformityChannel::Gaussian { eta } => json!({ "kind": "gaussian", "eta": num(eta) }),
        UniformityChannel::ExactUniform => json!({ "kind": "exact-uniform" }),
    };
    json!({
        "channel": channel,
        "Q": r.big_q,
        "n": r.n,
        "joint": r.joint.as_ref().map(empirical),
        "marginals": r.marginals.iter().map(empirical).collect::<Vec<_>>(),
        "collisions": r.collisions.map(|(c, e)| json!({ "observed": c, "expected": num(e) })),
        "statistic": num(r.statistic()),
    })
}

pub fn siegel(r: &SiegelReport) -> Value {
    json!({
        "n": r.n,
        "m": r.m,
        "M": r.entry_bound,
        "Q": r.q,
        "c_s": num(r.c_s),
        "beta_n": num(r.beta_n),
        "feasible_at": r.feasible_at,
        "beta_exceeds_beta_n": r.beta_exceeds_beta_n,
    })
}

pub fn profile(p: &SuccessProfile) -> Value {
    json!({
        "solver": p.solver,
        "trials": p.trials,
        "successes": p.successes,
        "errors": p.errors,
        "rate": num(p.rate),
        "wilson_95": [num(p.wilson_low), num(p.wilson_high)],
        "c0": p.c0.map(num),
    })
}

pub fn eta(e: &EtaTilde) -> Value {
    let provenance = match e.provenance {
        EtaProvenance::Candidate(k) => json!({ "candidate": k }),
        EtaProvenance::Manual => json!("manual"),
    };
    json!({
        "value": num(e.value),
        "provenance": provenance,
        "certified": match e.certified {
            Some(true) => "certified",
            Some(false) => "uncertified",
            None => "unchecked",
        },
    })
}

pub fn smoothing(s: &SmoothingEstimate) -> Value {
    json!({
        "eps": num(s.eps.value()),
        "ln_eps": num(s.eps.ln()),
        "lower": num(s.lower),
        "upper": num(s.upper),
        "estimate": num(s.value()),
        "method": match s.method {
            SmoothingMethod::AnalyticBound => "analytic",
            SmoothingMethod::TruncatedSumBisection => "bisection",
        },
        "analytic_lower": num(s.analytic_lower),
        "analytic_upper": num(s.analytic_upper),
        "lambda_n": num(s.lambda_n),
        "dual_lambda1": num(s.dual_lambda1),
    })
}

pub fn schedule(s: &EtaSchedule) -> Value {
    json!({
        "n": s.n,
        "R_sq": s.r_sq.to_string(),
        "R": num(s.r),
        "eta_hat": num(s.eta_hat),
        "alpha": num(s.alpha),
        "K": s.k,
        "candidates": s.candidates.iter().map(|&c| num(c)).collect::<Vec<_>>(),
    })
}

pub fn reduction_config(c: &ReductionConfig) -> Value {
    json!({
        "n": c.n,
        "m": c.m,
        "M": c.entry_bound,
        "Q": c.q,
        "beta": c.beta,
        "eta": eta(&c.eta),
        "solver": c.solver,
        "solver_budget": c.solver_budget,
        "order": c.order.as_str(),
        "norm_bound_factor": num(c.norm_bound_factor()),
    })
}

/// One trial. `full` adds the exact `x_j` and `y_j`.
pub fn trial(t: &TrialRecord, full: bool) -> Value {
    let mut v = json!({
        "seed": t.seed,
        "stream": t.stream,
        "A_hash": matrix_hash(&t.a),
        "r": t.r,
        "v_coeffs": t.v_coeffs.as_deref().map(ints),
        "v": t.v.as_deref().map(ints),
        "outcome": match &t.outcome {
            TrialOutcome::Success => "success".to_string(),
            TrialOutcome::OracleFailed(why) => format!("fail: {why}"),
        },
        "step_reached": t.step_reached,
        "checks": {
            "a_in_range": t.checks.a_in_range,
            "closeness": t.checks.closeness,
            "solution_valid": t.checks.solution_valid,
            "membership": t.checks.membership,
            "norm_bound": t.checks.norm_bound,
        },
    });
    if full {
        v["x"] = Value::Array(t.x.iter().map(|c| rationals(c)).collect());
        v["y"] = Value::Array(t.y.iter().map(|c| rationals(c)).collect());
        v["shift_coeffs"] = Value::Array(t.shift_coeffs.iter().map(|c| ints(c)).collect());
    }
    v
}

pub fn sivp_result(r: &SivpResult) -> Value {
    json!({
        "vectors": r.vectors.iter().map(|v| ints(&v.coords)).collect::<Vec<_>>(),
        "max_norm_sq": r.max_norm_sq.to_string(),
        "max_norm": num(r.max_norm),
        "lambda_n_sq": r.lambda_n_sq.to_string(),
        "lambda_n": num(r.lambda_n),
        "lambda_exact": r.lambda_exact,
        "achieved_factor": num(r.achieved_factor),
        "bound_factor": num(r.bound_factor),
    })
}

/// Collection summary; trials are listed separately.
pub fn collect(c: &CollectResult) -> Value {
    json!({
        "rank": c.rank,
        "calls": c.calls,
        "successes": c.successes,
        "successes_to_full_rank": c.successes_to_full_rank,
        "escape_trials": c.escape_trials,
        "escapes": c.escapes,
    })
}

pub fn candidate(c: &CandidateRun) -> Value {
    json!({
        "k": c.k,
        "eta": eta(&c.eta),
        "seed": c.seed,
        "collect": collect(&c.collect),
        "result": c.result.as_ref().map(sivp_result),
    })
}

/// Transcript of a whole schedule run. Contains no timing, so identical
/// inputs give identical bytes.
pub fn transcript(run: &SivpRun, estimate: Option<&SmoothingEstimate>, profile_trials: u64, full: bool) -> Value {
    let successes = (run.oracle_rate * profile_trials as f64).round() as u64;
    let (lo, hi) = wilson_interval(successes, profile_trials, 1.959_963_984_540_054);
    json!({
        "config": reduction_config(&run.config),
        "seed": run.seed,
        "schedule": schedule(&run.schedule),
        "smoothing": estimate.map(smoothing),
        "oracle_profile": {
            "solver": run.config.solver,
            "trials": profile_trials,
            "successes": successes,
            "rate": num(run.oracle_rate),
            "wilson_95": [num(lo), num(hi)],
            "c0": run.c0.map(num),
        },
        "calls_per_candidate": run.calls_per_candidate,
        "total_calls": run.total_calls,
        "total_successes": run.total_successes,
        "candidates": run.candidates.iter().map(candidate).collect::<Vec<_>>(),
        "trials": run
            .candidates
            .iter()
            .flat_map(|c| {
                c.collect.trials.iter().map(move |t| {
                    let mut v = trial(t, full);
                    v["candidate"] = json!(c.k);
                    v
                })
            })
            .collect::<Vec<_>>(),
        "best": run.best,
        "result": run.best_result().map(sivp_result),
    })
}

/// Transcript of a fixed-`η̃` run.
pub fn single_transcript(config: &ReductionConfig, seed: u64, c: &CollectResult, result: Option<&SivpResult>, full: bool) -> Value {
    json!({
        "config": reduction_config(config),
        "seed": seed,
        "total_calls": c.calls,
        "total_successes": c.successes,
        "rank": c.rank,
        "successes_to_full_rank": c.successes_to_full_rank,
        "escape_trials": c.escape_trials,
        "escapes": c.escapes,
        "trials": c.trials.iter().map(|t| trial(t, full)).collect::<Vec<_>>(),
        "result": result.map(sivp_result),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
