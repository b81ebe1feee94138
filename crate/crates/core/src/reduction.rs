//! The short-vector reduction: Gaussian samples reduced mod `P(B)` become a
//! random SIS instance whose solution combines the lattice offsets into a
//! short lattice vector. Repeating it collects `n` independent short vectors.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::gaussian::{
    sample_continuous, smoothing_estimate, CosetSampler, Epsilon, EtaTilde, GaussianSpec, SmoothingEstimate,
};
use crate::lattice::{lattice_membership, lll_reduce, reduce_mod_parallelepiped, LatticeBasis, LatticeVector};
use crate::matrix::{big_to_f64, norm_sq, norm_sq_q, rational_from_f64, IntegerMatrix, RankAccumulator};
use crate::minima::successive_minima;
use crate::rng::{derive_seed, stream};
use crate::sis::{
    default_beta, oracle_by_name, oracle_success_profile, verify_solution, Provenance, SisInstance, SisOracle,
    SolveOutcome,
};

/// Order of the steps within one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialOrder {
    /// Sample, reduce, build `A`, solve, combine.
    Written,
    /// Analysis mode: draw `y_j` uniform on `P(B)`, build `A`, solve, then
    /// draw `x_j` from the discrete Gaussian on `ℒ + y_j`, and combine.
    Reordered,
}

impl TrialOrder {
    pub fn as_str(&self) -> &'static str {
        match self {
            TrialOrder::Written => "written",
            TrialOrder::Reordered => "reordered",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionConfig {
    pub n: usize,
    pub m: usize,
    /// Basis entry bound `M`.
    pub entry_bound: u64,
    pub q: u64,
    pub beta: u64,
    pub eta: EtaTilde,
    /// Solver name understood by [`oracle_by_name`].
    pub solver: String,
    pub solver_budget: Option<u64>,
    pub order: TrialOrder,
}

/// `⌈n√m·M⌉` as the least `Q` with `Q² ≥ n²·m·M²`.
pub fn default_q(n: u64, m: u64, entry_bound: u64) -> u64 {
    let target = BigInt::from(n * n) * BigInt::from(m) * BigInt::from(entry_bound) * BigInt::from(entry_bound);
    let r = target.sqrt();
    let r = if &r * &r >= target { r } else { r + 1u32 };
    r.to_u64().expect("Q fits in u64")
}

impl ReductionConfig {
    /// `m = (n+1)n`, `Q = ⌈n√m·M⌉`, `β = ⌈β_n⌉ + 1`, lattice solver, written order.
    pub fn defaults(n: usize, entry_bound: u64, eta: EtaTilde) -> Self {
        let m = (n + 1) * n;
        let q = default_q(n as u64, m as u64, entry_bound);
        Self {
            n,
            m,
            entry_bound,
            q,
            beta: default_beta(n as u64, q),
            eta,
            solver: "kernel-lll-enum".into(),
            solver_budget: None,
            order: TrialOrder::Written,
        }
    }

    pub fn for_basis(basis: &LatticeBasis, eta: EtaTilde) -> Result<Self> {
        let m = basis
            .entry_bound()
            .to_u64()
            .ok_or_else(|| Error::Capability("entry bound exceeds u64".into()))?;
        Ok(Self::defaults(basis.dim(), m, eta))
    }

    /// Checks `m > n`, `β ≥ 1`, `η̃ > 0` and `Q ≥ n√m·M`, the last exactly.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m <= self.n {
            return Err(Error::Precondition(format!("need m > n ≥ 1, got n = {}, m = {}", self.n, self.m)));
        }
        if self.beta == 0 {
            return Err(Error::Precondition("β must be at least 1".into()));
        }
        if !(self.eta.value.is_finite() && self.eta.value > 0.0) {
            return Err(Error::Precondition(format!("η̃ must be positive, got {}", self.eta.value)));
        }
        if self.q < default_q(self.n as u64, self.m as u64, self.entry_bound) {
            return Err(Error::Precondition(format!(
                "Q = {} is below n√m·M for n = {}, m = {}, M = {}",
                self.q, self.n, self.m, self.entry_bound
            )));
        }
        Ok(())
    }

    /// `16√2·β·√(nm)·log₂ n`.
    pub fn norm_bound_factor(&self) -> f64 {
        16.0 * core::f64::consts::SQRT_2
            * self.beta as f64
            * libm::sqrt((self.n * self.m) as f64)
            * libm::log2(self.n as f64)
    }

    /// `(m·n√n·M/Q)² ≤ nm`, i.e. `m·n²·M² ≤ Q²`.
    pub fn closeness_sum_ok(&self) -> bool {
        let lhs = BigInt::from(self.m as u64 * (self.n * self.n) as u64) * BigInt::from(self.entry_bound).pow(2);
        lhs <= BigInt::from(self.q).pow(2)
    }

    pub fn oracle(&self) -> Result<Box<dyn SisOracle + Send + Sync>> {
        oracle_by_name(&self.solver, self.solver_budget)
    }
}

/// Builds `A` with columns `a_j = ⌊Q·B⁻¹y_j⌋`.
///
/// Each `y_j` must lie in `P(B)`, i.e. have basis coordinates in `[0, 1)`;
/// then every entry lies in `{0, …, Q−1}`.
pub fn build_a(basis: &LatticeBasis, ys: &[Vec<BigRational>], q: u64) -> Result<IntegerMatrix> {
    let fracs = ys.iter().map(|y| basis.coordinates(y)).collect::<Result<Vec<_>>>()?;
    build_a_from_coordinates(&fracs, q)
}

/// [`build_a`] from the coordinates `B⁻¹y_j` directly.
pub fn build_a_from_coordinates(fracs: &[Vec<BigRational>], q: u64) -> Result<IntegerMatrix> {
    let qr = BigRational::from_integer(BigInt::from(q));
    let mut cols = Vec::with_capacity(fracs.len());
    for (j, f) in fracs.iter().enumerate() {
        if let Some(bad) = f.iter().find(|c| !crate::lattice::frac_is_canonical(c)) {
            return Err(Error::Precondition(format!("y_{j} lies outside P(B): coordinate {bad}")));
        }
        cols.push(f.iter().map(|c| (c * &qr).floor().to_integer()).collect::<Vec<_>>());
    }
    IntegerMatrix::from_columns(&cols)
}

/// Exact checks recorded for every trial.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TrialChecks {
    /// Every entry of `A` lies in `{0, …, Q−1}`.
    pub a_in_range: bool,
    /// `‖y_j − z_j‖² ≤ n³M²/Q²` for all `j`, with `z_j = B·a_j/Q`.
    pub closeness: bool,
    /// The oracle's `r` passed [`verify_solution`].
    pub solution_valid: Option<bool>,
    /// `v` has integer coordinates and equals `Σ r_j (y_j − x_j)` exactly.
    pub membership: Option<bool>,
    /// `‖v‖ ≤ 16√2·β·√(nm)·log₂ n·λ_n`.
    pub norm_bound: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrialOutcome {
    Success,
    /// The oracle returned no solution (budget or infeasible).
    OracleFailed(String),
}

/// Everything one call produced, sufficient to replay and audit it.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub seed: u64,
    pub stream: u64,
    pub x: Vec<Vec<BigRational>>,
    pub y: Vec<Vec<BigRational>>,
    /// Integer coefficients of `y_j − x_j`.
    pub shift_coeffs: Vec<Vec<BigInt>>,
    pub a: IntegerMatrix,
    pub r: Option<Vec<i64>>,
    pub v_coeffs: Option<Vec<BigInt>>,
    pub v: Option<Vec<BigInt>>,
    pub outcome: TrialOutcome,
    /// Last step completed (1–5).
    pub step_reached: u8,
    pub checks: TrialChecks,
}

impl TrialRecord {
    pub fn vector(&self) -> Option<LatticeVector> {
        Some(LatticeVector { coords: self.v.clone()?, coeffs: self.v_coeffs.clone() })
    }
}

/// Per-basis state shared across trials.
pub struct ReductionContext {
    pub basis: LatticeBasis,
    pub config: ReductionConfig,
    pub lambda_n_sq: BigInt,
    pub lambda_exact: bool,
    oracle: Box<dyn SisOracle + Send + Sync>,
    coset: Option<CosetSampler>,
}

impl core::fmt::Debug for ReductionContext {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ReductionContext")
            .field("config", &self.config)
            .field("lambda_n_sq", &self.lambda_n_sq)
            .finish_non_exhaustive()
    }
}

impl ReductionContext {
    pub fn new(basis: LatticeBasis, config: ReductionConfig) -> Result<Self> {
        config.validate()?;
        if basis.dim() != config.n {
            return Err(Error::Dimension(format!("basis of dimension {} for n = {}", basis.dim(), config.n)));
        }
        if basis.entry_bound() > &BigInt::from(config.entry_bound) {
            return Err(Error::EntryBound(format!("basis entries exceed M = {}", config.entry_bound)));
        }
        let minima = successive_minima(&basis, basis.dim())?;
        let coset = match config.order {
            TrialOrder::Reordered => Some(CosetSampler::new(&basis)?),
            TrialOrder::Written => None,
        };
        Ok(Self {
            oracle: config.oracle()?,
            lambda_n_sq: minima.last_squared().clone(),
            lambda_exact: minima.exact,
            basis,
            config,
            coset,
        })
    }

    pub fn with_eta(&self, eta: EtaTilde) -> Result<Self> {
        let mut config = self.config.clone();
        config.eta = eta;
        config.validate()?;
        Ok(Self {
            basis: self.basis.clone(),
            oracle: config.oracle()?,
            config,
            lambda_n_sq: self.lambda_n_sq.clone(),
            lambda_exact: self.lambda_exact,
            coset: self.coset.clone(),
        })
    }

    pub fn lambda_n(&self) -> f64 {
        libm::sqrt(big_to_f64(&self.lambda_n_sq))
    }

    /// One call of the reduction, on generator stream `(seed, stream)`.
    pub fn short_vectors(&self, seed: u64, stream_id: u64) -> Result<TrialRecord> {
        let mut rng = stream(seed, stream_id);
        let cfg = &self.config;
        let (n, m) = (cfg.n, cfg.m);
        let spec = GaussianSpec::new(cfg.eta.value)?;
        let mut x = Vec::with_capacity(m);
        let mut y = Vec::with_capacity(m);
        let mut fracs = Vec::with_capacity(m);
        let mut shift_coeffs = Vec::with_capacity(m);
        match cfg.order {
            TrialOrder::Written => {
                for _ in 0..m {
                    let xs = sample_continuous(&spec, n, &mut rng);
                    let red = reduce_mod_parallelepiped(&self.basis, &xs)?;
                    x.push(xs.iter().map(|&v| rational_from_f64(v)).collect::<Result<Vec<_>>>()?);
                    shift_coeffs.push(red.shift_coeffs());
                    fracs.push(red.fractional);
                    y.push(red.y);
                }
            }
            TrialOrder::Reordered => {
                for _ in 0..m {
                    let u = (0..n).map(|_| rational_from_f64(rng.random::<f64>())).collect::<Result<Vec<_>>>()?;
                    let yj: Vec<BigRational> = (0..n)
                        .map(|i| {
                            (0..n).fold(BigRational::zero(), |s, k| {
                                s + BigRational::from_integer(self.basis.matrix().get(i, k).clone()) * &u[k]
                            })
                        })
                        .collect();
                    fracs.push(u);
                    y.push(yj);
                }
            }
        }
        let a = build_a_from_coordinates(&fracs, cfg.q)?;
        let mut checks = TrialChecks {
            a_in_range: a.entries().iter().all(|e| *e >= BigInt::zero() && *e < BigInt::from(cfg.q)),
            closeness: self.closeness(&fracs, &a),
            ..TrialChecks::default()
        };
        let inst = SisInstance::new(a.clone(), cfg.q, cfg.beta, Provenance::FromReduction)?;
        let outcome = self.oracle.solve(&inst);
        let mut record = TrialRecord {
            seed,
            stream: stream_id,
            x,
            y,
            shift_coeffs,
            a,
            r: None,
            v_coeffs: None,
            v: None,
            outcome: TrialOutcome::Success,
            step_reached: 4,
            checks: TrialChecks::default(),
        };
        let r = match outcome {
            Ok(SolveOutcome::Found(s)) => s.z,
            Ok(SolveOutcome::Infeasible) => return Ok(self.fail(record, checks, "oracle: infeasible")),
            Ok(SolveOutcome::Exhausted) => return Ok(self.fail(record, checks, "oracle: budget exhausted")),
            Err(e) => return Ok(self.fail(record, checks, &format!("oracle error: {e}"))),
        };
        let valid = verify_solution(&inst, &r)?.passed();
        checks.solution_valid = Some(valid);
        if !valid || r.iter().all(|&c| c == 0) {
            record.r = Some(r);
            return Ok(self.fail(record, checks, "oracle returned an invalid solution"));
        }
        if cfg.order == TrialOrder::Reordered {
            let sampler = self.coset.as_ref().expect("coset sampler built for reordered mode");
            for j in 0..m {
                let s = sampler.sample(&record.y[j], &spec, &mut rng)?;
                record.shift_coeffs.push(s.coeffs.iter().map(|c| -c).collect());
                record.x.push(s.point);
            }
        }
        // v = Σ r_j (y_j − x_j), assembled in basis coefficients
        let mut v_coeffs = alloc::vec![BigInt::zero(); n];
        for (rj, sc) in r.iter().zip(&record.shift_coeffs) {
            for (acc, c) in v_coeffs.iter_mut().zip(sc) {
                *acc += c * *rj;
            }
        }
        let v = self.basis.combine(&v_coeffs)?;
        checks.membership = Some(self.membership(&r, &record, &v, &v_coeffs));
        let bound = cfg.norm_bound_factor() * self.lambda_n();
        checks.norm_bound = Some(libm::sqrt(big_to_f64(&norm_sq(&v))) <= bound);
        record.r = Some(r);
        record.v_coeffs = Some(v_coeffs);
        record.v = Some(v);
        record.step_reached = 5;
        record.checks = checks;
        Ok(record)
    }

    fn fail(&self, mut record: TrialRecord, checks: TrialChecks, why: &str) -> TrialRecord {
        record.outcome = TrialOutcome::OracleFailed(why.into());
        record.checks = checks;
        record
    }

    /// `‖B(f_j − a_j/Q)‖² ≤ n³M²/Q²` for every column, exactly.
    fn closeness(&self, fracs: &[Vec<BigRational>], a: &IntegerMatrix) -> bool {
        let cfg = &self.config;
        let qr = BigRational::from_integer(BigInt::from(cfg.q));
        let n3 = BigInt::from((cfg.n * cfg.n * cfg.n) as u64);
        let bound = BigRational::new(n3 * BigInt::from(cfg.entry_bound).pow(2), BigInt::from(cfg.q).pow(2));
        fracs.iter().enumerate().all(|(j, f)| {
            let d: Vec<BigRational> = f
                .iter()
                .enumerate()
                .map(|(i, c)| c - BigRational::from_integer(a.get(i, j).clone()) / &qr)
                .collect();
            let diff: Vec<BigRational> = (0..cfg.n)
                .map(|i| {
                    (0..cfg.n).fold(BigRational::zero(), |s, k| {
                        s + BigRational::from_integer(self.basis.matrix().get(i, k).clone()) * &d[k]
                    })
                })
                .collect();
            norm_sq_q(&diff) <= bound
        })
    }

    /// Independent confirmation: `v ∈ ℒ` via `B⁻¹v ∈ ℤⁿ`, and `v` equals the
    /// rational combination `Σ r_j (y_j − x_j)`.
    fn membership(&self, r: &[i64], rec: &TrialRecord, v: &[BigInt], v_coeffs: &[BigInt]) -> bool {
        if lattice_membership(&self.basis, v).as_deref() != Some(v_coeffs) {
            return false;
        }
        let mut acc = alloc::vec![BigRational::zero(); self.config.n];
        for ((rj, yj), xj) in r.iter().zip(&rec.y).zip(&rec.x) {
            let rq = BigRational::from_integer(BigInt::from(*rj));
            for ((a, yi), xi) in acc.iter_mut().zip(yj).zip(xj) {
                *a += &rq * (yi - xi);
            }
        }
        acc.iter().zip(v).all(|(a, b)| a == &BigRational::from_integer(b.clone()))
    }
}

/// Halving schedule of Gaussian parameters `η̃_k = 2^{−k}·η̂`.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaSchedule {
    pub n: usize,
    /// `R² = max ‖b_i^LLL‖²`, exact.
    pub r_sq: BigInt,
    pub r: f64,
    /// `2R·log₂ n`, floored at `2R` for `n = 1`.
    pub eta_hat: f64,
    /// `2ⁿ·n²`, the assumed bound on `η̂/η_ε`.
    pub alpha: f64,
    /// `⌈log₂ α⌉ + 2`.
    pub k: usize,
    pub candidates: Vec<f64>,
}

pub fn eta_schedule(basis: &LatticeBasis) -> Result<EtaSchedule> {
    let n = basis.dim();
    let red = lll_reduce(basis)?;
    let r_sq = red.columns().iter().map(|c| norm_sq(c)).max().unwrap_or_default();
    let r = libm::sqrt(big_to_f64(&r_sq));
    let eta_hat = if n == 1 { 2.0 * r } else { 2.0 * r * libm::log2(n as f64) };
    let alpha = libm::pow(2.0, n as f64) * (n * n) as f64;
    let k = libm::ceil(libm::log2(alpha)) as usize + 2;
    let candidates = (0..=k).map(|i| eta_hat / libm::pow(2.0, i as f64)).collect();
    Ok(EtaSchedule { n, r_sq, r, eta_hat, alpha, k, candidates })
}

/// Picks a schedule candidate for a fixed-`η̃` run: one certified to lie in
/// `[2η_ε, 4η_ε]` by `est`, else the smallest candidate `≥ 2·est.upper`, else `η̂`.
pub fn select_eta(schedule: &EtaSchedule, est: &SmoothingEstimate) -> EtaTilde {
    let mut fallback = EtaTilde::candidate(0, schedule.eta_hat);
    fallback.certify(est);
    for (k, &c) in schedule.candidates.iter().enumerate() {
        let mut e = EtaTilde::candidate(k, c);
        if e.certify(est) {
            return e;
        }
        if c >= 2.0 * est.upper {
            fallback = e;
        }
    }
    fallback
}

/// Output of [`collect_independent`].
#[derive(Debug, Clone, PartialEq)]
pub struct CollectResult {
    /// Independent vectors in the order they were accepted.
    pub vectors: Vec<LatticeVector>,
    pub rank: usize,
    pub calls: u64,
    pub successes: u64,
    /// Successful outputs consumed when rank first reached `n`.
    pub successes_to_full_rank: Option<u64>,
    /// Successes while the rank was below `n`, and how many of them raised it.
    pub escape_trials: u64,
    pub escapes: u64,
    pub trials: Vec<TrialRecord>,
}

impl CollectResult {
    pub fn is_full_rank(&self, n: usize) -> bool {
        self.rank == n
    }

    /// Observed rate at which a success left the span of earlier vectors.
    pub fn escape_rate(&self) -> Option<f64> {
        (self.escape_trials > 0).then(|| self.escapes as f64 / self.escape_trials as f64)
    }
}

/// Calls [`ReductionContext::short_vectors`] with streams `0, 1, …` of `seed`
/// until `n` independent vectors are found or `max_calls` is spent.
pub fn collect_independent(ctx: &ReductionContext, seed: u64, max_calls: u64) -> Result<CollectResult> {
    let n = ctx.config.n;
    let mut acc = RankAccumulator::new(n);
    let mut out = CollectResult {
        vectors: Vec::new(),
        rank: 0,
        calls: 0,
        successes: 0,
        successes_to_full_rank: None,
        escape_trials: 0,
        escapes: 0,
        trials: Vec::new(),
    };
    while out.calls < max_calls && !acc.is_full() {
        let rec = ctx.short_vectors(seed, out.calls)?;
        out.calls += 1;
        if let Some(v) = rec.vector() {
            out.successes += 1;
            out.escape_trials += 1;
            if acc.insert(&v.coords) {
                out.escapes += 1;
                out.vectors.push(v);
                if acc.is_full() {
                    out.successes_to_full_rank = Some(out.successes);
                }
            }
        }
        out.trials.push(rec);
    }
    out.rank = acc.rank();
    Ok(out)
}

/// `n` independent lattice vectors and their quality relative to `λ_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SivpResult {
    pub vectors: Vec<LatticeVector>,
    pub max_norm_sq: BigInt,
    pub max_norm: f64,
    pub lambda_n_sq: BigInt,
    pub lambda_n: f64,
    /// `λ_n` is exact (otherwise an LLL upper bound).
    pub lambda_exact: bool,
    pub achieved_factor: f64,
    pub bound_factor: f64,
}

impl SivpResult {
    pub fn from_vectors(ctx: &ReductionContext, vectors: Vec<LatticeVector>) -> Result<Self> {
        let n = ctx.config.n;
        let mut acc = RankAccumulator::new(n);
        for v in &vectors {
            acc.insert(&v.coords);
        }
        if vectors.len() != n || !acc.is_full() {
            return Err(Error::Precondition(format!("need {n} independent vectors")));
        }
        let max_norm_sq = vectors.iter().map(LatticeVector::norm_sq).max().unwrap_or_default();
        let max_norm = libm::sqrt(big_to_f64(&max_norm_sq));
        let lambda_n = ctx.lambda_n();
        Ok(Self {
            vectors,
            max_norm,
            max_norm_sq,
            lambda_n_sq: ctx.lambda_n_sq.clone(),
            lambda_n,
            lambda_exact: ctx.lambda_exact,
            achieved_factor: max_norm / lambda_n,
            bound_factor: ctx.config.norm_bound_factor(),
        })
    }
}

/// Outcome of one schedule candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateRun {
    pub k: usize,
    pub eta: EtaTilde,
    pub seed: u64,
    pub collect: CollectResult,
    pub result: Option<SivpResult>,
}

/// Options for [`sivp_approximate`].
#[derive(Debug, Clone, PartialEq)]
pub struct SivpOptions {
    /// Trials used to measure the oracle's success rate (for `c₀`).
    pub profile_trials: u64,
    /// Overrides the per-candidate call budget `n^{⌈c₀⌉+2}`.
    pub calls_per_candidate: Option<u64>,
    /// Bracket each candidate against the smoothing parameter at `ε = n^{−log₂ n}`.
    pub certify: bool,
}

impl Default for SivpOptions {
    fn default() -> Self {
        Self { profile_trials: 20, calls_per_candidate: None, certify: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SivpRun {
    pub config: ReductionConfig,
    pub seed: u64,
    pub schedule: EtaSchedule,
    pub oracle_rate: f64,
    pub c0: Option<f64>,
    pub calls_per_candidate: u64,
    pub candidates: Vec<CandidateRun>,
    /// Index into `candidates` of the full-rank run with the smallest `max_norm`.
    pub best: Option<usize>,
    pub total_calls: u64,
    pub total_successes: u64,
}

impl SivpRun {
    pub fn best_result(&self) -> Option<&SivpResult> {
        self.best.and_then(|i| self.candidates[i].result.as_ref())
    }
}

/// Largest per-candidate budget when the measured success rate is 0.
pub const FALLBACK_CALL_CAP: u64 = 1000;

/// Runs the whole schedule and keeps the best full-rank result.
///
/// `config.eta` is ignored; each candidate uses its own `η̃_k` and generator
/// seed `derive_seed(seed, k)`.
pub fn sivp_approximate(
    basis: &LatticeBasis,
    config: &ReductionConfig,
    seed: u64,
    opts: &SivpOptions,
) -> Result<SivpRun> {
    let schedule = eta_schedule(basis)?;
    let n = config.n;
    let base = ReductionContext::new(basis.clone(), ReductionConfig { eta: EtaTilde::manual(schedule.eta_hat), ..config.clone() })?;
    let oracle = config.oracle()?;
    let profile_seed = derive_seed(seed, u64::MAX);
    let profile = oracle_success_profile(
        oracle.as_ref(),
        |i| SisInstance::random(n, config.m, config.q, config.beta, &mut stream(profile_seed, i)),
        opts.profile_trials.max(1),
    )?;
    let calls_per_candidate = opts.calls_per_candidate.unwrap_or_else(|| match profile.c0 {
        Some(c0) => {
            let e = libm::ceil(c0 - 1e-9).max(0.0) as u32 + 2;
            (n as u64).saturating_pow(e)
        }
        None => FALLBACK_CALL_CAP,
    });
    let estimate = if opts.certify {
        smoothing_estimate(basis, Epsilon::reduction_default(n)).ok()
    } else {
        None
    };
    let mut run = SivpRun {
        config: config.clone(),
        seed,
        schedule: schedule.clone(),
        oracle_rate: profile.rate,
        c0: profile.c0,
        calls_per_candidate,
        candidates: Vec::new(),
        best: None,
        total_calls: 0,
        total_successes: 0,
    };
    for (k, &eta_value) in schedule.candidates.iter().enumerate() {
        let mut eta = EtaTilde::candidate(k, eta_value);
        if let Some(est) = &estimate {
            eta.certify(est);
        }
        let ctx = base.with_eta(eta)?;
        let cseed = derive_seed(seed, k as u64);
        let collect = collect_independent(&ctx, cseed, calls_per_candidate)?;
        run.total_calls += collect.calls;
        run.total_successes += collect.successes;
        let result = if collect.is_full_rank(n) {
            Some(SivpResult::from_vectors(&ctx, collect.vectors.clone())?)
        } else {
            None
        };
        if let Some(res) = &result {
            let better = run.best_result().is_none_or(|b| res.max_norm_sq < b.max_norm_sq);
            if better {
                run.best = Some(run.candidates.len());
            }
        }
        run.candidates.push(CandidateRun { k, eta, seed: cseed, collect, result });
    }
    Ok(run)
}

/// Number of calls the whole schedule may make: `(K+1)·n^{⌈c₀⌉+2}`.
pub fn total_call_budget(schedule: &EtaSchedule, calls_per_candidate: u64) -> u64 {
    (schedule.k as u64 + 1) * calls_per_candidate
}
