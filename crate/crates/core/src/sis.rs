//! Integer SIS: find nonzero `z` with `A z = 0` over ℤ and `‖z‖_∞ ≤ β`, for
//! `A ∈ 𝒞_Q^{n×m}` where `𝒞_Q = {0, …, Q−1}`.
//!
//! Two exact solvers stand in for the abstract oracle: an exhaustive scan and
//! a kernel-lattice search (HNF kernel, LLL, enumeration). Siegel-bound
//! arithmetic is done on integers.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::enumerate::{inflate, EnumStatus, Enumerator};
use crate::error::{Error, Result};
use crate::kernel::sis_kernel_basis;
use crate::lll::lll;
use crate::matrix::IntegerMatrix;

pub const BRUTE_FORCE_BUDGET: u64 = 100_000_000;
pub const ENUMERATION_NODE_BUDGET: u64 = 10_000_000;
/// Largest `m` accepted by the kernel-lattice solver.
pub const LATTICE_MAX_M: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    RandomUniform,
    FromReduction,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::RandomUniform => "random-uniform",
            Provenance::FromReduction => "from-reduction",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SisInstance {
    a: IntegerMatrix,
    a_i64: Vec<i64>,
    q: u64,
    beta: u64,
    provenance: Provenance,
}

impl SisInstance {
    /// Requires `m > n`, `Q ≥ 1` and every entry in `{0, …, Q−1}`. `β = 0` is
    /// representable but rejected by the solvers.
    pub fn new(a: IntegerMatrix, q: u64, beta: u64, provenance: Provenance) -> Result<Self> {
        if a.cols() <= a.rows() {
            return Err(Error::Domain(format!("SIS needs m > n, got n = {}, m = {}", a.rows(), a.cols())));
        }
        if q == 0 {
            return Err(Error::Domain("Q must be positive".into()));
        }
        let qb = BigInt::from(q);
        if let Some(bad) = a.entries().iter().find(|x| **x < BigInt::zero() || **x >= qb) {
            return Err(Error::EntryBound(format!("entry {bad} outside {{0..{}}}", q - 1)));
        }
        // |(Az)_i| ≤ m(Q−1)β must fit comfortably in i64
        let worst = (a.cols() as u128) * (q as u128) * (beta as u128 + 1);
        if worst >= 1u128 << 62 {
            return Err(Error::Capability("instance too large for 64-bit row sums".into()));
        }
        let a_i64 = a.entries().iter().map(|x| x.to_i64().expect("bounded entry")).collect();
        Ok(Self { a, a_i64, q, beta, provenance })
    }

    /// Uniform `A ∈ 𝒞_Q^{n×m}`.
    pub fn random<R: Rng + ?Sized>(n: usize, m: usize, q: u64, beta: u64, rng: &mut R) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("Q must be positive".into()));
        }
        let entries: Vec<BigInt> = (0..n * m).map(|_| BigInt::from(rng.random_range(0..q))).collect();
        Self::new(IntegerMatrix::new(n, m, entries)?, q, beta, Provenance::RandomUniform)
    }

    pub fn with_beta(&self, beta: u64) -> Result<Self> {
        Self::new(self.a.clone(), self.q, beta, self.provenance)
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn m(&self) -> usize {
        self.a.cols()
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.a
    }

    fn entry(&self, i: usize, j: usize) -> i64 {
        self.a_i64[i * self.m() + j]
    }

    /// `A z` in 64-bit arithmetic (entries are bounded at construction).
    pub fn apply(&self, z: &[i64]) -> Vec<i64> {
        (0..self.n()).map(|i| (0..self.m()).map(|j| self.entry(i, j) * z[j]).sum()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    BruteForce,
    KernelLllEnum,
}

impl SolverKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverKind::BruteForce => "brute-force",
            SolverKind::KernelLllEnum => "kernel-lll-enum",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SisSolution {
    pub z: Vec<i64>,
    pub solver: SolverKind,
}

/// Result of a solver run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Found(SisSolution),
    /// The search covered every candidate: no solution exists.
    Infeasible,
    /// The budget ran out first; nothing is certified.
    Exhausted,
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&SisSolution> {
        match self {
            SolveOutcome::Found(s) => Some(s),
            _ => None,
        }
    }

    pub fn into_solution(self) -> Option<SisSolution> {
        match self {
            SolveOutcome::Found(s) => Some(s),
            _ => None,
        }
    }
}

/// Negates `z` if needed so that its first nonzero entry is positive.
pub fn sign_canonicalize(z: &mut [i64]) {
    if z.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in z.iter_mut() {
            *x = -*x;
        }
    }
}

fn require_positive_beta(inst: &SisInstance) -> Result<()> {
    if inst.beta == 0 {
        return Err(Error::Domain("β = 0 admits only z = 0".into()));
    }
    Ok(())
}

/// Exhaustive scan with the default budget.
pub fn solve_sis_bruteforce(inst: &SisInstance) -> Result<SolveOutcome> {
    solve_sis_bruteforce_with(inst, BRUTE_FORCE_BUDGET)
}

/// Scans sign-canonical `z ∈ {−β..β}^m` (first nonzero entry positive) in
/// lexicographic order and returns the first solution. `Infeasible` is a
/// completeness certificate. Fails when `(2β+1)^m > budget`.
pub fn solve_sis_bruteforce_with(inst: &SisInstance, budget: u64) -> Result<SolveOutcome> {
    require_positive_beta(inst)?;
    let m = inst.m();
    let n = inst.n();
    let beta = inst.beta as i64;
    let box_size = (2 * inst.beta as u128 + 1).checked_pow(m as u32);
    if box_size.is_none_or(|s| s > budget as u128) {
        return Err(Error::Capability(format!(
            "(2β+1)^m exceeds the brute-force budget {budget} (β = {}, m = {m})",
            inst.beta
        )));
    }
    let cols: Vec<Vec<i64>> = (0..m).map(|j| (0..n).map(|i| inst.entry(i, j)).collect()).collect();
    let mut hit = None;
    scan_canonical_box(&cols, beta, |z, s| {
        if s.iter().all(|&x| x == 0) {
            hit = Some(z.to_vec());
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    Ok(match hit {
        Some(z) => SolveOutcome::Found(SisSolution { z, solver: SolverKind::BruteForce }),
        None => SolveOutcome::Infeasible,
    })
}

/// Visits every sign-canonical `z ∈ {−β..β}^m` (first nonzero entry positive)
/// in lexicographic order together with `s = Σ z_j cols[j]`, updated
/// incrementally. Returns `false` if the visitor stopped early.
pub fn scan_canonical_box<F>(cols: &[Vec<i64>], beta: i64, mut visit: F) -> bool
where
    F: FnMut(&[i64], &[i64]) -> ControlFlow<()>,
{
    let m = cols.len();
    let n = cols.first().map_or(0, Vec::len);
    let add = |s: &mut [i64], j: usize, k: i64| {
        for (x, a) in s.iter_mut().zip(&cols[j]) {
            *x += k * a;
        }
    };
    // first nonzero position p runs from m−1 down to 0: lexicographic order
    for p in (0..m).rev() {
        let mut z = alloc::vec![0i64; m];
        let mut s = alloc::vec![0i64; n];
        for t in p + 1..m {
            z[t] = -beta;
            add(&mut s, t, -beta);
        }
        for zp in 1..=beta {
            z[p] = zp;
            add(&mut s, p, 1);
            loop {
                if visit(&z, &s).is_break() {
                    return false;
                }
                // odometer over positions p+1..m
                let mut t = m;
                loop {
                    if t == p + 1 {
                        t = p;
                        break;
                    }
                    t -= 1;
                    if z[t] < beta {
                        z[t] += 1;
                        add(&mut s, t, 1);
                        break;
                    }
                    z[t] = -beta;
                    add(&mut s, t, -2 * beta);
                }
                if t == p {
                    break;
                }
            }
        }
    }
    true
}

/// Kernel-lattice solver with the default node budget.
pub fn solve_sis_lattice(inst: &SisInstance) -> Result<SolveOutcome> {
    solve_sis_lattice_with(inst, ENUMERATION_NODE_BUDGET)
}

/// Searches the integer kernel of `A` for an `ℓ∞`-short vector.
///
/// LLL-reduces an HNF kernel basis, tries the reduced vectors, then
/// enumerates kernel points in ℓ₂ balls of growing radius up to `√m·β` (which
/// contains the whole β-box), checking `ℓ∞` at the leaves. A completed final
/// pass without a hit certifies infeasibility.
pub fn solve_sis_lattice_with(inst: &SisInstance, node_budget: u64) -> Result<SolveOutcome> {
    require_positive_beta(inst)?;
    let m = inst.m();
    if m > LATTICE_MAX_M {
        return Err(Error::Capability(format!("lattice solver limited to m ≤ {LATTICE_MAX_M}, got {m}")));
    }
    let kernel = sis_kernel_basis(inst.matrix())?;
    let red = lll(&kernel.columns())?;
    let beta = inst.beta as i64;
    let vecs: Vec<Vec<i64>> = red
        .vectors
        .iter()
        .map(|v| v.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Capability("reduced kernel basis does not fit in i64".into()))?;
    let found = |mut z: Vec<i64>| {
        sign_canonicalize(&mut z);
        debug_assert!(inst.apply(&z).iter().all(|&x| x == 0));
        SolveOutcome::Found(SisSolution { z, solver: SolverKind::KernelLllEnum })
    };
    if let Some(v) = vecs.iter().find(|v| v.iter().all(|x| x.abs() <= beta)) {
        return Ok(found(v.clone()));
    }
    let en = Enumerator::from_lll(&red);
    let full = (m as f64) * (beta * beta) as f64;
    let mut radius = (beta * beta) as f64;
    let mut spent = 0u64;
    loop {
        let r = radius.min(full);
        let mut hit: Option<Vec<i64>> = None;
        let mut z = alloc::vec![0i64; m];
        let st = en.enumerate(None, inflate(r), node_budget - spent, |x| {
            z.iter_mut().for_each(|e| *e = 0);
            for (v, &c) in vecs.iter().zip(x) {
                if c != 0 {
                    for (e, a) in z.iter_mut().zip(v) {
                        *e += c * a;
                    }
                }
            }
            if z.iter().all(|&e| e.abs() <= beta) && z.iter().any(|&e| e != 0) {
                hit = Some(z.clone());
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        spent += st.nodes.min(node_budget - spent);
        if let Some(z) = hit {
            return Ok(found(z));
        }
        match st.status {
            EnumStatus::BudgetExceeded => return Ok(SolveOutcome::Exhausted),
            _ if r >= full => return Ok(SolveOutcome::Infeasible),
            _ => radius *= 2.0,
        }
    }
}

/// Per-condition result of checking a candidate solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolutionCheck {
    pub nonzero: bool,
    pub product_zero: bool,
    pub within_bound: bool,
}

impl SolutionCheck {
    pub fn passed(&self) -> bool {
        self.nonzero && self.product_zero && self.within_bound
    }
}

/// Exact checks of `z ≠ 0`, `A z = 0` and `‖z‖_∞ ≤ β`.
pub fn verify_solution(inst: &SisInstance, z: &[i64]) -> Result<SolutionCheck> {
    if z.len() != inst.m() {
        return Err(Error::Dimension(format!("solution of length {} for m = {}", z.len(), inst.m())));
    }
    let zb: Vec<BigInt> = z.iter().map(|&x| BigInt::from(x)).collect();
    let az = inst.matrix().mul_vec(&zb)?;
    Ok(SolutionCheck {
        nonzero: z.iter().any(|&x| x != 0),
        product_zero: az.iter().all(Zero::is_zero),
        within_bound: z.iter().all(|x| x.unsigned_abs() <= inst.beta),
    })
}

/// Siegel-bound quantities for `A ∈ U_M^{n×m}` and the threshold
/// `β_n = (2n²Q)^{1/n}` for `m = (n+1)n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SiegelReport {
    pub n: u64,
    pub m: u64,
    pub entry_bound: u64,
    pub q: u64,
    /// `(mM)^{n/(m−n)}`.
    pub c_s: f64,
    /// `(2n²Q)^{1/n}`.
    pub beta_n: f64,
    /// `⌊c_S⌋`, computed exactly.
    pub feasible_at: u64,
    /// `β > β_n`, decided exactly, when a β was supplied.
    pub beta_exceeds_beta_n: Option<bool>,
}

fn pow_big(b: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(b), e as usize)
}

/// `⌊(mM)^{n/(m−n)}⌋` as the largest `b` with `b^{m−n} ≤ (mM)^n`.
pub fn siegel_bound(n: u64, m: u64, entry_bound: u64) -> Result<u64> {
    if m <= n {
        return Err(Error::Domain(format!("Siegel bound needs m > n, got n = {n}, m = {m}")));
    }
    if entry_bound == 0 {
        return Err(Error::Domain("entry bound must be at least 1".into()));
    }
    let rhs = pow_big(m * entry_bound, n);
    let root = rhs.nth_root((m - n) as u32);
    root.to_u64().ok_or_else(|| Error::Capability("Siegel bound exceeds u64".into()))
}

/// `⌈β_n⌉`: the least `b` with `b^n ≥ 2n²Q`.
pub fn beta_n_ceil(n: u64, q: u64) -> u64 {
    let target = BigInt::from(2 * n * n) * BigInt::from(q);
    let r = target.nth_root(n as u32);
    let r = r.to_u64().expect("small root");
    if pow_big(r, n) >= target {
        r
    } else {
        r + 1
    }
}

/// `β > (2n²Q)^{1/n}` ⟺ `βⁿ > 2n²Q`.
pub fn beta_exceeds_beta_n(beta: u64, n: u64, q: u64) -> bool {
    pow_big(beta, n) > BigInt::from(2 * n * n) * BigInt::from(q)
}

/// Default bound `⌈β_n⌉ + 1`, strictly above `β_n`.
pub fn default_beta(n: u64, q: u64) -> u64 {
    beta_n_ceil(n, q) + 1
}

pub fn siegel_report(n: u64, m: u64, entry_bound: u64, q: u64, beta: Option<u64>) -> Result<SiegelReport> {
    let feasible_at = siegel_bound(n, m, entry_bound)?;
    let c_s = libm::pow((m * entry_bound) as f64, n as f64 / (m - n) as f64);
    let beta_n = libm::pow((2 * n * n * q) as f64, 1.0 / n as f64);
    Ok(SiegelReport {
        n,
        m,
        entry_bound,
        q,
        c_s,
        beta_n,
        feasible_at,
        beta_exceeds_beta_n: beta.map(|b| beta_exceeds_beta_n(b, n, q)),
    })
}

/// A solver standing in for the SIS oracle.
pub trait SisOracle {
    fn name(&self) -> &'static str;
    fn solve(&self, inst: &SisInstance) -> Result<SolveOutcome>;
}

#[derive(Debug, Clone, Copy)]
pub struct BruteForceOracle {
    pub budget: u64,
}

impl Default for BruteForceOracle {
    fn default() -> Self {
        Self { budget: BRUTE_FORCE_BUDGET }
    }
}

impl SisOracle for BruteForceOracle {
    fn name(&self) -> &'static str {
        SolverKind::BruteForce.as_str()
    }
    fn solve(&self, inst: &SisInstance) -> Result<SolveOutcome> {
        solve_sis_bruteforce_with(inst, self.budget)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct KernelLllOracle {
    pub node_budget: u64,
}

impl Default for KernelLllOracle {
    fn default() -> Self {
        Self { node_budget: ENUMERATION_NODE_BUDGET }
    }
}

impl SisOracle for KernelLllOracle {
    fn name(&self) -> &'static str {
        SolverKind::KernelLllEnum.as_str()
    }
    fn solve(&self, inst: &SisInstance) -> Result<SolveOutcome> {
        solve_sis_lattice_with(inst, self.node_budget)
    }
}

/// Always fails; exercises failure paths.
#[derive(Debug, Clone, Copy, Default)]
pub struct DisabledOracle;

impl SisOracle for DisabledOracle {
    fn name(&self) -> &'static str {
        "disabled"
    }
    fn solve(&self, _inst: &SisInstance) -> Result<SolveOutcome> {
        Ok(SolveOutcome::Exhausted)
    }
}

/// Oracle selection by name: `brute-force`, `kernel-lll-enum` (or `lattice`), `disabled`.
pub fn oracle_by_name(name: &str, budget: Option<u64>) -> Result<Box<dyn SisOracle + Send + Sync>> {
    Ok(match name {
        "brute-force" | "bruteforce" => Box::new(BruteForceOracle { budget: budget.unwrap_or(BRUTE_FORCE_BUDGET) }),
        "kernel-lll-enum" | "lattice" => {
            Box::new(KernelLllOracle { node_budget: budget.unwrap_or(ENUMERATION_NODE_BUDGET) })
        }
        "disabled" => Box::new(DisabledOracle),
        other => return Err(Error::Parse(format!("unknown solver {other:?}"))),
    })
}

/// Measured success rate with a 95% Wilson interval.
#[derive(Debug, Clone, PartialEq)]
pub struct SuccessProfile {
    pub solver: String,
    pub trials: u64,
    pub successes: u64,
    pub errors: u64,
    pub rate: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    /// `c₀` with `rate = n^{−c₀}`; `None` when the rate is 0 or `n = 1`.
    pub c0: Option<f64>,
}

/// Wilson score interval at normal quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let t = trials as f64;
    let p = successes as f64 / t;
    let z2 = z * z;
    let denom = 1.0 + z2 / t;
    let centre = (p + z2 / (2.0 * t)) / denom;
    let half = z * libm::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Runs `oracle` on `trials` instances from `generate(i)` and verifies every
/// returned solution. Solver errors and invalid solutions count as failures.
pub fn oracle_success_profile<O, G>(oracle: &O, mut generate: G, trials: u64) -> Result<SuccessProfile>
where
    O: SisOracle + ?Sized,
    G: FnMut(u64) -> Result<SisInstance>,
{
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    let mut successes = 0;
    let mut errors = 0;
    let mut n = 0;
    for i in 0..trials {
        let inst = generate(i)?;
        n = inst.n();
        match oracle.solve(&inst) {
            Ok(SolveOutcome::Found(s)) if verify_solution(&inst, &s.z)?.passed() => successes += 1,
            Ok(_) => {}
            Err(_) => errors += 1,
        }
    }
    let rate = successes as f64 / trials as f64;
    let (wilson_low, wilson_high) = wilson_interval(successes, trials, 1.959_963_984_540_054);
    let c0 = (rate > 0.0 && n > 1).then(|| -libm::log(rate) / libm::log(n as f64));
    Ok(SuccessProfile {
        solver: oracle.name().into(),
        trials,
        successes,
        errors,
        rate,
        wilson_low,
        wilson_high,
        c0,
    })
}

/// `z` as an exact integer vector.
pub fn to_big(z: &[i64]) -> Vec<BigInt> {
    z.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use alloc::vec;

    fn inst(n: usize, m: usize, entries: &[i64], q: u64, beta: u64) -> SisInstance {
        SisInstance::new(IntegerMatrix::from_i64(n, m, entries).unwrap(), q, beta, Provenance::RandomUniform)
            .unwrap()
    }

    #[test]
    fn forced_kernel() {
        let i = inst(1, 2, &[1, 1], 2, 1);
        let bf = solve_sis_bruteforce(&i).unwrap();
        assert_eq!(bf.solution().unwrap().z, vec![1, -1]);
        let lat = solve_sis_lattice(&i).unwrap();
        assert_eq!(lat.solution().unwrap().z, vec![1, -1]);
    }

    #[test]
    fn square_instance_rejected() {
        let r = SisInstance::new(IntegerMatrix::identity(2), 2, 1, Provenance::RandomUniform);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn entries_outside_range_rejected() {
        let r = SisInstance::new(IntegerMatrix::from_i64(1, 2, &[1, 5]).unwrap(), 5, 1, Provenance::RandomUniform);
        assert!(matches!(r, Err(Error::EntryBound(_))));
    }

    #[test]
    fn zero_beta_rejected() {
        let i = inst(1, 2, &[1, 1], 2, 0);
        assert!(solve_sis_lattice(&i).is_err());
        assert!(solve_sis_bruteforce(&i).is_err());
    }

    #[test]
    fn infeasible_certificate() {
        // x + 3y = 0 has no solution with |x|, |y| ≤ 2 besides 0
        let i = inst(1, 2, &[1, 3], 4, 2);
        assert_eq!(solve_sis_bruteforce(&i).unwrap(), SolveOutcome::Infeasible);
        assert_eq!(solve_sis_lattice(&i).unwrap(), SolveOutcome::Infeasible);
    }

    #[test]
    fn verify_reports_each_condition() {
        let i = inst(1, 3, &[1, 1, 0], 2, 1);
        assert!(verify_solution(&i, &[1, -1, 0]).unwrap().passed());
        let zero = verify_solution(&i, &[0, 0, 0]).unwrap();
        assert!(!zero.nonzero && zero.product_zero && zero.within_bound);
        let big = verify_solution(&i, &[0, 0, 2]).unwrap();
        assert!(big.nonzero && big.product_zero && !big.within_bound);
        assert!(verify_solution(&i, &[1]).is_err());
    }

    #[test]
    fn siegel_examples() {
        let r = siegel_report(2, 6, 10, 11, None).unwrap();
        assert!((r.c_s - libm::sqrt(60.0)).abs() < 1e-12);
        assert_eq!(r.feasible_at, 7);
        let r = siegel_report(3, 12, 103, 104, Some(13)).unwrap();
        assert!((r.beta_n - libm::cbrt(1872.0)).abs() < 1e-9);
        assert_eq!(r.beta_exceeds_beta_n, Some(true));
        assert_eq!(beta_n_ceil(3, 104), 13);
        assert!(!beta_exceeds_beta_n(12, 3, 104));
        assert_eq!(default_beta(3, 52), 11);
        assert!(siegel_report(3, 3, 1, 1, None).is_err());
    }

    #[test]
    fn brute_force_budget() {
        let mut rng = stream(1, 0);
        let i = SisInstance::random(2, 12, 5, 4, &mut rng).unwrap();
        assert!(matches!(solve_sis_bruteforce_with(&i, 1000), Err(Error::Capability(_))));
    }

    #[test]
    fn brute_force_finds_lexicographically_first() {
        let i = inst(1, 3, &[1, 0, 0], 2, 2);
        // kernel spanned by e2, e3: first canonical in lex order is (0,0,1)
        assert_eq!(solve_sis_bruteforce(&i).unwrap().solution().unwrap().z, vec![0, 0, 1]);
    }

    #[test]
    fn profile_of_disabled_and_zero_beta() {
        let gen = |i: u64| SisInstance::random(2, 6, 5, 0, &mut stream(9, i));
        let p = oracle_success_profile(&KernelLllOracle::default(), gen, 5).unwrap();
        assert_eq!(p.rate, 0.0);
        assert_eq!(p.c0, None);
        let gen = |i: u64| SisInstance::random(2, 6, 5, 4, &mut stream(9, i));
        let p = oracle_success_profile(&DisabledOracle, gen, 5).unwrap();
        assert_eq!(p.successes, 0);
        let p = oracle_success_profile(&BruteForceOracle::default(), gen, 20).unwrap();
        assert_eq!(p.rate, 1.0);
        assert_eq!(p.c0, Some(0.0));
    }

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(50, 100, 1.96);
        assert!(lo < 0.5 && hi > 0.5 && lo > 0.39 && hi < 0.61);
        assert_eq!(wilson_interval(0, 10, 1.96).0, 0.0);
    }
}
