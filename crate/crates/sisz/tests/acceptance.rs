//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Each criterion is checked against an oracle written here, not
//! against the library's own bookkeeping.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use sisz_core::gaussian::{smoothing_estimate, Epsilon};
use sisz_core::lattice::{random_basis, LatticeBasis};
use sisz_core::matrix::norm_sq;
use sisz_core::minima::{dual_first_minimum, successive_minima};
use sisz_core::reduction::{
    collect_independent, eta_schedule, select_eta, ReductionConfig, ReductionContext, TrialRecord,
};
use sisz_core::rng::{derive_seed, stream};
use sisz_core::sis::{
    siegel_bound, solve_sis_bruteforce, solve_sis_bruteforce_with, solve_sis_lattice, verify_solution, SisInstance,
    SolveOutcome,
};
use sisz_core::stats::{
    column_uniformity_test, exact_mod_distance, incompatibility_report, lift_check, uniformity_null_band,
    UniformityChannel, Verdict,
};

type Outcome = Result<String, String>;

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Deterministic small integer in `lo..=hi` from `(seed, i)`.
fn pick(seed: u64, i: u64, lo: u64, hi: u64) -> u64 {
    lo + derive_seed(seed, i) % (hi - lo + 1)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// 1 ------------------------------------------------------------------------

fn mod_distance_by_counting(big_q: u64, q: u64) -> BigRational {
    let mut counts = vec![0i64; q as usize];
    for x in 0..big_q {
        counts[(x % q) as usize] += 1;
    }
    let half = ratio(1, 2);
    counts
        .iter()
        .map(|&c| (ratio(c, big_q as i64) - ratio(1, q as i64)).abs())
        .fold(BigRational::zero(), |a, b| a + b)
        * half
}

fn c1_mod_distance() -> Outcome {
    let mut pairs = 0;
    for big_q in 1..=200u64 {
        for q in 2..=50u64 {
            let r = exact_mod_distance(big_q, q).map_err(|e| e.to_string())?;
            let expect = mod_distance_by_counting(big_q, q);
            ensure(r.delta_exact == expect, || format!("Q={big_q} q={q}: {} vs {expect}", r.delta_exact))?;
            ensure(r.delta_exact <= ratio(q as i64, 4 * big_q as i64), || format!("Q={big_q} q={q}: above q/(4Q)"))?;
            ensure(r.delta_exact.is_zero() == (big_q % q == 0), || format!("Q={big_q} q={q}: zero iff q|Q"))?;
            ensure(r.uniform == (big_q % q == 0), || format!("Q={big_q} q={q}: uniform flag"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (Q, q) pairs equal to exhaustive counts"))
}

// 2 ------------------------------------------------------------------------

/// Number of `z ∈ [−β, β]^m` with `Az ≡ 0 (mod q)` but `Az ≠ 0`.
fn lifting_violations(a: &[Vec<i64>], m: usize, beta: i64, q: i64) -> u64 {
    let mut z = vec![-beta; m];
    let mut bad = 0;
    loop {
        let mut zero_mod = true;
        let mut zero = true;
        for row in a {
            let s: i64 = row.iter().zip(&z).map(|(x, y)| x * y).sum();
            zero &= s == 0;
            zero_mod &= s.rem_euclid(q) == 0;
        }
        if zero_mod && !zero {
            bad += 1;
        }
        let mut i = 0;
        while i < m && z[i] == beta {
            z[i] = -beta;
            i += 1;
        }
        if i == m {
            return bad;
        }
        z[i] += 1;
    }
}

fn c2_lifting() -> Outcome {
    let seed = 0x11f7;
    let mut scanned = 0u64;
    for i in 0..200u64 {
        let n = pick(seed, 5 * i, 2, 3) as usize;
        let m = pick(seed, 5 * i + 1, n as u64 + 1, 10) as usize;
        let big_q = pick(seed, 5 * i + 2, 2, 8);
        let beta = pick(seed, 5 * i + 3, 1, 2);
        let q = m as u64 * (big_q - 1) * beta + 1;
        let inst = SisInstance::random(n, m, big_q, beta, &mut stream(seed, i)).map_err(|e| e.to_string())?;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|r| inst.matrix().row(r).iter().map(|x| x.to_i64().unwrap()).collect())
            .collect();
        let oracle = lifting_violations(&rows, m, beta as i64, q as i64);
        ensure(oracle == 0, || format!("instance {i}: {oracle} lifting violations at q = {q}"))?;
        let rep = lift_check(inst.matrix(), big_q, beta, q).map_err(|e| e.to_string())?;
        ensure(rep.holds() == Some(true), || format!("instance {i}: library scan disagrees"))?;
        scanned += (2 * beta + 1).pow(m as u32);
    }
    Ok(format!("200 instances, {scanned} vectors scanned, 0 violations"))
}

// 3 ------------------------------------------------------------------------

fn c3_incompatibility() -> Outcome {
    let mut cells = 0;
    for n in 3..=8u64 {
        for m in 3..=8u64 {
            for big_q in 2..=50u64 {
                for beta in 1..=4u64 {
                    let r = incompatibility_report(n, m, big_q, beta);
                    ensure(r.verdict == Verdict::Incompatible, || {
                        format!("(n,m,Q,β) = ({n},{m},{big_q},{beta}): {}", r.verdict.as_str())
                    })?;
                    // no modulus is both uniform-compatible and lifting
                    let lifting = |q: u64| q > m * (big_q - 1) * beta;
                    let uniform = |q: u64| big_q % q == 0 || q * n * m <= big_q;
                    let bad = (2..=big_q).find(|&q| lifting(q) && uniform(q));
                    ensure(bad.is_none(), || format!("({n},{m},{big_q},{beta}): q = {bad:?} is both"))?;
                    cells += 1;
                }
            }
        }
    }
    Ok(format!("{cells} cells, all incompatible"))
}

// 4 ------------------------------------------------------------------------

fn c4_siegel() -> Outcome {
    let seed = 0x5e6e1;
    let (n, m) = (2usize, 6usize);
    let mut worst = 0i64;
    for i in 0..100u64 {
        let big_q = [3u64, 5, 8][(i % 3) as usize];
        let bound = ((m as f64 * (big_q - 1) as f64).sqrt()).floor() as u64;
        // integer floor of √(m(Q−1)), checked exactly
        ensure(bound * bound <= m as u64 * (big_q - 1) && (bound + 1).pow(2) > m as u64 * (big_q - 1), || {
            "floor sqrt".into()
        })?;
        ensure(siegel_bound(n as u64, m as u64, big_q - 1) == Ok(bound), || format!("siegel_bound at Q = {big_q}"))?;
        let inst = SisInstance::random(n, m, big_q, bound, &mut stream(seed, i)).map_err(|e| e.to_string())?;
        let out = solve_sis_bruteforce_with(&inst, 100_000_000).map_err(|e| e.to_string())?;
        let z = match out {
            SolveOutcome::Found(s) => s.z,
            other => return Err(format!("instance {i} (Q = {big_q}): {other:?}")),
        };
        let prod = inst.apply(&z);
        ensure(prod.iter().all(|&x| x == 0) && z.iter().any(|&x| x != 0), || format!("instance {i}: bad z"))?;
        let linf = z.iter().map(|x| x.abs()).max().unwrap();
        ensure(linf as u64 <= bound, || format!("instance {i}: ‖z‖∞ = {linf} > {bound}"))?;
        worst = worst.max(linf);
    }
    Ok(format!("100 instances solved, largest ‖z‖∞ = {worst}"))
}

// shared setup for 5–7 ------------------------------------------------------

fn reduction_context(basis: &LatticeBasis) -> Result<ReductionContext, String> {
    let n = basis.dim();
    let schedule = eta_schedule(basis).map_err(|e| e.to_string())?;
    let est = smoothing_estimate(basis, Epsilon::reduction_default(n)).map_err(|e| e.to_string())?;
    let eta = select_eta(&schedule, &est);
    let cfg = ReductionConfig::for_basis(basis, eta).map_err(|e| e.to_string())?;
    ReductionContext::new(basis.clone(), cfg).map_err(|e| e.to_string())
}

/// Exact audit of one trial: range of `A`, closeness of `y_j` to `B·a_j/Q`,
/// and, on success, `v = B·coeffs = Σ r_j (y_j − x_j)`.
fn audit_trial(basis: &LatticeBasis, cfg: &ReductionConfig, t: &TrialRecord) -> Result<(), String> {
    let n = basis.dim();
    let inv = basis.inverse();
    let qq = BigRational::from_integer(cfg.q.into());
    let bound = BigRational::new(
        BigInt::from(n as u64).pow(3) * BigInt::from(cfg.entry_bound).pow(2),
        BigInt::from(cfg.q).pow(2),
    );
    for j in 0..cfg.m {
        let y = &t.y[j];
        let coords = inv.mul_vec(y).map_err(|e| e.to_string())?;
        for i in 0..n {
            let expect = (&qq * &coords[i]).floor().to_integer();
            let got = t.a.get(i, j);
            ensure(got == &expect, || format!("A[{i}][{j}] = {got}, expected {expect}"))?;
            ensure(!got.is_negative() && got < &BigInt::from(cfg.q), || format!("A[{i}][{j}] = {got} outside range"))?;
        }
        let a_col: Vec<BigInt> = (0..n).map(|i| t.a.get(i, j).clone()).collect();
        let z = basis.combine(&a_col).map_err(|e| e.to_string())?;
        let d: BigRational = (0..n)
            .map(|i| {
                let diff = &y[i] - BigRational::new(z[i].clone(), cfg.q.into());
                &diff * &diff
            })
            .fold(BigRational::zero(), |a, b| a + b);
        ensure(d <= bound, || format!("column {j}: ‖y − z‖² = {d} > {bound}"))?;
    }
    if let Some(v) = &t.v {
        let r = t.r.as_ref().ok_or("success without r")?;
        let coeffs = t.v_coeffs.as_ref().ok_or("success without coefficients")?;
        ensure(&basis.combine(coeffs).map_err(|e| e.to_string())? == v, || "v ≠ B·coeffs".into())?;
        let mut sum = vec![BigRational::zero(); n];
        for (j, &rj) in r.iter().enumerate() {
            let rj = BigRational::from_integer(rj.into());
            for i in 0..n {
                sum[i] += &rj * (&t.y[j][i] - &t.x[j][i]);
            }
        }
        let v_q: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        ensure(sum == v_q, || "v ≠ Σ r_j (y_j − x_j)".into())?;
        ensure(r.iter().any(|&x| x != 0), || "r = 0".into())?;
    }
    Ok(())
}

// 5 ------------------------------------------------------------------------

fn c5_deterministic_facts() -> Outcome {
    let seed = 0xa1;
    let (mut trials, mut successes) = (0, 0);
    for b in 0..10u64 {
        let basis = random_basis(3, 5, &mut stream(seed, b)).map_err(|e| e.to_string())?;
        let ctx = reduction_context(&basis)?;
        for s in 0..10u64 {
            let t = ctx.short_vectors(derive_seed(seed, 100 + b), s).map_err(|e| e.to_string())?;
            audit_trial(&basis, &ctx.config, &t).map_err(|e| format!("basis {b} trial {s}: {e}"))?;
            trials += 1;
            successes += t.v.is_some() as u32;
        }
    }
    Ok(format!("{trials} trials audited exactly ({successes} successful)"))
}

// 6 ------------------------------------------------------------------------

fn c6_norm_bound() -> Outcome {
    let mut parts = Vec::new();
    let mut ok_all = true;
    for n in [3usize, 4] {
        let seed = 0xb0 + n as u64;
        let (mut succ, mut within, mut worst) = (0u64, 0u64, 0.0f64);
        let mut b = 0u64;
        while succ < 100 {
            let basis = random_basis(n, 5, &mut stream(seed, b)).map_err(|e| e.to_string())?;
            let ctx = reduction_context(&basis)?;
            let minima = successive_minima(&basis, n).map_err(|e| e.to_string())?;
            ensure(minima.exact, || "λ_n not exact".into())?;
            let lambda_sq = minima.last_squared().to_f64().unwrap();
            let factor = ctx.config.norm_bound_factor();
            for s in 0..10u64 {
                let t = ctx.short_vectors(derive_seed(seed, 1000 + b), s).map_err(|e| e.to_string())?;
                if let Some(v) = &t.v {
                    let ratio = (norm_sq(v).to_f64().unwrap() / lambda_sq).sqrt();
                    succ += 1;
                    within += (ratio <= factor) as u64;
                    worst = worst.max(ratio / factor);
                }
            }
            b += 1;
        }
        let rate = within as f64 / succ as f64;
        ok_all &= rate >= 0.95;
        parts.push(format!("n={n}: {within}/{succ} = {rate:.3} within bound (max ‖v‖/bound = {worst:.4})"));
    }
    let msg = parts.join("; ");
    if ok_all {
        Ok(msg)
    } else {
        Err(msg)
    }
}

// 7 ------------------------------------------------------------------------

fn c7_independent_collection() -> Outcome {
    let seed = 0xc7;
    let n = 3;
    let mut hits = 0;
    let mut counts = Vec::new();
    for rep in 0..50u64 {
        let basis = random_basis(n, 5, &mut stream(seed, rep)).map_err(|e| e.to_string())?;
        let ctx = reduction_context(&basis)?;
        let c = collect_independent(&ctx, derive_seed(seed, 1000 + rep), 2000).map_err(|e| e.to_string())?;
        // exact rank of the returned vectors, recomputed here
        let cols: Vec<Vec<BigInt>> = c.vectors.iter().map(|v| v.coords.clone()).collect();
        if !cols.is_empty() {
            let m = sisz_core::IntegerMatrix::from_columns(&cols).map_err(|e| e.to_string())?;
            ensure(m.rank() == c.rank, || format!("rep {rep}: rank mismatch"))?;
        }
        match c.successes_to_full_rank {
            Some(k) if k <= 20 * n as u64 => {
                hits += 1;
                counts.push(k);
            }
            _ => {}
        }
    }
    let rate = hits as f64 / 50.0;
    let mean = counts.iter().sum::<u64>() as f64 / counts.len().max(1) as f64;
    let msg = format!("{hits}/50 = {rate:.2} reached rank 3 within 60 successes (mean {mean:.2} successes)");
    if rate >= 0.90 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

// 8 ------------------------------------------------------------------------

/// `Σ_{w ∈ ℒ*∖0} exp(−π s² ‖w‖²)` over a coefficient box covering every dual
/// vector with `π s² ‖w‖² ≤ 60`; the remainder is below `e^{−50}`.
fn dual_mass_oracle(basis: &LatticeBasis, s: f64) -> f64 {
    let n = basis.dim();
    let inv = basis.inverse();
    // dual basis columns are the rows of B⁻¹
    let dual: Vec<Vec<f64>> = (0..n).map(|i| inv.row(i).iter().map(|x| x.to_f64().unwrap()).collect()).collect();
    let radius = (60.0 / std::f64::consts::PI).sqrt() / s;
    // c_i = ⟨b_i, w⟩, so |c_i| ≤ ‖b_i‖·‖w‖
    let bounds: Vec<i64> = basis
        .columns()
        .iter()
        .map(|b| (norm_sq(b).to_f64().unwrap().sqrt() * radius).floor() as i64)
        .collect();
    let mut c: Vec<i64> = bounds.iter().map(|&k| -k).collect();
    let mut total = 0.0;
    loop {
        if c.iter().any(|&x| x != 0) {
            let mut w = vec![0.0; n];
            for (ci, d) in c.iter().zip(&dual) {
                for (wk, dk) in w.iter_mut().zip(d) {
                    *wk += *ci as f64 * dk;
                }
            }
            let nn: f64 = w.iter().map(|x| x * x).sum();
            total += (-std::f64::consts::PI * s * s * nn).exp();
        }
        let mut i = 0;
        while i < n && c[i] == bounds[i] {
            c[i] = -bounds[i];
            i += 1;
        }
        if i == n {
            return total;
        }
        c[i] += 1;
    }
}

fn c8_smoothing_brackets() -> Outcome {
    let seed = 0xd8;
    let eps = 0.01;
    let mut widest = 0.0f64;
    for b in 0..20u64 {
        let n = 2 + (b % 2) as usize;
        let basis = random_basis(n, 5, &mut stream(seed, b)).map_err(|e| e.to_string())?;
        let minima = successive_minima(&basis, n).map_err(|e| e.to_string())?;
        ensure(minima.exact, || "λ_n not exact".into())?;
        let ln_sq = minima.last_squared().clone();
        let lambda_n = ln_sq.to_f64().unwrap().sqrt();
        let est = smoothing_estimate(&basis, Epsilon::new(eps).unwrap()).map_err(|e| e.to_string())?;
        let lo = lambda_n / n as f64;
        let hi = (2.0 * n as f64 * (1.0 + 1.0 / eps)).ln().sqrt() * lambda_n;
        let value = est.value();
        ensure(lo < value && value < hi, || format!("basis {b}: estimate {value} outside ({lo}, {hi})"))?;
        ensure(lo <= est.lower && est.upper <= hi, || {
            format!("basis {b}: bracket [{}, {}] outside [{lo}, {hi}]", est.lower, est.upper)
        })?;
        // independent certificate of the bracket
        let at_lower = dual_mass_oracle(&basis, est.lower);
        let at_upper = dual_mass_oracle(&basis, est.upper);
        ensure(at_lower > eps, || format!("basis {b}: mass {at_lower} at lower end is not above ε"))?;
        ensure(at_upper <= eps, || format!("basis {b}: mass {at_upper} at upper end exceeds ε"))?;
        // transference, exact: 1 ≤ λ_n²·λ_1(ℒ*)² ≤ n²
        let (dual_sq, _, _) = dual_first_minimum(&basis).map_err(|e| e.to_string())?;
        let prod = BigRational::from_integer(ln_sq) * &dual_sq;
        ensure(prod >= BigRational::one() && prod <= BigRational::from_integer(BigInt::from(n * n)), || {
            format!("basis {b}: λ_n²·λ_1*² = {prod}")
        })?;
        widest = widest.max(est.upper / est.lower - 1.0);
    }
    Ok(format!("20 bases bracketed and certified by direct summation (widest relative bracket {widest:.4})"))
}

// 9 ------------------------------------------------------------------------

fn c9_uniformity() -> Outcome {
    let seed = 0xe9;
    let (big_q, trials, replicates) = (3u64, 1_000_000u64, 100u64);
    let basis = random_basis(2, 5, &mut stream(seed, 0)).map_err(|e| e.to_string())?;
    let est = smoothing_estimate(&basis, Epsilon::new(0.01).unwrap()).map_err(|e| e.to_string())?;
    let eta = 4.0 * est.upper;
    let band = uniformity_null_band(&basis, big_q, trials, replicates, 0.99, derive_seed(seed, 1))
        .map_err(|e| e.to_string())?;
    let good = column_uniformity_test(&basis, big_q, UniformityChannel::Gaussian { eta }, trials, derive_seed(seed, 2))
        .map_err(|e| e.to_string())?;
    let lambda1 = successive_minima(&basis, 1).map_err(|e| e.to_string())?.lambda(0);
    let control = UniformityChannel::Gaussian { eta: lambda1 / 10.0 };
    let bad = column_uniformity_test(&basis, big_q, control, trials, derive_seed(seed, 3)).map_err(|e| e.to_string())?;
    let (sg, sb) = (good.statistic(), bad.statistic());
    let msg = format!("η̃ = {eta:.4}: {sg:.5} vs band {band:.5}; control η̃ = λ₁/10: {sb:.5}");
    if sg <= band && sb > band {
        Ok(msg)
    } else {
        Err(msg)
    }
}

// 10 -----------------------------------------------------------------------

fn c10_solver_equivalence() -> Outcome {
    let seed = 0xf10;
    let (mut feasible, mut done, mut i) = (0, 0, 0u64);
    while done < 500 {
        i += 1;
        let n = pick(seed, 4 * i, 1, 3) as usize;
        let m = pick(seed, 4 * i + 1, n as u64 + 1, 12) as usize;
        let beta = pick(seed, 4 * i + 2, 1, 3);
        let big_q = pick(seed, 4 * i + 3, 2, 12);
        if (2 * beta + 1).checked_pow(m as u32).is_none_or(|s| s > 1_000_000) {
            continue;
        }
        let inst = SisInstance::random(n, m, big_q, beta, &mut stream(seed, i)).map_err(|e| e.to_string())?;
        let bf = solve_sis_bruteforce(&inst).map_err(|e| e.to_string())?;
        let lat = solve_sis_lattice(&inst).map_err(|e| e.to_string())?;
        ensure(lat != SolveOutcome::Exhausted, || format!("instance {i}: lattice solver exhausted"))?;
        ensure(bf.solution().is_some() == lat.solution().is_some(), || {
            format!("instance {i} (n={n}, m={m}, Q={big_q}, β={beta}): {bf:?} vs {lat:?}")
        })?;
        for s in [bf.solution(), lat.solution()].into_iter().flatten() {
            ensure(verify_solution(&inst, &s.z).map_err(|e| e.to_string())?.passed(), || format!("instance {i}: invalid z"))?;
        }
        feasible += bf.solution().is_some() as u32;
        done += 1;
    }
    Ok(format!("500 instances agree ({feasible} feasible, {} infeasible)", 500 - feasible))
}

// 11 -----------------------------------------------------------------------

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = sisz::run_with_io(args.iter().copied(), &mut out, &mut err);
    (code, String::from_utf8_lossy(&err).into_owned())
}

fn c11_replay() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let basis = p("basis.txt");
    let (code, err) = run_cli(&["sisz", "gen", "basis", "--n", "3", "--M", "5", "--seed", "21", "--out", &basis]);
    ensure(code == 0, || format!("gen basis: {err}"))?;
    let variants: [&[&str]; 3] = [&[], &["--full", "--order", "reordered"], &["--eta", "3.5", "--trials", "40"]];
    let mut compared = 0;
    for (k, extra) in variants.iter().enumerate() {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let (t, c) = (p(&format!("t{k}_{rep}.json")), p(&format!("s{k}_{rep}.csv")));
            let mut args = vec!["sisz", "reduce", "--basis", &basis, "--seed", "77", "--out", &t, "--csv", &c];
            args.extend_from_slice(extra);
            let (code, err) = run_cli(&args);
            ensure(code == 0 || code == 3, || format!("reduce {extra:?}: exit {code}: {err}"))?;
            outputs.push((std::fs::read(&t).map_err(|e| e.to_string())?, std::fs::read(&c).map_err(|e| e.to_string())?));
        }
        ensure(outputs[0] == outputs[1], || format!("reduce {extra:?}: outputs differ between runs"))?;
        compared += outputs[0].0.len() + outputs[0].1.len();
    }
    Ok(format!("3 reduce variants replayed byte-identically ({compared} bytes each run)"))
}

// --------------------------------------------------------------------------

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria = [
        Criterion { id: 1, name: "exact mod-q distance", limit: Some(Duration::from_secs(10)), run: c1_mod_distance },
        Criterion { id: 2, name: "lifting", limit: Some(Duration::from_secs(120)), run: c2_lifting },
        Criterion { id: 3, name: "incompatibility", limit: Some(Duration::from_secs(5)), run: c3_incompatibility },
        Criterion { id: 4, name: "Siegel existence", limit: Some(Duration::from_secs(300)), run: c4_siegel },
        Criterion { id: 5, name: "deterministic reduction facts", limit: None, run: c5_deterministic_facts },
        Criterion { id: 6, name: "norm bound", limit: Some(Duration::from_secs(900)), run: c6_norm_bound },
        Criterion { id: 7, name: "independent-vector collection", limit: None, run: c7_independent_collection },
        Criterion { id: 8, name: "smoothing brackets", limit: Some(Duration::from_secs(300)), run: c8_smoothing_brackets },
        Criterion { id: 9, name: "uniformity of A", limit: Some(Duration::from_secs(300)), run: c9_uniformity },
        Criterion { id: 10, name: "solver equivalence", limit: Some(Duration::from_secs(600)), run: c10_solver_equivalence },
        Criterion { id: 11, name: "replay determinism", limit: None, run: c11_replay },
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    let mut ran = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let over = c.limit.filter(|&l| elapsed > l);
        let (pass, detail) = match (outcome, over) {
            (Ok(d), None) => (true, d),
            (Ok(d), Some(l)) => (false, format!("{d}; runtime over the {}s limit", l.as_secs())),
            (Err(d), _) => (false, d),
        };
        let limit = c.limit.map_or(String::new(), |l| format!(" < {}s", l.as_secs()));
        println!(
            "[{}] {:>2} {}: {} ({:.2}s{})",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            detail,
            elapsed.as_secs_f64(),
            limit
        );
        ran += 1;
        failed += (!pass) as u32;
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
