//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria in `EXPECTED_FAILURES` cannot hold as stated and are reported as
//! FAIL without failing the run. The run fails if any other criterion fails or
//! if an expected failure starts passing.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use hyperspectra::bounds::{complete_gap_bound_exact, counted_row_sum, row_sums_ordered};
use hyperspectra::combinatorics::DenseMultiindices;
use hyperspectra::eigen::{enumerate_eigenpairs, matrix_oracle, power_iteration_nonneg, SolverParams};
use hyperspectra::ensembles::{adjacency_hypermatrix, complete_gap};
use hyperspectra::experiments::{
    build_net, holder_sweep, net_cover_check, radius_scaling_study, tail_estimate, uniform_unit, TailKind, Thresholds,
};
use hyperspectra::hypermatrix::{apply_vector_power, contract, HypermatrixView};
use hyperspectra::path::{derivative_sweep, track_curves, TrackParams};
use hyperspectra::rng::{complex_gaussian, real_gaussian, stream};
use hyperspectra::{Complex64, DenseHypermatrix, Hypergraph, Hypermatrix, LinePath, Rational64};

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn random_real(n: usize, k: usize, seed: u64) -> Hypermatrix {
    let mut rng = stream(seed);
    Hypermatrix::from_fn(n, k, |_| Complex64::new(real_gaussian::<f64>(&mut rng, 1)[0], 0.0)).unwrap()
}

fn within(limit: Duration, start: Instant) -> bool {
    start.elapsed() < limit
}

fn complete_gap_chain() -> Outcome {
    let start = Instant::now();
    let (mut pairs, mut formula_hits, mut bound_hits, mut chain_hits) = (0, 0, 0, 0);
    for n in 4..=12u64 {
        for k in 3..n {
            let b = complete_gap::<Rational64>(n as usize, k as usize).unwrap();
            let exact = row_sums_ordered(&b).max;
            let formula = counted_row_sum(n, k).unwrap();
            let formula = Rational64::new(*formula.numer() as i64, *formula.denom() as i64);
            let bound = complete_gap_bound_exact(n, k).unwrap();
            let bound = Rational64::new(*bound.numer() as i64, *bound.denom() as i64);
            pairs += 1;
            formula_hits += (exact == formula) as usize;
            bound_hits += (exact <= bound) as usize;
            chain_hits += (formula <= bound) as usize;
        }
    }
    let spot = row_sums_ordered(&complete_gap::<Rational64>(5, 3).unwrap()).max;
    let spot_bound = complete_gap_bound_exact(5, 3).unwrap();
    let fast = within(Duration::from_secs(1), start);
    let pass = formula_hits == pairs
        && bound_hits == pairs
        && spot == Rational64::from_integer(2)
        && *spot_bound.numer() == 4
        && fast;
    outcome(
        pass,
        format!(
            "{pairs} (n,k) pairs: max row sum equals closed form in {formula_hits}, within bound in {bound_hits}, closed form within bound in {chain_hits}; (5,3) row sum {spot} vs expected 2, bound {spot_bound}"
        ),
    )
}

fn power_squeeze() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in 1..=6usize {
        for k in 2..=4usize {
            let it = power_iteration_nonneg(&Hypermatrix::all_ones(n, k).unwrap(), 1e-12, 2000).unwrap();
            worst = worst.max((it.rho - (n as f64).powi(k as i32 - 1)).abs());
        }
    }
    for n in 3..=8usize {
        let a = adjacency_hypermatrix::<Complex64>(&Hypergraph::complete(n, 3).unwrap()).unwrap();
        let it = power_iteration_nonneg(&a, 1e-12, 2000).unwrap();
        let want = ((n - 1) * (n - 2) / 2) as f64;
        worst = worst.max((it.rho - want).abs());
    }
    let fast = within(Duration::from_secs(5), start);
    outcome(worst < 1e-8 && fast, format!("worst |ρ - expected| = {worst:.2e}"))
}

fn naive_contract(a: &impl HypermatrixView<Complex64>, slots: &[usize], b: &DenseHypermatrix) -> Vec<Complex64> {
    let (n, k) = (a.dim(), a.order());
    let mut sorted = slots.to_vec();
    sorted.sort_unstable();
    let free: Vec<usize> = (0..k).filter(|t| !sorted.contains(t)).collect();
    let mut out = vec![Complex64::new(0.0, 0.0); n.pow(free.len() as u32)];
    let mut idx = vec![0usize; k];
    loop {
        let o = free.iter().fold(0, |acc, &t| acc * n + idx[t]);
        let bi: Vec<usize> = sorted.iter().map(|&t| idx[t]).collect();
        out[o] += a.entry(&idx) * b.get(&bi);
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn contraction_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut rng = stream(31);
    for case in 0..100u64 {
        let n = 1 + (case % 4) as usize;
        let k = 2 + ((case / 4) % 3) as usize;
        let a = Hypermatrix::from_fn(n, k, |_| complex_gaussian::<f64>(&mut rng, 1)[0]).unwrap();
        let v = complex_gaussian::<f64>(&mut rng, n);
        let fast = apply_vector_power(&a, &v, k - 1).unwrap();
        let mut slow = vec![Complex64::new(0.0, 0.0); n];
        for idx in DenseMultiindices::new(n, k) {
            slow[idx[0]] += a.get(&idx) * idx[1..].iter().map(|&j| v[j]).product::<Complex64>();
        }
        for (x, y) in fast.values().iter().zip(&slow) {
            worst = worst.max((x - y).norm() / y.norm().max(1e-300).max(1.0));
        }
        let s = 1 + (case as usize % k);
        let slots: Vec<usize> = (0..k).rev().take(s).collect();
        let b = DenseHypermatrix::from_fn(n, s, |_| complex_gaussian::<f64>(&mut rng, 1)[0]).unwrap();
        let general = a.to_general().unwrap();
        for got in [
            contract(&a, &slots, &b).unwrap(),
            contract(&general, &slots, &b).unwrap(),
        ] {
            let want = naive_contract(&a, &slots, &b);
            for (x, y) in got.data().iter().zip(&want) {
                worst = worst.max((x - y).norm() / y.norm().max(1.0));
            }
        }
    }
    outcome(
        worst <= 1e-12,
        format!("100 instances, worst relative error {worst:.2e}"),
    )
}

fn matrix_closure() -> Outcome {
    let (mut worst_gap, mut worst_res, mut count_mismatch): (f64, f64, usize) = (0.0, 0.0, 0);
    for seed in 0..50 {
        let a = random_real(3, 2, 1000 + seed);
        let oracle = matrix_oracle(&a).unwrap();
        let r = enumerate_eigenpairs(&a, &SolverParams::with_seed(seed)).unwrap();
        if r.eigenvalues.len() != oracle.eigenvalues.len() {
            count_mismatch += 1;
        }
        for x in &r.eigenvalues {
            let d = oracle
                .eigenvalues
                .iter()
                .map(|y| (x - y).norm())
                .fold(f64::INFINITY, f64::min);
            worst_gap = worst_gap.max(d);
        }
        for y in &oracle.eigenvalues {
            let d = r
                .eigenvalues
                .iter()
                .map(|x| (x - y).norm())
                .fold(f64::INFINITY, f64::min);
            worst_gap = worst_gap.max(d);
        }
        worst_res = r.pairs.iter().map(|p| p.residual).fold(worst_res, f64::max);
    }
    outcome(
        count_mismatch == 0 && worst_gap < 1e-6 && worst_res < 1e-8,
        format!("50 matrices: {count_mismatch} count mismatches, worst eigenvalue gap {worst_gap:.2e}, worst residual {worst_res:.2e}"),
    )
}

fn degree_count() -> Outcome {
    let (mut max_found, mut worst_res) = (0usize, 0.0f64);
    for seed in 0..50u64 {
        let mut rng = stream(2000 + seed);
        let a = if seed % 2 == 0 {
            random_real(2, 3, 2000 + seed)
        } else {
            Hypermatrix::from_fn(2, 3, |_| complex_gaussian::<f64>(&mut rng, 1)[0]).unwrap()
        };
        let r = enumerate_eigenpairs(&a, &SolverParams::with_seed(seed)).unwrap();
        max_found = max_found.max(r.found_count);
        worst_res = r.pairs.iter().map(|p| p.residual).fold(worst_res, f64::max);
    }
    let id = enumerate_eigenpairs(&Hypermatrix::identity(2, 3).unwrap(), &SolverParams::default()).unwrap();
    let one = id.eigenvalues.len() == 1 && (id.eigenvalues[0] - Complex64::new(1.0, 0.0)).norm() < 1e-10;
    outcome(
        max_found <= 4 && worst_res < 1e-8 && one,
        format!(
            "50 binary cubics: max distinct count {max_found}, worst residual {worst_res:.2e}; identity has {} distinct value(s), first {:.6}",
            id.eigenvalues.len(),
            id.eigenvalues[0]
        ),
    )
}

fn derivative_identity() -> Outcome {
    let start = Instant::now();
    let (mut checks, mut failures, mut lost, mut worst): (usize, usize, usize, f64) = (0, 0, 0, 0.0);
    for seed in 0..20u64 {
        let path = LinePath::between(&random_real(2, 3, 3000 + 2 * seed), &random_real(2, 3, 3001 + 2 * seed)).unwrap();
        let params = TrackParams {
            solver: SolverParams::with_seed(seed),
            ..TrackParams::default()
        };
        let curves = track_curves(&path, &params).unwrap();
        for p in derivative_sweep(&path, &curves, 1e-4, &params.solver).unwrap() {
            match p.check {
                Some(c) => {
                    checks += 1;
                    worst = worst.max(c.gap);
                    failures += (c.gap >= 1e-5) as usize;
                }
                None => lost += 1,
            }
        }
    }
    let fast = within(Duration::from_secs(60), start);
    outcome(
        checks > 0 && failures == 0 && lost == 0 && fast,
        format!(
            "20 paths: {checks} regular samples, {failures} over 1e-5, {lost} not continuable, worst gap {worst:.2e}"
        ),
    )
}

fn piecewise_smoothness() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut unmatched = 0;
    for seed in 0..20u64 {
        let path = LinePath::between(&random_real(3, 2, 4000 + 2 * seed), &random_real(3, 2, 4001 + 2 * seed)).unwrap();
        let curves = track_curves(&path, &TrackParams::default()).unwrap();
        let mut ts: Vec<f64> = curves.iter().flat_map(|c| c.samples.iter().map(|s| s.t)).collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        for t in ts {
            let mut got: Vec<f64> = curves.iter().filter_map(|c| c.lambda_at(t)).map(|z| z.re).collect();
            let mut want: Vec<f64> = matrix_oracle(&path.at(t))
                .unwrap()
                .pairs
                .iter()
                .map(|p| p.lambda.re)
                .collect();
            want.sort_by(f64::total_cmp);
            want.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
            got.sort_by(f64::total_cmp);
            if got.len() != curves.len() {
                continue;
            }
            for x in &got {
                let d = want.iter().map(|y| (x - y).abs()).fold(f64::INFINITY, f64::min);
                worst = worst.max(d);
            }
        }
        unmatched += curves.iter().filter(|c| !c.matched).count();
    }
    let (mut telescoped, mut curves_seen, mut singular_total, mut bad_singular) = (0, 0, 0, 0);
    for seed in 0..20u64 {
        let path = LinePath::between(&random_real(2, 3, 5000 + 2 * seed), &random_real(2, 3, 5001 + 2 * seed)).unwrap();
        let curves = track_curves(&path, &TrackParams::default()).unwrap();
        for c in curves.iter().filter(|c| c.matched) {
            curves_seen += 1;
            telescoped += ((c.end().lambda - c.start().lambda).norm() <= c.variation() + 1e-12) as usize;
            singular_total += c.singular_points.len();
            bad_singular += c.singular_points.iter().filter(|t| !(0.0..=1.0).contains(*t)).count();
        }
    }
    outcome(
        worst < 1e-8 && telescoped == curves_seen && bad_singular == 0 && curves_seen > 0,
        format!(
            "k=2: worst pointwise gap {worst:.2e} ({unmatched} unmatched curves); k=3: {telescoped}/{curves_seen} matched curves telescope, {singular_total} singular points reported"
        ),
    )
}

fn holder_bound() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (n, k) in [(5, 3), (8, 3), (5, 4)] {
        let h = holder_sweep::<f64>(n, k, 10_000, 17).unwrap();
        pass &= h.violations == 0 && h.uniform_gap < 1e-12;
        parts.push(format!(
            "({n},{k}) {} violations, uniform gap {:.1e}",
            h.violations, h.uniform_gap
        ));
    }
    outcome(pass, parts.join("; "))
}

fn tail_shape() -> Outcome {
    let start = Instant::now();
    let v = uniform_unit::<f64>(30);
    let est = tail_estimate(TailKind::Upper, 30, 3, 0.5, &v, 10_000, Thresholds::Auto(60), 2024).unwrap();
    let fit = est.refit(1e-3).unwrap();
    let fast = within(Duration::from_secs(120), start);
    outcome(
        fit.slope < 0.0 && fit.r_squared >= 0.9 && est.is_monotone() && fast,
        format!(
            "slope {:.4}, R² {:.4} over {} thresholds with S ≥ 1e-3, monotone {}",
            fit.slope,
            fit.r_squared,
            fit.fit_points,
            est.is_monotone()
        ),
    )
}

fn epsilon_net() -> Outcome {
    let net = build_net::<f64>(2, 3).unwrap();
    let cover = net_cover_check(&net, 1000, 99).unwrap();
    outcome(
        net.within_size_bound() && cover.pass,
        format!(
            "|V'| = {} vs (5δ)^(-2n) = {:.1} ({}); 1000 probes worst gap {:.4} vs δ = {:.4} ({})",
            net.len(),
            net.size_bound,
            if net.within_size_bound() { "within" } else { "exceeds" },
            cover.max_coord_gap,
            net.delta,
            if cover.pass { "covered" } else { "not covered" }
        ),
    )
}

fn radius_scaling() -> Outcome {
    let run = || radius_scaling_study(3, &[2, 3, 4], 0.5, 30, 10.0f64, 11, &SolverParams::default()).unwrap();
    let rows = run();
    let deterministic = rows == run();
    let mut pass = deterministic;
    let mut parts = Vec::new();
    for r in &rows {
        let cap = r.n * (1 << (r.n - 1));
        let finite = r.radius_samples.iter().all(|x| x.is_finite());
        let residual_ok = r.per_trial.iter().all(|t| t.max_residual < 1e-8);
        let count_ok = r.per_trial.iter().all(|t| t.found_count <= cap);
        let stats = [r.ratio_stats.min, r.ratio_stats.mean, r.ratio_stats.max]
            .iter()
            .all(|x| x.is_finite());
        pass &= finite && residual_ok && count_ok && stats && r.solver_failures == 0 && r.per_trial.len() == 30;
        parts.push(format!(
            "n={} ratio {:.3}/{:.3}/{:.3}",
            r.n, r.ratio_stats.min, r.ratio_stats.mean, r.ratio_stats.max
        ));
    }
    outcome(pass, format!("{}; deterministic {deterministic}", parts.join(", ")))
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 8] = [
        &["bounds", "--n", "6", "--k", "3"],
        &["spectrum", "--ensemble", "sign", "--n", "3", "--k", "3", "--seed", "4"],
        &[
            "path", "--a0", "gaussian", "--a1", "gaussian", "--n", "2", "--k", "3", "--seed", "5",
        ],
        &[
            "weyl", "--a0", "gaussian", "--a1", "gaussian", "--n", "2", "--k", "3", "--seed", "5",
        ],
        &[
            "tail", "--kind", "gap", "--n", "12", "--k", "3", "--p", "0.5", "--trials", "500", "--seed", "7",
        ],
        &["net-check", "--n", "2", "--k", "3", "--samples", "200", "--seed", "8"],
        &[
            "radius-study",
            "--k",
            "3",
            "--n-list",
            "2,3",
            "--p",
            "0.5",
            "--trials",
            "4",
            "--seed",
            "9",
        ],
        &["holder", "--n", "5", "--k", "3", "--samples", "2000", "--seed", "10"],
    ];
    let mut differing = Vec::new();
    for args in runs {
        let mut outputs = Vec::new();
        for (rep, threads) in ["1", "3"].iter().enumerate() {
            let file = dir.path().join(format!("{}-{rep}.csv", args[0]));
            let status = Command::new(env!("CARGO_BIN_EXE_hyperspectra"))
                .args(["--threads", threads])
                .args(args)
                .arg("--out")
                .arg(&file)
                .output()
                .unwrap();
            assert!(
                status.status.success(),
                "{args:?}: {}",
                String::from_utf8_lossy(&status.stderr)
            );
            outputs.push(std::fs::read(&file).unwrap());
        }
        if outputs[0] != outputs[1] || outputs[0].is_empty() {
            differing.push(args[0]);
        }
    }
    outcome(
        differing.is_empty(),
        format!("8 subcommands at 1 and 3 workers; differing: {differing:?}"),
    )
}

/// Criterion 1: the stated row-sum closed form and its bound do not match the exact row sum.
/// Criterion 10: the grid net is far larger than the stated size bound; coverage holds.
const EXPECTED_FAILURES: [usize; 2] = [1, 10];

fn main() {
    let criteria: [Criterion; 12] = [
        ("complete-gap bound chain", complete_gap_chain),
        ("power iteration squeeze", power_squeeze),
        ("contraction oracle", contraction_oracle),
        ("k=2 closure", matrix_closure),
        ("degree-count consistency", degree_count),
        ("derivative identity", derivative_identity),
        ("piecewise smoothness", piecewise_smoothness),
        ("Hölder bound", holder_bound),
        ("sub-Gaussian tail shape", tail_shape),
        ("ε-net size and coverage", epsilon_net),
        ("radius scaling invariants", radius_scaling),
        ("CLI determinism", cli_determinism),
    ];
    let (mut passed, mut unexpected) = (0, Vec::new());
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let expected_fail = EXPECTED_FAILURES.contains(&id);
        passed += result.pass as usize;
        if result.pass == expected_fail {
            unexpected.push(id);
        }
        let tag = match (result.pass, expected_fail) {
            (true, false) => "PASS",
            (true, true) => "PASS (unexpected)",
            (false, true) => "FAIL (expected)",
            (false, false) => "FAIL",
        };
        println!(
            "criterion {id:>2} {tag} {name}: {} [{:.2}s]",
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{passed} of 12 criteria pass; expected failures {EXPECTED_FAILURES:?}");
    if !unexpected.is_empty() {
        println!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
