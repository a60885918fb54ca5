use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hyperspectra::bounds::{complete_gap_bound_exact, counted_row_sum, row_sums_ordered};
use hyperspectra::eigen::{enumerate_eigenpairs, SolverParams};
use hyperspectra::ensembles::complete_gap;
use hyperspectra::experiments::{
    build_net, holder_sweep, net_cover_check, radius_bound, radius_scaling_study, rounding_cover_check, tail_estimate,
    uniform_unit, TailKind, Thresholds,
};
use hyperspectra::path::{track_curves, weyl_gap_experiment, SigmaDomain, TrackParams};
use hyperspectra::rng::derive_seed;
use hyperspectra::{Error, Hypermatrix, LinePath, Rational64};

use crate::ensemble::Ensemble;
use crate::output::Report;

fn ratio_text(r: &Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ratio_f64(r: &Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn shape(n: Option<usize>, k: Option<usize>) -> Option<(usize, usize)> {
    n.zip(k)
}

fn solver(seed: u64, starts: Option<usize>, tol: Option<f64>) -> SolverParams<f64> {
    let mut p = SolverParams::with_seed(seed);
    p.num_starts = starts;
    if let Some(t) = tol {
        p.newton_tol = t;
    }
    p
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
}

#[derive(Serialize)]
struct BoundsRow {
    n: u64,
    k: u64,
    bound: String,
    bound_value: f64,
    counted_row_sum: String,
    exact_max_row_sum: String,
    exact_max_row_sum_value: f64,
    verdict: &'static str,
}

pub fn bounds(a: &BoundsArgs) -> Result<Report> {
    let bound = complete_gap_bound_exact(a.n, a.k)?;
    let bound = Rational64::new(*bound.numer() as i64, *bound.denom() as i64);
    let counted = counted_row_sum(a.n, a.k)?;
    let counted = Rational64::new(*counted.numer() as i64, *counted.denom() as i64);
    let b = complete_gap::<Rational64>(a.n as usize, a.k as usize)?;
    let max = row_sums_ordered(&b).max;
    let verdict = if max <= bound { "bound holds" } else { "bound violated" };
    let row = BoundsRow {
        n: a.n,
        k: a.k,
        bound: ratio_text(&bound),
        bound_value: ratio_f64(&bound),
        counted_row_sum: ratio_text(&counted),
        exact_max_row_sum: ratio_text(&max),
        exact_max_row_sum_value: ratio_f64(&max),
        verdict,
    };
    let summary = format!(
        "complete gap B({},{}): bound {}, exact max row sum {} (counted {}), {}",
        a.n, a.k, row.bound, row.exact_max_row_sum, row.counted_row_sum, verdict
    );
    let json = serde_json::to_value(&row)?;
    Report::new(summary, &[row], json)
}

#[derive(Debug, Args, Serialize)]
pub struct SpectrumArgs {
    /// Hypergraph edge list or JSON hypermatrix.
    #[arg(long, conflicts_with = "ensemble", required_unless_present = "ensemble")]
    pub input: Option<PathBuf>,
    /// identity | ones | complete-gap | random-gap:p | sign | upper:p | gaussian | file:PATH
    #[arg(long)]
    pub ensemble: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Newton starts (default 20 per expected eigenvalue).
    #[arg(long)]
    pub starts: Option<usize>,
    /// Newton residual tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SpectrumArgs {
    pub fn inputs(&self) -> Vec<PathBuf> {
        let mut v: Vec<PathBuf> = self.input.iter().cloned().collect();
        if let Some(Ok(Ensemble::File(p))) = self.ensemble.as_deref().map(str::parse) {
            v.push(p);
        }
        v
    }
}

#[derive(Serialize)]
struct PairRow {
    lambda_re: f64,
    lambda_im: f64,
    residual: f64,
    degenerate: bool,
}

pub fn spectrum(a: &SpectrumArgs) -> Result<Report> {
    let ens = match (&a.input, &a.ensemble) {
        (Some(p), _) => Ensemble::File(p.clone()),
        (None, Some(s)) => s.parse()?,
        (None, None) => anyhow::bail!(Error::Parameter("need --input or --ensemble".into())),
    };
    let h = ens.build(shape(a.n, a.k), derive_seed(a.seed, 0))?;
    let report = enumerate_eigenpairs(&h, &solver(a.seed, a.starts, a.tol))?;
    let rows: Vec<PairRow> = report
        .pairs
        .iter()
        .map(|p| PairRow {
            lambda_re: p.lambda.re,
            lambda_im: p.lambda.im,
            residual: p.residual,
            degenerate: p.degenerate,
        })
        .collect();
    let json = json!({
        "n": h.dim(),
        "k": h.order(),
        "expected_count": report.expected_count,
        "found_count": report.found_count,
        "radius": report.radius,
        "starts": report.starts,
        "converged_starts": report.converged_starts,
        "eigenvalues": report.eigenvalues.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        "pairs": rows,
    });
    let summary = format!(
        "n={} k={}: {} distinct eigenvalues of {} expected, radius {:.6}{}",
        h.dim(),
        h.order(),
        report.found_count,
        report.expected_count,
        report.radius,
        if report.is_complete() { "" } else { " (lower bound)" }
    );
    Report::new(summary, &rows, json)
}

#[derive(Debug, Args, Serialize)]
pub struct PathArgs {
    /// Start hypermatrix (ensemble grammar or file:PATH).
    #[arg(long)]
    pub a0: String,
    /// End hypermatrix.
    #[arg(long)]
    pub a1: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Equispaced grid points on [0, 1].
    #[arg(long, default_value_t = 21)]
    pub grid: usize,
    #[arg(long, default_value_t = 20)]
    pub refine_depth: usize,
    #[arg(long)]
    pub starts: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl PathArgs {
    pub fn inputs(&self) -> Vec<PathBuf> {
        [&self.a0, &self.a1]
            .into_iter()
            .filter_map(|s| match s.parse() {
                Ok(Ensemble::File(p)) => Some(p),
                _ => None,
            })
            .collect()
    }

    fn endpoints(&self) -> Result<(Hypermatrix, Hypermatrix)> {
        let sh = shape(self.n, self.k);
        let a0 = self.a0.parse::<Ensemble>()?.build(sh, derive_seed(self.seed, 0))?;
        let a1 = self.a1.parse::<Ensemble>()?.build(sh, derive_seed(self.seed, 1))?;
        Ok((a0, a1))
    }

    fn track_params(&self) -> TrackParams<f64> {
        TrackParams {
            grid_points: self.grid,
            refine_depth: self.refine_depth,
            solver: solver(self.seed, self.starts, None),
            ..TrackParams::default()
        }
    }
}

#[derive(Serialize)]
struct CurveRow {
    curve_id: usize,
    t: f64,
    lambda_re: f64,
    lambda_im: f64,
    residual: f64,
    singular_flag: u8,
}

pub fn path(a: &PathArgs) -> Result<Report> {
    let (a0, a1) = a.endpoints()?;
    let path = LinePath::between(&a0, &a1)?;
    let curves = track_curves(&path, &a.track_params())?;
    let mut rows = Vec::new();
    for c in &curves {
        for s in &c.samples {
            let singular = c.singular_points.contains(&s.t) || c.broken_at == Some(s.t);
            rows.push(CurveRow {
                curve_id: c.id,
                t: s.t,
                lambda_re: s.lambda.re,
                lambda_im: s.lambda.im,
                residual: s.residual,
                singular_flag: singular as u8,
            });
        }
    }
    let matched = curves.iter().filter(|c| c.matched).count();
    let mut singular: Vec<f64> = curves.iter().flat_map(|c| c.singular_points.iter().copied()).collect();
    singular.sort_by(f64::total_cmp);
    singular.dedup();
    let json = json!({
        "n": path.dim(),
        "k": path.order(),
        "curves": curves.iter().map(|c| json!({
            "curve_id": c.id,
            "matched": c.matched,
            "broken_at": c.broken_at,
            "singular_points": c.singular_points,
            "samples": c.samples.iter().map(|s| json!({
                "t": s.t, "lambda_re": s.lambda.re, "lambda_im": s.lambda.im,
                "residual": s.residual, "depth": s.depth,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    let summary = format!(
        "{} curves, {} continued across [0,1], singular points at {:?}",
        curves.len(),
        matched,
        singular
    );
    Report::new(summary, &rows, json)
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainArg {
    Complex,
    Real,
}

#[derive(Debug, Args, Serialize)]
pub struct WeylArgs {
    #[command(flatten)]
    pub path: PathArgs,
    /// Random starts for the norm estimate.
    #[arg(long = "sigma-starts", default_value_t = 32)]
    pub sigma_starts: usize,
    #[arg(long, value_enum, default_value_t = DomainArg::Complex)]
    pub domain: DomainArg,
}

#[derive(Serialize)]
struct WeylRow {
    max_matched_gap: f64,
    norm_estimate: f64,
    ratio: f64,
    curves: usize,
    broken_curves: usize,
    domain: SigmaDomain,
}

pub fn weyl(a: &WeylArgs) -> Result<Report> {
    let (a0, a1) = a.path.endpoints()?;
    let domain = match a.domain {
        DomainArg::Complex => SigmaDomain::ComplexSphere,
        DomainArg::Real => SigmaDomain::RealSphere,
    };
    let w = weyl_gap_experiment(&a0, &a1, &a.path.track_params(), a.sigma_starts, domain)?;
    let row = WeylRow {
        max_matched_gap: w.max_matched_gap,
        norm_estimate: w.norm_estimate,
        ratio: w.ratio,
        curves: w.curves,
        broken_curves: w.broken_curves,
        domain,
    };
    let summary = format!(
        "max |λ(1)-λ(0)| = {:.6}, ‖A1-A0‖ ≥ {:.6}, ratio {:.4} ({} of {} curves broke)",
        w.max_matched_gap, w.norm_estimate, w.ratio, w.broken_curves, w.curves
    );
    Report::new(summary, &[row], serde_json::to_value(&w)?)
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    Upper,
    Gap,
}

#[derive(Debug, Args, Serialize)]
pub struct TailArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Threshold count, equispaced in t².
    #[arg(long, default_value_t = 40)]
    pub thresholds: usize,
}

#[derive(Serialize)]
struct TailRow {
    threshold: f64,
    survival: f64,
    fit: f64,
}

pub fn tail(a: &TailArgs) -> Result<Report> {
    let kind = match a.kind {
        KindArg::Upper => TailKind::Upper,
        KindArg::Gap => TailKind::Gap,
    };
    let v = uniform_unit::<f64>(a.n);
    let est = tail_estimate(
        kind,
        a.n,
        a.k,
        a.p,
        &v,
        a.trials,
        Thresholds::Auto(a.thresholds),
        a.seed,
    )?;
    let rows: Vec<TailRow> = est
        .thresholds
        .iter()
        .zip(&est.survival)
        .map(|(&t, &s)| TailRow {
            threshold: t,
            survival: s,
            fit: est.fit_big_c * (-est.fit_c * t * t).exp(),
        })
        .collect();
    let summary = format!(
        "{} trials: S(t) ≈ {:.4} exp(-{:.4} t²), slope {:.4}, R² {:.4} over {} thresholds",
        est.trials, est.fit_big_c, est.fit_c, est.slope, est.r_squared, est.fit_points
    );
    let mut json = serde_json::to_value(&est)?;
    json.as_object_mut().map(|o| o.remove("samples"));
    Report::new(summary, &rows, json)
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NetMethod {
    /// Build the whole net and search it.
    Net,
    /// Round each probe to the grid without building the net.
    Rounding,
}

#[derive(Debug, Args, Serialize)]
pub struct NetArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = NetMethod::Net)]
    pub method: NetMethod,
}

#[derive(Serialize)]
struct NetRow {
    n: usize,
    k: usize,
    delta: f64,
    net_size: Option<usize>,
    size_bound: f64,
    within_size_bound: Option<bool>,
    samples: usize,
    max_coord_gap: f64,
    covered: bool,
}

pub fn net_check(a: &NetArgs) -> Result<Report> {
    let (row, check) = match a.method {
        NetMethod::Net => {
            let net = build_net::<f64>(a.n, a.k)?;
            let c = net_cover_check(&net, a.samples, a.seed)?;
            let row = NetRow {
                n: a.n,
                k: a.k,
                delta: net.delta,
                net_size: Some(net.len()),
                size_bound: net.size_bound,
                within_size_bound: Some(net.within_size_bound()),
                samples: c.samples,
                max_coord_gap: c.max_coord_gap,
                covered: c.pass,
            };
            (row, c)
        }
        NetMethod::Rounding => {
            let c = rounding_cover_check::<f64>(a.n, a.k, a.samples, a.seed)?;
            let row = NetRow {
                n: a.n,
                k: a.k,
                delta: c.delta,
                net_size: None,
                size_bound: hyperspectra::experiments::net_size_bound(a.n, a.k),
                within_size_bound: None,
                samples: c.samples,
                max_coord_gap: c.max_coord_gap,
                covered: c.pass,
            };
            (row, c)
        }
    };
    let size = match (row.net_size, row.within_size_bound) {
        (Some(s), Some(w)) => format!(
            "|V'| = {s} vs bound {:.1} ({})",
            row.size_bound,
            if w { "within" } else { "exceeds" }
        ),
        _ => "net not built".to_string(),
    };
    let summary = format!(
        "δ = {:.6}; {size}; worst gap {:.6} over {} probes ({})",
        row.delta,
        row.max_coord_gap,
        row.samples,
        if row.covered { "covered" } else { "not covered" }
    );
    let json =
        json!({ "net": &row, "worst_probe": check.worst_probe.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>() });
    Report::new(summary, &[row], json)
}

#[derive(Debug, Args, Serialize)]
pub struct RadiusArgs {
    #[arg(long)]
    pub k: usize,
    /// Comma separated dimensions, e.g. 2,3,4.
    #[arg(long = "n-list", value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub trials: usize,
    /// Constant in B n^((k-1)/2) sqrt(ln n).
    #[arg(long = "B", default_value_t = 10.0)]
    #[serde(rename = "B")]
    pub b: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub starts: Option<usize>,
}

#[derive(Serialize)]
struct RadiusRow {
    n: usize,
    k: usize,
    p: f64,
    trial: usize,
    seed: u64,
    radius: f64,
    bound: f64,
    ratio: f64,
    found_count: usize,
    expected_count: u64,
    lower_bound_only: bool,
    max_residual: f64,
}

pub fn radius_study(a: &RadiusArgs) -> Result<Report> {
    let study = radius_scaling_study(
        a.k,
        &a.n_list,
        a.p,
        a.trials,
        a.b,
        a.seed,
        &solver(a.seed, a.starts, None),
    )?;
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for r in &study {
        let bound = radius_bound(a.b, r.n, r.k);
        for (i, t) in r.per_trial.iter().enumerate() {
            rows.push(RadiusRow {
                n: r.n,
                k: r.k,
                p: r.p,
                trial: i,
                seed: t.seed,
                radius: t.radius,
                bound,
                ratio: t.radius / bound,
                found_count: t.found_count,
                expected_count: r.expected_count,
                lower_bound_only: t.lower_bound_only,
                max_residual: t.max_residual,
            });
        }
        lines.push(format!(
            "n={}: ratio min {:.4} mean {:.4} max {:.4} ({} solver failures)",
            r.n, r.ratio_stats.min, r.ratio_stats.mean, r.ratio_stats.max, r.solver_failures
        ));
    }
    let failures: usize = study.iter().map(|r| r.solver_failures).sum();
    if failures == study.iter().map(|r| r.trials).sum::<usize>() {
        anyhow::bail!(Error::Solver("every trial failed".into()));
    }
    Report::new(lines.join("\n"), &rows, serde_json::to_value(&study)?)
}

#[derive(Debug, Args, Serialize)]
pub struct HolderArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn holder(a: &HolderArgs) -> Result<Report> {
    let h = holder_sweep::<f64>(a.n, a.k, a.samples, a.seed)?;
    let summary = format!(
        "{} violations over {} unit vectors; min lhs/bound {:.6}; uniform-vector gap {:.2e}",
        h.violations, h.samples, h.min_ratio, h.uniform_gap
    );
    let json = serde_json::to_value(&h)?;
    Report::new(summary, &[h], json)
}
