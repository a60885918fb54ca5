mod commands;
mod ensemble;
mod output;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use commands::*;
use output::{format_ext, now_ms, Emit, Format};
use plot::PlotKind;

/// Eigenstructure experiments on symmetric hypermatrices.
#[derive(Debug, Parser)]
#[command(name = "hyperspectra", version)]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Serialize)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (`*.csv`, `*.json`) or directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct With<A: Args> {
    #[command(flatten)]
    #[serde(flatten)]
    args: A,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Debug, Args, Serialize)]
struct PlotArgs {
    /// CSV written by `tail` or `path`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    kind: PlotKind,
    /// SVG file or directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Complete-gap bound against the exact maximum row sum.
    Bounds(With<BoundsArgs>),
    /// Distinct eigenvalues of one hypermatrix.
    Spectrum(With<SpectrumArgs>),
    /// Eigenvalue curves along A0 + t(A1 - A0).
    Path(With<PathArgs>),
    /// Endpoint eigenvalue gap against the norm of A1 - A0.
    Weyl(With<WeylArgs>),
    /// Empirical tail of the contracted random ensembles.
    Tail(With<TailArgs>),
    /// Size and coverage of the complex grid net.
    NetCheck(With<NetArgs>),
    /// Spectral radii of sampled random gaps against B n^((k-1)/2) sqrt(ln n).
    RadiusStudy(With<RadiusArgs>),
    /// Hölder lower bound on random unit vectors.
    Holder(With<HolderArgs>),
    /// SVG of a tail or curves CSV.
    Plot(PlotArgs),
}

fn seeded<A: Args + Serialize>(
    name: &str,
    w: &With<A>,
    seed: Option<u64>,
    inputs: Vec<PathBuf>,
    run: impl FnOnce(&A) -> anyhow::Result<output::Report>,
) -> anyhow::Result<()> {
    let started = now_ms();
    let report = run(&w.args)?;
    println!("{}", report.summary);
    let data = report.bytes(w.common.format)?;
    Emit {
        command: name,
        params: serde_json::to_value(w)?,
        seed,
        started,
        out: w.common.out.as_deref(),
        inputs,
    }
    .finish(&data, format_ext(w.common.format))
}

fn dispatch(cmd: &Command) -> anyhow::Result<()> {
    match cmd {
        Command::Bounds(w) => seeded("bounds", w, None, vec![], bounds),
        Command::Spectrum(w) => seeded("spectrum", w, Some(w.args.seed), w.args.inputs(), spectrum),
        Command::Path(w) => seeded("path", w, Some(w.args.seed), w.args.inputs(), path),
        Command::Weyl(w) => seeded("weyl", w, Some(w.args.path.seed), w.args.path.inputs(), weyl),
        Command::Tail(w) => seeded("tail", w, Some(w.args.seed), vec![], tail),
        Command::NetCheck(w) => seeded("net-check", w, Some(w.args.seed), vec![], net_check),
        Command::RadiusStudy(w) => seeded("radius-study", w, Some(w.args.seed), vec![], radius_study),
        Command::Holder(w) => seeded("holder", w, Some(w.args.seed), vec![], holder),
        Command::Plot(p) => {
            let started = now_ms();
            let svg = plot::render(&p.input, p.kind)?;
            println!("rendered {:?} plot of {}", p.kind, p.input.display());
            Emit {
                command: "plot",
                params: serde_json::to_value(p)?,
                seed: None,
                started,
                out: p.out.as_deref(),
                inputs: vec![p.input.clone()],
            }
            .finish(svg.as_bytes(), "svg")
        }
    }
}

/// 1 parameter/parse, 2 capacity, 3 solver or experiment failure.
fn exit_code(err: &anyhow::Error) -> u8 {
    use hyperspectra::Error as E;
    match err.downcast_ref::<E>() {
        Some(E::Capacity { .. } | E::Overflow(_)) => 2,
        Some(E::Solver(_) | E::Singular { .. } | E::Degenerate(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
