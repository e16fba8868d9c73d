use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use telegraph::{builtin, ProblemOverrides, REGISTRY};

mod config;
mod output;

use config::{
    parse_enum, parse_schedule, FileConfig, GammaSelection, Norm, OutputKind, ProblemChoice, Vary,
};
use output::{converge_table, run_table, ConvergeSpec, RunSpec};

/// Quintic B-spline collocation solver for the 1D telegraph equation.
#[derive(Parser)]
#[command(name = "telegraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one configuration and write errors, snapshots or a surface.
    Run(RunArgs),
    /// Solve a schedule of (N, k) pairs and report observed orders.
    Converge(ConvergeArgs),
    /// List the built-in problems.
    ListProblems,
}

#[derive(Args)]
struct Common {
    /// Built-in problem id (see list-problems).
    #[arg(long)]
    problem: Option<String>,
    /// TOML file with [problem], [scheme] and [output] sections.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "t-final", allow_negative_numbers = true)]
    t_final: Option<f64>,
    #[arg(long, value_enum)]
    gamma: Option<GammaSelection>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Scale of the constant and linear templates.
    #[arg(long, allow_negative_numbers = true)]
    amplitude: Option<f64>,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    /// Number of subintervals.
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<f64>,
    /// Comma-separated report times, each a whole multiple of k.
    #[arg(long, value_delimiter = ',')]
    report_times: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    kind: Option<OutputKind>,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated N:k pairs, e.g. "25:1e-4,50:1e-4,100:1e-4".
    #[arg(long)]
    schedule: Option<String>,
    #[arg(long, value_enum, default_value = "linf")]
    norm: Norm,
    /// Step the observed order is measured against.
    #[arg(long, value_enum, default_value = "auto")]
    vary: Vary,
}

struct Resolved {
    file: FileConfig,
    problem: ProblemChoice,
    t_final: f64,
    gamma: GammaSelection,
    out: Option<PathBuf>,
}

fn resolve_common(c: &Common) -> Result<Resolved> {
    let file = match &c.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let problem = ProblemChoice::resolve(
        c.problem.as_deref(),
        ProblemOverrides {
            alpha: c.alpha,
            beta: c.beta,
            amplitude: c.amplitude,
        },
        &file.problem,
    )?;
    let t_final = c
        .t_final
        .or(file.scheme.t_final)
        .context("t_final: missing (use --t-final or [scheme] t_final)")?;
    let gamma = match (c.gamma, &file.scheme.gamma) {
        (Some(g), _) => g,
        (None, Some(raw)) => parse_enum("scheme.gamma", raw)?,
        (None, None) => GammaSelection::K,
    };
    let out = c.out.clone().or_else(|| file.output.path.clone());
    Ok(Resolved {
        file,
        problem,
        t_final,
        gamma,
        out,
    })
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).with_context(|| {
                format!("out: cannot create {}", p.display())
            })?))
        }
        None => Box::new(io::stdout().lock()),
    })
}

fn run(args: RunArgs) -> Result<()> {
    let r = resolve_common(&args.common)?;
    let intervals = args
        .n
        .or(r.file.scheme.n)
        .context("N: missing (use --N or [scheme] N)")?;
    let k = args
        .k
        .or(r.file.scheme.k)
        .context("k: missing (use --k or [scheme] k)")?;
    let kind = match (args.kind, &r.file.output.kind) {
        (Some(kind), _) => kind,
        (None, Some(raw)) => parse_enum("output.kind", raw)?,
        (None, None) => OutputKind::ErrorTable,
    };
    let spec = RunSpec {
        problem: builtin(&r.problem.id, &r.problem.overrides)?,
        intervals,
        k,
        t_final: r.t_final,
        gammas: r.gamma.choices(),
        report_times: args.report_times.or(r.file.output.report_times),
        kind,
    };
    let table = run_table(&spec)?;
    table.write(sink(r.out.as_deref())?)
}

fn converge(args: ConvergeArgs) -> Result<()> {
    let r = resolve_common(&args.common)?;
    let raw = args
        .schedule
        .or(r.file.scheme.schedule.clone())
        .context("schedule: missing (use --schedule or [scheme] schedule)")?;
    let spec = ConvergeSpec {
        problem: builtin(&r.problem.id, &r.problem.overrides)?,
        schedule: parse_schedule(&raw)?,
        t_final: r.t_final,
        gammas: r.gamma.choices(),
        norm: args.norm,
        vary: args.vary,
    };
    let table = converge_table(&spec)?;
    table.write(sink(r.out.as_deref())?)
}

fn list_problems() -> Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{:<10} {:>10} {:>10}  solution", "id", "alpha", "beta")?;
    for p in REGISTRY {
        writeln!(
            out,
            "{:<10} {:>10.6} {:>10.6}  {}",
            p.id, p.alpha, p.beta, p.solution
        )?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let result = match Cli::parse().command {
        Command::Run(args) => run(args),
        Command::Converge(args) => converge(args),
        Command::ListProblems => list_problems(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
