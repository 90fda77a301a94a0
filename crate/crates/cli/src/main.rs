//! `weyl-lab`: run the numerical experiments and write CSV or JSON reports.
//!
//! Exit codes: 0 success, 1 invariant violation (the report is still
//! written), 2 usage error, 3 work budget or memory cap exceeded.

mod commands;
mod config;
mod error;
mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, Overrides, RunConfig, THREADS_ENV};
use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "weyl-lab", version, about = "Experiments on quadratic Weyl sums")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads. The WEYL_LAB_THREADS environment variable wins over
    /// this flag.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for random polynomial families.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Maximum number of grid-point evaluations per command.
    #[arg(long, global = true)]
    work_budget: Option<u128>,
    /// Optional key=value file with defaults for the flags above.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Direct Gauss sums against the closed-form magnitude.
    Gauss(commands::GaussArgs),
    /// One L^alpha moment of S_N.
    Moment(commands::MomentArgs),
    /// L^alpha moments over a list of N.
    NormScan(commands::NormScanArgs),
    /// Fit the growth exponent of a norm-scan or moment CSV.
    Fit(commands::FitArgs),
    /// Center law |S_N(b/q, a/q)| = (N/q)|S(a,b,q)| + O(q) over all arcs.
    ArcCheck(commands::ArcCheckArgs),
    /// Weighted totient sums against their asymptotics.
    Totient(commands::TotientArgs),
    /// Littlewood-Paley comparability or Bernstein battery on a random family.
    LpCheck(commands::LpCheckArgs),
    /// Weighted L^alpha / l^2 ratios for decreasing coefficients.
    Cordoba(commands::CordobaArgs),
    /// Fraction of the torus where |S_N| is within [a, b] times sqrt(N).
    Levelset(commands::LevelsetArgs),
}

fn run(cli: Cli) -> CliResult<bool> {
    let file = match &cli.global.config {
        Some(path) => config::load_config_file(path)?,
        None => Overrides::default(),
    };
    let flags = Overrides {
        threads: cli.global.threads,
        work_budget: cli.global.work_budget,
        seed: cli.global.seed,
        format: cli.global.format,
    };
    let cfg = config::resolve(file, flags, std::env::var(THREADS_ENV).ok())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    let report = pool.install(|| dispatch(&cli.command, &cfg))?;
    let text = report.render(cfg.format)?;
    match &cli.global.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(&path.display().to_string(), e))?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))?,
    }
    for n in &report.notes {
        eprintln!("note: {n}");
    }
    for v in &report.violations {
        eprintln!("invariant: {v}");
    }
    Ok(report.violations.is_empty())
}

fn dispatch(command: &Command, cfg: &RunConfig) -> CliResult<report::Report> {
    match command {
        Command::Gauss(a) => commands::gauss(a, cfg),
        Command::Moment(a) => commands::moment(a, cfg),
        Command::NormScan(a) => commands::norm_scan(a, cfg),
        Command::Fit(a) => commands::fit(a, cfg),
        Command::ArcCheck(a) => commands::arc_check(a, cfg),
        Command::Totient(a) => commands::totient(a, cfg),
        Command::LpCheck(a) => commands::lp_check(a, cfg),
        Command::Cordoba(a) => commands::cordoba(a, cfg),
        Command::Levelset(a) => commands::levelset(a, cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
