//! Batch experiment runner: configures fixtures, runs the verification
//! suites with seeds, and emits machine-readable reports.
//!
//! Exit status: 0 when every check reached its expected verdict, 1 on a
//! check failure, 2 on configuration errors, 3 when a resource budget was
//! exceeded.

use clap::{Parser, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use wgalg::suites::{self, SuiteConfig, SuiteKind};
use wgalg::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "wgalg",
    about = "Verification suites for weighted convolution algebras on discrete groups",
    long_about = None
)]
struct Cli {
    /// Which suite to run: theorem1, conditions, condition2-witness,
    /// prop12, symmetric, lemma31, thm32, all.
    #[arg(long)]
    suite: Option<String>,

    /// Free group rank.
    #[arg(long, default_value_t = 2)]
    rank: u64,

    /// Cyclic group order (lemma31 and cyclic fixtures).
    #[arg(long, default_value_t = 6)]
    n: u64,

    /// Weight spec string, e.g. `lenpoly:a=3`, `evenpolyZ:c=1,d=2`,
    /// `const:c=2`, `max(...,...)`, `reflect(...)`, `inv(...)`.
    #[arg(long)]
    weight: Option<String>,

    /// Exponent parameter: `a` of the length weight; `alpha` for prop12.
    #[arg(long, default_value_t = 3.0)]
    a: f64,

    /// Hölder exponent p.
    #[arg(long, default_value_t = 2.0)]
    p: f64,

    /// Number of sampled trials.
    #[arg(long, default_value_t = 1000)]
    trials: u64,

    /// Master seed; identical configs produce byte-identical reports.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Support size of sampled functions.
    #[arg(long, default_value_t = 200)]
    support_size: usize,

    /// Maximum word length of sampled elements.
    #[arg(long, default_value_t = 12)]
    max_length: u64,

    /// Sphere radius for the condition-(2) witness hunt.
    #[arg(long, default_value_t = 1)]
    radius: u64,

    /// Output format; CSV is a lossy projection without witnesses.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Relative slack for float-path inequality checks.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,

    /// Worker threads for trial-level parallelism (0 = all cores).
    /// Reports are bit-identical at any setting.
    #[arg(long, default_value_t = 0)]
    jobs: usize,

    /// Cap on scalar multiplications per convolution.
    /// The WCL_BUDGET environment variable overrides this flag.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,

    /// Write reports here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Omit wall-clock timing so output is byte-reproducible.
    #[arg(long, default_value_t = false)]
    no_timestamp: bool,

    /// Recompute the checks recorded in a previous run's report file.
    #[arg(long)]
    replay: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(if err.is_budget() { 3 } else { 2 })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, suites::SuiteError> {
    if let Some(path) = &cli.replay {
        return replay_file(&cli, path);
    }

    let suite: SuiteKind = cli
        .suite
        .as_deref()
        .ok_or_else(|| suites::SuiteError::Config("--suite is required".to_string()))?
        .parse()?;
    let budget = match std::env::var("WCL_BUDGET") {
        Ok(v) => v
            .parse()
            .map_err(|e| suites::SuiteError::Config(format!("WCL_BUDGET: {e}")))?,
        Err(_) => cli.budget,
    };
    let config = SuiteConfig {
        suite,
        rank: cli.rank,
        n: cli.n,
        weight: cli.weight.clone(),
        a: cli.a,
        p: cli.p,
        trials: cli.trials,
        seed: cli.seed,
        support_size: cli.support_size,
        max_length: cli.max_length,
        radius: cli.radius,
        tolerance: cli.tolerance,
        budget,
        sphere_budget: budget.min(1_000_000),
        jobs: cli.jobs,
        with_timing: !cli.no_timestamp,
    };

    let run = suites::run(&config)?;
    emit(&cli, &run.reports)?;
    Ok(if run.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn emit(cli: &Cli, reports: &[VerificationReport]) -> Result<(), suites::SuiteError> {
    let io_err = |e: std::io::Error| suites::SuiteError::Config(format!("output: {e}"));
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(std::io::BufWriter::new(
            std::fs::File::create(path).map_err(io_err)?,
        )),
        None => Box::new(std::io::stdout().lock()),
    };
    match cli.format {
        OutputFormat::Json => {
            for report in reports {
                writeln!(sink, "{}", report.to_json()).map_err(io_err)?;
            }
        }
        OutputFormat::Csv => {
            writeln!(sink, "{}", VerificationReport::CSV_HEADER).map_err(io_err)?;
            for report in reports {
                writeln!(sink, "{}", report.to_csv_row()).map_err(io_err)?;
            }
        }
    }
    sink.flush().map_err(io_err)
}

fn replay_file(cli: &Cli, path: &PathBuf) -> Result<ExitCode, suites::SuiteError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| suites::SuiteError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut recomputed = Vec::new();
    let mut all_match = true;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let recorded: VerificationReport = serde_json::from_str(line).map_err(|e| {
            suites::SuiteError::Config(format!("line {}: malformed witness: {e}", lineno + 1))
        })?;
        if recorded.version.as_deref() != Some(env!("CARGO_PKG_VERSION")) {
            eprintln!(
                "warning: witness from library version {:?}, this is {}; recomputing anyway",
                recorded.version.as_deref().unwrap_or("<unknown>"),
                env!("CARGO_PKG_VERSION"),
            );
        }
        match suites::replay(&recorded) {
            Ok(report) => {
                let matches = report.lhs == recorded.lhs
                    && report.rhs == recorded.rhs
                    && report.exact == recorded.exact;
                if !matches {
                    all_match = false;
                    eprintln!(
                        "replay mismatch for {}: recorded lhs={} rhs={}, recomputed lhs={} rhs={}",
                        recorded.check, recorded.lhs, recorded.rhs, report.lhs, report.rhs
                    );
                }
                recomputed.push(report);
            }
            Err(suites::SuiteError::Config(msg)) => {
                eprintln!("skipping line {}: {msg}", lineno + 1);
            }
            Err(other) => return Err(other),
        }
    }
    emit(cli, &recomputed)?;
    Ok(if all_match { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
