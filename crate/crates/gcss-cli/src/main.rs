use clap::Parser;
use gcss::ToleranceConfig;
use gcss_cli::error::CliError;
use gcss_cli::io::SourceFormat;
use gcss_cli::{run, RunConfig, TargetMode};
use std::path::PathBuf;
use std::process::ExitCode;

/// Select source-matrix columns whose span best approximates a target.
///
/// Exit codes: 0 success, 2 configuration error, 3 i/o or data error,
/// 4 numerical breakdown.
#[derive(Debug, Parser)]
#[command(name = "gcss", version, about)]
struct Args {
    /// Source matrix file (CSV, or MatrixMarket for .mtx/.mm).
    source: PathBuf,

    /// Override format detection: csv or matrix-market.
    #[arg(long)]
    format: Option<SourceFormat>,

    /// Skip the first line of a CSV source (column headers).
    #[arg(long)]
    skip_header: bool,

    /// Target to approximate: self, rproj:<r>, partition:<c>, svd[:<k>]
    /// (k defaults to the number of selected columns), or file:<path>.
    #[arg(short, long, default_value = "self")]
    target: TargetMode,

    /// Number of columns to select.
    #[arg(short = 'l', long, value_parser = clap::value_parser!(u64).range(1..))]
    columns: u64,

    /// Seed for the randomized targets (rproj, partition).
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Admissibility threshold, relative to the largest initial column
    /// energy: columns at or below it count as spanned.
    #[arg(long, default_value_t = 1e-10)]
    eps_admit: f64,

    /// Early-stop threshold on the relative objective gain; 0 disables.
    #[arg(long, default_value_t = 0.0)]
    eps_stop: f64,

    /// Recompute the criterion vectors from explicit residuals every N
    /// iterations (off by default).
    #[arg(long)]
    refresh_every: Option<usize>,

    /// Write the report here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,

    /// Also write least-squares reconstruction coefficients for the
    /// selected columns as CSV next to the report (needs --output).
    #[arg(long)]
    emit_coefficients: bool,
}

fn execute(args: Args) -> Result<(), CliError> {
    if args.eps_admit < 0.0 || args.eps_stop < 0.0 {
        return Err(CliError::Config("thresholds must be non-negative".into()));
    }
    let config = RunConfig {
        source_path: args.source,
        source_format: args.format,
        skip_header: args.skip_header,
        target_mode: args.target,
        num_columns: args.columns as usize,
        seed: args.seed,
        tolerances: ToleranceConfig {
            eps_admit: args.eps_admit,
            eps_stop: args.eps_stop,
            refresh_every: args.refresh_every,
        },
        output_path: args.output,
        emit_coefficients: args.emit_coefficients,
    };
    let outcome = run(&config)?;
    match &config.output_path {
        Some(path) => std::fs::write(path, &outcome.report).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?,
        None => print!("{}", outcome.report),
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("gcss: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
