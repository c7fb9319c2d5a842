//! Batch front-end: load a source matrix, build the requested target, run
//! the greedy selection and emit a machine-readable report (plus optional
//! reconstruction coefficients).

pub mod error;
pub mod io;

use error::CliError;
use gcss::{build_target, greedy_select, solve_coefficients, TargetSpec, ToleranceConfig};
use io::SourceFormat;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// How to construct the target matrix, as given on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum TargetMode {
    SelfTarget,
    RandomProjection { r: usize },
    FeaturePartition { c: usize },
    Svd { k: Option<usize> },
    File { path: PathBuf },
}

impl TargetMode {
    pub fn describe(&self) -> String {
        match self {
            TargetMode::SelfTarget => "self".into(),
            TargetMode::RandomProjection { r } => format!("rproj:{r}"),
            TargetMode::FeaturePartition { c } => format!("partition:{c}"),
            TargetMode::Svd { k: Some(k) } => format!("svd:{k}"),
            TargetMode::Svd { k: None } => "svd".into(),
            TargetMode::File { path } => format!("file:{}", path.display()),
        }
    }
}

impl std::str::FromStr for TargetMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, arg) = match s.split_once(':') {
            Some((head, arg)) => (head, Some(arg)),
            None => (s, None),
        };
        let count = |what: &str, arg: Option<&str>| -> Result<usize, String> {
            let text = arg.ok_or_else(|| format!("{what} needs an argument, e.g. {what}:3"))?;
            text.parse::<usize>()
                .map_err(|_| format!("bad {what} argument '{text}'"))
        };
        match head {
            "self" => Ok(TargetMode::SelfTarget),
            "rproj" => Ok(TargetMode::RandomProjection {
                r: count("rproj", arg)?,
            }),
            "partition" => Ok(TargetMode::FeaturePartition {
                c: count("partition", arg)?,
            }),
            "svd" => Ok(TargetMode::Svd {
                k: arg.map(|t| count("svd", Some(t))).transpose()?,
            }),
            "file" => {
                let path = arg.ok_or_else(|| "file needs a path, e.g. file:target.csv".to_string())?;
                Ok(TargetMode::File { path: path.into() })
            }
            other => Err(format!(
                "unknown target mode '{other}' (expected self, rproj:<r>, partition:<c>, \
                 svd[:<k>] or file:<path>)"
            )),
        }
    }
}

/// Everything one run needs; mirrors the command line one-to-one.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source_path: PathBuf,
    /// `None` means detect from the file extension.
    pub source_format: Option<SourceFormat>,
    pub skip_header: bool,
    pub target_mode: TargetMode,
    pub num_columns: usize,
    pub seed: u64,
    pub tolerances: ToleranceConfig,
    pub output_path: Option<PathBuf>,
    pub emit_coefficients: bool,
}

#[derive(Debug, Serialize)]
struct ConfigEcho {
    source_path: String,
    source_format: String,
    skip_header: bool,
    target_mode: String,
    num_columns: usize,
    seed: u64,
    eps_admit: f64,
    eps_stop: f64,
    refresh_every: Option<usize>,
    output_path: Option<String>,
    emit_coefficients: bool,
}

#[derive(Debug, Serialize)]
struct IterationEcho {
    index: usize,
    gain: f64,
    objective_after: f64,
}

#[derive(Debug, Serialize)]
struct ReportDocument {
    advisories: Vec<String>,
    config: ConfigEcho,
    final_objective: f64,
    initial_objective: f64,
    iterations: Vec<IterationEcho>,
    selected: Vec<usize>,
    source_shape: [usize; 2],
    stopped_early: Option<String>,
    target_shape: [usize; 2],
    wall_time_ms: f64,
}

/// Outcome of a run: the rendered report plus where things were written.
#[derive(Debug)]
pub struct RunOutcome {
    /// Key-sorted JSON document, trailing newline included.
    pub report: String,
    pub coefficients_path: Option<PathBuf>,
}

fn coefficients_path(output: &Path) -> PathBuf {
    let mut path = output.to_path_buf();
    path.set_extension("coefficients.csv");
    path
}

/// Execute one selection run end to end.
pub fn run(config: &RunConfig) -> Result<RunOutcome, CliError> {
    if config.emit_coefficients && config.output_path.is_none() {
        return Err(CliError::Config(
            "--emit-coefficients needs --output (coefficients are written next to the report)"
                .into(),
        ));
    }
    let start = Instant::now();

    let format = config
        .source_format
        .unwrap_or_else(|| SourceFormat::detect(&config.source_path));
    let source = io::load_matrix(&config.source_path, format, config.skip_header)?;

    let spec = match &config.target_mode {
        TargetMode::SelfTarget => TargetSpec::SelfTarget,
        TargetMode::RandomProjection { r } => TargetSpec::RandomProjection {
            r: *r,
            seed: config.seed,
        },
        TargetMode::FeaturePartition { c } => TargetSpec::FeaturePartition {
            c: *c,
            seed: config.seed,
        },
        TargetMode::Svd { k } => TargetSpec::Svd {
            k: k.unwrap_or(config.num_columns),
        },
        TargetMode::File { path } => {
            let target = io::load_matrix(path, SourceFormat::detect(path), false)?;
            TargetSpec::External(target)
        }
    };
    let target = build_target(&source, &spec)?;

    let report = greedy_select(
        &source,
        target.as_ref(),
        config.num_columns,
        &config.tolerances,
    )?;

    let mut advisories = Vec::new();
    if let Some(reason) = report.stopped_early {
        advisories.push(format!(
            "early stop after {} of {} iterations: {reason}",
            report.iterations.len(),
            config.num_columns
        ));
    }
    if !report.refresh_iterations.is_empty() {
        advisories.push(format!(
            "state refreshed from residuals after iterations {:?}",
            report.refresh_iterations
        ));
    }

    let mut coefficients_file = None;
    if config.emit_coefficients && !report.selected.is_empty() {
        let coeffs = solve_coefficients(&source, &report.selected, target.as_ref())?;
        if coeffs.rank_deficient {
            advisories.push(format!(
                "selected columns are rank deficient (rank {} of {}); minimum-norm \
                 coefficients written",
                coeffs.rank,
                report.selected.len()
            ));
        }
        let path = coefficients_path(config.output_path.as_deref().expect("checked above"));
        io::write_matrix_csv(&path, &coeffs.matrix)?;
        coefficients_file = Some(path);
    }

    let document = ReportDocument {
        advisories,
        config: ConfigEcho {
            source_path: config.source_path.display().to_string(),
            source_format: format.name().to_string(),
            skip_header: config.skip_header,
            target_mode: config.target_mode.describe(),
            num_columns: config.num_columns,
            seed: config.seed,
            eps_admit: config.tolerances.eps_admit,
            eps_stop: config.tolerances.eps_stop,
            refresh_every: config.tolerances.refresh_every,
            output_path: config
                .output_path
                .as_ref()
                .map(|p| p.display().to_string()),
            emit_coefficients: config.emit_coefficients,
        },
        final_objective: report.final_objective,
        initial_objective: report.initial_objective,
        iterations: report
            .iterations
            .iter()
            .map(|r| IterationEcho {
                index: r.index,
                gain: r.gain,
                objective_after: r.objective_after,
            })
            .collect(),
        selected: report.selected.clone(),
        source_shape: [source.rows(), source.cols()],
        stopped_early: report.stopped_early.map(|r| r.to_string()),
        target_shape: [target.rows(), target.cols()],
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };

    // Through `serde_json::Value` the object keys land in a BTreeMap, so
    // the rendered document is key-sorted and diff-stable.
    let value = serde_json::to_value(&document)
        .map_err(|e| CliError::Config(format!("report serialization failed: {e}")))?;
    let mut rendered = serde_json::to_string_pretty(&value)
        .map_err(|e| CliError::Config(format!("report serialization failed: {e}")))?;
    rendered.push('\n');

    Ok(RunOutcome {
        report: rendered,
        coefficients_path: coefficients_file,
    })
}
