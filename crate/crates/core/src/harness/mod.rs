//! Experiment plumbing shared by the `ffvc` binary and the examples:
//! configuration, point-set ingestion, command dispatch and result records.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::field::FieldParams;
use crate::prism::{PrismFilter, PrismOrder};
use crate::vc::ClassKind;

pub use commands::{verify_suite, VerifyOptions};
pub use input::{load_pointset, parse_pointset, resolve_set, sample_subset, SetSpec};
pub use output::{flatten_json, write_csv, write_json};

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "FFVC_THREADS";

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::InvalidArgument(format!("unknown format '{s}' (json | csv)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum CommandOptions {
    SphereSize,
    Gamma {
        k: usize,
    },
    Prisms {
        /// Center size; defaults to `d`.
        n: Option<usize>,
        filter: PrismFilter,
        order: PrismOrder,
        /// Prisms listed in the record.
        limit: usize,
        /// Enumeration stops after this many prisms.
        max_prisms: usize,
    },
    BadSets {
        n: Option<usize>,
        limit: usize,
        max_prisms: usize,
    },
    VcDim {
        class: ClassKind,
        max_candidates: usize,
        max_prisms: usize,
        /// Trust the structural cap instead of searching the level above it.
        structural_cap_only: bool,
        time_budget_secs: Option<f64>,
    },
    Witness {
        max_prisms: usize,
    },
    PacSweep {
        class: ClassKind,
        epsilon: f64,
        delta: f64,
        m_grid: Vec<usize>,
        trials: usize,
        confidence_band: bool,
        /// Target parameters as point indices; defaults to a largest-support classifier.
        target: Option<Vec<u32>>,
        max_hypotheses: u64,
    },
    Verify(VerifyOptions),
}

impl CommandOptions {
    pub fn name(&self) -> &'static str {
        match self {
            CommandOptions::SphereSize => "sphere-size",
            CommandOptions::Gamma { .. } => "gamma",
            CommandOptions::Prisms { .. } => "prisms",
            CommandOptions::BadSets { .. } => "bad-sets",
            CommandOptions::VcDim { .. } => "vc-dim",
            CommandOptions::Witness { .. } => "witness",
            CommandOptions::PacSweep { .. } => "pac-sweep",
            CommandOptions::Verify(_) => "verify",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub q: u32,
    pub d: usize,
    pub t: u32,
    pub set: SetSpec,
    /// Master seed for every randomized step.
    pub seed: u64,
    pub threads: Option<usize>,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub command: CommandOptions,
}

impl ExperimentConfig {
    pub fn params(&self) -> Result<FieldParams> {
        FieldParams::new(self.q, self.d, self.t)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub config: ExperimentConfig,
    pub command: String,
    pub results: serde_json::Value,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub version: String,
    pub wall_ms: u64,
}

impl ResultRecord {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.outcome.is_failure())
    }

    /// `0` when no check failed, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed())
    }

    /// Command, results and checks: everything that must not depend on
    /// scheduling or wall time.
    pub fn payload(&self) -> String {
        serde_json::to_string(&(&self.command, &self.results, &self.checks)).expect("serializable")
    }
}

/// Worker count from [`THREADS_ENV`], if set.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| Error::InvalidArgument(format!("{THREADS_ENV}={v} is not a positive integer"))),
        Err(_) => Ok(None),
    }
}

/// Runs the configured command inside a dedicated thread pool.
pub fn run_command(config: &ExperimentConfig) -> Result<ResultRecord> {
    let params = config.params()?;
    let threads = match config.threads {
        Some(n) => Some(n),
        None => threads_from_env()?,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::InvalidArgument("thread count must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let (results, checks) = pool.install(|| commands::dispatch(config, &params))?;
    Ok(ResultRecord {
        config: config.clone(),
        command: config.command.name().to_string(),
        results,
        checks,
        seed: config.seed,
        version: VERSION.to_string(),
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Serializes the record in the configured format to the configured path or stdout.
pub fn emit(record: &ResultRecord) -> Result<()> {
    let mut buf = Vec::new();
    match record.config.format {
        OutputFormat::Json => write_json(record, &mut buf)?,
        OutputFormat::Csv => write_csv(record, &mut buf)?,
    }
    match &record.config.output {
        Some(path) => std::fs::write(path, &buf).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&buf).map_err(Error::from)
        }
    }
}
