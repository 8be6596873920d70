use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ffvc::harness::{
    emit, run_command, CommandOptions, ExperimentConfig, OutputFormat, SetSpec, VerifyOptions, THREADS_ENV,
};
use ffvc::prism::{PrismFilter, PrismOrder};
use ffvc::vc::ClassKind;

#[derive(Parser)]
#[command(name = "ffvc", version, about = "Distance geometry and VC-dimension experiments over F_q^d")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Odd prime modulus.
    #[arg(long, global = true)]
    q: Option<u32>,
    /// Dimension.
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Sphere radius parameter, a nonzero residue.
    #[arg(long, global = true)]
    t: Option<u32>,
    /// full | random:SIZE:SEED | file:PATH
    #[arg(long, global = true, default_value = "full")]
    set: SetSpec,
    /// Master seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads [default: $FFVC_THREADS, else all cores].
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// json | csv
    #[arg(long, global = true, default_value = "json")]
    format: OutputFormat,
    /// Write the record here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sphere sizes against q^{d-1} ± q^{d/2} for every radius.
    SphereSize,
    /// Count k-chains in the distance graph of E.
    Gamma {
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Count and list prisms.
    Prisms {
        /// Center size [default: d].
        #[arg(long)]
        n: Option<usize>,
        /// nondegenerate | affinely-nondegenerate
        #[arg(long, default_value = "nondegenerate")]
        filter: PrismFilter,
        /// ordered | unordered
        #[arg(long, default_value = "unordered")]
        order: PrismOrder,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_prisms: usize,
    },
    /// Bad subsets of affinely nondegenerate prism centers.
    BadSets {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[arg(long, default_value_t = 10_000)]
        max_prisms: usize,
    },
    /// Exact VC-dimension by search.
    VcDim {
        /// two-param | one-param
        #[arg(long, default_value = "two-param")]
        class: ClassKind,
        #[arg(long, default_value_t = 4_000_000)]
        max_candidates: usize,
        #[arg(long, default_value_t = 200_000)]
        max_prisms: usize,
        /// Stop at the structural cap instead of searching one level above.
        #[arg(long)]
        structural_cap_only: bool,
        /// Seconds before the search reports a lower bound.
        #[arg(long)]
        time_budget: Option<f64>,
    },
    /// Shatter a prism center with explicit classifiers.
    Witness {
        #[arg(long, default_value_t = 200_000)]
        max_prisms: usize,
    },
    /// Sample-complexity sweep of ERM.
    PacSweep {
        #[arg(long, default_value = "two-param")]
        class: ClassKind,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Comma-separated, strictly increasing.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,4,8,16,32,64,128")]
        m_grid: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Add Wilson 95% bands and a conservative estimate.
        #[arg(long)]
        confidence_band: bool,
        /// Target parameters as comma-separated point indices.
        #[arg(long, value_delimiter = ',')]
        target: Option<Vec<u32>>,
        #[arg(long, default_value_t = 5_000_000)]
        max_hypotheses: u64,
    },
    /// Run every check on one instance.
    Verify {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 200_000)]
        max_prisms: usize,
        #[arg(long, default_value_t = 200)]
        bad_set_prisms: usize,
    },
}

impl Command {
    fn into_options(self) -> CommandOptions {
        match self {
            Command::SphereSize => CommandOptions::SphereSize,
            Command::Gamma { k } => CommandOptions::Gamma { k },
            Command::Prisms {
                n,
                filter,
                order,
                limit,
                max_prisms,
            } => CommandOptions::Prisms {
                n,
                filter,
                order,
                limit,
                max_prisms,
            },
            Command::BadSets { n, limit, max_prisms } => CommandOptions::BadSets { n, limit, max_prisms },
            Command::VcDim {
                class,
                max_candidates,
                max_prisms,
                structural_cap_only,
                time_budget,
            } => CommandOptions::VcDim {
                class,
                max_candidates,
                max_prisms,
                structural_cap_only,
                time_budget_secs: time_budget,
            },
            Command::Witness { max_prisms } => CommandOptions::Witness { max_prisms },
            Command::PacSweep {
                class,
                epsilon,
                delta,
                m_grid,
                trials,
                confidence_band,
                target,
                max_hypotheses,
            } => CommandOptions::PacSweep {
                class,
                epsilon,
                delta,
                m_grid,
                trials,
                confidence_band,
                target,
                max_hypotheses,
            },
            Command::Verify {
                samples,
                max_prisms,
                bad_set_prisms,
            } => CommandOptions::Verify(VerifyOptions {
                samples,
                max_prisms,
                bad_set_prisms,
            }),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = cli.common;
    let (Some(q), Some(d), Some(t)) = (c.q, c.d, c.t) else {
        eprintln!("error: --q, --d and --t are required");
        return ExitCode::from(2);
    };
    let config = ExperimentConfig {
        q,
        d,
        t,
        set: c.set,
        seed: c.seed,
        threads: c.threads,
        format: c.format,
        output: c.output,
        command: cli.command.into_options(),
    };
    let record = match run_command(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, ffvc::Error::InvalidArgument(ref m) if m.contains(THREADS_ENV)) {
                eprintln!("hint: unset {THREADS_ENV} or set it to a positive integer");
            }
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&record) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for check in record.checks.iter().filter(|c| c.outcome.is_failure()) {
        eprintln!("check failed: {}{}", check.name, check.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default());
    }
    ExitCode::from(record.exit_code() as u8)
}
