//! Command-line front end: seeded experiment runs and verification suites,
//! reported as JSON.
//!
//! Exit codes: 0 on success, 1 on invalid configuration or arguments, 2 when
//! the run itself fails (solver failure or a failed check).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use shiftlab::checks::CheckConfig;
use shiftlab::experiments::{
    run_experiment, CheckRunConfig, ExperimentConfig, ExperimentError, HmsFourierConfig,
    HmsReduceConfig, LfsBenchConfig, LfsSolveConfig, RunReport,
};

#[derive(Parser)]
#[command(
    name = "shiftlab",
    version,
    about = "Subset-learning solver and hidden-multiple-shift simulation harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Learning-from-subset tasks.
    Lfs {
        #[command(subcommand)]
        task: LfsTask,
    },
    /// Hidden-multiple-shift tasks.
    Hms {
        #[command(subcommand)]
        task: HmsTask,
    },
    /// Numerical verification suites.
    Check {
        /// One of: poly-shrink, schwartz-zippel, vandermonde, measure-bound,
        /// mu-overlap, hadamard, all.
        #[arg(default_value = "all")]
        which: String,
        /// Largest prime in determinant/measurement sweeps.
        #[arg(long, default_value_t = 31)]
        q_max: u64,
        /// Largest shift-set deficiency in those sweeps.
        #[arg(long, default_value_t = 3)]
        c_max: u64,
        /// Seeded trials for vanishing-space statistics.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Monte-Carlo samples per vanishing-rate configuration.
        #[arg(long, default_value_t = 100_000)]
        mc_samples: usize,
        /// Number of random vanishing-rate configurations.
        #[arg(long, default_value_t = 10)]
        configs: usize,
        #[arg(long)]
        seed: u64,
        /// Report destination (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LfsTask {
    /// Solve one instance from a sample file.
    Solve {
        /// Sample file: line 1 `q,n`, then n comma-separated residues per line.
        #[arg(long)]
        samples: PathBuf,
        /// The value set A, comma separated.
        #[arg(long = "A", value_delimiter = ',', required = true)]
        a_set: Vec<u64>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Planted-instance benchmark over seeded trials.
    Bench {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Explicit value set (drawn per trial when absent).
        #[arg(long = "A", value_delimiter = ',')]
        a_set: Option<Vec<u64>>,
        /// Integer weights per value (uniform when absent).
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u64>>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Overrides the formula-driven sample count.
        #[arg(long)]
        n_override: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HmsTask {
    /// Reduction pipeline: subspace measurement, subset learning, scalar
    /// recovery, verification.
    Reduce {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Explicit shift set ({0..r-1} when absent).
        #[arg(long = "H", value_delimiter = ',')]
        h_set: Option<Vec<u64>>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        /// Overrides the formula-driven retained-sample count.
        #[arg(long)]
        n_override: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fourier-sampling baseline with a plurality vote across trials.
    Fourier {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long = "H", value_delimiter = ',')]
        h_set: Option<Vec<u64>>,
        /// Pairs measured per trial (n + 4 when absent).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{}", e);
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", e);
            return ExitCode::from(1);
        }
    };
    let (config, out) = build_config(cli.command);
    match run_experiment(&config) {
        Err(ExperimentError::InvalidConfig(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Ok(report) => match emit_report(&report, out.as_deref()) {
            Err(e) => {
                eprintln!("error: failed to write report: {}", e);
                ExitCode::from(1)
            }
            Ok(()) => {
                if report.success {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(2)
                }
            }
        },
    }
}

fn build_config(command: Command) -> (ExperimentConfig, Option<PathBuf>) {
    match command {
        Command::Lfs { task } => match task {
            LfsTask::Solve {
                samples,
                a_set,
                seed,
                out,
            } => (
                ExperimentConfig::LfsSolve(LfsSolveConfig {
                    samples_path: samples.display().to_string(),
                    values: a_set,
                    seed,
                }),
                out,
            ),
            LfsTask::Bench {
                q,
                n,
                d,
                a_set,
                weights,
                seed,
                trials,
                n_override,
                out,
            } => (
                ExperimentConfig::LfsBench(LfsBenchConfig {
                    q,
                    n,
                    d,
                    values: a_set,
                    weights,
                    trials,
                    seed,
                    sample_override: n_override,
                }),
                out,
            ),
        },
        Command::Hms { task } => match task {
            HmsTask::Reduce {
                q,
                n,
                r,
                h_set,
                seed,
                trials,
                n_override,
                out,
            } => (
                ExperimentConfig::HmsReduce(HmsReduceConfig {
                    q,
                    n,
                    r,
                    shifts: h_set,
                    trials,
                    seed,
                    sample_override: n_override,
                }),
                out,
            ),
            HmsTask::Fourier {
                q,
                n,
                r,
                h_set,
                k,
                trials,
                seed,
                out,
            } => (
                ExperimentConfig::HmsFourier(HmsFourierConfig {
                    q,
                    n,
                    r,
                    shifts: h_set,
                    k,
                    trials,
                    seed,
                }),
                out,
            ),
        },
        Command::Check {
            which,
            q_max,
            c_max,
            trials,
            mc_samples,
            configs,
            seed,
            out,
        } => (
            ExperimentConfig::Check(CheckRunConfig {
                selector: which,
                config: CheckConfig {
                    q_max,
                    c_max,
                    trials,
                    samples: mc_samples,
                    configs,
                    seed,
                },
            }),
            out,
        ),
    }
}

fn emit_report(report: &RunReport, out: Option<&std::path::Path>) -> std::io::Result<()> {
    let payload = serde_json::to_string_pretty(report).expect("report serializes");
    match out {
        Some(path) => std::fs::write(path, payload + "\n"),
        None => {
            println!("{}", payload);
            Ok(())
        }
    }
}
