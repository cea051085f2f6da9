//! Seeded, reproducible experiment runners and their structured reports.
//!
//! Every task takes a mandatory seed; per-trial generators are seeded with
//! `seed XOR trial-index`, trials run on a worker pool and are assembled by
//! index, so a report is a pure function of its configuration (minus the
//! wall-clock field).

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::checks::{run_checks, CheckConfig};
use crate::ff::{FieldElement, PrimeModulus};
use crate::hms::{fourier_solve, hms_reduce_solve, inner_mod, HmsInstance, ReduceParams};
use crate::lfs::{required_sample_count, scalar_equivalent, solve_lfs, SubsetDistribution};
use crate::poly::LinearFunction;
use crate::samples::read_samples_path;

#[derive(Debug)]
pub enum ExperimentError {
    InvalidConfig(String),
}

impl fmt::Display for ExperimentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExperimentError::InvalidConfig(msg) => write!(f, "invalid config: {}", msg),
        }
    }
}

impl std::error::Error for ExperimentError {}

#[derive(Debug, Clone, Serialize)]
pub struct LfsSolveConfig {
    pub samples_path: String,
    /// The value set `A`.
    pub values: Vec<u64>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LfsBenchConfig {
    pub q: u64,
    pub n: usize,
    pub d: usize,
    /// Explicit value set; drawn per trial when absent.
    pub values: Option<Vec<u64>>,
    /// Integer weights per value; uniform when absent.
    pub weights: Option<Vec<u64>>,
    pub trials: u64,
    pub seed: u64,
    pub sample_override: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HmsReduceConfig {
    pub q: u64,
    pub n: usize,
    pub r: usize,
    /// Explicit shift set; `{0, ..., r-1}` when absent.
    pub shifts: Option<Vec<u64>>,
    pub trials: u64,
    pub seed: u64,
    pub sample_override: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HmsFourierConfig {
    pub q: u64,
    pub n: usize,
    pub r: usize,
    pub shifts: Option<Vec<u64>>,
    /// Pairs measured per trial; `n + 4` when absent.
    pub k: Option<usize>,
    /// Fourier-sampling trials feeding the plurality vote.
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRunConfig {
    pub selector: String,
    #[serde(flatten)]
    pub config: CheckConfig,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum ExperimentConfig {
    LfsSolve(LfsSolveConfig),
    LfsBench(LfsBenchConfig),
    HmsReduce(HmsReduceConfig),
    HmsFourier(HmsFourierConfig),
    Check(CheckRunConfig),
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialOutcome {
    pub trial: u64,
    pub seed: u64,
    pub success: bool,
    pub detail: Value,
}

/// Self-describing run record. Re-running the same configuration reproduces
/// every field except `wall_clock_ms`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub version: String,
    pub task: String,
    pub config: Value,
    pub trials: u64,
    pub successes: u64,
    pub success: bool,
    pub outcomes: Vec<TrialOutcome>,
    pub result: Value,
    pub wall_clock_ms: u64,
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<RunReport, ExperimentError> {
    let start = Instant::now();
    let mut report = match config {
        ExperimentConfig::LfsSolve(c) => run_lfs_solve(c)?,
        ExperimentConfig::LfsBench(c) => run_lfs_bench(c)?,
        ExperimentConfig::HmsReduce(c) => run_hms_reduce(c)?,
        ExperimentConfig::HmsFourier(c) => run_hms_fourier(c)?,
        ExperimentConfig::Check(c) => run_check(c)?,
    };
    report.wall_clock_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn base_report(task: &str, config: Value) -> RunReport {
    RunReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        task: task.to_string(),
        config,
        trials: 0,
        successes: 0,
        success: false,
        outcomes: Vec::new(),
        result: Value::Null,
        wall_clock_ms: 0,
    }
}

fn prime_modulus(q: u64) -> Result<PrimeModulus, ExperimentError> {
    PrimeModulus::new(q).map_err(|_| ExperimentError::InvalidConfig("q must be prime".into()))
}

fn validate_values(
    modulus: PrimeModulus,
    values: &[u64],
    expected_len: Option<usize>,
) -> Result<Vec<FieldElement>, ExperimentError> {
    if values.is_empty() {
        return Err(ExperimentError::InvalidConfig("value set is empty".into()));
    }
    if let Some(d) = expected_len {
        if values.len() != d {
            return Err(ExperimentError::InvalidConfig(format!(
                "|A| = {} but d = {}",
                values.len(),
                d
            )));
        }
    }
    if values.len() as u64 > modulus.get() - 1 {
        return Err(ExperimentError::InvalidConfig("need |A| <= q - 1".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(ExperimentError::InvalidConfig(
            "duplicate value in A".into(),
        ));
    }
    if sorted.last().copied().unwrap_or(0) >= modulus.get() {
        return Err(ExperimentError::InvalidConfig("value >= q".into()));
    }
    Ok(values.iter().map(|&v| modulus.element(v)).collect())
}

fn random_nonzero_vector<R: Rng>(q: u64, n: usize, rng: &mut R) -> Vec<u64> {
    loop {
        let v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

fn random_nonzero_ell<R: Rng>(m: PrimeModulus, n: usize, rng: &mut R) -> LinearFunction {
    let coeffs = random_nonzero_vector(m.get(), n, rng);
    LinearFunction::new(coeffs.into_iter().map(|v| m.element(v)).collect())
        .expect("vector is nonzero")
}

fn run_lfs_solve(cfg: &LfsSolveConfig) -> Result<RunReport, ExperimentError> {
    let set = read_samples_path(&cfg.samples_path)
        .map_err(|e| ExperimentError::InvalidConfig(e.to_string()))?;
    let values = validate_values(set.modulus, &cfg.values, None)?;
    let samples = set.to_field_elements();
    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    let mut report = base_report(
        "lfs-solve",
        serde_json::to_value(cfg).expect("config serializes"),
    );
    report.trials = 1;
    match solve_lfs(&values, &samples, &mut rng) {
        Ok(ell) => {
            let coeffs: Vec<u64> = ell.coefficients().iter().map(|c| c.value()).collect();
            report.successes = 1;
            report.success = true;
            report.outcomes.push(TrialOutcome {
                trial: 0,
                seed: cfg.seed,
                success: true,
                detail: json!({ "recovered": coeffs }),
            });
            report.result = json!({
                "recovered": coeffs,
                "samples_read": set.samples.len(),
                "q": set.modulus.get(),
                "n": set.arity,
            });
        }
        Err(e) => {
            report.outcomes.push(TrialOutcome {
                trial: 0,
                seed: cfg.seed,
                success: false,
                detail: json!({ "error": e.to_string() }),
            });
            report.result = json!({
                "error": e.to_string(),
                "samples_read": set.samples.len(),
            });
        }
    }
    Ok(report)
}

fn run_lfs_bench(cfg: &LfsBenchConfig) -> Result<RunReport, ExperimentError> {
    let modulus = prime_modulus(cfg.q)?;
    if cfg.n == 0 {
        return Err(ExperimentError::InvalidConfig("n must be positive".into()));
    }
    if cfg.d == 0 || cfg.d as u64 > cfg.q - 1 {
        return Err(ExperimentError::InvalidConfig(
            "need 1 <= d <= q - 1".into(),
        ));
    }
    if cfg.trials == 0 {
        return Err(ExperimentError::InvalidConfig(
            "trials must be positive".into(),
        ));
    }
    if let Some(values) = &cfg.values {
        validate_values(modulus, values, Some(cfg.d))?;
    }
    if let Some(w) = &cfg.weights {
        if w.len() != cfg.d {
            return Err(ExperimentError::InvalidConfig(
                "weights length must equal d".into(),
            ));
        }
        if w.iter().all(|&x| x == 0) {
            return Err(ExperimentError::InvalidConfig(
                "at least one weight must be positive".into(),
            ));
        }
    }
    let budget = required_sample_count(cfg.n as u32, cfg.d as u32)
        .map_err(|e| ExperimentError::InvalidConfig(e.to_string()))?;
    let n_samples = cfg.sample_override.unwrap_or(budget.total);
    if n_samples == 0 {
        return Err(ExperimentError::InvalidConfig(
            "sample override must be positive".into(),
        ));
    }

    let outcomes: Vec<TrialOutcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = cfg.seed ^ trial;
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let ell = random_nonzero_ell(modulus, cfg.n, &mut rng);
            let values: Vec<FieldElement> = match &cfg.values {
                Some(vs) => vs.iter().map(|&v| modulus.element(v)).collect(),
                None => {
                    let mut drawn: Vec<FieldElement> = Vec::with_capacity(cfg.d);
                    while drawn.len() < cfg.d {
                        let v = modulus.element(rng.gen_range(0..cfg.q));
                        if !drawn.contains(&v) {
                            drawn.push(v);
                        }
                    }
                    drawn
                }
            };
            let weights = cfg.weights.clone().unwrap_or_else(|| vec![1; cfg.d]);
            let dist = SubsetDistribution::new(values.clone(), weights, ell.clone())
                .expect("validated configuration");
            let samples = dist.sample_many(n_samples as usize, &mut rng);
            let planted: Vec<u64> = ell
                .canonical()
                .coefficients()
                .iter()
                .map(|c| c.value())
                .collect();
            match solve_lfs(&values, &samples, &mut rng) {
                Ok(got) => {
                    let recovered: Vec<u64> =
                        got.coefficients().iter().map(|c| c.value()).collect();
                    let success = scalar_equivalent(&ell, &got).is_some();
                    TrialOutcome {
                        trial,
                        seed,
                        success,
                        detail: json!({ "planted": planted, "recovered": recovered }),
                    }
                }
                Err(e) => TrialOutcome {
                    trial,
                    seed,
                    success: false,
                    detail: json!({ "planted": planted, "error": e.to_string() }),
                },
            }
        })
        .collect();

    let successes = outcomes.iter().filter(|o| o.success).count() as u64;
    let mut report = base_report(
        "lfs-bench",
        serde_json::to_value(cfg).expect("config serializes"),
    );
    report.trials = cfg.trials;
    report.successes = successes;
    report.success = successes > 0;
    report.result = json!({
        "monomial_count": budget.monomial_count,
        "block_length": budget.block_length,
        "formula_samples": budget.total,
        "samples_used": n_samples,
        "success_rate": successes as f64 / cfg.trials as f64,
    });
    report.outcomes = outcomes;
    Ok(report)
}

fn resolve_shifts(
    q: u64,
    r: usize,
    shifts: &Option<Vec<u64>>,
) -> Result<Vec<u64>, ExperimentError> {
    if r < 2 || r as u64 > q {
        return Err(ExperimentError::InvalidConfig("need 2 <= r <= q".into()));
    }
    match shifts {
        None => Ok((0..r as u64).collect()),
        Some(h) => {
            if h.len() != r {
                return Err(ExperimentError::InvalidConfig(format!(
                    "|H| = {} but r = {}",
                    h.len(),
                    r
                )));
            }
            let mut sorted = h.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != r {
                return Err(ExperimentError::InvalidConfig("duplicate shift".into()));
            }
            if sorted.last().copied().unwrap_or(0) >= q {
                return Err(ExperimentError::InvalidConfig("shift >= q".into()));
            }
            Ok(sorted)
        }
    }
}

fn run_hms_reduce(cfg: &HmsReduceConfig) -> Result<RunReport, ExperimentError> {
    prime_modulus(cfg.q)?;
    if cfg.n == 0 {
        return Err(ExperimentError::InvalidConfig("n must be positive".into()));
    }
    if cfg.trials == 0 {
        return Err(ExperimentError::InvalidConfig(
            "trials must be positive".into(),
        ));
    }
    let shifts = resolve_shifts(cfg.q, cfg.r, &cfg.shifts)?;

    let outcomes: Vec<TrialOutcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = cfg.seed ^ trial;
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let planted = random_nonzero_vector(cfg.q, cfg.n, &mut rng);
            let inst = HmsInstance::new(cfg.q, cfg.n, shifts.clone(), planted.clone(), seed)
                .expect("validated configuration");
            let params = ReduceParams {
                sample_override: cfg.sample_override,
                ..ReduceParams::default()
            };
            match hms_reduce_solve(&inst, &params, &mut rng) {
                Ok(sol) => {
                    let success = sol.secret == planted;
                    let attempts = sol.transcript.attempts.len();
                    let draws: u64 = sol
                        .transcript
                        .attempts
                        .iter()
                        .map(|a| a.preprocess_draws)
                        .sum();
                    TrialOutcome {
                        trial,
                        seed,
                        success,
                        detail: json!({
                            "planted": planted,
                            "recovered": sol.secret,
                            "pipeline_attempts": attempts,
                            "preprocess_draws": draws,
                            "samples_used": sol.transcript.samples_used,
                        }),
                    }
                }
                Err(e) => TrialOutcome {
                    trial,
                    seed,
                    success: false,
                    detail: json!({ "planted": planted, "error": e.to_string() }),
                },
            }
        })
        .collect();

    let successes = outcomes.iter().filter(|o| o.success).count() as u64;
    let d = cfg.q - cfg.r as u64 + 1;
    let budget = required_sample_count(cfg.n as u32, d as u32)
        .map_err(|e| ExperimentError::InvalidConfig(e.to_string()))?;
    let mut report = base_report(
        "hms-reduce",
        serde_json::to_value(cfg).expect("config serializes"),
    );
    report.trials = cfg.trials;
    report.successes = successes;
    report.success = successes > 0;
    report.result = json!({
        "induced_d": d,
        "monomial_count": budget.monomial_count,
        "block_length": budget.block_length,
        "formula_samples": budget.total,
        "samples_used": cfg.sample_override.unwrap_or(budget.total),
        "success_rate": successes as f64 / cfg.trials as f64,
    });
    report.outcomes = outcomes;
    Ok(report)
}

fn run_hms_fourier(cfg: &HmsFourierConfig) -> Result<RunReport, ExperimentError> {
    prime_modulus(cfg.q)?;
    if cfg.n == 0 {
        return Err(ExperimentError::InvalidConfig("n must be positive".into()));
    }
    if cfg.trials == 0 {
        return Err(ExperimentError::InvalidConfig(
            "trials must be positive".into(),
        ));
    }
    let shifts = resolve_shifts(cfg.q, cfg.r, &cfg.shifts)?;
    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    let planted = random_nonzero_vector(cfg.q, cfg.n, &mut rng);
    let inst = HmsInstance::new(cfg.q, cfg.n, shifts, planted.clone(), cfg.seed)
        .expect("validated configuration");

    let mut report = base_report(
        "hms-fourier",
        serde_json::to_value(cfg).expect("config serializes"),
    );
    report.trials = 1;
    match fourier_solve(&inst, cfg.k, cfg.trials, &mut rng) {
        Ok(sol) => {
            let success = sol.secret == planted;
            let correct = sol
                .measurements
                .iter()
                .filter(|(u, b)| inner_mod(cfg.q, u, &planted) == *b)
                .count();
            report.successes = success as u64;
            report.success = success;
            report.outcomes.push(TrialOutcome {
                trial: 0,
                seed: cfg.seed,
                success,
                detail: json!({
                    "planted": planted,
                    "recovered": sol.secret,
                    "full_rank_trials": sol.full_rank_trials,
                }),
            });
            report.result = json!({
                "planted": planted,
                "recovered": sol.secret,
                "k": cfg.k.unwrap_or(cfg.n + 4),
                "fourier_trials": sol.trials,
                "full_rank_trials": sol.full_rank_trials,
                "measurements": sol.measurements.len(),
                "correct_measurement_rate":
                    correct as f64 / sol.measurements.len() as f64,
            });
        }
        Err(e) => {
            report.outcomes.push(TrialOutcome {
                trial: 0,
                seed: cfg.seed,
                success: false,
                detail: json!({ "planted": planted, "error": e.to_string() }),
            });
            report.result = json!({ "error": e.to_string() });
        }
    }
    Ok(report)
}

fn run_check(cfg: &CheckRunConfig) -> Result<RunReport, ExperimentError> {
    let reports = run_checks(&cfg.selector, &cfg.config).ok_or_else(|| {
        ExperimentError::InvalidConfig(format!(
            "unknown check selector `{}` (expected one of {:?} or `all`)",
            cfg.selector,
            crate::checks::check_names()
        ))
    })?;
    let mut report = base_report(
        "check",
        serde_json::to_value(cfg).expect("config serializes"),
    );
    report.trials = reports.len() as u64;
    report.successes = reports.iter().filter(|r| r.passed).count() as u64;
    report.success = reports.iter().all(|r| r.passed);
    for (idx, check) in reports.iter().enumerate() {
        report.outcomes.push(TrialOutcome {
            trial: idx as u64,
            seed: cfg.config.seed,
            success: check.passed,
            detail: serde_json::to_value(check).expect("check serializes"),
        });
    }
    report.result = json!({
        "checks_run": reports.len(),
        "checks_passed": report.successes,
    });
    Ok(report)
}
