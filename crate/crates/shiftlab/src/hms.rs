//! Hidden-multiple-shift instances and both solution pipelines.
//!
//! An instance fixes a prime `q`, a dimension `n`, a shift set `H` of size
//! `r` and a planted secret `s`. Preprocessing yields pairs `(u, mu_{(u,s)})`
//! with `u` uniform; [`fast_preprocess`] builds the post-Fourier state
//! analytically while [`full_preprocess`] simulates the oracle pipeline
//! literally on a `q^n * r` statevector, so the two can be compared.
//!
//! The reduction pipeline turns retained pairs into a learning-from-subset
//! instance with `A = {r-1, ..., q-1}` and recovers the secret up to a
//! scalar, which a rank-one trial-and-error test then pins down. The
//! Fourier-sampling baseline measures each pair directly and solves the
//! resulting (mostly correct) linear system, keeping the plurality candidate
//! across trials.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, RngCore};

use crate::ff::{FieldElement, PrimeModulus};
use crate::lfs::{required_sample_count, scalar_equivalent, solve_lfs, LfsError, SampleBudget};
use crate::linalg::MatrixGF;
use crate::poly::LinearFunction;
use crate::qsim::{
    born_sample, build_measurement_context, embed_in_group, measure_subspace, mu_state, qft_apply,
    qft_axes, Ket, MeasurementContext, QsimError, SubspaceTag, C64,
};

/// Statevector size bound for the literal oracle simulation.
pub const FULL_STATEVECTOR_CAP: u64 = 100_000;

#[derive(Debug)]
pub enum HmsError {
    InvalidInstance(String),
    /// `q^n * r` exceeds the statevector cap.
    TooLarge {
        dim: u64,
    },
    /// The retention budget was exhausted before enough samples were
    /// retained (for example a zero secret is never retained).
    NonRetainable {
        attempts: u64,
        retained: u64,
    },
    /// No informative pair (one with `(u, s0) != 0`) within budget.
    NoInformativePair,
    /// `q >= 3r/2` needs the slow wide-regime tests; enable explicitly.
    RegimeUnsupported {
        q: u64,
        r: usize,
    },
    /// More than one scalar candidate survived; increase the test count.
    Ambiguous {
        survivors: usize,
    },
    /// No scalar candidate survived; the input contract was violated.
    NoSurvivor,
    /// The assembled secret failed rank-one verification on fresh pairs.
    VerificationFailed,
    /// Every Fourier-sampling trial produced a rank-deficient system.
    NoFullRankTrial,
    /// Trials produced no consistent candidate at all.
    NoCandidate,
    Lfs(LfsError),
    Qsim(QsimError),
}

impl fmt::Display for HmsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HmsError::InvalidInstance(msg) => write!(f, "invalid instance: {}", msg),
            HmsError::TooLarge { dim } => write!(
                f,
                "statevector of dimension {} exceeds cap {}",
                dim, FULL_STATEVECTOR_CAP
            ),
            HmsError::NonRetainable { attempts, retained } => write!(
                f,
                "retention budget exhausted after {} draws ({} retained)",
                attempts, retained
            ),
            HmsError::NoInformativePair => {
                write!(
                    f,
                    "no pair with nonzero candidate inner product within budget"
                )
            }
            HmsError::RegimeUnsupported { q, r } => write!(
                f,
                "scalar recovery requires q < 3r/2 (q = {}, r = {}); pass allow_outside_regime",
                q, r
            ),
            HmsError::Ambiguous { survivors } => {
                write!(
                    f,
                    "{} scalar candidates survived; increase tests per candidate",
                    survivors
                )
            }
            HmsError::NoSurvivor => write!(f, "no scalar candidate survived"),
            HmsError::VerificationFailed => write!(f, "recovered secret failed verification"),
            HmsError::NoFullRankTrial => write!(f, "every trial was rank-deficient"),
            HmsError::NoCandidate => write!(f, "no trial produced a consistent candidate"),
            HmsError::Lfs(e) => write!(f, "lfs: {}", e),
            HmsError::Qsim(e) => write!(f, "qsim: {}", e),
        }
    }
}

impl std::error::Error for HmsError {}

impl From<LfsError> for HmsError {
    fn from(e: LfsError) -> Self {
        HmsError::Lfs(e)
    }
}

impl From<QsimError> for HmsError {
    fn from(e: QsimError) -> Self {
        HmsError::Qsim(e)
    }
}

/// A planted HMS instance. For prime `q` the shift-set divisor degeneracy is
/// trivial, so the secret is fully determined.
#[derive(Debug, Clone)]
pub struct HmsInstance {
    modulus: PrimeModulus,
    arity: usize,
    shifts: Vec<u64>,
    secret: Vec<u64>,
    seed: u64,
}

impl HmsInstance {
    pub fn new(
        q: u64,
        arity: usize,
        mut shifts: Vec<u64>,
        secret: Vec<u64>,
        seed: u64,
    ) -> Result<Self, HmsError> {
        let modulus = PrimeModulus::new(q)
            .map_err(|_| HmsError::InvalidInstance("q must be prime".into()))?;
        shifts.sort_unstable();
        shifts.dedup();
        if shifts.len() < 2 {
            return Err(HmsError::InvalidInstance(
                "shift set needs at least two elements".into(),
            ));
        }
        if shifts.iter().any(|&h| h >= q) {
            return Err(HmsError::InvalidInstance("shift outside [0, q)".into()));
        }
        if arity == 0 {
            return Err(HmsError::InvalidInstance("n must be positive".into()));
        }
        if secret.len() != arity {
            return Err(HmsError::InvalidInstance(format!(
                "secret has {} coordinates, expected {}",
                secret.len(),
                arity
            )));
        }
        let secret = secret.into_iter().map(|v| v % q).collect();
        Ok(HmsInstance {
            modulus,
            arity,
            shifts,
            secret,
            seed,
        })
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.modulus.get()
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn shifts(&self) -> &[u64] {
        &self.shifts
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.shifts.len()
    }

    /// The deficiency `c = q - r`.
    #[inline]
    pub fn deficiency(&self) -> u64 {
        self.q() - self.r() as u64
    }

    #[inline]
    pub fn secret(&self) -> &[u64] {
        &self.secret
    }

    #[inline]
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `(u, s) mod q`; this is the oracle side of the simulation.
    fn secret_phase(&self, u: &[u64]) -> u64 {
        inner_mod(self.q(), u, &self.secret)
    }

    /// The analytic post-Fourier state for a given `u`.
    pub fn oracle_state(&self, u: &[u64]) -> Ket {
        mu_state(self.q(), &self.shifts, self.secret_phase(u)).expect("validated shift set")
    }

    fn random_point<R: Rng>(&self, rng: &mut R) -> Vec<u64> {
        let q = self.q();
        (0..self.arity).map(|_| rng.gen_range(0..q)).collect()
    }
}

pub fn inner_mod(q: u64, a: &[u64], b: &[u64]) -> u64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc: u64 = 0;
    for (&x, &y) in a.iter().zip(b) {
        let prod = ((x as u128 * y as u128) % q as u128) as u64;
        acc = (acc + prod) % q;
    }
    acc
}

/// One preprocessed sample: a uniform `u` and the `r`-dimensional state
/// `mu_{(u,s)}`.
#[derive(Debug, Clone)]
pub struct PreprocessedPair {
    pub u: Vec<u64>,
    pub state: Ket,
}

/// Draws `u` uniformly and builds the post-Fourier state analytically.
pub fn fast_preprocess<R: Rng>(inst: &HmsInstance, rng: &mut R) -> PreprocessedPair {
    let u = inst.random_point(rng);
    let state = inst.oracle_state(&u);
    PreprocessedPair { u, state }
}

/// Simulates the oracle pipeline literally: sample the collapsed `w`, build
/// `psi_s^w` on the full `q^n * r` register, Fourier the `Z_q^n` register,
/// Born-measure it to obtain `u`, and return the residual `r`-dimensional
/// state with the unobservable global phase `omega^{(u,w)}` divided out.
pub fn full_preprocess<R: Rng>(
    inst: &HmsInstance,
    rng: &mut R,
) -> Result<PreprocessedPair, HmsError> {
    let q = inst.q();
    let n = inst.arity();
    let r = inst.r();
    let group_size = (q as u128).pow(n as u32);
    let dim = group_size * r as u128;
    if dim > FULL_STATEVECTOR_CAP as u128 {
        return Err(HmsError::TooLarge { dim: dim as u64 });
    }
    let group_size = group_size as usize;
    let w = inst.random_point(rng);

    // psi_s^w = (1/sqrt r) sum_h |w + h s> |h>
    let mut data = vec![C64::new(0.0, 0.0); group_size * r];
    let amp = C64::new(1.0 / (r as f64).sqrt(), 0.0);
    for (h_pos, &h) in inst.shifts().iter().enumerate() {
        let v: Vec<u64> = w
            .iter()
            .zip(inst.secret())
            .map(|(&wi, &si)| (wi + ((h as u128 * si as u128) % q as u128) as u64) % q)
            .collect();
        data[encode_point(q, &v) * r + h_pos] = amp;
    }

    // Fourier transform on the Z_q^n register.
    qft_axes(q, n, r, &mut data, false);

    // Born measurement of the u register.
    let mut pick = rng.gen::<f64>();
    let mut u_index = group_size - 1;
    for idx in 0..group_size {
        let p: f64 = data[idx * r..(idx + 1) * r]
            .iter()
            .map(|a| a.norm_sqr())
            .sum();
        if pick < p {
            u_index = idx;
            break;
        }
        pick -= p;
    }
    let u = decode_point(q, n, u_index);

    // Collapse and strip the global phase omega^{(u,w)}.
    let phase = {
        let t = inner_mod(q, &u, &w);
        let angle = std::f64::consts::TAU * t as f64 / q as f64;
        C64::new(angle.cos(), angle.sin())
    };
    let residual: Vec<C64> = data[u_index * r..(u_index + 1) * r]
        .iter()
        .map(|&a| a * phase.conj())
        .collect();
    let state = Ket::new(residual).expect("measured branch has positive probability");
    Ok(PreprocessedPair { u, state })
}

fn encode_point(q: u64, v: &[u64]) -> usize {
    let mut idx = 0usize;
    for &x in v {
        idx = idx * q as usize + x as usize;
    }
    idx
}

fn decode_point(q: u64, n: usize, mut idx: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    for slot in v.iter_mut().rev() {
        *slot = (idx % q as usize) as u64;
        idx /= q as usize;
    }
    v
}

/// Builds the `(V, V_perp)` context for an instance's shift set.
pub fn measurement_context(inst: &HmsInstance) -> Result<MeasurementContext, HmsError> {
    Ok(build_measurement_context(inst.q(), inst.shifts())?)
}

/// One reduction step: preprocess a pair, measure against the hyperplane,
/// and keep `u` only on the `in V_perp` outcome. Retained vectors follow an
/// `(A, ell)`-distribution with `A = {r-1, ..., q-1}` and `ell = (s, .)`.
pub fn reduction_sample<R: Rng>(
    inst: &HmsInstance,
    ctx: &MeasurementContext,
    rng: &mut R,
) -> Option<Vec<u64>> {
    let pair = fast_preprocess(inst, rng);
    let outcome = measure_subspace(ctx, &pair.state, rng);
    match outcome.tag {
        SubspaceTag::InVPerp => Some(pair.u),
        SubspaceTag::InV => None,
    }
}

/// Collects retained vectors into the shared sample-set format, so a
/// reduction's output can be written to disk and fed back through the
/// subset-learning interface. The induced value set is `{r-1, ..., q-1}`.
pub fn retained_sample_set<R: Rng>(
    inst: &HmsInstance,
    ctx: &MeasurementContext,
    count: usize,
    draw_budget: u64,
    rng: &mut R,
) -> Result<crate::samples::SampleSet, HmsError> {
    let mut samples = Vec::with_capacity(count);
    let mut draws = 0u64;
    while samples.len() < count {
        if draws >= draw_budget {
            return Err(HmsError::NonRetainable {
                attempts: draws,
                retained: samples.len() as u64,
            });
        }
        draws += 1;
        if let Some(u) = reduction_sample(inst, ctx, rng) {
            samples.push(u);
        }
    }
    Ok(crate::samples::SampleSet {
        modulus: inst.modulus(),
        arity: inst.arity(),
        samples,
    })
}

/// Options for the scalar trial-and-error step.
#[derive(Debug, Clone, Default)]
pub struct ScalarRecovery {
    /// Tests per candidate; `None` uses `ceil(log_4(10 q))`.
    pub tests_per_candidate: Option<usize>,
    /// Permit `q >= 3r/2`, where a single wrong-candidate test passes with
    /// probability `1 - O(1/q)` and many more tests are needed.
    pub allow_outside_regime: bool,
}

pub fn default_tests_per_candidate(q: u64) -> usize {
    ((10.0 * q as f64).ln() / 4.0f64.ln()).ceil() as usize
}

/// Finds the scalar `lambda` with `s = lambda * s0`, assuming `s0` spans the
/// secret's line. Candidates are eliminated by rank-one measurements
/// against `mu_{lambda (u, s0)}` on fresh pairs with `(u, s0) != 0`: the
/// true candidate always passes, a wrong one passes a single test with
/// probability at most `c^2 / (q - c)^2 <= 1/4` when `q < 3r/2`.
pub fn recover_scalar<R: Rng>(
    inst: &HmsInstance,
    s0: &[u64],
    rng: &mut R,
    options: &ScalarRecovery,
) -> Result<u64, HmsError> {
    let q = inst.q();
    let r = inst.r();
    if s0.len() != inst.arity() || s0.iter().all(|&x| x % q == 0) {
        return Err(HmsError::InvalidInstance(
            "scalar recovery needs a nonzero candidate direction".into(),
        ));
    }
    if 2 * q >= 3 * r as u64 && !options.allow_outside_regime {
        return Err(HmsError::RegimeUnsupported { q, r });
    }
    let tests = options
        .tests_per_candidate
        .unwrap_or_else(|| default_tests_per_candidate(q));
    let pair_budget = 64 * q;

    let mut survivors = Vec::new();
    for lambda in 1..q {
        let mut alive = true;
        for _ in 0..tests {
            let (_, state, s0_phase) = informative_pair(inst, s0, pair_budget, rng)?;
            let t = ((lambda as u128 * s0_phase as u128) % q as u128) as u64;
            let target = mu_state(q, inst.shifts(), t).expect("validated shift set");
            let p_yes = target.inner(&state).norm_sqr().clamp(0.0, 1.0);
            if rng.gen::<f64>() >= p_yes {
                alive = false;
                break;
            }
        }
        if alive {
            survivors.push(lambda);
        }
    }
    match survivors.len() {
        1 => Ok(survivors[0]),
        0 => Err(HmsError::NoSurvivor),
        n => Err(HmsError::Ambiguous { survivors: n }),
    }
}

/// Fresh pair with `(u, s0) != 0`; pairs on the `s0`-kernel fiber are
/// uninformative because every candidate hypothesizes `t = 0` there.
fn informative_pair<R: Rng>(
    inst: &HmsInstance,
    s0: &[u64],
    budget: u64,
    rng: &mut R,
) -> Result<(Vec<u64>, Ket, u64), HmsError> {
    for _ in 0..budget {
        let pair = fast_preprocess(inst, rng);
        let phase = inner_mod(inst.q(), &pair.u, s0);
        if phase != 0 {
            return Ok((pair.u, pair.state, phase));
        }
    }
    Err(HmsError::NoInformativePair)
}

/// Rank-one verification of a fully assembled secret on fresh pairs.
pub fn verify_secret<R: Rng>(
    inst: &HmsInstance,
    candidate: &[u64],
    pairs: usize,
    rng: &mut R,
) -> bool {
    for _ in 0..pairs {
        let pair = fast_preprocess(inst, rng);
        let t = inner_mod(inst.q(), &pair.u, candidate);
        let target = mu_state(inst.q(), inst.shifts(), t).expect("validated shift set");
        let p_yes = target.inner(&pair.state).norm_sqr().clamp(0.0, 1.0);
        if rng.gen::<f64>() >= p_yes {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct ReduceParams {
    /// Overrides the formula-driven retained-sample count.
    pub sample_override: Option<u64>,
    /// Hard preprocessing budget is `factor * q * N` draws per attempt.
    pub attempt_budget_factor: u64,
    /// Additional full-pipeline retries after a detected failure.
    pub pipeline_retries: usize,
    /// Fresh pairs spent on final verification.
    pub verify_pairs: usize,
    pub scalar: ScalarRecovery,
}

impl Default for ReduceParams {
    fn default() -> Self {
        ReduceParams {
            sample_override: None,
            attempt_budget_factor: 200,
            pipeline_retries: 2,
            verify_pairs: 16,
            scalar: ScalarRecovery::default(),
        }
    }
}

/// Per-attempt transcript record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttemptRecord {
    pub preprocess_draws: u64,
    pub retained: u64,
    pub lfs_class: Option<Vec<u64>>,
    pub lambda: Option<u64>,
    pub verified: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReduceTranscript {
    pub seed: u64,
    pub sample_budget: SampleBudget,
    pub samples_used: u64,
    pub attempts: Vec<AttemptRecord>,
}

#[derive(Debug, Clone)]
pub struct ReduceSolution {
    pub secret: Vec<u64>,
    pub transcript: ReduceTranscript,
}

/// The full reduction pipeline: retain `N` samples through the `(V, V_perp)`
/// measurement, solve the induced learning-from-subset instance with
/// `A = {r-1, ..., q-1}`, recover the scalar, and verify on fresh pairs.
pub fn hms_reduce_solve<R: Rng>(
    inst: &HmsInstance,
    params: &ReduceParams,
    rng: &mut R,
) -> Result<ReduceSolution, HmsError> {
    let q = inst.q();
    let modulus = inst.modulus();
    let d = inst.deficiency() as u32 + 1;
    let values: Vec<FieldElement> = (inst.r() as u64 - 1..q)
        .map(|v| modulus.element(v))
        .collect();
    debug_assert_eq!(values.len() as u32, d);
    let sample_budget = required_sample_count(inst.arity() as u32, d)?;
    let samples_used = params.sample_override.unwrap_or(sample_budget.total);
    let ctx = measurement_context(inst)?;
    let draw_budget = params
        .attempt_budget_factor
        .saturating_mul(q)
        .saturating_mul(samples_used);

    let mut transcript = ReduceTranscript {
        seed: inst.seed(),
        sample_budget,
        samples_used,
        attempts: Vec::new(),
    };
    let mut last_error = HmsError::VerificationFailed;
    for _ in 0..=params.pipeline_retries {
        let mut record = AttemptRecord {
            preprocess_draws: 0,
            retained: 0,
            lfs_class: None,
            lambda: None,
            verified: false,
            error: None,
        };
        // Retention loop.
        let mut retained: Vec<Vec<FieldElement>> = Vec::with_capacity(samples_used as usize);
        while (retained.len() as u64) < samples_used {
            if record.preprocess_draws >= draw_budget {
                record.error = Some("retention budget exhausted".into());
                let err = HmsError::NonRetainable {
                    attempts: record.preprocess_draws,
                    retained: retained.len() as u64,
                };
                transcript.attempts.push(record);
                return Err(err);
            }
            record.preprocess_draws += 1;
            if let Some(u) = reduction_sample(inst, &ctx, rng) {
                retained.push(u.iter().map(|&x| modulus.element(x)).collect());
            }
        }
        record.retained = retained.len() as u64;

        match solve_lfs(&values, &retained, rng) {
            Err(e) => {
                record.error = Some(e.to_string());
                last_error = e.into();
                transcript.attempts.push(record);
                continue;
            }
            Ok(ell) => {
                let s0: Vec<u64> = ell.coefficients().iter().map(|c| c.value()).collect();
                record.lfs_class = Some(s0.clone());
                match recover_scalar(inst, &s0, rng, &params.scalar) {
                    Err(e) => {
                        record.error = Some(e.to_string());
                        last_error = e;
                        transcript.attempts.push(record);
                        continue;
                    }
                    Ok(lambda) => {
                        record.lambda = Some(lambda);
                        let secret: Vec<u64> = s0
                            .iter()
                            .map(|&x| ((lambda as u128 * x as u128) % q as u128) as u64)
                            .collect();
                        if verify_secret(inst, &secret, params.verify_pairs, rng) {
                            record.verified = true;
                            transcript.attempts.push(record);
                            return Ok(ReduceSolution { secret, transcript });
                        }
                        record.error = Some("verification failed".into());
                        last_error = HmsError::VerificationFailed;
                        transcript.attempts.push(record);
                    }
                }
            }
        }
    }
    Err(last_error)
}

#[derive(Debug, Clone)]
pub struct FourierSolution {
    pub secret: Vec<u64>,
    pub trials: usize,
    pub full_rank_trials: usize,
    /// Candidate tally keyed by the secret vector.
    pub tally: BTreeMap<Vec<u64>, u64>,
    /// Every `(u, measured inner product)` pair, in draw order.
    pub measurements: Vec<(Vec<u64>, u64)>,
}

/// Fourier-sampling baseline: per trial, measure `k` pairs through the
/// inverse transform over `Z_q` and solve the resulting linear system when
/// the `u`-matrix has full rank; the plurality candidate across trials wins.
/// Each individual measurement returns the true inner product with
/// probability `r/q`.
pub fn fourier_solve<R: Rng>(
    inst: &HmsInstance,
    k: Option<usize>,
    trials: usize,
    rng: &mut R,
) -> Result<FourierSolution, HmsError> {
    assert!(trials >= 1, "need at least one trial");
    let q = inst.q();
    let modulus = inst.modulus();
    let n = inst.arity();
    let k = k.unwrap_or(n + 4);
    let mut tally: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    let mut measurements = Vec::with_capacity(trials * k);
    let mut full_rank_trials = 0usize;
    for _ in 0..trials {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(k);
        let mut rhs: Vec<FieldElement> = Vec::with_capacity(k);
        for _ in 0..k {
            let pair = fast_preprocess(inst, rng);
            let embedded =
                embed_in_group(q, inst.shifts(), &pair.state).expect("state dims match H");
            let transformed = qft_apply(q, &embedded, true).expect("dimension q");
            let outcome = born_sample(&transformed, rng) as u64;
            measurements.push((pair.u.clone(), outcome));
            rows.push(pair.u);
            rhs.push(modulus.element(outcome));
        }
        let matrix = MatrixGF::from_rows(modulus, &rows);
        if matrix.rank() < n {
            continue;
        }
        full_rank_trials += 1;
        if let Ok(Some(solution)) = matrix.solve_system(&rhs) {
            let key: Vec<u64> = solution.iter().map(|x| x.value()).collect();
            *tally.entry(key).or_insert(0) += 1;
        }
    }
    if full_rank_trials == 0 {
        return Err(HmsError::NoFullRankTrial);
    }
    let secret = tally
        .iter()
        .max_by_key(|(key, &count)| (count, std::cmp::Reverse((*key).clone())))
        .map(|(key, _)| key.clone())
        .ok_or(HmsError::NoCandidate)?;
    Ok(FourierSolution {
        secret,
        trials,
        full_rank_trials,
        tally,
        measurements,
    })
}

/// A named, runtime-selectable HMS solution strategy.
pub trait HmsStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn solve(&self, inst: &HmsInstance, rng: &mut dyn RngCore) -> Result<Vec<u64>, HmsError>;
}

/// The reduction pipeline as a strategy.
#[derive(Debug, Clone, Default)]
pub struct ReduceStrategy {
    pub params: ReduceParams,
}

impl HmsStrategy for ReduceStrategy {
    fn name(&self) -> &'static str {
        "reduce"
    }

    fn solve(&self, inst: &HmsInstance, mut rng: &mut dyn RngCore) -> Result<Vec<u64>, HmsError> {
        hms_reduce_solve(inst, &self.params, &mut rng).map(|sol| sol.secret)
    }
}

/// The Fourier-sampling baseline as a strategy.
#[derive(Debug, Clone)]
pub struct FourierStrategy {
    pub k: Option<usize>,
    pub trials: usize,
}

impl Default for FourierStrategy {
    fn default() -> Self {
        FourierStrategy {
            k: None,
            trials: 200,
        }
    }
}

impl HmsStrategy for FourierStrategy {
    fn name(&self) -> &'static str {
        "fourier"
    }

    fn solve(&self, inst: &HmsInstance, mut rng: &mut dyn RngCore) -> Result<Vec<u64>, HmsError> {
        fourier_solve(inst, self.k, self.trials, &mut rng).map(|sol| sol.secret)
    }
}

/// All registered strategies.
pub fn strategies() -> Vec<Box<dyn HmsStrategy>> {
    vec![
        Box::new(ReduceStrategy::default()),
        Box::new(FourierStrategy::default()),
    ]
}

pub fn strategy_by_name(name: &str) -> Option<Box<dyn HmsStrategy>> {
    strategies().into_iter().find(|s| s.name() == name)
}

/// Check that a recovered coefficient vector spans the same line as the
/// planted secret (used by benches and tests).
pub fn same_secret_line(q: u64, a: &[u64], b: &[u64]) -> bool {
    let modulus = match PrimeModulus::new(q) {
        Ok(m) => m,
        Err(_) => return false,
    };
    let to_lf = |v: &[u64]| {
        LinearFunction::new(v.iter().map(|&x| modulus.element(x)).collect::<Vec<_>>()).ok()
    };
    match (to_lf(a), to_lf(b)) {
        (Some(la), Some(lb)) => scalar_equivalent(&la, &lb).is_some(),
        _ => false,
    }
}
