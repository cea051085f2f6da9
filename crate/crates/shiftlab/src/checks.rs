//! Numerical verification suites for the bounds the solvers rely on.
//!
//! Each suite is a named check behind the [`LemmaCheck`] trait, registered
//! in [`registry`] and selectable at runtime (`check <name>` in the CLI,
//! `all` to run everything). A check reports one row per measured case:
//! a label, the measured value, the bound it must respect, and pass/fail.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::ff::{check_prime, FieldElement, PrimeModulus};
use crate::lfs::{build_vanishing_space, required_sample_count, LfsInstance, SubsetDistribution};
use crate::poly::{AffineLinear, LinearFunction, MultiPoly};
use crate::qsim::{
    build_measurement_context, embed_in_group, gram_matrix, mu_state, overlap_kappa, qft_apply,
    vandermonde_gram, ComplexMatrix, Ket,
};

/// Sweep bounds and Monte-Carlo sizes; defaults match the verification
/// targets used throughout the test suite.
#[derive(Debug, Clone, Serialize)]
pub struct CheckConfig {
    /// Largest prime included in determinant/measurement sweeps.
    pub q_max: u64,
    /// Largest shift-set deficiency `c = q - r` in those sweeps.
    pub c_max: u64,
    /// Seeded trials for the vanishing-space statistics.
    pub trials: usize,
    /// Monte-Carlo samples per vanishing-rate configuration.
    pub samples: usize,
    /// Number of random `(g, ell, alpha)` configurations.
    pub configs: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            q_max: 31,
            c_max: 3,
            trials: 50,
            samples: 100_000,
            configs: 10,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Comparison {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckCase {
    pub label: String,
    pub measured: f64,
    pub comparison: Comparison,
    pub bound: f64,
    pub pass: bool,
}

impl CheckCase {
    fn upper(label: String, measured: f64, bound: f64) -> Self {
        CheckCase {
            label,
            measured,
            comparison: Comparison::AtMost,
            bound,
            pass: measured <= bound,
        }
    }

    fn lower(label: String, measured: f64, bound: f64) -> Self {
        CheckCase {
            label,
            measured,
            comparison: Comparison::AtLeast,
            bound,
            pass: measured >= bound,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: Vec<CheckCase>,
    pub passed: bool,
}

impl CheckReport {
    fn new(name: &str, cases: Vec<CheckCase>) -> Self {
        let passed = cases.iter().all(|c| c.pass);
        CheckReport {
            name: name.to_string(),
            cases,
            passed,
        }
    }
}

/// A named verification suite.
pub trait LemmaCheck: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, cfg: &CheckConfig) -> CheckReport;
}

/// All registered checks, in reporting order.
pub fn registry() -> Vec<Box<dyn LemmaCheck>> {
    vec![
        Box::new(PolyShrinkCheck),
        Box::new(SchwartzZippelCheck),
        Box::new(VandermondeCheck),
        Box::new(MeasureBoundCheck),
        Box::new(MuOverlapCheck),
        Box::new(HadamardCheck),
    ]
}

pub fn check_names() -> Vec<&'static str> {
    registry().iter().map(|c| c.name()).collect()
}

/// Runs the selected check, or all of them for `"all"`. `None` means the
/// selector is unknown.
pub fn run_checks(selector: &str, cfg: &CheckConfig) -> Option<Vec<CheckReport>> {
    if selector == "all" {
        return Some(registry().iter().map(|c| c.run(cfg)).collect());
    }
    registry()
        .into_iter()
        .find(|c| c.name() == selector)
        .map(|c| vec![c.run(cfg)])
}

fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&n| check_prime(n)).collect()
}

/// Enumerates all subsets of `Z_q` of size `q - c` (as sorted shift sets).
fn subsets_of_deficiency(q: u64, c: u64) -> Vec<Vec<u64>> {
    let r = (q - c) as usize;
    let mut out = Vec::new();
    let mut current: Vec<u64> = (0..r as u64).collect();
    if r == 0 {
        return out;
    }
    loop {
        out.push(current.clone());
        // Next combination in lexicographic order.
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < q - (r - i) as u64 {
                current[i] += 1;
                for j in i + 1..r {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn random_nonzero_ell<R: Rng>(m: PrimeModulus, n: usize, rng: &mut R) -> LinearFunction {
    loop {
        let coeffs: Vec<FieldElement> = (0..n)
            .map(|_| m.element(rng.gen_range(0..m.get())))
            .collect();
        if let Ok(l) = LinearFunction::new(coeffs) {
            return l;
        }
    }
}

fn random_poly<R: Rng>(m: PrimeModulus, n: usize, d: u32, rng: &mut R) -> MultiPoly {
    loop {
        let monomials = crate::lfs::monomials_up_to_degree(n, d);
        let terms: Vec<(Vec<u32>, FieldElement)> = monomials
            .into_iter()
            .map(|e| (e, m.element(rng.gen_range(0..m.get()))))
            .collect();
        let g = MultiPoly::from_terms(n, m, terms);
        if !g.is_zero() {
            return g;
        }
    }
}

/// Vanishing-space collapse statistics: with the formula-driven sample
/// count, the fraction of seeded trials in which every kernel basis
/// polynomial is divisible by `ell - alpha_p` must reach 1/2.
struct PolyShrinkCheck;

impl LemmaCheck for PolyShrinkCheck {
    fn name(&self) -> &'static str {
        "poly-shrink"
    }

    fn run(&self, cfg: &CheckConfig) -> CheckReport {
        let q = 101u64;
        let n = 3usize;
        let d = 3u32;
        let modulus = PrimeModulus::new(q).unwrap();
        let budget = required_sample_count(n as u32, d).unwrap();
        let mut hits = 0usize;
        for trial in 0..cfg.trials {
            let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed ^ trial as u64);
            let ell = random_nonzero_ell(modulus, n, &mut rng);
            let mut values = Vec::new();
            while values.len() < d as usize {
                let v = modulus.element(rng.gen_range(0..q));
                if !values.contains(&v) {
                    values.push(v);
                }
            }
            let dist = SubsetDistribution::uniform(values.clone(), ell.clone()).unwrap();
            let samples = dist.sample_many(budget.total as usize, &mut rng);
            let instance = LfsInstance::new(values, samples).unwrap();
            let space = build_vanishing_space(&instance, d);
            if space.dimension() == 0 {
                continue;
            }
            let divisor = AffineLinear::new(ell.coefficients().to_vec(), -dist.alpha_p());
            let all_divisible = space.basis().iter().all(|g| {
                let (_, rem) = g.divide_by_affine(&divisor).unwrap();
                rem.is_zero()
            });
            if all_divisible {
                hits += 1;
            }
        }
        let fraction = hits as f64 / cfg.trials as f64;
        let case = CheckCase::lower(
            format!(
                "divisibility fraction over {} trials (q={}, n={}, d={}, N={})",
                cfg.trials, q, n, d, budget.total
            ),
            fraction,
            0.5,
        );
        CheckReport::new(self.name(), vec![case])
    }
}

/// Empirical vanishing rates: uniform points for the plain bound `d/q`,
/// fiber-conditioned points for the variant where `g` is not divisible by
/// `ell - alpha`. Both must stay within `d/q + 3 sigma + 1e-3`.
struct SchwartzZippelCheck;

impl LemmaCheck for SchwartzZippelCheck {
    fn name(&self) -> &'static str {
        "schwartz-zippel"
    }

    fn run(&self, cfg: &CheckConfig) -> CheckReport {
        let q = 101u64;
        let n = 3usize;
        let d = 3u32;
        let modulus = PrimeModulus::new(q).unwrap();
        let rate_bound = {
            let p = d as f64 / q as f64;
            p + 3.0 * (p / cfg.samples as f64).sqrt() + 1e-3
        };
        let mut cases = Vec::new();
        for config_idx in 0..cfg.configs {
            let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed ^ (0x5a00 + config_idx as u64));
            // Uniform-point variant.
            let g = random_poly(modulus, n, d, &mut rng);
            let mut zeros = 0usize;
            for _ in 0..cfg.samples {
                let point: Vec<FieldElement> = (0..n)
                    .map(|_| modulus.element(rng.gen_range(0..q)))
                    .collect();
                if g.evaluate(&point).unwrap().is_zero() {
                    zeros += 1;
                }
            }
            cases.push(CheckCase::upper(
                format!("uniform vanishing rate, config {}", config_idx),
                zeros as f64 / cfg.samples as f64,
                rate_bound,
            ));

            // Fiber-conditioned variant: g must not be divisible by
            // ell - alpha.
            let ell = random_nonzero_ell(modulus, n, &mut rng);
            let alpha = modulus.element(rng.gen_range(0..q));
            let divisor = AffineLinear::new(ell.coefficients().to_vec(), -alpha);
            let g = loop {
                let g = random_poly(modulus, n, d, &mut rng);
                let (_, rem) = g.divide_by_affine(&divisor).unwrap();
                if !rem.is_zero() {
                    break g;
                }
            };
            let fiber = SubsetDistribution::uniform(vec![alpha], ell.clone()).unwrap();
            let mut zeros = 0usize;
            for _ in 0..cfg.samples {
                let point = fiber.sample(&mut rng);
                if g.evaluate(&point).unwrap().is_zero() {
                    zeros += 1;
                }
            }
            cases.push(CheckCase::upper(
                format!("fiber vanishing rate, config {}", config_idx),
                zeros as f64 / cfg.samples as f64,
                rate_bound,
            ));
        }
        CheckReport::new(self.name(), cases)
    }
}

/// Natural log of `r^{-r} q^{r-c} prod_{j in Hbar} prod_{i != j} |w^i - w^j|`.
fn gram_identity_log(q: u64, shifts: &[u64]) -> f64 {
    let r = shifts.len() as f64;
    let c = q as usize - shifts.len();
    let complement: Vec<u64> = (0..q).filter(|h| !shifts.contains(h)).collect();
    debug_assert_eq!(complement.len(), c);
    let mut acc = -r * r.ln() + (r - c as f64) * (q as f64).ln();
    for &j in &complement {
        for &i in &complement {
            if i == j {
                continue;
            }
            let angle_i = std::f64::consts::TAU * i as f64 / q as f64;
            let angle_j = std::f64::consts::TAU * j as f64 / q as f64;
            let diff = num_complex::Complex64::new(
                angle_i.cos() - angle_j.cos(),
                angle_i.sin() - angle_j.sin(),
            );
            acc += diff.norm().ln();
        }
    }
    acc
}

/// Natural log of the closed-form lower bound
/// `(q/r)^r q^{-c} |1 - e^{2 pi i / q}|^{c(c-1)}`.
fn gram_lower_bound_log(q: u64, r: usize, c: u64) -> f64 {
    let angle = std::f64::consts::TAU / q as f64;
    let gap = num_complex::Complex64::new(angle.cos() - 1.0, angle.sin()).norm();
    r as f64 * ((q as f64).ln() - (r as f64).ln()) - (c as f64) * (q as f64).ln()
        + (c * (c.saturating_sub(1))) as f64 * gap.ln()
}

/// Exact determinant chain for the scaled Vandermonde Gram: the pivoted-LU
/// value must match the product identity to 1e-8 in the log domain and stay
/// above the closed-form lower bound.
struct VandermondeCheck;

impl LemmaCheck for VandermondeCheck {
    fn name(&self) -> &'static str {
        "vandermonde"
    }

    fn run(&self, cfg: &CheckConfig) -> CheckReport {
        let mut cases = Vec::new();
        for q in primes_up_to(cfg.q_max) {
            for c in 0..=cfg.c_max.min(q - 1) {
                let mut max_identity_err = 0.0f64;
                let mut min_lower_margin = f64::INFINITY;
                for shifts in subsets_of_deficiency(q, c) {
                    let (_, logdet) = vandermonde_gram(q, &shifts).unwrap();
                    let identity = gram_identity_log(q, &shifts);
                    max_identity_err = max_identity_err.max((logdet - identity).abs());
                    let lower = gram_lower_bound_log(q, shifts.len(), c);
                    min_lower_margin = min_lower_margin.min(logdet - lower);
                }
                cases.push(CheckCase::upper(
                    format!("identity max |log error|, q={}, c={}", q, c),
                    max_identity_err,
                    1e-8,
                ));
                cases.push(CheckCase::lower(
                    format!("lower-bound min margin, q={}, c={}", q, c),
                    min_lower_margin,
                    -1e-9,
                ));
            }
        }
        CheckReport::new(self.name(), cases)
    }
}

/// Subspace-measurement facts: states `mu_t` with `t <= r-2` never land in
/// `V_perp`, and the `in V_perp` probability matches the Gram-determinant
/// ratio route.
struct MeasureBoundCheck;

impl LemmaCheck for MeasureBoundCheck {
    fn name(&self) -> &'static str {
        "measure-bound"
    }

    fn run(&self, cfg: &CheckConfig) -> CheckReport {
        let mut cases = Vec::new();
        for q in primes_up_to(cfg.q_max) {
            for c in 0..=cfg.c_max.min(q.saturating_sub(2)) {
                let mut max_in_v_leak = 0.0f64;
                let mut max_ratio_err = 0.0f64;
                for shifts in subsets_of_deficiency(q, c) {
                    let r = shifts.len();
                    if r < 2 {
                        continue;
                    }
                    let ctx = build_measurement_context(q, &shifts).unwrap();
                    for t in 0..=(r as u64 - 2) {
                        let mu = mu_state(q, &shifts, t).unwrap();
                        max_in_v_leak = max_in_v_leak.max(ctx.prob_perp(&mu));
                    }
                    let spanning: Vec<Ket> = (0..r as u64 - 1)
                        .map(|t| mu_state(q, &shifts, t).unwrap())
                        .collect();
                    let base_logdet = gram_matrix(&spanning).log_abs_det();
                    for t in (r as u64 - 1)..q {
                        let mu = mu_state(q, &shifts, t).unwrap();
                        let p_proj = ctx.prob_perp(&mu);
                        let mut family = spanning.clone();
                        family.push(mu);
                        let ratio = (gram_matrix(&family).log_abs_det() - base_logdet).exp();
                        max_ratio_err = max_ratio_err.max((p_proj - ratio).abs());
                    }
                }
                cases.push(CheckCase::upper(
                    format!("max P[in V_perp] for t <= r-2, q={}, c={}", q, c),
                    max_in_v_leak,
                    1e-10,
                ));
                cases.push(CheckCase::upper(
                    format!("max |projection - Gram ratio|, q={}, c={}", q, c),
                    max_ratio_err,
                    1e-9,
                ));
            }
        }
        CheckReport::new(self.name(), cases)
    }
}

/// Overlap facts: `|<embed(mu_t), kappa_t>| = sqrt(r/q)` and the inverse
/// transform of the embedded state carries `|amp_t|^2 = r/q`.
struct MuOverlapCheck;

impl LemmaCheck for MuOverlapCheck {
    fn name(&self) -> &'static str {
        "mu-overlap"
    }

    fn run(&self, cfg: &CheckConfig) -> CheckReport {
        let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed ^ 0x0f0f);
        let mut cases = Vec::new();
        for q in 2..=cfg.q_max {
            let mut max_overlap_err = 0.0f64;
            let mut max_amp_err = 0.0f64;
            for c in 0..=cfg.c_max.min(q - 1) {
                let r = (q - c) as usize;
                // A deterministic contiguous set plus a few random sets.
                let mut sets = vec![(0..r as u64).collect::<Vec<u64>>()];
                for _ in 0..3 {
                    let mut all: Vec<u64> = (0..q).collect();
                    for i in 0..r {
                        let j = rng.gen_range(i..all.len());
                        all.swap(i, j);
                    }
                    let mut set: Vec<u64> = all[..r].to_vec();
                    set.sort_unstable();
                    sets.push(set);
                }
                sets.dedup();
                let expected = ((r as f64) / q as f64).sqrt();
                for shifts in sets {
                    for t in [0u64, 1 % q, q - 1] {
                        let got = overlap_kappa(q, &shifts, t).unwrap();
                        max_overlap_err = max_overlap_err.max((got - expected).abs());
                        let mu = mu_state(q, &shifts, t).unwrap();
                        let embedded = embed_in_group(q, &shifts, &mu).unwrap();
                        let transformed = qft_apply(q, &embedded, true).unwrap();
                        let amp = transformed.amplitudes()[t as usize].norm_sqr();
                        max_amp_err = max_amp_err.max((amp - expected * expected).abs());
                    }
                }
            }
            cases.push(CheckCase::upper(
                format!("max |overlap - sqrt(r/q)|, q={}", q),
                max_overlap_err,
                1e-12,
            ));
            cases.push(CheckCase::upper(
                format!("max |amp^2 - r/q| after inverse transform, q={}", q),
                max_amp_err,
                1e-12,
            ));
        }
        CheckReport::new(self.name(), cases)
    }
}

/// Hadamard's inequality on the sweep matrices, plus the Vandermonde
/// product formula on random complex nodes.
struct HadamardCheck;

impl LemmaCheck for HadamardCheck {
    fn name(&self) -> &'static str {
        "hadamard"
    }

    fn run(&self, cfg: &CheckConfig) -> CheckReport {
        let mut cases = Vec::new();
        let mut max_margin = f64::NEG_INFINITY;
        for q in primes_up_to(cfg.q_max) {
            for c in 0..=cfg.c_max.min(q - 1) {
                for shifts in subsets_of_deficiency(q, c) {
                    let (a, logdet_gram) = vandermonde_gram(q, &shifts).unwrap();
                    let mut col_log = 0.0f64;
                    for t in 0..a.cols() {
                        let norm: f64 = (0..a.rows())
                            .map(|i| a.get(i, t).norm_sqr())
                            .sum::<f64>()
                            .sqrt();
                        col_log += norm.ln();
                    }
                    // log |det A| <= sum of log column norms.
                    max_margin = max_margin.max(logdet_gram / 2.0 - col_log);
                }
            }
        }
        cases.push(CheckCase::upper(
            "max (log|det A| - sum log column norms) over sweep".to_string(),
            max_margin,
            1e-9,
        ));

        let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed ^ 0xadaa);
        let mut max_formula_err = 0.0f64;
        for m in 2..=8usize {
            for _ in 0..4 {
                let nodes: Vec<num_complex::Complex64> = (0..m)
                    .map(|_| {
                        num_complex::Complex64::new(
                            rng.gen::<f64>() * 2.0 - 1.0,
                            rng.gen::<f64>() * 2.0 - 1.0,
                        )
                    })
                    .collect();
                let mut mat = ComplexMatrix::zero(m, m);
                for (i, &x) in nodes.iter().enumerate() {
                    let mut p = num_complex::Complex64::new(1.0, 0.0);
                    for j in 0..m {
                        mat.set(i, j, p);
                        p *= x;
                    }
                }
                let direct = mat.log_abs_det();
                let mut formula = 0.0f64;
                for i in 0..m {
                    for j in 0..i {
                        formula += (nodes[i] - nodes[j]).norm().ln();
                    }
                }
                max_formula_err = max_formula_err.max((direct - formula).abs());
            }
        }
        cases.push(CheckCase::upper(
            "max |log det - product formula| on random nodes (m <= 8)".to_string(),
            max_formula_err,
            1e-8,
        ));
        CheckReport::new(self.name(), cases)
    }
}
