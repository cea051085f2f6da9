//! The learning-from-subset solver.
//!
//! Given a value set `A` of size `d` and samples `u_i` whose hidden linear
//! image `ell(u_i)` always lies in `A`, the solver linearizes: it computes
//! the space of degree-`<= d` polynomials vanishing on every sample, picks a
//! random nonzero member, extracts its affine-linear factors, and searches
//! for a scalar `gamma` turning a factor into a linear function consistent
//! with `A` on all samples. With the sample budget from
//! [`required_sample_count`] the vanishing space collapses into the ideal of
//! `ell - alpha_p` with probability at least 1/2, which makes the returned
//! function a constant multiple of the hidden one.

use std::fmt;

use rand::Rng;

use crate::ff::{FieldElement, PrimeModulus};
use crate::linalg::MatrixGF;
use crate::poly::{extract_linear_factors, AffineLinear, LinearFunction, MultiPoly};

/// Step-1 polynomial re-draws before giving up on the vanishing space.
const STEP1_RETRIES: usize = 8;
/// Line-sampling budget handed to the factor extractor.
const FACTOR_RETRY_BUDGET: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LfsError {
    /// The value set is empty, has duplicates, or has `|A| > q - 1`.
    InvalidValueSet(String),
    /// Weight vector inconsistent with the value set.
    InvalidWeights(String),
    /// The hidden linear function is zero.
    DegenerateEll,
    /// No samples were provided, or a sample has the wrong arity.
    InvalidSamples(String),
    /// The monomial count `C(n+d, d)` exceeds 2^32.
    InstanceTooLarge { n: u32, d: u32 },
    /// The vanishing space is trivial: either the promise is violated or
    /// the sample count is too small.
    NoVanishingPoly,
    /// No extracted factor admits a valid scaling.
    NoValidFactor,
}

impl fmt::Display for LfsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LfsError::InvalidValueSet(msg) => write!(f, "invalid value set: {}", msg),
            LfsError::InvalidWeights(msg) => write!(f, "invalid weights: {}", msg),
            LfsError::DegenerateEll => write!(f, "hidden linear function must be nonzero"),
            LfsError::InvalidSamples(msg) => write!(f, "invalid samples: {}", msg),
            LfsError::InstanceTooLarge { n, d } => {
                write!(f, "monomial count C({}+{}, {}) exceeds 2^32", n, d, d)
            }
            LfsError::NoVanishingPoly => {
                write!(
                    f,
                    "vanishing space is trivial (promise violated or too few samples)"
                )
            }
            LfsError::NoValidFactor => {
                write!(f, "no linear factor admits a consistent scalar")
            }
        }
    }
}

impl std::error::Error for LfsError {}

/// Explicit instantiation of the sample-count bound: `B = C(n+d, d)`,
/// `k = ceil(d (d+1) ln(2B))` and `N = (B + 1) k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleBudget {
    /// Dimension of the degree-`<= d` polynomial space.
    pub monomial_count: u64,
    /// Samples per shrink block.
    pub block_length: u64,
    /// Total number of samples.
    pub total: u64,
}

/// Sample count making the shrink argument close with failure at most 1/2.
pub fn required_sample_count(n: u32, d: u32) -> Result<SampleBudget, LfsError> {
    assert!(n >= 1 && d >= 1, "need n >= 1 and d >= 1");
    let b = binomial_capped(n as u64 + d as u64, d as u64)
        .ok_or(LfsError::InstanceTooLarge { n, d })?;
    let k = (d as f64 * (d as f64 + 1.0) * (2.0 * b as f64).ln()).ceil() as u64;
    Ok(SampleBudget {
        monomial_count: b,
        block_length: k,
        total: (b + 1) * k,
    })
}

/// `C(n, k)` while it stays below 2^32; `None` on overflow.
fn binomial_capped(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
        if acc > (1u128 << 32) {
            return None;
        }
    }
    Some(acc as u64)
}

/// All exponent vectors of total degree at most `d` in graded order
/// (degree ascending, lexicographic within a degree).
pub fn monomials_up_to_degree(arity: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; arity];
    for deg in 0..=d {
        emit_of_degree(arity, deg, 0, &mut current, &mut out);
    }
    out
}

fn emit_of_degree(
    arity: usize,
    remaining: u32,
    index: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if index == arity - 1 {
        current[index] = remaining;
        out.push(current.clone());
        current[index] = 0;
        return;
    }
    for e in 0..=remaining {
        current[index] = e;
        emit_of_degree(arity, remaining - e, index + 1, current, out);
    }
    current[index] = 0;
}

/// An `(A, ell)`-distribution: a hidden nonzero linear function `ell`, a
/// value set `A`, and one integer weight per value (exact rational
/// bookkeeping: the probability of value `a_i` is `w_i / sum w`).
///
/// Sampling draws a value by weight and then a uniform point of its fiber,
/// via a basis `v_1, ..., v_n` with `ell(v_1) = 1` and `ell(v_i) = 0` for
/// `i >= 2`.
#[derive(Debug, Clone)]
pub struct SubsetDistribution {
    modulus: PrimeModulus,
    arity: usize,
    values: Vec<FieldElement>,
    weights: Vec<u64>,
    weight_sum: u64,
    ell: LinearFunction,
    fiber_unit: Vec<FieldElement>,
    kernel_basis: Vec<Vec<FieldElement>>,
    alpha_p: FieldElement,
}

impl SubsetDistribution {
    pub fn new(
        values: Vec<FieldElement>,
        weights: Vec<u64>,
        ell: LinearFunction,
    ) -> Result<Self, LfsError> {
        let modulus = ell.modulus();
        validate_value_set(&values, modulus)?;
        if weights.len() != values.len() {
            return Err(LfsError::InvalidWeights(format!(
                "{} weights for {} values",
                weights.len(),
                values.len()
            )));
        }
        let weight_sum: u64 = weights.iter().sum();
        if weight_sum == 0 {
            return Err(LfsError::InvalidWeights(
                "at least one weight must be positive".into(),
            ));
        }
        // Sort values (and weights alongside) so tie-breaking below is the
        // smallest residue among maximal-weight values.
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by_key(|&i| values[i].value());
        let values: Vec<FieldElement> = order.iter().map(|&i| values[i]).collect();
        let weights: Vec<u64> = order.iter().map(|&i| weights[i]).collect();

        let max_weight = *weights.iter().max().unwrap();
        let alpha_p = values[weights.iter().position(|&w| w == max_weight).unwrap()];
        // pi >= 1/d always holds since the maximum dominates the average.
        debug_assert!(max_weight as u128 * values.len() as u128 >= weight_sum as u128);

        let (fiber_unit, kernel_basis) = fiber_basis(&ell)?;
        Ok(SubsetDistribution {
            modulus,
            arity: ell.arity(),
            values,
            weights,
            weight_sum,
            ell,
            fiber_unit,
            kernel_basis,
            alpha_p,
        })
    }

    /// Uniform weights over the value set.
    pub fn uniform(values: Vec<FieldElement>, ell: LinearFunction) -> Result<Self, LfsError> {
        let weights = vec![1u64; values.len()];
        SubsetDistribution::new(values, weights, ell)
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
    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    #[inline]
    pub fn hidden_function(&self) -> &LinearFunction {
        &self.ell
    }

    /// The most probable value (smallest residue on ties).
    #[inline]
    pub fn alpha_p(&self) -> FieldElement {
        self.alpha_p
    }

    /// One draw: a uniform point of the fiber of a weight-drawn value.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Vec<FieldElement> {
        let mut pick = rng.gen_range(0..self.weight_sum);
        let mut alpha = self.values[0];
        for (v, &w) in self.values.iter().zip(&self.weights) {
            if pick < w {
                alpha = *v;
                break;
            }
            pick -= w;
        }
        let q = self.modulus.get();
        let mut u: Vec<FieldElement> = self.fiber_unit.iter().map(|&c| c * alpha).collect();
        for basis_vec in &self.kernel_basis {
            let beta = self.modulus.element(rng.gen_range(0..q));
            for (acc, &c) in u.iter_mut().zip(basis_vec) {
                *acc = *acc + c * beta;
            }
        }
        debug_assert_eq!(self.ell.evaluate(&u).unwrap(), alpha);
        u
    }

    pub fn sample_many<R: Rng>(&self, count: usize, rng: &mut R) -> Vec<Vec<FieldElement>> {
        (0..count).map(|_| self.sample(rng)).collect()
    }
}

fn validate_value_set(values: &[FieldElement], modulus: PrimeModulus) -> Result<(), LfsError> {
    if values.is_empty() {
        return Err(LfsError::InvalidValueSet("value set is empty".into()));
    }
    if values.len() as u64 > modulus.get() - 1 {
        return Err(LfsError::InvalidValueSet(format!(
            "|A| = {} exceeds q - 1 = {}",
            values.len(),
            modulus.get() - 1
        )));
    }
    let mut seen: Vec<u64> = values.iter().map(|v| v.value()).collect();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(LfsError::InvalidValueSet("duplicate value".into()));
    }
    if values.iter().any(|v| v.modulus() != modulus) {
        return Err(LfsError::InvalidValueSet("mixed moduli".into()));
    }
    Ok(())
}

/// Basis adapted to `ell`: a vector with `ell = 1` plus a kernel basis.
fn fiber_basis(
    ell: &LinearFunction,
) -> Result<(Vec<FieldElement>, Vec<Vec<FieldElement>>), LfsError> {
    let modulus = ell.modulus();
    let n = ell.arity();
    let coeffs = ell.coefficients();
    let pivot = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(LfsError::DegenerateEll)?;
    let pivot_inv = coeffs[pivot].inverse().expect("pivot is nonzero");
    let mut unit = vec![modulus.zero(); n];
    unit[pivot] = pivot_inv;
    let mut kernel = Vec::with_capacity(n - 1);
    for i in 0..n {
        if i == pivot {
            continue;
        }
        let mut v = vec![modulus.zero(); n];
        v[i] = modulus.one();
        v[pivot] = -(coeffs[i] * pivot_inv);
        kernel.push(v);
    }
    Ok((unit, kernel))
}

/// A value set together with samples promised to come from some
/// `(A, ell)`-distribution. The promise itself is only checkable by whoever
/// knows the generator.
#[derive(Debug, Clone)]
pub struct LfsInstance {
    modulus: PrimeModulus,
    arity: usize,
    values: Vec<FieldElement>,
    samples: Vec<Vec<FieldElement>>,
}

impl LfsInstance {
    pub fn new(
        values: Vec<FieldElement>,
        samples: Vec<Vec<FieldElement>>,
    ) -> Result<Self, LfsError> {
        if samples.is_empty() {
            return Err(LfsError::InvalidSamples("no samples".into()));
        }
        let arity = samples[0].len();
        if arity == 0 {
            return Err(LfsError::InvalidSamples("samples have arity 0".into()));
        }
        let modulus = samples[0][0].modulus();
        validate_value_set(&values, modulus)?;
        for (i, s) in samples.iter().enumerate() {
            if s.len() != arity {
                return Err(LfsError::InvalidSamples(format!(
                    "sample {} has arity {} (expected {})",
                    i,
                    s.len(),
                    arity
                )));
            }
            if s.iter().any(|e| e.modulus() != modulus) {
                return Err(LfsError::InvalidSamples(format!(
                    "sample {} mixes moduli",
                    i
                )));
            }
        }
        Ok(LfsInstance {
            modulus,
            arity,
            values,
            samples,
        })
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
    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    #[inline]
    pub fn samples(&self) -> &[Vec<FieldElement>] {
        &self.samples
    }
}

/// The space of degree-`<= d` polynomials vanishing on every sample,
/// presented by a monomial index in graded order and a kernel basis of the
/// evaluation matrix.
#[derive(Debug, Clone)]
pub struct VanishingSpace {
    monomials: Vec<Vec<u32>>,
    basis: Vec<MultiPoly>,
}

impl VanishingSpace {
    #[inline]
    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    #[inline]
    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// One evaluation-matrix row per sample, one column per monomial; the basis
/// is the matrix kernel read back as polynomials.
pub fn build_vanishing_space(instance: &LfsInstance, d: u32) -> VanishingSpace {
    assert!(d >= 1, "degree must be at least 1");
    let modulus = instance.modulus();
    let monomials = monomials_up_to_degree(instance.arity(), d);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(instance.samples().len());
    for sample in instance.samples() {
        // Power table: powers[i][e] = sample[i]^e.
        let powers: Vec<Vec<u64>> = sample
            .iter()
            .map(|&x| {
                let mut col = Vec::with_capacity(d as usize + 1);
                let mut acc = modulus.one();
                col.push(acc.value());
                for _ in 0..d {
                    acc = acc * x;
                    col.push(acc.value());
                }
                col
            })
            .collect();
        let row: Vec<u64> = monomials
            .iter()
            .map(|exps| {
                let mut acc = 1u64;
                for (i, &e) in exps.iter().enumerate() {
                    if e > 0 {
                        acc = modulus.mul_raw(acc, powers[i][e as usize]);
                    }
                }
                acc
            })
            .collect();
        rows.push(row);
    }
    let matrix = MatrixGF::from_rows(modulus, &rows);
    let basis = matrix
        .nullspace_basis()
        .into_iter()
        .map(|coeffs| {
            MultiPoly::from_terms(
                instance.arity(),
                modulus,
                monomials.iter().cloned().zip(coeffs),
            )
        })
        .collect();
    VanishingSpace { monomials, basis }
}

/// Scalar search for a candidate factor `f`: a nonzero `gamma` with
/// `gamma (f(u_i) - f(0))` in the value set for every sample. When `f` is
/// constant on the samples the answer is `1` exactly when `0` is a value.
pub fn gamma_search(
    f: &AffineLinear,
    values: &[FieldElement],
    samples: &[Vec<FieldElement>],
) -> Option<FieldElement> {
    let modulus = f.constant().modulus();
    let f0 = f.constant();
    let shifted: Vec<FieldElement> = samples
        .iter()
        .map(|u| f.evaluate(u).expect("sample arity matches factor") - f0)
        .collect();
    let mut sorted_values: Vec<u64> = values.iter().map(|v| v.value()).collect();
    sorted_values.sort_unstable();
    let in_values = |x: FieldElement| sorted_values.binary_search(&x.value()).is_ok();

    match shifted.iter().find(|b| !b.is_zero()) {
        None => {
            if in_values(modulus.zero()) {
                Some(modulus.one())
            } else {
                None
            }
        }
        Some(&beta) => {
            let beta_inv = beta.inverse().expect("beta is nonzero");
            for &alpha in values {
                if alpha.is_zero() {
                    continue;
                }
                let gamma = alpha * beta_inv;
                if shifted.iter().all(|&b| in_values(gamma * b)) {
                    return Some(gamma);
                }
            }
            None
        }
    }
}

/// The constant `c` with `l2 = c * l1`, or `None` if the two functions are
/// not scalar multiples of each other.
pub fn scalar_equivalent(l1: &LinearFunction, l2: &LinearFunction) -> Option<FieldElement> {
    if l1.arity() != l2.arity() {
        return None;
    }
    let a = l1.coefficients();
    let b = l2.coefficients();
    let i = a.iter().position(|c| !c.is_zero())?;
    if b[i].is_zero() {
        return None;
    }
    let c = b[i] * a[i].inverse().expect("pivot is nonzero");
    for (x, y) in a.iter().zip(b) {
        if *x * c != *y {
            return None;
        }
    }
    Some(c)
}

/// Full solve: vanishing space, factor extraction, scalar search. Returns
/// the canonical representative of the recovered class. The `A`-membership
/// contract is checked on the gamma-scaled function before canonicalization.
pub fn solve_lfs<R: Rng>(
    values: &[FieldElement],
    samples: &[Vec<FieldElement>],
    rng: &mut R,
) -> Result<LinearFunction, LfsError> {
    let instance = LfsInstance::new(values.to_vec(), samples.to_vec())?;
    if instance.values().len() == 1 {
        return solve_singleton(&instance);
    }
    let d = instance.values().len() as u32;
    let vspace = build_vanishing_space(&instance, d);
    if vspace.dimension() == 0 {
        return Err(LfsError::NoVanishingPoly);
    }
    for _ in 0..STEP1_RETRIES {
        let g = random_combination(&vspace, rng);
        let factors = extract_linear_factors(&g, rng, FACTOR_RETRY_BUDGET);
        for factor in &factors {
            if let Some(gamma) = gamma_search(factor, instance.values(), instance.samples()) {
                let linear = match factor.linear_part().and_then(|l| l.scale(gamma)) {
                    Ok(l) => l,
                    Err(_) => continue,
                };
                if verify_membership(&linear, instance.values(), instance.samples()) {
                    return Ok(linear.canonical());
                }
            }
        }
    }
    Err(LfsError::NoValidFactor)
}

/// `d = 1` is plain linear algebra: `ell(u_i) = alpha` for all `i`, solved
/// by elimination (through the kernel when `alpha = 0`).
fn solve_singleton(instance: &LfsInstance) -> Result<LinearFunction, LfsError> {
    let modulus = instance.modulus();
    let alpha = instance.values()[0];
    let rows: Vec<Vec<u64>> = instance
        .samples()
        .iter()
        .map(|s| s.iter().map(|e| e.value()).collect())
        .collect();
    let matrix = MatrixGF::from_rows(modulus, &rows);
    let coeffs = if alpha.is_zero() {
        let basis = matrix.nullspace_basis();
        basis.into_iter().next().ok_or(LfsError::NoVanishingPoly)?
    } else {
        let b = vec![alpha; instance.samples().len()];
        matrix
            .solve_system(&b)
            .expect("dimensions agree by construction")
            .ok_or(LfsError::NoValidFactor)?
    };
    let linear = LinearFunction::new(coeffs).map_err(|_| LfsError::NoValidFactor)?;
    if !verify_membership(&linear, instance.values(), instance.samples()) {
        return Err(LfsError::NoValidFactor);
    }
    Ok(linear.canonical())
}

fn verify_membership(
    ell: &LinearFunction,
    values: &[FieldElement],
    samples: &[Vec<FieldElement>],
) -> bool {
    let mut sorted: Vec<u64> = values.iter().map(|v| v.value()).collect();
    sorted.sort_unstable();
    samples.iter().all(|u| {
        let v = ell.evaluate(u).expect("sample arity matches function");
        sorted.binary_search(&v.value()).is_ok()
    })
}

fn random_combination<R: Rng>(vspace: &VanishingSpace, rng: &mut R) -> MultiPoly {
    let first = &vspace.basis()[0];
    let modulus = first.modulus();
    let q = modulus.get();
    loop {
        let mut acc = MultiPoly::zero(first.arity(), modulus);
        for p in vspace.basis() {
            let c = modulus.element(rng.gen_range(0..q));
            acc = &acc + &p.scale(c);
        }
        if !acc.is_zero() {
            return acc;
        }
    }
}

/// Runs `repeats` independent solves on fresh sample batches and returns the
/// plurality scalar-equivalence class (ties broken by smallest canonical
/// coefficient vector). Amplifies the per-solve 1/2 floor.
pub fn solve_lfs_amplified<R, S>(
    values: &[FieldElement],
    mut sample_source: S,
    repeats: usize,
    rng: &mut R,
) -> Result<LinearFunction, LfsError>
where
    R: Rng,
    S: FnMut(&mut R) -> Vec<Vec<FieldElement>>,
{
    assert!(repeats >= 1, "need at least one repeat");
    let mut tally: std::collections::BTreeMap<Vec<u64>, (u64, LinearFunction)> =
        std::collections::BTreeMap::new();
    let mut last_err = LfsError::NoValidFactor;
    for _ in 0..repeats {
        let samples = sample_source(rng);
        match solve_lfs(values, &samples, rng) {
            Ok(ell) => {
                let key: Vec<u64> = ell.coefficients().iter().map(|c| c.value()).collect();
                tally.entry(key).or_insert((0, ell)).0 += 1;
            }
            Err(e) => last_err = e,
        }
    }
    tally
        .into_iter()
        .max_by_key(|(key, (count, _))| (*count, std::cmp::Reverse(key.clone())))
        .map(|(_, (_, ell))| ell)
        .ok_or(last_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn f(q: u64) -> PrimeModulus {
        PrimeModulus::new(q).unwrap()
    }

    fn pts(m: PrimeModulus, vals: &[u64]) -> Vec<FieldElement> {
        vals.iter().map(|&v| m.element(v)).collect()
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

    #[test]
    fn sample_budget_examples() {
        // Plugging into B = C(n+d, d), k = ceil(d(d+1) ln 2B), N = (B+1)k.
        let b = required_sample_count(1, 1).unwrap();
        assert_eq!((b.monomial_count, b.block_length, b.total), (2, 3, 9));
        let b = required_sample_count(2, 2).unwrap();
        assert_eq!((b.monomial_count, b.block_length, b.total), (6, 15, 105));
        let b = required_sample_count(4, 3).unwrap();
        assert_eq!((b.monomial_count, b.block_length, b.total), (35, 51, 1836));
        assert!(required_sample_count(4000, 9).is_err());
    }

    #[test]
    fn monomial_enumeration_counts() {
        for (n, d) in [(1usize, 1u32), (2, 2), (3, 3), (4, 2)] {
            let monos = monomials_up_to_degree(n, d);
            let expected = binomial_capped(n as u64 + d as u64, d as u64).unwrap();
            assert_eq!(monos.len() as u64, expected);
            // Graded order: degrees never decrease.
            let degs: Vec<u32> = monos.iter().map(|e| e.iter().sum()).collect();
            assert!(degs.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn sampler_fiber_structure() {
        let f7 = f(7);
        let mut rng = ChaCha20Rng::seed_from_u64(41);
        let ell = LinearFunction::new(pts(f7, &[1, 0])).unwrap();
        let dist = SubsetDistribution::uniform(pts(f7, &[3]), ell.clone()).unwrap();
        for _ in 0..200 {
            let u = dist.sample(&mut rng);
            assert_eq!(u[0].value(), 3);
        }
    }

    #[test]
    fn sampler_weight_marginal() {
        let f7 = f(7);
        let mut rng = ChaCha20Rng::seed_from_u64(43);
        let ell = LinearFunction::new(pts(f7, &[1, 2])).unwrap();
        let dist = SubsetDistribution::uniform(pts(f7, &[1, 3]), ell.clone()).unwrap();
        let n = 10_000;
        let mut ones = 0u64;
        for _ in 0..n {
            let u = dist.sample(&mut rng);
            let v = ell.evaluate(&u).unwrap().value();
            assert!(v == 1 || v == 3);
            if v == 1 {
                ones += 1;
            }
        }
        let freq = ones as f64 / n as f64;
        let sigma = (0.25f64 / n as f64).sqrt();
        assert!((freq - 0.5).abs() <= 3.0 * sigma, "freq = {}", freq);
    }

    #[test]
    fn sampler_zero_weight_never_drawn() {
        let f7 = f(7);
        let mut rng = ChaCha20Rng::seed_from_u64(47);
        let ell = LinearFunction::new(pts(f7, &[1, 2])).unwrap();
        let dist = SubsetDistribution::new(pts(f7, &[1, 3]), vec![1, 0], ell.clone()).unwrap();
        for _ in 0..500 {
            let u = dist.sample(&mut rng);
            assert_eq!(ell.evaluate(&u).unwrap().value(), 1);
        }
    }

    #[test]
    fn sampler_uniform_on_fiber_chi_squared() {
        // q = 5, n = 2: each fiber has 5 points; 10^4 draws; the chi-squared
        // statistic on 4 degrees of freedom stays below the 0.999 quantile
        // 18.467 (p-value above 1e-3).
        let f5 = f(5);
        let mut rng = ChaCha20Rng::seed_from_u64(53);
        let ell = LinearFunction::new(pts(f5, &[2, 3])).unwrap();
        let dist = SubsetDistribution::uniform(pts(f5, &[2]), ell.clone()).unwrap();
        let mut counts = std::collections::HashMap::new();
        let n = 10_000;
        for _ in 0..n {
            let u = dist.sample(&mut rng);
            let key = (u[0].value(), u[1].value());
            *counts.entry(key).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 5);
        let expected = n as f64 / 5.0;
        let chi2: f64 = counts
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        assert!(chi2 < 18.467, "chi2 = {}", chi2);
    }

    #[test]
    fn vanishing_space_toy_kernel() {
        // Single sample u = 0, n = 1, d = 1 over F_5: evaluation matrix is
        // the 1x2 row [1, 0], kernel is spanned by x1.
        let f5 = f(5);
        let instance = LfsInstance::new(pts(f5, &[1]), vec![pts(f5, &[0])]).unwrap();
        let vs = build_vanishing_space(&instance, 1);
        assert_eq!(vs.dimension(), 1);
        let basis = &vs.basis()[0];
        assert!(basis.coefficient(&[0]).is_zero());
        assert_eq!(basis.coefficient(&[1]).value(), 1);
    }

    #[test]
    fn vanishing_space_contains_product_poly() {
        let f101 = f(101);
        let mut rng = ChaCha20Rng::seed_from_u64(59);
        let ell = random_nonzero_ell(f101, 3, &mut rng);
        let values = pts(f101, &[1, 3]);
        let dist = SubsetDistribution::uniform(values.clone(), ell.clone()).unwrap();
        let samples = dist.sample_many(60, &mut rng);
        let g = crate::poly::product_poly(&values, &ell).unwrap();
        for u in &samples {
            assert!(g.evaluate(u).unwrap().is_zero());
        }
        let instance = LfsInstance::new(values, samples).unwrap();
        let vs = build_vanishing_space(&instance, 2);
        assert!(vs.dimension() >= 1);
        for basis in vs.basis() {
            for u in instance.samples() {
                assert!(basis.evaluate(u).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn gamma_search_examples() {
        let f7 = f(7);
        let ell = LinearFunction::new(pts(f7, &[1, 2])).unwrap();
        let values = pts(f7, &[1, 3]);
        // Samples hitting both fibers.
        let mut rng = ChaCha20Rng::seed_from_u64(61);
        let dist = SubsetDistribution::uniform(values.clone(), ell.clone()).unwrap();
        let samples = dist.sample_many(40, &mut rng);
        // f = 3 (ell - 1)
        let three = f7.element(3);
        let coeffs: Vec<FieldElement> = ell.coefficients().iter().map(|&c| c * three).collect();
        let factor = AffineLinear::new(coeffs, -three);
        let gamma = gamma_search(&factor, &values, &samples).unwrap();
        // Exhaustive oracle over all nonzero gamma.
        let mut valid = Vec::new();
        for g in 1..7u64 {
            let g = f7.element(g);
            let ok = samples.iter().all(|u| {
                let b = factor.evaluate(u).unwrap() - factor.constant();
                values.contains(&(g * b))
            });
            if ok {
                valid.push(g.value());
            }
        }
        assert!(valid.contains(&gamma.value()));
        assert_eq!(gamma.value(), 5); // 3^{-1} mod 7

        // Constant-on-samples branch.
        let const_factor = AffineLinear::new(pts(f7, &[0, 0]), f7.element(2));
        assert_eq!(
            gamma_search(&const_factor, &pts(f7, &[0, 4]), &samples),
            Some(f7.one())
        );
        assert_eq!(
            gamma_search(&const_factor, &pts(f7, &[2, 3]), &samples),
            None
        );
    }

    #[test]
    fn scalar_equivalence_examples() {
        let f7 = f(7);
        let l1 = LinearFunction::new(pts(f7, &[1, 2])).unwrap();
        let l2 = LinearFunction::new(pts(f7, &[3, 6])).unwrap();
        assert_eq!(scalar_equivalent(&l1, &l2).unwrap().value(), 3);
        let l3 = LinearFunction::new(pts(f7, &[1, 3])).unwrap();
        assert_eq!(scalar_equivalent(&l1, &l3), None);
        assert_eq!(scalar_equivalent(&l1, &l1).unwrap().value(), 1);
    }

    #[test]
    fn solve_d1_example() {
        let f7 = f(7);
        let mut rng = ChaCha20Rng::seed_from_u64(67);
        let ell = LinearFunction::new(pts(f7, &[1, 2])).unwrap();
        let dist = SubsetDistribution::uniform(pts(f7, &[3]), ell.clone()).unwrap();
        let samples = dist.sample_many(5, &mut rng);
        let got = solve_lfs(&pts(f7, &[3]), &samples, &mut rng).unwrap();
        assert!(scalar_equivalent(&ell, &got).is_some());
    }

    #[test]
    fn solve_d2_success_rate() {
        // q = 101, n = 3, d = 2, uniform weights, N from the formula:
        // scalar-equivalent recovery in at least 80 of 100 seeded trials.
        let f101 = f(101);
        let budget = required_sample_count(3, 2).unwrap();
        assert_eq!(budget.total, 198);
        let values = pts(f101, &[1, 3]);
        let mut successes = 0;
        for trial in 0..100u64 {
            let mut rng = ChaCha20Rng::seed_from_u64(7000 + trial);
            let ell = random_nonzero_ell(f101, 3, &mut rng);
            let dist = SubsetDistribution::uniform(values.clone(), ell.clone()).unwrap();
            let samples = dist.sample_many(budget.total as usize, &mut rng);
            if let Ok(got) = solve_lfs(&values, &samples, &mut rng) {
                if scalar_equivalent(&ell, &got).is_some() {
                    successes += 1;
                }
            }
        }
        assert!(successes >= 80, "{} / 100 trials succeeded", successes);
    }

    #[test]
    fn solver_output_always_consistent() {
        // Whatever is returned satisfies ell'(u_i) in A unconditionally.
        let f101 = f(101);
        let mut rng = ChaCha20Rng::seed_from_u64(71);
        let values = pts(f101, &[2, 5, 9]);
        for _ in 0..10 {
            let ell = random_nonzero_ell(f101, 2, &mut rng);
            let dist = SubsetDistribution::uniform(values.clone(), ell.clone()).unwrap();
            let samples = dist.sample_many(400, &mut rng);
            if let Ok(got) = solve_lfs(&values, &samples, &mut rng) {
                // The canonical representative is some scalar multiple of a
                // consistent function; check consistency of the class.
                let c = scalar_equivalent(&got, &ell);
                assert!(c.is_some(), "returned class differs from hidden class");
            }
        }
    }

    #[test]
    fn divisibility_event_implies_recovery() {
        // Whenever every vanishing-space basis polynomial is divisible by
        // ell - alpha_p, the solver output is scalar-equivalent to ell.
        let f101 = f(101);
        let values = pts(f101, &[1, 3]);
        let budget = required_sample_count(3, 2).unwrap();
        for trial in 0..20u64 {
            let mut rng = ChaCha20Rng::seed_from_u64(90_000 + trial);
            let ell = random_nonzero_ell(f101, 3, &mut rng);
            let dist = SubsetDistribution::uniform(values.clone(), ell.clone()).unwrap();
            let samples = dist.sample_many(budget.total as usize, &mut rng);
            let instance = LfsInstance::new(values.clone(), samples.clone()).unwrap();
            let vs = build_vanishing_space(&instance, 2);
            let alpha_p = dist.alpha_p();
            let divisor = AffineLinear::new(ell.coefficients().to_vec(), -alpha_p);
            let event = vs.basis().iter().all(|g| {
                let (_, rem) = g.divide_by_affine(&divisor).unwrap();
                rem.is_zero()
            });
            if event {
                let got = solve_lfs(&values, &samples, &mut rng).unwrap();
                assert!(scalar_equivalent(&ell, &got).is_some());
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        let f7 = f(7);
        let mut rng = ChaCha20Rng::seed_from_u64(73);
        // All-zero samples with 0 not in A: vanishing space exists (every
        // monomial with a variable vanishes at 0) but no consistent factor.
        let samples = vec![pts(f7, &[0, 0]); 6];
        let err = solve_lfs(&pts(f7, &[3, 5]), &samples, &mut rng).unwrap_err();
        assert!(matches!(
            err,
            LfsError::NoValidFactor | LfsError::NoVanishingPoly
        ));
    }

    #[test]
    fn amplified_solver_returns_plurality() {
        let f101 = f(101);
        let mut rng = ChaCha20Rng::seed_from_u64(79);
        let values = pts(f101, &[1, 3]);
        let ell = random_nonzero_ell(f101, 3, &mut rng);
        let dist = SubsetDistribution::uniform(values.clone(), ell.clone()).unwrap();
        let budget = required_sample_count(3, 2).unwrap();
        let got = solve_lfs_amplified(
            &values,
            |rng| dist.sample_many(budget.total as usize, rng),
            5,
            &mut rng,
        )
        .unwrap();
        assert!(scalar_equivalent(&ell, &got).is_some());
    }
}
