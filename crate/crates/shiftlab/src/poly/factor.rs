//! Randomized extraction of affine-linear factors from a multivariate
//! polynomial.
//!
//! If `f` is a linear factor of `g`, then on the hyperplane `f = 0` the
//! gradient of `g` is proportional to the coefficient vector of `f` (for a
//! factor of multiplicity `m` the same holds for slices of the order-`m`
//! differential). A random line meets the hyperplane in a point that can be
//! found by univariate root finding on the line restriction; the lowest
//! nonvanishing differential there proposes a candidate factor, which is
//! confirmed or rejected by exact division. Every returned factor is
//! therefore certified; completeness is Monte-Carlo.

use rand::Rng;

use crate::ff::{FieldElement, PrimeModulus};
use crate::poly::{AffineLinear, MultiPoly};

/// Candidate-enumeration ceiling for the small-field exhaustive path.
const EXHAUSTIVE_CAP: u128 = 2_000_000;

/// Returns the affine-linear factors of `g` in canonical form, one entry per
/// multiplicity. May miss factors (with probability vanishing in the retry
/// budget) but never reports a non-factor. For `q < 4 (deg g)^2` the random
/// line argument loses its margin, so small fields are handled by exhaustive
/// enumeration of canonical affine forms instead, which is deterministic.
pub fn extract_linear_factors<R: Rng>(
    g: &MultiPoly,
    rng: &mut R,
    retry_budget: u32,
) -> Vec<AffineLinear> {
    let mut factors = Vec::new();
    let mut current = g.clone();
    loop {
        let deg = match current.degree() {
            None | Some(0) => break,
            Some(d) => d,
        };
        let found = if deg == 1 {
            // Degree-one polynomials are their own factorization.
            current.as_affine().map(|a| a.canonical())
        } else if use_exhaustive(&current, deg) {
            find_factor_exhaustive(&current)
        } else {
            find_factor_random(&current, rng, retry_budget)
        };
        match found {
            Some(factor) => {
                // Divide out every occurrence so repeated factors are
                // reported with their multiplicity.
                loop {
                    let (quot, rem) = current
                        .divide_by_affine(&factor)
                        .expect("candidate factors have a linear part");
                    if !rem.is_zero() {
                        break;
                    }
                    factors.push(factor.clone());
                    current = quot;
                    if current.degree().map_or(true, |d| d == 0) {
                        break;
                    }
                }
            }
            None => break,
        }
    }
    factors
}

fn use_exhaustive(g: &MultiPoly, deg: u32) -> bool {
    let q = g.modulus().get() as u128;
    if q >= 4 * (deg as u128) * (deg as u128) {
        return false;
    }
    candidate_count(q, g.arity()) <= EXHAUSTIVE_CAP
}

/// Number of canonical affine-linear forms: q * (q^n - 1) / (q - 1),
/// saturating so the cap comparison stays meaningful.
fn candidate_count(q: u128, arity: usize) -> u128 {
    let mut directions: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..arity {
        directions = directions.saturating_add(power);
        power = power.saturating_mul(q);
    }
    directions.saturating_mul(q)
}

/// Deterministic scan over all canonical affine forms, pivots first.
fn find_factor_exhaustive(g: &MultiPoly) -> Option<AffineLinear> {
    let modulus = g.modulus();
    let q = modulus.get();
    let n = g.arity();
    for pivot in 0..n {
        // Coefficients: zeros up to the pivot, 1 at the pivot, then a full
        // odometer over the remaining positions and the constant.
        let free = n - pivot - 1;
        let mut odometer = vec![0u64; free + 1]; // last slot is the constant
        loop {
            let mut coeffs = vec![modulus.zero(); n];
            coeffs[pivot] = modulus.one();
            for (k, &v) in odometer[..free].iter().enumerate() {
                coeffs[pivot + 1 + k] = modulus.element(v);
            }
            let constant = modulus.element(odometer[free]);
            let cand = AffineLinear::new(coeffs, constant);
            if divides(g, &cand) {
                return Some(cand);
            }
            if !advance(&mut odometer, q) {
                break;
            }
        }
    }
    None
}

fn advance(odometer: &mut [u64], q: u64) -> bool {
    for slot in odometer.iter_mut() {
        *slot += 1;
        if *slot < q {
            return true;
        }
        *slot = 0;
    }
    false
}

fn find_factor_random<R: Rng>(
    g: &MultiPoly,
    rng: &mut R,
    retry_budget: u32,
) -> Option<AffineLinear> {
    let modulus = g.modulus();
    let n = g.arity();
    for _ in 0..retry_budget.max(1) {
        let base = random_point(modulus, n, rng);
        let dir = random_nonzero_vector(modulus, n, rng);
        let line = match g.restrict_to_line(&base, &dir) {
            Ok(line) => line,
            Err(_) => continue,
        };
        if line.degree().map_or(true, |d| d == 0) {
            // Line misses the variety or lies inside it; resample.
            continue;
        }
        let roots = match line.roots(rng) {
            Ok(roots) => roots,
            Err(_) => continue,
        };
        for t0 in roots {
            let p0: Vec<FieldElement> = base.iter().zip(&dir).map(|(&b, &d)| b + d * t0).collect();
            let normal = match hyperplane_normal(g, &p0) {
                Some(w) => w,
                None => continue, // singular locus; try another root or line
            };
            // f(x) = (w, x) - (w, p0)
            let mut constant = modulus.zero();
            for (&w, &p) in normal.iter().zip(&p0) {
                constant = constant - w * p;
            }
            let cand = AffineLinear::new(normal, constant).canonical();
            if divides(g, &cand) {
                return Some(cand);
            }
        }
    }
    None
}

/// Lowest-order nonvanishing differential slice at `p0`. For a factor of
/// multiplicity `m` every derivative of order below `m` vanishes on the
/// hyperplane, while the order-`m` differential is `m! h(p0) w^{(x) m}`, so
/// the gradient of any order-`(m-1)` partial that survives is proportional
/// to the normal `w`. The frontier walks non-decreasing derivative
/// multi-indices, which keeps it at one polynomial per distinct partial.
fn hyperplane_normal(g: &MultiPoly, p0: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let max_order = g.degree().unwrap_or(0) as usize;
    // (first differentiable variable, polynomial) pairs of the current order.
    let mut frontier: Vec<(usize, MultiPoly)> = vec![(0, g.clone())];
    for _order in 0..max_order {
        for (_, poly) in &frontier {
            let grad = poly.gradient_at(p0).expect("point arity checked by caller");
            if grad.iter().any(|c| !c.is_zero()) {
                return Some(grad);
            }
        }
        let mut next = Vec::new();
        for (start, poly) in &frontier {
            for i in *start..g.arity() {
                let derivative = poly.partial_derivative(i);
                if !derivative.is_zero() {
                    next.push((i, derivative));
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
    None
}

fn divides(g: &MultiPoly, f: &AffineLinear) -> bool {
    match g.divide_by_affine(f) {
        Ok((_, rem)) => rem.is_zero(),
        Err(_) => false,
    }
}

fn random_point<R: Rng>(modulus: PrimeModulus, n: usize, rng: &mut R) -> Vec<FieldElement> {
    (0..n)
        .map(|_| modulus.element(rng.gen_range(0..modulus.get())))
        .collect()
}

fn random_nonzero_vector<R: Rng>(
    modulus: PrimeModulus,
    n: usize,
    rng: &mut R,
) -> Vec<FieldElement> {
    loop {
        let v = random_point(modulus, n, rng);
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}
