//! Double-precision statevector toolkit: the phase states `mu_t`, Fourier
//! transforms over `Z_q`, subspace and rank-one measurements, and
//! Vandermonde-Gram determinants.
//!
//! Everything here works over plain `Z_q` (no primality assumed). States are
//! normalized on construction; measurements are simulated by exact
//! projection in floating point, with explicit tolerances instead of gate
//! synthesis.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;

pub type C64 = Complex64;

/// Norm tolerance for state construction and orthonormality checks.
pub const STATE_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum QsimError {
    /// State vector with (numerically) zero norm.
    ZeroVector,
    /// `H` must be nonempty, sorted, distinct and inside `[0, q)`.
    InvalidShiftSet(String),
    /// Dimension does not match the operation (e.g. not a power of `q`).
    DimensionMismatch { expected: String, got: usize },
    /// Need at least two shifts to span a measurement hyperplane.
    DimensionTooSmall { r: usize },
    /// Context dimension above the desk-scale cap.
    DimensionTooLarge { q: u64 },
    /// Gram-Schmidt failed to reach the orthonormality tolerance.
    IllConditioned { residual: f64 },
}

impl fmt::Display for QsimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QsimError::ZeroVector => write!(f, "state vector has zero norm"),
            QsimError::InvalidShiftSet(msg) => write!(f, "invalid shift set: {}", msg),
            QsimError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {}, got {}", expected, got)
            }
            QsimError::DimensionTooSmall { r } => {
                write!(f, "need |H| >= 2 for a subspace measurement, got {}", r)
            }
            QsimError::DimensionTooLarge { q } => {
                write!(f, "q = {} above the context cap 1024", q)
            }
            QsimError::IllConditioned { residual } => {
                write!(
                    f,
                    "orthonormalization residual {:.3e} above tolerance",
                    residual
                )
            }
        }
    }
}

impl std::error::Error for QsimError {}

/// A unit complex amplitude vector.
#[derive(Debug, Clone)]
pub struct Ket {
    amps: Vec<C64>,
}

impl Ket {
    /// Normalizes the given amplitudes; errors on the zero vector.
    pub fn new(amps: Vec<C64>) -> Result<Self, QsimError> {
        let norm = l2_norm(&amps);
        if norm < 1e-300 {
            return Err(QsimError::ZeroVector);
        }
        let amps = amps.into_iter().map(|a| a / norm).collect();
        Ok(Ket { amps })
    }

    pub fn basis_state(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ket { amps }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// `<self | other>` with the conjugate on `self`.
    pub fn inner(&self, other: &Ket) -> C64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        inner_product(&self.amps, &other.amps)
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amps)
    }

    /// `|<self | other>|`, insensitive to global phase.
    pub fn fidelity(&self, other: &Ket) -> f64 {
        self.inner(other).norm()
    }
}

#[inline]
fn inner_product(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

#[inline]
fn l2_norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// `omega^k` for `omega = exp(2 pi i / q)`.
#[inline]
fn root_of_unity(q: u64, k: u64) -> C64 {
    let angle = TAU * (k % q) as f64 / q as f64;
    C64::new(angle.cos(), angle.sin())
}

/// `a * b mod q` without overflowing 62-bit operands.
#[inline]
fn phase_exponent(q: u64, a: u64, b: u64) -> u64 {
    (a as u128 * b as u128 % q as u128) as u64
}

fn validate_shift_set(q: u64, shifts: &[u64]) -> Result<(), QsimError> {
    if shifts.is_empty() {
        return Err(QsimError::InvalidShiftSet("H is empty".into()));
    }
    if shifts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(QsimError::InvalidShiftSet(
            "H must be strictly increasing".into(),
        ));
    }
    if *shifts.last().unwrap() >= q {
        return Err(QsimError::InvalidShiftSet(format!(
            "H contains a shift >= q = {}",
            q
        )));
    }
    Ok(())
}

/// `mu_t = (1/sqrt r) sum_{h in H} omega^{h t} |h>`, with `H` indexed in
/// increasing order.
pub fn mu_state(q: u64, shifts: &[u64], t: u64) -> Result<Ket, QsimError> {
    validate_shift_set(q, shifts)?;
    let r = shifts.len() as f64;
    let scale = 1.0 / r.sqrt();
    let amps = shifts
        .iter()
        .map(|&h| root_of_unity(q, phase_exponent(q, h, t)) * scale)
        .collect();
    Ok(Ket { amps })
}

/// The full-support analogue `kappa_t` over all of `Z_q`.
pub fn kappa_state(q: u64, t: u64) -> Ket {
    let scale = 1.0 / (q as f64).sqrt();
    let amps = (0..q)
        .map(|h| root_of_unity(q, phase_exponent(q, h, t)) * scale)
        .collect();
    Ket { amps }
}

/// Embeds an `H`-indexed state into `C^q` with zeros off `H`.
pub fn embed_in_group(q: u64, shifts: &[u64], state: &Ket) -> Result<Ket, QsimError> {
    validate_shift_set(q, shifts)?;
    if state.dim() != shifts.len() {
        return Err(QsimError::DimensionMismatch {
            expected: format!("{}", shifts.len()),
            got: state.dim(),
        });
    }
    let mut amps = vec![C64::new(0.0, 0.0); q as usize];
    for (&h, &a) in shifts.iter().zip(state.amplitudes()) {
        amps[h as usize] = a;
    }
    Ok(Ket { amps })
}

/// `|<embed(mu_t), kappa_t>|`; equal to `sqrt(r/q)` up to rounding.
pub fn overlap_kappa(q: u64, shifts: &[u64], t: u64) -> Result<f64, QsimError> {
    let mu = mu_state(q, shifts, t)?;
    let embedded = embed_in_group(q, shifts, &mu)?;
    let kappa = kappa_state(q, t);
    Ok(embedded.inner(&kappa).norm())
}

/// Minimal dense complex matrix used for determinant work.
#[derive(Debug, Clone)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.cols + c] = v;
    }

    /// `log |det|` by LU with partial pivoting; `-inf` when singular.
    pub fn log_abs_det(&self) -> f64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut acc = 0.0f64;
        for k in 0..n {
            // Pivot on the largest magnitude in column k.
            let (pivot_row, pivot_mag) = (k..n)
                .map(|r| (r, a[r * n + k].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if pivot_mag == 0.0 {
                return f64::NEG_INFINITY;
            }
            if pivot_row != k {
                for c in 0..n {
                    a.swap(pivot_row * n + c, k * n + c);
                }
            }
            let pivot = a[k * n + k];
            acc += pivot.norm().ln();
            for r in (k + 1)..n {
                let factor = a[r * n + k] / pivot;
                if factor.norm() == 0.0 {
                    continue;
                }
                for c in k..n {
                    let sub = factor * a[k * n + c];
                    a[r * n + c] -= sub;
                }
            }
        }
        acc
    }
}

/// Gram matrix `G_{ij} = <v_i, v_j>` of a vector family.
pub fn gram_matrix(vectors: &[Ket]) -> ComplexMatrix {
    let k = vectors.len();
    let mut g = ComplexMatrix::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            g.set(i, j, vectors[i].inner(&vectors[j]));
        }
    }
    g
}

/// The scaled Vandermonde matrix with entry `(i, t) = omega^{h_i t}/sqrt r`
/// (columns are `mu_0, ..., mu_{r-1}`), together with `log |det A* A|`
/// computed by pivoted LU.
pub fn vandermonde_gram(q: u64, shifts: &[u64]) -> Result<(ComplexMatrix, f64), QsimError> {
    validate_shift_set(q, shifts)?;
    let r = shifts.len();
    let scale = 1.0 / (r as f64).sqrt();
    let mut a = ComplexMatrix::zero(r, r);
    for (i, &h) in shifts.iter().enumerate() {
        for t in 0..r as u64 {
            a.set(i, t as usize, root_of_unity(q, phase_exponent(q, h, t)) * scale);
        }
    }
    let log_det_gram = 2.0 * a.log_abs_det();
    Ok((a, log_det_gram))
}

/// Orthonormal basis of `V = span(mu_0, ..., mu_{r-2})` used to decompose
/// `C^r` as `V + V_perp`.
#[derive(Debug, Clone)]
pub struct MeasurementContext {
    dim: usize,
    basis: Vec<Ket>,
    tolerance: f64,
}

impl MeasurementContext {
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn basis(&self) -> &[Ket] {
        &self.basis
    }

    #[inline]
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Projection of `psi` onto `V` (unnormalized amplitudes).
    pub fn project(&self, psi: &Ket) -> Vec<C64> {
        assert_eq!(psi.dim(), self.dim, "state dimension mismatch");
        let mut acc = vec![C64::new(0.0, 0.0); self.dim];
        for b in &self.basis {
            let coeff = b.inner(psi);
            for (a, &bv) in acc.iter_mut().zip(b.amplitudes()) {
                *a += coeff * bv;
            }
        }
        acc
    }

    /// Born probability of the `in V_perp` outcome.
    pub fn prob_perp(&self, psi: &Ket) -> f64 {
        let proj = self.project(psi);
        psi.amplitudes()
            .iter()
            .zip(&proj)
            .map(|(&a, &p)| (a - p).norm_sqr())
            .sum()
    }
}

/// Modified Gram-Schmidt over `mu_0, ..., mu_{r-2}` with one
/// reorthogonalization pass; verifies residual orthonormality against
/// [`STATE_NORM_TOL`].
pub fn build_measurement_context(q: u64, shifts: &[u64]) -> Result<MeasurementContext, QsimError> {
    validate_shift_set(q, shifts)?;
    if q > 1024 {
        return Err(QsimError::DimensionTooLarge { q });
    }
    let r = shifts.len();
    if r < 2 {
        return Err(QsimError::DimensionTooSmall { r });
    }
    let targets: Vec<Ket> = (0..r as u64 - 1)
        .map(|t| mu_state(q, shifts, t).expect("validated shift set"))
        .collect();
    let mut basis: Vec<Ket> = Vec::with_capacity(r - 1);
    for target in &targets {
        let mut v = target.amplitudes().to_vec();
        for _pass in 0..2 {
            for b in &basis {
                let coeff = inner_product(b.amplitudes(), &v);
                for (x, &bv) in v.iter_mut().zip(b.amplitudes()) {
                    *x -= coeff * bv;
                }
            }
        }
        let norm = l2_norm(&v);
        if norm < 1e-12 {
            return Err(QsimError::IllConditioned { residual: norm });
        }
        for x in v.iter_mut() {
            *x /= norm;
        }
        basis.push(Ket { amps: v });
    }
    // Residual orthonormality check.
    let mut residual = 0.0f64;
    for i in 0..basis.len() {
        for j in 0..=i {
            let g = basis[i].inner(&basis[j]);
            let expected = if i == j { 1.0 } else { 0.0 };
            residual = residual.max((g - expected).norm());
        }
    }
    if residual > STATE_NORM_TOL {
        return Err(QsimError::IllConditioned { residual });
    }
    Ok(MeasurementContext {
        dim: r,
        basis,
        tolerance: STATE_NORM_TOL,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceTag {
    InV,
    InVPerp,
}

/// Result of a `(V, V_perp)` measurement: the realized branch, the collapsed
/// state, and the Born probability of that branch.
#[derive(Debug, Clone)]
pub struct OutcomeVPerp {
    pub tag: SubspaceTag,
    pub collapsed: Ket,
    pub probability: f64,
}

/// Born-rule measurement against the context hyperplane.
pub fn measure_subspace<R: Rng>(ctx: &MeasurementContext, psi: &Ket, rng: &mut R) -> OutcomeVPerp {
    let proj = ctx.project(psi);
    let perp: Vec<C64> = psi
        .amplitudes()
        .iter()
        .zip(&proj)
        .map(|(&a, &p)| a - p)
        .collect();
    let p_perp = perp
        .iter()
        .map(|a| a.norm_sqr())
        .sum::<f64>()
        .clamp(0.0, 1.0);
    if rng.gen::<f64>() < p_perp {
        OutcomeVPerp {
            tag: SubspaceTag::InVPerp,
            collapsed: Ket::new(perp).expect("branch probability was positive"),
            probability: p_perp,
        }
    } else {
        OutcomeVPerp {
            tag: SubspaceTag::InV,
            collapsed: Ket::new(proj).expect("branch probability was positive"),
            probability: 1.0 - p_perp,
        }
    }
}

/// Fourier transform over `Z_q^k` applied to a state of dimension `q^k`
/// (the 1-D transform applied coordinate-wise); conjugated when `inverse`.
pub fn qft_apply(q: u64, psi: &Ket, inverse: bool) -> Result<Ket, QsimError> {
    let dim = psi.dim();
    let mut axes = 0usize;
    let mut acc = 1usize;
    while acc < dim {
        acc = acc
            .checked_mul(q as usize)
            .ok_or(QsimError::DimensionMismatch {
                expected: format!("a power of {}", q),
                got: dim,
            })?;
        axes += 1;
    }
    if acc != dim || axes == 0 {
        return Err(QsimError::DimensionMismatch {
            expected: format!("a positive power of {}", q),
            got: dim,
        });
    }
    let mut data = psi.amplitudes().to_vec();
    qft_axes(q, axes, 1, &mut data, inverse);
    Ok(Ket { amps: data })
}

/// Applies the 1-D transform along each of the `axes` leading mixed-radix
/// coordinates of `data`, whose layout is `(i_0, ..., i_{axes-1}, j)` with a
/// trailing block of size `trailing`.
pub(crate) fn qft_axes(q: u64, axes: usize, trailing: usize, data: &mut [C64], inverse: bool) {
    let qd = q as usize;
    let scale = 1.0 / (q as f64).sqrt();
    // Scaled roots omega^k (conjugated for the inverse); entry j*k of the
    // transform is roots[j k mod q].
    let roots: Vec<C64> = (0..q)
        .map(|k| {
            let w = root_of_unity(q, k);
            if inverse {
                w.conj() * scale
            } else {
                w * scale
            }
        })
        .collect();
    let mut scratch = vec![C64::new(0.0, 0.0); qd];
    for axis in 0..axes {
        let stride = qd.pow((axes - 1 - axis) as u32) * trailing;
        let block = stride * qd;
        let total = data.len();
        let mut base = 0;
        while base < total {
            for offset in 0..stride {
                for (j, slot) in scratch.iter_mut().enumerate() {
                    *slot = data[base + offset + j * stride];
                }
                for k in 0..qd {
                    let mut acc = C64::new(0.0, 0.0);
                    for (j, &x) in scratch.iter().enumerate() {
                        acc += roots[phase_exponent(q, j as u64, k as u64) as usize] * x;
                    }
                    data[base + offset + k * stride] = acc;
                }
            }
            base += block;
        }
    }
}

/// Standard-basis measurement: index `j` with probability `|amp_j|^2`.
pub fn born_sample<R: Rng>(psi: &Ket, rng: &mut R) -> usize {
    let total: f64 = psi.amplitudes().iter().map(|a| a.norm_sqr()).sum();
    let mut pick = rng.gen::<f64>() * total;
    for (i, a) in psi.amplitudes().iter().enumerate() {
        pick -= a.norm_sqr();
        if pick <= 0.0 {
            return i;
        }
    }
    psi.dim() - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn full_set(q: u64) -> Vec<u64> {
        (0..q).collect()
    }

    #[test]
    fn mu_state_examples() {
        let mu = mu_state(5, &[0, 1, 2, 3], 0).unwrap();
        for &a in mu.amplitudes() {
            assert!((a - C64::new(0.5, 0.0)).norm() < 1e-12);
        }
        for (q, t) in [(5u64, 3u64), (17, 11), (4, 2)] {
            let mu = mu_state(q, &full_set(q), t).unwrap();
            assert!((mu.norm() - 1.0).abs() < STATE_NORM_TOL);
        }
        // Character orthogonality for H = Z_q.
        let a = mu_state(7, &full_set(7), 0).unwrap();
        let b = mu_state(7, &full_set(7), 1).unwrap();
        assert!(a.inner(&b).norm() < 1e-12);

        assert!(mu_state(5, &[], 0).is_err());
        assert!(mu_state(5, &[2, 2], 0).is_err());
        assert!(mu_state(5, &[6], 0).is_err());

        // Phase exponents near the 62-bit modulus cap must not overflow.
        let big = (1u64 << 61) - 1;
        let mu = mu_state(big, &[0, 1, big - 1], big - 2).unwrap();
        assert!((mu.norm() - 1.0).abs() < STATE_NORM_TOL);
    }

    #[test]
    fn overlap_kappa_examples() {
        // H = Z_q: overlap 1.
        assert!((overlap_kappa(7, &full_set(7), 3).unwrap() - 1.0).abs() < 1e-12);
        // q = 17, r = 16.
        let got = overlap_kappa(17, &(0..16).collect::<Vec<_>>(), 5).unwrap();
        assert!((got - (16.0f64 / 17.0).sqrt()).abs() < 1e-12);
        // Non-prime q = 4, r = 2.
        let got = overlap_kappa(4, &[1, 3], 2).unwrap();
        assert!((got - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn vandermonde_gram_identity_small() {
        // H = Z_q: the scaled DFT is unitary, so |det A*A| = 1.
        let (_, logdet) = vandermonde_gram(7, &full_set(7)).unwrap();
        assert!(logdet.abs() < 1e-10, "logdet = {}", logdet);

        // q = 5, H = {0,1,2,3}: |det A*A| = 4^{-4} * 5^3 = 125/256.
        let (_, logdet) = vandermonde_gram(5, &[0, 1, 2, 3]).unwrap();
        let expected = (125.0f64 / 256.0).ln();
        assert!((logdet - expected).abs() < 1e-10, "logdet = {}", logdet);
    }

    #[test]
    fn hadamard_bound_on_vandermonde() {
        // |det A| <= product of column norms (= 1 for these columns).
        for q in [5u64, 7, 11] {
            for c in 0..3u64 {
                if q - c < 1 {
                    continue;
                }
                let shifts: Vec<u64> = (0..q - c).collect();
                let (a, logdet) = vandermonde_gram(q, &shifts).unwrap();
                let mut col_log = 0.0;
                for t in 0..a.cols() {
                    let norm: f64 = (0..a.rows())
                        .map(|i| a.get(i, t).norm_sqr())
                        .sum::<f64>()
                        .sqrt();
                    col_log += norm.ln();
                }
                assert!(logdet / 2.0 <= col_log + 1e-9);
            }
        }
    }

    #[test]
    fn vandermonde_product_formula_random_nodes() {
        // det of a plain Vandermonde matrix equals prod_{j<i} (x_i - x_j),
        // checked for random complex nodes up to m = 8.
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for m in 2..=8usize {
            let nodes: Vec<C64> = (0..m)
                .map(|_| C64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0))
                .collect();
            let mut mat = ComplexMatrix::zero(m, m);
            for (i, &x) in nodes.iter().enumerate() {
                let mut p = C64::new(1.0, 0.0);
                for j in 0..m {
                    mat.set(i, j, p);
                    p *= x;
                }
            }
            let direct = mat.log_abs_det();
            let mut formula = 0.0;
            for i in 0..m {
                for j in 0..i {
                    formula += (nodes[i] - nodes[j]).norm().ln();
                }
            }
            assert!(
                (direct - formula).abs() < 1e-8,
                "m = {}: {} vs {}",
                m,
                direct,
                formula
            );
        }
    }

    #[test]
    fn context_and_projector() {
        // H = Z_5: mu_t are orthonormal characters; the context basis spans
        // mu_0..mu_3 and P_V mu_t = mu_t for t <= 3.
        let q = 5u64;
        let ctx = build_measurement_context(q, &full_set(q)).unwrap();
        assert_eq!(ctx.basis().len(), 4);
        for t in 0..4u64 {
            let mu = mu_state(q, &full_set(q), t).unwrap();
            assert!(ctx.prob_perp(&mu) < 1e-12);
        }
        let mu4 = mu_state(q, &full_set(q), 4).unwrap();
        assert!((ctx.prob_perp(&mu4) - 1.0).abs() < 1e-10);

        // Projector idempotence on random states.
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for _ in 0..20 {
            let amps: Vec<C64> = (0..q as usize)
                .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let psi = Ket::new(amps).unwrap();
            let once = ctx.project(&psi);
            let twice = ctx.project(&Ket::new(once.clone()).unwrap());
            let scale = l2_norm(&once);
            let err: f64 = once
                .iter()
                .zip(&twice)
                .map(|(&a, &b)| (a / scale - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-9);
        }
    }

    #[test]
    fn measure_subspace_branches() {
        let q = 5u64;
        let shifts = [0u64, 1, 2, 3];
        let ctx = build_measurement_context(q, &shifts).unwrap();
        assert_eq!(ctx.basis().len(), 3);
        let mut rng = ChaCha20Rng::seed_from_u64(7);

        // mu_t with t <= r-2 lies in V: in-V with probability 1.
        for t in 0..3u64 {
            let mu = mu_state(q, &shifts, t).unwrap();
            let out = measure_subspace(&ctx, &mu, &mut rng);
            assert_eq!(out.tag, SubspaceTag::InV);
            assert!(ctx.prob_perp(&mu) < 1e-10);
        }

        // Probability conservation on random states.
        for _ in 0..50 {
            let amps: Vec<C64> = (0..4)
                .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let psi = Ket::new(amps).unwrap();
            let p = ctx.prob_perp(&psi);
            let out = measure_subspace(&ctx, &psi, &mut rng);
            let branch = match out.tag {
                SubspaceTag::InVPerp => p,
                SubspaceTag::InV => 1.0 - p,
            };
            assert!((out.probability - branch).abs() < 1e-9);
            assert!((out.collapsed.norm() - 1.0).abs() < STATE_NORM_TOL);
        }
    }

    #[test]
    fn perp_probability_phase_invariant() {
        let q = 11u64;
        let shifts: Vec<u64> = (0..10).collect();
        let ctx = build_measurement_context(q, &shifts).unwrap();
        let mu = mu_state(q, &shifts, 9).unwrap();
        let phase = C64::from_polar(1.0, 1.234);
        let shifted = Ket::new(mu.amplitudes().iter().map(|&a| a * phase).collect()).unwrap();
        let a = ctx.prob_perp(&mu);
        let b = ctx.prob_perp(&shifted);
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn gram_ratio_matches_projection() {
        // P[in V_perp] for mu_{r-1} equals det Gram(mu_0..mu_{r-1}) /
        // det Gram(mu_0..mu_{r-2}), and for q=5, H={0..3} the same holds at
        // t = 4 with mu_4 appended instead.
        let q = 5u64;
        let shifts = [0u64, 1, 2, 3];
        let ctx = build_measurement_context(q, &shifts).unwrap();
        for t in [3u64, 4] {
            let mu = mu_state(q, &shifts, t).unwrap();
            let p = ctx.prob_perp(&mu);
            let mut family: Vec<Ket> = (0..3).map(|s| mu_state(q, &shifts, s).unwrap()).collect();
            let small = gram_matrix(&family).log_abs_det();
            family.push(mu);
            let big = gram_matrix(&family).log_abs_det();
            let ratio = (big - small).exp();
            assert!((p - ratio).abs() < 1e-9, "t = {}: {} vs {}", t, p, ratio);
        }
    }

    #[test]
    fn qft_basics() {
        let q = 7u64;
        let psi = Ket::basis_state(7, 0);
        let out = qft_apply(q, &psi, false).unwrap();
        for &a in out.amplitudes() {
            assert!((a.norm() - 1.0 / (7.0f64).sqrt()).abs() < 1e-12);
        }

        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for _ in 0..10 {
            let amps: Vec<C64> = (0..49)
                .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let psi = Ket::new(amps).unwrap();
            let round = qft_apply(q, &qft_apply(q, &psi, false).unwrap(), true).unwrap();
            let err: f64 = psi
                .amplitudes()
                .iter()
                .zip(round.amplitudes())
                .map(|(&a, &b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-9);
        }

        // inverse QFT of kappa_t concentrates on |t>.
        for t in 0..7u64 {
            let kappa = kappa_state(q, t);
            let out = qft_apply(q, &kappa, true).unwrap();
            assert!((out.amplitudes()[t as usize].norm() - 1.0).abs() < 1e-10);
        }

        assert!(qft_apply(7, &Ket::basis_state(6, 0), false).is_err());
    }

    #[test]
    fn born_sampling() {
        let mut rng = ChaCha20Rng::seed_from_u64(13);
        let deterministic = Ket::basis_state(5, 3);
        for _ in 0..20 {
            assert_eq!(born_sample(&deterministic, &mut rng), 3);
        }
        let uniform = Ket::new(vec![C64::new(1.0, 0.0); 4]).unwrap();
        let shots = 10_000usize;
        let mut counts = [0u64; 4];
        for _ in 0..shots {
            counts[born_sample(&uniform, &mut rng)] += 1;
        }
        let sigma = (0.25 * 0.75 / shots as f64).sqrt();
        for &c in &counts {
            let freq = c as f64 / shots as f64;
            assert!((freq - 0.25).abs() <= 3.0 * sigma, "freq = {}", freq);
        }

        // inverse QFT of an embedded mu_t lands on t with probability r/q.
        let q = 17u64;
        let shifts: Vec<u64> = (0..16).collect();
        let t = 9u64;
        let mu = mu_state(q, &shifts, t).unwrap();
        let embedded = embed_in_group(q, &shifts, &mu).unwrap();
        let transformed = qft_apply(q, &embedded, true).unwrap();
        let p_t = transformed.amplitudes()[t as usize].norm_sqr();
        assert!((p_t - 16.0 / 17.0).abs() < 1e-12);
    }

    #[test]
    fn context_error_paths() {
        assert!(matches!(
            build_measurement_context(5, &[2]),
            Err(QsimError::DimensionTooSmall { .. })
        ));
        assert!(matches!(
            build_measurement_context(2048, &[0, 1]),
            Err(QsimError::DimensionTooLarge { .. })
        ));
    }
}
