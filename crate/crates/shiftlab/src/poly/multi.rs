//! Sparse multivariate polynomials and affine-linear forms.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ff::{FieldElement, PrimeModulus};
use crate::poly::{PolyError, UniPoly};

/// Sparse `n`-variate polynomial over `F_q`.
///
/// Terms map exponent vectors (length = arity) to nonzero coefficients; zero
/// coefficients are never stored, so the zero polynomial has an empty term
/// map and `degree()` returns `None` (the "-infinity" degree, kept distinct
/// from degree-0 constants).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    modulus: PrimeModulus,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl MultiPoly {
    pub fn zero(arity: usize, modulus: PrimeModulus) -> Self {
        MultiPoly {
            arity,
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(value: FieldElement, arity: usize) -> Self {
        let mut p = MultiPoly::zero(arity, value.modulus());
        p.add_term(vec![0; arity], value);
        p
    }

    /// The monomial `x_i`.
    pub fn variable(index: usize, arity: usize, modulus: PrimeModulus) -> Self {
        assert!(index < arity, "variable index out of range");
        let mut exps = vec![0u32; arity];
        exps[index] = 1;
        let mut p = MultiPoly::zero(arity, modulus);
        p.add_term(exps, modulus.one());
        p
    }

    /// Builds a polynomial from (exponent vector, coefficient) pairs,
    /// accumulating duplicates and dropping zeros.
    pub fn from_terms<I>(arity: usize, modulus: PrimeModulus, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, FieldElement)>,
    {
        let mut p = MultiPoly::zero(arity, modulus);
        for (exps, coeff) in terms {
            p.add_term(exps, coeff);
        }
        p
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|exps| exps.iter().sum::<u32>()).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, FieldElement)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> FieldElement {
        self.terms
            .get(exps)
            .copied()
            .unwrap_or_else(|| self.modulus.zero())
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: FieldElement) {
        assert_eq!(exps.len(), self.arity, "exponent vector length");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = *e.get() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.arity, self.modulus);
        }
        let terms = self.terms.iter().map(|(e, &v)| (e.clone(), v * c));
        MultiPoly {
            arity: self.arity,
            modulus: self.modulus,
            terms: terms.collect(),
        }
    }

    /// Exact value at a point.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        let mut acc = self.modulus.zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.to_owned();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term * point[i].pow(e as u64);
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to `x_index`.
    pub fn partial_derivative(&self, index: usize) -> MultiPoly {
        assert!(index < self.arity, "variable index out of range");
        let mut out = MultiPoly::zero(self.arity, self.modulus);
        for (exps, &coeff) in &self.terms {
            let e = exps[index];
            if e == 0 {
                continue;
            }
            let mut new_exps = exps.clone();
            new_exps[index] = e - 1;
            out.add_term(new_exps, coeff * self.modulus.element(e as u64));
        }
        out
    }

    /// Vector of formal partial-derivative values at a point.
    pub fn gradient_at(&self, point: &[FieldElement]) -> Result<Vec<FieldElement>, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        (0..self.arity)
            .map(|i| self.partial_derivative(i).evaluate(point))
            .collect()
    }

    /// Restriction `t -> g(base + t * dir)` as a univariate polynomial.
    pub fn restrict_to_line(
        &self,
        base: &[FieldElement],
        dir: &[FieldElement],
    ) -> Result<UniPoly, PolyError> {
        if base.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: base.len(),
            });
        }
        if dir.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: dir.len(),
            });
        }
        if dir.iter().all(|c| c.is_zero()) {
            return Err(PolyError::ZeroDirection);
        }
        let mut acc = UniPoly::zero(self.modulus);
        for (exps, &coeff) in &self.terms {
            let mut term = UniPoly::constant(coeff);
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let lin = UniPoly::from_coeffs(vec![base[i], dir[i]]);
                for _ in 0..e {
                    term = &term * &lin;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Long division by an affine-linear polynomial with respect to its pivot
    /// variable. Returns `(quotient, remainder)` with
    /// `self = divisor * quotient + remainder` and the remainder free of the
    /// pivot variable; divisibility is exact iff the remainder is zero.
    pub fn divide_by_affine(
        &self,
        divisor: &AffineLinear,
    ) -> Result<(MultiPoly, MultiPoly), PolyError> {
        if divisor.arity() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: divisor.arity(),
            });
        }
        let pivot = divisor.pivot().ok_or(PolyError::ConstantDivisor)?;
        let c_pivot = divisor.coefficients()[pivot];
        let c_inv = c_pivot.inverse().expect("pivot coefficient is nonzero");

        // divisor = c_pivot * x_pivot + tail, with tail free of x_pivot.
        let mut tail = divisor.to_multipoly();
        let mut pivot_exp = vec![0u32; self.arity];
        pivot_exp[pivot] = 1;
        tail.add_term(pivot_exp, -c_pivot);

        // Split self by the exponent of the pivot variable.
        let max_pow = self.terms.keys().map(|e| e[pivot]).max().unwrap_or(0) as usize;
        let mut parts: Vec<MultiPoly> =
            vec![MultiPoly::zero(self.arity, self.modulus); max_pow + 1];
        for (exps, &coeff) in &self.terms {
            let k = exps[pivot] as usize;
            let mut stripped = exps.clone();
            stripped[pivot] = 0;
            parts[k].add_term(stripped, coeff);
        }

        let mut quotient = MultiPoly::zero(self.arity, self.modulus);
        for k in (1..=max_pow).rev() {
            let q_part = parts[k].scale(c_inv);
            if q_part.is_zero() {
                continue;
            }
            let correction = &q_part * &tail;
            parts[k - 1] = &parts[k - 1] - &correction;
            quotient = &quotient + &q_part.shift_variable(pivot, (k - 1) as u32);
        }
        let remainder = parts.swap_remove(0);
        Ok((quotient, remainder))
    }

    /// Multiplies by `x_index^power`.
    fn shift_variable(&self, index: usize, power: u32) -> MultiPoly {
        if power == 0 {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(e, &c)| {
            let mut e = e.clone();
            e[index] += power;
            (e, c)
        });
        MultiPoly {
            arity: self.arity,
            modulus: self.modulus,
            terms: terms.collect(),
        }
    }

    /// Interprets a polynomial of total degree at most 1 as an affine form.
    pub fn as_affine(&self) -> Option<AffineLinear> {
        if self.degree().map_or(false, |d| d > 1) {
            return None;
        }
        let mut coeffs = vec![self.modulus.zero(); self.arity];
        let mut constant = self.modulus.zero();
        for (exps, &c) in &self.terms {
            match exps.iter().position(|&e| e > 0) {
                None => constant = c,
                Some(i) => coeffs[i] = c,
            }
        }
        Some(AffineLinear::new(coeffs, constant))
    }

    fn assert_compatible(&self, rhs: &MultiPoly) {
        assert_eq!(self.arity, rhs.arity, "polynomial arity mismatch");
        assert_eq!(
            self.modulus,
            rhs.modulus,
            "polynomial modulus mismatch ({} vs {})",
            self.modulus.get(),
            rhs.modulus.get()
        );
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (exps, &coeff) in &rhs.terms {
            out.add_term(exps.clone(), coeff);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (exps, &coeff) in &rhs.terms {
            out.add_term(exps.clone(), -coeff);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(-self.modulus.one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    // Exponent vectors add under term multiplication.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_compatible(rhs);
        let mut out = MultiPoly::zero(self.arity, self.modulus);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }
}

/// Affine-linear polynomial `sum c_i x_i + c_0`.
///
/// The canonical representative of a nonconstant form scales the first
/// nonzero coefficient to 1. A form with all-zero coefficients is permitted
/// as a value but rejected wherever a linear factor is required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineLinear {
    coeffs: Vec<FieldElement>,
    constant: FieldElement,
}

impl AffineLinear {
    pub fn new(coeffs: Vec<FieldElement>, constant: FieldElement) -> Self {
        assert!(
            !coeffs.is_empty(),
            "affine form needs at least one variable"
        );
        AffineLinear { coeffs, constant }
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coeffs
    }

    #[inline]
    pub fn constant(&self) -> FieldElement {
        self.constant
    }

    /// Index of the first nonzero coefficient, `None` for constant forms.
    pub fn pivot(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        if point.len() != self.coeffs.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.coeffs.len(),
                got: point.len(),
            });
        }
        let mut acc = self.constant;
        for (c, p) in self.coeffs.iter().zip(point) {
            acc = acc + *c * *p;
        }
        Ok(acc)
    }

    /// Scales so the first nonzero coefficient is 1. Constant forms are
    /// returned unchanged.
    pub fn canonical(&self) -> AffineLinear {
        match self.pivot() {
            None => self.clone(),
            Some(i) => {
                let inv = self.coeffs[i].inverse().expect("pivot is nonzero");
                AffineLinear {
                    coeffs: self.coeffs.iter().map(|&c| c * inv).collect(),
                    constant: self.constant * inv,
                }
            }
        }
    }

    pub fn to_multipoly(&self) -> MultiPoly {
        let modulus = self.constant.modulus();
        let arity = self.coeffs.len();
        let mut terms = Vec::with_capacity(arity + 1);
        terms.push((vec![0u32; arity], self.constant));
        for (i, &c) in self.coeffs.iter().enumerate() {
            let mut exps = vec![0u32; arity];
            exps[i] = 1;
            terms.push((exps, c));
        }
        MultiPoly::from_terms(arity, modulus, terms)
    }

    /// The homogeneous part `self - self(0)` as a linear function, if the
    /// coefficient vector is nonzero.
    pub fn linear_part(&self) -> Result<LinearFunction, PolyError> {
        LinearFunction::new(self.coeffs.clone())
    }
}

/// Homogeneous linear function `sum c_i x_i` with a nonzero coefficient
/// vector. Canonical representatives scale the first nonzero coefficient
/// to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunction {
    coeffs: Vec<FieldElement>,
}

impl LinearFunction {
    pub fn new(coeffs: Vec<FieldElement>) -> Result<Self, PolyError> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(PolyError::ZeroFunction);
        }
        Ok(LinearFunction { coeffs })
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coeffs
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.coeffs[0].modulus()
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        if point.len() != self.coeffs.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.coeffs.len(),
                got: point.len(),
            });
        }
        let mut acc = self.modulus().zero();
        for (c, p) in self.coeffs.iter().zip(point) {
            acc = acc + *c * *p;
        }
        Ok(acc)
    }

    pub fn canonical(&self) -> LinearFunction {
        let i = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("linear function is nonzero");
        let inv = self.coeffs[i].inverse().expect("pivot is nonzero");
        LinearFunction {
            coeffs: self.coeffs.iter().map(|&c| c * inv).collect(),
        }
    }

    pub fn scale(&self, c: FieldElement) -> Result<LinearFunction, PolyError> {
        if c.is_zero() {
            return Err(PolyError::ZeroFunction);
        }
        Ok(LinearFunction {
            coeffs: self.coeffs.iter().map(|&v| v * c).collect(),
        })
    }
}

/// `prod_{a in A} (ell(x) - a)`: the degree-`|A|` polynomial vanishing
/// exactly on the points whose `ell`-value lies in `A`.
pub fn product_poly(values: &[FieldElement], ell: &LinearFunction) -> Result<MultiPoly, PolyError> {
    if values.is_empty() {
        return Err(PolyError::EmptySet);
    }
    let modulus = ell.modulus();
    let arity = ell.arity();
    debug_assert!((values.len() as u64) < modulus.get());
    let ell_poly = AffineLinear::new(ell.coefficients().to_vec(), modulus.zero()).to_multipoly();
    let mut acc = MultiPoly::constant(modulus.one(), arity);
    for &a in values {
        let factor = &ell_poly - &MultiPoly::constant(a, arity);
        acc = &acc * &factor;
    }
    Ok(acc)
}
