//! Dense univariate polynomials over `F_q` and root finding.
//!
//! Roots are found Cantor-Zassenhaus style: `gcd(f, t^q - t)` isolates the
//! product of the distinct linear factors, which is then split by randomized
//! quadratic-residue probes. Expected cost is polynomial in `deg f` and
//! `log q`.

use rand::Rng;

use crate::ff::{FieldElement, PrimeModulus};
use crate::poly::PolyError;

/// Coefficients lowest-degree first; the zero polynomial stores no
/// coefficients and has degree `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    modulus: PrimeModulus,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn zero(modulus: PrimeModulus) -> Self {
        UniPoly {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        let mut p = UniPoly::zero(c.modulus());
        if !c.is_zero() {
            p.coeffs.push(c);
        }
        p
    }

    /// The monomial `t`.
    pub fn x(modulus: PrimeModulus) -> Self {
        UniPoly {
            modulus,
            coeffs: vec![modulus.zero(), modulus.one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<FieldElement>) -> Self {
        assert!(!coeffs.is_empty(), "use UniPoly::zero for the empty case");
        let modulus = coeffs[0].modulus();
        let mut p = UniPoly { modulus, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coefficient(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .copied()
            .unwrap_or_else(|| self.modulus.zero())
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn evaluate(&self, t: FieldElement) -> FieldElement {
        // Horner.
        let mut acc = self.modulus.zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn scale(&self, c: FieldElement) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero(self.modulus);
        }
        UniPoly {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|&v| v * c).collect(),
        }
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(lead) => self.scale(lead.inverse().expect("leading coefficient is nonzero")),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        if self.degree().map_or(true, |d| d < dd) {
            return (UniPoly::zero(self.modulus), self.clone());
        }
        let lead_inv = divisor
            .leading()
            .unwrap()
            .inverse()
            .expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.modulus.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let factor = rem[k] * lead_inv;
            if factor.is_zero() {
                continue;
            }
            quot[k - dd] = factor;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = rem[k - dd + i] - factor * dc;
            }
        }
        rem.truncate(dd);
        let mut q = UniPoly {
            modulus: self.modulus,
            coeffs: quot,
        };
        q.trim();
        let mut r = UniPoly {
            modulus: self.modulus,
            coeffs: rem,
        };
        r.trim();
        (q, r)
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^exp mod modulus_poly` by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u64, modulus_poly: &UniPoly) -> UniPoly {
        assert!(
            modulus_poly.degree().map_or(false, |d| d >= 1),
            "polynomial modulus must have degree >= 1"
        );
        let mut base = self.rem(modulus_poly);
        let mut acc = UniPoly::constant(self.modulus.one()).rem(modulus_poly);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = (&acc * &base).rem(modulus_poly);
            }
            base = (&base * &base).rem(modulus_poly);
            exp >>= 1;
        }
        acc
    }

    /// The set `{t : self(t) = 0}`, each root reported once.
    pub fn roots<R: Rng>(&self, rng: &mut R) -> Result<Vec<FieldElement>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let q = self.modulus.get();
        let mut roots = if q == 2 {
            // The even prime: residue probes need odd q, scanning is exact.
            (0..2)
                .map(|v| self.modulus.element(v))
                .filter(|&t| self.evaluate(t).is_zero())
                .collect()
        } else {
            let x = UniPoly::x(self.modulus);
            let xq = x.pow_mod(q, self);
            let product_of_roots = self.gcd(&(&xq - &x));
            let mut roots = Vec::new();
            if product_of_roots.degree().map_or(false, |d| d >= 1) {
                split_distinct_linear(&product_of_roots, rng, &mut roots);
            }
            roots
        };
        roots.sort_by_key(|r| r.value());
        Ok(roots)
    }
}

/// Equal-degree splitting specialized to products of distinct linear
/// factors: `gcd(g, (t+a)^((q-1)/2) - 1)` separates roots by the quadratic
/// character of `t + a`, which differs for some pair of roots for at least
/// half of the shifts `a`.
fn split_distinct_linear<R: Rng>(g: &UniPoly, rng: &mut R, roots: &mut Vec<FieldElement>) {
    let modulus = g.modulus();
    let q = modulus.get();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            // monic t + c0 has root -c0
            roots.push(-g.coefficient(0));
        }
        Some(_) => loop {
            let a = modulus.element(rng.gen_range(0..q));
            let shifted = UniPoly::from_coeffs(vec![a, modulus.one()]);
            let probe = shifted.pow_mod((q - 1) / 2, g);
            let h = &probe - &UniPoly::constant(modulus.one());
            let d = g.gcd(&h);
            if let Some(dd) = d.degree() {
                if dd >= 1 && dd < g.degree().unwrap() {
                    let (quot, rem) = g.div_rem(&d);
                    debug_assert!(rem.is_zero());
                    split_distinct_linear(&d, rng, roots);
                    split_distinct_linear(&quot.monic(), rng, roots);
                    return;
                }
            }
        },
    }
}

impl std::ops::Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.modulus, rhs.modulus, "polynomial modulus mismatch");
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coefficient(i) + rhs.coefficient(i))
            .collect();
        let mut p = UniPoly {
            modulus: self.modulus,
            coeffs,
        };
        p.trim();
        p
    }
}

impl std::ops::Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.modulus, rhs.modulus, "polynomial modulus mismatch");
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coefficient(i) - rhs.coefficient(i))
            .collect();
        let mut p = UniPoly {
            modulus: self.modulus,
            coeffs,
        };
        p.trim();
        p
    }
}

impl std::ops::Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.modulus, rhs.modulus, "polynomial modulus mismatch");
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.modulus);
        }
        let mut coeffs = vec![self.modulus.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        let mut p = UniPoly {
            modulus: self.modulus,
            coeffs,
        };
        p.trim();
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn f(q: u64) -> PrimeModulus {
        PrimeModulus::new(q).unwrap()
    }

    fn poly(m: PrimeModulus, coeffs: &[u64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| m.element(c)).collect())
    }

    /// Exhaustive scan oracle.
    fn scan_roots(p: &UniPoly) -> Vec<u64> {
        let q = p.modulus().get();
        (0..q)
            .filter(|&t| p.evaluate(p.modulus().element(t)).is_zero())
            .collect()
    }

    #[test]
    fn division_and_gcd() {
        let f7 = f(7);
        let a = poly(f7, &[6, 0, 1]); // t^2 - 1
        let b = poly(f7, &[6, 1]); // t - 1
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, poly(f7, &[1, 1])); // t + 1
        assert_eq!(a.gcd(&b), b.monic());
    }

    #[test]
    fn roots_examples() {
        let f7 = f(7);
        let mut rng = ChaCha20Rng::seed_from_u64(5);

        // t^2 - 1 over F_7: exhaustive scan gives {1, 6}.
        let p = poly(f7, &[6, 0, 1]);
        assert_eq!(scan_roots(&p), vec![1, 6]);
        let roots: Vec<u64> = p
            .roots(&mut rng)
            .unwrap()
            .iter()
            .map(|r| r.value())
            .collect();
        assert_eq!(roots, vec![1, 6]);

        // t^2 + 1 over F_7: -1 is a non-residue mod 7, no roots.
        let p = poly(f7, &[1, 0, 1]);
        assert!(scan_roots(&p).is_empty());
        assert!(p.roots(&mut rng).unwrap().is_empty());

        // t over any field: root 0.
        let p = UniPoly::x(f7);
        let roots: Vec<u64> = p
            .roots(&mut rng)
            .unwrap()
            .iter()
            .map(|r| r.value())
            .collect();
        assert_eq!(roots, vec![0]);

        assert_eq!(
            UniPoly::zero(f7).roots(&mut rng),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn roots_match_scan_across_small_fields() {
        let mut rng = ChaCha20Rng::seed_from_u64(17);
        for q in [2u64, 3, 5, 7, 11, 31, 101] {
            let m = f(q);
            for _ in 0..60 {
                let deg = rng.gen_range(1..=6usize);
                let mut coeffs: Vec<FieldElement> =
                    (0..=deg).map(|_| m.element(rng.gen_range(0..q))).collect();
                let last = coeffs.len() - 1;
                if coeffs[last].is_zero() {
                    coeffs[last] = m.one();
                }
                let p = UniPoly::from_coeffs(coeffs);
                let got: Vec<u64> = p
                    .roots(&mut rng)
                    .unwrap()
                    .iter()
                    .map(|r| r.value())
                    .collect();
                assert_eq!(got, scan_roots(&p), "q={} p={:?}", q, p);
            }
        }
    }

    #[test]
    fn roots_with_multiplicity_and_large_field() {
        let m = f(1_000_003);
        let mut rng = ChaCha20Rng::seed_from_u64(23);
        // (t - 3)^2 (t - 17): distinct root set {3, 17}.
        let a = poly(m, &[1_000_000, 1]); // t - 3
        let b = poly(m, &[1_000_003 - 17, 1]); // t - 17
        let p = &(&a * &a) * &b;
        let got: Vec<u64> = p
            .roots(&mut rng)
            .unwrap()
            .iter()
            .map(|r| r.value())
            .collect();
        assert_eq!(got, vec![3, 17]);
    }
}
