//! Exact arithmetic in prime fields `F_q` for moduli up to 62 bits.
//!
//! The 62-bit cap keeps every product inside a `u128` intermediate and every
//! sum inside a `u64`, so no operation ever wraps silently. Primality of the
//! modulus is established once, at construction, by a deterministic
//! Miller-Rabin check that is exact for all 64-bit integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Largest permitted modulus is `2^62 - 1`.
pub const MAX_MODULUS: u64 = (1 << 62) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldError {
    /// The requested modulus failed the primality check.
    NotPrime(u64),
    /// The requested modulus does not satisfy `2 <= q < 2^62`.
    ModulusOutOfRange(u64),
    /// Multiplicative inverse of zero requested.
    ZeroInverse,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(q) => write!(f, "modulus {} is not prime", q),
            FieldError::ModulusOutOfRange(q) => {
                write!(f, "modulus {} outside supported range [2, 2^62)", q)
            }
            FieldError::ZeroInverse => write!(f, "zero has no multiplicative inverse"),
        }
    }
}

impl std::error::Error for FieldError {}

/// A validated prime modulus `q` with `2 <= q < 2^62`.
///
/// Immutable after construction; cheap to copy and share.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    q: u64,
}

impl PrimeModulus {
    /// Validates the range and primality of `q`.
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if q < 2 || q > MAX_MODULUS {
            return Err(FieldError::ModulusOutOfRange(q));
        }
        if !check_prime(q) {
            return Err(FieldError::NotPrime(q));
        }
        Ok(PrimeModulus { q })
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.q
    }

    /// Canonically reduced element with the given representative.
    #[inline]
    pub fn element(self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.q,
            modulus: self,
        }
    }

    /// Element from a signed representative.
    #[inline]
    pub fn element_from_i64(self, value: i64) -> FieldElement {
        let q = self.q as i64;
        self.element(value.rem_euclid(q) as u64)
    }

    #[inline]
    pub fn zero(self) -> FieldElement {
        self.element(0)
    }

    #[inline]
    pub fn one(self) -> FieldElement {
        self.element(1)
    }

    // Raw residue helpers used by the dense kernels in `linalg`, where
    // carrying a `FieldElement` per entry would double the memory traffic.

    #[inline]
    pub(crate) fn add_raw(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub_raw(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub(crate) fn mul_raw(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    #[inline]
    pub(crate) fn neg_raw(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub(crate) fn pow_raw(self, base: u64, exp: u64) -> u64 {
        pow_mod(base % self.q, exp, self.q)
    }

    #[inline]
    pub(crate) fn inv_raw(self, a: u64) -> Result<u64, FieldError> {
        if a % self.q == 0 {
            return Err(FieldError::ZeroInverse);
        }
        // Fermat: a^(q-2) since q is prime.
        Ok(pow_mod(a % self.q, self.q - 2, self.q))
    }
}

/// A canonically reduced residue together with its modulus.
///
/// Arithmetic between elements of different moduli is a hard error (panic):
/// solver correctness depends on exactness, so mixing fields is treated as a
/// programming bug rather than something to reduce silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    modulus: PrimeModulus,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse; `Err(ZeroInverse)` for zero.
    pub fn inverse(self) -> Result<FieldElement, FieldError> {
        let v = self.modulus.inv_raw(self.value)?;
        Ok(FieldElement {
            value: v,
            modulus: self.modulus,
        })
    }

    /// `self^exp` by square-and-multiply; `0^0 = 1`.
    pub fn pow(self, exp: u64) -> FieldElement {
        FieldElement {
            value: self.modulus.pow_raw(self.value, exp),
            modulus: self.modulus,
        }
    }

    #[inline]
    fn check_same_modulus(self, other: FieldElement, op: &str) {
        assert!(
            self.modulus == other.modulus,
            "field {} between mismatched moduli {} and {}",
            op,
            self.modulus.get(),
            other.modulus.get()
        );
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.check_same_modulus(rhs, "addition");
        FieldElement {
            value: self.modulus.add_raw(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.check_same_modulus(rhs, "subtraction");
        FieldElement {
            value: self.modulus.sub_raw(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.check_same_modulus(rhs, "multiplication");
        FieldElement {
            value: self.modulus.mul_raw(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn neg(self) -> FieldElement {
        FieldElement {
            value: self.modulus.neg_raw(self.value),
            modulus: self.modulus,
        }
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality check, exact for all `u64` inputs.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to
/// have no strong pseudoprimes below 3.3 * 10^24, which covers the full
/// 64-bit range.
pub fn check_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
