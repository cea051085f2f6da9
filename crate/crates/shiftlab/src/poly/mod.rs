//! Polynomials over a prime field: sparse multivariate arithmetic, dense
//! univariate arithmetic with root finding, and randomized extraction of
//! affine-linear factors.

mod factor;
mod multi;
mod uni;

pub use factor::extract_linear_factors;
pub use multi::{product_poly, AffineLinear, LinearFunction, MultiPoly};
pub use uni::UniPoly;

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyError {
    /// A point or coefficient vector has the wrong number of coordinates.
    ArityMismatch { expected: usize, got: usize },
    /// Line restriction along the zero direction.
    ZeroDirection,
    /// Division by an affine polynomial with no linear part.
    ConstantDivisor,
    /// `product_poly` over an empty value set.
    EmptySet,
    /// Root finding on the zero polynomial.
    ZeroPolynomial,
    /// A linear function must have at least one nonzero coefficient.
    ZeroFunction,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ArityMismatch { expected, got } => {
                write!(f, "arity mismatch: expected {}, got {}", expected, got)
            }
            PolyError::ZeroDirection => write!(f, "line direction must be nonzero"),
            PolyError::ConstantDivisor => {
                write!(f, "divisor has no linear part")
            }
            PolyError::EmptySet => write!(f, "value set must be nonempty"),
            PolyError::ZeroPolynomial => write!(f, "zero polynomial has no root set"),
            PolyError::ZeroFunction => write!(f, "linear function must be nonzero"),
        }
    }
}

impl std::error::Error for PolyError {}
