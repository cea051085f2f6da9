//! Learning-from-subset solving over prime fields, plus a desk-scale
//! simulation harness for the hidden-multiple-shift problem.
//!
//! The crate is layered bottom-up:
//!
//! - [`ff`]: exact arithmetic in `F_q` for `q` up to 62 bits;
//! - [`poly`]: sparse multivariate and dense univariate polynomials,
//!   root finding, and affine-linear factor extraction;
//! - [`linalg`]: dense elimination, rank, kernels and solving over `F_q`;
//! - [`lfs`]: the subset-distribution sampler and the linearization solver;
//! - [`qsim`]: complex statevectors, Fourier transforms over `Z_q`,
//!   subspace measurements and Vandermonde-Gram determinants;
//! - [`hms`]: hidden-multiple-shift instances, the reduction pipeline and
//!   the Fourier-sampling baseline;
//! - [`checks`]: numerical verification suites for the bounds the solvers
//!   rely on;
//! - [`experiments`]: seeded, reproducible experiment runners and reports;
//! - [`samples`]: the sample-set file format.
//!
//! # Example
//!
//! Plant a hidden linear function, sample from a two-value subset
//! distribution, and recover the function up to a scalar:
//!
//! ```
//! use rand::SeedableRng;
//! use rand_chacha::ChaCha20Rng;
//! use shiftlab::ff::PrimeModulus;
//! use shiftlab::lfs::{
//!     required_sample_count, scalar_equivalent, solve_lfs, SubsetDistribution,
//! };
//! use shiftlab::poly::LinearFunction;
//!
//! let modulus = PrimeModulus::new(101).unwrap();
//! let hidden = LinearFunction::new(vec![
//!     modulus.element(2),
//!     modulus.element(7),
//!     modulus.element(1),
//! ])
//! .unwrap();
//! let values = vec![modulus.element(1), modulus.element(3)];
//! let dist = SubsetDistribution::uniform(values.clone(), hidden.clone()).unwrap();
//!
//! let mut rng = ChaCha20Rng::seed_from_u64(1);
//! let budget = required_sample_count(3, 2).unwrap();
//! let samples = dist.sample_many(budget.total as usize, &mut rng);
//! let recovered = solve_lfs(&values, &samples, &mut rng).unwrap();
//! assert!(scalar_equivalent(&hidden, &recovered).is_some());
//! ```

pub mod checks;
pub mod experiments;
pub mod ff;
pub mod hms;
pub mod lfs;
pub mod linalg;
pub mod poly;
pub mod qsim;
pub mod samples;
