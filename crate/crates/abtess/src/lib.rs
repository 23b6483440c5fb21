//! Matrix calculus over (αβ)-tessarines: a commutative four-dimensional
//! hypercomplex algebra with units `i² = α`, `j² = β`, `k = ij`,
//! parameterized by `α ∈ ℝ∖{0}`, `β > 0`.
//!
//! The idempotent units `w₁ = (√β + j)/(2√β)`, `w₂ = (√β − j)/(2√β)`
//! split every element into independent channels — two complex channels
//! for `α < 0`, four real channels for `α > 0` — and multiplication acts
//! channelwise. All matrix algorithms here exploit that: factor the
//! channels with ordinary real/complex kernels, recombine entrywise.
//!
//! Provided operations: scalar algebra with conjugations and ordering,
//! matrix inversion and square roots, pivoted LU with the
//! signature-table determinant, eigendecomposition, the power method,
//! SVD with rank-k approximation and pseudoinverse, least squares, and a
//! sequential solver for Hermitian-Toeplitz Gram systems.
//!
//! ```
//! use abtess::{Params, Tessarine};
//!
//! let p = Params::new(-1.0, 1.0).unwrap();
//! let x = Tessarine::new(3.0, 0.0, 1.0, 0.0);
//! let inv = x.inverse(p).unwrap();
//! assert!((x.mul(&inv, p) - Tessarine::ONE).max_abs() < 1e-12);
//! ```

pub mod camat;
mod dense;
pub mod error;
pub mod factor;
pub mod gscalar;
pub mod leastsq;
pub mod matrix;
pub mod params;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use gscalar::{equiv_tessarine, equiv_tessarine_back, GTessarine};
pub use matrix::{GTMat, TMat, TVec};
pub use num_complex;
pub use params::Params;
pub use scalar::{special_units, AlphaComplex, Axis, ChannelSet, Tessarine};
