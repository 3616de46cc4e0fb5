//! Free probability transform calculus on truncated power series.
//!
//! Moment sequences of laws on the half-line are converted into the
//! moment generating function `Ψ`, its compositional inverse, the `S`, `Σ`,
//! `𝓡` and `η` transforms and the free/boolean cumulants. Free additive,
//! free multiplicative and boolean convolutions are computed exactly on the
//! rational backend, which is what the limit-theorem experiments in
//! [`limits`] are built on. [`special`] holds the floating point side:
//! Lambert W, quadrature, the Lévy measure of the free limit law and the
//! density of the boolean limit law.

pub mod convolution;
pub mod error;
pub mod limits;
pub mod oracle;
pub mod scalar;
pub mod series;
pub mod special;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{rat, Rational, Scalar};
pub use series::TruncSeries;
pub use transforms::{CumulantKind, CumulantSeq, MomentSeq};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 8;

/// Largest truncation order accepted by moment-level routines.
pub const MAX_ORDER: usize = 24;
