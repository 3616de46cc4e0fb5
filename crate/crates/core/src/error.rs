use thiserror::Error;

/// Failures raised by series, transform, convolution and special-function routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("inner series must have zero constant term")]
    NonzeroConstantTerm,
    #[error("series has zero linear term and cannot be reverted")]
    ZeroLinearTerm,
    #[error("logarithm requires constant term 1, got {0}")]
    LogConstantTerm(String),
    #[error("constant term must be positive")]
    NonPositiveConstantTerm,
    #[error("{base}^{exponent} is not representable in this scalar field")]
    NotRepresentable { base: String, exponent: String },
    #[error("moment sequence must start with m0 = 1")]
    InvalidNormalization,
    #[error("first moment must be positive (law must not be delta_0)")]
    ZeroFirstMoment,
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("insufficient order: need {needed}, have {available}")]
    InsufficientOrder { needed: usize, available: usize },
    #[error("order {0} exceeds the supported cap of {cap}", cap = crate::MAX_ORDER)]
    OrderCap(usize),
    #[error("{op}: power {t} outside the admissible range ({range})")]
    PowerOutOfRange {
        op: &'static str,
        t: String,
        range: &'static str,
    },
    #[error("parameter {name} must satisfy {constraint}, got {value}")]
    Parameter {
        name: &'static str,
        constraint: &'static str,
        value: String,
    },
    #[error("degenerate law: variance ratio alpha = {0}; the limit theorems need a nondegenerate law with finite second moment")]
    DegenerateLaw(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cumulant kind mismatch: expected {expected}")]
    CumulantKind { expected: &'static str },
    #[error("root finding failed: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
