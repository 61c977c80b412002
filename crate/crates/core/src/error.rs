use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at s = 1: |s - 1| = {distance:e} is inside the exclusion radius")]
    PoleAtOne { distance: f64 },

    #[error("tolerance {requested:e} unreachable (best achievable {achieved:e})")]
    ToleranceUnreachable { requested: f64, achieved: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not a prime in the supported range")]
    NotPrime(u64),

    #[error("coefficients violate the symmetry condition (residual {residual:e})")]
    NotSymmetric { residual: f64 },

    #[error("vector is not in the null space of the symmetry matrix (|M X| = {residual:e})")]
    NotInNullSpace { residual: f64 },

    #[error("symmetry matrix for p = {p} failed the functional-equation check (defect {defect:e})")]
    ConstructionUnvalidated { p: u64, defect: f64 },

    #[error("combination has no flow parameter")]
    NoFlowParameter,

    #[error("contour keeps hitting a zero after {attempts} nudges")]
    BoundaryZero { attempts: usize },

    #[error("rectangle encloses the pole at s = 1 and the function has no regularized form")]
    PoleInside,

    #[error("Newton iteration from {start_re}{start_im:+}i did not converge (residual {residual:e})")]
    NewtonDiverged {
        start_re: f64,
        start_im: f64,
        residual: f64,
    },

    #[error("lost the zero near parameter {param}")]
    LostZero { param: f64 },

    #[error("coefficient pole E = -1 crossed at phi = {phi}")]
    CoefficientPole { phi: f64 },

    #[error("operation requires a Hurwitz (alpha) flow")]
    WrongFlow,

    #[error("non-finite value encountered")]
    NonFinite,
}

pub type Result<T> = std::result::Result<T, Error>;
