//! Numerical toolkit for Hurwitz zeta functions, their symmetric linear
//! combinations, and the motion of their zeros under parameter changes.
//!
//! * [`zeta`]: Euler–Maclaurin evaluation of `ζ(s, α)` and its derivatives,
//!   generic over the scalar type.
//! * [`characters`]: Dirichlet characters for prime moduli.
//! * [`families`]: linear combinations `Σ c_l ζ(s, l/m)` and the
//!   one- and two-parameter symmetric families built from them.
//! * [`finder`]: argument-principle zero location and Newton refinement.
//! * [`tracker`]: predictor–corrector continuation of zeros.

pub mod characters;
pub mod error;
pub mod families;
pub mod finder;
pub mod gamma;
pub mod output;
pub mod scalar;
pub mod tracker;
pub mod zeta;

pub use error::{Error, Result};
pub use scalar::Real;
pub use zeta::{EvalResult, ZetaJet, DEFAULT_TOL, MIN_ALPHA, POLE_EXCLUSION_RADIUS};

/// Double-precision complex number, the working scalar of the crate.
pub type Complex64 = num_complex::Complex<f64>;
/// A point `s = σ + it` of the complex plane.
pub type ComplexPoint = Complex64;
/// Single-precision complex point.
pub type ComplexPoint32 = num_complex::Complex<f32>;
/// Double-precision evaluation result.
pub type EvalResult64 = EvalResult<f64>;
pub type ZetaJet64 = ZetaJet<f64>;
pub type CharacterTable64 = characters::CharacterTable<f64>;
