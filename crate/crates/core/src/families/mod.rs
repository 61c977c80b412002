//! Linear combinations `Ψ(s) = [m^(−s)] Σ c_l ζ(s, l/m)` and the symmetric
//! families built from them.
//!
//! Every family is stored in the plain coefficient form (`terms`), with the
//! family tag remembering the parameters that produced it. Families with a
//! flow parameter can also be evaluated at a complex parameter value, which
//! the tracker uses to step around double zeros.

mod combination;
mod json;
pub mod symmetry;

use std::f64::consts::PI;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::Complex64;

pub use combination::{evaluate_combination, CombinationJet, CombinationSpec, Term};
pub use symmetry::{functional_equation_defect, symmetry_matrix, Parity, SymmetryMatrix};

/// (1 + √5)/2.
pub const GOLDEN: f64 = 1.618_033_988_749_895;

/// Largest accepted residual of a defining symmetry condition when a
/// family is built from user input.
pub const SYMMETRY_INPUT_TOL: f64 = 1e-9;

/// Residual threshold for null-space membership.
pub const NULL_SPACE_TOL: f64 = 1e-9;

/// Which combination a spec realises, with its live parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Generic,
    /// Odd m = 5 family with β on the symmetry circle.
    Psi5Odd { beta: Complex64 },
    /// Even m = 5 family on the unperturbed circle γ = 1 + √5·e^(iθ).
    Psi5EvenCircle { theta: f64 },
    /// Even m = 5 family with β = 1 + ε·e^(iφ).
    Psi5EvenPerturbed { epsilon: f64, phi: f64 },
    /// Even prime-modulus family with null-space direction X.
    PsiPrime {
        p: u32,
        epsilon: f64,
        phi: f64,
        x: Vec<f64>,
    },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Generic => "Generic",
            Family::Psi5Odd { .. } => "Psi5Odd",
            Family::Psi5EvenCircle { .. } => "Psi5EvenCircle",
            Family::Psi5EvenPerturbed { .. } => "Psi5EvenPerturbed",
            Family::PsiPrime { .. } => "PsiPrime",
        }
    }

    pub fn modulus(&self) -> Option<u32> {
        match self {
            Family::Generic => None,
            Family::Psi5Odd { .. }
            | Family::Psi5EvenCircle { .. }
            | Family::Psi5EvenPerturbed { .. } => Some(5),
            Family::PsiPrime { p, .. } => Some(*p),
        }
    }

    /// Current value of the flow parameter: the circle angle of β for the
    /// odd family, θ or φ for the even ones.
    pub fn flow_parameter(&self) -> Option<f64> {
        match self {
            Family::Generic => None,
            Family::Psi5Odd { beta } => Some(beta_circle_angle(*beta)),
            Family::Psi5EvenCircle { theta } => Some(*theta),
            Family::Psi5EvenPerturbed { phi, .. } | Family::PsiPrime { phi, .. } => Some(*phi),
        }
    }

    pub fn flow_parameter_name(&self) -> Option<&'static str> {
        match self {
            Family::Generic => None,
            Family::Psi5Odd { .. } => Some("beta_angle"),
            Family::Psi5EvenCircle { .. } => Some("theta"),
            Family::Psi5EvenPerturbed { .. } | Family::PsiPrime { .. } => Some("phi"),
        }
    }

    /// The same family moved to a new (real) flow-parameter value.
    pub fn with_flow_parameter(&self, param: f64) -> Result<Family> {
        Ok(match self {
            Family::Generic => return Err(Error::NoFlowParameter),
            Family::Psi5Odd { .. } => Family::Psi5Odd {
                beta: beta_circle_5odd(param),
            },
            Family::Psi5EvenCircle { .. } => Family::Psi5EvenCircle { theta: param },
            Family::Psi5EvenPerturbed { epsilon, .. } => Family::Psi5EvenPerturbed {
                epsilon: *epsilon,
                phi: param,
            },
            Family::PsiPrime { p, epsilon, x, .. } => Family::PsiPrime {
                p: *p,
                epsilon: *epsilon,
                phi: param,
                x: x.clone(),
            },
        })
    }

    /// Coefficients `c_l` and `∂c_l/∂param` at a possibly complex value of
    /// the flow parameter. All families carry the `m^(−s)` prefactor.
    pub fn flow_coefficients(&self, param: Complex64) -> Result<(Vec<Term>, Vec<Term>)> {
        let i: Complex64 = Complex::i();
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        let t = |l: u32, c: Complex64| Term { l, c };
        Ok(match self {
            Family::Generic => return Err(Error::NoFlowParameter),
            Family::Psi5Odd { .. } => {
                let (center, radius) = psi5_odd_circle();
                let rot = (i * param).exp() * radius;
                let beta = rot + center;
                let dbeta = i * rot;
                (
                    vec![t(1, one), t(2, beta), t(3, -beta), t(4, -one)],
                    vec![t(1, zero), t(2, dbeta), t(3, -dbeta), t(4, zero)],
                )
            }
            Family::Psi5EvenCircle { .. } => {
                let e = (i * param).exp() * 5f64.sqrt();
                (
                    vec![t(1, one), t(2, one), t(3, one), t(4, one), t(5, one + e)],
                    vec![t(1, zero), t(2, zero), t(3, zero), t(4, zero), t(5, i * e)],
                )
            }
            Family::Psi5EvenPerturbed { epsilon, .. } => {
                prime_family_coefficients(5, *epsilon, &[1.0, GOLDEN], param)
            }
            Family::PsiPrime { p, epsilon, x, .. } => {
                prime_family_coefficients(*p, *epsilon, x, param)
            }
        })
    }
}

/// Coefficients of
/// `(1 + e^(2iφ)·p^(1/2−s))·ζ(s) + ε·e^(iφ)·p^(−s)·g_p(s, X)` written in the
/// `p^(−s)·Σ c_l ζ(s, l/p)` form.
fn prime_family_coefficients(
    p: u32,
    epsilon: f64,
    x: &[f64],
    phi: Complex64,
) -> (Vec<Term>, Vec<Term>) {
    let i: Complex64 = Complex::i();
    let one = Complex::new(1.0, 0.0);
    let e1 = (i * phi).exp();
    let e2 = (i * phi * 2.0).exp() * (p as f64).sqrt();
    let half = (p - 1) / 2;
    let mut c = vec![one; p as usize];
    let mut d = vec![Complex::new(0.0, 0.0); p as usize];
    for k in 1..half {
        let pert = e1 * (epsilon * x[k as usize - 1]);
        for l in [k + 1, p - k - 1] {
            c[l as usize - 1] = one + pert;
            d[l as usize - 1] = i * pert;
        }
    }
    let last = e1 * (epsilon * x[half as usize - 1]);
    c[p as usize - 1] = one + e2 + last;
    d[p as usize - 1] = i * e2 * 2.0 + i * last;
    let terms = |v: Vec<Complex64>| {
        v.into_iter()
            .enumerate()
            .map(|(k, c)| Term { l: k as u32 + 1, c })
            .collect()
    };
    (terms(c), terms(d))
}

fn sin_pair() -> (f64, f64) {
    ((4.0 * PI / 5.0).sin(), (2.0 * PI / 5.0).sin())
}

/// Center (on the real axis) and radius of the circle of β values that make
/// the odd m = 5 combination symmetric.
///
/// With `a = sin(4π/5)`, `b = sin(2π/5)` and β = x + iy the condition reduces
/// to `(x + b/a)² + y² = 1 + (b/a)²`.
pub fn psi5_odd_circle() -> (f64, f64) {
    let (a, b) = sin_pair();
    let center = -b / a;
    (center, (1.0 + center * center).sqrt())
}

/// Residual `|sin(4π/5) − β·sin(2π/5) − β̄·(sin(2π/5) + β·sin(4π/5))|`.
pub fn psi5_odd_condition_residual(beta: Complex64) -> f64 {
    let (a, b) = sin_pair();
    (a - beta * b - beta.conj() * (b + beta * a)).norm()
}

/// Point of the β-circle at the given angle around its center.
pub fn beta_circle_5odd(angle: f64) -> Complex64 {
    let (center, radius) = psi5_odd_circle();
    Complex::from_polar(radius, angle) + center
}

/// Angle in [0, 2π) of β seen from the circle center.
pub fn beta_circle_angle(beta: Complex64) -> f64 {
    let (center, _) = psi5_odd_circle();
    (beta - center).arg().rem_euclid(2.0 * PI)
}

/// Circle angle at which β = +i; β = −i sits at 2π minus this angle.
pub fn beta_i_angle() -> f64 {
    beta_circle_angle(Complex::i())
}

/// `5^(−s)·(ζ(s,1/5) − ζ(s,4/5) + β·(ζ(s,2/5) − ζ(s,3/5)))`.
pub fn build_psi5_odd(beta: Complex64) -> Result<CombinationSpec> {
    let residual = psi5_odd_condition_residual(beta);
    if !(residual <= SYMMETRY_INPUT_TOL) {
        return Err(Error::NotSymmetric { residual });
    }
    let one = Complex::new(1.0, 0.0);
    CombinationSpec::with_family(
        5,
        true,
        vec![
            Term { l: 1, c: one },
            Term { l: 2, c: beta },
            Term { l: 3, c: -beta },
            Term { l: 4, c: -one },
        ],
        Family::Psi5Odd { beta },
    )
}

fn cos_pair() -> (f64, f64) {
    ((2.0 * PI / 5.0).cos(), (4.0 * PI / 5.0).cos())
}

/// β = 1 + ε·e^(iφ) and the γ that keeps the even m = 5 family symmetric.
pub fn gamma_from_beta_even5(epsilon: f64, phi: f64) -> (Complex64, Complex64) {
    let e1 = Complex::from_polar(1.0, phi);
    let beta = e1 * epsilon + 1.0;
    let gamma = Complex::from_polar(5f64.sqrt(), 2.0 * phi) + e1 * (epsilon * GOLDEN) + 1.0;
    (beta, gamma)
}

/// Larger residual of the two symmetry equations for the even m = 5
/// combination `5^(−s)(ζ(1/5) + ζ(4/5) + β(ζ(2/5) + ζ(3/5)) + γζ(s))`.
pub fn psi5_even_condition_residual(beta: Complex64, gamma: Complex64) -> f64 {
    let (c2, c4) = cos_pair();
    let shared = beta * c4 + c2 + gamma * 0.5;
    let r1 = beta * c2 + c4 + gamma * 0.5 - beta.conj() * shared;
    let r2 = beta + 1.0 + gamma * 0.5 - gamma.conj() * shared;
    r1.norm().max(r2.norm())
}

/// Even family on the circle β = 1, γ = 1 + √5·e^(iθ), which equals
/// `(1 + e^(iθ)·5^(1/2−s))·ζ(s)`.
pub fn build_psi5_even_circle(theta: f64) -> CombinationSpec {
    let family = Family::Psi5EvenCircle { theta };
    let (terms, _) = family
        .flow_coefficients(Complex::new(theta, 0.0))
        .expect("circle family has a flow parameter");
    CombinationSpec::with_family(5, true, terms, family).expect("valid m = 5 terms")
}

/// Two-parameter even m = 5 family, stored through β and γ of
/// [`gamma_from_beta_even5`].
pub fn build_psi_even5(epsilon: f64, phi: f64) -> Result<CombinationSpec> {
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be non-negative, got {epsilon}"
        )));
    }
    let (beta, gamma) = gamma_from_beta_even5(epsilon, phi);
    let one = Complex::new(1.0, 0.0);
    CombinationSpec::with_family(
        5,
        true,
        vec![
            Term { l: 1, c: one },
            Term { l: 2, c: beta },
            Term { l: 3, c: beta },
            Term { l: 4, c: one },
            Term { l: 5, c: gamma },
        ],
        Family::Psi5EvenPerturbed { epsilon, phi },
    )
}

/// The even real character mod 5 (β = −1, no ζ(s) admixture).
pub fn psi5_even_l_function() -> CombinationSpec {
    let one = Complex::new(1.0, 0.0);
    CombinationSpec::new(
        5,
        true,
        vec![
            Term { l: 1, c: one },
            Term { l: 2, c: -one },
            Term { l: 3, c: -one },
            Term { l: 4, c: one },
        ],
    )
    .expect("valid m = 5 terms")
}

/// Symmetric even family for a prime p with a unit null-space direction X.
pub fn build_psi_prime(p: u32, epsilon: f64, phi: f64, x: &[f64]) -> Result<CombinationSpec> {
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be non-negative, got {epsilon}"
        )));
    }
    let matrix = symmetry_matrix(p as u64)?;
    if x.len() != matrix.order() {
        return Err(Error::InvalidArgument(format!(
            "X must have {} components for p = {p}",
            matrix.order()
        )));
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!("X must be a unit vector (|X| = {norm})")));
    }
    let residual = matrix.apply_norm(x);
    if !(residual <= NULL_SPACE_TOL) {
        return Err(Error::NotInNullSpace { residual });
    }
    let family = Family::PsiPrime {
        p,
        epsilon,
        phi,
        x: x.to_vec(),
    };
    let (terms, _) = family.flow_coefficients(Complex::new(phi, 0.0))?;
    CombinationSpec::with_family(p, true, terms, family)
}

/// Analytic `∂Ψ/∂param` at fixed s for the spec's flow parameter.
pub fn combination_param_derivative(spec: &CombinationSpec, s: Complex64, tol: f64) -> Result<Complex64> {
    let param = spec.family.flow_parameter().ok_or(Error::NoFlowParameter)?;
    let jet = spec
        .family
        .flow_jet(s, Complex::new(param, 0.0), tol)?;
    Ok(jet.dparam)
}

impl Family {
    /// Ψ, ∂Ψ/∂s and ∂Ψ/∂param at a complex parameter value.
    pub fn flow_jet(&self, s: Complex64, param: Complex64, tol: f64) -> Result<CombinationJet> {
        let modulus = self.modulus().ok_or(Error::NoFlowParameter)?;
        let (terms, dterms) = self.flow_coefficients(param)?;
        combination::jet_with_param(modulus, true, &terms, Some(&dterms), s, tol)
    }
}
