use num_complex::Complex;

use super::Family;
use crate::error::{Error, Result};
use crate::zeta::{hurwitz_zeta_finite_part, EvalResult, POLE_EXCLUSION_RADIUS};
use crate::Complex64;

/// One summand `c·ζ(s, l/m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub l: u32,
    pub c: Complex64,
}

/// A concrete `Ψ(s) = [m^(−s)]·Σ c_l ζ(s, l/m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinationSpec {
    pub modulus: u32,
    /// Overall `m^(−s)` factor.
    pub prefactor: bool,
    pub terms: Vec<Term>,
    pub family: Family,
}

/// Value, s-derivative and (when a flow parameter exists) parameter
/// derivative of a combination at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombinationJet {
    pub value: Complex64,
    pub ds: Complex64,
    pub dparam: Complex64,
    pub est_abs_error: f64,
    pub ds_error: f64,
    pub dparam_error: f64,
}

fn validate_terms(modulus: u32, terms: &[Term]) -> Result<()> {
    if modulus == 0 {
        return Err(Error::InvalidArgument("modulus must be at least 1".into()));
    }
    if terms.is_empty() {
        return Err(Error::InvalidArgument("combination has no terms".into()));
    }
    let mut seen = vec![false; modulus as usize + 1];
    for t in terms {
        if t.l == 0 || t.l > modulus {
            return Err(Error::InvalidArgument(format!(
                "term index l = {} outside 1..={modulus}",
                t.l
            )));
        }
        if std::mem::replace(&mut seen[t.l as usize], true) {
            return Err(Error::InvalidArgument(format!("duplicate term l = {}", t.l)));
        }
        if !(t.c.re.is_finite() && t.c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
    }
    Ok(())
}

impl CombinationSpec {
    /// A generic combination.
    pub fn new(modulus: u32, prefactor: bool, terms: Vec<Term>) -> Result<Self> {
        Self::with_family(modulus, prefactor, terms, Family::Generic)
    }

    pub(crate) fn with_family(
        modulus: u32,
        prefactor: bool,
        terms: Vec<Term>,
        family: Family,
    ) -> Result<Self> {
        validate_terms(modulus, &terms)?;
        Ok(Self {
            modulus,
            prefactor,
            terms,
            family,
        })
    }

    /// Residue of Ψ at s = 1.
    pub fn pole_residue(&self) -> Complex64 {
        let sum: Complex64 = self.terms.iter().map(|t| t.c).sum();
        if self.prefactor {
            sum / self.modulus as f64
        } else {
            sum
        }
    }

    pub fn has_pole(&self) -> bool {
        let scale: f64 = self.terms.iter().map(|t| t.c.norm()).sum();
        self.pole_residue().norm() > 1e-13 * scale.max(1.0)
    }

    /// Ψ and ∂Ψ/∂s.
    pub fn jet(&self, s: Complex64, tol: f64) -> Result<CombinationJet> {
        jet_with_param(self.modulus, self.prefactor, &self.terms, None, s, tol)
    }

    pub fn evaluate(&self, s: Complex64, tol: f64) -> Result<EvalResult<f64>> {
        let jet = self.jet(s, tol)?;
        Ok(EvalResult {
            value: jet.value,
            est_abs_error: jet.est_abs_error,
        })
    }

    /// `(s − 1)·Ψ(s)` and its s-derivative; defined at s = 1.
    pub fn regularized_jet(&self, s: Complex64, tol: f64) -> Result<(Complex64, Complex64)> {
        let parts = finite_parts(self.modulus, &self.terms, s, tol)?;
        let u = s - 1.0;
        let residue: Complex64 = self.terms.iter().map(|t| t.c).sum();
        let (mut sum, mut sum_ds) = (Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
        for (t, (f, fd, _)) in self.terms.iter().zip(&parts) {
            sum += t.c * f;
            sum_ds += t.c * fd;
        }
        let inner = u * sum + residue;
        let inner_ds = sum + u * sum_ds;
        let (pre, pre_ds) = prefactor(self.modulus, self.prefactor, s);
        Ok((pre * inner, pre_ds * inner + pre * inner_ds))
    }
}

/// Evaluate Ψ(s) for a spec.
pub fn evaluate_combination(spec: &CombinationSpec, s: Complex64, tol: f64) -> Result<EvalResult<f64>> {
    spec.evaluate(s, tol)
}

fn prefactor(modulus: u32, on: bool, s: Complex64) -> (Complex64, Complex64) {
    if on {
        let lm = (modulus as f64).ln();
        let p = (-s * lm).exp();
        (p, -p * lm)
    } else {
        (Complex::new(1.0, 0.0), Complex::new(0.0, 0.0))
    }
}

fn finite_parts(
    modulus: u32,
    terms: &[Term],
    s: Complex64,
    tol: f64,
) -> Result<Vec<(Complex64, Complex64, f64)>> {
    terms
        .iter()
        .map(|t| {
            let jet = hurwitz_zeta_finite_part(s, t.l as f64 / modulus as f64, tol)?;
            Ok((
                jet.value.value,
                jet.ds.value,
                jet.value.est_abs_error + jet.ds.est_abs_error,
            ))
        })
        .collect()
}

/// Shared evaluator: Σ c_l ζ(s, l/m) through the finite parts, so that the
/// pole cancels exactly when Σ c_l = 0.
pub(crate) fn jet_with_param(
    modulus: u32,
    prefactor_on: bool,
    terms: &[Term],
    dterms: Option<&[Term]>,
    s: Complex64,
    tol: f64,
) -> Result<CombinationJet> {
    let parts = finite_parts(modulus, terms, s, tol)?;
    let u = s - 1.0;
    let scale: f64 = terms.iter().map(|t| t.c.norm()).sum::<f64>().max(1.0);
    let residue: Complex64 = terms.iter().map(|t| t.c).sum();
    let zero = Complex::new(0.0, 0.0);
    let (mut sum, mut sum_ds, mut err) = (zero, zero, 0.0);
    for (t, (f, fd, e)) in terms.iter().zip(&parts) {
        sum += t.c * f;
        sum_ds += t.c * fd;
        err += t.c.norm() * e;
    }
    let pole_free = residue.norm() <= 1e-13 * scale;
    if !pole_free {
        if u.norm() < POLE_EXCLUSION_RADIUS {
            return Err(Error::PoleAtOne { distance: u.norm() });
        }
        let inv = u.inv();
        sum += residue * inv;
        sum_ds -= residue * inv * inv;
    }
    let mut dsum = zero;
    let mut derr = 0.0;
    if let Some(dterms) = dterms {
        let dres: Complex64 = dterms.iter().map(|t| t.c).sum();
        debug_assert_eq!(dterms.len(), terms.len());
        for (t, (f, _, e)) in dterms.iter().zip(&parts) {
            dsum += t.c * f;
            derr += t.c.norm() * e;
        }
        if dres.norm() > 0.0 {
            if u.norm() < POLE_EXCLUSION_RADIUS {
                return Err(Error::PoleAtOne { distance: u.norm() });
            }
            dsum += dres / u;
        }
    }
    let (pre, pre_ds) = prefactor(modulus, prefactor_on, s);
    let log_m = if prefactor_on { (modulus as f64).ln() } else { 0.0 };
    let value = pre * sum;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(CombinationJet {
        value,
        ds: pre_ds * sum + pre * sum_ds,
        dparam: pre * dsum,
        est_abs_error: err * pre.norm(),
        ds_error: err * pre.norm() * (1.0 + log_m),
        dparam_error: derr * pre.norm(),
    })
}
