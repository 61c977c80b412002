use crate::error::{Error, Result};
use crate::families::{CombinationSpec, Family};
use crate::zeta::{hurwitz_jet, hurwitz_zeta_finite_part};
use crate::Complex64;

/// A function the finder can work with: value and derivative at a point,
/// plus knowledge of a possible simple pole at s = 1.
pub trait Analytic: Sync {
    /// `(f(s), f'(s))`.
    fn jet(&self, s: Complex64) -> Result<(Complex64, Complex64)>;

    /// Residue of the pole at s = 1 (zero when there is none).
    fn pole_residue(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    /// `((s − 1)·f(s), d/ds)`, defined at s = 1.
    fn regularized_jet(&self, _s: Complex64) -> Result<(Complex64, Complex64)> {
        Err(Error::PoleInside)
    }

    fn label(&self) -> String;

    fn has_pole(&self) -> bool {
        self.pole_residue().norm() > 1e-13
    }
}

/// `ζ(s, α)`.
#[derive(Debug, Clone, Copy)]
pub struct HurwitzFunction {
    pub alpha: f64,
    pub tol: f64,
}

impl HurwitzFunction {
    pub fn new(alpha: f64, tol: f64) -> Self {
        Self { alpha, tol }
    }
}

impl Analytic for HurwitzFunction {
    fn jet(&self, s: Complex64) -> Result<(Complex64, Complex64)> {
        let j = hurwitz_jet(s, self.alpha, self.tol)?;
        Ok((j.value.value, j.ds.value))
    }

    fn pole_residue(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn regularized_jet(&self, s: Complex64) -> Result<(Complex64, Complex64)> {
        let f = hurwitz_zeta_finite_part(s, self.alpha, self.tol)?;
        let u = s - 1.0;
        Ok((u * f.value.value + 1.0, f.value.value + u * f.ds.value))
    }

    fn label(&self) -> String {
        format!("hurwitz(alpha={})", self.alpha)
    }
}

/// A combination spec evaluated at a fixed tolerance.
#[derive(Debug, Clone)]
pub struct SpecFunction {
    pub spec: CombinationSpec,
    pub tol: f64,
}

impl SpecFunction {
    pub fn new(spec: CombinationSpec, tol: f64) -> Self {
        Self { spec, tol }
    }

    /// The family's combination at a possibly complex flow parameter.
    pub fn from_family(family: &Family, param: Complex64, tol: f64) -> Result<Self> {
        let modulus = family.modulus().ok_or(Error::NoFlowParameter)?;
        let (terms, _) = family.flow_coefficients(param)?;
        Ok(Self::new(CombinationSpec::new(modulus, true, terms)?, tol))
    }
}

impl Analytic for SpecFunction {
    fn jet(&self, s: Complex64) -> Result<(Complex64, Complex64)> {
        let j = self.spec.jet(s, self.tol)?;
        Ok((j.value, j.ds))
    }

    fn pole_residue(&self) -> Complex64 {
        self.spec.pole_residue()
    }

    fn has_pole(&self) -> bool {
        self.spec.has_pole()
    }

    fn regularized_jet(&self, s: Complex64) -> Result<(Complex64, Complex64)> {
        self.spec.regularized_jet(s, self.tol)
    }

    fn label(&self) -> String {
        format!("{}(m={})", self.spec.family.tag(), self.spec.modulus)
    }
}

/// An entire function given by a closure returning `(f, f')`.
pub struct ClosureFunction<F> {
    pub f: F,
    pub label: String,
}

impl<F> ClosureFunction<F>
where
    F: Fn(Complex64) -> (Complex64, Complex64) + Sync,
{
    pub fn new(label: &str, f: F) -> Self {
        Self {
            f,
            label: label.to_string(),
        }
    }
}

impl<F> Analytic for ClosureFunction<F>
where
    F: Fn(Complex64) -> (Complex64, Complex64) + Sync,
{
    fn jet(&self, s: Complex64) -> Result<(Complex64, Complex64)> {
        let (v, d) = (self.f)(s);
        if !(v.re.is_finite() && v.im.is_finite() && d.re.is_finite() && d.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok((v, d))
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// `(s − 1)·f(s)` viewed as a function in its own right.
pub struct Regularized<'a, F: ?Sized>(pub &'a F);

impl<F: Analytic + ?Sized> Analytic for Regularized<'_, F> {
    fn jet(&self, s: Complex64) -> Result<(Complex64, Complex64)> {
        self.0.regularized_jet(s)
    }

    fn label(&self) -> String {
        format!("(s-1)*{}", self.0.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regularized_hurwitz_matches_product() {
        let f = HurwitzFunction::new(0.3, 1e-12);
        let s = Complex64::new(0.2, 3.0);
        let (v, d) = f.jet(s).unwrap();
        let (rv, rd) = Regularized(&f).jet(s).unwrap();
        assert!((rv - (s - 1.0) * v).norm() < 1e-12);
        assert!((rd - (v + (s - 1.0) * d)).norm() < 1e-11);
        let (at_one, _) = f.regularized_jet(Complex64::new(1.0, 0.0)).unwrap();
        assert!((at_one - 1.0).norm() < 1e-14);
    }

    #[test]
    fn closure_rejects_non_finite() {
        let f = ClosureFunction::new("bad", |_s: Complex64| (Complex64::new(f64::NAN, 0.0), Complex64::new(1.0, 0.0)));
        assert!(matches!(f.jet(Complex64::new(0.0, 0.0)), Err(Error::NonFinite)));
        assert!(!f.has_pole());
    }
}
