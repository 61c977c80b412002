use crate::error::{Error, Result};
use crate::families::Family;
use crate::finder::Analytic;
use crate::zeta::{finite_part_complex_shift, jet_complex_shift, MIN_ALPHA};
use crate::Complex64;

/// `(Ψ, ∂Ψ/∂s, ∂Ψ/∂param)` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowJet {
    pub value: Complex64,
    pub ds: Complex64,
    pub dparam: Complex64,
}

/// A one-parameter family of functions whose zeros are followed.
/// The parameter may carry a small imaginary offset.
pub trait Flow: Sync {
    fn jet(&self, s: Complex64, param: Complex64) -> Result<FlowJet>;
    fn parameter_name(&self) -> &'static str;
    fn label(&self) -> String;

    /// Whether samples carry the scaled ordinate of the counting formula.
    fn is_hurwitz(&self) -> bool {
        false
    }

    /// Whether zeros come in pairs `(z, 1 − z̄)` at real parameters.
    fn is_symmetric(&self) -> bool {
        false
    }

    /// Velocity `dz/dparam = −Ψ_param/Ψ'` and the jet it came from.
    fn velocity(&self, s: Complex64, param: Complex64) -> Result<(Complex64, FlowJet)> {
        let j = self.jet(s, param)?;
        if j.ds.norm() == 0.0 {
            return Err(Error::NonFinite);
        }
        let v = -j.dparam / j.ds;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok((v, j))
    }
}

/// `ζ(s, α)` with α as the flow parameter.
#[derive(Debug, Clone, Copy)]
pub struct HurwitzFlow {
    pub tol: f64,
}

impl Flow for HurwitzFlow {
    fn jet(&self, s: Complex64, alpha: Complex64) -> Result<FlowJet> {
        if !(alpha.re >= MIN_ALPHA && alpha.re <= 1.0 + 1e-12) {
            return Err(Error::InvalidArgument(format!(
                "alpha {alpha} outside the supported range"
            )));
        }
        let j = jet_complex_shift(s, alpha, self.tol)?;
        // −s·ζ(s + 1, α) = −1 − s·(ζ(s + 1, α) − 1/s), regular at s = 0
        let shifted = finite_part_complex_shift(s + 1.0, alpha, self.tol)?;
        Ok(FlowJet {
            value: j.value.value,
            ds: j.ds.value,
            dparam: -1.0 - s * shifted.value.value,
        })
    }

    fn parameter_name(&self) -> &'static str {
        "alpha"
    }

    fn label(&self) -> String {
        "hurwitz".into()
    }

    fn is_hurwitz(&self) -> bool {
        true
    }
}

/// A symmetric family moved along its flow parameter.
#[derive(Debug, Clone)]
pub struct FamilyFlow {
    pub family: Family,
    pub tol: f64,
}

impl FamilyFlow {
    pub fn new(family: Family, tol: f64) -> Result<Self> {
        if family.flow_parameter().is_none() {
            return Err(Error::NoFlowParameter);
        }
        Ok(Self { family, tol })
    }
}

impl Flow for FamilyFlow {
    fn jet(&self, s: Complex64, param: Complex64) -> Result<FlowJet> {
        let j = self.family.flow_jet(s, param, self.tol)?;
        Ok(FlowJet {
            value: j.value,
            ds: j.ds,
            dparam: j.dparam,
        })
    }

    fn parameter_name(&self) -> &'static str {
        self.family.flow_parameter_name().unwrap_or("param")
    }

    fn label(&self) -> String {
        self.family.tag().into()
    }

    fn is_symmetric(&self) -> bool {
        !matches!(self.family, Family::Generic)
    }
}

/// The flow frozen at one parameter value, as a finder function.
pub struct FlowSlice<'a, F: ?Sized> {
    pub flow: &'a F,
    pub param: Complex64,
}

impl<F: Flow + ?Sized> Analytic for FlowSlice<'_, F> {
    fn jet(&self, s: Complex64) -> Result<(Complex64, Complex64)> {
        let j = self.flow.jet(s, self.param)?;
        Ok((j.value, j.ds))
    }

    fn label(&self) -> String {
        format!("{}@{}", self.flow.label(), self.param)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::{hurwitz_zeta, hurwitz_zeta_alpha_derivative};

    #[test]
    fn hurwitz_parameter_derivative() {
        let f = HurwitzFlow { tol: 1e-12 };
        let s = Complex64::new(0.3, 12.0);
        let j = f.jet(s, Complex64::new(0.4, 0.0)).unwrap();
        let d = hurwitz_zeta_alpha_derivative(s, 0.4, 1e-12).unwrap().value;
        assert!((j.dparam - d).norm() < 1e-10 * d.norm().max(1.0));
        let v = hurwitz_zeta(s, 0.4, 1e-12).unwrap().value;
        assert!((j.value - v).norm() < 1e-12);
        // regular at s = 0 where −s·ζ(s + 1, α) → −1
        let at0 = f.jet(Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)).unwrap();
        assert!((at0.dparam + 1.0).norm() < 1e-14);
    }

    #[test]
    fn complex_offset_is_analytic() {
        let f = HurwitzFlow { tol: 1e-12 };
        let s = Complex64::new(0.5, 20.0);
        let a = Complex64::new(0.7, 0.0);
        let h = Complex64::new(0.0, 1e-6);
        let num = (f.jet(s, a + h).unwrap().value - f.jet(s, a - h).unwrap().value) / (h * 2.0);
        let d = f.jet(s, a).unwrap().dparam;
        assert!((num - d).norm() < 1e-5 * d.norm());
    }

    #[test]
    fn generic_family_has_no_flow() {
        assert!(matches!(
            FamilyFlow::new(Family::Generic, 1e-12),
            Err(Error::NoFlowParameter)
        ));
    }
}
