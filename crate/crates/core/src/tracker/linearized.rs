use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::Complex64;

/// Sense of the motion of `Δz` around the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowClass {
    Line,
    CycleCcw,
    CycleCw,
}

impl FlowClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            FlowClass::Line => "line",
            FlowClass::CycleCcw => "cycle-ccw",
            FlowClass::CycleCw => "cycle-cw",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearizedFlowResult {
    pub z_infinity: Complex64,
    pub path: Vec<(f64, Complex64)>,
    pub classification: FlowClass,
    /// Net turns of `Δz` around 0 over the range.
    pub winding: f64,
    /// Largest `|sin|` of the angle between `Δz` and its initial direction.
    pub angular_spread: f64,
    /// Whether the sign-flipped equation for an off-line zero of ζ was used.
    pub hypothetical: bool,
}

/// Real-part distance from 1/2 below which the flow is treated as a line.
pub const LINE_TOL: f64 = 1e-12;
const POLE_TOL: f64 = 1e-8;
const STEPS_PER_RADIAN: f64 = 400.0;

fn e_factor(phi: f64, base: Complex64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * phi) * base
}

fn integrate<G: Fn(f64, Complex64) -> Complex64>(
    g: G,
    y0: Complex64,
    from: f64,
    to: f64,
) -> Vec<(f64, Complex64)> {
    let n = (((to - from).abs() * STEPS_PER_RADIAN).ceil() as usize).max(1);
    let h = (to - from) / n as f64;
    let mut path = Vec::with_capacity(n + 1);
    let mut y = y0;
    path.push((from, y));
    for k in 0..n {
        let x = from + k as f64 * h;
        let k1 = g(x, y);
        let k2 = g(x + 0.5 * h, y + k1 * (0.5 * h));
        let k3 = g(x + 0.5 * h, y + k2 * (0.5 * h));
        let k4 = g(x + h, y + k3 * h);
        y += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        path.push((if k + 1 == n { to } else { x + h }, y));
    }
    path
}

fn solve(
    z_inf: Complex64,
    dz0: Complex64,
    p_base: u32,
    phi_from: f64,
    phi_to: f64,
    sign: f64,
) -> Result<LinearizedFlowResult> {
    if dz0.norm() == 0.0 || !(dz0.re.is_finite() && dz0.im.is_finite()) {
        return Err(Error::InvalidArgument("dz0 must be a nonzero finite offset".into()));
    }
    if p_base < 2 || !(phi_from.is_finite() && phi_to.is_finite()) {
        return Err(Error::InvalidArgument("need p_base ≥ 2 and a finite φ range".into()));
    }
    let base = (Complex64::new(0.5, 0.0) - z_inf) * (p_base as f64).ln();
    let base = base.exp();
    let line = (z_inf.re - 0.5).abs() < LINE_TOL;

    let path = if line && sign > 0.0 {
        // Δz = w·(1 + E) with w' = −i·w stays regular through E = −1
        let one_plus = |phi: f64| e_factor(phi, base) + 1.0;
        let d0 = one_plus(phi_from);
        if d0.norm() < POLE_TOL {
            return Err(Error::CoefficientPole { phi: phi_from });
        }
        integrate(|_, w| -Complex64::i() * w, dz0 / d0, phi_from, phi_to)
            .into_iter()
            .map(|(phi, w)| (phi, w * one_plus(phi)))
            .collect()
    } else {
        // E = −1 where 2φ + arg(base) ≡ π; closest approach there is |1 − |base||
        if (1.0 - base.norm()).abs() < POLE_TOL {
            let (lo, hi) = (phi_from.min(phi_to), phi_from.max(phi_to));
            let first = (PI - base.arg()) / 2.0;
            let k = ((lo - first) / PI).ceil();
            let phi = first + k * PI;
            if phi <= hi {
                return Err(Error::CoefficientPole { phi });
            }
        }
        integrate(
            |phi, dz| {
                let e = e_factor(phi, base);
                Complex64::i() * sign * dz * (e - 1.0) / (e + 1.0)
            },
            dz0,
            phi_from,
            phi_to,
        )
    };

    let mut total = 0.0;
    for pair in path.windows(2) {
        let (a, b) = (pair[0].1, pair[1].1);
        if a.norm() > 0.0 && b.norm() > 0.0 {
            total += (b / a).arg();
        }
    }
    let dir = dz0 / dz0.norm();
    let scale = path.iter().map(|(_, d)| d.norm()).fold(0.0, f64::max);
    let angular_spread = path
        .iter()
        .filter(|(_, d)| d.norm() > 1e-6 * scale)
        .map(|(_, d)| (d * dir.conj()).im.abs() / d.norm())
        .fold(0.0, f64::max);
    let winding = total / (2.0 * PI);
    let classification = if line && sign > 0.0 {
        FlowClass::Line
    } else if winding < 0.0 {
        FlowClass::CycleCw
    } else {
        FlowClass::CycleCcw
    };
    Ok(LinearizedFlowResult {
        z_infinity: z_inf,
        path,
        classification,
        winding,
        angular_spread,
        hypothetical: sign < 0.0,
    })
}

/// Integrate `Δz' = i·Δz·(E − 1)/(E + 1)`, `E = e^(2iφ)·p^(1/2 − z∞)`,
/// near a zero `z∞` of the perturbation term.
pub fn linearized_flow(
    z_infinity: Complex64,
    dz0: Complex64,
    p_base: u32,
    phi_from: f64,
    phi_to: f64,
) -> Result<LinearizedFlowResult> {
    solve(z_infinity, dz0, p_base, phi_from, phi_to, 1.0)
}

/// Sign-flipped equation describing motion around a fictitious zero `z0`
/// of ζ away from the critical line. Demonstration only.
pub fn linearized_flow_hypothetical(
    z0: Complex64,
    dz0: Complex64,
    p_base: u32,
    phi_from: f64,
    phi_to: f64,
) -> Result<LinearizedFlowResult> {
    if (z0.re - 0.5).abs() < POLE_TOL {
        return Err(Error::InvalidArgument(
            "a hypothetical zero must lie off the critical line".into(),
        ));
    }
    solve(z0, dz0, p_base, phi_from, phi_to, -1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_form_solution() {
        // Δz(φ) = Δz(0)·e^(−iφ)·(1 + E(φ))/(1 + E(0))
        let z = c(0.8, 20.0);
        let r = linearized_flow(z, c(1e-3, 0.0), 5, 0.0, PI).unwrap();
        let base = ((c(0.5, 0.0) - z) * 5f64.ln()).exp();
        let (phi, dz) = *r.path.last().unwrap();
        let expect = c(1e-3, 0.0) * Complex64::from_polar(1.0, -phi) * (e_factor(phi, base) + 1.0)
            / (base + 1.0);
        assert!((dz - expect).norm() < 1e-14);
    }

    #[test]
    fn three_regimes() {
        let line = linearized_flow(c(0.5, 20.0), c(1e-3, 2e-3), 5, 0.0, PI).unwrap();
        assert_eq!(line.classification, FlowClass::Line);
        assert!(line.angular_spread < 1e-6);
        let cw = linearized_flow(c(0.8, 20.0), c(1e-3, 0.0), 5, 0.0, PI).unwrap();
        assert_eq!(cw.classification, FlowClass::CycleCw);
        assert!((cw.winding + 0.5).abs() < 1e-6);
        let ccw = linearized_flow(c(0.2, 20.0), c(1e-3, 0.0), 5, 0.0, PI).unwrap();
        assert_eq!(ccw.classification, FlowClass::CycleCcw);
        assert!((ccw.winding - 0.5).abs() < 1e-6);
        let full = linearized_flow(c(0.8, 20.0), c(1e-3, 0.0), 5, 0.0, 2.0 * PI).unwrap();
        assert!((full.winding + 1.0).abs() < 1e-6);
    }

    #[test]
    fn hypothetical_zero_reverses_sense() {
        let r = linearized_flow_hypothetical(c(0.8, 20.0), c(1e-3, 0.0), 5, 0.0, 2.0 * PI).unwrap();
        assert!(r.hypothetical);
        assert_eq!(r.classification, FlowClass::CycleCcw);
        assert!((r.winding - 1.0).abs() < 1e-6);
    }

    #[test]
    fn near_line_pole_is_reported() {
        let z = c(0.5 + 1e-10, 20.0);
        assert!(matches!(
            linearized_flow(z, c(1e-3, 0.0), 5, 0.0, PI),
            Err(Error::CoefficientPole { .. })
        ));
        assert!(linearized_flow(c(0.8, 20.0), c(0.0, 0.0), 5, 0.0, PI).is_err());
    }
}
