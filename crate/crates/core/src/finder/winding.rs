use std::f64::consts::{FRAC_PI_2, PI};

use super::functions::{Analytic, Regularized};
use super::Rectangle;
use crate::error::{Error, Result};
use crate::Complex64;

/// Samples per side before refinement.
pub const INITIAL_SAMPLES: usize = 64;
/// Refinement cap per side.
pub const MAX_SAMPLES_PER_SIDE: usize = 1 << 16;
/// Boundary nudges attempted before giving up.
pub const MAX_NUDGES: usize = 5;
const NUDGE_STEP: f64 = 1e-4;
/// A step is trusted when `h·|f'/f|` stays below this at both ends.
const MAX_LOGDERIV_STEP: f64 = 1.0;
/// A sample with `|f/f'|` below this (relative) sits on a zero.
const ZERO_PROXIMITY: f64 = 1e-10;
/// Margin around s = 1 inside which a pole forces regularization.
pub(crate) const POLE_MARGIN: f64 = 1e-3;

/// Outcome of a winding computation.
#[derive(Debug, Clone, PartialEq)]
pub struct WindingReport {
    pub winding: i64,
    /// Rectangle actually integrated over, after nudging.
    pub rect: Rectangle,
    /// Whether `(s − 1)·f` replaced `f`.
    pub regularized: bool,
    pub nudges: usize,
    pub samples: usize,
}

#[derive(Clone, Copy)]
struct Sample {
    z: Complex64,
    f: Complex64,
    logderiv: f64,
}

fn sample<F: Analytic + ?Sized>(f: &F, z: Complex64) -> Result<Option<Sample>> {
    let (v, d) = f.jet(z)?;
    let mag = v.norm();
    if mag == 0.0 || mag < ZERO_PROXIMITY * (1.0 + z.norm()) * d.norm() {
        return Ok(None);
    }
    Ok(Some(Sample {
        z,
        f: v,
        logderiv: d.norm() / mag,
    }))
}

/// Phase change along one directed side; `None` when the side touches a
/// zero or refinement runs out of budget.
fn side_phase<F: Analytic + ?Sized>(
    f: &F,
    a: Complex64,
    b: Complex64,
) -> Result<Option<(f64, usize)>> {
    let mut pts = Vec::with_capacity(INITIAL_SAMPLES + 1);
    for k in 0..=INITIAL_SAMPLES {
        let z = a + (b - a) * (k as f64 / INITIAL_SAMPLES as f64);
        match sample(f, z)? {
            Some(p) => pts.push(p),
            None => return Ok(None),
        }
    }
    let h_min = 1e-14 * (1.0 + a.norm().max(b.norm()));
    let mut count = pts.len();
    let mut total = 0.0;
    let mut stack = Vec::new();
    for pair in pts.windows(2).rev() {
        stack.push((pair[0], pair[1]));
    }
    while let Some((p, q)) = stack.pop() {
        let h = (q.z - p.z).norm();
        let dphi = (q.f / p.f).arg();
        if dphi.abs() < FRAC_PI_2 && 0.5 * h * (p.logderiv + q.logderiv) <= MAX_LOGDERIV_STEP {
            total += dphi;
            continue;
        }
        if h < h_min || count >= MAX_SAMPLES_PER_SIDE {
            return Ok(None);
        }
        let Some(m) = sample(f, 0.5 * (p.z + q.z))? else {
            return Ok(None);
        };
        count += 1;
        stack.push((m, q));
        stack.push((p, m));
    }
    Ok(Some((total, count)))
}

/// Winding of `f` around the boundary of `rect`; `None` on a boundary zero.
pub(crate) fn raw_winding<F: Analytic + ?Sized>(
    f: &F,
    rect: &Rectangle,
) -> Result<Option<(i64, usize)>> {
    let c = rect.corners();
    let mut total = 0.0;
    let mut samples = 0;
    for k in 0..4 {
        match side_phase(f, c[k], c[(k + 1) % 4])? {
            Some((phase, n)) => {
                total += phase;
                samples += n;
            }
            None => return Ok(None),
        }
    }
    let turns = total / (2.0 * PI);
    let rounded = turns.round();
    if (turns - rounded).abs() > 0.25 {
        return Ok(None);
    }
    Ok(Some((rounded as i64, samples)))
}

pub(crate) fn needs_regularization<F: Analytic + ?Sized>(f: &F, rect: &Rectangle) -> bool {
    f.has_pole() && rect.distance(Complex64::new(1.0, 0.0)) <= POLE_MARGIN
}

/// Winding with boundary nudging and automatic pole removal.
pub fn winding_report<F: Analytic + ?Sized>(f: &F, rect: &Rectangle) -> Result<WindingReport> {
    let mut grown = 0.0;
    for nudges in 0..=MAX_NUDGES {
        let r = rect.grow(grown);
        let regularized = needs_regularization(f, &r);
        let outcome = if regularized {
            raw_winding(&Regularized(f), &r)?
        } else {
            raw_winding(f, &r)?
        };
        if let Some((winding, samples)) = outcome {
            return Ok(WindingReport {
                winding,
                rect: r,
                regularized,
                nudges,
                samples,
            });
        }
        grown += NUDGE_STEP * (1 + nudges) as f64;
    }
    Err(Error::BoundaryZero {
        attempts: MAX_NUDGES,
    })
}

/// Number of zeros of `f` inside `rect`, counted with multiplicity.
pub fn winding_number<F: Analytic + ?Sized>(f: &F, rect: &Rectangle) -> Result<i64> {
    Ok(winding_report(f, rect)?.winding)
}
