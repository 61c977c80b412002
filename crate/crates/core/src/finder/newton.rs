use super::functions::Analytic;
use super::ZeroRecord;
use crate::error::{Error, Result};
use crate::Complex64;

pub const NEWTON_MAX_ITER: usize = 50;
/// Largest acceptable |f| at a reported zero.
pub const RESIDUAL_TOL: f64 = 1e-8;
const STEP_TOL: f64 = 1e-13;
const MIN_DERIVATIVE: f64 = 1e-12;

fn diverged(z0: Complex64, residual: f64) -> Error {
    Error::NewtonDiverged {
        start_re: z0.re,
        start_im: z0.im,
        residual,
    }
}

/// Iterate `z ← z − m·f/f'` from `z0`.
fn iterate<F: Analytic + ?Sized>(
    f: &F,
    z0: Complex64,
    m: f64,
    max_dist: f64,
) -> Result<(Complex64, f64)> {
    let mut z = z0;
    let mut last_step = f64::INFINITY;
    let mut stalls = 0;
    for _ in 0..NEWTON_MAX_ITER {
        let (v, d) = f.jet(z)?;
        if v.norm() == 0.0 {
            return Ok((z, 0.0));
        }
        if d.norm() == 0.0 {
            return Err(diverged(z0, v.norm()));
        }
        let step = v / d * m;
        z -= step;
        if !(z.re.is_finite() && z.im.is_finite()) || (z - z0).norm() > max_dist {
            return Err(diverged(z0, v.norm()));
        }
        let size = step.norm();
        if size < STEP_TOL * z.norm().max(1.0) {
            break;
        }
        // rounding floor reached
        if size >= 0.5 * last_step && size < 1e-10 * z.norm().max(1.0) {
            stalls += 1;
            if stalls >= 3 {
                break;
            }
        }
        last_step = size;
    }
    let residual = f.jet(z)?.0.norm();
    Ok((z, residual))
}

/// Newton refinement of a simple zero.
pub fn newton_refine<F: Analytic + ?Sized>(f: &F, z0: Complex64) -> Result<ZeroRecord> {
    newton_refine_within(f, z0, f64::INFINITY)
}

/// Newton refinement that gives up once an iterate strays further than
/// `max_dist` from the start.
pub fn newton_refine_within<F: Analytic + ?Sized>(
    f: &F,
    z0: Complex64,
    max_dist: f64,
) -> Result<ZeroRecord> {
    let (v, d) = f.jet(z0)?;
    if d.norm() <= MIN_DERIVATIVE {
        return Err(diverged(z0, v.norm()));
    }
    let (z, residual) = iterate(f, z0, 1.0, max_dist)?;
    if !(residual <= RESIDUAL_TOL) {
        return Err(diverged(z0, residual));
    }
    Ok(ZeroRecord {
        location: z,
        multiplicity: 1,
        residual,
        function_id: f.label(),
    })
}

/// Modified Newton for a zero of known multiplicity `m`; falls back to
/// `z0` when the iteration wanders off by more than `radius`.
pub fn polish_multiple<F: Analytic + ?Sized>(f: &F, z0: Complex64, m: u32, radius: f64) -> Result<ZeroRecord> {
    let polished = iterate(f, z0, m as f64, radius).ok();
    let (z, residual) = match polished {
        Some(p) => p,
        None => (z0, f.jet(z0)?.0.norm()),
    };
    Ok(ZeroRecord {
        location: z,
        multiplicity: m,
        residual,
        function_id: f.label(),
    })
}
