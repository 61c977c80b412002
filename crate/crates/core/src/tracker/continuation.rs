use rayon::prelude::*;

use super::flow::{Flow, FlowJet, FlowSlice};
use crate::error::{Error, Result};
use crate::finder::{count_formula, raw_winding, Rectangle, RESIDUAL_TOL};
use crate::Complex64;

/// `|Re z − 1/2|` below this counts as on the critical line.
pub const ON_LINE_TOL: f64 = 1e-8;
/// Near-multiple trigger: `|Ψ'| < TRIGGER·(1 + |Ψ''|)`.
pub const TRIGGER: f64 = 1e-5;
/// Offset removal requires `|Ψ'| > RECOVERY·(1 + |Ψ''|)`.
pub const RECOVERY: f64 = 1e-4;
const SECOND_DERIVATIVE_STEP: f64 = 1e-4;

/// Step-size and regularization settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Largest predictor move in the s-plane.
    pub max_dz: f64,
    pub grow_after: usize,
    pub grow_factor: f64,
    pub max_corrector_iter: usize,
    /// Imaginary offset added to the parameter near double zeros.
    pub offset: f64,
    pub regularize: bool,
    pub max_steps: usize,
}

impl Default for StepControl {
    fn default() -> Self {
        Self {
            initial_step: 1e-3,
            min_step: 1e-10,
            max_step: 0.05,
            max_dz: 0.05,
            grow_after: 10,
            grow_factor: 1.5,
            max_corrector_iter: 4,
            offset: 1e-6,
            regularize: true,
            max_steps: 2_000_000,
        }
    }
}

impl StepControl {
    /// Same settings with every step limit halved.
    pub fn halved(&self) -> Self {
        Self {
            initial_step: self.initial_step * 0.5,
            max_step: self.max_step * 0.5,
            max_dz: self.max_dz * 0.5,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventKind {
    MergeOnLine,
    SplitOffLine,
    NearMultiple,
}

impl EventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::MergeOnLine => "merge-on-line",
            EventKind::SplitOffLine => "split-off-line",
            EventKind::NearMultiple => "near-multiple",
        }
    }
}

/// A detected near-double zero.
#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationEvent {
    /// Parameter at which the regularization was switched on.
    pub param_value: f64,
    pub location: Complex64,
    pub kind: EventKind,
    /// `|Ψ'|` at detection.
    pub derivative_magnitude: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySample {
    pub param: f64,
    pub z: Complex64,
    pub residual: f64,
    pub scaled_t: Option<f64>,
    /// Set on the sample where an event was closed.
    pub event: Option<EventKind>,
    /// Whether the complex offset was active for this sample.
    pub offset_active: bool,
}

/// A tracked zero path.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub zero_id: usize,
    pub parameter_name: String,
    pub param_from: f64,
    pub param_to: f64,
    pub samples: Vec<TrajectorySample>,
    pub events: Vec<BifurcationEvent>,
    /// Offset used while regularizing (`i·δ`).
    pub regularization_offset: Complex64,
    pub hurwitz: bool,
}

impl Trajectory {
    pub fn start(&self) -> Complex64 {
        self.samples[0].z
    }

    pub fn end(&self) -> Complex64 {
        self.samples[self.samples.len() - 1].z
    }

    /// Position at `param` by linear interpolation between samples.
    pub fn interpolate(&self, param: f64) -> Option<Complex64> {
        let s = &self.samples;
        let (lo, hi) = (
            self.param_from.min(self.param_to),
            self.param_from.max(self.param_to),
        );
        let slack = 1e-12 * (1.0 + hi.abs());
        if param < lo - slack || param > hi + slack {
            return None;
        }
        if s.len() == 1 {
            return Some(s[0].z);
        }
        let increasing = self.param_to >= self.param_from;
        let idx = s.partition_point(|x| if increasing { x.param < param } else { x.param > param });
        if idx == 0 {
            return Some(s[0].z);
        }
        if idx >= s.len() {
            return Some(s[s.len() - 1].z);
        }
        let (a, b) = (&s[idx - 1], &s[idx]);
        let w = if b.param == a.param {
            0.0
        } else {
            (param - a.param) / (b.param - a.param)
        };
        Some(a.z + (b.z - a.z) * w)
    }
}

/// `(param, N(t, α))` per sample of a Hurwitz trajectory.
pub fn scaled_spectrum(traj: &Trajectory) -> Result<Vec<(f64, f64)>> {
    if !traj.hurwitz {
        return Err(Error::WrongFlow);
    }
    Ok(traj
        .samples
        .iter()
        .filter_map(|s| s.scaled_t.map(|n| (s.param, n)))
        .collect())
}

struct OpenEvent {
    param: f64,
    z: Complex64,
    deriv: f64,
    on_line: bool,
}

fn on_line(z: Complex64) -> bool {
    (z.re - 0.5).abs() < ON_LINE_TOL
}

fn second_derivative<F: Flow + ?Sized>(flow: &F, z: Complex64, param: Complex64) -> Result<Complex64> {
    let h = SECOND_DERIVATIVE_STEP;
    let hz = Complex64::new(h, 0.0);
    let up = flow.jet(z + hz, param)?.ds;
    let down = flow.jet(z - hz, param)?.ds;
    Ok((up - down) / (2.0 * h))
}

/// Newton on `Ψ(·, param)` from `z`, at most `iters` steps.
fn correct<F: Flow + ?Sized>(
    flow: &F,
    mut z: Complex64,
    param: Complex64,
    iters: usize,
) -> Option<(Complex64, FlowJet)> {
    let mut last = f64::INFINITY;
    for _ in 0..iters {
        let j = flow.jet(z, param).ok()?;
        if j.ds.norm() == 0.0 {
            return None;
        }
        let step = j.value / j.ds;
        z -= step;
        if !(z.re.is_finite() && z.im.is_finite()) {
            return None;
        }
        last = step.norm();
        if last <= 1e-12 * z.norm().max(1.0) {
            break;
        }
    }
    let j = flow.jet(z, param).ok()?;
    (j.value.norm() <= RESIDUAL_TOL && last <= 1e-9 * z.norm().max(1.0)).then_some((z, j))
}

fn rk4<F: Flow + ?Sized>(flow: &F, z: Complex64, p: Complex64, dp: f64) -> Result<Complex64> {
    let half = 0.5 * dp;
    let k1 = flow.velocity(z, p)?.0;
    let k2 = flow.velocity(z + k1 * half, p + half)?.0;
    let k3 = flow.velocity(z + k2 * half, p + half)?.0;
    let k4 = flow.velocity(z + k3 * dp, p + dp)?.0;
    Ok(z + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dp / 6.0))
}

fn scaled<F: Flow + ?Sized>(flow: &F, param: f64, z: Complex64) -> Option<f64> {
    (flow.is_hurwitz() && z.im > 0.0).then(|| count_formula(z.im, param))
}

/// Whether a small box around `z` holds two or more zeros.
fn clustered<F: Flow + ?Sized>(flow: &F, z: Complex64, param: Complex64, radius: f64) -> bool {
    let r = radius.max(1e-6);
    let Ok(rect) = Rectangle::new(z.re - r, z.re + r, z.im - r, z.im + r) else {
        return false;
    };
    matches!(raw_winding(&FlowSlice { flow, param }, &rect), Ok(Some((w, _))) if w >= 2)
}

fn classify(flow_symmetric: bool, before: bool, after: bool) -> EventKind {
    match (flow_symmetric, before, after) {
        (true, true, false) => EventKind::SplitOffLine,
        (true, false, true) => EventKind::MergeOnLine,
        _ => EventKind::NearMultiple,
    }
}

/// Follow the zero starting at `z_start` as the flow parameter goes from
/// `from` to `to`: RK4 predictor, Newton corrector, adaptive step, and a
/// complex parameter offset across near-double zeros.
pub fn track_zero<F: Flow + ?Sized>(
    flow: &F,
    zero_id: usize,
    z_start: Complex64,
    from: f64,
    to: f64,
    ctrl: &StepControl,
) -> Result<Trajectory> {
    if !(from.is_finite() && to.is_finite()) {
        return Err(Error::NonFinite);
    }
    let real = |p: f64| Complex64::new(p, 0.0);
    let (z0, j0) = correct(flow, z_start, real(from), 20).ok_or(Error::NewtonDiverged {
        start_re: z_start.re,
        start_im: z_start.im,
        residual: flow.jet(z_start, real(from)).map(|j| j.value.norm()).unwrap_or(f64::INFINITY),
    })?;
    let mut traj = Trajectory {
        zero_id,
        parameter_name: flow.parameter_name().to_string(),
        param_from: from,
        param_to: to,
        samples: vec![TrajectorySample {
            param: from,
            z: z0,
            residual: j0.value.norm(),
            scaled_t: scaled(flow, from, z0),
            event: None,
            offset_active: false,
        }],
        events: Vec::new(),
        regularization_offset: Complex64::new(0.0, ctrl.offset),
        hurwitz: flow.is_hurwitz(),
    };
    let dir = if to >= from { 1.0 } else { -1.0 };
    let mut p = from;
    let mut z = z0;
    let mut h = ctrl.initial_step;
    let mut accepts = 0;
    let mut offset = 0.0;
    let mut open: Option<OpenEvent> = None;
    let mut last_dz = ctrl.max_dz;
    let mut steps = 0;

    while (to - p) * dir > 0.0 {
        steps += 1;
        if steps > ctrl.max_steps {
            return Err(Error::LostZero { param: p });
        }
        let remaining = (to - p).abs();
        let hh = h.min(remaining);
        let dp = dir * hh;
        let p_next = if hh == remaining { to } else { p + dp };
        let pc = Complex64::new(p, offset);
        let pn = Complex64::new(p_next, offset);

        let attempt = rk4(flow, z, pc, p_next - p).ok().and_then(|zp| {
            let moved = (zp - z).norm();
            if moved > ctrl.max_dz {
                return None;
            }
            let (zc, jc) = correct(flow, zp, pn, ctrl.max_corrector_iter)?;
            ((zc - zp).norm() <= 0.1 * moved + 1e-9).then_some((zc, jc, moved))
        });

        let Some((zc, jc, moved)) = attempt else {
            h *= 0.5;
            accepts = 0;
            if h < ctrl.min_step {
                let near_double = clustered(flow, z, pc, 10.0 * last_dz);
                if ctrl.regularize && offset == 0.0 && near_double {
                    let d = flow.jet(z, pc).map(|j| j.ds.norm()).unwrap_or(0.0);
                    if let Some((zs, _)) = correct(flow, z, Complex64::new(p, ctrl.offset), 20) {
                        open = Some(OpenEvent {
                            param: p,
                            z,
                            deriv: d,
                            on_line: on_line(z),
                        });
                        offset = ctrl.offset;
                        z = zs;
                        h = 10.0 * ctrl.offset;
                        continue;
                    }
                }
                return Err(Error::LostZero { param: p });
            }
            continue;
        };

        p = p_next;
        z = zc;
        last_dz = moved.max(1e-12);
        accepts += 1;
        if accepts >= ctrl.grow_after {
            h = (h * ctrl.grow_factor).min(ctrl.max_step);
            accepts = 0;
        }
        let mut residual = jc.value.norm();
        let mut event = None;
        let d = jc.ds.norm();

        if ctrl.regularize {
            let d2 = second_derivative(flow, z, Complex64::new(p, offset))?.norm();
            if offset == 0.0 && d < TRIGGER * (1.0 + d2) {
                // the zero at the shifted parameter can sit noticeably away
                if let Some((zs, js)) = correct(flow, z, Complex64::new(p, ctrl.offset), 20) {
                    open = Some(OpenEvent {
                        param: p,
                        z,
                        deriv: d,
                        on_line: on_line(z),
                    });
                    offset = ctrl.offset;
                    z = zs;
                    residual = js.value.norm();
                    h = h.min(10.0 * ctrl.offset);
                }
            } else if offset != 0.0 && d > RECOVERY * (1.0 + d2) {
                let speed = (jc.dparam / jc.ds).norm();
                let partner = 2.0 * d / d2.max(1e-300);
                if offset * speed < 0.01 * partner {
                    if let Some((zr, jr)) = correct(flow, z, real(p), ctrl.max_corrector_iter + 2) {
                        z = zr;
                        residual = jr.value.norm();
                        offset = 0.0;
                        if let Some(ev) = open.take() {
                            let kind = classify(flow.is_symmetric(), ev.on_line, on_line(z));
                            traj.events.push(BifurcationEvent {
                                param_value: ev.param,
                                location: ev.z,
                                kind,
                                derivative_magnitude: ev.deriv,
                            });
                            event = Some(kind);
                        }
                    }
                }
            }
        }

        traj.samples.push(TrajectorySample {
            param: p,
            z,
            residual,
            scaled_t: scaled(flow, p, z),
            event,
            offset_active: offset != 0.0,
        });
    }

    // finish on the real parameter
    if offset != 0.0 {
        let last = traj.samples.len() - 1;
        if let Some((zr, jr)) = correct(flow, z, real(p), 10) {
            let s = &mut traj.samples[last];
            s.z = zr;
            s.residual = jr.value.norm();
            s.scaled_t = scaled(flow, p, zr);
            s.offset_active = false;
            if let Some(ev) = open.take() {
                let kind = classify(flow.is_symmetric(), ev.on_line, on_line(zr));
                traj.events.push(BifurcationEvent {
                    param_value: ev.param,
                    location: ev.z,
                    kind,
                    derivative_magnitude: ev.deriv,
                });
                s.event = Some(kind);
            }
        }
    }
    Ok(traj)
}

/// Track several zeros independently; results keep the input order.
pub fn track_many<F: Flow + ?Sized>(
    flow: &F,
    starts: &[Complex64],
    from: f64,
    to: f64,
    ctrl: &StepControl,
) -> Vec<Result<Trajectory>> {
    starts
        .par_iter()
        .enumerate()
        .map(|(k, z)| track_zero(flow, k, *z, from, to, ctrl))
        .collect()
}
