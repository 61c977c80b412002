//! Zero trajectories under parameter flows: the Hurwitz α-flow, the
//! symmetric family flows, and the linearized flow near a perturbation zero.

mod continuation;
mod flow;
mod io;
mod linearized;

pub use continuation::{
    scaled_spectrum, track_many, track_zero, BifurcationEvent, EventKind, StepControl, Trajectory,
    TrajectorySample, ON_LINE_TOL, RECOVERY, TRIGGER,
};
pub use flow::{FamilyFlow, Flow, FlowJet, FlowSlice, HurwitzFlow};
pub use io::{events_to_json, trajectories_to_csv, TRAJECTORY_CSV_HEADER};
pub use linearized::{
    linearized_flow, linearized_flow_hypothetical, FlowClass, LinearizedFlowResult, LINE_TOL,
};

use crate::error::Result;
use crate::families::Family;
use crate::Complex64;

/// Follow a zero of `ζ(·, α)` from `alpha_from` to `alpha_to`.
pub fn track_hurwitz_zero(
    z_start: Complex64,
    alpha_from: f64,
    alpha_to: f64,
    tol: f64,
    ctrl: &StepControl,
) -> Result<Trajectory> {
    track_zero(&HurwitzFlow { tol }, 0, z_start, alpha_from, alpha_to, ctrl)
}

/// Follow a zero of a symmetric family along its flow parameter.
pub fn track_family_zero(
    family: &Family,
    z_start: Complex64,
    param_from: f64,
    param_to: f64,
    tol: f64,
    ctrl: &StepControl,
) -> Result<Trajectory> {
    let flow = FamilyFlow::new(family.clone(), tol)?;
    track_zero(&flow, 0, z_start, param_from, param_to, ctrl)
}
