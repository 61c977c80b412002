use serde::Serialize;

use super::continuation::Trajectory;
use crate::output::fmt_g;

pub const TRAJECTORY_CSV_HEADER: &str = "zero_id,param,sigma,t,residual,scaled_t,event_flag";

/// All samples of all trajectories, one row each.
pub fn trajectories_to_csv(trajs: &[Trajectory]) -> String {
    let mut out = String::from(TRAJECTORY_CSV_HEADER);
    out.push('\n');
    for tr in trajs {
        for s in &tr.samples {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                tr.zero_id,
                fmt_g(s.param),
                fmt_g(s.z.re),
                fmt_g(s.z.im),
                fmt_g(s.residual),
                s.scaled_t.map(fmt_g).unwrap_or_default(),
                s.event.map(|e| e.as_str()).unwrap_or("")
            ));
        }
    }
    out
}

#[derive(Serialize)]
struct EventRow<'a> {
    zero_id: usize,
    param: f64,
    sigma: f64,
    t: f64,
    kind: &'a str,
    derivative_magnitude: f64,
}

/// Events of all trajectories as a JSON array.
pub fn events_to_json(trajs: &[Trajectory]) -> String {
    let rows: Vec<EventRow> = trajs
        .iter()
        .flat_map(|tr| {
            tr.events.iter().map(move |e| EventRow {
                zero_id: tr.zero_id,
                param: e.param_value,
                sigma: e.location.re,
                t: e.location.im,
                kind: e.kind.as_str(),
                derivative_magnitude: e.derivative_magnitude,
            })
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("events serialise")
}
