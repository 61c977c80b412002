use std::f64::consts::PI;

use zetaflow::families::{build_psi_even5, Family};
use zetaflow::finder::{find_zeros, Rectangle, SpecFunction, SCAN_TOL};
use zetaflow::tracker::{
    events_to_json, linearized_flow, scaled_spectrum, track_hurwitz_zero, track_many, trajectories_to_csv,
    FamilyFlow, FlowClass, HurwitzFlow, StepControl, TRAJECTORY_CSV_HEADER,
};
use zetaflow::zeta::hurwitz_zeta;
use zetaflow::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn hurwitz_trajectory_ends_on_a_zero() {
    let start = c(0.5, 14.134_725_141_734_693);
    let traj = track_hurwitz_zero(start, 1.0, 0.5, SCAN_TOL, &StepControl::default()).unwrap();
    assert!((traj.start() - start).norm() < 1e-12);
    for s in &traj.samples {
        assert!(s.residual <= 1e-8);
        assert!(s.scaled_t.is_some());
    }
    let end = traj.end();
    assert!(hurwitz_zeta(end, 0.5, 1e-11).unwrap().value.norm() < 1e-8);
    let spectrum = scaled_spectrum(&traj).unwrap();
    assert_eq!(spectrum.len(), traj.samples.len());
    let mid = traj.interpolate(0.75).unwrap();
    assert!(hurwitz_zeta(mid, 0.75, 1e-11).unwrap().value.norm() < 1e-3);
}

#[test]
fn outputs_are_well_formed_and_repeatable() {
    let starts = [c(0.5, 14.134_725_141_734_693), c(0.5, 21.022_039_638_771_555)];
    let run = || {
        let trajs: Vec<_> = track_many(&HurwitzFlow { tol: SCAN_TOL }, &starts, 1.0, 0.8, &StepControl::default())
            .into_iter()
            .map(|r| r.unwrap())
            .collect();
        (trajectories_to_csv(&trajs), events_to_json(&trajs), trajs)
    };
    let (csv, json, trajs) = run();
    let (csv2, json2, _) = run();
    assert_eq!(csv, csv2);
    assert_eq!(json, json2);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(TRAJECTORY_CSV_HEADER));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), trajs.iter().map(|t| t.samples.len()).sum::<usize>());
    assert!(rows.iter().all(|r| r.split(',').count() == 7));
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(parsed.is_array());
}

#[test]
fn closed_loop_maps_zeros_onto_zeros() {
    let eps = 0.5;
    let family = Family::Psi5EvenPerturbed { epsilon: eps, phi: 0.0 };
    let f = SpecFunction::new(build_psi_even5(eps, 0.0).unwrap(), SCAN_TOL);
    let inner = find_zeros(&f, &Rectangle::new(-1.0, 2.0, 5.0, 20.0).unwrap()).unwrap();
    let outer = find_zeros(&f, &Rectangle::new(-1.5, 2.5, 2.0, 24.0).unwrap()).unwrap();
    assert!(inner.is_complete() && outer.is_complete());
    let starts: Vec<Complex64> = inner.zeros.iter().map(|z| z.location).collect();
    let flow = FamilyFlow::new(family, SCAN_TOL).unwrap();
    for traj in track_many(&flow, &starts, 0.0, 2.0 * PI, &StepControl::default()) {
        let traj = traj.unwrap();
        let end = traj.end();
        assert!(
            outer.zeros.iter().any(|z| (z.location - end).norm() < 1e-6),
            "{} ended at {end}, not a zero",
            traj.start()
        );
    }
}

#[test]
fn linearized_regimes() {
    let dz0 = c(1e-3, 2e-3);
    let line = linearized_flow(c(0.5, 40.0), dz0, 5, 0.0, 2.0 * PI).unwrap();
    assert_eq!(line.classification, FlowClass::Line);
    assert!(line.angular_spread < 1e-6);
    let right = linearized_flow(c(0.8, 40.0), dz0, 5, 0.0, 2.0 * PI).unwrap();
    assert_eq!(right.classification, FlowClass::CycleCw);
    assert!(right.winding < 0.0);
    let left = linearized_flow(c(0.2, 40.0), dz0, 5, 0.0, 2.0 * PI).unwrap();
    assert_eq!(left.classification, FlowClass::CycleCcw);
    assert!(left.winding > 0.0);
}
