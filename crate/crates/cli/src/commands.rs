//! Subcommand implementations.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use zetaflow::characters::is_prime;
use zetaflow::families::symmetry::MAX_SYMMETRY_PRIME;
use zetaflow::families::{beta_i_angle, symmetry_matrix, CombinationSpec, Family};
use zetaflow::finder::{
    compare_counts_hurwitz, count_formula, find_zeros, zeros_from_csv, zeros_to_csv, Analytic, HurwitzFunction,
    Rectangle, SpecFunction, ZeroRecord,
};
use zetaflow::output::fmt_g;
use zetaflow::tracker::{
    events_to_json, trajectories_to_csv, track_many, FamilyFlow, Flow, HurwitzFlow, StepControl, Trajectory,
};
use zetaflow::zeta::{hurwitz_zeta, hurwitz_zeta_alpha_derivative, hurwitz_zeta_s_derivative};
use zetaflow::{Complex64, Error, DEFAULT_TOL, MIN_ALPHA};

use crate::parse::{self, Selection};
use crate::svg;
use crate::{CountArgs, Deriv, EvalArgs, FamilyName, NullspaceArgs, ScanArgs, Target, TrackArgs};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;

/// Scans and tracking run at this multiple of the base tolerance.
const SCAN_FACTOR: f64 = 100.0;
const DEFAULT_WINDOW: (f64, f64) = (0.01, 40.0);
const MAX_SEED_T: f64 = 500.0;
const FAMILY_SIGMA: (f64, f64) = (-2.0, 3.0);
const DEFAULT_EPSILON: f64 = 0.01;
const DEFAULT_PRIME: u32 = 7;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn numeric(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_NUMERIC,
        message: message.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::NotPrime(_)
            | Error::NotSymmetric { .. }
            | Error::NotInNullSpace { .. }
            | Error::NoFlowParameter
            | Error::WrongFlow => usage(e.to_string()),
            _ => numeric(format!("{e:?}: {e}")),
        }
    }
}

type Outcome = Result<(), Failure>;

/// `--tol`, else `ZETAFLOW_TOL`, else the library default.
pub fn base_tolerance(flag: Option<f64>) -> Result<f64, Failure> {
    let tol = match (flag, std::env::var("ZETAFLOW_TOL")) {
        (Some(t), _) => t,
        (None, Ok(text)) => parse::real(&text).map_err(|m| usage(format!("ZETAFLOW_TOL: {m}")))?,
        (None, Err(std::env::VarError::NotPresent)) => DEFAULT_TOL,
        (None, Err(e)) => return Err(usage(format!("ZETAFLOW_TOL: {e}"))),
    };
    if !(tol > 0.0 && tol < 1.0) {
        return Err(usage(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    Ok(tol)
}

fn check_alpha(alpha: f64) -> Result<(), Failure> {
    if !(MIN_ALPHA..=1.0).contains(&alpha) {
        return Err(usage(format!("alpha must lie in [{MIN_ALPHA:e}, 1], got {alpha}")));
    }
    Ok(())
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn emit(path: Option<&PathBuf>, text: &str) -> Outcome {
    match path {
        Some(p) => write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_spec(path: &Path) -> Result<CombinationSpec, Failure> {
    Ok(CombinationSpec::from_json(&read_text(path)?)?)
}

pub fn eval(a: &EvalArgs, tol: f64) -> Outcome {
    let s = a.s;
    let (value, err) = match (&a.target, a.deriv) {
        (Target { alpha: Some(alpha), .. }, deriv) => {
            check_alpha(*alpha)?;
            let r = match deriv {
                None => hurwitz_zeta(s, *alpha, tol)?,
                Some(Deriv::S) => hurwitz_zeta_s_derivative(s, *alpha, tol)?,
                Some(Deriv::Alpha | Deriv::Param) => hurwitz_zeta_alpha_derivative(s, *alpha, tol)?,
            };
            (r.value, r.est_abs_error)
        }
        (Target { family_spec: Some(path), .. }, deriv) => {
            let spec = read_spec(path)?;
            match deriv {
                None => {
                    let r = spec.evaluate(s, tol)?;
                    (r.value, r.est_abs_error)
                }
                Some(Deriv::S) => {
                    let j = spec.jet(s, tol)?;
                    (j.ds, j.ds_error)
                }
                Some(Deriv::Alpha) => return Err(usage("--deriv alpha needs --alpha")),
                Some(Deriv::Param) => {
                    let param = spec.family.flow_parameter().ok_or(Error::NoFlowParameter)?;
                    let j = spec.family.flow_jet(s, Complex64::new(param, 0.0), tol)?;
                    (j.dparam, j.dparam_error)
                }
            }
        }
        _ => unreachable!("clap enforces exactly one target"),
    };
    println!("{} {} {}", fmt_g(value.re), fmt_g(value.im), fmt_g(err));
    Ok(())
}

fn target_function(target: &Target, tol: f64) -> Result<Box<dyn Analytic>, Failure> {
    Ok(match target {
        Target { alpha: Some(alpha), .. } => {
            check_alpha(*alpha)?;
            Box::new(HurwitzFunction::new(*alpha, tol))
        }
        Target { family_spec: Some(path), .. } => Box::new(SpecFunction::new(read_spec(path)?, tol)),
        _ => unreachable!("clap enforces exactly one target"),
    })
}

pub fn scan(a: &ScanArgs, tol: f64) -> Outcome {
    let r = &a.rect.0;
    let rect = Rectangle::new(r[0], r[1], r[2], r[3])?;
    let f = target_function(&a.target, tol * SCAN_FACTOR)?;
    let result = find_zeros(f.as_ref(), &rect)?;
    println!("{} {}", result.zeros.len(), result.winding);
    emit(a.out.as_ref(), &zeros_to_csv(&result.zeros))?;
    if !result.unresolved.is_empty() {
        for cell in &result.unresolved {
            let r = &cell.rect;
            eprintln!(
                "unresolved cell [{}, {}] x [{}, {}] winding {}: {}",
                fmt_g(r.sigma_min),
                fmt_g(r.sigma_max),
                fmt_g(r.t_min),
                fmt_g(r.t_max),
                cell.winding,
                cell.reason
            );
        }
        return Err(numeric(format!("{} unresolved cells", result.unresolved.len())));
    }
    Ok(())
}

pub fn count(a: &CountArgs, tol: f64) -> Outcome {
    check_alpha(a.alpha)?;
    let cmp = compare_counts_hurwitz(a.alpha, a.tmax, tol * SCAN_FACTOR)?;
    println!("predicted {}", fmt_g(cmp.predicted));
    println!("actual {}", cmp.actual);
    println!("deviation {}", fmt_g(cmp.deviation));
    if a.sweep {
        let mut csv = String::from("T,predicted,actual,deviation\n");
        let mut marks: Vec<f64> = (1..).map(|k| 10.0 * k as f64).take_while(|&t| t < a.tmax).collect();
        marks.push(a.tmax);
        for t in marks {
            let actual: i64 = cmp
                .zeros
                .iter()
                .filter(|z| z.location.im > 0.0 && z.location.im <= t)
                .map(|z| z.multiplicity as i64)
                .sum();
            let predicted = count_formula(t, a.alpha);
            csv.push_str(&format!(
                "{},{},{},{}\n",
                fmt_g(t),
                fmt_g(predicted),
                actual,
                fmt_g(predicted - actual as f64)
            ));
        }
        emit(a.out.as_ref(), &csv)?;
    }
    if cmp.unresolved > 0 {
        return Err(numeric(format!("{} unresolved cells in the counting scan", cmp.unresolved)));
    }
    Ok(())
}

struct TrackPlan {
    flow: Box<dyn Flow>,
    seed: Box<dyn Analytic>,
    from: f64,
    to: f64,
    sigma: (f64, f64),
    hurwitz: bool,
}

fn family_plan(family: Family, from: f64, to: f64, tol: f64) -> Result<TrackPlan, Failure> {
    let seed = SpecFunction::from_family(&family, Complex64::new(from, 0.0), tol)?;
    Ok(TrackPlan {
        flow: Box::new(FamilyFlow::new(family, tol)?),
        seed: Box::new(seed),
        from,
        to,
        sigma: FAMILY_SIGMA,
        hurwitz: false,
    })
}

fn plan(a: &TrackArgs, tol: f64) -> Result<TrackPlan, Failure> {
    let circuit = |from: f64| a.to.unwrap_or(from + 2.0 * PI * a.turns as f64);
    let which = a.family;
    if a.epsilon.is_some() && !matches!(which, Some(FamilyName::Psie5 | FamilyName::Psip)) {
        return Err(usage("--epsilon applies to psie5 and psip only"));
    }
    if (a.p.is_some() || a.x.is_some()) && which != Some(FamilyName::Psip) {
        return Err(usage("--p and --X apply to psip only"));
    }
    let epsilon = a.epsilon.unwrap_or(DEFAULT_EPSILON);
    if epsilon < 0.0 {
        return Err(usage("--epsilon must be non-negative"));
    }
    match which {
        Some(FamilyName::Hurwitz) => {
            let from = a.from.unwrap_or(1.0);
            let to = a.to.unwrap_or(0.01);
            check_alpha(from)?;
            check_alpha(to)?;
            Ok(TrackPlan {
                flow: Box::new(HurwitzFlow { tol }),
                seed: Box::new(HurwitzFunction::new(from, tol)),
                from,
                to,
                sigma: (-1.0 + from.ln() / (2.0 * PI * std::f64::consts::E).ln(), 3.0),
                hurwitz: true,
            })
        }
        Some(FamilyName::Psi5o) => {
            let from = a.from.unwrap_or_else(beta_i_angle);
            let family = Family::Psi5Odd { beta: Complex64::i() }.with_flow_parameter(from)?;
            family_plan(family, from, circuit(from), tol)
        }
        Some(FamilyName::Psie5) => {
            let from = a.from.unwrap_or(0.0);
            family_plan(Family::Psi5EvenPerturbed { epsilon, phi: from }, from, circuit(from), tol)
        }
        Some(FamilyName::Psip) => {
            let p = a.p.unwrap_or(DEFAULT_PRIME);
            let from = a.from.unwrap_or(0.0);
            let x = match &a.x {
                Some(x) => x.0.clone(),
                None => symmetry_matrix(p as u64)?.null_basis[0].clone(),
            };
            let spec = zetaflow::families::build_psi_prime(p, epsilon, from, &x)?;
            family_plan(spec.family, from, circuit(from), tol)
        }
        None => {
            let path = a.family_spec.as_ref().expect("clap requires a family");
            let spec = read_spec(path)?;
            let from = a
                .from
                .or_else(|| spec.family.flow_parameter())
                .ok_or(Error::NoFlowParameter)?;
            let family = spec.family.with_flow_parameter(from)?;
            family_plan(family, from, circuit(from), tol)
        }
    }
}

fn select(zeros: &[ZeroRecord], sel: &Selection) -> Result<Vec<(usize, Complex64)>, Failure> {
    let indexed = zeros.iter().enumerate().map(|(k, z)| (k + 1, z.location));
    match sel {
        Selection::All => Ok(indexed.collect()),
        Selection::Range(r) => {
            if *r.end() > zeros.len() {
                return Err(usage(format!(
                    "zero {} requested but only {} found",
                    r.end(),
                    zeros.len()
                )));
            }
            Ok(indexed.filter(|(k, _)| r.contains(k)).collect())
        }
    }
}

fn seed_zeros(a: &TrackArgs, plan: &TrackPlan) -> Result<Vec<ZeroRecord>, Failure> {
    if let Some(path) = &a.seeds {
        return Ok(zeros_from_csv(&read_text(path)?)?);
    }
    let (t0, mut t1) = match &a.window {
        Some(w) => (w.0[0], w.0[1]),
        None => DEFAULT_WINDOW,
    };
    loop {
        let rect = Rectangle::new(plan.sigma.0, plan.sigma.1, t0, t1)?;
        let scan = find_zeros(plan.seed.as_ref(), &rect)?;
        if !scan.unresolved.is_empty() {
            return Err(numeric(format!("seed scan left {} unresolved cells", scan.unresolved.len())));
        }
        let short = a.zeros.upper().is_some_and(|k| k > scan.zeros.len());
        if !short || a.window.is_some() || t1 >= MAX_SEED_T {
            return Ok(scan.zeros);
        }
        t1 = (t1 * 1.5).min(MAX_SEED_T);
    }
}

pub fn track(a: &TrackArgs, tol: f64) -> Outcome {
    let tol = tol * SCAN_FACTOR;
    let plan = plan(a, tol)?;
    let seeds = seed_zeros(a, &plan)?;
    let chosen = select(&seeds, &a.zeros)?;
    if chosen.is_empty() {
        return Err(usage("no zeros selected"));
    }
    let starts: Vec<Complex64> = chosen.iter().map(|(_, z)| *z).collect();
    let results = track_many(plan.flow.as_ref(), &starts, plan.from, plan.to, &StepControl::default());
    let mut done: Vec<Trajectory> = Vec::new();
    let mut lost = 0;
    for ((id, z), r) in chosen.iter().zip(results) {
        match r {
            Ok(mut tr) => {
                tr.zero_id = *id;
                done.push(tr);
            }
            Err(e) => {
                lost += 1;
                eprintln!("zero {id} at {}{:+}i: {e}", fmt_g(z.re), fmt_g(z.im));
            }
        }
    }
    emit(a.out.as_ref(), &trajectories_to_csv(&done))?;
    let events_path = a
        .events
        .clone()
        .or_else(|| a.out.as_ref().map(|p| p.with_extension("events.json")));
    if let Some(path) = events_path {
        write_text(&path, &events_to_json(&done))?;
    }
    if let Some(path) = &a.svg {
        let series: Vec<Vec<(f64, f64)>> = done
            .iter()
            .map(|tr| {
                tr.samples
                    .iter()
                    .map(|s| (s.param, if plan.hurwitz { s.scaled_t.unwrap_or(s.z.im) } else { s.z.im }))
                    .collect()
            })
            .collect();
        let y = if plan.hurwitz { "N(t, alpha)" } else { "t" };
        let x = done.first().map_or("param", |tr| tr.parameter_name.as_str());
        write_text(path, &svg::polylines(&series, x, y))?;
    }
    let events: usize = done.iter().map(|t| t.events.len()).sum();
    eprintln!("tracked {}/{} zeros, {events} events", done.len(), chosen.len());
    if lost > 0 {
        return Err(numeric(format!("{lost} trajectories lost")));
    }
    Ok(())
}

pub fn nullspace(a: &NullspaceArgs) -> Outcome {
    let primes: Vec<u64> = match (a.p, a.primes_up_to) {
        (Some(p), _) => vec![p],
        (None, Some(n)) => {
            if n > MAX_SYMMETRY_PRIME {
                return Err(usage(format!("--primes-up-to is limited to {MAX_SYMMETRY_PRIME}")));
            }
            (5..=n).filter(|&p| is_prime(p)).collect()
        }
        _ => unreachable!("clap enforces one of --p / --primes-up-to"),
    };
    println!("p order rank nullity p-4r");
    for p in primes {
        let m = symmetry_matrix(p)?;
        println!("{} {} {} {} {}", p, m.order(), m.rank, m.nullity, m.four_rank_offset());
        if a.basis {
            for (k, v) in m.null_basis.iter().enumerate() {
                let row: Vec<String> = v.iter().map(|x| fmt_g(*x)).collect();
                println!("  x{} {}", k + 1, row.join(","));
            }
        }
    }
    Ok(())
}
