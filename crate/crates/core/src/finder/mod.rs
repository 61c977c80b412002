//! Zero location by the argument principle, Newton refinement and the
//! zero counting formula.

mod count;
mod functions;
mod newton;
mod scan;
mod winding;

use crate::output::fmt_g;
use crate::Complex64;

pub use count::{compare_counts, compare_counts_hurwitz, count_formula, counting_window, CountComparison};
pub use functions::{Analytic, ClosureFunction, HurwitzFunction, Regularized, SpecFunction};
pub use newton::{newton_refine, newton_refine_within, polish_multiple, NEWTON_MAX_ITER, RESIDUAL_TOL};
pub use scan::{find_zeros, UnresolvedCell, ZeroScan, MIN_CELL_DIAMETER};
pub(crate) use winding::raw_winding;
pub use winding::{winding_number, winding_report, WindingReport, INITIAL_SAMPLES, MAX_SAMPLES_PER_SIDE, MAX_NUDGES};

/// Default evaluation tolerance for scans. Phases only need a few digits,
/// and the looser value keeps large ordinates inside the f64 error budget.
pub const SCAN_TOL: f64 = crate::DEFAULT_TOL * 100.0;

/// Closed axis-aligned rectangle in the s-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl Rectangle {
    pub fn new(sigma_min: f64, sigma_max: f64, t_min: f64, t_max: f64) -> crate::Result<Self> {
        let all_finite = [sigma_min, sigma_max, t_min, t_max].iter().all(|v| v.is_finite());
        if !all_finite || !(sigma_min < sigma_max) || !(t_min < t_max) {
            return Err(crate::Error::InvalidArgument(format!(
                "degenerate rectangle [{sigma_min}, {sigma_max}] x [{t_min}, {t_max}]"
            )));
        }
        Ok(Self {
            sigma_min,
            sigma_max,
            t_min,
            t_max,
        })
    }

    pub fn width(&self) -> f64 {
        self.sigma_max - self.sigma_min
    }

    pub fn height(&self) -> f64 {
        self.t_max - self.t_min
    }

    pub fn diameter(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.sigma_min + self.sigma_max),
            0.5 * (self.t_min + self.t_max),
        )
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.sigma_min && z.re <= self.sigma_max && z.im >= self.t_min && z.im <= self.t_max
    }

    /// Distance from `z` to the rectangle (0 inside).
    pub fn distance(&self, z: Complex64) -> f64 {
        let dx = (self.sigma_min - z.re).max(z.re - self.sigma_max).max(0.0);
        let dy = (self.t_min - z.im).max(z.im - self.t_max).max(0.0);
        dx.hypot(dy)
    }

    pub fn grow(&self, by: f64) -> Self {
        Self {
            sigma_min: self.sigma_min - by,
            sigma_max: self.sigma_max + by,
            t_min: self.t_min - by,
            t_max: self.t_max + by,
        }
    }

    /// Corners in counter-clockwise order starting bottom-left.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.sigma_min, self.t_min),
            Complex64::new(self.sigma_max, self.t_min),
            Complex64::new(self.sigma_max, self.t_max),
            Complex64::new(self.sigma_min, self.t_max),
        ]
    }

    /// Split perpendicular to the longer side at fraction `at` of it.
    pub fn split(&self, at: f64) -> (Self, Self) {
        if self.width() >= self.height() {
            let x = self.sigma_min + at * self.width();
            (
                Self { sigma_max: x, ..*self },
                Self { sigma_min: x, ..*self },
            )
        } else {
            let y = self.t_min + at * self.height();
            (Self { t_max: y, ..*self }, Self { t_min: y, ..*self })
        }
    }
}

/// A located zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroRecord {
    pub location: Complex64,
    pub multiplicity: u32,
    /// |f| at the location.
    pub residual: f64,
    pub function_id: String,
}

/// Sort zeros by t, then σ.
pub fn sort_zeros(zeros: &mut [ZeroRecord]) {
    zeros.sort_by(|a, b| {
        a.location
            .im
            .total_cmp(&b.location.im)
            .then(a.location.re.total_cmp(&b.location.re))
    });
}

/// CSV with columns `sigma,t,multiplicity,residual`.
pub fn zeros_to_csv(zeros: &[ZeroRecord]) -> String {
    let mut out = String::from("sigma,t,multiplicity,residual\n");
    for z in zeros {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_g(z.location.re),
            fmt_g(z.location.im),
            z.multiplicity,
            fmt_g(z.residual)
        ));
    }
    out
}

/// Parse the CSV written by [`zeros_to_csv`]. Only position and
/// multiplicity are needed downstream; the function id is left empty.
pub fn zeros_from_csv(text: &str) -> crate::Result<Vec<ZeroRecord>> {
    let bad = |line: usize| crate::Error::InvalidArgument(format!("malformed zero CSV at line {line}"));
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == "sigma,t,multiplicity,residual" => {}
        _ => return Err(bad(1)),
    }
    let mut out = Vec::new();
    for (k, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(bad(k + 2));
        }
        let num = |i: usize| fields[i].trim().parse::<f64>().map_err(|_| bad(k + 2));
        out.push(ZeroRecord {
            location: Complex64::new(num(0)?, num(1)?),
            multiplicity: fields[2].trim().parse().map_err(|_| bad(k + 2))?,
            residual: num(3)?,
            function_id: String::new(),
        });
    }
    Ok(out)
}
