use std::f64::consts::{E, PI};

use super::functions::{Analytic, HurwitzFunction};
use super::scan::find_zeros;
use super::{Rectangle, ZeroRecord};
use crate::error::{Error, Result};
use crate::zeta::MIN_ALPHA;

/// Largest T accepted by [`compare_counts`].
pub const MAX_COUNT_T: f64 = 500.0;
/// Lower edge of the counting window; keeps real zeros off the boundary.
pub const COUNT_T_MIN: f64 = 0.01;
/// A zero closer than this to a vertical window edge widens the window.
pub const EDGE_MARGIN: f64 = 0.2;
const MAX_WIDENINGS: usize = 4;

/// `(T/2π)·ln(T/2π) − T/2π − (T/2π)·ln α`.
pub fn count_formula(t: f64, alpha: f64) -> f64 {
    let x = t / (2.0 * PI);
    x * x.ln() - x - x * alpha.ln()
}

/// Predicted versus scanned zero count.
#[derive(Debug, Clone, PartialEq)]
pub struct CountComparison {
    pub t_max: f64,
    pub alpha: f64,
    pub predicted: f64,
    pub actual: i64,
    /// `predicted − actual`.
    pub deviation: f64,
    /// Window finally scanned.
    pub window: Rectangle,
    pub zeros: Vec<ZeroRecord>,
    pub unresolved: usize,
}

/// Initial scan window `[−1 + ln α / ln(2πe), 3] × [0.01, T]`.
pub fn counting_window(alpha: f64, t_max: f64) -> Result<Rectangle> {
    if !(alpha >= MIN_ALPHA && alpha <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha must lie in [{MIN_ALPHA:e}, 1], got {alpha}"
        )));
    }
    if !(t_max > COUNT_T_MIN && t_max <= MAX_COUNT_T) {
        return Err(Error::InvalidArgument(format!(
            "T must lie in ({COUNT_T_MIN}, {MAX_COUNT_T}], got {t_max}"
        )));
    }
    Rectangle::new(-1.0 + alpha.ln() / (2.0 * PI * E).ln(), 3.0, COUNT_T_MIN, t_max)
}

/// Count the zeros of `f` with `0 < t ≤ T` and compare with the counting
/// formula at the effective parameter `alpha`.
pub fn compare_counts<F: Analytic + ?Sized>(f: &F, alpha: f64, t_max: f64) -> Result<CountComparison> {
    let mut window = counting_window(alpha, t_max)?;
    let mut widenings = 0;
    loop {
        let scan = find_zeros(f, &window)?;
        let near_edge = scan.zeros.iter().any(|z| {
            z.location.re - scan.rect.sigma_min < EDGE_MARGIN
                || scan.rect.sigma_max - z.location.re < EDGE_MARGIN
        }) || scan.unresolved.iter().any(|c| {
            c.rect.sigma_min - scan.rect.sigma_min < EDGE_MARGIN
                || scan.rect.sigma_max - c.rect.sigma_max < EDGE_MARGIN
        });
        if near_edge && widenings < MAX_WIDENINGS {
            let half = window.width();
            let mid = 0.5 * (window.sigma_min + window.sigma_max);
            window = Rectangle::new(mid - half, mid + half, window.t_min, window.t_max)?;
            widenings += 1;
            continue;
        }
        let predicted = count_formula(t_max, alpha);
        return Ok(CountComparison {
            t_max,
            alpha,
            predicted,
            actual: scan.winding,
            deviation: predicted - scan.winding as f64,
            window: scan.rect,
            zeros: scan.zeros,
            unresolved: scan.unresolved.len(),
        });
    }
}

/// [`compare_counts`] for `ζ(s, α)`.
pub fn compare_counts_hurwitz(alpha: f64, t_max: f64, tol: f64) -> Result<CountComparison> {
    counting_window(alpha, t_max)?;
    compare_counts(&HurwitzFunction::new(alpha, tol), alpha, t_max)
}
