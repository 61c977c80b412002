use super::functions::{Analytic, Regularized};
use super::newton::{newton_refine_within, polish_multiple, RESIDUAL_TOL};
use super::winding::{raw_winding, winding_report, POLE_MARGIN};
use super::{sort_zeros, Rectangle, ZeroRecord};
use crate::error::Result;
use crate::Complex64;

/// Cells smaller than this with winding ≥ 2 are reported as one multiple zero.
pub const MIN_CELL_DIAMETER: f64 = 1e-6;
/// Split positions tried in turn when the split line meets a zero.
const SPLIT_AT: [f64; 6] = [0.5, 0.5371, 0.4629, 0.5713, 0.4287, 0.6131];
const MULTIPLE_DERIVATIVE_TOL: f64 = 1e-6;

/// A cell whose zeros could not be pinned down.
#[derive(Debug, Clone, PartialEq)]
pub struct UnresolvedCell {
    pub rect: Rectangle,
    pub winding: i64,
    pub reason: String,
}

/// Result of [`find_zeros`].
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroScan {
    pub zeros: Vec<ZeroRecord>,
    pub unresolved: Vec<UnresolvedCell>,
    /// Winding of the whole (possibly nudged) rectangle.
    pub winding: i64,
    pub rect: Rectangle,
    /// Whether `(s − 1)·f` was scanned instead of `f`.
    pub regularized: bool,
}

impl ZeroScan {
    pub fn total_multiplicity(&self) -> i64 {
        self.zeros.iter().map(|z| z.multiplicity as i64).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }
}

type CellOutput = (Vec<ZeroRecord>, Vec<UnresolvedCell>);

fn unresolved(rect: Rectangle, winding: i64, reason: String) -> CellOutput {
    (
        Vec::new(),
        vec![UnresolvedCell {
            rect,
            winding,
            reason,
        }],
    )
}

fn resolve<G: Analytic + ?Sized>(g: &G, cell: Rectangle, w: i64) -> CellOutput {
    if w == 0 {
        return (Vec::new(), Vec::new());
    }
    if w < 0 {
        return unresolved(cell, w, "negative winding".into());
    }
    let small = cell.diameter() < MIN_CELL_DIAMETER;
    if w == 1 {
        let found = newton_refine_within(g, cell.center(), cell.diameter());
        match found {
            Ok(z) if cell.contains(z.location) => return (vec![z], Vec::new()),
            Err(e) if small => return unresolved(cell, w, e.to_string()),
            _ if small => return unresolved(cell, w, "Newton left the cell".into()),
            _ => {}
        }
    } else if small {
        return match polish_multiple(g, cell.center(), w as u32, cell.diameter()) {
            Ok(z) => {
                let flat = g
                    .jet(z.location)
                    .map(|(_, d)| d.norm() < MULTIPLE_DERIVATIVE_TOL)
                    .unwrap_or(false);
                if z.residual <= RESIDUAL_TOL && flat {
                    (vec![z], Vec::new())
                } else {
                    unresolved(cell, w, "cluster of zeros below resolution".into())
                }
            }
            Err(e) => unresolved(cell, w, e.to_string()),
        };
    }
    for at in SPLIT_AT {
        let (a, b) = cell.split(at);
        match raw_winding(g, &a) {
            Ok(Some((wa, _))) => {
                let (left, right) = rayon::join(|| resolve(g, a, wa), || resolve(g, b, w - wa));
                let (mut zeros, mut bad) = left;
                zeros.extend(right.0);
                bad.extend(right.1);
                return (zeros, bad);
            }
            Ok(None) => continue,
            Err(e) => return unresolved(cell, w, e.to_string()),
        }
    }
    unresolved(cell, w, "every split line met a zero".into())
}

/// Locate all zeros of `f` inside `rect`. Cells that cannot be resolved are
/// reported in [`ZeroScan::unresolved`], never dropped.
pub fn find_zeros<F: Analytic + ?Sized>(f: &F, rect: &Rectangle) -> Result<ZeroScan> {
    let report = winding_report(f, rect)?;
    let (mut zeros, mut unresolved) = if report.regularized {
        resolve(&Regularized(f), report.rect, report.winding)
    } else {
        resolve(f, report.rect, report.winding)
    };
    let one = Complex64::new(1.0, 0.0);
    for z in &mut zeros {
        if report.regularized && (z.location - one).norm() > POLE_MARGIN {
            if let Ok((v, _)) = f.jet(z.location) {
                z.residual = v.norm();
            }
        }
        z.function_id = f.label();
    }
    sort_zeros(&mut zeros);
    unresolved.sort_by(|a, b| {
        a.rect
            .t_min
            .total_cmp(&b.rect.t_min)
            .then(a.rect.sigma_min.total_cmp(&b.rect.sigma_min))
    });
    Ok(ZeroScan {
        zeros,
        unresolved,
        winding: report.winding,
        rect: report.rect,
        regularized: report.regularized,
    })
}
