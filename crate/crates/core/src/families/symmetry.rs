//! Symmetry-condition matrices for prime moduli and their null spaces.
//!
//! Row j (1-based, j = 1..(p−1)/2) of the matrix reads
//! `cos(2π·j·(k+1)/p) − [j = k+1]·√p/2` in pair column k = 1..(p−3)/2 and
//! `1/2` in the last column. Its null space holds the real directions X
//! along which `(1 + e^(2iφ)p^(1/2−s))ζ(s) + ε e^(iφ) p^(−s) g_p(s, X)` keeps
//! its zeros mirror-symmetric about the critical line. Construction is
//! checked by a functional-equation test on a few null directions.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex;

use super::{CombinationSpec, Family};
use crate::characters::is_prime;
use crate::error::{Error, Result};
use crate::gamma::ln_gamma;
use crate::Complex64;

/// Singular values below this count as zero.
pub const RANK_THRESHOLD: f64 = 1e-10;
/// Largest accepted functional-equation defect for an emitted family.
pub const FUNCTIONAL_EQUATION_TOL: f64 = 1e-8;
pub const MAX_SYMMETRY_PRIME: u64 = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryMatrix {
    pub p: u64,
    pub entries: DMatrix<f64>,
    pub singular_values: Vec<f64>,
    pub rank: usize,
    pub nullity: usize,
    /// Orthonormal, canonicalised basis of the null space.
    pub null_basis: Vec<Vec<f64>>,
}

impl SymmetryMatrix {
    pub fn order(&self) -> usize {
        self.entries.nrows()
    }

    /// ‖M·x‖₂.
    pub fn apply_norm(&self, x: &[f64]) -> f64 {
        let v = nalgebra::DVector::from_column_slice(x);
        (&self.entries * v).norm()
    }

    /// Signed offset `p − 4·rank`, which is ±1 for every prime checked.
    pub fn four_rank_offset(&self) -> i64 {
        self.p as i64 - 4 * self.rank as i64
    }

    /// Unit vector of the null space from coordinates in the basis.
    pub fn null_vector(&self, coords: &[f64]) -> Result<Vec<f64>> {
        if coords.len() != self.nullity {
            return Err(Error::InvalidArgument(format!(
                "expected {} null-space coordinates, got {}",
                self.nullity,
                coords.len()
            )));
        }
        let mut x = vec![0.0; self.order()];
        for (c, b) in coords.iter().zip(&self.null_basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += c * bi;
            }
        }
        let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n == 0.0 {
            return Err(Error::InvalidArgument("zero null-space direction".into()));
        }
        Ok(x.into_iter().map(|v| v / n).collect())
    }
}

/// Raw matrix entries, without rank analysis.
pub fn symmetry_matrix_entries(p: u64) -> DMatrix<f64> {
    let order = ((p - 1) / 2) as usize;
    let half_sqrt = (p as f64).sqrt() / 2.0;
    DMatrix::from_fn(order, order, |row, col| {
        let j = row + 1;
        if col + 1 == order {
            return 0.5;
        }
        let k = col + 1;
        let angle = 2.0 * PI * ((j * (k + 1)) as u64 % p) as f64 / p as f64;
        let mut v = angle.cos();
        if j == k + 1 {
            v -= half_sqrt;
        }
        v
    })
}

/// Pivoted Gram–Schmidt on the columns of the null-space projector, with a
/// sign fix, so the basis depends only on the subspace.
fn canonical_basis(rows: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let Some(n) = rows.first().map(|r| r.len()) else {
        return Vec::new();
    };
    let mut columns: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut v = vec![0.0; n];
            for r in &rows {
                for (x, y) in v.iter_mut().zip(r) {
                    *x += r[i] * y;
                }
            }
            v
        })
        .collect();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut picked: Vec<(usize, Vec<f64>)> = Vec::new();
    while picked.len() < rows.len() {
        let (best, best_norm) = columns
            .iter()
            .enumerate()
            .filter(|(i, _)| !picked.iter().any(|(p, _)| p == i))
            .map(|(i, v)| (i, norm(v)))
            .fold((usize::MAX, 0.0), |acc, x| if x.1 > acc.1 * (1.0 + 1e-9) { x } else { acc });
        if best == usize::MAX || best_norm < 1e-8 {
            break;
        }
        let mut v: Vec<f64> = columns[best].iter().map(|x| x / best_norm).collect();
        if let Some(first) = v.iter().find(|x| x.abs() > 1e-12) {
            if *first < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
        for c in columns.iter_mut() {
            let d: f64 = c.iter().zip(&v).map(|(x, y)| x * y).sum();
            for (x, y) in c.iter_mut().zip(&v) {
                *x -= d * y;
            }
        }
        picked.push((best, v));
    }
    picked.sort_by_key(|(i, _)| *i);
    picked.into_iter().map(|(_, v)| v).collect()
}

/// Build and analyse the symmetry matrix for a prime `5 ≤ p ≤ 1000`.
pub fn symmetry_matrix(p: u64) -> Result<SymmetryMatrix> {
    if !(5..=MAX_SYMMETRY_PRIME).contains(&p) || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let entries = symmetry_matrix_entries(p);
    let order = entries.nrows();
    let svd = entries.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let singular_values: Vec<f64> = svd.singular_values.iter().copied().collect();
    let null_rows: Vec<Vec<f64>> = singular_values
        .iter()
        .enumerate()
        .filter(|(_, &sv)| sv <= RANK_THRESHOLD)
        .map(|(i, _)| v_t.row(i).iter().copied().collect())
        .collect();
    let null_basis = canonical_basis(null_rows);
    let nullity = null_basis.len();
    let matrix = SymmetryMatrix {
        p,
        entries,
        singular_values,
        rank: order - nullity,
        nullity,
        null_basis,
    };
    for x in &matrix.null_basis {
        let r = matrix.apply_norm(x);
        if r > RANK_THRESHOLD {
            return Err(Error::ConstructionUnvalidated { p, defect: r });
        }
    }
    for x in validation_directions(&matrix)? {
        let family = Family::PsiPrime {
            p: p as u32,
            epsilon: 1.0,
            phi: 0.7,
            x,
        };
        let (terms, _) = family.flow_coefficients(Complex::new(0.7, 0.0))?;
        let spec = CombinationSpec::with_family(p as u32, true, terms, family)?;
        let defect = functional_equation_defect(&spec, Parity::Even, 1e-12)?;
        if !(defect <= FUNCTIONAL_EQUATION_TOL) {
            return Err(Error::ConstructionUnvalidated { p, defect });
        }
    }
    Ok(matrix)
}

/// Null directions put through the functional-equation check: the first
/// and last basis vectors and the normalised sum of the basis.
fn validation_directions(m: &SymmetryMatrix) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::new();
    if let (Some(first), Some(last)) = (m.null_basis.first(), m.null_basis.last()) {
        out.push(first.clone());
        if m.nullity > 1 {
            out.push(last.clone());
        }
        if m.nullity > 2 {
            out.push(m.null_vector(&vec![1.0; m.nullity])?);
        }
    }
    Ok(out)
}

/// Parity of the Gamma factor in the completed function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Detect parity from `c_l = ±c_(m−l)`; `None` when neither holds.
    pub fn of(spec: &CombinationSpec) -> Option<Parity> {
        let m = spec.modulus;
        let coeff = |l: u32| {
            spec.terms
                .iter()
                .find(|t| t.l == l)
                .map_or(Complex::new(0.0, 0.0), |t| t.c)
        };
        let scale: f64 = spec.terms.iter().map(|t| t.c.norm()).sum::<f64>().max(1.0);
        let even = (1..m).all(|l| (coeff(l) - coeff(m - l)).norm() <= 1e-12 * scale);
        let odd = (1..m).all(|l| (coeff(l) + coeff(m - l)).norm() <= 1e-12 * scale)
            && coeff(m).norm() <= 1e-12 * scale;
        match (even, odd) {
            (true, _) => Some(Parity::Even),
            (_, true) => Some(Parity::Odd),
            _ => None,
        }
    }
}

fn completed(spec: &CombinationSpec, parity: Parity, s: Complex64, tol: f64) -> Result<Complex64> {
    let shift = match parity {
        Parity::Even => 0.0,
        Parity::Odd => 1.0,
    };
    let h = (s + shift) * 0.5;
    let log_q = (spec.modulus as f64 / PI).ln();
    let psi = spec.evaluate(s, tol)?.value;
    Ok((h * log_q + ln_gamma(h)).exp() * psi)
}

/// How far `Λ(s)/conj(Λ(1 − s̄))` is from a unimodular constant over a few
/// fixed sample points, where `Λ(s) = (m/π)^((s+a)/2) Γ((s+a)/2) Ψ(s)`.
/// A symmetric combination has defect at rounding level.
pub fn functional_equation_defect(spec: &CombinationSpec, parity: Parity, tol: f64) -> Result<f64> {
    const SAMPLES: [(f64, f64); 4] = [(0.3, 7.0), (-0.7, 13.0), (1.9, 20.0), (0.5, 3.3)];
    let mut ratios = Vec::with_capacity(SAMPLES.len());
    for (re, im) in SAMPLES {
        let s = Complex::new(re, im);
        let mirror = Complex::new(1.0 - re, im);
        let num = completed(spec, parity, s, tol)?;
        let den = completed(spec, parity, mirror, tol)?.conj();
        ratios.push(num / den);
    }
    let first = ratios[0];
    let spread = ratios
        .iter()
        .map(|r| (r - first).norm())
        .fold(0.0, f64::max);
    Ok(spread.max((first.norm() - 1.0).abs()))
}
