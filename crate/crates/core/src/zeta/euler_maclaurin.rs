//! Euler–Maclaurin kernel for the Hurwitz zeta function.
//!
//! For `w = N + a` the kernel evaluates the entire function
//!
//! ```text
//! F(s, a) = ζ(s, a) − 1/(s − 1)
//!         = Σ_{n<N} (n + a)^(−s) + (w^(1−s) − 1)/(s − 1) + w^(−s)/2
//!           + Σ_{k=1}^{M} B_{2k}/(2k)! · (s)_{2k−1} · w^(−s−2k+1) + R
//! ```
//!
//! and its s-derivative term by term. The pole term is folded into the
//! finite part through `exprel`, so `F` stays accurate as `s → 1`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest number of Bernoulli pairs used.
pub const MAX_BERNOULLI_PAIRS: usize = 15;

/// `B_{2k}` as exact numerator/denominator pairs, k = 1..=15.
const BERNOULLI_2K: [(f64, f64); MAX_BERNOULLI_PAIRS] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

/// Cauchy radius used to bound the derivative of the remainder.
const CAUCHY_RADIUS: f64 = 0.5;

const MAX_TERMS: usize = 1 << 20;

/// Output of one kernel pass.
#[derive(Debug, Clone, Copy)]
pub(crate) struct EmParts<T> {
    /// ζ(s, a) − 1/(s − 1).
    pub finite: Complex<T>,
    /// ∂/∂s of `finite`.
    pub finite_ds: Complex<T>,
    /// Truncation bound on `finite`.
    pub trunc: T,
    pub trunc_ds: T,
    /// Rounding estimate on `finite`.
    pub round: T,
    pub round_ds: T,
    /// Largest summand magnitude; sets the cancellation scale.
    pub max_term: T,
    /// ln|N + a|, the log scale of the derivative summands.
    pub log_w: T,
}

/// B_{2k}/(2k)! for k = 1..=15 in the target precision.
fn bernoulli_coefficients<T: Real>() -> [T; MAX_BERNOULLI_PAIRS] {
    let mut out = [T::zero(); MAX_BERNOULLI_PAIRS];
    let mut fact = T::one();
    for (k, (num, den)) in BERNOULLI_2K.iter().enumerate() {
        let two_k = 2 * (k + 1);
        fact = fact * T::lit((two_k - 1) as f64) * T::lit(two_k as f64);
        out[k] = T::lit(*num) / T::lit(*den) / fact;
    }
    out
}

/// (e^z − 1)/z and its derivative, stable near z = 0.
fn exprel<T: Real>(z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let one = Complex::new(T::one(), T::zero());
    if z.norm() < T::lit(0.5) {
        // Σ z^k/(k+1)!  and  Σ k z^(k−1)/(k+1)!
        let mut value = Complex::new(T::zero(), T::zero());
        let mut deriv = Complex::new(T::zero(), T::zero());
        let mut zk = one;
        let mut zk_prev = Complex::new(T::zero(), T::zero());
        let mut fact = T::one();
        for k in 0..40 {
            fact = fact * T::lit((k + 1) as f64);
            value = value + zk / fact;
            if k > 0 {
                deriv = deriv + zk_prev * (T::lit(k as f64) / fact);
            }
            zk_prev = zk;
            zk = zk * z;
            if zk.norm() / fact < T::epsilon() * T::lit(1e-3) {
                break;
            }
        }
        (value, deriv)
    } else {
        let ez = z.exp();
        let value = (ez - one) / z;
        let deriv = (ez * (z - one) + one) / (z * z);
        (value, deriv)
    }
}

/// log of the remainder bound for a given (N, M), or None when the bound
/// does not apply (σ' + 2M − 1 ≤ 0).
fn log_bound<T: Real>(s: Complex<T>, log_w: T, arg_pen: T, m: usize, radius: T) -> Option<T> {
    let sigma = s.re - radius;
    let expo = sigma + T::lit((2 * m) as f64) - T::one();
    if expo <= T::zero() {
        return None;
    }
    let s_abs = s.norm();
    let mut log_poch = T::zero();
    for j in 0..2 * m {
        let factor = if radius > T::zero() {
            s_abs + radius + T::lit(j as f64)
        } else {
            (s + T::lit(j as f64)).norm()
        };
        log_poch = log_poch + factor.max(T::min_positive_value()).ln();
    }
    let two_pi = T::lit(2.0) * T::PI();
    let mut lb = T::lit(4.0).ln() + log_poch - T::lit((2 * m) as f64) * two_pi.ln() - expo * log_w
        - expo.ln()
        + arg_pen;
    if radius > T::zero() {
        lb = lb - radius.ln();
    }
    Some(lb)
}

/// Pick the Bernoulli order minimising the derivative bound for this N.
/// Returns (M, log trunc bound, log derivative bound).
fn best_order<T: Real>(s: Complex<T>, log_w: T, arg_pen: T) -> Option<(usize, T, T)> {
    let radius = T::lit(CAUCHY_RADIUS);
    let mut best: Option<(usize, T, T)> = None;
    for m in 1..=MAX_BERNOULLI_PAIRS {
        let (Some(lb), Some(lbd)) = (
            log_bound(s, log_w, arg_pen, m, T::zero()),
            log_bound(s, log_w, arg_pen, m, radius),
        ) else {
            continue;
        };
        let worst = lb.max(lbd);
        if best.map_or(true, |(_, b, bd)| worst < b.max(bd)) {
            best = Some((m, lb, lbd));
        }
    }
    best
}

/// Run the kernel for `ζ(s, a)` with `Re a > 0`, meeting an absolute
/// truncation target of `tol/4 · max(1, |a^(−s)|)`.
pub(crate) fn em_kernel<T: Real>(s: Complex<T>, a: Complex<T>, tol: T) -> Result<EmParts<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let first_term = (-s * a.ln()).exp().norm();
    let target = (T::lit(0.25) * tol * first_term.max(T::one())).ln();

    let t_abs = s.im.abs();
    let mut n = ((t_abs / T::PI()).ceil().to_usize().unwrap_or(MAX_TERMS)).max(10);
    let (n, m) = loop {
        let w = a + T::lit(n as f64);
        let log_w = w.norm().ln();
        let arg_pen = (t_abs * w.arg()).abs();
        let best = best_order(s, log_w, arg_pen);
        match best {
            Some((m, lb, lbd)) if lb.max(lbd) <= target => break (n, m),
            None => {
                return Err(Error::ToleranceUnreachable {
                    requested: tol.to_f64_lossy(),
                    achieved: f64::INFINITY,
                })
            }
            _ if n >= MAX_TERMS => {
                let achieved = best
                    .map(|(_, lb, lbd)| lb.max(lbd).exp().to_f64_lossy())
                    .unwrap_or(f64::INFINITY);
                return Err(Error::ToleranceUnreachable {
                    requested: tol.to_f64_lossy(),
                    achieved,
                });
            }
            _ => n = (n + (n / 4).max(1)).min(MAX_TERMS),
        }
    };

    let s_abs = s.norm();
    let mut sum = zero;
    let mut sum_ds = zero;
    let mut rss = T::zero();
    let mut rss_ds = T::zero();
    let mut abs_sum = T::zero();
    let mut max_term = T::zero();
    for k in 0..n {
        let x = a + T::lit(k as f64);
        let lx = x.ln();
        let term = (-s * lx).exp();
        sum = sum + term;
        sum_ds = sum_ds - term * lx;
        let mag = term.norm();
        let lmag = lx.norm();
        let cond = mag * (T::one() + s_abs * lmag);
        rss = rss + cond * cond;
        rss_ds = rss_ds + cond * cond * lmag * lmag;
        abs_sum = abs_sum + mag;
        max_term = max_term.max(mag);
    }

    let w = a + T::lit(n as f64);
    let lw = w.ln();
    let w_neg_s = (-s * lw).exp();
    let one = Complex::new(T::one(), T::zero());
    let u = s - one;
    let (er, er_d) = exprel(-u * lw);
    // (w^(−u) − 1)/u and its u-derivative
    let pole_part = -lw * er;
    let pole_part_ds = lw * lw * er_d;
    let half = T::lit(0.5);
    let mut finite = sum + pole_part + w_neg_s * half;
    let mut finite_ds = sum_ds + pole_part_ds - lw * w_neg_s * half;

    let coeffs = bernoulli_coefficients::<T>();
    let mut poch = s;
    let mut poch_ds = one;
    let w2 = w * w;
    let mut wpow = w_neg_s / w;
    let mut tail_abs = T::zero();
    for (k, coeff) in coeffs.iter().enumerate().take(m) {
        let term = wpow * poch * *coeff;
        finite = finite + term;
        finite_ds = finite_ds + wpow * (poch_ds - poch * lw) * *coeff;
        tail_abs = tail_abs + term.norm();
        let j = T::lit((2 * k + 1) as f64);
        let f1 = s + j;
        let f2 = s + j + T::one();
        poch_ds = poch_ds * f1 * f2 + poch * (f1 + f2);
        poch = poch * f1 * f2;
        wpow = wpow / w2;
    }

    let lwn = lw.norm();
    let tail_cond = (w_neg_s.norm() + pole_part.norm() + tail_abs)
        * (T::one() + s_abs * lwn);
    let eps = T::epsilon();
    let round = eps * (T::lit(2.0) * (rss.sqrt() + tail_cond) + abs_sum);
    let round_ds =
        eps * (T::lit(2.0) * (rss_ds.sqrt() + tail_cond * lwn) + abs_sum * lwn);

    let log_w = w.norm().ln();
    let arg_pen = (t_abs * w.arg()).abs();
    let radius = T::lit(CAUCHY_RADIUS);
    let trunc = log_bound(s, log_w, arg_pen, m, T::zero()).map_or(T::infinity(), |b| b.exp());
    let trunc_ds = log_bound(s, log_w, arg_pen, m, radius).map_or(T::infinity(), |b| b.exp());

    Ok(EmParts {
        finite,
        finite_ds,
        trunc,
        trunc_ds,
        round,
        round_ds,
        max_term,
        log_w,
    })
}
