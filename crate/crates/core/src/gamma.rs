//! Complex log-gamma, used to test functional equations.

use num_complex::Complex;

use crate::scalar::Real;

// B_{2k}/(2k(2k−1)) for the Stirling series, k = 1..=8
const STIRLING: [(f64, f64); 8] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360360.0),
    (1.0, 156.0),
    (-3617.0, 122400.0),
];

/// ln Γ(z) on some branch (only differences and exponentials are meaningful).
/// `z` must not be a non-positive integer.
pub fn ln_gamma<T: Real>(z: Complex<T>) -> Complex<T> {
    let shift_to = T::lit(12.0);
    let mut z = z;
    let mut acc = Complex::new(T::zero(), T::zero());
    while z.re < shift_to {
        acc = acc - z.ln();
        z = z + T::one();
    }
    let half = T::lit(0.5);
    let two_pi = T::lit(2.0) * T::PI();
    let mut series = (z - half) * z.ln() - z + two_pi.ln() * half;
    let zinv = z.inv();
    let z2 = zinv * zinv;
    let mut zpow = zinv;
    for (num, den) in STIRLING {
        series = series + zpow * (T::lit(num) / T::lit(den));
        zpow = zpow * z2;
    }
    acc + series
}
