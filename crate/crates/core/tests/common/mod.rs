#![allow(dead_code)]

use rug::Float;
use zetaflow::Complex64;

const PREC: u32 = 192;

/// Bernoulli numbers B_2 .. B_30.
const BERNOULLI: [(i64, i64); 15] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
];

#[derive(Clone, Debug)]
pub struct Big {
    re: Float,
    im: Float,
}

fn fl(x: f64) -> Float {
    Float::with_val(PREC, x)
}

impl Big {
    pub fn new(re: f64, im: f64) -> Self {
        Big { re: fl(re), im: fl(im) }
    }
    fn real(x: Float) -> Self {
        Big { re: x, im: fl(0.0) }
    }
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
    fn add(&self, o: &Big) -> Big {
        Big { re: Float::with_val(PREC, &self.re + &o.re), im: Float::with_val(PREC, &self.im + &o.im) }
    }
    fn sub(&self, o: &Big) -> Big {
        Big { re: Float::with_val(PREC, &self.re - &o.re), im: Float::with_val(PREC, &self.im - &o.im) }
    }
    fn mul(&self, o: &Big) -> Big {
        let re = Float::with_val(PREC, &self.re * &o.re) - Float::with_val(PREC, &self.im * &o.im);
        let im = Float::with_val(PREC, &self.re * &o.im) + Float::with_val(PREC, &self.im * &o.re);
        Big { re, im }
    }
    fn scale(&self, x: &Float) -> Big {
        Big { re: Float::with_val(PREC, &self.re * x), im: Float::with_val(PREC, &self.im * x) }
    }
    fn div(&self, o: &Big) -> Big {
        let d = Float::with_val(PREC, o.re.clone().square() + o.im.clone().square());
        let conj = Big { re: o.re.clone(), im: Float::with_val(PREC, -&o.im) };
        let n = self.mul(&conj);
        Big { re: n.re / &d, im: n.im / &d }
    }
    fn neg(&self) -> Big {
        Big { re: Float::with_val(PREC, -&self.re), im: Float::with_val(PREC, -&self.im) }
    }
    fn exp(&self) -> Big {
        let m = self.re.clone().exp();
        let (sin, cos) = self.im.clone().sin_cos(fl(0.0));
        Big { re: Float::with_val(PREC, &m * &cos), im: Float::with_val(PREC, &m * &sin) }
    }
}

/// ζ(s, α) and ∂ζ/∂s in 192-bit arithmetic, by a direct Euler–Maclaurin sum
/// with a generous cut-off. Only valid for real α in (0, 1] and s away from 1.
pub fn reference_hurwitz(s: Complex64, alpha: f64) -> (Complex64, Complex64) {
    let sb = Big::new(s.re, s.im);
    let one = Big::new(1.0, 0.0);
    let n = (3.0 * s.norm() + 60.0).ceil() as usize;
    let mut sum = Big::new(0.0, 0.0);
    let mut sum_ds = Big::new(0.0, 0.0);
    let a = fl(alpha);
    let pow = |x: &Float| -> (Big, Float) {
        let l = x.clone().ln();
        (sb.scale(&l).neg().exp(), l)
    };
    for k in 0..n {
        let x = Float::with_val(PREC, &a + k as u32);
        let (t, l) = pow(&x);
        sum = sum.add(&t);
        sum_ds = sum_ds.sub(&t.scale(&l));
    }
    let w = Float::with_val(PREC, &a + n as u32);
    let (w_s, lw) = pow(&w);
    let u = sb.sub(&one);
    let w_1s = w_s.scale(&w);
    let pole = w_1s.div(&u);
    sum = sum.add(&pole);
    sum_ds = sum_ds.sub(&pole.scale(&lw)).sub(&pole.div(&u));
    let half = fl(0.5);
    sum = sum.add(&w_s.scale(&half));
    sum_ds = sum_ds.sub(&w_s.scale(&half).scale(&lw));

    let mut poch = sb.clone();
    let mut poch_ds = one.clone();
    let w2 = Float::with_val(PREC, &w * &w);
    let mut wpow = w_s.div(&Big::real(w.clone()));
    let mut fact = fl(1.0);
    for (k, (num, den)) in BERNOULLI.iter().enumerate() {
        let two_k = 2 * (k as u32 + 1);
        fact *= (two_k - 1) * two_k;
        let coeff = Float::with_val(PREC, Float::with_val(PREC, *num) / Float::with_val(PREC, *den)) / &fact;
        sum = sum.add(&wpow.mul(&poch).scale(&coeff));
        let d = poch_ds.sub(&poch.scale(&lw));
        sum_ds = sum_ds.add(&wpow.mul(&d).scale(&coeff));
        let j = (2 * k + 1) as f64;
        let f1 = sb.add(&Big::new(j, 0.0));
        let f2 = sb.add(&Big::new(j + 1.0, 0.0));
        poch_ds = poch_ds.mul(&f1).mul(&f2).add(&poch.mul(&f1.add(&f2)));
        poch = poch.mul(&f1).mul(&f2);
        wpow = Big { re: wpow.re / &w2, im: wpow.im / &w2 };
    }
    (sum.to_c64(), sum_ds.to_c64())
}
