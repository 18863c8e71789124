//! Special functions: `erfc`, complex `ln Γ`, Bernoulli numbers.

use num_complex::Complex64;

use crate::scalar::Real;

/// `B_2, B_4, …, B_20`.
pub const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const SERIES_LIMIT: f64 = 2.0;

/// Complementary error function.
///
/// Maclaurin series of `erf` below `|x| = 2`, Lentz continued fraction above.
pub fn erfc<T: Real>(x: T) -> T {
    if x < T::zero() {
        return T::lit(2.0) - erfc(-x);
    }
    if x < T::lit(SERIES_LIMIT) {
        T::one() - erf_series(x)
    } else {
        erfc_continued_fraction(x)
    }
}

pub fn erf<T: Real>(x: T) -> T {
    if x.abs() < T::lit(SERIES_LIMIT) {
        erf_series(x)
    } else {
        T::one() - erfc(x)
    }
}

fn erf_series<T: Real>(x: T) -> T {
    // erf x = 2/√π Σ (−1)ⁿ x^{2n+1} / (n! (2n+1))
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0;
    loop {
        n += 1;
        term = -term * x2 / T::lit(n as f64);
        let t = term / T::lit((2 * n + 1) as f64);
        sum = sum + t;
        if t.abs() <= T::epsilon() * sum.abs() * T::lit(0.01) || n > 200 {
            break;
        }
    }
    sum * T::FRAC_2_SQRT_PI()
}

fn erfc_continued_fraction<T: Real>(x: T) -> T {
    // erfc x = e^{−x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …))))
    let tiny = T::min_positive_value() / T::epsilon();
    let mut f = x;
    let mut c = x;
    let mut d = T::zero();
    for n in 1..500 {
        let a = T::lit(n as f64 * 0.5);
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = d.recip();
        let delta = c * d;
        f = f * delta;
        if (delta - T::one()).abs() <= T::epsilon() {
            break;
        }
    }
    (-x * x).exp() / (f * T::PI().sqrt())
}

/// `ln Γ(z)` for `Re z > 0`, on some branch (only `exp` of it is meaningful).
pub fn ln_gamma(z: Complex64) -> Complex64 {
    const SHIFT: f64 = 15.0;
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.re < SHIFT {
        acc -= z.ln();
        z += 1.0;
    }
    let half_ln_2pi = 0.5 * std::f64::consts::TAU.ln();
    let mut s = (z - 0.5) * z.ln() - z + half_ln_2pi;
    let z2 = z * z;
    let mut zp = z;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate().take(8) {
        let k = (k + 1) as f64;
        s += *b / (2.0 * k * (2.0 * k - 1.0)) / zp;
        zp *= z2;
    }
    s + acc
}
