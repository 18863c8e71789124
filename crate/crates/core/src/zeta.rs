//! `ζ(s)`, `L(s, χ₋₃)` and `ζ_K(s) = ζ(s) L(s, χ₋₃)` by Euler–Maclaurin
//! summation of Hurwitz zeta functions.

use crate::error::{Error, Result};
use crate::special::BERNOULLI_EVEN;

const TERMS: usize = 30;

/// Valid range for the public evaluations.
pub const S_MAX: f64 = 50.0;

/// `Σ_{k<N} (k+a)^{−s} + (N+a)^{−s}/2 + Σ_j B_{2j}/(2j)! s(s+1)…(s+2j−2) (N+a)^{−s−2j+1}`,
/// i.e. `ζ(s, a)` without the `(N+a)^{1−s}/(s−1)` term.
fn hurwitz_regular_part(s: f64, a: f64) -> f64 {
    let mut acc = 0.0;
    for k in (0..TERMS).rev() {
        acc += (k as f64 + a).powf(-s);
    }
    let x = TERMS as f64 + a;
    acc += 0.5 * x.powf(-s);
    // rising factorial s(s+1)…(s+2j−2) / (2j)!
    let mut coeff = s / 2.0;
    let mut xp = x.powf(-s - 1.0);
    let x2 = x * x;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let j = j + 1;
        acc += b * coeff * xp;
        let (m, n) = (2 * j as u32, 2 * j as u32 + 1);
        coeff *= (s + m as f64 - 1.0) * (s + m as f64) / (m as f64 + 1.0) / (n as f64 + 1.0);
        xp /= x2;
    }
    acc
}

/// `(e^{u ℓ} − 1)/u`, continuous at `u = 0`.
fn expm1_over(u: f64, l: f64) -> f64 {
    if u == 0.0 {
        l
    } else {
        (u * l).exp_m1() / u
    }
}

/// `(s − 1) ζ(s)`, analytic near `s = 1` (value 1 there). Valid for `s > 0`.
pub fn riemann_zeta_residue_form(s: f64) -> f64 {
    let x = TERMS as f64 + 1.0;
    // (s−1)ζ(s) = (s−1)·regular + x^{1−s}
    (s - 1.0) * hurwitz_regular_part(s, 1.0) + x.powf(1.0 - s)
}

/// `ζ(s)` for `s > 0`, `s ≠ 1`.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    check(s, 0.0)?;
    if s == 1.0 {
        return Err(Error::Domain("ζ has a pole at s = 1".into()));
    }
    Ok(riemann_zeta_residue_form(s) / (s - 1.0))
}

/// `L(s, χ₋₃) = 3^{−s} (ζ(s, 1/3) − ζ(s, 2/3))` for `s > 0`.
pub fn dirichlet_l_chi3(s: f64) -> Result<f64> {
    check(s, 0.0)?;
    Ok(l_chi3(s))
}

fn l_chi3(s: f64) -> f64 {
    let (a1, a2) = (1.0 / 3.0, 2.0 / 3.0);
    let x1 = TERMS as f64 + a1;
    // ((x1)^{1−s} − (x2)^{1−s})/(s−1) = x1^{1−s} · (e^{(1−s)ℓ} − 1)/(1−s), ℓ = ln(x2/x1)
    let l = (1.0 / 3.0 / x1).ln_1p();
    let singular = x1.powf(1.0 - s) * expm1_over(1.0 - s, l);
    3f64.powf(-s) * (hurwitz_regular_part(s, a1) - hurwitz_regular_part(s, a2) + singular)
}

fn check(s: f64, lo: f64) -> Result<()> {
    if !(s > lo && s <= S_MAX) {
        return Err(Error::Domain(format!("s = {s} outside ({lo}, {S_MAX}]")));
    }
    Ok(())
}

/// `(s − 1) ζ_K(s)` for `s > 0`, continuous at `s = 1` where it equals
/// `L(1, χ₋₃) = π/(3√3)`.
pub fn zeta_k_residue_form(s: f64) -> Result<f64> {
    check(s, 0.0)?;
    Ok(riemann_zeta_residue_form(s) * l_chi3(s))
}

/// The Dedekind zeta function of `Q(ω)` for `1 < s ≤ 50`.
pub fn zeta_k(s: f64) -> Result<f64> {
    check(s, 1.0)?;
    Ok(zeta_k_residue_form(s)? / (s - 1.0))
}
