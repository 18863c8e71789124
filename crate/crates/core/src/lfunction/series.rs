//! Absolutely convergent evaluations of `L(s, χ)` for `s > 1`, used to check
//! character values independently of the AFE.

use num_complex::Complex64;

use super::tail::{ideal_count_bound, IDEAL_DENSITY};
use crate::characters::FamilyElement;
use crate::eisenstein::{enumerate_primary, primary_primes};
use crate::error::{Error, Result};
use crate::scalar::ComplexNeumaier;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// `Σ_{N(b) > m} N(b)^{−s}` over ideals, bounded by partial summation.
pub fn ideal_tail(m: f64, s: f64) -> f64 {
    ideal_count_bound(m) * m.powf(-s) + IDEAL_DENSITY * (1.0 + 1.0 / (3.0 * m).sqrt()) * m.powf(1.0 - s) / (s - 1.0)
}

fn check_s(s: f64) -> Result<()> {
    if s < 1.5 {
        return Err(Error::Domain(format!("series evaluation needs s ≥ 1.5, got {s}")));
    }
    Ok(())
}

/// `Σ χ(a) N(a)^{−s}` over primary `a` with `N(a) ≤ cutoff`.
pub fn series_at_s(elem: &FamilyElement, s: f64, cutoff: u64) -> Result<SeriesValue> {
    check_s(s)?;
    let mut acc = ComplexNeumaier::new();
    for a in enumerate_primary(cutoff) {
        let chi = elem.chi(&a);
        if !chi.is_zero() {
            acc.add(chi.to_complex() * (a.norm() as f64).powf(-s));
        }
    }
    Ok(SeriesValue { value: acc.value(), tail_bound: ideal_tail(cutoff as f64, s) + acc.rounding_bound() })
}

/// `∏ (1 − χ(π) N(π)^{−s})^{−1}` over primary primes with `N(π) ≤ cutoff`.
pub fn euler_product(elem: &FamilyElement, s: f64, cutoff: u64) -> Result<SeriesValue> {
    check_s(s)?;
    let mut log = ComplexNeumaier::new();
    for pi in primary_primes(cutoff) {
        let chi = elem.chi(&pi);
        if !chi.is_zero() {
            let z = chi.to_complex() * (pi.norm() as f64).powf(-s);
            log.add(-(Complex64::new(1.0, 0.0) - z).ln());
        }
    }
    let value = log.value().exp();
    // |log(1 − z)| ≤ |z|/(1 − |z|) for the omitted primes.
    let p = cutoff as f64;
    let delta = ideal_tail(p, s) / (1.0 - p.powf(-s));
    let tail_bound = value.norm() * (delta + log.rounding_bound()).exp_m1();
    Ok(SeriesValue { value, tail_bound })
}
