//! Central values `L(1/2, χ)` by the approximate functional equation
//!
//! `L(1/2, χ) = Σ_b χ(b) N(b)^{−1/2} V(N(b)/Y) + ε Σ_b χ̄(b) N(b)^{−1/2} V(N(b)Y/(3q))`
//!
//! over ideals `b = (1−ω)^r a`, `a` primary, where `q` is the conductor norm
//! and `ε = W(χ)/√q`. Family characters are trivial on `1−ω`, so `b`
//! contributes `3^{−r/2} χ(a) N(a)^{−1/2}`.

use std::f64::consts::SQRT_2;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;

use super::tail::TailModel;
use super::weight::weight;
use crate::characters::FamilyElement;
use crate::eisenstein::enumerate_primary;
use crate::error::{Error, Result};
use crate::gauss::root_number;
use crate::scalar::{ComplexNeumaier, Neumaier};
use crate::Eisenstein;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Relative error allowance for each evaluated term (weight, powers, ε).
const TERM_RELATIVE_ERROR: f64 = 1e-13;

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const MIN_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AfeSettings {
    pub tolerance: f64,
    pub tail_model: TailModel,
    /// Largest ideal norm either sum may run to.
    pub cutoff_budget: f64,
}

impl Default for AfeSettings {
    fn default() -> Self {
        AfeSettings { tolerance: DEFAULT_TOLERANCE, tail_model: TailModel::Gaussian, cutoff_budget: 1e8 }
    }
}

/// `Y = √(3q)`, which gives both sums the same length.
pub fn balanced_y(cond_norm: u64) -> f64 {
    (3.0 * cond_norm as f64).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LValueRecord {
    pub elem: FamilyElement,
    pub l_half: Complex64,
    /// `W(χ)`, of modulus `√q`.
    pub root_number: Complex64,
    pub y_param: f64,
    /// Rigorous bound on `|l_half − L(1/2, χ)|`.
    pub truncation_bound: f64,
    pub cutoff_norm: u64,
}

/// Evaluates central values, sharing the table of primary elements.
#[derive(Debug)]
pub struct LEvaluator {
    settings: AfeSettings,
    primaries: RwLock<Arc<Vec<(Eisenstein, f64)>>>,
}

impl LEvaluator {
    pub fn new(settings: AfeSettings) -> Result<Self> {
        if !(settings.tolerance >= MIN_TOLERANCE) {
            return Err(Error::Domain(format!("tolerance {:e} below the supported minimum {MIN_TOLERANCE:e}", settings.tolerance)));
        }
        Ok(LEvaluator { settings, primaries: RwLock::new(Arc::new(Vec::new())) })
    }

    pub fn settings(&self) -> &AfeSettings {
        &self.settings
    }

    fn primaries(&self, m: u64) -> Arc<Vec<(Eisenstein, f64)>> {
        {
            let cur = self.primaries.read().expect("primaries lock");
            if cur.last().is_some_and(|(_, n)| *n >= m as f64) {
                return cur.clone();
            }
        }
        let mut cur = self.primaries.write().expect("primaries lock");
        let have = cur.last().map_or(0.0, |x| x.1);
        if have < m as f64 {
            let target = m.max((2.0 * have) as u64);
            let list: Vec<_> = enumerate_primary(target).into_iter().map(|a| (a, a.norm() as f64)).collect();
            *cur = Arc::new(list);
        }
        cur.clone()
    }

    /// `L(1/2, χ)` at the balanced `Y`.
    pub fn evaluate(&self, elem: &FamilyElement) -> Result<LValueRecord> {
        self.evaluate_at(elem, balanced_y(elem.cond_norm))
    }

    pub fn evaluate_at(&self, elem: &FamilyElement, y: f64) -> Result<LValueRecord> {
        let w = root_number(elem)?;
        self.evaluate_with_root_number(elem, y, w)
    }

    /// The AFE with a caller-supplied `W(χ)`.
    pub fn evaluate_with_root_number(&self, elem: &FamilyElement, y: f64, w: Complex64) -> Result<LValueRecord> {
        if !(y > 0.0 && y.is_finite()) {
            return Err(Error::Domain(format!("Y must be positive, got {y}")));
        }
        let q = elem.cond_norm as f64;
        let scale1 = y;
        let scale2 = 3.0 * q / y;
        let s = &self.settings;
        let target = s.tolerance / 4.0;
        let cut = |scale: f64| {
            s.tail_model
                .cutoff(scale, target, s.cutoff_budget)
                .ok_or_else(|| Error::capacity("AFE cutoff norm", s.cutoff_budget, s.cutoff_budget))
        };
        let (m1, m2) = (cut(scale1)?, cut(scale2)?);
        let tail = s.tail_model.tail(m1 as f64, scale1) + s.tail_model.tail(m2 as f64, scale2);
        let m = m1.max(m2);
        let eps = w / q.sqrt();

        let mut first = ComplexNeumaier::new();
        let mut second = ComplexNeumaier::new();
        let mut magnitude = Neumaier::new();
        for (a, n) in self.primaries(m).iter() {
            if *n > m as f64 {
                break;
            }
            let chi = elem.chi(a);
            if chi.is_zero() {
                continue;
            }
            let chi = chi.to_complex();
            let inv = n.sqrt().recip();
            let w1 = geometric_weight(*n, scale1, m1 as f64);
            let w2 = geometric_weight(*n, scale2, m2 as f64);
            first.add(chi * (inv * w1));
            second.add(chi.conj() * (inv * w2));
            magnitude.add(inv * (w1 + w2));
        }
        let s2 = second.value();
        let l_half = first.value() + eps * s2;
        let rounding = first.rounding_bound() + second.rounding_bound() * SQRT_2 + TERM_RELATIVE_ERROR * magnitude.value();
        let bound = tail + rounding;
        if bound > s.tolerance || !l_half.re.is_finite() || !l_half.im.is_finite() {
            return Err(Error::Convergence(format!("L(1/2) for {elem}: error bound {bound:e} exceeds tolerance {:e}", s.tolerance)));
        }
        Ok(LValueRecord { elem: *elem, l_half, root_number: w, y_param: y, truncation_bound: bound, cutoff_norm: m })
    }
}

/// `Σ_{r ≥ 0, 3^r n ≤ m} 3^{−r/2} V(3^r n / scale)`.
fn geometric_weight(n: f64, scale: f64, m: f64) -> f64 {
    let mut acc = 0.0;
    let mut x = n;
    let mut c = 1.0;
    while x <= m {
        acc += c * weight(x / scale);
        x *= 3.0;
        c /= SQRT_3;
    }
    acc
}

/// `L(1/2, χ)` at the default settings and balanced `Y`.
pub fn afe_central_value(elem: &FamilyElement, y_param: f64, tolerance: f64) -> Result<LValueRecord> {
    LEvaluator::new(AfeSettings { tolerance, ..AfeSettings::default() })?.evaluate_at(elem, y_param)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ten() -> FamilyElement {
        FamilyElement::new(Eisenstein::from_int(10), Eisenstein::from_int(1)).unwrap()
    }

    #[test]
    fn y_independence_for_ten() {
        let e = ten();
        let ev = LEvaluator::new(AfeSettings::default()).unwrap();
        let y0 = balanced_y(e.cond_norm);
        let vals: Vec<_> = [y0 / 2.0, y0, 2.0 * y0].iter().map(|&y| ev.evaluate_at(&e, y).unwrap()).collect();
        for v in &vals {
            assert!(v.truncation_bound <= 1e-8);
            assert!((v.l_half - vals[1].l_half).norm() <= 2e-8, "{} vs {}", v.l_half, vals[1].l_half);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(LEvaluator::new(AfeSettings { tolerance: 1e-12, ..Default::default() }).is_err());
        let ev = LEvaluator::new(AfeSettings::default()).unwrap();
        assert!(ev.evaluate_at(&ten(), -1.0).is_err());
        let tight = LEvaluator::new(AfeSettings { cutoff_budget: 10.0, ..Default::default() }).unwrap();
        assert!(matches!(tight.evaluate(&ten()), Err(Error::Capacity { .. })));
    }
}
