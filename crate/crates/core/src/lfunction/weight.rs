//! The weight `V(y) = (1/2πi) ∫_{(2)} (2πy)^{−u} Γ(1/2+u)/Γ(1/2) du/u`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::quadrature::{gauss_legendre, integrate};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::{erfc, ln_gamma};

/// `V(y) = Γ(1/2, 2πy)/Γ(1/2) = erfc(√(2πy))`.
pub fn v_weight<T: Real>(y: T) -> Result<T> {
    if !(y > T::zero()) {
        return Err(Error::Domain(format!("V(y) needs y > 0, got {y:?}")));
    }
    Ok(erfc((T::lit(2.0) * T::PI() * y).sqrt()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureParams {
    /// Width of each Gauss–Legendre panel along `Im u`.
    pub panel_width: f64,
    pub order: usize,
    /// Target for the truncation tail beyond `|Im u| = T`.
    pub tail_tolerance: f64,
    /// Fail if the combined error estimate exceeds this.
    pub target_error: f64,
}

impl Default for QuadratureParams {
    fn default() -> Self {
        QuadratureParams { panel_width: 0.5, order: 20, tail_tolerance: 1e-14, target_error: 1e-11 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourValue {
    pub value: f64,
    /// Panel-refinement difference plus the truncation tail bound.
    pub error: f64,
    pub height: f64,
}

/// Bound on `(1/π) ∫_T^∞ |integrand| dt` from
/// `|Γ(σ+it)| ≤ √(2π) |z|^{σ−1/2} e^{−π|t|/2} e^{1/(6|z|)}` at `σ = 5/2`.
pub fn contour_tail_bound(y: f64, t: f64) -> f64 {
    let sigma = 2.5f64;
    let c = (2.0 * PI).sqrt() * (1.0 / (6.0 * sigma)).exp() / PI.sqrt();
    let poly = (t + sigma).powi(2) / t;
    let decay = PI / 2.0 - 2.0 / (t + sigma);
    (2.0 * PI * y).powi(-2) * c * poly * (-PI * t / 2.0).exp() / decay / PI
}

/// `V(y)` by integrating along `Re u = 2`, truncated at a height where
/// [`contour_tail_bound`] is below the requested tolerance.
pub fn v_weight_contour(y: f64, params: &QuadratureParams) -> Result<ContourValue> {
    if !(1e-3..=1e2).contains(&y) {
        return Err(Error::Domain(format!("contour evaluation of V supports y in [1e-3, 1e2], got {y}")));
    }
    let mut height = 4.0 * params.panel_width;
    while contour_tail_bound(y, height) > params.tail_tolerance {
        height += params.panel_width;
    }
    let ln_2piy = (2.0 * PI * y).ln();
    let ln_gamma_half = 0.5 * PI.ln();
    let f = |t: f64| {
        let u = Complex64::new(2.0, t);
        let z = -u * ln_2piy + ln_gamma(u + 0.5) - ln_gamma_half;
        (z.exp() / u).re / PI
    };
    let rule = gauss_legendre(params.order);
    let panels = (height / params.panel_width).round() as usize;
    let coarse = integrate(f, 0.0, height, panels, &rule);
    let fine = integrate(f, 0.0, height, 2 * panels, &rule);
    let error = (fine - coarse).abs() + contour_tail_bound(y, height);
    if error > params.target_error {
        return Err(Error::Convergence(format!("contour quadrature for V({y}) reached error {error:e}")));
    }
    Ok(ContourValue { value: fine, error, height })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightCertificate {
    /// `(y, erfc form, contour value, contour error estimate)`.
    pub points: Vec<(f64, f64, f64, f64)>,
    pub max_deviation: f64,
    pub in_unit_interval: bool,
    pub decreasing: bool,
    pub passed: bool,
}

pub const CERTIFICATION_TOLERANCE: f64 = 1e-10;

/// Compares the closed form against the contour integral on `count`
/// log-spaced points of `[lo, hi]`, and checks `0 < V < 1` and strict
/// decrease on a finer grid.
pub fn certify_weight(lo: f64, hi: f64, count: usize) -> Result<WeightCertificate> {
    let params = QuadratureParams::default();
    let grid = |n: usize| (0..n).map(move |i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64));
    let mut points = Vec::with_capacity(count);
    let mut max_deviation = 0.0f64;
    for y in grid(count) {
        let closed: f64 = v_weight(y)?;
        let c = v_weight_contour(y, &params)?;
        max_deviation = max_deviation.max((closed - c.value).abs());
        points.push((y, closed, c.value, c.error));
    }
    let fine: Vec<f64> = grid(20 * count).map(|y| v_weight(y).expect("y > 0")).collect();
    let in_unit_interval = fine.iter().all(|&v| v > 0.0 && v < 1.0);
    let decreasing = fine.windows(2).all(|w| w[1] < w[0]);
    let passed = max_deviation <= CERTIFICATION_TOLERANCE && in_unit_interval && decreasing;
    Ok(WeightCertificate { points, max_deviation, in_unit_interval, decreasing, passed })
}

/// Whether the closed form passed certification (run once per process).
/// When it did not, [`weight`] integrates the contour instead.
pub fn closed_form_certified() -> bool {
    static CERTIFIED: OnceLock<bool> = OnceLock::new();
    *CERTIFIED.get_or_init(|| certify_weight(1e-3, 10.0, 50).map(|c| c.passed).unwrap_or(false))
}

/// Production weight: the certified closed form, or the contour integral.
/// Arguments beyond the contour range are far in the tail, where `V` is
/// bounded by `e^{−2πy}`.
pub fn weight(y: f64) -> f64 {
    if closed_form_certified() {
        return v_weight(y).expect("weight arguments are positive");
    }
    if y < 1e-3 {
        1.0
    } else if y > 1e2 {
        0.0
    } else {
        v_weight_contour(y, &QuadratureParams::default()).map(|c| c.value).unwrap_or(f64::NAN)
    }
}

/// `C₃ ≥ sup_y y³ V(y)`: the grid maximum over `[10⁻³, 50]` with 5% slack.
/// Below the grid `y³V ≤ 10⁻⁹`; above it `y³V` is decreasing.
pub fn polynomial_tail_constant() -> f64 {
    static C3: OnceLock<f64> = OnceLock::new();
    *C3.get_or_init(|| {
        let n = 20_000;
        let max = (0..=n)
            .map(|i| 1e-3 * (5e4f64).powf(i as f64 / n as f64))
            .map(|y| y.powi(3) * v_weight(y).expect("y > 0"))
            .fold(0.0, f64::max);
        1.05 * max
    })
}
