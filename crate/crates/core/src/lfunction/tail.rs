//! Rigorous bounds for the omitted terms of truncated AFE sums.

use std::f64::consts::PI;

use super::weight::{polynomial_tail_constant, v_weight};

/// `π/(3√3)`, the residue of `ζ_K` at `s = 1`.
pub const IDEAL_DENSITY: f64 = 0.604_599_788_078_072_6;

/// Upper bound for the number of nonzero ideals of norm `≤ x`.
///
/// Disjoint Voronoi hexagons (circumradius `1/√3`, area `√3/2`) around the
/// lattice points of `|z|² ≤ x` fit in the disc of radius `√x + 1/√3`; there
/// are six generators per ideal.
pub fn ideal_count_bound(x: f64) -> f64 {
    IDEAL_DENSITY * (x + 2.0 * (x / 3.0).sqrt() + 1.0 / 3.0)
}

fn ideal_density_bound(x: f64) -> f64 {
    IDEAL_DENSITY * (1.0 + 1.0 / (3.0 * x).sqrt())
}

/// How the tail `Σ_{N(b) > M} N(b)^{−1/2} V(N(b)/Ŷ)` is bounded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TailModel {
    /// `erfc(z) ≤ e^{−z²}/(z√π)`.
    #[default]
    Gaussian,
    /// `V(y) ≤ C₃ y^{−3}` with a grid-certified `C₃`.
    Polynomial,
}

impl TailModel {
    /// Bound on `Σ_{ideals b, N(b) > m} N(b)^{−1/2} V(N(b)/scale)`, by partial
    /// summation against [`ideal_count_bound`].
    pub fn tail(&self, m: f64, scale: f64) -> f64 {
        let f = m.powf(-0.5) * v_weight(m / scale).expect("positive argument");
        let integral = match self {
            TailModel::Gaussian => {
                // ∫_M^∞ x^{−1/2} erfc(√(κx)) dx ≤ e^{−κM} / (κM √(κπ))
                let kappa = 2.0 * PI / scale;
                (-kappa * m).exp() / (kappa * m * (kappa * PI).sqrt())
            }
            TailModel::Polynomial => polynomial_tail_constant() * scale.powi(3) * m.powf(-2.5) / 2.5,
        };
        ideal_count_bound(m) * f + ideal_density_bound(m) * integral
    }

    /// Smallest `M` of the form `⌈scale · 1.05^k⌉` meeting `target`, or
    /// `None` beyond `budget`.
    pub fn cutoff(&self, scale: f64, target: f64, budget: f64) -> Option<u64> {
        let mut m = scale.max(1.0);
        while m <= budget {
            let mm = m.ceil();
            if self.tail(mm, scale) <= target {
                return Some(mm as u64);
            }
            m *= 1.05;
        }
        None
    }
}
