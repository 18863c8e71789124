//! Scalar abstractions.
//!
//! Exact arithmetic in `Z[ω]` is written against [`RingInt`] and the analytic
//! kernels (error function, weight function, compensated sums) against
//! [`Real`]. The rest of the crate works with the concrete aliases exported
//! from the crate root.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, PrimInt, Signed};

/// Signed machine integer used for Eisenstein coordinates.
pub trait RingInt:
    PrimInt + Signed + FromPrimitive + Hash + Debug + Display + Send + Sync + 'static
{
    fn lit(x: i64) -> Self {
        Self::from_i64(x).expect("literal fits every RingInt")
    }

    /// Least non-negative residue of `self` modulo `m > 0`.
    fn floor_rem(self, m: Self) -> Self {
        let r = self % m;
        if r < Self::zero() {
            r + m
        } else {
            r
        }
    }

    /// Floor division by `m > 0`.
    fn floor_div(self, m: Self) -> Self {
        let q = self / m;
        if self % m < Self::zero() {
            q - Self::one()
        } else {
            q
        }
    }
}

impl RingInt for i32 {}
impl RingInt for i64 {}
impl RingInt for i128 {}

/// Floating point: f32 or f64.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal converts to every Real")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Neumaier compensated accumulator.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Neumaier<T> {
    sum: T,
    comp: T,
    abs_sum: T,
    terms: usize,
}

impl<T: Real> Neumaier<T> {
    pub fn new() -> Self {
        Neumaier { sum: T::zero(), comp: T::zero(), abs_sum: T::zero(), terms: 0 }
    }

    #[inline]
    pub fn add(&mut self, v: T) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp = self.comp + ((self.sum - t) + v);
        } else {
            self.comp = self.comp + ((v - t) + self.sum);
        }
        self.sum = t;
        self.abs_sum = self.abs_sum + v.abs();
        self.terms += 1;
    }

    pub fn value(&self) -> T {
        self.sum + self.comp
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    /// Bound on the accumulated rounding error: `2ε Σ|v|` plus one rounding
    /// of the result.
    pub fn rounding_bound(&self) -> T {
        let eps = T::epsilon();
        T::lit(2.0) * eps * self.abs_sum + eps * self.value().abs()
    }
}

impl<T: Real> Extend<T> for Neumaier<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl<T: Real> FromIterator<T> for Neumaier<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Neumaier::new();
        acc.extend(iter);
        acc
    }
}

/// Compensated accumulator for complex values, one [`Neumaier`] per component.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexNeumaier<T> {
    re: Neumaier<T>,
    im: Neumaier<T>,
}

impl<T: Real> ComplexNeumaier<T> {
    pub fn new() -> Self {
        ComplexNeumaier { re: Neumaier::new(), im: Neumaier::new() }
    }

    #[inline]
    pub fn add(&mut self, v: Complex<T>) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    pub fn value(&self) -> Complex<T> {
        Complex::new(self.re.value(), self.im.value())
    }

    pub fn rounding_bound(&self) -> T {
        self.re.rounding_bound().hypot(self.im.rounding_bound())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let vals = [1.0f64, 1e100, 1.0, -1e100];
        let acc: Neumaier<f64> = vals.iter().copied().collect();
        assert_eq!(acc.value(), 2.0);
        assert_eq!(vals.iter().sum::<f64>(), 0.0);
    }

    #[test]
    fn neumaier_works_for_f32() {
        let mut acc = Neumaier::<f32>::new();
        let mut naive = 0.0f32;
        for _ in 0..100_000 {
            acc.add(0.1);
            naive += 0.1;
        }
        let exact = 100_000.0 * 0.1f32 as f64;
        assert!((acc.value() as f64 - exact).abs() < 1e-2);
        assert!((naive as f64 - exact).abs() > 1.0);
    }

    #[test]
    fn floor_helpers() {
        assert_eq!((-7i64).floor_rem(3), 2);
        assert_eq!((-7i128).floor_div(3), -3);
        assert_eq!(7i32.floor_div(3), 2);
    }
}
