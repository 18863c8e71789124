//! Elements `a + bω` of `Z[ω]`, `ω = e^{2πi/3}`, `ω² = −1 − ω`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::RingInt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EisensteinInt<T> {
    /// Coefficient of 1.
    pub a: T,
    /// Coefficient of ω.
    pub b: T,
}

impl<T: RingInt> EisensteinInt<T> {
    pub const fn new(a: T, b: T) -> Self {
        EisensteinInt { a, b }
    }

    pub fn from_int(a: T) -> Self {
        Self::new(a, T::zero())
    }

    pub fn omega() -> Self {
        Self::new(T::zero(), T::one())
    }

    pub fn omega_squared() -> Self {
        Self::new(-T::one(), -T::one())
    }

    /// The prime `1 − ω` above 3.
    pub fn ramified_prime() -> Self {
        Self::new(T::one(), -T::one())
    }

    /// The six units `ω^k` followed by `−ω^k`, `k = 0, 1, 2`.
    pub fn units() -> [Self; 6] {
        let one = Self::one();
        let w = Self::omega();
        let w2 = Self::omega_squared();
        [one, w, w2, -one, -w, -w2]
    }

    /// `a² − ab + b²`.
    pub fn norm(&self) -> T {
        self.a * self.a - self.a * self.b + self.b * self.b
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a - self.b, -self.b)
    }

    /// `z + z̄ = 2a − b`.
    pub fn trace(&self) -> T {
        self.a + self.a - self.b
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == T::one()
    }

    /// `a ≡ 1`, `b ≡ 0 (mod 3)`.
    pub fn is_primary(&self) -> bool {
        let three = T::lit(3);
        self.a.floor_rem(three) == T::one() && self.b.floor_rem(three) == T::zero()
    }

    /// Whether `1 − ω` divides `self`; `a + bω ≡ a + b (mod 1 − ω)`.
    pub fn divisible_by_ramified(&self) -> bool {
        (self.a + self.b).floor_rem(T::lit(3)) == T::zero()
    }

    /// Congruence of coordinates modulo a rational integer `m`.
    pub fn congruent_mod_int(&self, other: &Self, m: T) -> bool {
        (self.a - other.a).floor_rem(m) == T::zero() && (self.b - other.b).floor_rem(m) == T::zero()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = *self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Returns `(unit, primary)` with `unit · primary = self` and
    /// `primary ≡ 1 (mod 3)`.
    pub fn primary_associate(&self) -> Result<(Self, Self)> {
        if self.norm().floor_rem(T::lit(3)) == T::zero() {
            return Err(Error::Domain(format!("{self} is not coprime to 3 and has no primary associate")));
        }
        for u in Self::units() {
            let p = u * *self;
            if p.is_primary() {
                // u is a unit, so u⁻¹ = ū.
                return Ok((u.conj(), p));
            }
        }
        unreachable!("an element coprime to 3 has exactly one primary associate")
    }

    /// Division with remainder: `self = q·y + r` with `N(r) ≤ ¾ N(y)`.
    ///
    /// Each coordinate of `self / y` is rounded to the nearest integer, ties
    /// toward zero.
    pub fn div_rem(&self, y: &Self) -> Result<(Self, Self)> {
        let n = y.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = *self * y.conj();
        let q = Self::new(round_div(num.a, n), round_div(num.b, n));
        let r = *self - q * *y;
        Ok((q, r))
    }

    /// `self / y` when the division is exact.
    pub fn exact_div(&self, y: &Self) -> Option<Self> {
        let n = y.norm();
        if n.is_zero() {
            return None;
        }
        let num = *self * y.conj();
        if num.a % n == T::zero() && num.b % n == T::zero() {
            Some(Self::new(num.a / n, num.b / n))
        } else {
            None
        }
    }

    pub fn divides(&self, x: &Self) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.exact_div(self).is_some()
    }

    /// A fixed representative of the associate class of `self`: the primary
    /// associate when one exists, otherwise the associate maximising `(a, b)`.
    pub fn canonical_associate(&self) -> Self {
        if self.is_zero() {
            return *self;
        }
        match self.primary_associate() {
            Ok((_, p)) => p,
            Err(_) => Self::units()
                .iter()
                .map(|u| *u * *self)
                .max_by(|x, y| (x.a, x.b).cmp(&(y.a, y.b)))
                .expect("six units"),
        }
    }

    /// Generator of the ideal `(x, y)`, normalised by [`Self::canonical_associate`].
    pub fn gcd(x: &Self, y: &Self) -> Result<Self> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::Domain("gcd(0, 0) is undefined".into()));
        }
        let (mut u, mut v) = (*x, *y);
        while !v.is_zero() {
            let (_, r) = u.div_rem(&v)?;
            u = v;
            v = r;
        }
        Ok(u.canonical_associate())
    }

    pub fn to_complex(&self) -> Complex64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        Complex64::new(a - 0.5 * b, b * 0.5 * 3f64.sqrt())
    }
}

/// `round(p / n)` for `n > 0`, halves rounded toward zero.
fn round_div<T: RingInt>(p: T, n: T) -> T {
    let q = p.floor_div(n);
    let twice_rem = (p - q * n) + (p - q * n);
    if twice_rem > n || (twice_rem == n && q < T::zero()) {
        q + T::one()
    } else {
        q
    }
}

impl<T: RingInt> Zero for EisensteinInt<T> {
    fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<T: RingInt> One for EisensteinInt<T> {
    fn one() -> Self {
        Self::new(T::one(), T::zero())
    }
}

impl<T: RingInt> Add for EisensteinInt<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl<T: RingInt> Sub for EisensteinInt<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl<T: RingInt> Mul for EisensteinInt<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
        let bd = self.b * o.b;
        Self::new(self.a * o.a - bd, self.a * o.b + self.b * o.a - bd)
    }
}

impl<T: RingInt> Neg for EisensteinInt<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl<T: RingInt> AddAssign for EisensteinInt<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: RingInt> SubAssign for EisensteinInt<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: RingInt> MulAssign for EisensteinInt<T> {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<T: RingInt> fmt::Display for EisensteinInt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = T::zero();
        match (self.a == zero, self.b == zero) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*w", self.b),
            (false, false) if self.b < zero => write!(f, "{}-{}*w", self.a, -self.b),
            (false, false) => write!(f, "{}+{}*w", self.a, self.b),
        }
    }
}

impl<T: RingInt> fmt::Debug for EisensteinInt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = EisensteinInt<i128>;

    #[test]
    fn norms() {
        assert_eq!(E::new(1, -1).norm(), 3);
        assert_eq!(E::new(1, 3).norm(), 7);
        assert_eq!(E::zero().norm(), 0);
    }

    #[test]
    fn omega_is_a_cube_root_of_unity() {
        let w = E::omega();
        assert_eq!(w * w, E::omega_squared());
        assert_eq!(w.pow(3), E::one());
        assert_eq!(E::one() + w + w * w, E::zero());
        assert_eq!(w.conj(), w * w);
    }

    #[test]
    fn primary_associate_examples() {
        assert_eq!(E::from_int(10).primary_associate().unwrap(), (E::one(), E::from_int(10)));
        let x = E::new(3, 1);
        let (u, p) = x.primary_associate().unwrap();
        assert_eq!(p, E::new(-2, -3));
        assert_eq!(u, E::omega());
        assert_eq!(u * p, x);
        assert_eq!(E::from_int(2).primary_associate().unwrap(), (-E::one(), E::from_int(-2)));
        assert!(E::new(1, -1).primary_associate().is_err());
        assert!(E::from_int(3).primary_associate().is_err());
    }

    #[test]
    fn div_rem_examples() {
        let seven = E::from_int(7);
        let p = E::new(1, 3);
        let (q, r) = seven.div_rem(&p).unwrap();
        assert_eq!(r, E::zero());
        assert_eq!(q * p, seven);
        assert_eq!(q, E::new(-2, -3));
        let x = E::new(17, -4);
        assert_eq!(x.div_rem(&E::one()).unwrap(), (x, E::zero()));
        assert_eq!(x.div_rem(&E::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn ties_round_toward_zero() {
        assert_eq!(round_div(5i64, 2), 2);
        assert_eq!(round_div(-5i64, 2), -2);
        assert_eq!(round_div(7i64, 2), 3);
        assert_eq!(round_div(-7i64, 2), -3);
        assert_eq!(round_div(-8i64, 3), -3);
        assert_eq!(round_div(8i64, 3), 3);
    }

    #[test]
    fn gcd_examples() {
        assert!(E::gcd(&E::from_int(10), &E::from_int(7)).unwrap().is_unit());
        assert_eq!(E::gcd(&E::from_int(14), &E::from_int(7)).unwrap(), E::from_int(7));
        let x = E::new(4, 9);
        assert_eq!(E::gcd(&x, &E::zero()).unwrap(), x.canonical_associate());
        assert!(E::gcd(&E::zero(), &E::zero()).is_err());
        assert_eq!(E::gcd(&E::new(5, 2), &E::one()).unwrap(), E::one());
    }

    #[test]
    fn generic_over_i64() {
        let x = EisensteinInt::<i64>::new(3, 1);
        assert_eq!(x.norm(), 7);
        assert_eq!((x * x.conj()).a, 7);
    }

    #[test]
    fn display() {
        assert_eq!(E::new(1, 3).to_string(), "1+3*w");
        assert_eq!(E::new(-2, -3).to_string(), "-2-3*w");
        assert_eq!(E::new(0, -1).to_string(), "-1*w");
        assert_eq!(E::from_int(-5).to_string(), "-5");
    }
}
