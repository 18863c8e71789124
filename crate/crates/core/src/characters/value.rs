use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

/// A value of a cubic character: `0` or a cube root of unity `ω^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CubicValue {
    Zero,
    Root(u8),
}

impl CubicValue {
    pub const ONE: CubicValue = CubicValue::Root(0);

    pub fn root(k: i64) -> Self {
        CubicValue::Root(k.rem_euclid(3) as u8)
    }

    pub fn is_zero(self) -> bool {
        self == CubicValue::Zero
    }

    pub fn exponent(self) -> Option<u8> {
        match self {
            CubicValue::Zero => None,
            CubicValue::Root(k) => Some(k),
        }
    }

    pub fn pow(self, e: u32) -> Self {
        match self {
            CubicValue::Zero if e == 0 => CubicValue::ONE,
            CubicValue::Zero => CubicValue::Zero,
            CubicValue::Root(k) => CubicValue::root(k as i64 * e as i64),
        }
    }

    pub fn conj(self) -> Self {
        self.pow(2)
    }

    pub fn to_complex(self) -> Complex64 {
        const H: f64 = 0.866_025_403_784_438_6; // √3/2
        match self {
            CubicValue::Zero => Complex64::new(0.0, 0.0),
            CubicValue::Root(0) => Complex64::new(1.0, 0.0),
            CubicValue::Root(1) => Complex64::new(-0.5, H),
            CubicValue::Root(_) => Complex64::new(-0.5, -H),
        }
    }
}

impl Mul for CubicValue {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        match (self, o) {
            (CubicValue::Root(a), CubicValue::Root(b)) => CubicValue::Root((a + b) % 3),
            _ => CubicValue::Zero,
        }
    }
}

impl fmt::Display for CubicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubicValue::Zero => f.write_str("0"),
            CubicValue::Root(0) => f.write_str("1"),
            CubicValue::Root(1) => f.write_str("w"),
            CubicValue::Root(_) => f.write_str("w^2"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let w = CubicValue::Root(1);
        assert_eq!(w * w, CubicValue::Root(2));
        assert_eq!(w.pow(3), CubicValue::ONE);
        assert_eq!(w.conj(), CubicValue::Root(2));
        assert_eq!(w * CubicValue::Zero, CubicValue::Zero);
        assert_eq!(CubicValue::Zero.pow(0), CubicValue::ONE);
        let z = w.to_complex();
        assert!((z * z * z - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(CubicValue::root(-1), CubicValue::Root(2));
    }
}
