//! The cubic residue symbol `(α/n)₃`.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use super::residue::ResidueRing;
use super::value::CubicValue;
use crate::eisenstein::{factor, primary_primes};
use crate::error::{Error, Result};
use crate::Eisenstein;

fn check_modulus(n: &Eisenstein) -> Result<()> {
    if !n.is_primary() {
        return Err(Error::Domain(format!("modulus {n} is not primary")));
    }
    Ok(())
}

/// `(α/π)₃` for a prime `π` by Euler's criterion: the cube root of unity
/// congruent to `α^{(N(π)−1)/3}` modulo `π`.
fn prime_symbol(alpha: &Eisenstein, pi: &Eisenstein) -> CubicValue {
    let ring = ResidueRing::new(*pi).expect("prime is nonzero");
    let t = ring.pow(alpha, ((pi.norm() - 1) / 3) as u128);
    if t.is_zero() {
        return CubicValue::Zero;
    }
    let mut w = ring.reduce(&Eisenstein::one());
    for k in 0..3 {
        if t == w {
            return CubicValue::Root(k);
        }
        w = ring.mul(&w, &Eisenstein::omega());
    }
    unreachable!("α^((N−1)/3) is a cube root of unity mod a prime")
}

/// The cubic residue symbol by factoring `n` and exponentiating in each
/// residue field.
pub fn cubic_symbol(alpha: &Eisenstein, n: &Eisenstein) -> Result<CubicValue> {
    check_modulus(n)?;
    let f = factor(n)?;
    let mut v = CubicValue::ONE;
    for (pi, e) in &f.factors {
        v = v * prime_symbol(alpha, pi).pow(*e);
        if v.is_zero() {
            break;
        }
    }
    Ok(v)
}

/// `(1−ω / m)₃ = ω^{(ca·(a−1)/3 + cb·b/3)}` for primary `m = a + bω`.
///
/// The right hand side is a homomorphism on the multiplicative monoid of
/// primary elements, so agreement on primes implies agreement everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupplementaryLaw {
    pub ca: u8,
    pub cb: u8,
}

/// Norm bound of the primes used to fit the supplementary law.
pub const CALIBRATION_NORM: u64 = 10_000;

impl SupplementaryLaw {
    pub fn exponent(&self, m: &Eisenstein) -> i128 {
        let x = (m.a - 1).div_euclid(3);
        let y = m.b.div_euclid(3);
        (self.ca as i128 * x + self.cb as i128 * y).rem_euclid(3)
    }

    /// Fits the law against [`cubic_symbol`] over all primary primes of norm
    /// `≤ bound`. Also confirms the unit law `(ω/m)₃ = ω^{(N(m)−1)/3}` on the
    /// same primes. `None` if no candidate fits.
    pub fn fit(bound: u64) -> Option<SupplementaryLaw> {
        let primes = primary_primes(bound);
        let ramified = Eisenstein::ramified_prime();
        let mut observed = Vec::with_capacity(primes.len());
        for p in &primes {
            let e = prime_symbol(&ramified, p).exponent()?;
            if prime_symbol(&Eisenstein::omega(), p) != CubicValue::root(omega_exponent(p) as i64) {
                return None;
            }
            observed.push(e as i128);
        }
        let mut found = None;
        for ca in 0..3u8 {
            for cb in 0..3u8 {
                let law = SupplementaryLaw { ca, cb };
                if primes.iter().zip(&observed).all(|(p, &e)| law.exponent(p) == e) {
                    if found.is_some() {
                        return None;
                    }
                    found = Some(law);
                }
            }
        }
        found
    }
}

/// The calibrated law, fitted once per process.
pub fn supplementary_law() -> Option<SupplementaryLaw> {
    static LAW: OnceLock<Option<SupplementaryLaw>> = OnceLock::new();
    *LAW.get_or_init(|| SupplementaryLaw::fit(CALIBRATION_NORM))
}

fn omega_exponent(m: &Eisenstein) -> i128 {
    ((m.norm() - 1) / 3).rem_euclid(3)
}

/// The cubic residue symbol by a Euclid-style descent using cubic
/// reciprocity. Falls back to [`cubic_symbol`] if the supplementary law
/// could not be calibrated.
pub fn cubic_symbol_fast(alpha: &Eisenstein, n: &Eisenstein) -> Result<CubicValue> {
    check_modulus(n)?;
    match supplementary_law() {
        Some(law) => Ok(descent(*alpha, *n, &law)),
        None => cubic_symbol(alpha, n),
    }
}

fn descent(mut alpha: Eisenstein, mut m: Eisenstein, law: &SupplementaryLaw) -> CubicValue {
    let ramified = Eisenstein::ramified_prime();
    let mut exp: i128 = 0;
    loop {
        if m.is_one() {
            return CubicValue::root(exp.rem_euclid(3) as i64);
        }
        let (_, mut a) = alpha.div_rem(&m).expect("modulus is nonzero");
        if a.is_zero() {
            return CubicValue::Zero;
        }
        let mut k = 0i128;
        while a.divisible_by_ramified() {
            a = a.exact_div(&ramified).expect("divisible by 1-ω");
            k += 1;
        }
        let (unit, p) = a.primary_associate().expect("coprime to 3");
        // unit = ±ω^j and −1 is a cube.
        let j = if unit == Eisenstein::one() || unit == -Eisenstein::one() {
            0
        } else if unit == Eisenstein::omega() || unit == -Eisenstein::omega() {
            1
        } else {
            2
        };
        exp += k * law.exponent(&m) + j * omega_exponent(&m);
        alpha = m;
        m = p;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let n = Eisenstein::new(1, 3);
        assert_eq!(cubic_symbol(&Eisenstein::from_int(2), &n).unwrap(), CubicValue::Root(2));
        assert_eq!(cubic_symbol(&Eisenstein::omega(), &n).unwrap(), CubicValue::Root(2));
        assert_eq!(cubic_symbol(&(n * Eisenstein::new(4, 1)), &n).unwrap(), CubicValue::Zero);
        assert_eq!(cubic_symbol(&Eisenstein::new(5, 7), &Eisenstein::one()).unwrap(), CubicValue::ONE);
        assert!(cubic_symbol(&Eisenstein::one(), &Eisenstein::from_int(2)).is_err());
        assert!(cubic_symbol_fast(&Eisenstein::one(), &Eisenstein::new(1, 1)).is_err());
    }

    #[test]
    fn law_is_calibrated() {
        assert!(supplementary_law().is_some());
    }

    #[test]
    fn fast_agrees_on_small_moduli() {
        let ms = crate::eisenstein::enumerate_primary(200);
        for n in &ms {
            for a in -6..=6 {
                for b in -6..=6 {
                    let alpha = Eisenstein::new(a, b);
                    assert_eq!(cubic_symbol_fast(&alpha, n).unwrap(), cubic_symbol(&alpha, n).unwrap(), "({alpha}/{n})");
                }
            }
        }
    }
}
