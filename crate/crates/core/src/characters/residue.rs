//! The residue ring `Z[ω]/(n)` with canonical representatives.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Eisenstein;

/// `Z[ω]/(n)`. The ideal `(n)` has the Hermite basis `(N/g, 0)`, `(s, g)` in
/// `(a, b)` coordinates, with `g = gcd` of the coordinates of `n`; the
/// canonical representatives are `a + bω`, `0 ≤ b < g`, `0 ≤ a < N/g`.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    modulus: Eisenstein,
    norm: i128,
    g: i128,
    s: i128,
    width: i128,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl ResidueRing {
    pub fn new(modulus: Eisenstein) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = modulus.norm();
        // Generators of (n): n = (x, y) and nω = (−y, x − y).
        let (x, y) = (modulus.a, modulus.b);
        let (g, u, v) = ext_gcd(y, x - y);
        let s = (u * x - v * y).rem_euclid(norm / g);
        let width = norm / g;
        Ok(ResidueRing { modulus, norm, g, s, width })
    }

    pub fn modulus(&self) -> Eisenstein {
        self.modulus
    }

    pub fn order(&self) -> i128 {
        self.norm
    }

    pub fn reduce(&self, z: &Eisenstein) -> Eisenstein {
        let k = z.b.div_euclid(self.g);
        let b = z.b - k * self.g;
        let a = (z.a - k * self.s).rem_euclid(self.width);
        Eisenstein::new(a, b)
    }

    pub fn mul(&self, x: &Eisenstein, y: &Eisenstein) -> Eisenstein {
        self.reduce(&(*x * *y))
    }

    pub fn pow(&self, x: &Eisenstein, mut e: u128) -> Eisenstein {
        let mut base = self.reduce(x);
        let mut acc = self.reduce(&Eisenstein::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The canonical complete residue system, in `(b, a)` order.
    pub fn residues(&self) -> impl Iterator<Item = Eisenstein> + '_ {
        (0..self.g).flat_map(move |b| (0..self.width).map(move |a| Eisenstein::new(a, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn residue_system_is_complete_and_reduction_is_stable() {
        for n in [Eisenstein::new(1, 3), Eisenstein::new(-2, 0), Eisenstein::new(10, 0), Eisenstein::new(-8, 9), Eisenstein::new(4, 6)] {
            let ring = ResidueRing::new(n).unwrap();
            let reps: Vec<_> = ring.residues().collect();
            assert_eq!(reps.len() as i128, n.norm());
            let distinct: HashSet<_> = reps.iter().collect();
            assert_eq!(distinct.len(), reps.len());
            for r in &reps {
                assert_eq!(ring.reduce(r), *r);
                let shifted = *r + n * Eisenstein::new(3, -7);
                assert_eq!(ring.reduce(&shifted), *r);
            }
            assert!(ring.reduce(&n).is_zero());
            assert!(ring.reduce(&(n * Eisenstein::omega())).is_zero());
        }
    }

    #[test]
    fn pow_small_field() {
        // Z[ω]/(2) is F_4: every nonzero element has order dividing 3.
        let ring = ResidueRing::new(Eisenstein::from_int(2)).unwrap();
        for r in ring.residues().filter(|r| !r.is_zero()) {
            assert_eq!(ring.pow(&r, 3), Eisenstein::one());
        }
    }
}
