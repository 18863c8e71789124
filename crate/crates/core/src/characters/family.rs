//! The family of primitive cubic characters `χ_{c1}·χ̄_{c2}`.

use std::fmt;

use num_traits::One;

use super::symbol::cubic_symbol_fast;
use super::value::CubicValue;
use crate::eisenstein::{is_squarefree, SquarefreeTable};
use crate::Eisenstein;

/// A member `χ = χ_{c1}·χ̄_{c2}` of the family, with `c1`, `c2` primary,
/// square-free and coprime, and `c1·c2² ≡ 1 (mod 9)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyElement {
    pub c1: Eisenstein,
    pub c2: Eisenstein,
    pub conductor: Eisenstein,
    pub cond_norm: u64,
}

impl FamilyElement {
    /// Checked constructor.
    pub fn new(c1: Eisenstein, c2: Eisenstein) -> Option<Self> {
        is_family_member(&c1, &c2).then(|| Self::new_unchecked(c1, c2))
    }

    pub(crate) fn new_unchecked(c1: Eisenstein, c2: Eisenstein) -> Self {
        let conductor = c1 * c2;
        FamilyElement { c1, c2, conductor, cond_norm: conductor.norm() as u64 }
    }

    /// The primary element `c1·c2²` with `χ = (·/c1c2²)₃`.
    pub fn symbol_modulus(&self) -> Eisenstein {
        self.c1 * self.c2 * self.c2
    }

    /// The conjugate character, carried by the swapped pair.
    pub fn conjugate(&self) -> Self {
        Self::new_unchecked(self.c2, self.c1)
    }

    pub fn sort_key(&self) -> (u64, i128, i128, i128, i128) {
        (self.cond_norm, self.c1.a, self.c1.b, self.c2.a, self.c2.b)
    }

    pub fn chi(&self, alpha: &Eisenstein) -> CubicValue {
        chi_eval(self, alpha)
    }
}

impl fmt::Display for FamilyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.c1, self.c2)
    }
}

pub fn is_family_member(c1: &Eisenstein, c2: &Eisenstein) -> bool {
    if !c1.is_primary() || !c2.is_primary() || (c1.is_one() && c2.is_one()) {
        return false;
    }
    let coprime = Eisenstein::gcd(c1, c2).map(|g| g.is_unit()).unwrap_or(false);
    if !coprime {
        return false;
    }
    if !(*c1 * *c2 * *c2).congruent_mod_int(&Eisenstein::one(), 9) {
        return false;
    }
    matches!((is_squarefree(c1), is_squarefree(c2)), (Ok(true), Ok(true)))
}

/// `χ(α) = (α/c1)₃ · (α/c2)₃²`.
pub fn chi_eval(elem: &FamilyElement, alpha: &Eisenstein) -> CubicValue {
    cubic_symbol_fast(alpha, &elem.symbol_modulus()).expect("family moduli are primary")
}

/// All family members with `N(c1 c2) ≤ x`, sorted by
/// `(cond_norm, c1.a, c1.b, c2.a, c2.b)`.
///
/// Each square-free primary `q = c1 c2` is split over the subsets of its
/// prime factors.
pub fn enumerate_family(x: u64) -> Vec<FamilyElement> {
    let table = SquarefreeTable::new(x);
    let mut out = Vec::new();
    for q in table.elements.iter().filter(|q| q.norm > 1) {
        let primes: Vec<Eisenstein> = table.prime_factors(q).collect();
        for mask in 0u32..(1 << primes.len()) {
            let mut c1 = Eisenstein::one();
            let mut c2 = Eisenstein::one();
            for (i, p) in primes.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    c1 *= *p;
                } else {
                    c2 *= *p;
                }
            }
            if (c1 * c2 * c2).congruent_mod_int(&Eisenstein::one(), 9) {
                out.push(FamilyElement::new_unchecked(c1, c2));
            }
        }
    }
    out.sort_by_key(FamilyElement::sort_key);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        let ten = Eisenstein::from_int(10);
        let one = Eisenstein::one();
        assert!(is_family_member(&ten, &one));
        assert!(is_family_member(&Eisenstein::from_int(-2), &Eisenstein::from_int(7)));
        assert!(!is_family_member(&one, &one));
        assert!(!is_family_member(&Eisenstein::from_int(4), &one));
        let e = FamilyElement::new(ten, one).unwrap();
        assert_eq!(e.cond_norm, 100);
        assert_eq!(e.chi(&Eisenstein::from_int(2)), CubicValue::Zero);
        assert_eq!(e.chi(&Eisenstein::omega()), CubicValue::ONE);
    }

    #[test]
    fn enumeration_contains_examples() {
        let fam = enumerate_family(200);
        assert!(fam.iter().any(|e| e.c1 == Eisenstein::from_int(10) && e.c2.is_one()));
        assert!(fam.iter().any(|e| e.c1 == Eisenstein::from_int(-2) && e.c2 == Eisenstein::from_int(7) && e.cond_norm == 196));
        assert!(fam.windows(2).all(|w| w[0].sort_key() < w[1].sort_key()));
        for e in &fam {
            assert!(fam.contains(&e.conjugate()));
        }
    }
}
