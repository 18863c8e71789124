//! Factorization in `Z[ω]` by trial division of the norm.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Eisenstein;

/// Largest norm accepted by [`factor`].
pub const FACTOR_NORM_LIMIT: i128 = 1_000_000_000_000;

/// `unit · ∏ primeᵉ`. Primes coprime to 3 are primary; the prime above 3 is
/// recorded as `1 − ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Eisenstein,
    pub factors: Vec<(Eisenstein, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Eisenstein {
        self.factors.iter().fold(self.unit, |acc, (p, e)| acc * p.pow(*e))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn primes(&self) -> impl Iterator<Item = &Eisenstein> + '_ {
        self.factors.iter().map(|(p, _)| p)
    }
}

pub fn factor(n: &Eisenstein) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    let norm = n.norm();
    if norm > FACTOR_NORM_LIMIT {
        return Err(Error::capacity("norm", norm as f64, FACTOR_NORM_LIMIT as f64));
    }

    let mut rest = *n;
    let mut factors = Vec::new();
    let mut remove = |rest: &mut Eisenstein, p: Eisenstein| {
        let mut e = 0;
        while let Some(q) = rest.exact_div(&p) {
            *rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };

    for p in rational_prime_divisors(norm) {
        match p % 3 {
            0 => remove(&mut rest, Eisenstein::ramified_prime()),
            2 => remove(&mut rest, Eisenstein::from_int(-p)),
            _ => {
                let (pi, pi_bar) = split_prime(p);
                remove(&mut rest, pi);
                remove(&mut rest, pi_bar);
            }
        }
    }
    debug_assert!(rest.is_unit(), "cofactor {rest} of {n} is not a unit");

    factors.sort_by_key(|(p, _)| (p.norm(), p.a, p.b));
    Ok(Factorization { unit: rest, factors })
}

/// Distinct rational primes dividing `n > 0`, by trial division.
pub(crate) fn rational_prime_divisors(mut n: i128) -> Vec<i128> {
    let mut out = Vec::new();
    let mut d = 2i128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The two primary primes of norm `p` for a rational prime `p ≡ 1 (mod 3)`,
/// ordered by `(a, b)`.
pub fn split_prime(p: i128) -> (Eisenstein, Eisenstein) {
    assert!(p % 3 == 1, "{p} does not split in Z[ω]");
    let w = nontrivial_cube_root_of_unity(p);
    let g = Eisenstein::gcd(&Eisenstein::from_int(p), &(Eisenstein::omega() - Eisenstein::from_int(w)))
        .expect("p ≠ 0");
    debug_assert_eq!(g.norm(), p);
    let (pi, pi_bar) = (g, g.conj());
    if (pi.a, pi.b) <= (pi_bar.a, pi_bar.b) {
        (pi, pi_bar)
    } else {
        (pi_bar, pi)
    }
}

pub(crate) fn pow_mod(mut base: i128, mut e: i128, m: i128) -> i128 {
    let mut acc = 1i128;
    base = base.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

/// A root of `x² + x + 1 ≡ 0 (mod p)`, `p ≡ 1 (mod 3)` prime.
pub(crate) fn nontrivial_cube_root_of_unity(p: i128) -> i128 {
    (2..p)
        .map(|x| pow_mod(x, (p - 1) / 3, p))
        .find(|&w| w != 1)
        .expect("the cubes have index 3 in F_p^*")
}

/// Möbius function of a primary (or unit) element.
pub fn mobius(n: &Eisenstein) -> Result<i8> {
    if n.norm() % 3 == 0 {
        return Err(Error::Domain(format!("mobius needs an element coprime to 3, got {n}")));
    }
    let f = factor(n)?;
    if !f.is_squarefree() {
        return Ok(0);
    }
    Ok(if f.factors.len() % 2 == 0 { 1 } else { -1 })
}

pub fn is_squarefree(n: &Eisenstein) -> Result<bool> {
    Ok(factor(n)?.is_squarefree())
}

impl Factorization {
    pub fn unit_only(unit: Eisenstein) -> Self {
        debug_assert!(unit.is_unit());
        Factorization { unit, factors: Vec::new() }
    }
}

impl Default for Factorization {
    fn default() -> Self {
        Factorization::unit_only(Eisenstein::one())
    }
}
