//! Shifted cubic Gauss sums `g(r, n) = Σ_{α mod n} χ_n(α) e(tr(rα/n))` and
//! root numbers of family characters.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{OnceLock, RwLock};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::characters::{cubic_symbol_fast, CubicValue, FamilyElement, ResidueRing};
use crate::eisenstein::factor::{pow_mod, rational_prime_divisors};
use crate::eisenstein::factor;
use crate::error::{Error, Result};
use crate::scalar::ComplexNeumaier;
use crate::Eisenstein;

/// Largest modulus norm accepted by the direct O(N) summation.
pub const GAUSS_NORM_LIMIT: i128 = 10_000_000;

/// Relative tolerance used by the identity checks.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

fn e_frac(num: i128, den: i128) -> Complex64 {
    let t = num.rem_euclid(den) as f64 / den as f64;
    let (s, c) = (TAU * t).sin_cos();
    Complex64::new(c, s)
}

fn check(n: &Eisenstein) -> Result<()> {
    if !n.is_primary() {
        return Err(Error::Domain(format!("Gauss sum modulus {n} is not primary")));
    }
    if n.norm() > GAUSS_NORM_LIMIT {
        return Err(Error::capacity("Gauss sum modulus norm", n.norm() as f64, GAUSS_NORM_LIMIT as f64));
    }
    Ok(())
}

/// `g(r, n)` by direct summation over the canonical residue system.
pub fn gauss_sum(r: &Eisenstein, n: &Eisenstein) -> Result<Complex64> {
    gauss_sum_shifted(r, n, &Eisenstein::zero())
}

/// `g(r, n)` summed over the residue system translated by `n·t`.
pub fn gauss_sum_shifted(r: &Eisenstein, n: &Eisenstein, t: &Eisenstein) -> Result<Complex64> {
    check(n)?;
    let ring = ResidueRing::new(*n)?;
    let norm = n.norm();
    // tr(rα/n) = tr(rα n̄) / N(n), and only rα n̄ mod N(n) matters.
    let rn = ring.reduce(r) * n.conj();
    let shift = *n * *t;
    let mut acc = ComplexNeumaier::new();
    for alpha in ring.residues() {
        let alpha = alpha + shift;
        let chi = cubic_symbol_fast(&alpha, n)?;
        if chi.is_zero() {
            continue;
        }
        let num = (rn * alpha).trace();
        acc.add(chi.to_complex() * e_frac(num, norm));
    }
    Ok(acc.value())
}

fn primitive_root(p: i128) -> i128 {
    let qs = rational_prime_divisors(p - 1);
    (2..p).find(|&g| qs.iter().all(|q| pow_mod(g, (p - 1) / q, p) != 1)).expect("F_p^* is cyclic")
}

/// `g(r, π)` for a split primary prime `π = a + bω` of norm `p`.
///
/// The integers `0..p` represent `Z[ω]/π`, with `ω ≡ −a/b`; the character is
/// read off a primitive root.
fn split_prime_gauss_sum(r: &Eisenstein, pi: &Eisenstein) -> Complex64 {
    let p = pi.norm();
    let w = (-pi.a * pow_mod(pi.b, p - 2, p)).rem_euclid(p);
    let g = primitive_root(p);
    let t = pow_mod(g, (p - 1) / 3, p);
    let j0 = if t == 1 {
        0
    } else if t == w {
        1
    } else {
        debug_assert_eq!(t, w * w % p);
        2
    };
    // tr(r k π̄) = k · tr(r π̄) for rational k.
    let step = (*r * pi.conj()).trace().rem_euclid(p);
    let mut classes = [ComplexNeumaier::new(), ComplexNeumaier::new(), ComplexNeumaier::new()];
    let mut k = 1i128;
    for i in 0..(p - 1) as usize {
        classes[i % 3].add(e_frac(k * step, p));
        k = k * g % p;
    }
    let mut acc = ComplexNeumaier::new();
    for (i, c) in classes.iter().enumerate() {
        acc.add(CubicValue::root((i * j0) as i64).to_complex() * c.value());
    }
    acc.value()
}

fn prime_cache() -> &'static RwLock<HashMap<Eisenstein, Complex64>> {
    static CACHE: OnceLock<RwLock<HashMap<Eisenstein, Complex64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `g(1, π)` for a primary prime `π`, memoised.
pub fn prime_gauss_sum(pi: &Eisenstein) -> Result<Complex64> {
    check(pi)?;
    if let Some(v) = prime_cache().read().expect("cache lock").get(pi) {
        return Ok(*v);
    }
    let v = if pi.b == 0 {
        gauss_sum(&Eisenstein::one(), pi)?
    } else {
        split_prime_gauss_sum(&Eisenstein::one(), pi)
    };
    prime_cache().write().expect("cache lock").insert(*pi, v);
    Ok(v)
}

/// `g(1, c)` for square-free primary `c`, assembled from prime Gauss sums by
/// `g(1, mn) = χ_m(n) χ_n(m) g(1, m) g(1, n)`.
pub fn squarefree_gauss_sum(c: &Eisenstein) -> Result<Complex64> {
    if !c.is_primary() {
        return Err(Error::Domain(format!("Gauss sum modulus {c} is not primary")));
    }
    let f = factor(c)?;
    if !f.is_squarefree() {
        return Err(Error::Domain(format!("{c} is not square-free")));
    }
    let mut m = Eisenstein::one();
    let mut g = Complex64::new(1.0, 0.0);
    for (pi, _) in &f.factors {
        let twist = cubic_symbol_fast(pi, &m)? * cubic_symbol_fast(&m, pi)?;
        g = g * prime_gauss_sum(pi)? * twist.to_complex();
        m *= *pi;
    }
    Ok(g)
}

/// `W(χ) = g(1, c1) · conj(g(1, c2))`, the Gauss sum of `χ = χ_{c1} χ̄_{c2}`;
/// `|W|² = N(c1 c2)`.
pub fn root_number(elem: &FamilyElement) -> Result<Complex64> {
    Ok(squarefree_gauss_sum(&elem.c1)? * squarefree_gauss_sum(&elem.c2)?.conj())
}

fn close(x: Complex64, y: Complex64) -> bool {
    (x - y).norm() <= IDENTITY_TOLERANCE * x.norm().max(y.norm()).max(1.0)
}

/// Checks `g(a, dc) = g(ad, c) · g(a, d)` by three direct sums.
pub fn twist_identity_check(a: &Eisenstein, d: &Eisenstein, c: &Eisenstein) -> Result<bool> {
    let lhs = gauss_sum(a, &(*d * *c))?;
    let rhs = gauss_sum(&(*a * *d), c)? * gauss_sum(a, d)?;
    Ok(close(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sums() {
        let one = Eisenstein::one();
        assert!((gauss_sum(&one, &one).unwrap() - 1.0).norm() < 1e-15);
        let g = gauss_sum(&one, &Eisenstein::from_int(-2)).unwrap();
        assert!((g - 2.0).norm() < 1e-12, "{g}");
        let g = gauss_sum(&one, &Eisenstein::new(1, 3)).unwrap();
        assert!((g.norm_sqr() - 7.0).abs() < 1e-12);
    }

    #[test]
    fn split_primes_match_direct_sum() {
        for pi in crate::eisenstein::primary_primes(2000).iter().filter(|p| p.b != 0) {
            for r in [Eisenstein::one(), Eisenstein::new(2, -5), Eisenstein::new(0, 1)] {
                let fast = split_prime_gauss_sum(&r, pi);
                let direct = gauss_sum(&r, pi).unwrap();
                assert!((fast - direct).norm() < 1e-9, "{pi}: {fast} vs {direct}");
            }
        }
    }

    #[test]
    fn squarefree_assembly_matches_direct_sum() {
        for c in [Eisenstein::from_int(10), Eisenstein::new(-2, 0) * Eisenstein::new(1, 3), Eisenstein::new(1, 3) * Eisenstein::new(-2, -3) * Eisenstein::from_int(-5)] {
            let direct = gauss_sum(&Eisenstein::one(), &c).unwrap();
            let fast = squarefree_gauss_sum(&c).unwrap();
            assert!((fast - direct).norm() < 1e-9, "{c}: {fast} vs {direct}");
        }
    }

    #[test]
    fn capacity() {
        assert!(matches!(gauss_sum(&Eisenstein::one(), &Eisenstein::from_int(2)), Err(Error::Domain(_))));
        assert!(matches!(gauss_sum(&Eisenstein::one(), &Eisenstein::from_int(-5000)), Err(Error::Capacity { .. })));
    }
}
