//! Enumeration of primary elements, primary primes and square-free elements
//! by norm. Everything is returned in the canonical `(norm, a, b)` order.

use num_traits::One;

use crate::eisenstein::factor::split_prime;
use crate::Eisenstein;

fn canonical_key(x: &Eisenstein) -> (i128, i128, i128) {
    (x.norm(), x.a, x.b)
}

/// Inclusive range of `a` with `a² − ab + b² ≤ x` for fixed `b`, if any.
fn a_range(b: i128, x: i128) -> Option<(i128, i128)> {
    let disc = 4 * x - 3 * b * b;
    if disc < 0 {
        return None;
    }
    let s = isqrt(disc);
    let mut lo = (b - s).div_euclid(2);
    let mut hi = (b + s).div_euclid(2) + 1;
    let norm = |a: i128| a * a - a * b + b * b;
    while norm(lo) > x {
        lo += 1;
    }
    while lo > i128::MIN && norm(lo - 1) <= x {
        lo -= 1;
    }
    while norm(hi) > x {
        hi -= 1;
    }
    while norm(hi + 1) <= x {
        hi += 1;
    }
    (lo <= hi).then_some((lo, hi))
}

pub(crate) fn isqrt(n: i128) -> i128 {
    if n < 2 {
        return n.max(0);
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn b_bound(x: i128) -> i128 {
    // 3b²/4 ≤ a² − ab + b²
    isqrt(4 * x / 3) + 1
}

/// All primary elements with `0 < N ≤ x`, one per ideal coprime to 3.
pub fn enumerate_primary(x: u64) -> Vec<Eisenstein> {
    let x = x as i128;
    let bmax = b_bound(x);
    let mut out = Vec::new();
    let mut b = -bmax - (-bmax).rem_euclid(3);
    while b <= bmax {
        if let Some((lo, hi)) = a_range(b, x) {
            let mut a = lo + (1 - lo).rem_euclid(3);
            while a <= hi {
                out.push(Eisenstein::new(a, b));
                a += 3;
            }
        }
        b += 3;
    }
    out.sort_by_key(canonical_key);
    out
}

/// `|enumerate_primary(x)|` in `O(√x)` time.
pub fn count_primary(x: u64) -> u64 {
    let x = x as i128;
    let bmax = b_bound(x);
    let count_residue = |lo: i128, hi: i128| (hi - 1).div_euclid(3) - (lo - 2).div_euclid(3);
    let mut total = 0i128;
    let mut b = -bmax - (-bmax).rem_euclid(3);
    while b <= bmax {
        if let Some((lo, hi)) = a_range(b, x) {
            total += count_residue(lo, hi);
        }
        b += 3;
    }
    total as u64
}

/// Rational primes `≤ limit` (sieve of Eratosthenes).
pub fn rational_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primary primes of norm `≤ x`: both primes above each `p ≡ 1 (mod 3)` and
/// `−q` for inert `q ≡ 2 (mod 3)` with `q² ≤ x`.
pub fn primary_primes(x: u64) -> Vec<Eisenstein> {
    let mut out = Vec::new();
    for p in rational_primes(x) {
        let p = p as i128;
        match p % 3 {
            1 => {
                let (u, v) = split_prime(p);
                out.push(u);
                out.push(v);
            }
            2 if p * p <= x as i128 => out.push(Eisenstein::from_int(-p)),
            _ => {}
        }
    }
    out.sort_by_key(canonical_key);
    out
}

/// A square-free primary element with its prime factors (indices into the
/// prime table of the [`SquarefreeTable`] that produced it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeElement {
    pub value: Eisenstein,
    pub norm: u64,
    pub primes: Vec<u32>,
}

/// All square-free primary elements of norm `≤ x`, built from the primary
/// primes rather than by factoring.
#[derive(Clone, Debug)]
pub struct SquarefreeTable {
    pub primes: Vec<Eisenstein>,
    pub elements: Vec<SquarefreeElement>,
}

impl SquarefreeTable {
    pub fn new(x: u64) -> Self {
        let primes = primary_primes(x);
        let norms: Vec<u64> = primes.iter().map(|p| p.norm() as u64).collect();
        let mut elements = Vec::new();
        let mut stack = vec![(0usize, Eisenstein::one(), 1u64, Vec::<u32>::new())];
        while let Some((start, value, norm, idx)) = stack.pop() {
            for j in start..primes.len() {
                let n = norm * norms[j];
                if n > x {
                    break;
                }
                let mut next = idx.clone();
                next.push(j as u32);
                stack.push((j + 1, value * primes[j], n, next));
            }
            elements.push(SquarefreeElement { value, norm, primes: idx });
        }
        elements.sort_by_key(|e| canonical_key(&e.value));
        SquarefreeTable { primes, elements }
    }

    pub fn prime_factors<'a>(&'a self, e: &'a SquarefreeElement) -> impl Iterator<Item = Eisenstein> + 'a {
        e.primes.iter().map(move |&i| self.primes[i as usize])
    }
}
