//! The constants of the first-moment main term `D X log X + E X`.

use std::collections::HashMap;
use std::f64::consts::PI;

use rayon::prelude::*;

use crate::eisenstein::{enumerate_primary, factor, rational_primes, Factorization, SquarefreeTable};
use crate::error::{Error, Result};
use crate::lfunction::series::ideal_tail;
use crate::scalar::Neumaier;
use crate::zeta::{zeta_k, zeta_k_residue_form};
use crate::Eisenstein;

/// `4π/(27√3)`, the value printed for `A`.
pub const A_PRINTED: f64 = 0.268_711_016_923_587_84;

/// `4π/(81(√3−1))`, the printed scalar prefactor of `D`.
pub const D_PREFACTOR_PRINTED: f64 = 0.211_925_697_439_319_72;

/// `1/(1 − 1/√3) = Σ_{r≥0} 3^{−r/2}`.
pub const GEOMETRIC_PREFACTOR: f64 = 2.366_025_403_784_439_3;

/// `f(s) = (s−1)(1−3^{−s}) ζ_K(s)`, for `s > 0`.
pub fn f_function(s: f64) -> Result<f64> {
    Ok((1.0 - 3f64.powf(-s)) * zeta_k_residue_form(s)?)
}

fn f_squared(s: f64) -> Result<f64> {
    Ok(f_function(s)?.powi(2))
}

/// `A = lim_{s→1} f(s)²`, by Richardson extrapolation of `f(1+h)²` along
/// `h = 10⁻², 10⁻²/2, …`. The exact value is `((2/3)·π/(3√3))² = 4π²/243`.
pub fn constant_a() -> Result<f64> {
    let mut h = 1e-2;
    let mut prev = f_squared(1.0 + h)?;
    let mut prev_extrapolated = f64::NAN;
    for _ in 0..30 {
        h /= 2.0;
        let cur = f_squared(1.0 + h)?;
        let extrapolated = 2.0 * cur - prev;
        if (extrapolated - prev_extrapolated).abs() <= 1e-12 * extrapolated.abs() {
            return Ok(extrapolated);
        }
        prev = cur;
        prev_extrapolated = extrapolated;
    }
    Err(Error::Convergence("Richardson extrapolation for A did not settle".into()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivativeEstimate {
    pub value: f64,
    /// The step of the final central difference.
    pub step: f64,
    /// The estimate at twice that step.
    pub previous: f64,
}

/// `B = (f²)′(1)` by central differences, halving the step until two
/// successive estimates agree to `10⁻⁶` relative.
pub fn constant_b() -> Result<DerivativeEstimate> {
    central_difference(1e-2, 1e-6)
}

/// Central differences of `f²` at 1 starting from step `h0`.
pub fn central_difference(h0: f64, rel: f64) -> Result<DerivativeEstimate> {
    let diff = |h: f64| -> Result<f64> { Ok((f_squared(1.0 + h)? - f_squared(1.0 - h)?) / (2.0 * h)) };
    let mut h = h0;
    let mut prev = diff(h)?;
    for _ in 0..20 {
        h /= 2.0;
        let cur = diff(h)?;
        if (cur - prev).abs() <= rel * cur.abs() {
            return Ok(DerivativeEstimate { value: cur, step: h, previous: prev });
        }
        prev = cur;
    }
    Err(Error::Convergence("central differences for B did not settle".into()))
}

/// `(G(1), G′(1))` for `G(s) = ∏_{π | ad} (1 − N(π)^{−s})²`.
pub fn g_factors(ad: &Factorization) -> Result<(f64, f64)> {
    g_from_norms(ad.factors.iter().map(|(p, _)| p.norm() as f64).collect::<Vec<_>>().as_slice(), ad)
}

fn g_from_norms(norms: &[f64], ad: &Factorization) -> Result<(f64, f64)> {
    if ad.factors.iter().any(|(p, _)| p.divisible_by_ramified()) {
        return Err(Error::Domain("G is defined for elements coprime to 3".into()));
    }
    Ok(g_of_norms(norms))
}

fn g_of_norms(norms: &[f64]) -> (f64, f64) {
    let mut g = 1.0;
    let mut log_derivative = 0.0;
    for &n in norms {
        g *= (1.0 - 1.0 / n).powi(2);
        log_derivative += 2.0 * n.ln() / (n - 1.0);
    }
    (g, g * log_derivative)
}

/// The number of residues modulo 9 that are units and `≡ 1 (mod 3)`.
pub fn ray_class_h9() -> u32 {
    residues_mod_9().filter(|z| z.is_primary()).count() as u32
}

/// `|(Z[ω]/9)^*|`.
pub fn unit_group_order_mod_9() -> u32 {
    residues_mod_9().count() as u32
}

fn residues_mod_9() -> impl Iterator<Item = Eisenstein> {
    (0..9).flat_map(|a| (0..9).map(move |b| Eisenstein::new(a, b))).filter(|z| z.norm() % 3 != 0)
}

/// Norms of the primes of `Z[ω]` coprime to 3 up to `limit`, ascending.
pub fn prime_norms(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in rational_primes(limit) {
        match p % 3 {
            1 => out.extend([p, p]),
            2 if p * p <= limit => out.push(p * p),
            _ => {}
        }
    }
    out.sort_unstable();
    out
}

/// Euler factor of `D` at a prime of norm `n`:
/// `(1 − 3/n² + 2/n³)(1 + n/((n+2)(n^{3/2} − 1)))`.
pub fn d_euler_factor(n: f64) -> f64 {
    (1.0 - 3.0 / (n * n) + 2.0 / (n * n * n)) * (1.0 + n / ((n + 2.0) * (n.powf(1.5) - 1.0)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DValue {
    /// `(1/(1−1/√3)) (A/h₉) ∏ …` with the accelerated product.
    pub value: f64,
    /// The same prefactor times the plainly truncated product.
    pub plain: f64,
    /// The printed prefactor times the accelerated product.
    pub printed: f64,
    pub prefactor: f64,
    pub prime_cutoff: u64,
    /// Estimate of the relative truncation error of `value`.
    pub tail_estimate: f64,
}

/// `D` with the Euler product over primes of norm `≤ prime_cutoff`.
///
/// The product converges like `P^{−1/2}`, so the factors
/// `(1 − N^{−3/2})^{−1}` and `(1 − N^{−2})^{3}` are summed exactly through
/// `ζ_K(3/2)` and `ζ_K(2)`; the remaining factors are `1 + O(N^{−5/2})`.
pub fn constant_d(prime_cutoff: u64) -> Result<DValue> {
    if prime_cutoff < 100 {
        return Err(Error::Domain(format!("prime cutoff {prime_cutoff} below 100")));
    }
    let prefactor = GEOMETRIC_PREFACTOR * constant_a()? / ray_class_h9() as f64;
    let mut plain = Neumaier::new();
    let mut accelerated = Neumaier::new();
    for n in prime_norms(prime_cutoff) {
        let n = n as f64;
        let t = d_euler_factor(n);
        plain.add(t.ln());
        accelerated.add(t.ln() + (-n.powf(-1.5)).ln_1p() - 3.0 * (-n.powi(-2)).ln_1p());
    }
    let zeta_part = zeta_k(1.5)? * (1.0 - 3f64.powf(-1.5)) / (zeta_k(2.0)? * (8.0 / 9.0)).powi(3);
    let product = zeta_part * accelerated.value().exp();
    let tail_estimate = 3.0 * ideal_tail(prime_cutoff as f64, 2.5);
    Ok(DValue {
        value: prefactor * product,
        plain: prefactor * plain.value().exp(),
        printed: D_PREFACTOR_PRINTED * product,
        prefactor,
        prime_cutoff,
        tail_estimate,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EValue {
    pub value: f64,
    /// The same sum at half of both cutoffs.
    pub half_value: f64,
    pub cube_cutoff: u64,
    pub inner_cutoff: u64,
    /// `(m, E(m³))` over the cubes used, in canonical order.
    pub terms: Vec<(Eisenstein, f64)>,
}

/// Inputs shared by all `E(a)` evaluations at a given inner cutoff.
pub struct EContext {
    table: SquarefreeTable,
    a: f64,
    b: f64,
    h9: f64,
    memo: std::sync::Mutex<HashMap<Vec<u32>, (f64, f64)>>,
}

impl EContext {
    pub fn new(inner_cutoff: u64) -> Result<Self> {
        Ok(EContext {
            table: SquarefreeTable::new(inner_cutoff),
            a: constant_a()?,
            b: constant_b()?.value,
            h9: ray_class_h9() as f64,
            memo: Default::default(),
        })
    }

    /// `(Σ μ(e)/N(e)², Σ μ(e) log N(e)/N(e)²)` over square-free `e` in the box
    /// coprime to the primes indexed by `excluded`.
    fn e_sums(&self, excluded: &[u32]) -> (f64, f64) {
        if let Some(v) = self.memo.lock().expect("memo lock").get(excluded) {
            return *v;
        }
        let mut s0 = Neumaier::new();
        let mut s1 = Neumaier::new();
        for e in &self.table.elements {
            if e.primes.iter().any(|p| excluded.binary_search(p).is_ok()) {
                continue;
            }
            let n = e.norm as f64;
            let mu = if e.primes.len() % 2 == 0 { 1.0 } else { -1.0 };
            s0.add(mu / (n * n));
            s1.add(mu * n.ln() / (n * n));
        }
        let v = (s0.value(), s1.value());
        self.memo.lock().expect("memo lock").insert(excluded.to_vec(), v);
        v
    }

    /// The truncated triple sum `E(a)`, given the prime factors of `a`.
    pub fn e_of_a(&self, a_primes: &[Eisenstein]) -> f64 {
        let a_norms: Vec<f64> = a_primes.iter().map(|p| p.norm() as f64).collect();
        let a_idx: Vec<u32> = a_primes
            .iter()
            .filter_map(|p| self.table.primes.iter().position(|q| q == p).map(|i| i as u32))
            .collect();
        let mut total = Neumaier::new();
        for d in &self.table.elements {
            if d.primes.iter().any(|p| a_idx.contains(p)) {
                continue;
            }
            let mut excluded: Vec<u32> = a_idx.iter().chain(&d.primes).copied().collect();
            excluded.sort_unstable();
            let (s0, s1) = self.e_sums(&excluded);
            let mut norms = a_norms.clone();
            norms.extend(d.primes.iter().map(|&i| self.table.primes[i as usize].norm() as f64));
            let (g, gp) = g_of_norms(&norms);
            let nd = d.norm as f64;
            let mu = if d.primes.len() % 2 == 0 { 1.0 } else { -1.0 };
            let inner = 2.0 * self.a * g * (nd.ln() * s0 * s0 + 2.0 * s0 * s1) + ((self.a - self.b) * g - self.a * gp) * s0 * s0;
            total.add(mu / (nd * nd) * inner);
        }
        -total.value() / self.h9
    }
}

/// `E = (1/(1−1/√3)) Σ_{a = m³} E(a)/N(a)^{1/2}` over primary `m` with
/// `N(m) ≤ cube_cutoff`, each `E(a)` a triple sum over `d, e₁, e₂` of norm
/// `≤ inner_cutoff`.
pub fn constant_e(cube_cutoff: u64, inner_cutoff: u64) -> Result<EValue> {
    if cube_cutoff < 10 || inner_cutoff < 10 {
        return Err(Error::Domain("E needs cutoffs of at least 10".into()));
    }
    let half = e_sum(cube_cutoff / 2, inner_cutoff / 2)?;
    let (value, terms) = e_sum(cube_cutoff, inner_cutoff)?;
    Ok(EValue { value, half_value: half.0, cube_cutoff, inner_cutoff, terms })
}

fn e_sum(cube_cutoff: u64, inner_cutoff: u64) -> Result<(f64, Vec<(Eisenstein, f64)>)> {
    let ctx = EContext::new(inner_cutoff)?;
    let ms = enumerate_primary(cube_cutoff);
    let terms: Vec<(Eisenstein, f64)> = ms
        .par_iter()
        .map(|m| -> Result<(Eisenstein, f64)> {
            let primes: Vec<Eisenstein> = factor(m)?.factors.into_iter().map(|(p, _)| p).collect();
            Ok((*m, ctx.e_of_a(&primes)))
        })
        .collect::<Result<_>>()?;
    let mut acc = Neumaier::new();
    for (m, e) in &terms {
        acc.add(e / (m.norm() as f64).powf(1.5));
    }
    Ok((GEOMETRIC_PREFACTOR * acc.value(), terms))
}

/// Defaults for the constant computations.
pub const DEFAULT_PRIME_CUTOFF: u64 = 100_000;
pub const DEFAULT_CUBE_CUTOFF: u64 = 2_000;
pub const DEFAULT_INNER_CUTOFF: u64 = 1_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantsBundle {
    pub a_const: f64,
    pub a_printed: f64,
    pub b_const: f64,
    pub d_const: f64,
    pub d_printed: f64,
    pub e_const: f64,
    pub e_half: f64,
    pub h9: u32,
    pub truncation: String,
}

impl ConstantsBundle {
    pub fn compute(prime_cutoff: u64, cube_cutoff: u64, inner_cutoff: u64) -> Result<Self> {
        let d = constant_d(prime_cutoff)?;
        let e = constant_e(cube_cutoff, inner_cutoff)?;
        Ok(ConstantsBundle {
            a_const: constant_a()?,
            a_printed: A_PRINTED,
            b_const: constant_b()?.value,
            d_const: d.value,
            d_printed: d.printed,
            e_const: e.value,
            e_half: e.half_value,
            h9: ray_class_h9(),
            truncation: format!("primes N <= {prime_cutoff}; cubes N(m) <= {cube_cutoff}; d, e1, e2 norms <= {inner_cutoff}"),
        })
    }

    /// `D X log X + E X`.
    pub fn predicted_main(&self, x: f64) -> f64 {
        if x <= 1.0 {
            return 0.0;
        }
        self.d_const * x * x.ln() + self.e_const * x
    }
}

/// `4π²/243`.
pub fn a_exact() -> f64 {
    4.0 * PI * PI / 243.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_constants() {
        assert!((A_PRINTED - 4.0 * PI / (27.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!((D_PREFACTOR_PRINTED - 4.0 * PI / (81.0 * (3f64.sqrt() - 1.0))).abs() < 1e-15);
        assert!((GEOMETRIC_PREFACTOR - 1.0 / (1.0 - 1.0 / 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn a_limit() {
        let a = constant_a().unwrap();
        assert!((a - a_exact()).abs() < 1e-10, "{a}");
    }

    #[test]
    fn h9() {
        assert_eq!(ray_class_h9(), 9);
        assert_eq!(unit_group_order_mod_9(), 54);
    }

    #[test]
    fn g_examples() {
        let (g, gp) = g_factors(&Factorization::default()).unwrap();
        assert_eq!((g, gp), (1.0, 0.0));
        let (g, _) = g_factors(&factor(&Eisenstein::from_int(-2)).unwrap()).unwrap();
        assert!((g - 0.5625).abs() < 1e-15);
        assert!(g_factors(&factor(&Eisenstein::from_int(3)).unwrap()).is_err());
    }
}
