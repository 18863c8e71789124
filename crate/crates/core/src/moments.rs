//! Moments of `L(1/2, χ)` over the family and the desk-scale fits.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::characters::{enumerate_family, FamilyElement};
use crate::constants::ConstantsBundle;
use crate::error::{Error, Result};
use crate::lfunction::{AfeSettings, LEvaluator, LValueRecord};
use crate::scalar::{ComplexNeumaier, Neumaier};

/// Default threshold for counting `L(1/2, χ) ≠ 0`.
pub const DEFAULT_NONVANISHING_THRESHOLD: f64 = 1e-6;

/// Default capacity for `X`.
pub const DEFAULT_X_CAPACITY: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentReport {
    pub x: u64,
    pub family_size: usize,
    pub first_moment: Complex64,
    pub second_moment: f64,
    pub nonvanishing_count: usize,
    /// `D X log X + E X`.
    pub predicted_main: f64,
    /// `Re(first_moment) / predicted_main`.
    pub ratio: f64,
    /// Rigorous bound on the error of `first_moment`.
    pub tolerance_budget: f64,
    /// Rigorous bound on the error of `second_moment`.
    pub second_moment_budget: f64,
}

/// Central values of all family members with conductor norm `≤ x`, in the
/// canonical family order. Evaluation is parallel; failures name the
/// offending element.
pub fn family_lvalues(x: u64, evaluator: &LEvaluator) -> Result<Vec<LValueRecord>> {
    lvalues_for(&enumerate_family(x), evaluator)
}

pub fn lvalues_for(family: &[FamilyElement], evaluator: &LEvaluator) -> Result<Vec<LValueRecord>> {
    family
        .par_iter()
        .map(|e| evaluator.evaluate(e))
        .collect()
}

/// Folds the records with `cond_norm ≤ x` in the given order.
pub fn aggregate<'a, I>(x: u64, records: I, constants: &ConstantsBundle, threshold: f64) -> MomentReport
where
    I: IntoIterator<Item = &'a LValueRecord>,
{
    let mut first = ComplexNeumaier::new();
    let mut second = Neumaier::new();
    let mut budget = Neumaier::new();
    let mut second_budget = Neumaier::new();
    let mut size = 0;
    let mut nonvanishing = 0;
    for r in records.into_iter().filter(|r| r.elem.cond_norm <= x) {
        size += 1;
        let l = r.l_half;
        let d = r.truncation_bound;
        first.add(l);
        second.add(l.norm_sqr());
        budget.add(d);
        second_budget.add(d * (2.0 * l.norm() + d));
        if l.norm() > threshold {
            nonvanishing += 1;
        }
    }
    let predicted_main = constants.predicted_main(x as f64);
    let first_moment = first.value();
    MomentReport {
        x,
        family_size: size,
        first_moment,
        second_moment: second.value(),
        nonvanishing_count: nonvanishing,
        predicted_main,
        ratio: if predicted_main != 0.0 { first_moment.re / predicted_main } else { f64::NAN },
        tolerance_budget: budget.value() + first.rounding_bound(),
        second_moment_budget: second_budget.value() + second.rounding_bound(),
    }
}

/// One report per `x` in `grid`, from a single batch of L-values up to the
/// largest `x`.
pub fn moment_reports(grid: &[u64], settings: AfeSettings, constants: &ConstantsBundle, threshold: f64) -> Result<Vec<MomentReport>> {
    check_threshold(threshold, settings.tolerance)?;
    let Some(&x_max) = grid.iter().max() else {
        return Ok(Vec::new());
    };
    if x_max > DEFAULT_X_CAPACITY {
        return Err(Error::capacity("X", x_max as f64, DEFAULT_X_CAPACITY as f64));
    }
    let evaluator = LEvaluator::new(settings)?;
    let records = family_lvalues(x_max, &evaluator)?;
    Ok(grid.iter().map(|&x| aggregate(x, &records, constants, threshold)).collect())
}

/// The report at a single `X` (which carries both moments).
pub fn first_moment(x: u64, tolerance: f64, constants: &ConstantsBundle) -> Result<MomentReport> {
    let settings = AfeSettings { tolerance, ..AfeSettings::default() };
    Ok(moment_reports(&[x], settings, constants, DEFAULT_NONVANISHING_THRESHOLD.max(10.0 * tolerance))?[0])
}

pub fn second_moment(x: u64, tolerance: f64, constants: &ConstantsBundle) -> Result<MomentReport> {
    first_moment(x, tolerance, constants)
}

fn check_threshold(threshold: f64, tolerance: f64) -> Result<()> {
    if threshold < 10.0 * tolerance {
        return Err(Error::Domain(format!("threshold {threshold:e} is below 10x the tolerance {tolerance:e}")));
    }
    Ok(())
}

/// Number of records with `|L(1/2, χ)| > threshold`.
pub fn nonvanishing_count(records: &[LValueRecord], threshold: f64, tolerance: f64) -> Result<usize> {
    check_threshold(threshold, tolerance)?;
    Ok(records.iter().filter(|r| r.l_half.norm() > threshold).count())
}

/// Least-squares slope of `log value` against `log X`.
pub fn growth_exponent(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::Domain("a growth fit needs at least 3 points".into()));
    }
    if points.iter().any(|&(x, v)| !(x > 0.0 && v > 0.0)) {
        return Err(Error::Domain("growth fit needs positive X and values".into()));
    }
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), &(x, v)| (a + x.ln(), b + v.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(x, v) in points {
        let (dx, dy) = (x.ln() - mx, v.ln() - my);
        sxy += dx * dy;
        sxx += dx * dx;
    }
    Ok(sxy / sxx)
}

/// Least-squares `(d, e)` for `S(X) ≈ d X log X + e X`.
pub fn main_term_fit(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 2 {
        return Err(Error::Domain("the main-term fit needs at least 2 points".into()));
    }
    let (mut s11, mut s12, mut s22, mut t1, mut t2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(x, s) in points {
        let (u, v) = (x * x.ln(), x);
        s11 += u * u;
        s12 += u * v;
        s22 += v * v;
        t1 += u * s;
        t2 += v * s;
    }
    let det = s11 * s22 - s12 * s12;
    if det.abs() <= 1e-12 * s11 * s22 {
        return Err(Error::Domain("degenerate main-term fit".into()));
    }
    Ok(((t1 * s22 - t2 * s12) / det, (s11 * t2 - s12 * t1) / det))
}

/// `x_max / 2^k` for `k = count−1, …, 0`.
pub fn dyadic_grid(x_max: u64, count: u32) -> Vec<u64> {
    (0..count).rev().map(|k| x_max >> k).collect()
}
