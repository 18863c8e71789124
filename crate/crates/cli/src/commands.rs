//! Subcommand implementations. Each returns the text written to stdout.

use std::fmt::Write as _;

use eisenstein_cubic::characters::{cubic_symbol, cubic_symbol_fast, enumerate_family, CubicValue, FamilyElement};
use eisenstein_cubic::constants::ConstantsBundle;
use eisenstein_cubic::gauss::gauss_sum;
use eisenstein_cubic::lfunction::{LEvaluator, LValueRecord};
use eisenstein_cubic::moments::{aggregate, growth_exponent, main_term_fit, MomentReport, DEFAULT_NONVANISHING_THRESHOLD, DEFAULT_X_CAPACITY};
use eisenstein_cubic::{Eisenstein, Error};
use rayon::prelude::*;

use crate::cache::{CacheRecord, LCache};
use crate::config::{OutputFormat, RunConfig};
use crate::error::{CliError, Result};
use crate::report::render_reports;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum MomentKind {
    First,
    Second,
}

/// `c1,c2,cond_norm` rows for every family member with conductor norm `≤ x_max`.
pub fn cmd_family(x_max: u64) -> Result<String> {
    if x_max > DEFAULT_X_CAPACITY {
        return Err(Error::Capacity { what: "x_max", value: x_max as f64, limit: DEFAULT_X_CAPACITY as f64 }.into());
    }
    let mut out = String::from("c1,c2,cond_norm\n");
    for e in enumerate_family(x_max) {
        let _ = writeln!(out, "{},{},{}", e.c1, e.c2, e.cond_norm);
    }
    Ok(out)
}

/// `(alpha/n)₃`, by the reciprocity descent or the factorization oracle.
pub fn cmd_symbol(alpha: &Eisenstein, n: &Eisenstein, oracle: bool) -> Result<CubicValue> {
    Ok(if oracle { cubic_symbol(alpha, n)? } else { cubic_symbol_fast(alpha, n)? })
}

pub fn cmd_gauss(r: &Eisenstein, n: &Eisenstein) -> Result<String> {
    let g = gauss_sum(r, n)?;
    Ok(format!("re,im,abs2,norm\n{},{},{},{}\n", g.re, g.im, g.norm_sqr(), n.norm()))
}

pub fn cmd_lvalue(c1: &Eisenstein, c2: &Eisenstein, cfg: &RunConfig) -> Result<String> {
    let elem = FamilyElement::new(*c1, *c2)
        .ok_or_else(|| Error::Domain(format!("({c1}, {c2}) is not a member of the family")))?;
    let ev = LEvaluator::new(cfg.afe_settings())?;
    let r = ev.evaluate_at(&elem, cfg.y_strategy.y_for(elem.cond_norm))?;
    let v = serde_json::json!({
        "c1": c1.to_string(),
        "c2": c2.to_string(),
        "cond_norm": elem.cond_norm,
        "l_re": r.l_half.re,
        "l_im": r.l_half.im,
        "w_re": r.root_number.re,
        "w_im": r.root_number.im,
        "y_param": r.y_param,
        "trunc_bound": r.truncation_bound,
        "cutoff_norm": r.cutoff_norm,
    });
    Ok(format!("{v}\n"))
}

pub fn cmd_constants(cfg: &RunConfig) -> Result<String> {
    let c = ConstantsBundle::compute(cfg.prime_cutoff, cfg.cube_cutoff, cfg.inner_cutoff)?;
    let rows: [(&str, String); 9] = [
        ("a_const", c.a_const.to_string()),
        ("a_printed", c.a_printed.to_string()),
        ("b_const", c.b_const.to_string()),
        ("d_const", c.d_const.to_string()),
        ("d_printed", c.d_printed.to_string()),
        ("e_const", c.e_const.to_string()),
        ("e_half", c.e_half.to_string()),
        ("h9", c.h9.to_string()),
        ("truncation", c.truncation.clone()),
    ];
    Ok(match cfg.output_format {
        OutputFormat::Csv => {
            let mut out = String::from("name,value\n");
            for (k, v) in rows {
                let _ = writeln!(out, "{k},\"{v}\"");
            }
            out
        }
        OutputFormat::Jsonl => {
            let map: serde_json::Map<_, _> = rows.into_iter().map(|(k, v)| (k.to_string(), serde_json::Value::String(v))).collect();
            format!("{}\n", serde_json::Value::Object(map))
        }
    })
}

/// L-values for `family`, taken from the cache when a record was computed
/// at the same `Y` and within the tolerance, otherwise evaluated in parallel
/// and stored. Results come back in the order of `family`, always read
/// through the cache representation.
pub fn cached_lvalues(family: &[FamilyElement], cfg: &RunConfig, cache: &mut LCache) -> Result<Vec<LValueRecord>> {
    let usable = |e: &FamilyElement| {
        cache.get(e).is_some_and(|r| r.y_param == cfg.y_strategy.y_for(e.cond_norm) && r.trunc_bound <= cfg.tolerance)
    };
    let missing: Vec<FamilyElement> = family.iter().filter(|e| !usable(e)).copied().collect();
    if !missing.is_empty() {
        let ev = LEvaluator::new(cfg.afe_settings())?;
        let fresh: Vec<CacheRecord> = missing
            .par_iter()
            .map(|e| ev.evaluate_at(e, cfg.y_strategy.y_for(e.cond_norm)).map(|r| CacheRecord::from_lvalue(&r)))
            .collect::<std::result::Result<_, _>>()?;
        cache.store(&fresh)?;
    }
    family
        .iter()
        .map(|e| {
            cache.get(e).and_then(CacheRecord::to_lvalue).ok_or_else(|| CliError::CacheFormat {
                path: cache.path().to_path_buf(),
                line: 0,
                reason: format!("no usable record for {e}"),
            })
        })
        .collect()
}

pub struct MomentRun {
    pub reports: Vec<MomentReport>,
    pub constants: ConstantsBundle,
}

/// One report per `x` in `grid`, aggregated in canonical order after all
/// L-values are available.
pub fn run_moments(grid: &[u64], cfg: &RunConfig, cache: &mut LCache) -> Result<MomentRun> {
    let Some(&x_max) = grid.iter().max() else {
        return Err(CliError::Config("empty X grid".into()));
    };
    if x_max > DEFAULT_X_CAPACITY {
        return Err(Error::Capacity { what: "X", value: x_max as f64, limit: DEFAULT_X_CAPACITY as f64 }.into());
    }
    let constants = ConstantsBundle::compute(cfg.prime_cutoff, cfg.cube_cutoff, cfg.inner_cutoff)?;
    let family = enumerate_family(x_max);
    let records = cached_lvalues(&family, cfg, cache)?;
    let threshold = DEFAULT_NONVANISHING_THRESHOLD.max(10.0 * cfg.tolerance);
    let reports = grid.iter().map(|&x| aggregate(x, &records, &constants, threshold)).collect();
    Ok(MomentRun { reports, constants })
}

/// Report text plus a one-line fit summary for stderr.
pub fn cmd_moment(kind: MomentKind, grid: &[u64], cfg: &RunConfig, cache: &mut LCache) -> Result<(String, String)> {
    let run = run_moments(grid, cfg, cache)?;
    let text = render_reports(&run.reports, cfg.output_format)?;
    let summary = match kind {
        MomentKind::First => {
            let pts: Vec<_> = run.reports.iter().map(|r| (r.x as f64, r.first_moment.re)).collect();
            match main_term_fit(&pts) {
                Ok((d, e)) => format!("fit S(X) ~ d X log X + e X: d = {d}, e = {e}; D = {}, E = {}", run.constants.d_const, run.constants.e_const),
                Err(_) => format!("D = {}, E = {}", run.constants.d_const, run.constants.e_const),
            }
        }
        MomentKind::Second => {
            let pts: Vec<_> = run.reports.iter().map(|r| (r.x as f64, r.second_moment)).collect();
            match growth_exponent(&pts) {
                Ok(s) => format!("log-log slope of the second moment: {s}"),
                Err(e) => format!("no slope: {e}"),
            }
        }
    };
    Ok((text, summary))
}

/// `"1000,2000,4000"`; an empty string is an error.
pub fn parse_grid(s: &str) -> Result<Vec<u64>> {
    let grid: Vec<u64> = s
        .split(',')
        .map(|t| t.trim().replace('_', "").parse::<u64>().map_err(|_| CliError::Config(format!("bad X value {t:?} in grid"))))
        .collect::<Result<_>>()?;
    if grid.is_empty() || grid.contains(&0) {
        return Err(CliError::Config("X grid values must be positive".into()));
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::YStrategy;

    #[test]
    fn family_table_examples() {
        let t = cmd_family(200).unwrap();
        assert!(t.lines().any(|l| l == "10,1,100"));
        assert!(t.lines().any(|l| l == "-2,7,196" || l == "7,-2,196"));
        assert!(cmd_family(DEFAULT_X_CAPACITY + 1).is_err());
    }

    #[test]
    fn symbol_example() {
        let v = cmd_symbol(&Eisenstein::from_int(2), &Eisenstein::new(1, 3), false).unwrap();
        assert_eq!(v.to_string(), "w^2");
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("1000, 2_000,4000").unwrap(), vec![1000, 2000, 4000]);
        assert!(parse_grid("1000,,2").is_err());
        assert!(parse_grid("0").is_err());
    }

    fn small_config(dir: &std::path::Path) -> RunConfig {
        RunConfig { cache_path: dir.join("cache.jsonl"), prime_cutoff: 1000, cube_cutoff: 50, inner_cutoff: 50, ..RunConfig::default() }
    }

    #[test]
    fn cold_and_warm_reports_are_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        for format in [OutputFormat::Csv, OutputFormat::Jsonl] {
            let cfg = RunConfig { output_format: format, ..small_config(dir.path()) };
            let _ = std::fs::remove_file(&cfg.cache_path);
            let render = || {
                let mut cache = LCache::open(&cfg.cache_path).unwrap();
                render_reports(&run_moments(&[500, 1000, 2000], &cfg, &mut cache).unwrap().reports, format).unwrap()
            };
            let cold = render();
            let file_after_cold = std::fs::read(&cfg.cache_path).unwrap();
            let warm = render();
            assert_eq!(cold.as_bytes(), warm.as_bytes());
            assert_eq!(std::fs::read(&cfg.cache_path).unwrap(), file_after_cold);
        }
    }

    #[test]
    fn partial_cache_is_extended_not_rewritten() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = small_config(dir.path());
        let mut cache = LCache::open(&cfg.cache_path).unwrap();
        cached_lvalues(&enumerate_family(500), &cfg, &mut cache).unwrap();
        let before = std::fs::read_to_string(&cfg.cache_path).unwrap();
        cached_lvalues(&enumerate_family(1000), &cfg, &mut cache).unwrap();
        let after = std::fs::read_to_string(&cfg.cache_path).unwrap();
        assert!(after.starts_with(&before));
        assert_eq!(LCache::open(&cfg.cache_path).unwrap().len(), enumerate_family(1000).len());
    }

    #[test]
    fn records_at_another_y_are_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = small_config(dir.path());
        let fam = enumerate_family(300);
        let mut cache = LCache::open(&cfg.cache_path).unwrap();
        let balanced = cached_lvalues(&fam, &cfg, &mut cache).unwrap();
        let fixed = RunConfig { y_strategy: YStrategy::Fixed(20.0), ..cfg.clone() };
        let other = cached_lvalues(&fam, &fixed, &mut cache).unwrap();
        assert!(other.iter().all(|r| r.y_param == 20.0));
        for (a, b) in balanced.iter().zip(&other) {
            assert!((a.l_half - b.l_half).norm() <= 2e-8);
        }
        let reread = LCache::open(&cfg.cache_path).unwrap();
        assert_eq!(reread.len(), fam.len());
        assert!(reread.records().iter().all(|r| r.y_param == 20.0));
    }
}
