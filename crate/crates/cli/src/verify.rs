//! Invariant suites run by `cubic-moments verify`.

use std::collections::HashSet;
use std::fmt;

use eisenstein_cubic::characters::{
    cubic_symbol, cubic_symbol_fast, enumerate_family, is_family_member, supplementary_law, CubicValue, FamilyElement,
    ResidueRing,
};
use eisenstein_cubic::constants::{constant_d, constant_e, ray_class_h9, ConstantsBundle};
use eisenstein_cubic::eisenstein::{enumerate_primary, factor, is_squarefree, primary_primes, Factorization};
use eisenstein_cubic::gauss::{gauss_sum, gauss_sum_shifted, root_number, squarefree_gauss_sum};
use eisenstein_cubic::lfunction::{balanced_y, certify_weight, euler_product, series_at_s, v_weight, AfeSettings, LEvaluator};
use eisenstein_cubic::moments::{aggregate, lvalues_for};
use eisenstein_cubic::{Complex64, Eisenstein};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cache::{CacheRecord, LCache, SCHEMA_VERSION};
use crate::commands::run_moments;
use crate::config::RunConfig;
use crate::report::render_reports;

pub const DEFAULT_SEED: u64 = 20_240_601;

type Check = fn(&mut ChaCha8Rng) -> Result<(), String>;
type Group<'a> = (&'static str, Suite, &'a [(&'static str, Check)]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Eisenstein,
    Characters,
    Gauss,
    Lfunctions,
    Moments,
    Cache,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub error: Option<String>,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.error {
            None => write!(f, "PASS {}::{}", self.suite, self.name),
            Some(e) => write!(f, "FAIL {}::{}: {e}", self.suite, self.name),
        }
    }
}

fn checks(suite: Suite) -> Vec<(&'static str, &'static str, Check)> {
    let eisenstein: [(&str, Check); 5] = [
        ("norm_multiplicative", norm_multiplicative),
        ("divmod_contract", divmod_contract),
        ("factor_roundtrip", factor_roundtrip),
        ("primary_associate_unique", primary_associate_unique),
        ("enumeration_distinct_ideals", enumeration_distinct_ideals),
    ];
    let characters: [(&str, Check); 6] = [
        ("multiplicative_periodic_cubic", multiplicative_periodic_cubic),
        ("fast_symbol_matches_oracle", fast_symbol_matches_oracle),
        ("hecke_condition", hecke_condition),
        ("primitivity", primitivity),
        ("family_brute_force", family_brute_force),
        ("family_closed_under_swap", family_closed_under_swap),
    ];
    let gauss: [(&str, Check); 4] = [
        ("modulus_identity", gauss_modulus),
        ("conjugation_symmetry", gauss_conjugation),
        ("residue_shift_invariance", gauss_shift),
        ("root_number_modulus", root_number_modulus),
    ];
    let lfunctions: [(&str, Check); 4] = [
        ("weight_certificate", weight_certificate),
        ("y_independence", y_independence),
        ("conjugation_symmetry", l_conjugation),
        ("series_vs_euler_product", series_vs_euler),
    ];
    let moments: [(&str, Check); 4] = [
        ("h9", h9),
        ("permutation_invariance", permutation_invariance),
        ("reproducible_aggregates", reproducible_aggregates),
        ("constants_stability", constants_stability),
    ];
    let cache: [(&str, Check); 2] = [("jsonl_roundtrip", cache_roundtrip), ("cold_warm_identical", cold_warm_identical)];
    let groups: [Group; 6] = [
        ("eisenstein", Suite::Eisenstein, &eisenstein),
        ("characters", Suite::Characters, &characters),
        ("gauss", Suite::Gauss, &gauss),
        ("lfunctions", Suite::Lfunctions, &lfunctions),
        ("moments", Suite::Moments, &moments),
        ("cache", Suite::Cache, &cache),
    ];
    groups
        .iter()
        .filter(|(_, s, _)| suite == Suite::All || suite == *s)
        .flat_map(|(name, _, cs)| cs.iter().map(move |(c, f)| (*name, *c, *f)))
        .collect()
}

/// Runs the checks of `suite`, each with its own generator seeded from `seed`.
pub fn run_suite(suite: Suite, seed: u64, mut progress: impl FnMut(&CheckOutcome)) -> Vec<CheckOutcome> {
    checks(suite)
        .into_iter()
        .enumerate()
        .map(|(i, (suite, name, check))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let outcome = CheckOutcome { suite, name, error: check(&mut rng).err() };
            progress(&outcome);
            outcome
        })
        .collect()
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn random_element(rng: &mut ChaCha8Rng, range: i128) -> Eisenstein {
    Eisenstein::new(rng.gen_range(-range..=range), rng.gen_range(-range..=range))
}

fn squarefree_primary(limit: u64) -> Vec<Eisenstein> {
    enumerate_primary(limit).into_iter().filter(|z| is_squarefree(z).unwrap_or(false)).collect()
}

fn norm_multiplicative(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..1000 {
        let (x, y) = (random_element(rng, 1_000_000), random_element(rng, 1_000_000));
        ensure!((x * y).norm() == x.norm() * y.norm(), "N({x}·{y})");
    }
    Ok(())
}

fn divmod_contract(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..1000 {
        let x = random_element(rng, 1_000_000_000);
        let y = random_element(rng, 100_000);
        if y.norm() == 0 {
            continue;
        }
        let (q, r) = x.div_rem(&y).map_err(|e| e.to_string())?;
        ensure!(q * y + r == x && r.norm() < y.norm(), "divmod({x}, {y}) = ({q}, {r})");
    }
    Ok(())
}

fn factor_roundtrip(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let mut pool = primary_primes(1_000_000);
    pool.truncate(400);
    pool.push(Eisenstein::ramified_prime());
    for _ in 0..300 {
        let mut chosen: Vec<(Eisenstein, u32)> = Vec::new();
        let mut norm = 1i128;
        for _ in 0..rng.gen_range(0..5) {
            let p = *pool.choose(rng).expect("nonempty pool");
            let e = rng.gen_range(1..=3u32);
            let n = p.norm().pow(e);
            if chosen.iter().any(|(q, _)| *q == p) || norm * n > 1_000_000 {
                continue;
            }
            norm *= n;
            chosen.push((p, e));
        }
        let unit = *Eisenstein::units().choose(rng).expect("six units");
        let expected = Factorization { unit, factors: chosen };
        let x = expected.expand();
        let mut got = factor(&x).map_err(|e| e.to_string())?;
        let mut want = expected.clone();
        got.factors.sort_by_key(|(p, _)| (p.a, p.b));
        want.factors.sort_by_key(|(p, _)| (p.a, p.b));
        ensure!(got == want, "factor({x}) = {got:?}, expected {want:?}");
    }
    Ok(())
}

fn primary_associate_unique(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..1000 {
        let x = random_element(rng, 10_000);
        if x.norm() % 3 == 0 {
            ensure!(x.primary_associate().is_err(), "{x} has norm divisible by 3");
            continue;
        }
        let (u, p) = x.primary_associate().map_err(|e| e.to_string())?;
        ensure!(p.is_primary() && u * p == x && u.is_unit(), "{x} -> ({u}, {p})");
        let normalizing = Eisenstein::units().iter().filter(|v| (**v * x).is_primary()).count();
        ensure!(normalizing == 1, "{normalizing} units normalize {x}");
        ensure!(p.primary_associate() == Ok((Eisenstein::from_int(1), p)), "not idempotent on {p}");
    }
    Ok(())
}

fn enumeration_distinct_ideals(_: &mut ChaCha8Rng) -> Result<(), String> {
    let list = enumerate_primary(20_000);
    let mut seen = HashSet::new();
    for x in &list {
        // The canonical associate identifies the ideal.
        ensure!(seen.insert(x.canonical_associate()), "{x} repeats an ideal");
    }
    Ok(())
}

fn family_sample() -> Vec<FamilyElement> {
    enumerate_family(3000)
}

fn multiplicative_periodic_cubic(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let fam = family_sample();
    for _ in 0..1000 {
        let e = *fam.choose(rng).expect("nonempty family");
        let (x, y, t) = (random_element(rng, 500), random_element(rng, 500), random_element(rng, 50));
        ensure!(e.chi(&(x * y)) == e.chi(&x) * e.chi(&y), "{e}: χ({x}·{y})");
        ensure!(e.chi(&(x + e.conductor * t)) == e.chi(&x), "{e}: χ not periodic at {x}");
        let v = e.chi(&x);
        ensure!(v.is_zero() || v.pow(3) == CubicValue::ONE, "{e}: χ({x})³ = {}", v.pow(3));
    }
    Ok(())
}

fn fast_symbol_matches_oracle(rng: &mut ChaCha8Rng) -> Result<(), String> {
    ensure!(supplementary_law().is_some(), "no supplementary law fits the calibration primes");
    let ms = enumerate_primary(5000);
    for _ in 0..2000 {
        let alpha = random_element(rng, 10_000);
        let n = *ms.choose(rng).expect("nonempty");
        let (a, b) = (cubic_symbol(&alpha, &n).map_err(|e| e.to_string())?, cubic_symbol_fast(&alpha, &n).map_err(|e| e.to_string())?);
        ensure!(a == b, "({alpha}/{n})₃: oracle {a}, fast {b}");
    }
    Ok(())
}

fn hecke_condition(_: &mut ChaCha8Rng) -> Result<(), String> {
    for e in enumerate_family(10_000) {
        ensure!(e.chi(&Eisenstein::omega()) == CubicValue::ONE, "{e}: χ(ω) ≠ 1");
    }
    Ok(())
}

fn primitivity(_: &mut ChaCha8Rng) -> Result<(), String> {
    for e in enumerate_family(200) {
        let c = e.conductor;
        for (pi, _) in factor(&c).map_err(|x| x.to_string())?.factors {
            let sub = c.exact_div(&pi).ok_or("prime factor does not divide")?;
            let ring = ResidueRing::new(pi).map_err(|x| x.to_string())?;
            let nontrivial = ring.residues().map(|t| Eisenstein::from_int(1) + sub * t).any(|a| {
                let v = e.chi(&a);
                !v.is_zero() && v != CubicValue::ONE
            });
            ensure!(nontrivial, "{e} is induced from {sub}");
        }
    }
    Ok(())
}

fn family_brute_force(_: &mut ChaCha8Rng) -> Result<(), String> {
    let x = 2000u64;
    let sq = squarefree_primary(x);
    let mut brute = Vec::new();
    for c1 in &sq {
        for c2 in &sq {
            if (c1.norm() * c2.norm()) as u64 <= x && is_family_member(c1, c2) {
                brute.push((c1.norm() * c2.norm(), c1.a, c1.b, c2.a, c2.b));
            }
        }
    }
    brute.sort();
    let fam: Vec<_> = enumerate_family(x).iter().map(|e| (e.cond_norm as i128, e.c1.a, e.c1.b, e.c2.a, e.c2.b)).collect();
    ensure!(fam == brute, "enumerate_family gives {} members, brute force {}", fam.len(), brute.len());
    Ok(())
}

fn family_closed_under_swap(_: &mut ChaCha8Rng) -> Result<(), String> {
    let fam = enumerate_family(5000);
    let set: HashSet<_> = fam.iter().copied().collect();
    for e in &fam {
        ensure!(set.contains(&e.conjugate()), "{e} without its conjugate");
    }
    Ok(())
}

fn gauss_modulus(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ds = squarefree_primary(1500);
    let mut done = 0;
    while done < 100 {
        let d = *ds.choose(rng).expect("nonempty");
        let a = random_element(rng, 50);
        if !Eisenstein::gcd(&a, &d).is_ok_and(|g| g.is_unit()) {
            continue;
        }
        let g = gauss_sum(&a, &d).map_err(|e| e.to_string())?;
        ensure!((g.norm_sqr() / d.norm() as f64 - 1.0).abs() < 1e-9, "|g({a}, {d})|² = {}", g.norm_sqr());
        done += 1;
    }
    Ok(())
}

/// `Σ conj(χ_n(α)) e(−tr(rα/n))` in plain f64.
fn conjugate_direct(r: &Eisenstein, n: &Eisenstein) -> Result<Complex64, String> {
    let ring = ResidueRing::new(*n).map_err(|e| e.to_string())?;
    let nn = n.norm();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in ring.residues() {
        let chi = cubic_symbol(&a, n).map_err(|e| e.to_string())?.conj().to_complex();
        let t = (*r * a * n.conj()).trace().rem_euclid(nn) as f64 / nn as f64;
        acc += chi * Complex64::from_polar(1.0, -std::f64::consts::TAU * t);
    }
    Ok(acc)
}

fn gauss_conjugation(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ns = squarefree_primary(800);
    for _ in 0..40 {
        let n = *ns.choose(rng).expect("nonempty");
        let r = random_element(rng, 20);
        let g = gauss_sum(&r, &n).map_err(|e| e.to_string())?;
        let c = conjugate_direct(&r, &n)?;
        ensure!((g.conj() - c).norm() < 1e-9 * (1.0 + g.norm()), "g({r}, {n}) = {g}, conjugate sum {c}");
    }
    Ok(())
}

fn gauss_shift(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ns = squarefree_primary(3000);
    for _ in 0..20 {
        let n = *ns.choose(rng).expect("nonempty");
        let (r, t) = (random_element(rng, 30), random_element(rng, 30));
        let a = gauss_sum(&r, &n).map_err(|e| e.to_string())?;
        let b = gauss_sum_shifted(&r, &n, &t).map_err(|e| e.to_string())?;
        ensure!((a - b).norm() <= 1e-12 * (1.0 + a.norm()), "g({r}, {n}) changes under shift by {t}");
    }
    Ok(())
}

fn root_number_modulus(_: &mut ChaCha8Rng) -> Result<(), String> {
    for c in squarefree_primary(2000) {
        let g = squarefree_gauss_sum(&c).map_err(|e| e.to_string())?;
        ensure!((g.norm_sqr() / c.norm() as f64 - 1.0).abs() < 1e-9, "|g(1, {c})|² = {}", g.norm_sqr());
    }
    for e in enumerate_family(2000) {
        let w = root_number(&e).map_err(|x| x.to_string())?;
        ensure!((w.norm_sqr() / e.cond_norm as f64 - 1.0).abs() < 1e-9, "|W({e})|² = {}", w.norm_sqr());
    }
    Ok(())
}

fn weight_certificate(_: &mut ChaCha8Rng) -> Result<(), String> {
    let cert = certify_weight(1e-3, 10.0, 50).map_err(|e| e.to_string())?;
    ensure!(cert.passed, "max deviation {:e}, in (0,1): {}, decreasing: {}", cert.max_deviation, cert.in_unit_interval, cert.decreasing);
    let mut prev = f64::INFINITY;
    // up to y = 50, beyond which V underflows
    for k in 0..170 {
        let y = 1e-4 * 1.08f64.powi(k);
        let v = v_weight(y).map_err(|e| e.to_string())?;
        ensure!(v < prev && v > 0.0, "V not strictly decreasing at {y}");
        prev = v;
    }
    Ok(())
}

fn y_independence(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ev = LEvaluator::new(AfeSettings::default()).map_err(|e| e.to_string())?;
    let fam = enumerate_family(10_000);
    for e in fam.choose_multiple(rng, 20) {
        let y0 = balanced_y(e.cond_norm);
        let w = root_number(e).map_err(|x| x.to_string())?;
        let vals = [y0 / 2.0, y0, 2.0 * y0]
            .iter()
            .map(|&y| ev.evaluate_with_root_number(e, y, w).map(|r| r.l_half))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|x| x.to_string())?;
        let spread = (vals[0] - vals[1]).norm().max((vals[2] - vals[1]).norm());
        ensure!(spread <= 2e-8, "{e}: L(1/2) moves by {spread:e} with Y");
    }
    Ok(())
}

fn l_conjugation(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ev = LEvaluator::new(AfeSettings::default()).map_err(|e| e.to_string())?;
    let fam = enumerate_family(10_000);
    for e in fam.choose_multiple(rng, 20) {
        let a = ev.evaluate(e).map_err(|x| x.to_string())?.l_half;
        let b = ev.evaluate(&e.conjugate()).map_err(|x| x.to_string())?.l_half;
        ensure!((a - b.conj()).norm() <= 2e-8, "{e}: L(χ̄) ≠ conj L(χ)");
    }
    Ok(())
}

fn series_vs_euler(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let fam = enumerate_family(20_000);
    for e in fam.choose_multiple(rng, 50) {
        let s = series_at_s(e, 2.0, 10_000).map_err(|x| x.to_string())?;
        let p = euler_product(e, 2.0, 10_000).map_err(|x| x.to_string())?;
        ensure!((s.value - p.value).norm() <= s.tail_bound + p.tail_bound, "{e}: series {} vs product {}", s.value, p.value);
    }
    Ok(())
}

fn h9(_: &mut ChaCha8Rng) -> Result<(), String> {
    let h = ray_class_h9();
    ensure!(h == 9, "h9 = {h}");
    Ok(())
}

fn small_records(x: u64) -> Result<Vec<eisenstein_cubic::lfunction::LValueRecord>, String> {
    let ev = LEvaluator::new(AfeSettings::default()).map_err(|e| e.to_string())?;
    lvalues_for(&enumerate_family(x), &ev).map_err(|e| e.to_string())
}

fn dummy_constants() -> ConstantsBundle {
    ConstantsBundle {
        a_const: 0.0,
        a_printed: 0.0,
        b_const: 0.0,
        d_const: 0.04,
        d_printed: 0.0,
        e_const: 0.14,
        e_half: 0.0,
        h9: 9,
        truncation: String::new(),
    }
}

fn permutation_invariance(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let recs = small_records(2000)?;
    let c = dummy_constants();
    let canonical = aggregate(2000, &recs, &c, 1e-6);
    let reversed = aggregate(2000, recs.iter().rev(), &c, 1e-6);
    let mut shuffled = recs.clone();
    shuffled.shuffle(rng);
    let shuffled = aggregate(2000, &shuffled, &c, 1e-6);
    for other in [reversed, shuffled] {
        let d = (other.first_moment - canonical.first_moment).norm();
        ensure!(d <= canonical.tolerance_budget, "first moment moved by {d:e} (budget {:e})", canonical.tolerance_budget);
        let d2 = (other.second_moment - canonical.second_moment).abs();
        ensure!(d2 <= canonical.second_moment_budget, "second moment moved by {d2:e}");
        ensure!(other.nonvanishing_count == canonical.nonvanishing_count, "non-vanishing count changed");
    }
    Ok(())
}

fn reproducible_aggregates(_: &mut ChaCha8Rng) -> Result<(), String> {
    let (a, b) = (small_records(1000)?, small_records(1000)?);
    ensure!(a == b, "L-values differ between two evaluations");
    let c = dummy_constants();
    for x in [100, 250, 500, 1000] {
        ensure!(aggregate(x, &a, &c, 1e-6) == aggregate(x, &b, &c, 1e-6), "aggregate at {x} not reproducible");
    }
    Ok(())
}

fn constants_stability(_: &mut ChaCha8Rng) -> Result<(), String> {
    let (d1, d2) = (constant_d(100_000).map_err(|e| e.to_string())?, constant_d(200_000).map_err(|e| e.to_string())?);
    ensure!((d1.value - d2.value).abs() <= 1e-6, "D moves by {:e} under P doubling", (d1.value - d2.value).abs());
    let e = constant_e(2000, 1000).map_err(|e| e.to_string())?;
    let rel = ((e.value - e.half_value) / e.value).abs();
    ensure!(rel < 0.01, "E moves by {rel:.2e} relative under cutoff doubling");
    Ok(())
}

fn random_record(rng: &mut ChaCha8Rng) -> CacheRecord {
    let wide = |rng: &mut ChaCha8Rng| {
        let m: f64 = rng.gen_range(-1.0..1.0);
        m * 10f64.powi(rng.gen_range(-300..300))
    };
    CacheRecord {
        c1_a: rng.gen(),
        c1_b: rng.gen(),
        c2_a: rng.gen(),
        c2_b: rng.gen(),
        cond_norm: rng.gen(),
        l_re: wide(rng),
        l_im: wide(rng),
        w_re: wide(rng),
        w_im: wide(rng),
        y_param: f64::from_bits(rng.gen_range(0..0x7fefffffffffffff)),
        trunc_bound: rng.gen(),
        schema_version: SCHEMA_VERSION,
    }
}

fn cache_roundtrip(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..1000 {
        let r = random_record(rng);
        let line = r.to_json_line().map_err(|e| e.to_string())?;
        let back = CacheRecord::parse_line(&line).map_err(|e| format!("{e:?}"))?;
        ensure!(back == r, "{line} parsed back as {back:?}");
    }
    Ok(())
}

fn cold_warm_identical(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let dir = std::env::temp_dir().join(format!("cubic-moments-verify-{}-{}", std::process::id(), rng.gen::<u32>()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let result = (|| {
        let cfg = RunConfig { cache_path: dir.join("cache.jsonl"), prime_cutoff: 1000, cube_cutoff: 50, inner_cutoff: 50, ..RunConfig::default() };
        let grid = [250, 500, 1000];
        let render = || -> Result<String, String> {
            let mut cache = LCache::open(&cfg.cache_path).map_err(|e| e.to_string())?;
            let run = run_moments(&grid, &cfg, &mut cache).map_err(|e| e.to_string())?;
            render_reports(&run.reports, cfg.output_format).map_err(|e| e.to_string())
        };
        let cold = render()?;
        let warm = render()?;
        ensure!(cold == warm, "cold and warm reports differ");
        Ok(())
    })();
    let _ = std::fs::remove_dir_all(&dir);
    result
}
