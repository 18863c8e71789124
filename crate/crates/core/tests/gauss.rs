use std::f64::consts::TAU;

use eisenstein_cubic::characters::{cubic_symbol, enumerate_family, FamilyElement, ResidueRing};
use eisenstein_cubic::eisenstein::{enumerate_primary, is_squarefree};
use eisenstein_cubic::gauss::{gauss_sum, gauss_sum_shifted, root_number, squarefree_gauss_sum, twist_identity_check};
use eisenstein_cubic::{Complex64, Eisenstein};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Σ_α conj(χ_n(α)) e(−tr(rα/n)), summed naively in f64.
fn conjugate_direct(r: &Eisenstein, n: &Eisenstein) -> Complex64 {
    let ring = ResidueRing::new(*n).unwrap();
    let nn = n.norm();
    ring.residues()
        .map(|a| {
            let chi = cubic_symbol(&a, n).unwrap().conj().to_complex();
            let t = (*r * a * n.conj()).trace().rem_euclid(nn) as f64 / nn as f64;
            chi * Complex64::from_polar(1.0, -TAU * t)
        })
        .sum()
}

fn squarefree_primary(limit: u64) -> Vec<Eisenstein> {
    enumerate_primary(limit).into_iter().filter(|z| is_squarefree(z).unwrap()).collect()
}

#[test]
fn modulus_identity_for_coprime_shifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ds = squarefree_primary(1500);
    for _ in 0..100 {
        let d = ds[rng.gen_range(0..ds.len())];
        let a = Eisenstein::new(rng.gen_range(-50..50), rng.gen_range(-50..50));
        if !Eisenstein::gcd(&a, &d).map(|g| g.is_unit()).unwrap_or(false) {
            continue;
        }
        let g = gauss_sum(&a, &d).unwrap();
        assert!((g.norm_sqr() / d.norm() as f64 - 1.0).abs() < 1e-9, "g({a}, {d}) = {g}");
    }
}

#[test]
fn conjugation_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ns = squarefree_primary(800);
    for _ in 0..40 {
        let n = ns[rng.gen_range(0..ns.len())];
        let r = Eisenstein::new(rng.gen_range(-20..20), rng.gen_range(-20..20));
        let g = gauss_sum(&r, &n).unwrap();
        let c = conjugate_direct(&r, &n);
        assert!((g.conj() - c).norm() < 1e-9 * (1.0 + g.norm()), "{n}: {g} vs {c}");
        // χ_n(−1) = 1, so g(−r, n) = g(r, n)
        assert!((gauss_sum(&-r, &n).unwrap() - g).norm() < 1e-9 * (1.0 + g.norm()));
    }
}

#[test]
fn residue_system_shift_invariance() {
    for n in [Eisenstein::new(1, 3), Eisenstein::from_int(10), Eisenstein::new(-8, -3) * Eisenstein::from_int(-2)] {
        for t in [Eisenstein::new(1, 0), Eisenstein::new(-3, 7)] {
            let r = Eisenstein::new(2, 1);
            let a = gauss_sum(&r, &n).unwrap();
            let b = gauss_sum_shifted(&r, &n, &t).unwrap();
            assert!((a - b).norm() <= 1e-12, "{n}: {a} vs {b}");
        }
    }
}

#[test]
fn root_number_examples() {
    let ten = FamilyElement::new(Eisenstein::from_int(10), Eisenstein::one()).unwrap();
    let w = root_number(&ten).unwrap();
    let direct = gauss_sum(&Eisenstein::one(), &Eisenstein::from_int(10)).unwrap();
    assert!((w - direct).norm() < 1e-9);
    let m2 = gauss_sum(&Eisenstein::one(), &Eisenstein::from_int(-2)).unwrap();
    let m5 = gauss_sum(&Eisenstein::one(), &Eisenstein::from_int(-5)).unwrap();
    // g(1, mn) = conj((m/n)₃) g(1, m) g(1, n); here (−2/−5)₃ = 1.
    assert!((m2 * m5 - direct).norm() < 1e-9);
    for e in enumerate_family(2000) {
        let w = root_number(&e).unwrap();
        assert!((w.norm_sqr() / e.cond_norm as f64 - 1.0).abs() < 1e-9, "{e}");
    }
}

#[test]
fn multiplicative_assembly_matches_direct_sums() {
    for c in squarefree_primary(3000).into_iter().step_by(7) {
        let a = squarefree_gauss_sum(&c).unwrap();
        let b = gauss_sum(&Eisenstein::one(), &c).unwrap();
        assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()), "{c}: {a} vs {b}");
    }
}

#[test]
fn twist_identity() {
    let one = Eisenstein::one();
    assert!(twist_identity_check(&one, &Eisenstein::from_int(-2), &Eisenstein::from_int(-5)).unwrap());
    assert!(twist_identity_check(&one, &one, &Eisenstein::new(1, 3)).unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pool = squarefree_primary(2000);
    let coprime = |x: &Eisenstein, y: &Eisenstein| Eisenstein::gcd(x, y).unwrap().is_unit();
    let mut done = 0;
    while done < 200 {
        let pick = |rng: &mut ChaCha8Rng| pool[rng.gen_range(0..pool.len())];
        let (a, d, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        if (a * d * c).norm() > 100_000 || !coprime(&a, &d) || !coprime(&a, &c) || !coprime(&d, &c) {
            continue;
        }
        assert!(twist_identity_check(&a, &d, &c).unwrap(), "({a}, {d}, {c})");
        done += 1;
    }
}
