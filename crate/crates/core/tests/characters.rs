use eisenstein_cubic::characters::{
    cubic_symbol, cubic_symbol_fast, enumerate_family, is_family_member, supplementary_law, CubicValue, FamilyElement,
    SupplementaryLaw,
};
use eisenstein_cubic::eisenstein::{enumerate_primary, factor, is_squarefree};
use eisenstein_cubic::Eisenstein;
use num_traits::One;
use proptest::prelude::*;

#[test]
fn symbol_examples() {
    let n = Eisenstein::new(1, 3);
    assert_eq!(cubic_symbol(&Eisenstein::from_int(2), &n).unwrap(), CubicValue::Root(2));
    assert_eq!(cubic_symbol_fast(&Eisenstein::from_int(2), &n).unwrap(), CubicValue::Root(2));
    assert_eq!(cubic_symbol(&Eisenstein::omega(), &n).unwrap(), CubicValue::Root(2));
    for m in enumerate_primary(300) {
        assert_eq!(cubic_symbol_fast(&Eisenstein::one(), &m).unwrap(), CubicValue::ONE);
    }
}

#[test]
fn supplementary_law_matches_classical_form() {
    // For m = a + bω primary, (1−ω / m)₃ = ω^{(a−1)/3}.
    assert_eq!(supplementary_law(), Some(SupplementaryLaw { ca: 1, cb: 0 }));
}

#[test]
fn reciprocity_for_primary_pairs() {
    let ms = enumerate_primary(400);
    for m in &ms {
        for n in &ms {
            assert_eq!(cubic_symbol(m, n).unwrap(), cubic_symbol(n, m).unwrap(), "({m}, {n})");
        }
    }
}

fn family_sample() -> &'static [FamilyElement] {
    static FAM: std::sync::OnceLock<Vec<FamilyElement>> = std::sync::OnceLock::new();
    FAM.get_or_init(|| enumerate_family(3000))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn characters_are_multiplicative_periodic_and_cubic(
        idx in 0usize..1000, x in (-500i128..500, -500i128..500), y in (-500i128..500, -500i128..500), t in (-50i128..50, -50i128..50)
    ) {
        let fam = family_sample();
        let e = fam[idx % fam.len()];
        let x = Eisenstein::new(x.0, x.1);
        let y = Eisenstein::new(y.0, y.1);
        prop_assert_eq!(e.chi(&(x * y)), e.chi(&x) * e.chi(&y));
        let shifted = x + e.conductor * Eisenstein::new(t.0, t.1);
        prop_assert_eq!(e.chi(&shifted), e.chi(&x));
        let v = e.chi(&x);
        if !v.is_zero() {
            prop_assert_eq!(v.pow(3), CubicValue::ONE);
        }
        let cheap = cubic_symbol(&x, &e.c1).unwrap() * cubic_symbol(&x, &e.c2).unwrap().conj();
        prop_assert_eq!(v, cheap);
    }
}

#[test]
fn hecke_condition_up_to_ten_thousand() {
    for e in enumerate_family(10_000) {
        assert_eq!(e.chi(&Eisenstein::omega()), CubicValue::ONE, "{e}");
        assert_eq!(e.chi(&Eisenstein::ramified_prime()), CubicValue::ONE, "{e}");
    }
}

/// χ is induced from modulus c/π iff it is trivial on all α ≡ 1 mod c/π.
#[test]
fn family_characters_are_primitive() {
    for e in enumerate_family(200) {
        let c = e.conductor;
        for (pi, _) in factor(&c).unwrap().factors {
            let sub = c.exact_div(&pi).unwrap();
            let ring = eisenstein_cubic::characters::ResidueRing::new(pi).unwrap();
            let witness = ring.residues().map(|t| Eisenstein::one() + sub * t).any(|a| {
                let v = e.chi(&a);
                !v.is_zero() && v != CubicValue::ONE
            });
            assert!(witness, "{e} looks induced from {sub}");
        }
    }
}

#[test]
fn family_matches_brute_force_double_loop() {
    let x = 2000u64;
    let sq: Vec<Eisenstein> = enumerate_primary(x).into_iter().filter(|z| is_squarefree(z).unwrap()).collect();
    let mut brute = Vec::new();
    for c1 in &sq {
        for c2 in &sq {
            if (c1.norm() * c2.norm()) as u64 <= x && is_family_member(c1, c2) {
                brute.push(FamilyElement::new(*c1, *c2).unwrap());
            }
        }
    }
    brute.sort_by_key(|e| e.sort_key());
    let fam = enumerate_family(x);
    assert_eq!(fam, brute);
    for y in [1u64, 99, 100, 196, 500, 1000, 1999] {
        assert_eq!(enumerate_family(y).len(), brute.iter().filter(|e| e.cond_norm <= y).count());
    }
}
