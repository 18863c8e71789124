use eisenstein_cubic::characters::enumerate_family;
use eisenstein_cubic::constants::ConstantsBundle;
use eisenstein_cubic::lfunction::{AfeSettings, LEvaluator};
use eisenstein_cubic::moments::*;

fn constants() -> ConstantsBundle {
    ConstantsBundle::compute(1000, 100, 100).unwrap()
}

#[test]
fn empty_family() {
    let c = constants();
    let r = moment_reports(&[50], AfeSettings::default(), &c, 1e-6).unwrap();
    assert_eq!(r[0].family_size, 0);
    assert_eq!(r[0].first_moment.re, 0.0);
    assert_eq!(r[0].second_moment, 0.0);
}

#[test]
fn reports_are_consistent_and_order_independent() {
    let c = constants();
    let ev = LEvaluator::new(AfeSettings::default()).unwrap();
    let recs = family_lvalues(3000, &ev).unwrap();
    assert_eq!(recs.len(), enumerate_family(3000).len());
    let fwd = aggregate(3000, &recs, &c, 1e-6);
    let rev = aggregate(3000, recs.iter().rev(), &c, 1e-6);
    assert!((fwd.first_moment - rev.first_moment).norm() <= fwd.tolerance_budget);
    assert!((fwd.second_moment - rev.second_moment).abs() <= fwd.second_moment_budget);
    assert!(fwd.first_moment.im.abs() <= fwd.tolerance_budget);
    assert!(fwd.first_moment.re > 0.0);
    assert!(fwd.nonvanishing_count <= fwd.family_size);
    assert_eq!(nonvanishing_count(&recs, 1e-6, 1e-8).unwrap(), fwd.nonvanishing_count);
    assert!(nonvanishing_count(&recs, 1e-8, 1e-8).is_err());

    // Bit-for-bit reproducible.
    let again = family_lvalues(3000, &ev).unwrap();
    assert_eq!(aggregate(3000, &again, &c, 1e-6), fwd);

    // Pairing each element with its conjugate cancels the imaginary parts.
    for r in &recs {
        let pair = recs.iter().find(|s| s.elem == r.elem.conjugate()).unwrap();
        assert!((r.l_half - pair.l_half.conj()).norm() <= r.truncation_bound + pair.truncation_bound);
    }
}

#[test]
fn capacity_and_threshold_errors() {
    let c = constants();
    assert!(moment_reports(&[200_000], AfeSettings::default(), &c, 1e-6).is_err());
    assert!(moment_reports(&[1000], AfeSettings::default(), &c, 1e-9).is_err());
}
