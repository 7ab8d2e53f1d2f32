use bordered::contact::{filling_nonvanishing, knot_tau_epsilon, legendrian_model, KNOT_HORIZON};
use bordered::curves::*;
use bordered::models::{knot, KNOTS};
use bordered::torus_algebra::Idem;
use proptest::prelude::*;

#[test]
fn knot_invariants_from_lifts() {
    let want = [
        ("unknot", (0, 0)),
        ("rht", (1, 1)),
        ("lht", (-1, -1)),
        ("t34", (3, 1)),
        ("t34m", (-3, -1)),
    ];
    for (k, te) in want {
        assert_eq!(knot_tau_epsilon(k).unwrap(), te, "{k}");
        let l = distinguished(&knot(k, 0).unwrap().a_curve).unwrap();
        let (t, e) = tau_epsilon(&l).unwrap();
        assert_eq!(tau_epsilon(&l.mirror()).unwrap(), (-t, -e), "{k}");
    }
}

#[test]
fn nonzero_framings_are_not_distinguished() {
    assert!(matches!(
        distinguished(&knot("rht", 2).unwrap().a_curve),
        Err(bordered::Error::NotDistinguished(_))
    ));
}

#[test]
fn formula_examples() {
    let v = |tb, rot, tau, eps, s| surgery_verdict_formula(tb, rot, tau, eps, s).unwrap();
    assert_eq!(v(1, 0, 1, 1, 2), Verdict::Nonvanishes);
    assert_eq!(v(0, -1, 1, 1, 1), Verdict::Vanishes);
    assert_eq!(v(1, 0, 1, -1, 5), Verdict::Vanishes);
    assert_eq!(v(-3, 0, 1, 1, 4), Verdict::Vanishes);
    assert_eq!(v(5, 0, 1, 1, 8), Verdict::Undetermined);
    assert!(surgery_verdict_formula(2, 1, 1, 1, 2).is_err());
    assert!(surgery_verdict_formula(1, 0, 1, 2, 3).is_err());
}

#[test]
fn svg_is_well_formed() {
    let c = knot("t34m", 0).unwrap().a_curve;
    for svg in [
        render_svg(&c),
        render_lifted_svg(&distinguished(&c).unwrap()),
    ] {
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("<path") || svg.contains("<polyline"));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Wherever the local rules decide, they agree with the pairing.
    #[test]
    fn curve_rules_agree_with_the_algebra(k in prop::sample::select(KNOTS.to_vec()), tb in -4i64..=2, n in 1i64..=6) {
        let km = legendrian_model(k, tb).unwrap();
        let m = km.module(KNOT_HORIZON).unwrap();
        for t in m.gens_in(Idem::I1) {
            let g = m.gen_name(t);
            match surgery_verdict_curve(&km.a_curve, g, n) {
                Ok(Verdict::Undetermined) | Err(_) => {}
                Ok(v) => prop_assert_eq!(v == Verdict::Nonvanishes, filling_nonvanishing(&km, g, n).unwrap(), "{} {}", km.name(), g),
            }
        }
    }
}
