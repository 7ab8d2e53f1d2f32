use std::sync::Arc;

use bordered::contact::*;
use bordered::curves::Curve;
use bordered::models::*;
use bordered::torus_algebra::{Basis, Idem};
use bordered::Error;
use proptest::prelude::*;

/// A glued class survives with the "one partner" pattern: some generator hits it
/// together with exactly one other generator.
fn survives_with_partner(k: &str, xi: Basis, n: i64) -> bool {
    let km = knot(k, 0).unwrap();
    let c = bypass(&knot_xi_in(&km).unwrap(), xi).unwrap();
    let s = solid_torus(n - 1, Param::C).unwrap();
    let label = if xi == Basis::R3 {
        "x1".to_string()
    } else {
        s.x_names().pop().unwrap()
    };
    let (cx, z) = pair_contact(&c, &solid_torus_typed_class(&s, &label).unwrap()).unwrap();
    assert_eq!(z.len(), 1);
    let g = z.iter().next().unwrap();
    let partner = (0..cx.len()).any(|x| {
        let d = cx.differential(x);
        d.contains(g) && d.len() == 2
    });
    cx.is_nonvanishing_cycle(&z).unwrap() && partner
}

#[test]
fn legendrian_surgery_on_the_left_handed_trefoil() {
    for n in -8..=-1 {
        assert!(survives_with_partner("rht", Basis::R3, n), "xi3, n = {n}");
        assert!(survives_with_partner("rht", Basis::R1, n), "xi1, n = {n}");
    }
}

#[test]
fn legendrian_surgery_on_t34() {
    for n in -8..=-1 {
        assert!(cfg_nonvanishing("t34m", Basis::R3, n), "xi3, n = {n}");
        assert!(cfg_nonvanishing("t34m", Basis::R1, n), "xi1, n = {n}");
    }
}

fn cfg_nonvanishing(k: &str, xi: Basis, n: i64) -> bool {
    let km = knot(k, 0).unwrap();
    let c = bypass(&knot_xi_in(&km).unwrap(), xi).unwrap();
    let s = solid_torus(n - 1, Param::C).unwrap();
    let label = if xi == Basis::R3 {
        "x1".to_string()
    } else {
        s.x_names().pop().unwrap()
    };
    let (cx, z) = pair_contact(&c, &solid_torus_typed_class(&s, &label).unwrap()).unwrap();
    cx.is_nonvanishing_cycle(&z).unwrap()
}

#[test]
fn swapped_tags_vanish() {
    // Control: pairing each slice with the other end of the solid torus chain.
    let km = knot("rht", 0).unwrap();
    let xi3 = bypass(&knot_xi_in(&km).unwrap(), Basis::R3).unwrap();
    let s = solid_torus(-4, Param::C).unwrap();
    let (cx, z) = pair_contact(&xi3, &solid_torus_typed_class(&s, "x4").unwrap()).unwrap();
    assert!(!cx.is_nonvanishing_cycle(&z).unwrap());
}

#[test]
fn middle_generators() {
    let heights = |k: &str| {
        let km = knot(k, if k == "unknot" { -1 } else { 0 }).unwrap();
        let c = knot_xi_in(&km).unwrap();
        let n = km.module(KNOT_HORIZON).unwrap().gens_in(Idem::I0).len();
        (c.support_names(), n)
    };
    assert_eq!(heights("rht"), (vec!["z1".to_string()], 3));
    assert_eq!(heights("t34m"), (vec!["z2".to_string()], 5));
    assert_eq!(heights("unknot"), (vec!["z0".to_string()], 1));
}

#[test]
fn locate_failures() {
    let s = solid_torus(2, Param::A).unwrap();
    let m = Arc::new(s.module.clone());
    assert!(matches!(
        locate_xi_in(&m, Idem::I1),
        Err(Error::NotFound(_))
    ));
}

#[test]
fn sv_map_on_the_right_handed_trefoil() {
    let km = legendrian_model("rht", 1).unwrap();
    let c = legendrian_class(&km).unwrap().unwrap();
    let top = |c: &ContactClass| {
        let img = sv_image(c, SvParam::MeridianFirst).unwrap();
        let tr = bordered::pairing::truncate(&c.module, Idem::I0);
        let names = img.support_names();
        let v = tr
            .vector(&names.iter().map(String::as_str).collect::<Vec<_>>())
            .unwrap();
        tr.is_nonvanishing_cycle(&v).unwrap()
    };
    assert!(top(&c));
    let conj = transformed_class(&km, &c, Curve::point_reflection, "conjugate").unwrap();
    assert!(top(&conj));
    let sw = transformed_class(&km, &c, Curve::quarter_turn, "swapped").unwrap();
    assert!(matches!(
        sv_image(&sw, SvParam::MeridianFirst),
        Err(Error::IdempotentMismatch(_))
    ));
    assert!(!sv_image(&sw, SvParam::LongitudeFirst).unwrap().is_zero());
    // Meridional input is on the wrong side.
    let xi = knot_xi_in(&knot("rht", 0).unwrap()).unwrap();
    assert!(sv_image(&xi, SvParam::MeridianFirst).is_err());
}

#[test]
fn reattachment_for_the_trefoil() {
    let km = knot("rht", 0).unwrap();
    let xi = knot_xi_in(&km).unwrap();
    let s = solid_torus(-3, Param::C).unwrap();
    let x1 = solid_torus_class(&s, "x1").unwrap();
    let r = reattach(&xi, Basis::R3, &x1).unwrap();
    assert_eq!(
        r,
        Reattachment {
            literal: Some(true),
            homologous: true
        }
    );
    assert!(matches!(
        reattach(&xi, Basis::R2, &x1),
        Err(Error::IdempotentMismatch(_))
    ));
}

fn trefoil_xi() -> ContactClass {
    knot_xi_in(&knot("rht", 0).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn bypass_respects_products(i in 0usize..6, j in 0usize..6, start in prop::sample::select(vec![0usize, 1, 2])) {
        let (a, b) = (Basis::CHORDS[i], Basis::CHORDS[j]);
        let mut c = trefoil_xi();
        for w in [vec![], vec![Basis::R1], vec![Basis::R3]][start].clone() {
            c = bypass(&c, w).unwrap();
        }
        let Some(ab) = bordered::torus_algebra::mul_basis(a, b) else { return Ok(()); };
        let (Ok(x), Ok(y)) = (bypass(&c, a), bypass(&c, ab)) else { return Ok(()); };
        let Ok(x) = bypass(&x, b) else { return Ok(()); };
        prop_assert_eq!(x.cycle, y.cycle);
    }
}
