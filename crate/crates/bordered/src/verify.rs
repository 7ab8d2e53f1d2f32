//! End-to-end consistency checks over the bundled models.
//!
//! Each check is exact and self-contained; the command-line `verify-all` and the
//! acceptance suite both run them.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use crate::contact::*;
use crate::curves::*;
use crate::error::Result;
use crate::f2core::F2Vector;
use crate::farey::*;
use crate::models::*;
use crate::pairing::{box_a_dd, box_graph_d, truncate};
use crate::structures::*;
use crate::torus_algebra::{mul, mul_basis, AlgebraElement, Basis, Idem};
use crate::Slope;

/// Outcome of one check.
#[derive(Clone, Debug)]
pub struct Check {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:>2}] {} {}: {} ({} ms)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed.as_millis()
        )
    }
}

fn timed(id: u8, title: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let t = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    Check {
        id,
        title,
        passed,
        detail,
        elapsed: t.elapsed(),
    }
}

/// Ids and titles of the library checks, in order.
pub const CHECKS: [(u8, &str); 12] = [
    (1, "torus algebra associativity and relations"),
    (2, "AZ bimodule validity and single-arrow deletions"),
    (3, "d^2 = 0 on bundled pairings"),
    (4, "solid tori through the AZ bimodule"),
    (5, "pairing rank equals minimal intersection"),
    (6, "meridional truncation ranks of knots"),
    (7, "Legendrian surgery on the left-handed trefoil"),
    (8, "Legendrian surgery on the mirrored T(3,4) branch"),
    (9, "positive surgery: formula, algebra and curve rules"),
    (10, "reattachment across a gluing"),
    (11, "Farey counts and classification"),
    (12, "Stipsicz-Vertesi map on the right-handed trefoil"),
];

/// Runs check `id` (1..=12).
pub fn run(id: u8) -> Option<Check> {
    let title = CHECKS.iter().find(|c| c.0 == id)?.1;
    let f: fn() -> Result<(bool, String)> = match id {
        1 => algebra,
        2 => az_deletions,
        3 => d_squared,
        4 => solid_tori_through_az,
        5 => rank_oracle,
        6 => truncation_ranks,
        7 => || legendrian_surgery("rht"),
        8 => || legendrian_surgery("t34m"),
        9 => positive_surgery,
        10 => reattachment,
        11 => farey_checks,
        12 => sv_map,
        _ => return None,
    };
    Some(timed(id, title, f))
}

/// Runs every library check, fanning out over threads.
pub fn run_all() -> Vec<Check> {
    std::thread::scope(|s| {
        let handles: Vec<_> = CHECKS
            .iter()
            .map(|&(id, _)| s.spawn(move || run(id).expect("known id")))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check panicked"))
            .collect()
    })
}

fn algebra() -> Result<(bool, String)> {
    let e = AlgebraElement::basis;
    let mut bad = 0;
    for a in Basis::ALL {
        for b in Basis::ALL {
            for c in Basis::ALL {
                if mul(mul(e(a), e(b)), e(c)) != mul(e(a), mul(e(b), e(c))) {
                    bad += 1;
                }
            }
        }
    }
    use Basis::*;
    let relations = [
        (R2, R1, None),
        (R3, R2, None),
        (R1, R2, Some(R12)),
        (R2, R3, Some(R23)),
        (R12, R3, Some(R123)),
        (R1, R23, Some(R123)),
        (R1, R1, None),
        (R3, R1, None),
    ];
    let rel_bad = relations
        .iter()
        .filter(|(a, b, c)| mul_basis(*a, *b) != *c)
        .count();
    Ok((
        bad == 0 && rel_bad == 0,
        format!(
            "{} triples, {bad} non-associative, {rel_bad} relation failures",
            8 * 8 * 8
        ),
    ))
}

fn az_deletions() -> Result<(bool, String)> {
    let p = azdd();
    let valid = validate_dd(&p).ok();
    let mut survivors = Vec::new();
    let arrows: Vec<_> = p.arrows().collect();
    for &arrow in &arrows {
        let mut q = p.clone();
        q.remove_arrow(arrow);
        if validate_dd(&q).ok() {
            survivors.push(format!(
                "{} -({} x {})-> {}",
                p.gen_name(arrow.0),
                arrow.1,
                arrow.2,
                p.gen_name(arrow.3)
            ));
        }
    }
    let detail = format!(
        "valid {valid}; {} deletions, {} still valid{}",
        arrows.len(),
        survivors.len(),
        if survivors.is_empty() {
            String::new()
        } else {
            format!(": {}", survivors.join("; "))
        }
    );
    Ok((valid && survivors.is_empty(), detail))
}

fn nonzero_framings() -> impl Iterator<Item = i64> {
    (-8i64..=8).filter(|n| *n != 0)
}

fn d_squared() -> Result<(bool, String)> {
    let knots: Vec<KnotModel> = ["rht", "lht", "t34", "t34m"]
        .iter()
        .map(|k| knot(k, 0))
        .collect::<Result<_>>()?;
    let mut a_side: Vec<(String, GraphTypeA)> = Vec::new();
    let mut solid_d: Vec<TypeD> = Vec::new();
    for p in Param::ALL {
        for n in nonzero_framings() {
            let s = solid_torus(n, p)?;
            if n.abs() <= 2 {
                solid_d.push(s.typed()?);
            }
            a_side.push((s.name(), s.graph));
        }
    }
    let mut d_side: Vec<TypeD> = vec![cap(Idem::I0), cap(Idem::I1)];
    d_side.extend(knots.iter().map(|k| k.typed.clone()));
    let (mut pairs, mut bad) = (0usize, Vec::new());
    let mut pair = |name: &str, g: &GraphTypeA, d: &TypeD| -> Result<()> {
        pairs += 1;
        if !box_graph_d(g, d)?.d_squared_violations().is_empty() {
            bad.push(format!("{name} x {}", d.name));
        }
        Ok(())
    };
    for (name, g) in &a_side {
        for d in &d_side {
            pair(name, g, d)?;
        }
    }
    for k in &knots {
        for d in d_side.iter().take(2).chain(&solid_d) {
            pair(&k.name(), &k.graph, d)?;
        }
    }
    Ok((
        bad.is_empty() && pairs >= 200,
        format!("{pairs} pairings, {} with d^2 != 0 {bad:?}", bad.len()),
    ))
}

fn solid_tori_through_az() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut total = 0;
    for p in Param::ALL {
        for n in nonzero_framings() {
            total += 1;
            let s = solid_torus(n, p)?;
            let kept = s.typed()?;
            let tags = s
                .typed_generator_names()
                .iter()
                .all(|g| kept.index_of(g).is_ok())
                && validate_typed(&kept).ok();
            let full = reduce_typed(&box_a_dd(&s.module, &azdd())?)?;
            let c = curve_from_typed(&full)?;
            let (a, b) = solid_torus_slope(n, p);
            let line: Vec<Step> = slope_component(a, b)?
                .steps
                .iter()
                .map(|x| x.diagonal())
                .collect();
            let back: Vec<Step> = line.iter().rev().map(|x| x.inverse()).collect();
            let red = reduce_word(&c.components[0].steps);
            let same = c.components.len() == 1
                && (same_cyclic_word(&red, &line) || same_cyclic_word(&red, &back));
            let rt = typed_from_curve(&c, "round-trip")?;
            let sizes = validate_typed(&full).ok()
                && full.len() == n.unsigned_abs() as usize + 1
                && rt.len() == full.len()
                && rt.arrow_count() == full.arrow_count();
            if !(tags && same && sizes) {
                bad.push(s.name());
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("{total} solid tori, {} failures {bad:?}", bad.len()),
    ))
}

fn rank_oracle() -> Result<(bool, String)> {
    let mut lines = Vec::new();
    for p in -6i64..=6 {
        for q in 0i64..=6 {
            if num_integer::Integer::gcd(&p, &q) == 1 && (q > 0 || p > 0) {
                lines.push((p, q));
            }
        }
    }
    let (mut checked, mut bad) = (0usize, Vec::new());
    for &(p, q) in &lines {
        let l1 = Curve::single(slope_component(p, q)?);
        let g = graph_a_from_curve(&l1, "l1")?;
        for &(r, s) in &lines {
            let l2 = Curve::single(slope_component(r, s)?);
            let rank = box_graph_d(&g, &typed_from_curve(&l2, "l2")?)?.homology_rank()?;
            let det = (p * s - q * r).unsigned_abs() as usize;
            checked += 1;
            if rank != det || min_intersections(&l1, &l2) != det {
                bad.push(format!("{p}/{q} vs {r}/{s}: rank {rank}, expected {det}"));
            }
        }
    }
    let mut knot_lines: Vec<(i64, i64)> = vec![(1, 0), (0, 1)];
    for n in nonzero_framings() {
        knot_lines.extend([(n, 1), (1, n)]);
    }
    knot_lines.sort();
    knot_lines.dedup();
    for k in ["rht", "lht", "t34", "t34m"] {
        let km = knot(k, 0)?;
        for &(p, q) in &knot_lines {
            let line = Curve::single(slope_component(p, q)?);
            let rank =
                box_graph_d(&km.graph, &typed_from_curve(&line, "line")?)?.homology_rank()?;
            let want = min_intersections(&km.a_curve, &line);
            checked += 1;
            if rank != want {
                bad.push(format!("{k} vs {p}/{q}: rank {rank}, expected {want}"));
            }
        }
    }
    let shown: Vec<&String> = bad.iter().take(4).collect();
    Ok((
        bad.is_empty(),
        format!("{checked} pairs, {} mismatches {shown:?}", bad.len()),
    ))
}

fn truncation_ranks() -> Result<(bool, String)> {
    let mut seen = Vec::new();
    let mut ok = true;
    for k in ["rht", "lht", "t34", "t34m"] {
        let (coeffs, _) = knot_alexander(k)?;
        let want: usize = coeffs.iter().map(|c| c.unsigned_abs() as usize).sum();
        for f in [-3, 0, 2] {
            let km = knot(k, f)?;
            let rank = truncate(&km.module(KNOT_HORIZON)?, Idem::I0).homology_rank()?;
            ok &= rank == want && want == if k.starts_with("t34") { 5 } else { 3 };
            if f == 0 {
                seen.push(format!("{k} {rank}"));
            }
        }
    }
    Ok((ok, seen.join(", ")))
}

/// Pairs a slice of `xi_in` with the matching end of the chain in the
/// `(n - 1)`-framed solid torus and looks for `dx = c + y`.
pub fn legendrian_pattern(km: &KnotModel, xi: Basis, n: i64) -> Result<bool> {
    let c = bypass(&knot_xi_in(km)?, xi)?;
    let s = solid_torus(n - 1, Param::C)?;
    let label = if xi == Basis::R3 {
        "x1".to_string()
    } else {
        s.x_names().pop().unwrap_or_default()
    };
    let (cx, z) = pair_contact(&c, &solid_torus_typed_class(&s, &label)?)?;
    let Some(g) = z.iter().next() else {
        return Ok(false);
    };
    let partner = (0..cx.len()).any(|x| {
        let d = cx.differential(x);
        d.contains(g) && d.len() == 2
    });
    Ok(z.len() == 1 && partner && cx.is_nonvanishing_cycle(&z)?)
}

fn legendrian_surgery(model: &str) -> Result<(bool, String)> {
    let km = knot(model, 0)?;
    let mut bad = Vec::new();
    for n in -8..=-1 {
        for (xi, tag) in [(Basis::R3, "xi3"), (Basis::R1, "xi1")] {
            if !legendrian_pattern(&km, xi, n)? {
                bad.push(format!("{tag} n={n}"));
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!(
            "{}: 16 pairings over n in -8..-1, {} vanish {bad:?}",
            km.name(),
            bad.len()
        ),
    ))
}

fn positive_surgery() -> Result<(bool, String)> {
    let (mut formula_checked, mut curve_checked, mut undecided) = (0usize, 0usize, 0usize);
    let mut bad = Vec::new();
    for k in KNOTS {
        let (tau, eps) = knot_tau_epsilon(k)?;
        for tb in 2 * tau - 7..=2 * tau - 1 {
            let bound = 2 * tau - 1 - tb;
            for rot in (-bound..=bound).filter(|r| (tb - r - 1).rem_euclid(2) == 0) {
                for n in 1..=8 {
                    let f = surgery_verdict_formula(tb, rot, tau, eps, n + tb)?;
                    let alg = surgery_nonvanishing(k, tb, rot, n)?;
                    formula_checked += 1;
                    if (f == Verdict::Nonvanishes) != alg || f == Verdict::Undetermined {
                        bad.push(format!(
                            "{k} tb={tb} rot={rot} n={n}: formula {f}, algebra {alg}"
                        ));
                    }
                }
            }
            // Curve rules against the algebra on every horizontal-edge generator.
            let km = legendrian_model(k, tb)?;
            let m = km.module(KNOT_HORIZON)?;
            let legendrian = legendrian_class(&km)?.map(|c| c.support_names()[0].clone());
            for t in m.gens_in(Idem::I1) {
                let gen = m.gen_name(t);
                for n in 1..=8 {
                    let alg = filling_nonvanishing(&km, gen, n)?;
                    if alg && legendrian.as_deref() != Some(gen) {
                        bad.push(format!("{} {gen} n={n}: unexpected survivor", km.name()));
                    }
                    match surgery_verdict_curve(&km.a_curve, gen, n) {
                        Ok(Verdict::Undetermined) => undecided += 1,
                        Ok(v) => {
                            curve_checked += 1;
                            if (v == Verdict::Nonvanishes) != alg {
                                bad.push(format!(
                                    "{} {gen} n={n}: curve {v}, algebra {alg}",
                                    km.name()
                                ));
                            }
                        }
                        Err(_) => undecided += 1,
                    }
                }
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!(
            "{formula_checked} formula cases, {curve_checked} curve cases ({undecided} undetermined), {} disagreements {:?}",
            bad.len(),
            bad.iter().take(4).collect::<Vec<_>>()
        ),
    ))
}

/// Contact classes shipped with the bundled models.
pub fn bundled_classes() -> Result<Vec<ContactClass>> {
    let mut out = Vec::new();
    for k in KNOTS {
        // Only some complements carry a unique middle generator.
        let xi = [0, -1, -2]
            .into_iter()
            .find_map(|f| knot(k, f).and_then(|km| knot_xi_in(&km)).ok());
        if let Some(xi) = xi {
            for a in [Basis::R1, Basis::R3] {
                let b = bypass(&xi, a)?;
                if !b.is_zero() {
                    out.push(b);
                }
            }
            out.push(xi);
        }
        for tb in -1..=1 {
            if let Some(c) = legendrian_class(&legendrian_model(k, tb)?)? {
                out.push(c);
            }
        }
    }
    for p in Param::ALL {
        for n in [-2, -1, 1, 2] {
            let s = solid_torus(n, p)?;
            for label in std::iter::once("y".to_string()).chain(s.x_names()) {
                out.push(solid_torus_class(&s, &label)?);
            }
        }
    }
    Ok(out)
}

fn reattachment() -> Result<(bool, String)> {
    let classes = bundled_classes()?;
    let (mut checked, mut literal_ok, mut literal_total) = (0usize, 0usize, 0usize);
    let mut bad = Vec::new();
    for c1 in &classes {
        for a in Basis::CHORDS {
            if c1.idempotent != a.left() {
                continue;
            }
            for c2 in classes
                .iter()
                .filter(|c| c.idempotent == a.opposite().left())
            {
                let r = reattach(c1, a, c2)?;
                checked += 1;
                if let Some(l) = r.literal {
                    literal_total += 1;
                    literal_ok += l as usize;
                }
                if !r.homologous {
                    bad.push(format!("{} {} {}", c1.name, a.token(), c2.name));
                }
            }
        }
    }
    Ok((
        bad.is_empty() && checked > 0,
        format!(
            "{} classes, {checked} composable triples, {} failures; literal identity {literal_ok}/{literal_total}",
            classes.len(),
            bad.len()
        ),
    ))
}

fn farey_shapes(max_edges: usize) -> Result<Vec<Vec<Slope>>> {
    let mut verts: Vec<Slope> = Vec::new();
    for q in 1..=3 {
        for p in -3 * q..=3 * q {
            let s = Slope::new(p, q)?;
            if !verts.contains(&s) {
                verts.push(s);
            }
        }
    }
    let before = |a: Slope, b: Slope| {
        if a.is_infinite() {
            !b.is_infinite()
        } else {
            !b.is_infinite()
                && (a.p() as i128) * (b.q() as i128) < (b.p() as i128) * (a.q() as i128)
        }
    };
    let mut out = Vec::new();
    let mut stack = vec![vec![Slope::infinity()]];
    while let Some(path) = stack.pop() {
        if path.len() > 1 {
            out.push(path.clone());
        }
        if path.len() > max_edges {
            continue;
        }
        let last = *path.last().expect("nonempty");
        for &v in &verts {
            if before(last, v) && farey_prod(last, v).abs() == 1 {
                let mut next = path.clone();
                next.push(v);
                stack.push(next);
            }
        }
    }
    Ok(out)
}

fn farey_checks() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for n in nonzero_framings() {
        let s = Slope::new(1, n)?;
        let canon: BTreeSet<String> = solid_torus_decorations(s)?
            .iter()
            .map(|p| shuffle_canonical(p).to_string())
            .collect();
        if canon.len() as i64 != count_tight_solid_torus(s)? {
            bad.push(format!("count 1/{n}"));
        }
    }
    let mut classified = 0usize;
    for v in farey_shapes(6)? {
        let k = v.len() - 2;
        let minimal = is_minimal(&v);
        for mask in 0..(1u32 << k) {
            let mut signs = vec![Sign::Circ];
            signs.extend((0..k).map(|b| {
                if mask >> b & 1 == 1 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            }));
            let p = DecoratedPath::new(v.clone(), signs.clone())?;
            let got = classify(&p)?;
            classified += 1;
            let want = if minimal {
                let mixed = signs[1..].contains(&Sign::Plus) && signs[1..].contains(&Sign::Minus);
                Some(if mixed {
                    Tightness::VirtuallyOvertwisted
                } else {
                    Tightness::UniversallyTight
                })
            } else if (2..v.len() - 1)
                .any(|i| signs[i - 1] != signs[i] && farey_prod(v[i - 1], v[i + 1]).abs() == 1)
            {
                Some(Tightness::Overtwisted)
            } else {
                let short = shorten(&p);
                if short == p {
                    Some(Tightness::Indeterminate)
                } else {
                    Some(classify(&short)?)
                }
            };
            if want != Some(got) {
                bad.push(format!("{p}: {got}"));
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!(
            "counts for |n| <= 8; {classified} decorated paths; {} failures {bad:?}",
            bad.len()
        ),
    ))
}

fn sv_map() -> Result<(bool, String)> {
    let km = legendrian_model("rht", 1)?;
    let c =
        legendrian_class(&km)?.ok_or_else(|| crate::Error::NotFound("no tb = 1 class".into()))?;
    let survives = |c: &ContactClass, p: SvParam, meridian: Idem| -> Result<bool> {
        let img = sv_image(c, p)?;
        let tr = truncate(&c.module, meridian);
        let names = img.support_names();
        if names.is_empty() {
            return Ok(false);
        }
        let v: F2Vector = tr.vector(&names.iter().map(String::as_str).collect::<Vec<_>>())?;
        tr.is_nonvanishing_cycle(&v)
    };
    let direct = survives(&c, SvParam::MeridianFirst, Idem::I0)?;
    let conj = transformed_class(&km, &c, Curve::point_reflection, "conjugate")?;
    let conjugate = survives(&conj, SvParam::MeridianFirst, Idem::I0)?;
    let sw = transformed_class(&km, &c, Curve::quarter_turn, "swapped")?;
    let swapped = survives(&sw, SvParam::LongitudeFirst, Idem::I1)?;
    Ok((
        direct && conjugate && swapped,
        format!("r2 image {direct}, conjugate {conjugate}, swapped via r3 {swapped}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_checks_pass() {
        for id in [1, 6, 12] {
            let c = run(id).unwrap();
            assert!(c.passed, "{c}");
        }
        assert!(run(13).is_none());
    }
}
