//! Bundled models: the twisting-slice DD bimodule, caps, framed solid tori and
//! L-space knot complements built from Alexander staircases.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::curves::{curve_from_typed, graph_a_from_curve, slope_component, Curve};
use crate::error::{Error, Result};
use crate::structures::{
    expand_graph_truncated, validate_typed, DDBimodule, GraphTypeA, TypeA, TypeD,
};
use crate::torus_algebra::{Basis, Idem};

/// Generators of the twisting-slice bimodule with their (left, right) idempotents.
pub const AZ_GENERATORS: [(&str, Idem, Idem); 8] = [
    ("i0v", Idem::I1, Idem::I1),
    ("i1v", Idem::I0, Idem::I0),
    ("r1v", Idem::I0, Idem::I1),
    ("r2v", Idem::I1, Idem::I0),
    ("r3v", Idem::I0, Idem::I1),
    ("r12v", Idem::I1, Idem::I1),
    ("r23v", Idem::I0, Idem::I0),
    ("r123v", Idem::I0, Idem::I1),
];

/// The twisting-slice DD bimodule. Each term `a (x) g` of a differential is an
/// arrow with left label `a`; each term `g (x) b` has right label `b`. The silent
/// side carries the idempotent of the generators it joins.
pub fn azdd() -> DDBimodule {
    use Basis::{R1, R2, R3};
    let mut p = DDBimodule::new("az");
    for (n, l, r) in AZ_GENERATORS {
        p.add_gen(n, l, r).expect("fixed generator list");
    }
    // (source, label, target, label sits on the left side?)
    let terms: [(&str, Basis, &str, bool); 12] = [
        ("r123v", R3, "r12v", true),
        ("r123v", R1, "r23v", false),
        ("r23v", R3, "r2v", true),
        ("r23v", R2, "r3v", false),
        ("r12v", R2, "r1v", true),
        ("r12v", R1, "r2v", false),
        ("r3v", R3, "i0v", true),
        ("r3v", R3, "i1v", false),
        ("r1v", R1, "i0v", true),
        ("r1v", R1, "i1v", false),
        ("r2v", R2, "i1v", true),
        ("r2v", R2, "i0v", false),
    ];
    for (s, a, t, on_left) in terms {
        let (l, r) = p.idems(p.index_of(s).expect("listed"));
        let (l, r) = if on_left {
            (a, r.basis())
        } else {
            (l.basis(), a)
        };
        p.add_arrow(s, l, r, t).expect("fixed arrow list");
    }
    p
}

/// The AZ generator whose pairing with a type-A generator in idempotent `i`
/// gives the type-D contact generator.
pub fn dual_idempotent_generator(i: Idem) -> &'static str {
    match i {
        Idem::I1 => "i0v",
        Idem::I0 => "i1v",
    }
}

/// The elementary cap: one generator, no arrows.
pub fn cap(i: Idem) -> TypeD {
    let mut d = TypeD::new(&format!("cap:{i}"));
    d.add_gen("m", i).expect("single generator");
    d
}

/// Operations longer than this are not tabulated for unbounded solid-torus modules.
pub const SOLID_HORIZON: usize = 6;

/// The four parametrization roles of a framed solid torus.
///
/// `A` and `B` use the first parametrization (single generator `y` in `i0`, curve
/// of slope `n`); `C` and `D` the second (`y` in `i1`, slope `-1/n`). The letters
/// are labels only and accept either sign of `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    A,
    B,
    C,
    D,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::A, Param::B, Param::C, Param::D];

    pub fn first(self) -> bool {
        matches!(self, Param::A | Param::B)
    }

    /// Idempotent of the single generator `y`.
    pub fn y_idem(self) -> Idem {
        if self.first() {
            Idem::I0
        } else {
            Idem::I1
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Param::A => "a",
            Param::B => "b",
            Param::C => "c",
            Param::D => "d",
        })
    }
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(Param::A),
            "b" => Ok(Param::B),
            "c" => Ok(Param::C),
            "d" => Ok(Param::D),
            _ => Err(Error::InvalidInput(format!(
                "expected parametrization a|b|c|d, got `{s}`"
            ))),
        }
    }
}

/// An `n`-framed solid torus with named generators `y, x1, ..., x|n|`.
#[derive(Clone, Debug)]
pub struct SolidTorusModel {
    pub n: i64,
    pub param: Param,
    pub curve: Curve,
    pub graph: GraphTypeA,
    /// Full table when bounded, otherwise truncated at [`SOLID_HORIZON`].
    pub module: TypeA,
    /// Generator name to contact structure name.
    pub contact_tags: BTreeMap<String, String>,
    /// Generator name to position height.
    pub heights: BTreeMap<String, i64>,
}

impl SolidTorusModel {
    /// Names `x1, ..., x|n|`.
    pub fn x_names(&self) -> Vec<String> {
        (1..=self.n.unsigned_abs())
            .map(|i| format!("x{i}"))
            .collect()
    }

    pub fn x_idem(&self) -> Idem {
        self.param.y_idem().other()
    }

    pub fn is_bounded(&self) -> bool {
        self.module.is_complete()
    }

    /// Type-D structure: pair with the twisting slice, then cancel idempotent
    /// arrows away from the generators `dual*y` and `dual*x_j`.
    pub fn typed(&self) -> Result<TypeD> {
        let d = crate::pairing::box_a_dd(&self.module, &azdd())?;
        let keep = self.typed_generator_names();
        let keep: Vec<&str> = keep.iter().map(String::as_str).collect();
        crate::structures::reduce_typed_keeping(&d, &keep)
    }

    /// Type-D names of the tagged generators.
    pub fn typed_generator_names(&self) -> Vec<String> {
        let mut v = vec![crate::pairing::tensor_name(
            "y",
            dual_idempotent_generator(self.param.y_idem()),
        )];
        for x in self.x_names() {
            v.push(crate::pairing::tensor_name(
                &x,
                dual_idempotent_generator(self.x_idem()),
            ));
        }
        v
    }

    pub fn name(&self) -> String {
        format!("solid:n={}:param={}", self.n, self.param)
    }
}

/// Homology class `(vertical, horizontal)` of the solid torus curve.
pub fn solid_torus_slope(n: i64, param: Param) -> (i64, i64) {
    if param.first() {
        (n, 1)
    } else {
        (-1, n)
    }
}

/// The `n`-framed solid torus in the chosen parametrization.
pub fn solid_torus(n: i64, param: Param) -> Result<SolidTorusModel> {
    if n == 0 {
        return Err(Error::InvalidFraming(
            "solid torus framing must be nonzero".into(),
        ));
    }
    let (p, q) = solid_torus_slope(n, param);
    let mut comp = slope_component(p, q)?;
    let raw = graph_a_from_curve(&Curve::single(comp.clone()), "raw")?;
    let y_idem = param.y_idem();
    let ys = (0..raw.len())
        .filter(|&i| raw.idem(i) == y_idem)
        .collect::<Vec<_>>();
    debug_assert_eq!(ys.len(), 1);
    let y = ys[0];
    // x generators form a directed chain; x1 has no incoming x-to-x edge.
    let xs: Vec<usize> = (0..raw.len()).filter(|&i| i != y).collect();
    let mut next: BTreeMap<usize, usize> = BTreeMap::new();
    let mut has_pred = vec![false; raw.len()];
    for (s, _, t) in raw.edges() {
        if *s != y && *t != y {
            next.insert(*s, *t);
            has_pred[*t] = true;
        }
    }
    let mut order = Vec::new();
    let mut cur = xs.iter().copied().find(|&x| !has_pred[x]);
    while let Some(c) = cur {
        order.push(c);
        cur = next.get(&c).copied();
    }
    if order.len() != xs.len() {
        return Err(Error::Structure(
            "solid torus generators do not form a chain".into(),
        ));
    }
    // Crossing k of the curve is generator `c0_k` of the raw graph.
    let mut names: BTreeMap<usize, String> = BTreeMap::new();
    names.insert(y, "y".to_string());
    for (i, &x) in order.iter().enumerate() {
        names.insert(x, format!("x{}", i + 1));
    }
    for (gen, name) in &names {
        let k: usize = raw.gen_name(*gen)[3..]
            .parse()
            .expect("default crossing name");
        comp.marks.insert(k, name.clone());
    }
    let curve = Curve::single(comp);
    let name = format!("solid:n={n}:param={param}");
    let graph = graph_a_from_curve(&curve, &name)?;
    let module = expand_graph_truncated(&graph, SOLID_HORIZON)?;

    let m = n.unsigned_abs() as usize;
    let mut tags = BTreeMap::new();
    tags.insert("y".to_string(), "xi0".to_string());
    if n < 0 {
        for i in 1..=m {
            tags.insert(format!("x{i}"), format!("xi{i}"));
        }
    } else if n == 1 {
        tags.insert("x1".to_string(), "xi1".to_string());
    } else {
        tags.insert("x1".to_string(), "xi-".to_string());
        tags.insert(format!("x{m}"), "xi+".to_string());
    }
    let mut heights = BTreeMap::new();
    heights.insert("y".to_string(), 0);
    for i in 1..=m {
        heights.insert(format!("x{i}"), i as i64);
    }
    Ok(SolidTorusModel {
        n,
        param,
        curve,
        graph,
        module,
        contact_tags: tags,
        heights,
    })
}

/// The knot-Floer staircase of an L-space knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    /// Symmetrized Alexander polynomial as (exponent, coefficient), descending.
    pub alexander: Vec<(i64, i64)>,
    /// Alexander height of each staircase generator `z0, z1, ...`, descending.
    pub heights: Vec<i64>,
    /// Gaps between consecutive heights, alternately horizontal and vertical.
    pub steps: Vec<i64>,
}

impl Staircase {
    pub fn genus(&self) -> i64 {
        self.heights[0]
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }
}

/// Builds the staircase from a symmetric Alexander polynomial. `coeffs[k]` is the
/// coefficient of `t^(g-k)` where `g = (coeffs.len()-1)/2`.
pub fn staircase_from_alexander(coeffs: &[i64]) -> Result<Staircase> {
    let bad = |m: &str| Error::NotLSpaceKnotForm(format!("{coeffs:?}: {m}"));
    if coeffs.len().is_multiple_of(2) {
        return Err(bad("even length cannot be symmetric about t^0"));
    }
    if coeffs.iter().ne(coeffs.iter().rev()) {
        return Err(bad("not symmetric"));
    }
    let g = (coeffs.len() as i64 - 1) / 2;
    let nonzero: Vec<(i64, i64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (g - k as i64, c))
        .collect();
    if nonzero.is_empty() || nonzero[0].0 != g {
        return Err(bad("leading coefficient must be nonzero"));
    }
    if nonzero.iter().any(|&(_, c)| c.abs() != 1) {
        return Err(bad("coefficients must be 0 or +-1"));
    }
    if nonzero.windows(2).any(|w| w[0].1 == w[1].1) || nonzero[0].1 != 1 {
        return Err(bad("nonzero coefficients must alternate starting from +1"));
    }
    let heights: Vec<i64> = nonzero.iter().map(|&(e, _)| e).collect();
    let steps = heights.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(Staircase {
        alexander: nonzero,
        heights,
        steps,
    })
}

/// Symmetrized Alexander coefficients of the bundled knots.
pub fn knot_alexander(name: &str) -> Result<(Vec<i64>, bool)> {
    Ok(match name {
        "unknot" => (vec![1], false),
        "rht" => (vec![1, -1, 1], false),
        "lht" => (vec![1, -1, 1], true),
        "t34" => (vec![1, -1, 0, 1, 0, -1, 1], false),
        "t34m" => (vec![1, -1, 0, 1, 0, -1, 1], true),
        _ => {
            return Err(Error::InvalidInput(format!(
                "unknown knot `{name}` (expected unknot rht lht t34 t34m)"
            )))
        }
    })
}

/// Bundled knot names.
pub const KNOTS: [&str; 5] = ["unknot", "rht", "lht", "t34", "t34m"];

/// Tau of the (possibly mirrored) staircase knot.
pub fn staircase_tau(s: &Staircase, mirror: bool) -> i64 {
    if mirror {
        -s.genus()
    } else {
        s.genus()
    }
}

/// Type-D structure of the knot complement with framing `framing`.
///
/// Staircase generators `z0, z1, ...` sit in `i0`; each arrow of length `l`
/// contributes `l` (vertical) or `l` (horizontal) auxiliary `i1` generators, and
/// the unstable chain from `z0` to the last generator depends on `framing - 2 tau`.
pub fn cfd_from_staircase(s: &Staircase, framing: i64, mirror: bool) -> Result<TypeD> {
    use Basis::*;
    let tag = if mirror { ":mirror" } else { "" };
    let mut d = TypeD::new(&format!("cfd:f={framing}{tag}"));
    let k = s.len();
    for i in 0..k {
        d.add_gen(&format!("z{i}"), Idem::I0)?;
    }
    // Odd generators are the corners of the staircase. Arrows point away from
    // them, and toward them in the mirror.
    for (j, &len) in s.steps.iter().enumerate() {
        let corner = if j % 2 == 0 { j + 1 } else { j };
        let other = if j % 2 == 0 { j } else { j + 1 };
        let (from, to) = if mirror {
            (other, corner)
        } else {
            (corner, other)
        };
        let (from, to) = (format!("z{from}"), format!("z{to}"));
        let horizontal = j % 2 == 0;
        let aux: Vec<String> = (1..=len)
            .map(|t| format!("{}{j}_{t}", if horizontal { "h" } else { "v" }))
            .collect();
        for a in &aux {
            d.add_gen(a, Idem::I1)?;
        }
        let l = len as usize;
        if horizontal {
            d.add_arrow(&from, R3, &aux[0])?;
            for t in 0..l - 1 {
                d.add_arrow(&aux[t], R23, &aux[t + 1])?;
            }
            d.add_arrow(&aux[l - 1], R2, &to)?;
        } else {
            d.add_arrow(&from, R1, &aux[0])?;
            for t in 1..l {
                d.add_arrow(&aux[t], R23, &aux[t - 1])?;
            }
            d.add_arrow(&to, R123, &aux[l - 1])?;
        }
    }
    // The vertical homology generator z0 and the horizontal one z_{k-1}.
    let (xi0, eta0) = ("z0".to_string(), format!("z{}", k - 1));
    let two_tau = 2 * staircase_tau(s, mirror);
    let m = framing - two_tau;
    if m == 0 {
        d.add_arrow(&xi0, R12, &eta0)?;
    } else {
        let chain: Vec<String> = (1..=m.abs()).map(|t| format!("u{t}")).collect();
        for c in &chain {
            d.add_gen(c, Idem::I1)?;
        }
        let l = chain.len();
        if m < 0 {
            d.add_arrow(&xi0, R1, &chain[0])?;
            for t in 1..l {
                d.add_arrow(&chain[t], R23, &chain[t - 1])?;
            }
            d.add_arrow(&eta0, R3, &chain[l - 1])?;
        } else {
            d.add_arrow(&xi0, R123, &chain[0])?;
            for t in 0..l - 1 {
                d.add_arrow(&chain[t], R23, &chain[t + 1])?;
            }
            d.add_arrow(&chain[l - 1], R2, &eta0)?;
        }
    }
    let v = validate_typed(&d);
    if !v.ok() {
        return Err(Error::Structure(format!(
            "staircase translation is invalid: {}",
            v.failures.join("; ")
        )));
    }
    Ok(d)
}

/// A knot complement: its type-D structure, curve and type-A module.
#[derive(Clone, Debug)]
pub struct KnotModel {
    pub knot: String,
    pub framing: i64,
    pub staircase: Staircase,
    pub mirror: bool,
    pub typed: TypeD,
    /// Curve of `typed`; crossings are marked by generator names.
    pub curve: Curve,
    /// Curve read with the meridional crossings on the vertical edge.
    pub a_curve: Curve,
    /// Type-A module: staircase generators land in `i0`.
    pub graph: GraphTypeA,
    /// Alexander height of each staircase generator.
    pub heights: BTreeMap<String, i64>,
}

impl KnotModel {
    pub fn name(&self) -> String {
        format!("knot:{}:f={}", self.knot, self.framing)
    }

    pub fn tau(&self) -> i64 {
        staircase_tau(&self.staircase, self.mirror)
    }

    /// Type-A table with operations up to `horizon` inputs.
    pub fn module(&self, horizon: usize) -> Result<TypeA> {
        expand_graph_truncated(&self.graph, horizon)
    }
}

/// Builds a bundled knot complement at the given framing.
pub fn knot(name: &str, framing: i64) -> Result<KnotModel> {
    let (coeffs, mirror) = knot_alexander(name)?;
    let staircase = staircase_from_alexander(&coeffs)?;
    let typed = cfd_from_staircase(&staircase, framing, mirror)?;
    let curve = curve_from_typed(&typed)?;
    let a_curve = curve.diagonal();
    let graph = graph_a_from_curve(&a_curve, &format!("knot:{name}:f={framing}"))?;
    let heights = staircase
        .heights
        .iter()
        .enumerate()
        .map(|(i, &h)| (format!("z{i}"), if mirror { -h } else { h }))
        .collect();
    Ok(KnotModel {
        knot: name.to_string(),
        framing,
        staircase,
        mirror,
        typed,
        curve,
        a_curve,
        graph,
        heights,
    })
}

/// Any bundled object addressable by name.
#[derive(Clone, Debug)]
pub enum Model {
    DD(DDBimodule),
    Cap(TypeD),
    Solid(Box<SolidTorusModel>),
    Knot(Box<KnotModel>),
}

/// Resolves `az`, `cap:i0`, `solid:n=-3:param=a`, `knot:rht:f=-1`.
pub fn model_by_name(spec: &str) -> Result<Model> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || {
        Error::InvalidInput(format!(
            "unknown model `{spec}` (expected az | cap:i0 | cap:i1 | solid:n=<int>:param=<a|b|c|d> | knot:<name>:f=<int>)"
        ))
    };
    let field = |s: &str, key: &str| -> Result<String> {
        s.strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .map(str::to_string)
            .ok_or_else(bad)
    };
    let int = |s: String| -> Result<i64> { s.parse().map_err(|_| bad()) };
    match parts.as_slice() {
        ["az"] => Ok(Model::DD(azdd())),
        ["cap", i] => Ok(Model::Cap(cap(i.parse()?))),
        ["solid", n, p] => Ok(Model::Solid(Box::new(solid_torus(
            int(field(n, "n")?)?,
            field(p, "param")?.parse()?,
        )?))),
        ["knot", k, f] => Ok(Model::Knot(Box::new(knot(k, int(field(f, "f")?)?)?))),
        _ => Err(bad()),
    }
}

/// Registry used for determinism checks: every model family at a few sizes.
pub fn registry_names() -> Vec<String> {
    let mut v = vec!["az".to_string(), "cap:i0".to_string(), "cap:i1".to_string()];
    for p in Param::ALL {
        for n in [-3, -1, 1, 2, 4] {
            v.push(format!("solid:n={n}:param={p}"));
        }
    }
    for k in KNOTS {
        for f in [-2, 0, 3] {
            v.push(format!("knot:{k}:f={f}"));
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{validate_dd, validate_typea};

    #[test]
    fn az_is_valid() {
        let p = azdd();
        assert_eq!(p.len(), 8);
        assert_eq!(p.arrow_count(), 12);
        assert!(validate_dd(&p).ok(), "{:?}", validate_dd(&p));
    }

    #[test]
    fn az_deletions() {
        let p = azdd();
        let mut survivors = Vec::new();
        for arrow in p.arrows().collect::<Vec<_>>() {
            let mut q = p.clone();
            q.remove_arrow(arrow);
            if validate_dd(&q).ok() {
                survivors.push((
                    p.gen_name(arrow.0).to_string(),
                    arrow.1,
                    arrow.2,
                    p.gen_name(arrow.3).to_string(),
                ));
            }
        }
        // Only the two arrows whose 2-paths all have zero products survive.
        assert_eq!(
            survivors,
            vec![
                ("r1v".to_string(), Basis::R1, Basis::I1, "i0v".to_string()),
                ("r3v".to_string(), Basis::I0, Basis::R3, "i1v".to_string()),
            ]
        );
    }

    #[test]
    fn caps() {
        for i in Idem::ALL {
            let c = cap(i);
            assert_eq!((c.len(), c.arrow_count(), c.idem(0)), (1, 0, i));
        }
    }

    #[test]
    fn staircases() {
        let s = staircase_from_alexander(&[1, -1, 1]).unwrap();
        assert_eq!(
            (s.heights.clone(), s.steps.clone()),
            (vec![1, 0, -1], vec![1, 1])
        );
        let s = staircase_from_alexander(&[1, -1, 0, 1, 0, -1, 1]).unwrap();
        assert_eq!(
            (s.heights.clone(), s.steps.clone()),
            (vec![3, 2, 0, -2, -3], vec![1, 2, 2, 1])
        );
        let s = staircase_from_alexander(&[1]).unwrap();
        assert_eq!((s.len(), s.steps.len()), (1, 0));
        for bad in [
            vec![1, 1, 1],
            vec![1, -1],
            vec![1, 2, 1],
            vec![-1, 1, -1],
            vec![1, 0, -1, 1, 0],
        ] {
            assert!(
                matches!(
                    staircase_from_alexander(&bad),
                    Err(Error::NotLSpaceKnotForm(_))
                ),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn solid_tori_shapes() {
        for p in Param::ALL {
            for n in (-8..=8).filter(|&n| n != 0) {
                let s = solid_torus(n, p).unwrap();
                assert_eq!(s.module.len(), n.unsigned_abs() as usize + 1);
                assert_eq!(s.module.gens_in(p.y_idem()).len(), 1);
                assert!(validate_typea(&s.module).ok(), "{}", s.name());
            }
        }
        assert!(matches!(
            solid_torus(0, Param::A),
            Err(Error::InvalidFraming(_))
        ));
    }

    #[test]
    fn knot_structures_are_valid() {
        for k in KNOTS {
            for f in -8..=8 {
                let m = knot(k, f).unwrap();
                assert!(validate_typed(&m.typed).ok());
                assert_eq!(
                    crate::curves::typed_from_curve(&m.curve, "again")
                        .unwrap()
                        .len(),
                    m.typed.len()
                );
            }
        }
    }

    #[test]
    fn registry_resolves() {
        for n in registry_names() {
            model_by_name(&n).unwrap();
        }
        assert!(model_by_name("solid:n=0:param=a").is_err());
        assert!(model_by_name("knot:foo:f=1").is_err());
        assert!(model_by_name("cap:i2").is_err());
    }
}
