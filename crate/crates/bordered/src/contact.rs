//! Contact classes as distinguished cycles in type-A modules.
//!
//! Multiplication by an algebra element is a bypass (basic slice) attachment,
//! pairing classes glues contact manifolds, and the reattachment identity says
//! that moving a slice from one side of a gluing to the other only changes the
//! glued class by a boundary.

use std::fmt;
use std::sync::Arc;

use crate::curves::{distinguished, graph_a_from_curve, tau_epsilon, Curve};
use crate::error::{Error, Result};
use crate::f2core::{ChainComplex, F2Vector};
use crate::farey::Sign;
use crate::models::{
    azdd, dual_idempotent_generator, knot, solid_torus, KnotModel, Param, SolidTorusModel,
    AZ_GENERATORS,
};
use crate::pairing::{box_a_dd, box_ad, box_graph_d, tensor_name};
use crate::structures::{expand_graph_truncated, GraphTypeA, TypeA, TypeD};
use crate::torus_algebra::{Basis, Idem};

/// Operations tabulated for knot-complement modules.
pub const KNOT_HORIZON: usize = 6;

/// A cycle in a type-A module, tagged with the contact structure it represents.
#[derive(Clone, Debug)]
pub struct ContactClass {
    pub module: Arc<TypeA>,
    /// Graph presentation of `module`, used for lazy pairing when available.
    pub graph: Option<Arc<GraphTypeA>>,
    pub cycle: F2Vector,
    pub name: String,
    pub idempotent: Idem,
}

impl ContactClass {
    /// Checks that the support is nonempty and sits in one idempotent.
    pub fn new(module: Arc<TypeA>, cycle: F2Vector, name: &str) -> Result<Self> {
        let first = cycle
            .iter()
            .next()
            .ok_or_else(|| Error::InvalidInput(format!("contact class `{name}` is zero")))?;
        let idempotent = module.idem(first);
        if cycle
            .iter()
            .any(|x| x >= module.len() || module.idem(x) != idempotent)
        {
            return Err(Error::IdempotentMismatch(format!(
                "support of `{name}` is not in a single idempotent"
            )));
        }
        Ok(ContactClass {
            module,
            graph: None,
            cycle,
            name: name.to_string(),
            idempotent,
        })
    }

    pub fn generator(module: Arc<TypeA>, gen: &str, name: &str) -> Result<Self> {
        let i = module.index_of(gen)?;
        Self::new(module, F2Vector::singleton(i), name)
    }

    pub fn with_graph(mut self, g: Arc<GraphTypeA>) -> Self {
        self.graph = Some(g);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.cycle.is_zero()
    }

    pub fn support_names(&self) -> Vec<String> {
        self.cycle
            .iter()
            .map(|i| self.module.gen_name(i).to_string())
            .collect()
    }
}

impl fmt::Display for ContactClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.support_names();
        write!(
            f,
            "{} = {} [{}]",
            self.name,
            if s.is_empty() {
                "0".to_string()
            } else {
                s.join(" + ")
            },
            self.idempotent
        )
    }
}

/// A cycle in a type-D structure, e.g. `iota^v (x) c_A` for a solid torus.
#[derive(Clone, Debug)]
pub struct TypedContactClass {
    pub module: Arc<TypeD>,
    pub cycle: F2Vector,
    pub name: String,
}

/// Dividing set on the torus: `G0` parallel to the first edge, `G1` to the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suture {
    Gamma0,
    Gamma1,
}

impl fmt::Display for Suture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suture::Gamma0 => "G0",
            Suture::Gamma1 => "G1",
        })
    }
}

/// The contact structure on `T^2 x I` associated with an algebra basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceDescription {
    Invariant(Suture),
    BasicSlice {
        sign: Sign,
        from: Suture,
        to: Suture,
    },
    Union(Vec<SliceDescription>),
}

impl fmt::Display for SliceDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceDescription::Invariant(s) => write!(f, "invariant_{s}"),
            SliceDescription::BasicSlice { sign, from, to } => {
                write!(f, "basic_slice({}, {from}->{to})", sign.token())
            }
            SliceDescription::Union(parts) => {
                let p: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "union({})", p.join(", "))
            }
        }
    }
}

/// Generator-to-slice dictionary.
pub fn slice_of(a: Basis) -> SliceDescription {
    use SliceDescription::*;
    use Suture::*;
    match a {
        Basis::I0 => Invariant(Gamma0),
        Basis::I1 => Invariant(Gamma1),
        Basis::R1 => BasicSlice {
            sign: Sign::Plus,
            from: Gamma0,
            to: Gamma1,
        },
        Basis::R2 => BasicSlice {
            sign: Sign::Minus,
            from: Gamma1,
            to: Gamma0,
        },
        Basis::R3 => BasicSlice {
            sign: Sign::Minus,
            from: Gamma0,
            to: Gamma1,
        },
        composite => Union(
            composite
                .primitive_factors()
                .into_iter()
                .map(slice_of)
                .collect(),
        ),
    }
}

/// Attaches the slice of `a`: the cycle becomes `m2(c, a)`.
pub fn bypass(c: &ContactClass, a: Basis) -> Result<ContactClass> {
    if c.idempotent != a.left() {
        return Err(Error::IdempotentMismatch(format!(
            "`{}` lives in {} but {} starts in {}",
            c.name,
            c.idempotent,
            a.token(),
            a.left()
        )));
    }
    if c.module.horizon() == Some(0) {
        return Err(Error::NonTerminating(format!(
            "`{}` has no tabulated operations",
            c.module.name
        )));
    }
    Ok(ContactClass {
        module: c.module.clone(),
        graph: c.graph.clone(),
        cycle: c.module.m_vec(&c.cycle, &[a]),
        name: format!("{}+{}", c.name, a.token()),
        idempotent: a.right(),
    })
}

/// Which boundary curve of the knot complement the first edge represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SvParam {
    /// First edge a meridian, second a longitude: the map is a `r2` action.
    MeridianFirst,
    /// First edge a longitude, second a meridian: the map is a `r3` action.
    LongitudeFirst,
}

/// The Stipsicz-Vertesi map into the meridional idempotent.
pub fn sv_image(c: &ContactClass, param: SvParam) -> Result<ContactClass> {
    match param {
        SvParam::MeridianFirst => bypass(c, Basis::R2),
        SvParam::LongitudeFirst => bypass(c, Basis::R3),
    }
}

fn pair_cycle(
    c1: &ContactClass,
    d: &TypeD,
    dcycle: &F2Vector,
    cx: &ChainComplex,
) -> Result<F2Vector> {
    let mut v = F2Vector::new();
    for x in c1.cycle.iter() {
        for p in dcycle.iter() {
            if c1.module.idem(x) != d.idem(p) {
                return Err(Error::IdempotentMismatch(format!(
                    "`{}` and `{}` do not share an idempotent",
                    c1.module.gen_name(x),
                    d.gen_name(p)
                )));
            }
            let n = tensor_name(c1.module.gen_name(x), d.gen_name(p));
            v.toggle(cx.index_of(&n).ok_or(Error::UnknownGenerator(n))?);
        }
    }
    Ok(v)
}

/// The glued complex and the glued contact cycle `c1 (x) c2`.
pub fn pair_contact(c1: &ContactClass, c2: &TypedContactClass) -> Result<(ChainComplex, F2Vector)> {
    let cx = match &c1.graph {
        Some(g) => box_graph_d(g, &c2.module)?,
        None => box_ad(&c1.module, &c2.module)?,
    };
    let v = pair_cycle(c1, &c2.module, &c2.cycle, &cx)?;
    Ok((cx, v))
}

/// The unique generator in `meridian` with nonzero `r1` and `r3` actions.
pub fn locate_xi_in(m: &Arc<TypeA>, meridian: Idem) -> Result<ContactClass> {
    let hits: Vec<usize> = m
        .gens_in(meridian)
        .into_iter()
        .filter(|&x| !m.m(x, &[Basis::R1]).is_zero() && !m.m(x, &[Basis::R3]).is_zero())
        .collect();
    match hits.as_slice() {
        [x] => ContactClass::new(m.clone(), F2Vector::singleton(*x), "xi_in"),
        [] => Err(Error::NotFound(format!(
            "no generator of `{}` in {meridian} has both r1 and r3 actions",
            m.name
        ))),
        _ => Err(Error::NotUnique(format!(
            "{} generators of `{}` have both r1 and r3 actions",
            hits.len(),
            m.name
        ))),
    }
}

/// `xi_in` of a knot complement; it must sit at Alexander height zero.
pub fn knot_xi_in(km: &KnotModel) -> Result<ContactClass> {
    let m = Arc::new(km.module(KNOT_HORIZON)?);
    let c = locate_xi_in(&m, Idem::I0)?.with_graph(Arc::new(km.graph.clone()));
    let name = m.gen_name(c.cycle.iter().next().expect("singleton"));
    match km.heights.get(name) {
        Some(0) => Ok(c),
        h => Err(Error::NotFound(format!(
            "candidate `{name}` sits at height {h:?}, not in the middle"
        ))),
    }
}

/// The type-A class of a tagged solid-torus generator.
pub fn solid_torus_class(s: &SolidTorusModel, label: &str) -> Result<ContactClass> {
    let name = s
        .contact_tags
        .get(label)
        .cloned()
        .unwrap_or_else(|| label.to_string());
    Ok(
        ContactClass::generator(Arc::new(s.module.clone()), label, &name)?
            .with_graph(Arc::new(s.graph.clone())),
    )
}

/// The type-D class `iota^v (x) label` of a tagged solid-torus generator.
pub fn solid_torus_typed_class(s: &SolidTorusModel, label: &str) -> Result<TypedContactClass> {
    let i = s.module.idem(s.module.index_of(label)?);
    let d = s.typed()?;
    let n = tensor_name(label, dual_idempotent_generator(i));
    let g = d.index_of(&n)?;
    let name = s
        .contact_tags
        .get(label)
        .cloned()
        .unwrap_or_else(|| label.to_string());
    Ok(TypedContactClass {
        module: Arc::new(d),
        cycle: F2Vector::singleton(g),
        name,
    })
}

/// Outcome of moving the slice of `a` across a gluing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reattachment {
    /// Whether `d(c1 (x) a^v (x) c2)` equals the sum of the two gluings; `None`
    /// when `a^v` cannot sit between the two supports.
    pub literal: Option<bool>,
    /// Whether the two gluings are homologous.
    pub homologous: bool,
}

/// Compares `c1 (x) i^v (x) m2(c2, sigma a)` with `m2(c1, a) (x) i^v (x) c2` in
/// the triple pairing `c1 (x) AZ (x) c2`.
pub fn reattach(c1: &ContactClass, a: Basis, c2: &ContactClass) -> Result<Reattachment> {
    if a.is_idempotent() {
        return Err(Error::InvalidInput("reattachment needs a chord".into()));
    }
    let b = a.opposite();
    if c1.idempotent != a.left() || c2.idempotent != b.left() {
        return Err(Error::IdempotentMismatch(format!(
            "`{}` ({}) and `{}` ({}) do not compose through {}",
            c1.name,
            c1.idempotent,
            c2.name,
            c2.idempotent,
            a.token()
        )));
    }
    let d = box_a_dd(&c1.module, &azdd())?;
    let cx = match &c2.graph {
        Some(g) => box_graph_d(g, &d)?,
        None => box_ad(&c2.module, &d)?,
    };
    let triple = |u: &F2Vector, g: &str, w: &F2Vector| -> F2Vector {
        let mut v = F2Vector::new();
        for x in u.iter() {
            for y in w.iter() {
                let n = tensor_name(
                    c2.module.gen_name(y),
                    &tensor_name(c1.module.gen_name(x), g),
                );
                if let Some(k) = cx.index_of(&n) {
                    v.toggle(k);
                }
            }
        }
        v
    };
    let mut rhs = F2Vector::new();
    let left = c1.module.m_vec(&c1.cycle, &[a]);
    let right = c2.module.m_vec(&c2.cycle, &[b]);
    for (g, _, _) in AZ_GENERATORS.iter().filter(|(g, _, _)| g.starts_with('i')) {
        rhs.add_assign(&triple(&c1.cycle, g, &right));
        rhs.add_assign(&triple(&left, g, &c2.cycle));
    }
    let z = triple(&c1.cycle, &format!("{}v", a.token()), &c2.cycle);
    let literal = (z.len() == c1.cycle.len() * c2.cycle.len()).then(|| cx.boundary(&z) == rhs);
    Ok(Reattachment {
        literal,
        homologous: cx.is_boundary(&rhs)?,
    })
}

/// Whether the two ways of gluing across the slice of `a` give homologous classes.
pub fn reattach_check(c1: &ContactClass, a: Basis, c2: &ContactClass) -> Result<bool> {
    reattach(c1, a, c2).map(|r| r.homologous)
}

fn mirror_name(k: &str) -> Result<&'static str> {
    Ok(match k {
        "unknot" => "unknot",
        "rht" => "lht",
        "lht" => "rht",
        "t34" => "t34m",
        "t34m" => "t34",
        _ => return Err(Error::InvalidInput(format!("unknown knot `{k}`"))),
    })
}

/// Complement model of a Legendrian `k` with Thurston-Bennequin number `tb`:
/// the mirror's staircase at framing `-tb`.
pub fn legendrian_model(k: &str, tb: i64) -> Result<KnotModel> {
    knot(mirror_name(k)?, -tb)
}

/// `(tau, epsilon)` of the knot `k`, read off the lifted avatar of its
/// framing-zero Legendrian model with signs flipped.
pub fn knot_tau_epsilon(k: &str) -> Result<(i64, i64)> {
    let km = legendrian_model(k, 0)?;
    let (t, e) = tau_epsilon(&distinguished(&km.a_curve)?)?;
    Ok((-t, -e))
}

/// The tb-framed class whose `r2` image is the top staircase generator, if any.
pub fn legendrian_class(km: &KnotModel) -> Result<Option<ContactClass>> {
    let tau = -km.tau();
    let m = Arc::new(km.module(KNOT_HORIZON)?);
    let top = km
        .heights
        .iter()
        .find(|(_, &h)| h == tau)
        .map(|(n, _)| m.index_of(n))
        .transpose()?
        .ok_or_else(|| Error::NotFound(format!("no staircase generator at height {tau}")))?;
    let mut hits = m
        .gens_in(Idem::I1)
        .into_iter()
        .filter(|&t| m.m(t, &[Basis::R2]).contains(top));
    let t = match (hits.next(), hits.next()) {
        (None, _) => return Ok(None),
        (Some(t), None) => t,
        _ => {
            return Err(Error::NotUnique(
                "several r2-preimages of the top generator".into(),
            ))
        }
    };
    Ok(Some(
        ContactClass::new(m, F2Vector::singleton(t), "xi_tb")?
            .with_graph(Arc::new(km.graph.clone())),
    ))
}

/// Type-A class of a curve transformed by `f`, keeping generator names.
pub fn transformed_class(
    km: &KnotModel,
    c: &ContactClass,
    f: impl Fn(&Curve) -> Curve,
    tag: &str,
) -> Result<ContactClass> {
    let g = graph_a_from_curve(&f(&km.a_curve), &format!("{}:{tag}", km.name()))?;
    let m = Arc::new(expand_graph_truncated(&g, KNOT_HORIZON)?);
    let mut v = F2Vector::new();
    for n in c.support_names() {
        v.toggle(m.index_of(&n)?);
    }
    Ok(ContactClass::new(m, v, &format!("{}:{tag}", c.name))?.with_graph(Arc::new(g)))
}

/// Whether `gen (x) iota^v x1` survives after filling `km` with the `n`-framed
/// solid torus of the second parametrization.
pub fn filling_nonvanishing(km: &KnotModel, gen: &str, n: i64) -> Result<bool> {
    let m = Arc::new(km.module(KNOT_HORIZON)?);
    let c = ContactClass::generator(m, gen, gen)?.with_graph(Arc::new(km.graph.clone()));
    let s = solid_torus(n, Param::C)?;
    let (cx, z) = pair_contact(&c, &solid_torus_typed_class(&s, "x1")?)?;
    cx.is_nonvanishing_cycle(&z)
}

/// Algebraic verdict for positive contact surgery with coefficient `n >= 1`
/// (all stabilizations negative) on a Legendrian `k` with invariants `tb`, `rot`.
pub fn surgery_nonvanishing(k: &str, tb: i64, rot: i64, n: i64) -> Result<bool> {
    if n < 1 {
        return Err(Error::InvalidInput(format!(
            "contact coefficient {n} must be positive"
        )));
    }
    let km = legendrian_model(k, tb)?;
    if tb - rot != 2 * (-km.tau()) - 1 {
        return Ok(false);
    }
    match legendrian_class(&km)? {
        Some(c) => filling_nonvanishing(&km, &c.support_names()[0], n),
        None => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dictionary() {
        assert_eq!(slice_of(Basis::R1).to_string(), "basic_slice(+, G0->G1)");
        assert_eq!(
            slice_of(Basis::I0),
            SliceDescription::Invariant(Suture::Gamma0)
        );
        assert_eq!(
            slice_of(Basis::R23),
            SliceDescription::Union(vec![slice_of(Basis::R2), slice_of(Basis::R3)])
        );
        assert_eq!(
            slice_of(Basis::R123).to_string(),
            "union(basic_slice(+, G0->G1), basic_slice(-, G1->G0), basic_slice(-, G0->G1))"
        );
    }

    #[test]
    fn rht_middle_and_bypasses() {
        let km = knot("rht", 0).unwrap();
        let xi = knot_xi_in(&km).unwrap();
        assert_eq!(xi.support_names(), ["z1"]);
        assert!(matches!(
            bypass(&xi, Basis::R2),
            Err(Error::IdempotentMismatch(_))
        ));
        let x1 = bypass(&xi, Basis::R1).unwrap();
        assert!(!x1.is_zero());
        assert_eq!(
            bypass(&x1, Basis::R2).unwrap().cycle,
            bypass(&xi, Basis::R12).unwrap().cycle
        );
    }

    #[test]
    fn sv_sides() {
        let km = legendrian_model("rht", 1).unwrap();
        let c = legendrian_class(&km).unwrap().unwrap();
        assert_eq!(
            sv_image(&c, SvParam::MeridianFirst)
                .unwrap()
                .support_names(),
            ["z2"]
        );
        assert!(sv_image(
            &sv_image(&c, SvParam::MeridianFirst).unwrap(),
            SvParam::MeridianFirst
        )
        .is_err());
        let sw = transformed_class(&km, &c, Curve::quarter_turn, "swapped").unwrap();
        assert_eq!(
            sv_image(&sw, SvParam::LongitudeFirst)
                .unwrap()
                .support_names(),
            ["z2"]
        );
    }
}
