//! Combinatorial curves on the punctured torus.
//!
//! The torus is the unit square with the puncture at the bottom-left corner. A
//! closed component is a cyclic word recording the edges it crosses: `U`/`D`
//! cross the horizontal edge going up/down, `R`/`L` cross the vertical edge
//! going right/left. Reduced cyclic words are exactly free homotopy classes.

mod intersect;
mod lift;
mod svg;
mod text;
mod verdict;

pub use intersect::{component_intersections, min_intersections};
pub use lift::{distinguished, lift, picture, tau_epsilon, LiftedCurve, MidlineHit};
pub use svg::{render_lifted_svg, render_svg};
pub use text::parse_curve;
pub use verdict::{
    surgery_verdict_curve, surgery_verdict_formula, surgery_verdict_report, Verdict, VerdictReport,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::structures::{GraphTypeA, TypeD};
use crate::torus_algebra::{Basis, Idem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
    L,
    R,
}

impl Step {
    pub fn inverse(self) -> Step {
        match self {
            Step::U => Step::D,
            Step::D => Step::U,
            Step::L => Step::R,
            Step::R => Step::L,
        }
    }

    pub fn turn_left(self) -> Step {
        match self {
            Step::U => Step::L,
            Step::L => Step::D,
            Step::D => Step::R,
            Step::R => Step::U,
        }
    }

    pub fn turn_right(self) -> Step {
        self.turn_left().inverse()
    }

    /// Reflection across the diagonal of the square.
    pub fn diagonal(self) -> Step {
        match self {
            Step::U => Step::R,
            Step::R => Step::U,
            Step::D => Step::L,
            Step::L => Step::D,
        }
    }

    /// Horizontal-edge crossings carry `i0` in type-D language, vertical ones `i1`.
    pub fn idem(self) -> Idem {
        match self {
            Step::U | Step::D => Idem::I0,
            Step::L | Step::R => Idem::I1,
        }
    }

    /// Integer displacement in the plane.
    pub fn delta(self) -> (i64, i64) {
        match self {
            Step::U => (0, 1),
            Step::D => (0, -1),
            Step::R => (1, 0),
            Step::L => (-1, 0),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
            Step::L => 'L',
            Step::R => 'R',
        }
    }
}

/// Sides of the square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

fn entry_side(s: Step) -> Side {
    match s {
        Step::U => Side::Bottom,
        Step::D => Side::Top,
        Step::R => Side::Left,
        Step::L => Side::Right,
    }
}

fn exit_side(s: Step) -> Side {
    match s {
        Step::U => Side::Top,
        Step::D => Side::Bottom,
        Step::R => Side::Right,
        Step::L => Side::Left,
    }
}

/// Label of the arc joining two sides, and the side its arrow starts from.
fn arc_label(a: Side, b: Side) -> Option<(Basis, Side)> {
    use Side::*;
    if a == b {
        return None;
    }
    let table = [
        (Bottom, Right, Basis::R1),
        (Right, Top, Basis::R2),
        (Top, Left, Basis::R3),
        (Bottom, Left, Basis::R123),
        (Bottom, Top, Basis::R12),
        (Right, Left, Basis::R23),
    ];
    table.iter().find_map(|&(s, t, l)| {
        if (s, t) == (a, b) || (t, s) == (a, b) {
            Some((l, s))
        } else {
            None
        }
    })
}

/// Substitution turning a type-D arc label into the type-A string of the same arc.
pub fn a_string(d_label: Basis) -> Vec<Basis> {
    use Basis::*;
    match d_label {
        R1 => vec![R3],
        R2 => vec![R2],
        R3 => vec![R1],
        R12 => vec![R3, R2],
        R23 => vec![R2, R1],
        R123 => vec![R3, R2, R1],
        I0 | I1 => vec![],
    }
}

/// One closed component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub steps: Vec<Step>,
    /// Crossing index to generator name.
    pub marks: BTreeMap<usize, String>,
}

impl Component {
    pub fn new(steps: Vec<Step>) -> Self {
        Component {
            steps,
            marks: BTreeMap::new(),
        }
    }

    /// Net homology class (horizontal, vertical).
    pub fn homology(&self) -> (i64, i64) {
        self.steps.iter().fold((0, 0), |(x, y), s| {
            let (dx, dy) = s.delta();
            (x + dx, y + dy)
        })
    }

    pub fn is_reduced(&self) -> bool {
        let n = self.steps.len();
        n > 0 && (0..n).all(|i| self.steps[(i + 1) % n] != self.steps[i].inverse())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Curve {
    pub components: Vec<Component>,
}

impl Curve {
    pub fn single(c: Component) -> Self {
        Curve {
            components: vec![c],
        }
    }

    fn map_steps(&self, f: impl Fn(Step) -> Step) -> Curve {
        Curve {
            components: self
                .components
                .iter()
                .map(|c| Component {
                    steps: c.steps.iter().map(|&s| f(s)).collect(),
                    marks: c.marks.clone(),
                })
                .collect(),
        }
    }

    /// The curve reflected across the diagonal of the square.
    pub fn diagonal(&self) -> Curve {
        self.map_steps(Step::diagonal)
    }

    /// A quarter turn: the two edges of the square exchange roles.
    pub fn quarter_turn(&self) -> Curve {
        self.map_steps(Step::turn_left)
    }

    /// The elliptic involution (point reflection), exchanging r1 and r3.
    pub fn point_reflection(&self) -> Curve {
        self.map_steps(Step::inverse)
    }

    pub fn crossings(&self) -> usize {
        self.components.iter().map(|c| c.steps.len()).sum()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

/// The cutting sequence of a straight line of slope `p/q` (`q = 0` is vertical).
pub fn slope_component(p: i64, q: i64) -> Result<Component> {
    if p == 0 && q == 0 {
        return Err(Error::InvalidInput("slope 0/0".into()));
    }
    let g = gcd(p, q);
    let (mut p, mut q) = (p / g, q / g);
    if q < 0 || (q == 0 && p < 0) {
        p = -p;
        q = -q;
    }
    // Walk from a generic point along (q, p) for one period, recording crossings
    // in order; compare crossing times exactly with integer arithmetic.
    // Start at (1/(4|q|+4), 1/(4|p|+4) + 1/(8|p|+8) ) scaled to a common denominator.
    let den: i64 = 8 * (p.abs() + 1) * (q.abs() + 1);
    let x0 = 2 * (p.abs() + 1); // x0/den = 1/(4(q+1))
    let y0 = 3 * (q.abs() + 1); // y0/den = 3/(8(p+1))
    let mut events: Vec<(i128, i128, Step)> = Vec::new();
    // Vertical lines x = k crossed at t = (k*den - x0) / (q*den), for k = 1..=q.
    for k in 1..=q {
        events.push(((k * den - x0) as i128, (q * den) as i128, Step::R));
    }
    for k in 1..=p.abs() {
        let (num, step) = if p > 0 {
            (k * den - y0, Step::U)
        } else {
            (y0 - (1 - k) * den, Step::D)
        };
        events.push((num as i128, (p.abs() * den) as i128, step));
    }
    events.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    Ok(Component::new(events.into_iter().map(|e| e.2).collect()))
}

/// Type-D structure read off a curve: one generator per crossing.
/// Generators are named `<prefix><component>_<index>` unless marked.
pub fn typed_from_curve(c: &Curve, name: &str) -> Result<TypeD> {
    let mut d = TypeD::new(name);
    let mut ids: Vec<Vec<usize>> = Vec::new();
    for (ci, comp) in c.components.iter().enumerate() {
        if !comp.is_reduced() {
            return Err(Error::InvalidInput(format!(
                "component {ci} is not a reduced cyclic word"
            )));
        }
        let mut v = Vec::new();
        for (k, s) in comp.steps.iter().enumerate() {
            let gname = comp
                .marks
                .get(&k)
                .cloned()
                .unwrap_or_else(|| format!("c{ci}_{k}"));
            v.push(d.add_gen(&gname, s.idem())?);
        }
        ids.push(v);
    }
    for (ci, comp) in c.components.iter().enumerate() {
        let n = comp.steps.len();
        for k in 0..n {
            let (s1, s2) = (comp.steps[k], comp.steps[(k + 1) % n]);
            let (label, from) =
                arc_label(entry_side(s1), exit_side(s2)).expect("reduced words never backtrack");
            let (g1, g2) = (ids[ci][k], ids[ci][(k + 1) % n]);
            if from == entry_side(s1) {
                d.toggle_arrow(g1, label, g2);
            } else {
                d.toggle_arrow(g2, label, g1);
            }
        }
    }
    Ok(d)
}

/// Graph type-A module of a curve: reflect across the diagonal, read the type-D
/// arcs, then substitute each label by its type-A string.
pub fn graph_a_from_curve(c: &Curve, name: &str) -> Result<GraphTypeA> {
    let d = typed_from_curve(&c.diagonal(), name)?;
    let mut g = GraphTypeA::new(name);
    for i in 0..d.len() {
        g.add_gen(d.gen_name(i), d.idem(i))?;
    }
    for (s, a, t) in d.arrows() {
        g.push_edge(s, a_string(a), t)?;
    }
    Ok(g)
}

/// Inverse of [`typed_from_curve`] for reduced structures in curve position:
/// every generator must carry exactly one arc on each of its two sides.
/// Each crossing is marked with its generator name.
pub fn curve_from_typed(d: &TypeD) -> Result<Curve> {
    // ends[g] = [(side, arrow index, other generator, other side)]
    let mut ends: Vec<Vec<(Side, usize, usize, Side)>> = vec![Vec::new(); d.len()];
    for (k, (s, a, t)) in d.arrows().enumerate() {
        if a.is_idempotent() {
            return Err(Error::Precondition(format!(
                "`{}` still has idempotent arrows; reduce it first",
                d.name
            )));
        }
        let (src_side, tgt_side) = label_sides(a);
        ends[s].push((src_side, k, t, tgt_side));
        ends[t].push((tgt_side, k, s, src_side));
    }
    for (g, e) in ends.iter().enumerate() {
        let mut sides: Vec<Side> = e.iter().map(|x| x.0).collect();
        sides.sort_by_key(|s| *s as u8);
        let want = match d.idem(g) {
            Idem::I0 => [Side::Bottom, Side::Top],
            Idem::I1 => [Side::Right, Side::Left],
        };
        let mut want = want.to_vec();
        want.sort_by_key(|s| *s as u8);
        if sides != want {
            return Err(Error::LocalSystemRequired(format!(
                "generator `{}` meets {} arcs on sides {:?}; not in curve position",
                d.gen_name(g),
                e.len(),
                sides
            )));
        }
    }
    let arc_at = |g: usize, side: Side| ends[g].iter().find(|e| e.0 == side).copied().unwrap();
    let mut seen = vec![false; d.len()];
    let mut curve = Curve::default();
    for start in 0..d.len() {
        if seen[start] {
            continue;
        }
        let mut comp = Component::new(Vec::new());
        let mut g = start;
        let mut step = match d.idem(start) {
            Idem::I0 => Step::U,
            Idem::I1 => Step::R,
        };
        while !seen[g] {
            seen[g] = true;
            comp.marks
                .insert(comp.steps.len(), d.gen_name(g).to_string());
            comp.steps.push(step);
            let (_, _, h, h_side) = arc_at(g, entry_side(step));
            step = match h_side {
                Side::Top => Step::U,
                Side::Bottom => Step::D,
                Side::Right => Step::R,
                Side::Left => Step::L,
            };
            g = h;
        }
        if g != start || step != comp.steps[0] {
            return Err(Error::LocalSystemRequired(format!(
                "arcs through `{}` do not close up",
                d.gen_name(start)
            )));
        }
        curve.components.push(comp);
    }
    Ok(curve)
}

/// Sides touched by the arc of a chord label: (source side, target side).
fn label_sides(a: Basis) -> (Side, Side) {
    use Side::*;
    match a {
        Basis::R1 => (Bottom, Right),
        Basis::R2 => (Right, Top),
        Basis::R3 => (Top, Left),
        Basis::R123 => (Bottom, Left),
        Basis::R12 => (Bottom, Top),
        Basis::R23 => (Right, Left),
        Basis::I0 | Basis::I1 => unreachable!("idempotents carry no arc"),
    }
}

/// Cancels backtracking pairs cyclically.
pub fn reduce_word(steps: &[Step]) -> Vec<Step> {
    let mut out: Vec<Step> = Vec::new();
    for &s in steps {
        if out.last() == Some(&s.inverse()) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    while out.len() >= 2 && out[0] == out[out.len() - 1].inverse() {
        out.pop();
        out.remove(0);
    }
    out
}

/// Whether two cyclic words describe the same unoriented free homotopy class.
pub fn same_cyclic_word(a: &[Step], b: &[Step]) -> bool {
    let (a, b) = (reduce_word(a), reduce_word(b));
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let inv: Vec<Step> = b.iter().rev().map(|s| s.inverse()).collect();
    let n = a.len();
    [b, inv]
        .iter()
        .any(|w| (0..n).any(|r| (0..n).all(|i| a[i] == w[(i + r) % n])))
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .steps
            .iter()
            .enumerate()
            .map(|(k, s)| match self.marks.get(&k) {
                Some(m) => format!("{}@{m}", s.letter()),
                None => s.letter().to_string(),
            })
            .collect();
        f.write_str(&toks.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::validate_typed;

    #[test]
    fn slope_words() {
        assert_eq!(slope_component(1, 0).unwrap().steps, vec![Step::U]);
        assert_eq!(slope_component(0, 1).unwrap().steps, vec![Step::R]);
        let c = slope_component(2, 3).unwrap();
        assert_eq!(c.homology(), (3, 2));
        assert!(c.is_reduced());
        let c = slope_component(-5, 2).unwrap();
        assert_eq!(c.homology(), (2, -5));
    }

    #[test]
    fn curve_structures_are_valid() {
        for p in -6..=6i64 {
            for q in 0..=6i64 {
                if gcd(p, q) != 1 {
                    continue;
                }
                let d =
                    typed_from_curve(&Curve::single(slope_component(p, q).unwrap()), "l").unwrap();
                assert!(validate_typed(&d).ok(), "slope {p}/{q}");
            }
        }
    }
}
