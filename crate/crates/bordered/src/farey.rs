//! Farey graph arithmetic and decorated paths.
//!
//! Slopes live on the circle of extended rationals. "Clockwise" from a vertex
//! means increasing value, wrapping through ∞; paths from ∞ therefore list
//! increasing rationals.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{PrimInt, Signed};

use crate::error::{Error, Result};

/// Integer types usable as slope coordinates.
pub trait SlopeInt: PrimInt + Integer + Signed + fmt::Display + FromStr + fmt::Debug {}
impl<T: PrimInt + Integer + Signed + fmt::Display + FromStr + fmt::Debug> SlopeInt for T {}

/// Reduced fraction `p/q` with `q >= 0`; ∞ is `1/0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlopeOf<T> {
    p: T,
    q: T,
}

impl<T: SlopeInt> SlopeOf<T> {
    pub fn new(p: T, q: T) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::InvalidInput("0/0 is not a slope".into()));
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        Ok(SlopeOf { p, q })
    }

    pub fn infinity() -> Self {
        SlopeOf {
            p: T::one(),
            q: T::zero(),
        }
    }

    pub fn integer(n: T) -> Self {
        SlopeOf { p: n, q: T::one() }
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn q(&self) -> T {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q.is_zero()
    }

    /// Position along the clockwise circle starting just after ∞.
    fn before(&self, other: &Self) -> bool {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => false,
            (true, false) => true,
            (false, true) => false,
            (false, false) => self.p * other.q < other.p * self.q,
        }
    }
}

impl<T: SlopeInt> fmt::Display for SlopeOf<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else if self.q.is_one() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl<T: SlopeInt> FromStr for SlopeOf<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "∞" | "-inf" | "-∞" | "1/0" | "-1/0") {
            return Ok(Self::infinity());
        }
        let bad = || {
            Error::InvalidInput(format!(
                "`{s}` is not a slope; expected p/q, an integer, or inf"
            ))
        };
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (
                a.parse::<T>().map_err(|_| bad())?,
                b.parse::<T>().map_err(|_| bad())?,
            ),
            None => (s.parse::<T>().map_err(|_| bad())?, T::one()),
        };
        Self::new(a, b)
    }
}

/// Mediant of the reduced representatives.
pub fn farey_sum<T: SlopeInt>(a: SlopeOf<T>, b: SlopeOf<T>) -> SlopeOf<T> {
    SlopeOf::new(a.p + b.p, a.q + b.q)
        .expect("mediant of reduced fractions with q >= 0 is never 0/0 unless both are inf")
}

/// `a/b . c/d = ad - bc`.
pub fn farey_prod<T: SlopeInt>(a: SlopeOf<T>, b: SlopeOf<T>) -> T {
    a.p * b.q - a.q * b.p
}

pub fn adjacent<T: SlopeInt>(a: SlopeOf<T>, b: SlopeOf<T>) -> bool {
    farey_prod(a, b).abs().is_one()
}

/// The neighbour `(q/p)^c`: largest value among solutions of the `+1` determinant equation.
pub fn neighbour_c<T: SlopeInt>(s: SlopeOf<T>) -> Option<SlopeOf<T>> {
    neighbour(s, T::one())
}

/// The neighbour `(q/p)^a`: smallest value among solutions of the `-1` determinant equation.
pub fn neighbour_a<T: SlopeInt>(s: SlopeOf<T>) -> Option<SlopeOf<T>> {
    neighbour(s, -T::one())
}

fn neighbour<T: SlopeInt>(s: SlopeOf<T>, sign: T) -> Option<SlopeOf<T>> {
    if s.is_infinite() {
        return None;
    }
    // Solve den*num' - den'*num = sign with den' the least positive solution.
    let (num, den) = (s.p, s.q);
    let e = den.extended_gcd(&num);
    // den*x + num*y = 1, so num' = sign*x and den' = -sign*y work.
    let (x, y) = (e.x * sign, -(e.y * sign));
    let dprime = (y - T::one()).mod_floor(&den) + T::one();
    let k = (dprime - y) / den;
    SlopeOf::new(x + k * num, dprime).ok()
}

/// Clockwise minimal path from `r` to `s`: at each vertex jump to the neighbour
/// farthest along the arc that does not pass `s`.
pub fn minimal_path<T: SlopeInt>(r: SlopeOf<T>, s: SlopeOf<T>) -> Result<Vec<SlopeOf<T>>> {
    if r == s {
        return Err(Error::InvalidInput("endpoints coincide".into()));
    }
    let mut path = vec![r];
    let mut v = r;
    while v != s {
        // A = [[p, a], [q, b]] with pb - qa = 1 sends inf to v.
        let e = v.p.extended_gcd(&v.q);
        let (p, q, b, a) = (v.p, v.q, e.x, -e.y);
        let num = b * s.p - a * s.q;
        let den = p * s.q - q * s.p;
        let n = if den.is_negative() {
            (-num).div_floor(&-den)
        } else {
            num.div_floor(&den)
        };
        v = SlopeOf::new(p * n + a, q * n + b)?;
        path.push(v);
    }
    Ok(path)
}

/// Whether `|s_i . s_j| = 1` exactly for neighbouring indices.
pub fn is_minimal<T: SlopeInt>(v: &[SlopeOf<T>]) -> bool {
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| adjacent(v[i], v[j]) == (j == i + 1)))
}

/// Edge decoration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
    Circ,
}

impl Sign {
    pub fn token(self) -> &'static str {
        match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
            Sign::Circ => "o",
        }
    }
}

/// Path with one decoration per edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedPath<T> {
    pub vertices: Vec<SlopeOf<T>>,
    pub signs: Vec<Sign>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tightness {
    UniversallyTight,
    VirtuallyOvertwisted,
    Overtwisted,
    Indeterminate,
}

impl fmt::Display for Tightness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tightness::UniversallyTight => "universally_tight",
            Tightness::VirtuallyOvertwisted => "virtually_overtwisted",
            Tightness::Overtwisted => "overtwisted",
            Tightness::Indeterminate => "indeterminate",
        })
    }
}

impl<T: SlopeInt> DecoratedPath<T> {
    pub fn new(vertices: Vec<SlopeOf<T>>, signs: Vec<Sign>) -> Result<Self> {
        if vertices.len() != signs.len() + 1 {
            return Err(Error::InvalidInput(format!(
                "{} vertices need {} signs",
                vertices.len(),
                vertices.len().saturating_sub(1)
            )));
        }
        for w in vertices.windows(2) {
            if !adjacent(w[0], w[1]) {
                return Err(Error::InvalidInput(format!(
                    "{} and {} are not joined by a Farey edge",
                    w[0], w[1]
                )));
            }
        }
        Ok(DecoratedPath { vertices, signs })
    }

    /// Whether the vertices move clockwise without wrapping past the start.
    pub fn is_clockwise(&self) -> bool {
        self.vertices.windows(2).all(|w| w[0].before(&w[1]))
            || (self.vertices.len() > 1
                && self.vertices[0].is_infinite()
                && self.vertices[1..].windows(2).all(|w| w[0].before(&w[1])))
    }

    pub fn is_minimal(&self) -> bool {
        is_minimal(&self.vertices)
    }

    /// Signed edges `i` whose successor edge `i + 1` continues the same
    /// continued fraction block.
    fn continues_block(&self, i: usize) -> bool {
        let v = &self.vertices;
        self.signs[i] != Sign::Circ
            && self.signs[i + 1] != Sign::Circ
            && farey_prod(v[i], v[i + 2]).abs() == T::one() + T::one()
    }

    /// Maximal continued fraction blocks as edge index ranges.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.signs.len() {
            if self.signs[i] == Sign::Circ {
                i += 1;
                continue;
            }
            let start = i;
            while i + 1 < self.signs.len() && self.continues_block(i) {
                i += 1;
            }
            out.push(start..i + 1);
            i += 1;
        }
        out
    }

    /// One sign-consistent shortening, if any: the first start vertex, and for
    /// it the farthest vertex it is joined to.
    pub fn shorten_step(&self) -> Option<(usize, usize, DecoratedPath<T>)> {
        let v = &self.vertices;
        for i in 0..v.len() {
            for j in (i + 2..v.len()).rev() {
                if !adjacent(v[i], v[j]) {
                    continue;
                }
                let span = &self.signs[i..j];
                let signed: Vec<Sign> = span.iter().copied().filter(|s| *s != Sign::Circ).collect();
                let uniform = signed.windows(2).all(|w| w[0] == w[1]);
                if !uniform {
                    continue;
                }
                let merged = if span.contains(&Sign::Circ) {
                    Sign::Circ
                } else {
                    signed[0]
                };
                let mut vertices = v[..=i].to_vec();
                vertices.extend_from_slice(&v[j..]);
                let mut signs = self.signs[..i].to_vec();
                signs.push(merged);
                signs.extend_from_slice(&self.signs[j..]);
                return Some((i, j, DecoratedPath { vertices, signs }));
            }
        }
        None
    }

    /// Item-4 style obstruction: two adjacent opposite signed edges whose outer
    /// vertices are joined.
    pub fn has_opposite_shortenable_pair(&self) -> bool {
        let v = &self.vertices;
        (1..v.len().saturating_sub(1)).any(|i| {
            let (a, b) = (self.signs[i - 1], self.signs[i]);
            a != Sign::Circ && b != Sign::Circ && a != b && adjacent(v[i - 1], v[i + 1])
        })
    }

    fn verdict(&self) -> Tightness {
        if self.is_minimal() {
            let signed: Vec<Sign> = self
                .signs
                .iter()
                .copied()
                .filter(|s| *s != Sign::Circ)
                .collect();
            return if signed.windows(2).all(|w| w[0] == w[1]) {
                Tightness::UniversallyTight
            } else {
                Tightness::VirtuallyOvertwisted
            };
        }
        if self.has_opposite_shortenable_pair() {
            return Tightness::Overtwisted;
        }
        match self.shorten_step() {
            Some((_, _, p)) => p.verdict(),
            None => Tightness::Indeterminate,
        }
    }
}

/// Applies one sign-consistent shortening; unchanged if none is available.
pub fn shorten<T: SlopeInt>(p: &DecoratedPath<T>) -> DecoratedPath<T> {
    p.shorten_step().map(|x| x.2).unwrap_or_else(|| p.clone())
}

/// Classifies a solid-torus path: it must start at ∞ with a single `o` edge first.
pub fn classify<T: SlopeInt>(p: &DecoratedPath<T>) -> Result<Tightness> {
    if p.vertices.first().is_none_or(|v| !v.is_infinite()) {
        return Err(Error::BadForm("path must start at inf".into()));
    }
    if p.signs.first() != Some(&Sign::Circ) || p.signs[1..].contains(&Sign::Circ) {
        return Err(Error::BadForm("only the first edge carries `o`".into()));
    }
    Ok(p.verdict())
}

/// Classifies a path on `T^2 x I`: every edge signed.
pub fn classify_slice<T: SlopeInt>(p: &DecoratedPath<T>) -> Result<Tightness> {
    if p.signs.contains(&Sign::Circ) {
        return Err(Error::BadForm("slices carry only + and - edges".into()));
    }
    Ok(p.verdict())
}

/// Sorts signs inside every continued fraction block, `-` first.
pub fn shuffle_canonical<T: SlopeInt>(p: &DecoratedPath<T>) -> DecoratedPath<T> {
    let mut out = p.clone();
    for r in p.blocks() {
        out.signs[r].sort();
    }
    out
}

/// Number of tight structures on the solid torus with boundary slope `1/n`.
pub fn count_tight_solid_torus<T: SlopeInt>(s: SlopeOf<T>) -> Result<T> {
    if !s.p.abs().is_one() || s.q.is_zero() {
        return Err(Error::InvalidInput(format!("{s} is not of the form 1/n")));
    }
    let n = s.q * s.p;
    Ok(if n > T::one() {
        T::one() + T::one()
    } else if n.is_one() {
        T::one()
    } else {
        n.abs()
    })
}

/// All decorations of the minimal path from ∞ to `s`, solid-torus style.
pub fn solid_torus_decorations<T: SlopeInt>(s: SlopeOf<T>) -> Result<Vec<DecoratedPath<T>>> {
    let v = minimal_path(SlopeOf::infinity(), s)?;
    let k = v.len() - 2;
    let mut out = Vec::new();
    for mask in 0..(1u64 << k) {
        let mut signs = vec![Sign::Circ];
        signs.extend((0..k).map(|b| {
            if mask >> b & 1 == 1 {
                Sign::Plus
            } else {
                Sign::Minus
            }
        }));
        out.push(DecoratedPath {
            vertices: v.clone(),
            signs,
        });
    }
    Ok(out)
}

impl<T: SlopeInt> fmt::Display for DecoratedPath<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices[0])?;
        for (s, v) in self.signs.iter().zip(&self.vertices[1..]) {
            write!(f, " {} {}", s.token(), v)?;
        }
        Ok(())
    }
}

impl<T: SlopeInt> FromStr for DecoratedPath<T> {
    type Err = Error;

    /// Grammar: `vertex (sign vertex)*` with signs `o`, `+`, `-`.
    fn from_str(s: &str) -> Result<Self> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks.len().is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "`{s}`: expected vertex (sign vertex)*"
            )));
        }
        let mut vertices = vec![toks[0].parse()?];
        let mut signs = Vec::new();
        for pair in toks[1..].chunks(2) {
            signs.push(match pair[0] {
                "o" | "∘" => Sign::Circ,
                "+" => Sign::Plus,
                "-" => Sign::Minus,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "`{other}` is not a sign; expected o, + or -"
                    )))
                }
            });
            vertices.push(pair[1].parse()?);
        }
        DecoratedPath::new(vertices, signs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = SlopeOf<i64>;

    fn s(x: &str) -> S {
        x.parse().unwrap()
    }

    #[test]
    fn sums_and_products() {
        assert_eq!(farey_sum(s("0"), s("inf")), s("1"));
        assert_eq!(farey_sum(s("1"), s("1")), s("1"));
        assert_eq!(farey_sum(s("-1"), s("-1/2")), s("-2/3"));
        assert_eq!(farey_prod(s("inf"), s("0")), 1);
        assert_eq!(farey_prod(s("1/2"), s("2/3")), -1);
        assert_eq!(farey_prod(s("5/7"), s("5/7")), 0);
        assert_eq!(s("-1/0"), S::infinity());
        assert_eq!(s("2/-4").to_string(), "-1/2");
    }

    #[test]
    fn neighbours() {
        assert_eq!(neighbour_c(s("1/3")), Some(s("1/2")));
        assert_eq!(neighbour_a(s("1/3")), Some(s("0")));
        assert_eq!(neighbour_c(s("4")), Some(s("5")));
        assert_eq!(neighbour_a(s("4")), Some(s("3")));
        assert_eq!(neighbour_c(s("inf")), None);
        let (c, a) = (
            neighbour_c(s("-3/5")).unwrap(),
            neighbour_a(s("-3/5")).unwrap(),
        );
        assert!(adjacent(c, a));
    }

    #[test]
    fn paths() {
        let p = minimal_path(s("inf"), s("-1/4")).unwrap();
        assert_eq!(p, vec![s("inf"), s("-1"), s("-1/2"), s("-1/3"), s("-1/4")]);
        assert_eq!(
            minimal_path(s("inf"), s("1/3")).unwrap(),
            vec![s("inf"), s("0"), s("1/3")]
        );
        assert_eq!(
            minimal_path(s("inf"), s("7")).unwrap(),
            vec![s("inf"), s("7")]
        );
    }

    #[test]
    fn shortening_and_classes() {
        let p: DecoratedPath<i64> = "inf o 0 + 1/2 + 1".parse().unwrap();
        assert_eq!(shorten(&p).to_string(), "inf o 1");
        let p: DecoratedPath<i64> = "0 + 1 + 2".parse().unwrap();
        assert_eq!(shorten(&p), p);
        let ut: DecoratedPath<i64> = "inf o -1 - -1/2 - -1/3".parse().unwrap();
        assert_eq!(classify(&ut).unwrap(), Tightness::UniversallyTight);
        let vo: DecoratedPath<i64> = "inf o -1 + -1/2 - -1/3".parse().unwrap();
        assert_eq!(classify(&vo).unwrap(), Tightness::VirtuallyOvertwisted);
        let ot: DecoratedPath<i64> = "inf o 0 + 1/2 - 1".parse().unwrap();
        assert_eq!(classify(&ot).unwrap(), Tightness::Overtwisted);
        assert!(matches!(
            classify(&"0 + 1".parse::<DecoratedPath<i64>>().unwrap()),
            Err(Error::BadForm(_))
        ));
    }

    #[test]
    fn shuffles_and_counts() {
        let p: DecoratedPath<i64> = "inf o -1 + -1/2 - -1/3".parse().unwrap();
        assert_eq!(shuffle_canonical(&p).to_string(), "inf o -1 - -1/2 + -1/3");
        assert_eq!(count_tight_solid_torus(s("1/3")).unwrap(), 2);
        assert_eq!(count_tight_solid_torus(s("1")).unwrap(), 1);
        assert_eq!(count_tight_solid_torus(s("-1/4")).unwrap(), 4);
        assert!(count_tight_solid_torus(s("2/3")).is_err());
    }
}
