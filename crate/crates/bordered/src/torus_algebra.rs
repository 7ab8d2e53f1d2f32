//! The torus algebra: two idempotents and the six Reeb-chord elements
//! `r1 r2 r3 r12 r23 r123`, with the products `r1 r2 = r12`, `r2 r3 = r23`,
//! `r1 r23 = r12 r3 = r123` and every other product of chords zero.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Idempotent of a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Idem {
    I0,
    I1,
}

impl Idem {
    pub const ALL: [Idem; 2] = [Idem::I0, Idem::I1];

    pub fn basis(self) -> Basis {
        match self {
            Idem::I0 => Basis::I0,
            Idem::I1 => Basis::I1,
        }
    }

    pub fn other(self) -> Idem {
        match self {
            Idem::I0 => Idem::I1,
            Idem::I1 => Idem::I0,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Idem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Idem::I0 => "i0",
            Idem::I1 => "i1",
        })
    }
}

impl FromStr for Idem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i0" => Ok(Idem::I0),
            "i1" => Ok(Idem::I1),
            _ => Err(Error::InvalidInput(format!(
                "expected idempotent i0|i1, got `{s}`"
            ))),
        }
    }
}

/// One of the eight basis elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    I0,
    I1,
    R1,
    R2,
    R3,
    R12,
    R23,
    R123,
}

use Basis::*;

impl Basis {
    pub const ALL: [Basis; 8] = [I0, I1, R1, R2, R3, R12, R23, R123];
    pub const CHORDS: [Basis; 6] = [R1, R2, R3, R12, R23, R123];

    pub fn is_idempotent(self) -> bool {
        matches!(self, I0 | I1)
    }

    pub fn as_idem(self) -> Option<Idem> {
        match self {
            I0 => Some(Idem::I0),
            I1 => Some(Idem::I1),
            _ => None,
        }
    }

    /// Chords as intervals `[start, end]` of the boundary line 0..3.
    fn interval(self) -> Option<(u8, u8)> {
        match self {
            R1 => Some((0, 1)),
            R2 => Some((1, 2)),
            R3 => Some((2, 3)),
            R12 => Some((0, 2)),
            R23 => Some((1, 3)),
            R123 => Some((0, 3)),
            _ => None,
        }
    }

    fn from_interval(a: u8, b: u8) -> Option<Basis> {
        Basis::CHORDS
            .iter()
            .copied()
            .find(|c| c.interval() == Some((a, b)))
    }

    /// Left and right idempotents.
    pub fn idempotents(self) -> (Idem, Idem) {
        let parity = |k: u8| {
            if k.is_multiple_of(2) {
                Idem::I0
            } else {
                Idem::I1
            }
        };
        match self.interval() {
            Some((a, b)) => (parity(a), parity(b)),
            None => {
                let i = self.as_idem().expect("idempotent");
                (i, i)
            }
        }
    }

    pub fn left(self) -> Idem {
        self.idempotents().0
    }

    pub fn right(self) -> Idem {
        self.idempotents().1
    }

    /// The basis element `r_{a..b}` for a run of consecutive chord indices.
    pub fn chord_run(first: u8, last: u8) -> Option<Basis> {
        if first == 0 || last > 3 || first > last {
            return None;
        }
        Basis::from_interval(first - 1, last)
    }

    /// Decomposition into the primitive chords r1, r2, r3 (empty for idempotents).
    pub fn primitive_factors(self) -> Vec<Basis> {
        match self.interval() {
            Some((a, b)) => (a..b)
                .map(|k| Basis::from_interval(k, k + 1).unwrap())
                .collect(),
            None => Vec::new(),
        }
    }

    /// The anti-automorphism exchanging r1 and r3 (and i0 with i1).
    pub fn opposite(self) -> Basis {
        match self {
            I0 => I1,
            I1 => I0,
            R1 => R3,
            R3 => R1,
            R2 => R2,
            R12 => R23,
            R23 => R12,
            R123 => R123,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            I0 => "i0",
            I1 => "i1",
            R1 => "r1",
            R2 => "r2",
            R3 => "r3",
            R12 => "r12",
            R23 => "r23",
            R123 => "r123",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Basis::ALL
            .iter()
            .copied()
            .find(|b| b.token() == s)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown algebra element `{s}` (expected i0 i1 r1 r2 r3 r12 r23 r123)"
                ))
            })
    }
}

/// Product of basis elements, `None` when it vanishes.
pub fn mul_basis(a: Basis, b: Basis) -> Option<Basis> {
    match (a.as_idem(), b.as_idem()) {
        (Some(i), Some(j)) => (i == j).then_some(a),
        (Some(i), None) => (b.left() == i).then_some(b),
        (None, Some(j)) => (a.right() == j).then_some(a),
        (None, None) => {
            let (s, e) = a.interval().unwrap();
            let (s2, e2) = b.interval().unwrap();
            if e == s2 {
                Basis::from_interval(s, e2)
            } else {
                None
            }
        }
    }
}

/// An F2-linear combination of basis elements.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement(u8);

impl AlgebraElement {
    pub const ZERO: AlgebraElement = AlgebraElement(0);

    pub fn basis(b: Basis) -> Self {
        AlgebraElement(1 << b as u8)
    }

    pub fn one() -> Self {
        Self::basis(I0) + Self::basis(I1)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn terms(self) -> impl Iterator<Item = Basis> {
        Basis::ALL
            .into_iter()
            .filter(move |b| self.0 >> (*b as u8) & 1 == 1)
    }

    pub fn contains(self, b: Basis) -> bool {
        self.0 >> b as u8 & 1 == 1
    }
}

impl From<Basis> for AlgebraElement {
    fn from(b: Basis) -> Self {
        AlgebraElement::basis(b)
    }
}

// Addition over F2 is symmetric difference of basis sets.
impl std::ops::Add for AlgebraElement {
    type Output = AlgebraElement;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Self) -> Self {
        AlgebraElement(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for AlgebraElement {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<&str> = self.terms().map(Basis::token).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Bilinear product.
pub fn mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::ZERO;
    for x in a.terms() {
        for y in b.terms() {
            if let Some(p) = mul_basis(x, y) {
                out += p.into();
            }
        }
    }
    out
}

/// Left and right idempotents of a basis element.
pub fn idempotents(a: Basis) -> (Basis, Basis) {
    let (l, r) = a.idempotents();
    (l.basis(), r.basis())
}

/// Concatenates the strings and merges adjacent entries left to right whenever
/// their product is nonzero. Idempotent entries act as units and are dropped.
/// Fails when consecutive entries do not chain through a common idempotent.
pub fn regroup(strings: &[Vec<Basis>]) -> Result<Vec<Basis>> {
    let mut out: Vec<Basis> = Vec::new();
    let mut last_idem: Option<Idem> = None;
    for s in strings {
        for &b in s {
            if let Some(prev) = last_idem {
                if b.left() != prev {
                    return Err(Error::DegenerateInput(format!(
                        "`{b}` cannot follow an element ending at {prev}"
                    )));
                }
            }
            last_idem = Some(b.right());
            if b.is_idempotent() {
                continue;
            }
            match out.last().and_then(|&l| mul_basis(l, b)) {
                Some(p) => *out.last_mut().unwrap() = p,
                None => out.push(b),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_products() {
        assert_eq!(mul_basis(R1, R2), Some(R12));
        assert_eq!(mul_basis(R2, R1), None);
        assert_eq!(mul_basis(R3, R2), None);
        assert_eq!(mul_basis(I0, R1), Some(R1));
        assert_eq!(mul_basis(R1, I0), None);
        assert_eq!(mul_basis(R12, R3), Some(R123));
        assert_eq!(mul_basis(R1, R23), Some(R123));
    }

    #[test]
    fn idempotent_pairs() {
        assert_eq!(idempotents(R2), (I1, I0));
        assert_eq!(idempotents(R123), (I0, I1));
        assert_eq!(idempotents(I0), (I0, I0));
        assert_eq!(idempotents(R1), (I0, I1));
        assert_eq!(idempotents(R3), (I0, I1));
        assert_eq!(idempotents(R12), (I0, I0));
        assert_eq!(idempotents(R23), (I1, I1));
    }

    /// Independent oracle: the algebra as paths in the quiver i0 -r1,r3-> i1 -r2-> i0
    /// modulo r2 r1 = r3 r2 = 0, with elements encoded as words of primitive chords.
    fn oracle_mul(a: Basis, b: Basis) -> Option<Basis> {
        let word = |x: Basis| -> (Idem, Idem, Vec<u8>) {
            let (l, r) = x.idempotents();
            let w = match x {
                R1 => vec![1],
                R2 => vec![2],
                R3 => vec![3],
                R12 => vec![1, 2],
                R23 => vec![2, 3],
                R123 => vec![1, 2, 3],
                _ => vec![],
            };
            (l, r, w)
        };
        let (la, ra, wa) = word(a);
        let (lb, rb, wb) = word(b);
        if ra != lb {
            return None;
        }
        let w: Vec<u8> = wa.iter().chain(wb.iter()).copied().collect();
        if w.windows(2)
            .any(|p| p == [2, 1] || p == [3, 2] || p[0] == p[1] || p == [3, 1] || p == [1, 3])
        {
            return None;
        }
        Basis::ALL.iter().copied().find(|&c| {
            let (lc, rc, wc) = word(c);
            wc == w && lc == la && rc == rb
        })
    }

    #[test]
    fn table_matches_oracle() {
        for a in Basis::ALL {
            for b in Basis::ALL {
                assert_eq!(mul_basis(a, b), oracle_mul(a, b), "{a} * {b}");
            }
        }
    }

    #[test]
    fn associativity_exhaustive() {
        for a in Basis::ALL {
            for b in Basis::ALL {
                for c in Basis::ALL {
                    let (a, b, c) = (a.into(), b.into(), c.into());
                    assert_eq!(mul(mul(a, b), c), mul(a, mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn unit_and_closure() {
        let one = AlgebraElement::one();
        for b in Basis::ALL {
            let e = AlgebraElement::basis(b);
            assert_eq!(mul(one, e), e);
            assert_eq!(mul(e, one), e);
            for c in Basis::ALL {
                let p = mul(e, c.into());
                assert!(p.terms().count() <= 1);
            }
        }
    }

    #[test]
    fn regroup_examples() {
        assert_eq!(
            regroup(&[vec![R2, R1], vec![R2, R3]]).unwrap(),
            vec![R2, R123]
        );
        assert_eq!(regroup(&[vec![R1]]).unwrap(), vec![R1]);
        assert_eq!(regroup(&[vec![R1], vec![R2]]).unwrap(), vec![R12]);
        assert_eq!(
            regroup(&[vec![R3, R2], vec![R3, R2]]).unwrap(),
            vec![R3, R23, R2]
        );
        assert!(matches!(
            regroup(&[vec![R1], vec![R1]]),
            Err(Error::DegenerateInput(_))
        ));
    }

    /// Greedy merging produces the coarsest bracketing: no two adjacent output
    /// entries multiply, and the product of the output equals the product of the input.
    #[test]
    fn greedy_is_maximal() {
        let chords = Basis::CHORDS;
        let mut words: Vec<Vec<Basis>> = vec![vec![]];
        for _ in 0..5 {
            let mut next = Vec::new();
            for w in &words {
                for &c in &chords {
                    let mut w2 = w.clone();
                    w2.push(c);
                    if w2.windows(2).all(|p| p[0].right() == p[1].left()) {
                        next.push(w2);
                    }
                }
            }
            words.extend(next.iter().cloned());
            words = {
                let mut s: Vec<_> = words.into_iter().collect();
                s.sort();
                s.dedup();
                s
            };
        }
        for w in words.iter().filter(|w| !w.is_empty()) {
            let g = regroup(std::slice::from_ref(w)).unwrap();
            assert!(
                g.windows(2).all(|p| mul_basis(p[0], p[1]).is_none()),
                "{w:?} -> {g:?}"
            );
            let flat: Vec<Basis> = g.iter().flat_map(|b| b.primitive_factors()).collect();
            let orig: Vec<Basis> = w.iter().flat_map(|b| b.primitive_factors()).collect();
            assert_eq!(flat, orig);
        }
    }

    #[test]
    fn opposite_is_anti_automorphism() {
        for a in Basis::ALL {
            for b in Basis::ALL {
                let lhs = mul_basis(a, b).map(Basis::opposite);
                let rhs = mul_basis(b.opposite(), a.opposite());
                assert_eq!(lhs, rhs);
            }
        }
    }
}
