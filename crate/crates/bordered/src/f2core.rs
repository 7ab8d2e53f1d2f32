//! Linear algebra over the two-element field: sparse vectors, ranks, chain
//! complexes with named generators, homology, and Gaussian-elimination
//! cancellation that carries labelled cycles along.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A vector over F2, stored as the set of basis indices with coefficient one.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    support: BTreeSet<usize>,
}

impl F2Vector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(i: usize) -> Self {
        let mut v = Self::new();
        v.support.insert(i);
        v
    }

    /// Builds a vector from indices, reducing repeated entries mod 2.
    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut v = Self::new();
        for i in it {
            v.toggle(i);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.support.contains(&i)
    }

    pub fn toggle(&mut self, i: usize) {
        if !self.support.remove(&i) {
            self.support.insert(i);
        }
    }

    pub fn add_assign(&mut self, other: &F2Vector) {
        for &i in &other.support {
            self.toggle(i);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.support.iter().copied()
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn max_index(&self) -> Option<usize> {
        self.support.iter().next_back().copied()
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.support.iter()).finish()
    }
}

impl FromIterator<usize> for F2Vector {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_indices(iter)
    }
}

/// Sum of two vectors: the symmetric difference of their supports.
pub fn add(u: &F2Vector, v: &F2Vector) -> F2Vector {
    F2Vector {
        support: u
            .support
            .symmetric_difference(&v.support)
            .copied()
            .collect(),
    }
}

/// Dense row-echelon accumulator used for rank and span-membership queries.
#[derive(Clone, Debug, Default)]
struct Echelon {
    words: usize,
    /// pivot column -> reduced row
    rows: BTreeMap<usize, Vec<u64>>,
}

impl Echelon {
    fn new(width: usize) -> Self {
        Echelon {
            words: width / 64 + 1,
            rows: BTreeMap::new(),
        }
    }

    fn dense(&self, v: &F2Vector) -> Vec<u64> {
        let mut w = vec![0u64; self.words];
        for i in v.iter() {
            w[i / 64] ^= 1 << (i % 64);
        }
        w
    }

    fn leading(w: &[u64]) -> Option<usize> {
        w.iter()
            .enumerate()
            .find(|(_, x)| **x != 0)
            .map(|(k, x)| k * 64 + x.trailing_zeros() as usize)
    }

    fn reduce(&self, mut w: Vec<u64>) -> Vec<u64> {
        while let Some(p) = Self::leading(&w) {
            match self.rows.get(&p) {
                Some(r) => {
                    for (a, b) in w.iter_mut().zip(r) {
                        *a ^= b;
                    }
                }
                None => break,
            }
        }
        w
    }

    /// Inserts a vector; returns true when it enlarged the span.
    fn insert(&mut self, v: &F2Vector) -> bool {
        let w = self.reduce(self.dense(v));
        match Self::leading(&w) {
            Some(p) => {
                self.rows.insert(p, w);
                true
            }
            None => false,
        }
    }

    fn contains(&self, v: &F2Vector) -> bool {
        Self::leading(&self.reduce(self.dense(v))).is_none()
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn width_of(rows: &[F2Vector]) -> usize {
    rows.iter()
        .filter_map(F2Vector::max_index)
        .max()
        .map_or(0, |m| m + 1)
}

/// Row rank over F2 by Gaussian elimination.
pub fn rank(rows: &[F2Vector]) -> usize {
    let mut e = Echelon::new(width_of(rows));
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Finite chain complex over F2 with string-named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    names: Vec<String>,
    diff: Vec<F2Vector>,
    grading: Vec<Option<i64>>,
    labels: BTreeMap<String, F2Vector>,
}

impl ChainComplex {
    /// Builds a complex; `diff[i]` is the boundary of generator `i`.
    pub fn new(names: Vec<String>, diff: Vec<F2Vector>) -> Result<Self> {
        if names.len() != diff.len() {
            return Err(Error::Structure(format!(
                "{} names but {} differentials",
                names.len(),
                diff.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::Structure(format!("duplicate generator `{n}`")));
            }
        }
        for d in &diff {
            if let Some(m) = d.max_index() {
                if m >= names.len() {
                    return Err(Error::UnknownGenerator(format!("#{m}")));
                }
            }
        }
        let grading = vec![None; names.len()];
        Ok(ChainComplex {
            names,
            diff,
            grading,
            labels: BTreeMap::new(),
        })
    }

    /// Builds a complex from `(generator, boundary generators)` by name.
    pub fn from_named(gens: &[&str], arrows: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let mut diff = vec![F2Vector::new(); names.len()];
        for (a, b) in arrows {
            let i = gens
                .iter()
                .position(|g| g == a)
                .ok_or_else(|| Error::UnknownGenerator(a.to_string()))?;
            let j = gens
                .iter()
                .position(|g| g == b)
                .ok_or_else(|| Error::UnknownGenerator(b.to_string()))?;
            diff[i].toggle(j);
        }
        Self::new(names, diff)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn differential(&self, i: usize) -> &F2Vector {
        &self.diff[i]
    }

    pub fn grading(&self, i: usize) -> Option<i64> {
        self.grading[i]
    }

    pub fn set_grading(&mut self, i: usize, g: Option<i64>) {
        self.grading[i] = g;
    }

    pub fn labels(&self) -> &BTreeMap<String, F2Vector> {
        &self.labels
    }

    /// Attaches a name to a chain (typically a contact class).
    pub fn set_label(&mut self, name: &str, z: F2Vector) -> Result<()> {
        self.check_support(&z)?;
        self.labels.insert(name.to_string(), z);
        Ok(())
    }

    /// Vector with the named generators in its support.
    pub fn vector(&self, names: &[&str]) -> Result<F2Vector> {
        names
            .iter()
            .map(|n| {
                self.index_of(n)
                    .ok_or_else(|| Error::UnknownGenerator(n.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(F2Vector::from_indices)
    }

    fn check_support(&self, z: &F2Vector) -> Result<()> {
        match z.max_index() {
            Some(m) if m >= self.len() => Err(Error::UnknownGenerator(format!("#{m}"))),
            _ => Ok(()),
        }
    }

    /// Boundary of an arbitrary chain.
    pub fn boundary(&self, z: &F2Vector) -> F2Vector {
        let mut out = F2Vector::new();
        for i in z.iter() {
            out.add_assign(&self.diff[i]);
        }
        out
    }

    /// Generators on which the square of the differential is nonzero.
    pub fn d_squared_violations(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !self.boundary(&self.diff[i]).is_zero())
            .collect()
    }

    pub fn check(&self) -> Result<()> {
        let bad = self.d_squared_violations();
        if bad.is_empty() {
            Ok(())
        } else {
            let names: Vec<&str> = bad.iter().map(|&i| self.names[i].as_str()).collect();
            Err(Error::Structure(format!(
                "d^2 != 0 on {}",
                names.join(", ")
            )))
        }
    }

    /// Rank of the differential as a linear map.
    pub fn differential_rank(&self) -> usize {
        rank(&self.diff)
    }

    /// dim ker d - dim im d.
    pub fn homology_rank(&self) -> Result<usize> {
        self.check()?;
        let r = self.differential_rank();
        Ok(self.len() - 2 * r)
    }

    /// True iff `z` is a cycle that is not a boundary.
    pub fn is_nonvanishing_cycle(&self, z: &F2Vector) -> Result<bool> {
        self.check_support(z)?;
        if !self.boundary(z).is_zero() {
            return Ok(false);
        }
        let mut e = Echelon::new(self.len());
        for d in &self.diff {
            e.insert(d);
        }
        Ok(!e.contains(z))
    }

    /// True iff `z` lies in the image of the differential.
    pub fn is_boundary(&self, z: &F2Vector) -> Result<bool> {
        self.check_support(z)?;
        let mut e = Echelon::new(self.len());
        for d in &self.diff {
            e.insert(d);
        }
        Ok(e.contains(z))
    }

    /// Cancels the pair `x -> y` (requires the coefficient of `y` in `dx` to be one).
    /// Named labels are pushed through the elimination map.
    pub fn cancel(&self, x: usize, y: usize) -> Result<(ChainComplex, Cancellation)> {
        if x >= self.len() || y >= self.len() {
            return Err(Error::UnknownGenerator(format!("#{}", x.max(y))));
        }
        if !self.diff[x].contains(y) {
            return Err(Error::Precondition(format!(
                "<d {}, {}> = 0",
                self.names[x], self.names[y]
            )));
        }
        let mut rest = self.diff[x].clone();
        rest.toggle(y);
        rest.support.remove(&x);
        let mut map = vec![None; self.len()];
        let mut names = Vec::new();
        let mut grading = Vec::new();
        for (i, slot) in map.iter_mut().enumerate() {
            if i != x && i != y {
                *slot = Some(names.len());
                names.push(self.names[i].clone());
                grading.push(self.grading[i]);
            }
        }
        let c = Cancellation { map, x, y, rest };
        let mut diff = Vec::with_capacity(names.len());
        for i in 0..self.len() {
            if i != x && i != y {
                diff.push(c.apply(&self.diff[i]));
            }
        }
        let labels = self
            .labels
            .iter()
            .map(|(k, v)| (k.clone(), c.apply(v)))
            .collect();
        Ok((
            ChainComplex {
                names,
                diff,
                grading,
                labels,
            },
            c,
        ))
    }

    pub fn cancel_named(&self, x: &str, y: &str) -> Result<(ChainComplex, Cancellation)> {
        let i = self
            .index_of(x)
            .ok_or_else(|| Error::UnknownGenerator(x.into()))?;
        let j = self
            .index_of(y)
            .ok_or_else(|| Error::UnknownGenerator(y.into()))?;
        self.cancel(i, j)
    }

    /// Cancels until the differential vanishes, choosing the lexicographically
    /// first available pair each time.
    pub fn reduce(&self) -> Result<(ChainComplex, Vec<Cancellation>)> {
        self.check()?;
        let mut cur = self.clone();
        let mut steps = Vec::new();
        loop {
            let pair =
                (0..cur.len()).find_map(|x| cur.diff[x].iter().find(|&y| y != x).map(|y| (x, y)));
            match pair {
                Some((x, y)) => {
                    let (next, c) = cur.cancel(x, y)?;
                    cur = next;
                    steps.push(c);
                }
                None => return Ok((cur, steps)),
            }
        }
    }
}

/// Record of one elimination step; pushes chains of the old complex forward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cancellation {
    map: Vec<Option<usize>>,
    x: usize,
    y: usize,
    rest: F2Vector,
}

impl Cancellation {
    /// Image of an old chain under the elimination chain map.
    pub fn apply(&self, z: &F2Vector) -> F2Vector {
        let mut old = z.clone();
        if old.contains(self.y) {
            old.toggle(self.y);
            old.add_assign(&self.rest);
        }
        old.support.remove(&self.x);
        old.support.remove(&self.y);
        old.iter().filter_map(|i| self.map[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(ix: &[usize]) -> F2Vector {
        F2Vector::from_indices(ix.iter().copied())
    }

    #[test]
    fn add_is_symmetric_difference() {
        assert_eq!(add(&v(&[0, 1]), &v(&[1, 2])), v(&[0, 2]));
        assert_eq!(add(&v(&[0]), &v(&[0])), v(&[]));
        assert_eq!(add(&v(&[]), &v(&[5])), v(&[5]));
    }

    /// Brute-force rank: the log2 of the number of distinct row combinations.
    fn brute_rank(rows: &[F2Vector]) -> usize {
        let mut seen = BTreeSet::new();
        for mask in 0u32..(1 << rows.len()) {
            let mut acc = F2Vector::new();
            for (k, r) in rows.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    acc.add_assign(r);
                }
            }
            seen.insert(acc);
        }
        seen.len().trailing_zeros() as usize
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[v(&[0]), v(&[1]), v(&[2])]), 3);
        assert_eq!(rank(&[v(&[]), v(&[]), v(&[])]), 0);
        let rows = [v(&[0, 1]), v(&[1, 2]), v(&[0, 2])];
        assert_eq!(brute_rank(&rows), 2);
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn homology_examples() {
        let c = ChainComplex::from_named(&["x"], &[]).unwrap();
        assert_eq!(c.homology_rank().unwrap(), 1);
        let c = ChainComplex::from_named(&["x", "y"], &[("x", "y")]).unwrap();
        assert_eq!(c.homology_rank().unwrap(), 0);
        let c = ChainComplex::from_named(&["x", "y", "z"], &[("x", "y"), ("x", "z")]).unwrap();
        assert_eq!(c.homology_rank().unwrap(), 1);
    }

    #[test]
    fn homology_rejects_nonzero_square() {
        let c = ChainComplex::from_named(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(matches!(c.homology_rank(), Err(Error::Structure(_))));
    }

    #[test]
    fn nonvanishing_examples() {
        let c = ChainComplex::from_named(&["x", "z"], &[("x", "z")]).unwrap();
        assert!(!c.is_nonvanishing_cycle(&c.vector(&["z"]).unwrap()).unwrap());
        let c = ChainComplex::from_named(&["z", "w"], &[]).unwrap();
        assert!(c.is_nonvanishing_cycle(&c.vector(&["z"]).unwrap()).unwrap());
        // dx = c + y, nothing else: c survives.
        let c = ChainComplex::from_named(&["x", "c", "y"], &[("x", "c"), ("x", "y")]).unwrap();
        assert!(c.is_nonvanishing_cycle(&c.vector(&["c"]).unwrap()).unwrap());
        assert!(c.is_nonvanishing_cycle(&c.vector(&["y"]).unwrap()).unwrap());
        assert!(!c
            .is_nonvanishing_cycle(&c.vector(&["c", "y"]).unwrap())
            .unwrap());
        assert!(matches!(
            c.is_nonvanishing_cycle(&v(&[7])),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn cancel_examples() {
        let c = ChainComplex::from_named(&["x", "y"], &[("x", "y")]).unwrap();
        let (r, _) = c.cancel(0, 1).unwrap();
        assert!(r.is_empty());

        let c =
            ChainComplex::from_named(&["x", "y", "z", "w"], &[("x", "y"), ("x", "z"), ("w", "y")])
                .unwrap();
        let (r, _) = c.cancel_named("x", "y").unwrap();
        assert_eq!(r.names(), &["z".to_string(), "w".to_string()]);
        let w = r.index_of("w").unwrap();
        assert_eq!(r.differential(w), &r.vector(&["z"]).unwrap());
        assert_eq!(r.homology_rank().unwrap(), c.homology_rank().unwrap());

        assert!(matches!(
            c.cancel_named("y", "x"),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn labels_follow_cancellation() {
        let mut c = ChainComplex::from_named(&["x", "c", "y"], &[("x", "c"), ("x", "y")]).unwrap();
        c.set_label("cx", c.vector(&["c"]).unwrap()).unwrap();
        let (r, _) = c.cancel_named("x", "c").unwrap();
        let z = r.labels()["cx"].clone();
        assert_eq!(z, r.vector(&["y"]).unwrap());
        assert!(r.is_nonvanishing_cycle(&z).unwrap());
    }

    /// Random complexes with d^2 = 0 built as d = P D P^{-1} style compositions
    /// are awkward; instead generate random upper-triangular "two-step" complexes
    /// C2 -> C1 -> C0 with d1 d2 = 0 forced by construction.
    fn complex_strategy() -> impl Strategy<Value = ChainComplex> {
        (1usize..5, 1usize..5, 1usize..5, any::<u64>()).prop_map(|(a, b, c, seed)| {
            let mut s = seed;
            let mut bit = || {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                s & 1 == 1
            };
            // d1: C1 -> C0 random; d2: C2 -> C1 chosen inside ker d1.
            let n = a + b + c;
            let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
            let mut diff = vec![F2Vector::new(); n];
            for i in 0..b {
                for j in 0..c {
                    if bit() {
                        diff[a + i].toggle(a + b + j);
                    }
                }
            }
            // kernel vectors of d1 by brute force
            let mut kernel = Vec::new();
            for mask in 1u32..(1 << b) {
                let mut img = F2Vector::new();
                let mut src = F2Vector::new();
                for i in 0..b {
                    if mask >> i & 1 == 1 {
                        img.add_assign(&diff[a + i]);
                        src.toggle(a + i);
                    }
                }
                if img.is_zero() {
                    kernel.push(src);
                }
            }
            for slot in diff.iter_mut().take(a) {
                let mut acc = F2Vector::new();
                for k in &kernel {
                    if bit() {
                        acc.add_assign(k);
                    }
                }
                *slot = acc;
            }
            ChainComplex::new(names, diff).unwrap()
        })
    }

    proptest! {
        #[test]
        fn cancel_preserves_homology(c in complex_strategy()) {
            let h = c.homology_rank().unwrap();
            for x in 0..c.len() {
                for y in c.differential(x).iter() {
                    let (r, _) = c.cancel(x, y).unwrap();
                    prop_assert_eq!(r.homology_rank().unwrap(), h);
                }
            }
            let (red, _) = c.reduce().unwrap();
            prop_assert_eq!(red.len(), h);
            prop_assert_eq!(red.differential_rank(), 0);
        }

        #[test]
        fn nonvanishing_survives_cancellation(c in complex_strategy(), pick in any::<u32>()) {
            let cycles: Vec<F2Vector> = (0u32..(1 << c.len().min(12)))
                .map(|m| F2Vector::from_indices((0..c.len()).filter(|i| m >> i & 1 == 1)))
                .filter(|z| c.boundary(z).is_zero())
                .collect();
            let z = &cycles[pick as usize % cycles.len()];
            let before = c.is_nonvanishing_cycle(z).unwrap();
            let (red, steps) = c.reduce().unwrap();
            let mut pushed = z.clone();
            for s in &steps {
                pushed = s.apply(&pushed);
            }
            prop_assert_eq!(red.is_nonvanishing_cycle(&pushed).unwrap(), before);
        }
    }
}
