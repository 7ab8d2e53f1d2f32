//! Lifts to the marked cylinder and the (τ, ε) read-off.
//!
//! The input is a type-A curve avatar: vertical-edge crossings are the
//! meridional generators and become midline hits, horizontal-edge crossings move
//! the lift one level up or down. The picture is the point reflection of the
//! square, which puts positive-genus staircases at positive heights.

use std::fmt;

use super::{Component, Curve, Step};
use crate::error::{Error, Result};

/// Crossing of the midline by a lifted curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MidlineHit {
    pub height: i64,
    pub rightward: bool,
    pub mark: Option<String>,
}

/// A closed component lifted to the cylinder, oriented to run rightward overall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedCurve {
    /// Hits in traversal order.
    pub hits: Vec<MidlineHit>,
    /// Picture steps in traversal order, starting at the first hit.
    pub steps: Vec<Step>,
    /// Height of the lift just before each picture step.
    pub levels: Vec<i64>,
}

/// Maps a type-A avatar step to the cylinder picture.
pub fn picture(s: Step) -> Step {
    s.inverse()
}

/// Lifts one component; fails unless it wraps once around the cylinder and closes up.
pub fn lift(c: &Component) -> Result<LiftedCurve> {
    let n = c.steps.len();
    let mut seq: Vec<(Step, Option<String>)> = (0..n)
        .map(|k| (picture(c.steps[k]), c.marks.get(&k).cloned()))
        .collect();
    let (h, v) = seq
        .iter()
        .fold((0, 0), |(x, y), (s, _)| (x + s.delta().0, y + s.delta().1));
    if h.abs() != 1 || v != 0 {
        return Err(Error::NotDistinguished(format!(
            "lift has horizontal winding {h} and vertical drift {v}; need 1 and 0"
        )));
    }
    if h < 0 {
        seq = seq
            .into_iter()
            .rev()
            .map(|(s, m)| (s.inverse(), m))
            .collect();
    }
    let first = seq
        .iter()
        .position(|(s, _)| matches!(s, Step::L | Step::R))
        .expect("winding implies a hit");
    seq.rotate_left(first);
    let mut level = 0i64;
    let mut hits = Vec::new();
    let mut levels = Vec::new();
    for (s, m) in &seq {
        levels.push(level);
        match s {
            Step::U => level += 1,
            Step::D => level -= 1,
            Step::R | Step::L => hits.push(MidlineHit {
                height: level,
                rightward: *s == Step::R,
                mark: m.clone(),
            }),
        }
    }
    let lo = hits.iter().map(|x| x.height).min().unwrap_or(0);
    let hi = hits.iter().map(|x| x.height).max().unwrap_or(0);
    let shift = -(lo + hi).div_euclid(2);
    for x in &mut hits {
        x.height += shift;
    }
    for l in &mut levels {
        *l += shift;
    }
    Ok(LiftedCurve {
        hits,
        steps: seq.into_iter().map(|x| x.0).collect(),
        levels,
    })
}

/// The component that wraps once longitudinally, lifted.
pub fn distinguished(c: &Curve) -> Result<LiftedCurve> {
    let mut found = c.components.iter().filter_map(|k| lift(k).ok());
    let first = found
        .next()
        .ok_or_else(|| Error::NotDistinguished("no component wraps once".into()))?;
    if found.next().is_some() {
        return Err(Error::NotDistinguished(
            "several components wrap once".into(),
        ));
    }
    Ok(first)
}

impl LiftedCurve {
    /// Index of the first hit after the seam crossing: both neighbouring hits run
    /// rightward and the seam passage covers height zero.
    fn first_after_seam(&self) -> Result<usize> {
        let n = self.hits.len();
        (0..n)
            .find(|&j| {
                let (a, b) = (&self.hits[(j + n - 1) % n], &self.hits[j]);
                a.rightward
                    && b.rightward
                    && a.height.min(b.height) <= 0
                    && 0 <= a.height.max(b.height)
            })
            .ok_or_else(|| Error::NotDistinguished("no seam passage through height 0".into()))
    }

    /// The mirror image: heights negated.
    pub fn mirror(&self) -> LiftedCurve {
        let flip = |s: Step| match s {
            Step::U => Step::D,
            Step::D => Step::U,
            other => other,
        };
        LiftedCurve {
            hits: self
                .hits
                .iter()
                .map(|h| MidlineHit {
                    height: -h.height,
                    ..h.clone()
                })
                .collect(),
            steps: self.steps.iter().map(|&s| flip(s)).collect(),
            levels: self.levels.iter().map(|l| -l).collect(),
        }
    }
}

/// (τ, ε): height of the first midline hit to the right of the seam, and the
/// direction the curve turns after it (down 1, up −1, straight 0).
pub fn tau_epsilon(l: &LiftedCurve) -> Result<(i64, i64)> {
    let j = l.first_after_seam()?;
    let n = l.hits.len();
    let here = &l.hits[j];
    let next = &l.hits[(j + 1) % n];
    if next.rightward {
        return Ok((here.height, 0));
    }
    Ok((here.height, (here.height - next.height).signum()))
}

impl fmt::Display for LiftedCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .hits
            .iter()
            .map(|h| format!("{}{}", if h.rightward { '>' } else { '<' }, h.height))
            .collect();
        f.write_str(&toks.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::slope_component;

    #[test]
    fn horizontal_line_is_flat() {
        let l = lift(&slope_component(0, 1).unwrap()).unwrap();
        assert_eq!(tau_epsilon(&l).unwrap(), (0, 0));
        assert!(lift(&slope_component(1, 0).unwrap()).is_err());
        assert!(lift(&slope_component(1, 1).unwrap()).is_err());
    }
}
