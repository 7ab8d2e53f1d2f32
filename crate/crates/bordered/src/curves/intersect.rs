//! Minimal geometric intersection of closed curves.
//!
//! The punctured torus retracts onto a wedge of two circles whose vertex sits at
//! the centre of the square; the four half-edges leave it to the east, north,
//! west and south in counter-clockwise order. A pair of passages of two reduced
//! cyclic words through the vertex contributes an essential intersection when the
//! strands are linked there, or, for a common stretch of both words, when the
//! strands swap sides between the two ends of the stretch.

use super::{Component, Curve, Step};

/// Counter-clockwise position of a compass direction at the vertex.
fn pos(s: Step) -> usize {
    match s {
        Step::R => 0,
        Step::U => 1,
        Step::L => 2,
        Step::D => 3,
    }
}

fn ccw(from: Step, to: Step) -> usize {
    (pos(to) + 4 - pos(from)) % 4
}

/// Passage `i` of a word: (direction it arrives from, direction it leaves to).
fn passage(w: &[Step], i: usize) -> (Step, Step) {
    let n = w.len();
    (w[(i + n - 1) % n].inverse(), w[i % n])
}

/// Number of common stretches starting at passage pair `(i, j)` whose strands swap sides.
fn stretch_linked(w1: &[Step], i: usize, w2: &[Step], j: usize) -> bool {
    let (n1, n2) = (w1.len(), w2.len());
    let (d1, e) = passage(w1, i);
    let (d2, _) = passage(w2, j);
    let left_at_start = ccw(e, d1) < ccw(e, d2);
    let cap = n1 * n2 + 1;
    let mut k = 0;
    while w1[(i + k) % n1] == w2[(j + k) % n2] {
        k += 1;
        if k > cap {
            // Identical classes: parallel copies never need to meet.
            return false;
        }
    }
    let h = w1[(i + k - 1) % n1].inverse();
    let (e1, e2) = (w1[(i + k) % n1], w2[(j + k) % n2]);
    let cw = |to: Step| (pos(h) + 4 - pos(to)) % 4;
    let left_at_end = cw(e1) < cw(e2);
    left_at_start != left_at_end
}

fn linked_pairs(w1: &[Step], w2: &[Step]) -> usize {
    if w1.is_empty() || w2.is_empty() {
        return 0;
    }
    let rev: Vec<Step> = w2.iter().rev().map(|s| s.inverse()).collect();
    let mut count = 0;
    for i in 0..w1.len() {
        let (a1, b1) = passage(w1, i);
        for j in 0..w2.len() {
            let (a2, b2) = passage(w2, j);
            let distinct = a1 != a2 && a1 != b2 && b1 != a2 && b1 != b2;
            if distinct {
                if ccw(a1, b1) == 2 {
                    count += 1;
                }
            } else if b1 == b2 && a1 != a2 && stretch_linked(w1, i, w2, j) {
                count += 1;
            }
            let (a3, b3) = passage(&rev, j);
            if b1 == b3 && a1 != a3 && stretch_linked(w1, i, &rev, j) {
                count += 1;
            }
        }
    }
    count
}

/// Minimal number of intersections between two components.
pub fn component_intersections(a: &Component, b: &Component) -> usize {
    let wa = super::reduce_word(&a.steps);
    let wb = super::reduce_word(&b.steps);
    linked_pairs(&wa, &wb)
}

/// Minimal number of intersection points between two multicurves, summed over
/// all pairs of components.
pub fn min_intersections(a: &Curve, b: &Curve) -> usize {
    a.components
        .iter()
        .flat_map(|x| {
            b.components
                .iter()
                .map(move |y| component_intersections(x, y))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::slope_component;

    fn line(p: i64, q: i64) -> Curve {
        Curve::single(slope_component(p, q).unwrap())
    }

    #[test]
    fn lines_meet_by_determinant() {
        assert_eq!(min_intersections(&line(0, 1), &line(1, 0)), 1);
        assert_eq!(min_intersections(&line(1, 2), &line(2, 3)), 1);
        assert_eq!(min_intersections(&line(3, 1), &line(-2, 5)), 17);
        assert_eq!(min_intersections(&line(2, 3), &line(2, 3)), 0);
    }

    #[test]
    fn symmetric_in_arguments() {
        for (a, b) in [((1, 3), (-4, 1)), ((5, 2), (1, 1)), ((0, 1), (-3, 2))] {
            let (x, y) = (line(a.0, a.1), line(b.0, b.1));
            assert_eq!(min_intersections(&x, &y), min_intersections(&y, &x));
        }
    }
}
