//! Surgery verdicts: local curve rules and the closed-form criterion.
//!
//! The curve rules look at a type-A avatar in the cylinder picture near a marked
//! horizontal-edge crossing `a`, then decide whether pairing `a` with the
//! negatively stabilized `n`-framed solid torus gives a boundary.

use std::fmt;

use super::{lift::picture, Curve, Step};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Vanishes,
    Nonvanishes,
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Vanishes => "vanishes",
            Verdict::Nonvanishes => "nonvanishes",
            Verdict::Undetermined => "undetermined",
        })
    }
}

/// Which local rule fired, for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictReport {
    pub verdict: Verdict,
    pub rules: Vec<&'static str>,
}

/// Classifies the pairing of mark `a` with the `n`-framed filling (`n >= 1`).
pub fn surgery_verdict_curve(c: &Curve, a: &str, n: i64) -> Result<Verdict> {
    surgery_verdict_report(c, a, n).map(|r| r.verdict)
}

pub fn surgery_verdict_report(c: &Curve, a: &str, n: i64) -> Result<VerdictReport> {
    if n < 1 {
        return Err(Error::InvalidInput(format!(
            "filling parameter {n} must be positive"
        )));
    }
    let (comp, k) = c
        .components
        .iter()
        .find_map(|comp| {
            comp.marks
                .iter()
                .find(|(_, m)| m.as_str() == a)
                .map(|(k, _)| (comp, *k))
        })
        .ok_or_else(|| Error::BadMark(a.to_string()))?;
    let len = comp.steps.len();
    let mut w: Vec<Step> = (0..len)
        .map(|i| picture(comp.steps[(k + i) % len]))
        .collect();
    match w[0] {
        Step::U => {}
        Step::D => {
            // Reverse so that the walk leaves `a` upward.
            w = std::iter::once(Step::U)
                .chain(w[1..].iter().rev().map(|s| s.inverse()))
                .collect();
        }
        _ => {
            return Err(Error::Precondition(format!(
                "mark `{a}` sits on the vertical edge"
            )));
        }
    }
    let at = |i: usize| w[i % len];
    let mut vanish = Vec::new();
    let mut nonvanish = Vec::new();

    // Above a.
    let up1 = at(1);
    let mut above_nv = false;
    if matches!(up1, Step::R | Step::U) {
        vanish.push("rightward or upward above");
    } else if up1 == Step::L {
        let up2 = at(2);
        if up2 == Step::U {
            let mut i = 3;
            while at(i) == Step::U && i < len + 3 {
                i += 1;
            }
            if at(i) == Step::R {
                vanish.push("left, up, then right above");
            }
        } else {
            above_nv = true;
        }
    }

    // Below a: walk downward, i.e. backwards with inverted steps.
    let down = |i: usize| w[(len - (i % len)) % len].inverse();
    let mut m = 0usize;
    while down(m + 1) == Step::D && m < len {
        m += 1;
    }
    let turn = down(m + 1);
    let m = m as i64;
    let mut below_nv = false;
    match turn {
        Step::L => vanish.push("left turn below"),
        Step::R if m >= n => vanish.push("right turn below after at least n passes"),
        Step::R => {
            let after = down(m as usize + 2);
            below_nv = m < n - 1 || (m == n - 1 && matches!(after, Step::R | Step::U));
        }
        _ => {}
    }
    if above_nv && below_nv {
        nonvanish.push("left then down or left above, early right turn below");
    }

    // An embedded line of slope -n through a.
    let (dx, dy) = w
        .iter()
        .fold((0i64, 0i64), |(x, y), s| (x + s.delta().0, y + s.delta().1));
    if dx.abs() == 1
        && dy == -n * dx
        && w.iter().filter(|s| matches!(s, Step::L | Step::R)).count() == 1
    {
        nonvanish.push("embedded line of slope -n");
    }

    let verdict = match (vanish.is_empty(), nonvanish.is_empty()) {
        (false, true) => Verdict::Vanishes,
        (true, false) => Verdict::Nonvanishes,
        _ => Verdict::Undetermined,
    };
    let mut rules = vanish;
    rules.extend(nonvanish);
    Ok(VerdictReport { verdict, rules })
}

/// Closed-form verdict for positive contact surgery with smooth coefficient
/// `s = n + tb`, all stabilizations negative.
pub fn surgery_verdict_formula(
    tb: i64,
    rot: i64,
    tau: i64,
    epsilon: i64,
    s: i64,
) -> Result<Verdict> {
    if s - tb <= 0 {
        return Err(Error::InvalidInput(format!(
            "contact coefficient n = s - tb = {} must be positive",
            s - tb
        )));
    }
    if !(-1..=1).contains(&epsilon) {
        return Err(Error::InvalidInput(format!(
            "epsilon {epsilon} must be -1, 0 or 1"
        )));
    }
    let lhs = tb - rot;
    let edge = 2 * tau - 1;
    Ok(if lhs < edge {
        Verdict::Vanishes
    } else if lhs > edge {
        Verdict::Undetermined
    } else if epsilon == -1 {
        Verdict::Vanishes
    } else if s >= 2 * tau {
        Verdict::Nonvanishes
    } else {
        Verdict::Vanishes
    })
}
