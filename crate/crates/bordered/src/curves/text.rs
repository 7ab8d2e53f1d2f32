//! Curve text format.
//!
//! One component per line (or separated by `;`). Tokens are `U D L R`, each
//! optionally suffixed `@mark`, plus the turn annotations `ql`/`qr`, which must
//! agree with the steps around them. `#` starts a comment.

use std::fmt;

use super::{Component, Curve, Step};
use crate::error::{Error, Result};

fn step_of(tok: &str) -> Option<Step> {
    match tok {
        "U" => Some(Step::U),
        "D" => Some(Step::D),
        "L" => Some(Step::L),
        "R" => Some(Step::R),
        _ => None,
    }
}

fn parse_component(line: &str, lineno: usize) -> Result<Component> {
    let err = |msg: String| Error::Parse { line: lineno, msg };
    let mut comp = Component::new(Vec::new());
    let mut turns: Vec<(usize, bool)> = Vec::new();
    for tok in line.split_whitespace() {
        match tok {
            "ql" | "qr" => {
                if comp.steps.is_empty() {
                    return Err(err(format!("`{tok}` before any step")));
                }
                turns.push((comp.steps.len() - 1, tok == "ql"));
            }
            _ => {
                let (head, mark) = match tok.split_once('@') {
                    Some((h, m)) if !m.is_empty() => (h, Some(m)),
                    Some(_) => return Err(err(format!("empty mark in `{tok}`"))),
                    None => (tok, None),
                };
                let s = step_of(head)
                    .ok_or_else(|| err(format!("unknown token `{tok}`; expected U D L R ql qr")))?;
                if let Some(m) = mark {
                    comp.marks.insert(comp.steps.len(), m.to_string());
                }
                comp.steps.push(s);
            }
        }
    }
    let n = comp.steps.len();
    for (i, left) in turns {
        let (a, b) = (comp.steps[i], comp.steps[(i + 1) % n]);
        let want = if left { a.turn_left() } else { a.turn_right() };
        if b != want {
            return Err(err(format!(
                "turn after step {i} does not match `{}` then `{}`",
                a.letter(),
                b.letter()
            )));
        }
    }
    if !comp.is_reduced() {
        return Err(err("component backtracks".into()));
    }
    Ok(comp)
}

/// Parses a multicurve.
pub fn parse_curve(text: &str) -> Result<Curve> {
    let mut curve = Curve::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for part in line.split(';') {
            if !part.trim().is_empty() {
                curve.components.push(parse_component(part, i + 1)?);
            }
        }
    }
    Ok(curve)
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "U@z0 R R U@z2 L D@z1 L\nR\n";
        let c = parse_curve(text).unwrap();
        assert_eq!(c.components.len(), 2);
        assert_eq!(c.to_string(), text);
        assert_eq!(parse_curve(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn turns_are_checked() {
        assert!(parse_curve("U ql L D ql R").is_ok());
        assert!(matches!(
            parse_curve("U qr L D R"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_curve("U X").is_err());
        assert!(parse_curve("U D").is_err());
    }
}
