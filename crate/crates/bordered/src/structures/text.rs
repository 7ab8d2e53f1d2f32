//! Line-based text format for all structure types. `#` starts a comment.
//!
//! ```text
//! [typeD] name        gen a i0          arrow a r12 b
//! [typeA] name        gen a i0          op a | r3 r2 -> a      horizon 6
//! [graphA] name       gen a i0          edge a | r3 r2 -> b
//! [dd] name           gen p i1 i0       arrow p r3 i0 q
//! ```

use std::fmt::Write as _;

use super::{DDBimodule, GraphTypeA, TypeA, TypeD};
use crate::error::{Error, Result};
use crate::torus_algebra::{Basis, Idem};

/// Any structure that can appear in a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    D(TypeD),
    A(TypeA),
    Graph(GraphTypeA),
    DD(DDBimodule),
}

impl Structure {
    pub fn name(&self) -> &str {
        match self {
            Structure::D(d) => &d.name,
            Structure::A(a) => &a.name,
            Structure::Graph(g) => &g.name,
            Structure::DD(p) => &p.name,
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn at<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => perr(line, other.to_string()),
    })
}

/// Splits `src | w1 w2 -> tgt` into its parts.
fn op_parts(line: usize, rest: &[&str]) -> Result<(String, Vec<Basis>, String)> {
    let bar = rest.iter().position(|t| *t == "|");
    let arrow = rest.iter().position(|t| *t == "->");
    match (bar, arrow) {
        (Some(1), Some(k)) if k > 2 && k + 2 == rest.len() => {
            let word = rest[2..k]
                .iter()
                .map(|t| at(line, t.parse()))
                .collect::<Result<Vec<Basis>>>()?;
            Ok((rest[0].to_string(), word, rest[k + 1].to_string()))
        }
        _ => Err(perr(line, "expected `<src> | <element>... -> <tgt>`")),
    }
}

/// Parses a document holding any number of structures.
pub fn parse_document(text: &str) -> Result<Vec<Structure>> {
    let mut out: Vec<Structure> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks[0].starts_with('[') {
            if toks.len() != 2 {
                return Err(perr(line, "expected `[kind] name`"));
            }
            let name = toks[1];
            out.push(match toks[0] {
                "[typeD]" => Structure::D(TypeD::new(name)),
                "[typeA]" => Structure::A(TypeA::new(name)),
                "[graphA]" => Structure::Graph(GraphTypeA::new(name)),
                "[dd]" => Structure::DD(DDBimodule::new(name)),
                other => {
                    return Err(perr(
                        line,
                        format!(
                            "unknown section `{other}` (expected [typeD] [typeA] [graphA] [dd])"
                        ),
                    ))
                }
            });
            continue;
        }
        let cur = out
            .last_mut()
            .ok_or_else(|| perr(line, "content before any `[kind] name` header"))?;
        let idem = |t: &str| -> Result<Idem> { at(line, t.parse()) };
        let basis = |t: &str| -> Result<Basis> { at(line, t.parse()) };
        match (cur, toks[0], &toks[1..]) {
            (Structure::D(d), "gen", [g, i]) => {
                at(line, d.add_gen(g, idem(i)?))?;
            }
            (Structure::D(d), "arrow", [s, a, t]) => at(line, d.add_arrow(s, basis(a)?, t))?,
            (Structure::A(m), "gen", [g, i]) => {
                at(line, m.add_gen(g, idem(i)?))?;
            }
            (Structure::A(m), "horizon", [h]) => {
                let h: usize = h
                    .parse()
                    .map_err(|_| perr(line, format!("bad horizon `{h}`")))?;
                m.set_horizon(Some(h));
            }
            (Structure::A(m), "op", rest) => {
                let (s, w, t) = op_parts(line, rest)?;
                at(line, m.add_op(&s, &w, &t))?;
            }
            (Structure::Graph(g), "gen", [n, i]) => {
                at(line, g.add_gen(n, idem(i)?))?;
            }
            (Structure::Graph(g), "edge", rest) => {
                let (s, w, t) = op_parts(line, rest)?;
                at(line, g.add_edge(&s, &w, &t))?;
            }
            (Structure::DD(p), "gen", [g, l, r]) => {
                at(line, p.add_gen(g, idem(l)?, idem(r)?))?;
            }
            (Structure::DD(p), "arrow", [s, a, b, t]) => {
                at(line, p.add_arrow(s, basis(a)?, basis(b)?, t))?
            }
            (_, kw, _) => return Err(perr(line, format!("unexpected `{kw}` line: `{content}`"))),
        }
    }
    Ok(out)
}

/// Prints structures in the format read by [`parse_document`].
pub fn print_document(items: &[Structure]) -> String {
    let mut s = String::new();
    for item in items {
        match item {
            Structure::D(d) => {
                let _ = writeln!(s, "[typeD] {}", d.name);
                for i in 0..d.len() {
                    let _ = writeln!(s, "gen {} {}", d.gen_name(i), d.idem(i));
                }
                for (x, a, y) in d.arrows() {
                    let _ = writeln!(s, "arrow {} {a} {}", d.gen_name(x), d.gen_name(y));
                }
            }
            Structure::A(m) => {
                let _ = writeln!(s, "[typeA] {}", m.name);
                if let Some(h) = m.horizon() {
                    let _ = writeln!(s, "horizon {h}");
                }
                for i in 0..m.len() {
                    let _ = writeln!(s, "gen {} {}", m.gen_name(i), m.idem(i));
                }
                for (x, w, y) in m.ops() {
                    let _ = writeln!(
                        s,
                        "op {} | {} -> {}",
                        m.gen_name(x),
                        super::word_str(w),
                        m.gen_name(y)
                    );
                }
            }
            Structure::Graph(g) => {
                let _ = writeln!(s, "[graphA] {}", g.name);
                for i in 0..g.len() {
                    let _ = writeln!(s, "gen {} {}", g.gen_name(i), g.idem(i));
                }
                for (x, w, y) in g.edges() {
                    let _ = writeln!(
                        s,
                        "edge {} | {} -> {}",
                        g.gen_name(*x),
                        super::word_str(w),
                        g.gen_name(*y)
                    );
                }
            }
            Structure::DD(p) => {
                let _ = writeln!(s, "[dd] {}", p.name);
                for i in 0..p.len() {
                    let (l, r) = p.idems(i);
                    let _ = writeln!(s, "gen {} {l} {r}", p.gen_name(i));
                }
                for (x, a, b, y) in p.arrows() {
                    let _ = writeln!(s, "arrow {} {a} {b} {}", p.gen_name(x), p.gen_name(y));
                }
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# sample
[typeD] d
gen a i0
gen b i0
arrow a r12 b
[typeA] m
gen a i0
op a | r3 r2 -> a   # trailing comment
[graphA] g
gen a i0
edge a | r3 r2 -> a
[dd] p
gen p i1 i0
gen q i1 i1
arrow p r3 i0 q
";

    #[test]
    fn round_trip() {
        let docs = parse_document(SAMPLE).unwrap();
        assert_eq!(docs.len(), 4);
        let printed = print_document(&docs);
        let again = parse_document(&printed).unwrap();
        assert_eq!(docs, again);
        assert_eq!(print_document(&again), printed);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_document("[typeD] d\ngen a i2\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                msg: "invalid input: expected idempotent i0|i1, got `i2`".into()
            }
        );
        assert!(matches!(
            parse_document("gen a i0"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_document("[typeA] m\ngen a i0\nop a r1 -> a"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_document("[typeD] d\narrow a r1 b"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
