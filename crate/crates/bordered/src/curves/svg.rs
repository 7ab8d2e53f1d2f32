//! Deterministic SVG drawings of curves and lifts.

use std::fmt::Write as _;

use super::{Curve, LiftedCurve, Step};

const UNIT: f64 = 60.0;
const PAD: f64 = 30.0;

fn header(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{w:.0}" height="{h:.0}" fill="white"/>"#
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Each component is unfolded into the plane, one square per fundamental
/// domain; punctures are drawn at the lower-left corner of every visited square.
pub fn render_svg(c: &Curve) -> String {
    // Polylines in square units; crossing k sits at offset (k+1)/(len+1) along its edge.
    let mut paths: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut labels: Vec<(f64, f64, String)> = Vec::new();
    let mut squares: Vec<(i64, i64)> = Vec::new();
    let mut row_base = 0i64;
    for comp in &c.components {
        let n = comp.steps.len();
        let (mut sx, mut sy) = (0i64, row_base);
        let mut pts = vec![(0.5, row_base as f64 + 0.5)];
        let mut lo = sy;
        squares.push((sx, sy));
        for (k, s) in comp.steps.iter().enumerate() {
            let t = (k + 1) as f64 / (n + 1) as f64;
            let p = match s {
                Step::U => (sx as f64 + t, (sy + 1) as f64),
                Step::D => (sx as f64 + t, sy as f64),
                Step::R => ((sx + 1) as f64, sy as f64 + t),
                Step::L => (sx as f64, sy as f64 + t),
            };
            pts.push(p);
            if let Some(m) = comp.marks.get(&k) {
                labels.push((p.0, p.1, m.clone()));
            }
            let (dx, dy) = s.delta();
            sx += dx;
            sy += dy;
            lo = lo.min(sy);
            squares.push((sx, sy));
            pts.push((sx as f64 + 0.5, sy as f64 + 0.5));
        }
        paths.push(pts);
        let hi = squares.iter().map(|q| q.1).max().unwrap_or(0);
        row_base = hi + 2 + (row_base - lo);
    }
    squares.sort_unstable();
    squares.dedup();
    let xs = squares.iter().map(|q| q.0);
    let (x0, x1) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0) + 1);
    let ys = squares.iter().map(|q| q.1);
    let (y0, y1) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(0) + 1);
    let w = (x1 - x0) as f64 * UNIT + 2.0 * PAD;
    let h = (y1 - y0) as f64 * UNIT + 2.0 * PAD;
    let to = |x: f64, y: f64| ((x - x0 as f64) * UNIT + PAD, (y1 as f64 - y) * UNIT + PAD);
    let mut out = String::new();
    header(&mut out, w, h);
    for &(sx, sy) in &squares {
        let (px, py) = to(sx as f64, (sy + 1) as f64);
        let _ = writeln!(
            out,
            r##"<rect x="{px:.1}" y="{py:.1}" width="{UNIT:.1}" height="{UNIT:.1}" fill="none" stroke="#bbb"/>"##
        );
        let (cx, cy) = to(sx as f64, sy as f64);
        let _ = writeln!(
            out,
            r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="3" fill="black"/>"#
        );
    }
    for pts in &paths {
        let d: Vec<String> = pts
            .iter()
            .map(|&(x, y)| {
                let (a, b) = to(x, y);
                format!("{a:.1},{b:.1}")
            })
            .collect();
        let _ = writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="#c03" stroke-width="2"/>"##,
            d.join(" ")
        );
    }
    for (x, y, m) in &labels {
        let (a, b) = to(*x, *y);
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="10">{}</text>"#,
            a + 3.0,
            b - 3.0,
            escape(m)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// The cylinder `[0,1] x R` with the midline at `x = 1/2`; hits are drawn at their heights.
pub fn render_lifted_svg(l: &LiftedCurve) -> String {
    let lo = l.levels.iter().copied().min().unwrap_or(0) - 1;
    let hi = l.levels.iter().copied().max().unwrap_or(0) + 1;
    let w = 2.0 * UNIT + 2.0 * PAD;
    let h = (hi - lo) as f64 * UNIT + 2.0 * PAD;
    let to = |x: f64, y: f64| (x * 2.0 * UNIT + PAD, (hi as f64 - y) * UNIT + PAD);
    let mut out = String::new();
    header(&mut out, w, h);
    let (a, top) = to(0.5, hi as f64);
    let (_, bottom) = to(0.5, lo as f64);
    let _ = writeln!(
        out,
        r##"<line x1="{a:.1}" y1="{top:.1}" x2="{a:.1}" y2="{bottom:.1}" stroke="#888" stroke-dasharray="4 3"/>"##
    );
    for k in lo..hi {
        let (px, py) = to(0.47, k as f64 + 0.45);
        let _ = writeln!(
            out,
            r#"<circle cx="{px:.1}" cy="{py:.1}" r="3" fill="black"/>"#
        );
    }
    // Walk the picture: after a hit the strand sits on that side of the midline.
    let mut segs: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
    let mut side: f64 = 0.25;
    for (s, &lv) in l.steps.iter().zip(&l.levels) {
        let cur = segs.last_mut().expect("nonempty");
        match s {
            Step::R | Step::L => {
                let from: f64 = if *s == Step::R { 0.25 } else { 0.75 };
                if (from - side).abs() > 0.1 {
                    // Passing the seam.
                    cur.push((if side > 0.5 { 1.0 } else { 0.0 }, lv as f64));
                    segs.push(vec![(1.0 - if side > 0.5 { 1.0 } else { 0.0 }, lv as f64)]);
                }
                let cur = segs.last_mut().expect("nonempty");
                cur.push((from, lv as f64));
                cur.push((0.5, lv as f64));
                side = 1.0 - from;
                cur.push((side, lv as f64));
            }
            Step::U | Step::D => {
                let next = lv + if *s == Step::U { 1 } else { -1 };
                cur.push((side, lv as f64));
                cur.push((side, next as f64));
            }
        }
    }
    for seg in segs.iter().filter(|s| s.len() > 1) {
        let d: Vec<String> = seg
            .iter()
            .map(|&(x, y)| {
                let (a, b) = to(x, y);
                format!("{a:.1},{b:.1}")
            })
            .collect();
        let _ = writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="#c03" stroke-width="2"/>"##,
            d.join(" ")
        );
    }
    for hit in &l.hits {
        let (x, y) = to(0.5, hit.height as f64);
        let _ = writeln!(
            out,
            r##"<circle cx="{x:.1}" cy="{y:.1}" r="4" fill="#06c"/>"##
        );
        if let Some(m) = &hit.mark {
            let _ = writeln!(
                out,
                r#"<text x="{:.1}" y="{:.1}" font-size="10">{}</text>"#,
                x + 6.0,
                y - 4.0,
                escape(m)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
