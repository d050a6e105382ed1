//! Deterministic SVG figures of multimap graphs on the unit square.

use std::fmt::Write;

use nielsen_core::{GraphIntersection, LiftBranch, MultiMap, Rational};

/// Canvas size, stroke colours and marker radius (as a fraction of the unit square).
#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub margin: u32,
    pub strokes: [&'static str; 2],
    pub stroke_width: f64,
    pub marker_radius: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 600,
            height: 600,
            margin: 20,
            strokes: ["#1f4e9c", "#c0392b"],
            stroke_width: 2.0,
            marker_radius: 0.015,
        }
    }
}

impl RenderSpec {
    fn px(&self, x: Rational) -> String {
        let span = f64::from(self.width - 2 * self.margin);
        format!("{:.9}", f64::from(self.margin) + x.to_f64() * span)
    }

    fn py(&self, y: Rational) -> String {
        let span = f64::from(self.height - 2 * self.margin);
        format!("{:.9}", f64::from(self.margin) + (1.0 - y.to_f64()) * span)
    }
}

/// Pieces of a branch read mod 1, split wherever the lift crosses an integer.
pub fn branch_strokes(b: &LiftBranch) -> Vec<Vec<(Rational, Rational)>> {
    let pts = b.points();
    let mut level = Rational::from_int(pts[0].1.floor());
    let mut strokes = Vec::new();
    let mut cur = vec![(pts[0].0, pts[0].1 - level)];
    for w in pts.windows(2) {
        let ((t0, y0), (t1, y1)) = (w[0], w[1]);
        let cross = |k: Rational| t0 + (k - y0) / (y1 - y0) * (t1 - t0);
        while y1 > y0 && y1 >= level + Rational::ONE {
            let t = cross(level + Rational::ONE);
            cur.push((t, Rational::ONE));
            strokes.push(std::mem::replace(&mut cur, vec![(t, Rational::ZERO)]));
            level += Rational::ONE;
        }
        while y1 < y0 && y1 < level {
            let t = cross(level);
            cur.push((t, Rational::ZERO));
            strokes.push(std::mem::replace(&mut cur, vec![(t, Rational::ONE)]));
            level -= Rational::ONE;
        }
        cur.push((t1, y1 - level));
    }
    strokes.push(cur);
    strokes.retain(|s| s.windows(2).any(|w| w[0] != w[1]));
    strokes
}

pub fn render_svg(spec: &RenderSpec, maps: &[&MultiMap], marks: &[GraphIntersection]) -> String {
    let (w, h, m) = (spec.width, spec.height, spec.margin);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##
    );
    let _ = writeln!(
        out,
        r##"<rect x="{m}" y="{m}" width="{}" height="{}" fill="none" stroke="#888888" stroke-width="1"/>"##,
        w - 2 * m,
        h - 2 * m
    );
    for (i, f) in maps.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<g id="map{i}" fill="none" stroke="{}" stroke-width="{:.9}">"#,
            spec.strokes[i % spec.strokes.len()],
            spec.stroke_width
        );
        for b in f.branches() {
            let mut d = String::new();
            for stroke in branch_strokes(b) {
                for (k, &(x, y)) in stroke.iter().enumerate() {
                    let cmd = if k == 0 { "M" } else { " L" };
                    let sep = if k == 0 && !d.is_empty() { " " } else { "" };
                    let _ = write!(d, "{sep}{cmd} {} {}", spec.px(x), spec.py(y));
                }
            }
            let _ = writeln!(out, r#"<path d="{d}"/>"#);
        }
        let _ = writeln!(out, "</g>");
    }
    if !marks.is_empty() {
        let r = spec.marker_radius * f64::from(w - 2 * m);
        let _ = writeln!(
            out,
            r##"<g id="intersections" fill="none" stroke="#000000" stroke-width="1.5">"##
        );
        for p in marks {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="{r:.9}"/>"#,
                spec.px(p.x.value()),
                spec.py(p.y.value())
            );
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}
