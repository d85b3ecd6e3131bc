//! SVG diagram and OBJ polyline writers for lifted knots.

use std::fmt::Write;

use crate::geometry::Vec2;
use crate::lift::{BilliardKnot3D, Event, Strand3D};

pub const SVG_WIDTH: f64 = 1000.0;
const BRIDGE_HALF: f64 = 14.0;
const STROKE: f64 = 3.0;
const PALETTE: [&str; 4] = ["#1f3b73", "#a4262c", "#2d6a2d", "#6b3fa0"];

/// Maps the table `x²/A² + y²/B² = 1` onto `[0, 1000] × [0, 1000·B/A]`, `y` up.
struct ViewBox {
    a: f64,
    b: f64,
    scale: f64,
}

impl ViewBox {
    fn height(&self) -> f64 {
        SVG_WIDTH * self.b / self.a
    }

    fn map(&self, p: Vec2) -> (f64, f64) {
        ((p.x + self.a) * self.scale, (self.b - p.y) * self.scale)
    }
}

fn wall_polyline(s: &Strand3D) -> Vec<(Vec2, f64)> {
    s.points
        .iter()
        .zip(&s.events)
        .zip(&s.params)
        .filter(|((_, &e), _)| e == Event::Wall)
        .map(|((p, _), &t)| (Vec2::new(p[0], p[1]), t))
        .collect()
}

/// Unit direction of the side of `s` passing arc length `t`.
fn direction_at(poly: &[(Vec2, f64)], t: f64) -> Vec2 {
    let n = poly.len();
    let i = poly.iter().rposition(|&(_, ti)| ti <= t).unwrap_or(n - 1);
    (poly[(i + 1) % n].0 - poly[i].0).normalized()
}

pub fn knot_svg(k: &BilliardKnot3D) -> String {
    let v = ViewBox { a: k.base.a, b: k.base.b, scale: SVG_WIDTH / (2.0 * k.base.a) };
    let h = v.height();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_WIDTH} {h:.3}" width="{SVG_WIDTH}" height="{h:.3}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r##"<ellipse cx="{:.3}" cy="{:.3}" rx="{:.3}" ry="{:.3}" fill="none" stroke="#999" stroke-width="1.5"/>"##,
        SVG_WIDTH / 2.0,
        h / 2.0,
        SVG_WIDTH / 2.0,
        h / 2.0
    );
    let polys: Vec<_> = k.components.iter().map(wall_polyline).collect();
    for (c, poly) in polys.iter().enumerate() {
        let pts: Vec<String> = poly
            .iter()
            .map(|&(p, _)| {
                let (x, y) = v.map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="none" stroke="{}" stroke-width="{STROKE}" stroke-linejoin="round"/>"#,
            pts.join(" "),
            PALETTE[c % PALETTE.len()]
        );
    }
    // Over-strands are redrawn on top of a white band so the under-strand shows a gap.
    for x in &k.crossings {
        let d = direction_at(&polys[x.over.component], x.over.t);
        let (cx, cy) = v.map(x.point);
        let (dx, dy) = (d.x * BRIDGE_HALF, -d.y * BRIDGE_HALF);
        let (x1, y1, x2, y2) = (cx - dx, cy - dy, cx + dx, cy + dy);
        let _ = writeln!(
            out,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="white" stroke-width="{:.1}"/>"#,
            STROKE * 4.0
        );
        let _ = writeln!(
            out,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{}" stroke-width="{STROKE}"/>"#,
            PALETTE[x.over.component % PALETTE.len()]
        );
    }
    out.push_str("</svg>\n");
    out
}

/// One `v` line per trajectory point and a closed `l` loop per component.
pub fn knot_obj(k: &BilliardKnot3D) -> String {
    let mut out = String::from("# billiard knot in an elliptic cylinder\n");
    let mut base = 1;
    for (c, s) in k.components.iter().enumerate() {
        let _ = writeln!(out, "o component_{c}");
        for p in &s.points {
            let _ = writeln!(out, "v {} {} {}", p[0], p[1], p[2]);
        }
        let idx: Vec<String> = (base..base + s.points.len()).chain([base]).map(|i| i.to_string()).collect();
        let _ = writeln!(out, "l {}", idx.join(" "));
        base += s.points.len();
    }
    out
}
