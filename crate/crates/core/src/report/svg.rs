//! Planar drawing of a tiling: a polar layout with `S1` at the centre, the
//! equator on a middle ring and `S6` at infinity (its edges become rays).

use std::fmt::Write as _;

use crate::complex::{BaseComplex, EdgeClass, EdgeTemplate, VertexId};
use crate::enumerate::{apply_assignment, Assignment, TileKind};
use crate::error::Result;

const SCALE: f64 = 200.0;
const OUTER: f64 = 1.5;
const HALF: f64 = 1.6 * SCALE;

/// Layout radius, or `None` for the vertex drawn at infinity.
fn radius(cx: &BaseComplex, v: VertexId) -> Option<f64> {
    let c = cx.vertices[v].coord;
    let on_axis = c.x().is_zero() && c.y().is_zero();
    match (c.z().signum(), on_axis) {
        (1, true) => Some(0.0),
        (1, false) => Some(0.45),
        (0, _) => Some(0.8),
        (_, false) => Some(1.1),
        (_, true) => None,
    }
}

fn azimuth(cx: &BaseComplex, v: VertexId) -> f64 {
    let c = cx.vertices[v].coord;
    c.y().to_f64().atan2(c.x().to_f64())
}

fn at(r: f64, theta: f64) -> (f64, f64) {
    (HALF + SCALE * r * theta.cos(), HALF - SCALE * r * theta.sin())
}

fn point(cx: &BaseComplex, v: VertexId) -> Option<(f64, f64)> {
    radius(cx, v).map(|r| at(r, azimuth(cx, v)))
}

fn polygon(out: &mut String, pts: &[(f64, f64)], fill: &str) {
    let p: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let _ = writeln!(out, r#"<polygon points="{}" fill="{fill}" stroke="none"/>"#, p.join(" "));
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64), style: &str) {
    let _ = writeln!(
        out,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {style}/>"#,
        a.0, a.1, b.0, b.1
    );
}

/// Draws the tiling of `asg`: merged tiles shaded, edges styled by class
/// (a double black, b thick blue, c thin red), removed edges omitted.
/// Output is deterministic.
pub fn render_svg(cx: &BaseComplex, template: &EdgeTemplate, asg: &Assignment, title: &str) -> Result<String> {
    let tiling = apply_assignment(cx, template, asg)?;
    let mut removed = vec![false; cx.edges.len()];
    for (i, u) in template.units.iter().enumerate() {
        if !asg.is_present(i) {
            for &e in &u.edges {
                removed[e] = true;
            }
        }
    }
    let size = 2.0 * HALF;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.0} {size:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, "<title>{title}</title>");

    for tile in &tiling.tiles {
        if tile.kind == TileKind::Triangle {
            continue;
        }
        for &f in &tile.faces {
            let corners = cx.faces[f].corners;
            let finite: Vec<VertexId> = corners.iter().copied().filter(|&v| radius(cx, v).is_some()).collect();
            let mut pts: Vec<(f64, f64)> = finite.iter().filter_map(|&v| point(cx, v)).collect();
            if finite.len() == 2 {
                // Face at infinity: close it along the outer ring.
                pts.push(at(OUTER, azimuth(cx, finite[1])));
                pts.push(at(OUTER, azimuth(cx, finite[0])));
            }
            polygon(&mut out, &pts, "#e8e2c8");
        }
    }

    for (e, edge) in cx.edges.iter().enumerate() {
        if removed[e] {
            continue;
        }
        let [u, v] = edge.ends;
        let (a, b) = match (point(cx, u), point(cx, v)) {
            (Some(a), Some(b)) => (a, b),
            (Some(a), None) => (a, at(OUTER, azimuth(cx, u))),
            (None, Some(b)) => (at(OUTER, azimuth(cx, v)), b),
            (None, None) => continue,
        };
        match edge.class {
            EdgeClass::A => {
                line(&mut out, a, b, r#"stroke="black" stroke-width="4""#);
                line(&mut out, a, b, r#"stroke="white" stroke-width="1.6""#);
            }
            EdgeClass::B => line(&mut out, a, b, r##"stroke="#1f4fd1" stroke-width="3""##),
            EdgeClass::C => line(&mut out, a, b, r##"stroke="#d62828" stroke-width="1.2""##),
        }
    }

    for tv in &tiling.vertices {
        let v = tv.vertex;
        let label = &cx.vertices[v].label;
        let Some((x, y)) = point(cx, v) else {
            let _ = writeln!(out, r#"<text x="6" y="{:.0}" font-size="12">{label} at infinity</text>"#, size - 8.0);
            continue;
        };
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="10">{label}</text>"#, x + 4.0, y - 4.0);
    }
    let _ = writeln!(out, r#"<text x="6" y="16" font-size="14">{title}</text>"#);
    out.push_str("</svg>\n");
    Ok(out)
}
