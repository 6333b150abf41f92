//! SVG drawing of a constructed tree over the unit circle: dashed stars,
//! Julia vertices at baricenters, Fatou vertices near region centroids,
//! solid tree edges, and arrows for the non-trivial dynamics.
//!
//! Coordinates are floating point here only; nothing upstream depends on them.

use std::fmt::Write as _;

use crate::angle::Angle;
use crate::builder::{elementary_arcs, ConstructedTree, Region};
use crate::portrait::ValidPortrait;

const SIZE: f64 = 480.0;
const CENTER: f64 = SIZE / 2.0;
const RADIUS: f64 = 200.0;

type Point = (f64, f64);

fn on_circle(a: Angle) -> Point {
    let t = 2.0 * std::f64::consts::PI * a.to_f64();
    (t.cos(), t.sin())
}

fn mean(points: &[Point]) -> Point {
    let n = points.len() as f64;
    let (x, y) = points.iter().fold((0.0, 0.0), |(x, y), p| (x + p.0, y + p.1));
    (x / n, y / n)
}

// screen y grows downwards
fn screen(p: Point) -> Point {
    (CENTER + RADIUS * p.0, CENTER - RADIUS * p.1)
}

fn arc_midpoint(start: Angle, end: Angle) -> f64 {
    let (s, e) = (start.to_f64(), end.to_f64());
    let e = if e <= s { e + 1.0 } else { e };
    (s + e) / 2.0
}

pub fn render_svg(p: &ValidPortrait, regions: &[Region], ct: &ConstructedTree) -> String {
    let t = &ct.tree;
    let arcs = elementary_arcs(p);
    let mut pos = vec![(0.0, 0.0); t.vertex_count()];
    for (j, s) in p.sets().iter().enumerate() {
        let pts: Vec<Point> = s.angles().iter().map(|&a| on_circle(a)).collect();
        pos[ct.julia_vertex[j]] = mean(&pts);
    }
    for (i, r) in regions.iter().enumerate() {
        let mut pts: Vec<Point> = r
            .arcs
            .iter()
            .map(|&a| {
                let m = 2.0 * std::f64::consts::PI * arc_midpoint(arcs[a].start, arcs[a].end);
                (0.8 * m.cos(), 0.8 * m.sin())
            })
            .collect();
        pts.extend(r.boundary_sets.iter().map(|&j| pos[ct.julia_vertex[j]]));
        pos[ct.fatou_vertex[i]] = mean(&pts);
    }

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        s,
        r##"<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="#b03030"/></marker></defs>"##
    );
    let _ = writeln!(
        s,
        r#"<circle class="circle" cx="{CENTER:.2}" cy="{CENTER:.2}" r="{RADIUS:.2}" fill="none" stroke="black"/>"#
    );

    for (j, set) in p.sets().iter().enumerate() {
        let (bx, by) = screen(pos[ct.julia_vertex[j]]);
        for &a in set.angles() {
            let (x, y) = screen(on_circle(a));
            if set.cardinality() > 1 {
                let _ = writeln!(
                    s,
                    r#"<line class="spoke" x1="{x:.2}" y1="{y:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="gray" stroke-dasharray="4 3"/>"#
                );
            }
            let (lx, ly) = screen((1.08 * on_circle(a).0, 1.08 * on_circle(a).1));
            let _ = writeln!(
                s,
                r#"<text class="ray" x="{lx:.2}" y="{ly:.2}" font-size="11" text-anchor="middle">{a}</text>"#
            );
        }
    }

    for &(a, b) in t.edges() {
        let (x1, y1) = screen(pos[a]);
        let (x2, y2) = screen(pos[b]);
        let _ = writeln!(
            s,
            r#"<line class="edge" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="2"/>"#
        );
    }

    for &w in &ct.fatou_vertex {
        let target = t.tau(w);
        if target == w {
            continue;
        }
        let (x1, y1) = screen(pos[w]);
        let (x2, y2) = screen(pos[target]);
        // bow the arrow to the left of the chord so a swap draws two curves
        let (mx, my) = ((x1 + x2) / 2.0 - (y2 - y1) * 0.25, (y1 + y2) / 2.0 + (x2 - x1) * 0.25);
        let _ = writeln!(
            s,
            r##"<path class="tau" d="M{x1:.2},{y1:.2} Q{mx:.2},{my:.2} {x2:.2},{y2:.2}" fill="none" stroke="#b03030" stroke-dasharray="2 2" marker-end="url(#arrow)"/>"##
        );
    }

    for (j, &v) in ct.julia_vertex.iter().enumerate() {
        let (x, y) = screen(pos[v]);
        let _ = writeln!(s, r#"<circle class="julia" cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text class="label" x="{:.2}" y="{:.2}" font-size="11">v{} δ={}</text>"#,
            x + 6.0,
            y - 6.0,
            j + 1,
            t.delta(v)
        );
    }
    for (i, &w) in ct.fatou_vertex.iter().enumerate() {
        let (x, y) = screen(pos[w]);
        let _ = writeln!(
            s,
            r#"<circle class="fatou" cx="{x:.2}" cy="{y:.2}" r="6" fill="white" stroke="black" stroke-width="2"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text class="label" x="{:.2}" y="{:.2}" font-size="11">w{} δ={}</text>"#,
            x + 8.0,
            y + 4.0,
            i + 1,
            t.delta(w)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{assemble_tree, build_regions};
    use crate::format::parse_portrait;
    use crate::portrait::validate_portrait;

    fn draw(text: &str) -> String {
        let p = validate_portrait(&parse_portrait(text).unwrap()).unwrap();
        let regions = build_regions(&p).unwrap();
        let ct = assemble_tree(&p).unwrap();
        render_svg(&p, &regions, &ct)
    }

    fn count(svg: &str, class: &str) -> usize {
        svg.matches(&format!("class=\"{class}\"")).count()
    }

    #[test]
    fn degree5_drawing() {
        let svg = draw("degree 5\nset 0 3/4\nset 1/8 5/8\nset 1/4\nset 1/2\n");
        assert_eq!(count(&svg, "spoke"), 4);
        assert_eq!(count(&svg, "julia"), 4);
        assert_eq!(count(&svg, "fatou"), 3);
        assert_eq!(count(&svg, "edge"), 6);
        assert_eq!(count(&svg, "tau"), 2);
    }

    #[test]
    fn single_point_drawing() {
        let svg = draw("degree 2\nset 0\n");
        assert_eq!(count(&svg, "circle"), 1);
        assert_eq!(count(&svg, "spoke"), 0);
        assert_eq!(count(&svg, "julia"), 1);
        assert_eq!(count(&svg, "fatou"), 1);
        assert_eq!(count(&svg, "edge"), 1);
    }

    #[test]
    fn basilica_drawing_is_deterministic() {
        let text = "degree 2\nset 0\nset 1/3 2/3\n";
        let svg = draw(text);
        assert_eq!(count(&svg, "fatou"), 2);
        assert_eq!(count(&svg, "tau"), 2);
        assert_eq!(svg, draw(text));
    }
}
