//! Static SVG scenes of circles, `α` and loops.
//!
//! Output depends only on the scene, so identical inputs give identical
//! bytes.

use pi1lab_core::geometry::rational::{int, to_decimal, Rational};
use pi1lab_core::geometry::Point2;
use pi1lab_core::loops::Loop;
use pi1lab_core::spaces::{alpha_segment, SpaceError, SpaceHandle};
use std::fmt::Write;

/// Pixels per unit length.
const SCALE: i64 = 400;
const MARGIN: i64 = 20;
/// Visible region is `[0, 0.6] x [0, 1]`.
const WIDTH: i64 = 2 * MARGIN + SCALE * 6 / 10;
const HEIGHT: i64 = 2 * MARGIN + SCALE;

#[derive(Default)]
pub struct Scene {
    /// Spaces drawn with circles `C_2..C_{count+1}`.
    pub spaces: Vec<(SpaceHandle, u32)>,
    pub loops: Vec<Loop>,
}

fn coord(v: &Rational) -> String {
    to_decimal(v, 3)
}

fn px(q: &Point2) -> (String, String) {
    let x = int(MARGIN) + &q.x * int(SCALE);
    let y = int(MARGIN) + (int(1) - &q.y) * int(SCALE);
    (coord(&x), coord(&y))
}

fn line(out: &mut String, class: &str, a: &Point2, b: &Point2) {
    let ((x1, y1), (x2, y2)) = (px(a), px(b));
    writeln!(out, r#"  <line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#).unwrap();
}

pub fn render(scene: &Scene) -> Result<String, SpaceError> {
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        "<!-- pi1lab scene. Plane point (x, y) maps to pixel ({MARGIN} + {SCALE}x, {MARGIN} + {SCALE}(1 - y)); \
         coordinates are exact rationals rounded half-even to 3 decimals. -->"
    )
    .unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    if !scene.spaces.is_empty() || !scene.loops.is_empty() {
        writeln!(
            out,
            "  <style>line {{ stroke: #222; stroke-width: 0.5; }} line.alpha {{ stroke: #b22; }} \
             polyline {{ fill: none; stroke-width: 1.5; opacity: 0.7; }}</style>"
        )
        .unwrap();
    }
    for (space, count) in &scene.spaces {
        for n in 2..=count + 1 {
            let c = space.circle(n)?;
            for e in c.edges() {
                line(&mut out, &format!("circle c{n}"), e.a(), e.b());
            }
        }
        if space.has_alpha() {
            let a = alpha_segment();
            line(&mut out, "alpha", a.a(), a.b());
        }
    }
    const COLOURS: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"];
    for (i, l) in scene.loops.iter().enumerate() {
        let points: Vec<String> = l
            .path()
            .points()
            .map(|q| {
                let (x, y) = px(q);
                format!("{x},{y}")
            })
            .collect();
        writeln!(
            out,
            r#"  <polyline class="loop-{i}" stroke="{}" points="{}"/>"#,
            COLOURS[i % COLOURS.len()],
            points.join(" ")
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
