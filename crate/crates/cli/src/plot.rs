//! SVG picture of the k-walls in the `(a, b)` quadrant of `H = aΣ + bC`.
//!
//! Each wall `L^⊥` is the ray of slope `b/a = (2x − y)/x`; the ample cone is
//! the open region above the boundary ray `b = 2a`.

use std::fmt::Write as _;

use mukai_lab::scalar::format_rational;
use mukai_lab::{BigRational, WallClass};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;

pub fn walls_svg(walls: &[WallClass], k: &BigRational) -> String {
    // The steepest wall sets the vertical extent; leave headroom above it.
    let max_slope = walls
        .iter()
        .map(|w| (2 * w.x - w.y) as f64 / w.x as f64)
        .fold(2.0, f64::max);
    let b_max = (max_slope * 1.15).ceil();
    let a_max = 1.0;
    let span = SIZE - 2.0 * MARGIN;
    let px = |a: f64| MARGIN + a / a_max * span;
    let py = |b: f64| SIZE - MARGIN - b / b_max * span;
    let ray_end = |slope: f64| {
        if slope * a_max <= b_max {
            (a_max, slope * a_max)
        } else {
            (b_max / slope, b_max)
        }
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(svg, r#"<title>k-walls for k = {}</title>"#, format_rational(k));
    let _ = writeln!(svg, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);

    let (ea, eb) = ray_end(2.0);
    let _ = writeln!(
        svg,
        r##"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="#e8f0fa"/>"##,
        px(0.0),
        py(0.0),
        px(ea),
        py(eb),
        px(a_max),
        py(b_max),
        px(0.0),
        py(b_max)
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#000000"/>"##,
        px(0.0),
        py(0.0),
        px(a_max),
        py(0.0)
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#000000"/>"##,
        px(0.0),
        py(0.0),
        px(0.0),
        py(b_max)
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1f4e9c" stroke-dasharray="6 4"/>"##,
        px(0.0),
        py(0.0),
        px(ea),
        py(eb)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="12">b = 2a</text>"#,
        px(ea) - 40.0,
        py(eb) + 16.0
    );
    for w in walls {
        let slope = (2 * w.x - w.y) as f64 / w.x as f64;
        let (a, b) = ray_end(slope);
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c0392b"><title>x = {}, y = {}, L^2 = {}</title></line>"##,
            px(0.0),
            py(0.0),
            px(a),
            py(b),
            w.x,
            w.y,
            w.l_squared
        );
    }
    let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" font-size="12">a</text>"#, px(a_max) + 6.0, py(0.0) + 4.0);
    let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" font-size="12">b</text>"#, px(0.0) - 4.0, py(b_max) - 8.0);
    svg.push_str("</svg>\n");
    svg
}
