//! Minimal SVG rendering of 1-D and 2-D bodies.

use std::fmt::Write;

use crate::convex::{ConvexBody, Shape};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn bounds(bodies: &[(String, ConvexBody)]) -> [f64; 4] {
    let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for (_, body) in bodies {
        let (xs, ys) = match body.shape() {
            Shape::Interval { lo, hi } => ([*lo, *hi], [0.0, 0.0]),
            Shape::Ball { center, radius } => (
                [center[0] - radius, center[0] + radius],
                [center[1] - radius, center[1] + radius],
            ),
            Shape::Polytope { vertices } => {
                let fold = |k: usize| {
                    vertices
                        .iter()
                        .fold([f64::INFINITY, f64::NEG_INFINITY], |acc, v| [acc[0].min(v[k]), acc[1].max(v[k])])
                };
                (fold(0), fold(1))
            }
        };
        b = [b[0].min(xs[0]), b[1].min(ys[0]), b[2].max(xs[1]), b[3].max(ys[1])];
    }
    // Keep the origin in view.
    [b[0].min(0.0), b[1].min(0.0), b[2].max(0.0), b[3].max(0.0)]
}

/// Renders planar (or line) bodies; `None` above dimension two.
pub fn render(bodies: &[(String, ConvexBody)]) -> Option<String> {
    if bodies.is_empty() || bodies.iter().any(|(_, b)| b.dim() > 2) {
        return None;
    }
    let [x0, y0, x1, y1] = bounds(bodies);
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let k = (SIZE - 2.0 * MARGIN) / span;
    let px = |x: f64| MARGIN + (x - x0) * k;
    let py = |y: f64| SIZE - MARGIN - (y - y0) * k;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        s,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#bbb"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#bbb"/>"##,
        px(x0), py(0.0), px(x1), py(0.0), px(0.0), py(y0), px(0.0), py(y1)
    );
    for (i, (label, body)) in bodies.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let style = format!(r#"fill="{color}" fill-opacity="0.25" stroke="{color}" stroke-width="2""#);
        match body.shape() {
            Shape::Interval { lo, hi } => {
                let y = py(0.0) - 8.0 * (i as f64 + 1.0);
                let _ = writeln!(
                    s,
                    r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="4"><title>{label}</title></line>"#,
                    px(*lo),
                    px(*hi)
                );
            }
            Shape::Ball { center, radius } => {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" {style}><title>{label}</title></circle>"#,
                    px(center[0]),
                    py(center[1]),
                    radius * k
                );
            }
            Shape::Polytope { vertices } => {
                let pts: Vec<String> = vertices.iter().map(|v| format!("{:.2},{:.2}", px(v[0]), py(v[1]))).collect();
                let _ = writeln!(s, r#"<polygon points="{}" {style}><title>{label}</title></polygon>"#, pts.join(" "));
            }
        }
    }
    s.push_str("</svg>\n");
    Some(s)
}
