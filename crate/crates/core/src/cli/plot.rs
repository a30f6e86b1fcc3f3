use crate::polytope::PolygonChain;
use num_traits::ToPrimitive;
use std::fmt::Write;

const W: f64 = 480.0;
const H: f64 = 360.0;
const MARGIN: f64 = 40.0;

fn to_f(c: &PolygonChain) -> Vec<(f64, f64)> {
    c.vertices().iter().map(|(x, y)| (x.to_f64().unwrap_or(0.0), y.to_f64().unwrap_or(0.0))).collect()
}

/// Standalone SVG with the Newton polygon (solid) over the Hodge polygon (dashed).
pub fn polygons_svg(np: &PolygonChain, hp: &PolygonChain) -> String {
    let (a, b) = (to_f(np), to_f(hp));
    let xmax = a.iter().chain(&b).map(|p| p.0).fold(1.0, f64::max);
    let ymax = a.iter().chain(&b).map(|p| p.1).fold(1.0, f64::max);
    let sx = |x: f64| MARGIN + x / xmax * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - y / ymax * (H - 2.0 * MARGIN);
    let path = |pts: &[(f64, f64)]| pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    let _ = writeln!(s, r##"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"##);
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="white"/>"##);
    let _ = writeln!(
        s,
        r##"<g stroke="#888" stroke-width="1"><line x1="{0}" y1="{1}" x2="{2}" y2="{1}"/><line x1="{0}" y1="{1}" x2="{0}" y2="{3}"/></g>"##,
        sx(0.0),
        sy(0.0),
        sx(xmax),
        sy(ymax)
    );
    let _ = writeln!(s, r##"<polyline fill="none" stroke="#c33" stroke-width="2" stroke-dasharray="6 4" points="{}"/>"##, path(&b));
    let _ = writeln!(s, r##"<polyline fill="none" stroke="#236" stroke-width="2" points="{}"/>"##, path(&a));
    for &(x, y) in &a {
        let _ = writeln!(s, r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="#236"/>"##, sx(x), sy(y));
    }
    let _ = writeln!(s, r##"<text x="{}" y="20" font-family="sans-serif" font-size="13">NP (solid) and HP (dashed)</text>"##, MARGIN);
    s.push_str("</svg>\n");
    s
}
