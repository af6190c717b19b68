//! Minimal SVG 1.1 emission: the curve as a single stroked polyline (or
//! polygon when closed), viewBox fitted to the geometry with a 5% margin.
//! The y axis is flipped so curves render in mathematical orientation.

use minset::geometry::Point;

pub fn curve_svg(points: &[Point], closed: bool, stroke_width: f64) -> String {
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in points {
        min_x = min_x.min(p.re);
        max_x = max_x.max(p.re);
        min_y = min_y.min(-p.im);
        max_y = max_y.max(-p.im);
    }
    let margin = 0.05 * (max_x - min_x).max(max_y - min_y).max(stroke_width);
    let (x0, y0) = (min_x - margin, min_y - margin);
    let (w, h) = (max_x - min_x + 2.0 * margin, max_y - min_y + 2.0 * margin);

    let coords: Vec<String> = points
        .iter()
        .map(|p| format!("{},{}", p.re, -p.im))
        .collect();
    let tag = if closed { "polygon" } else { "polyline" };
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0} {y0} {w} {h}\">\n\
         <{tag} fill=\"none\" stroke=\"black\" stroke-width=\"{stroke_width}\" points=\"{}\"/>\n\
         </svg>\n",
        coords.join(" ")
    )
}
