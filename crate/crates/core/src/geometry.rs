//! Small planar-geometry toolbox: points as complex numbers, point-in-polygon,
//! convex hulls and set diameters.

use num_complex::Complex64;

/// Points in the plane are complex numbers; similarities become affine maps
/// `z ↦ a·z + b` and the inversion `z ↦ 1/z` is a field operation.
pub type Point = Complex64;

/// 2D cross product (z-component of the wedge of `a` and `b`).
#[inline]
pub fn cross(a: Point, b: Point) -> f64 {
    a.re * b.im - a.im * b.re
}

/// 2D dot product.
#[inline]
pub fn dot(a: Point, b: Point) -> f64 {
    a.re * b.re + a.im * b.im
}

/// Even-odd ray-casting test. `poly` lists the vertices of a closed polygon
/// without repeating the first vertex at the end. Points exactly on the
/// boundary may land on either side; callers that care must check proximity
/// to the boundary separately.
pub fn point_in_polygon(p: Point, poly: &[Point]) -> bool {
    let mut inside = false;
    let mut j = poly.len() - 1;
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[j]);
        if (a.im > p.im) != (b.im > p.im) {
            let x_cross = a.re + (p.im - a.im) * (b.re - a.re) / (b.im - a.im);
            if p.re < x_cross {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// Monotone-chain convex hull. Returns the hull vertices in counterclockwise
/// order without repetition; collinear points on an edge are dropped, so the
/// result is strictly convex. Degenerate inputs yield fewer than 3 vertices.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup_by(|a, b| a.re == b.re && a.im == b.im);
    let n = pts.len();
    if n <= 2 {
        return pts;
    }

    let mut hull: Vec<Point> = Vec::with_capacity(2 * n);
    // lower hull
    for &p in &pts {
        while hull.len() >= 2
            && cross(
                hull[hull.len() - 1] - hull[hull.len() - 2],
                p - hull[hull.len() - 2],
            ) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    // upper hull
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross(
                hull[hull.len() - 1] - hull[hull.len() - 2],
                p - hull[hull.len() - 2],
            ) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Diameter (maximum pairwise distance) of a point set, via convex hull plus
/// the antipodal-pair walk. Exact for the sample set, O(n log n).
pub fn set_diameter(points: &[Point]) -> f64 {
    let hull = convex_hull(points);
    let m = hull.len();
    match m {
        0 | 1 => 0.0,
        2 => (hull[1] - hull[0]).norm(),
        _ => {
            let mut best = 0.0f64;
            let mut j = 1;
            for i in 0..m {
                let i1 = (i + 1) % m;
                let edge = hull[i1] - hull[i];
                while cross(edge, hull[(j + 1) % m] - hull[j]) > 0.0 {
                    j = (j + 1) % m;
                }
                best = best.max((hull[j] - hull[i]).norm());
                best = best.max((hull[j] - hull[i1]).norm());
            }
            best
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_diameter(points: &[Point]) -> f64 {
        let mut best = 0.0f64;
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                best = best.max((points[i] - points[j]).norm());
            }
        }
        best
    }

    #[test]
    fn hull_diameter_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..50 {
            let n = 3 + (trial % 40);
            let pts: Vec<Point> = (0..n)
                .map(|_| Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let fast = set_diameter(&pts);
            let brute = brute_diameter(&pts);
            assert!(
                (fast - brute).abs() < 1e-12,
                "trial {trial}: calipers {fast} vs brute {brute}"
            );
        }
    }

    #[test]
    fn hull_diameter_degenerate_inputs() {
        let p = Point::new(0.5, -0.25);
        assert_eq!(set_diameter(&[p]), 0.0);
        // collinear set: hull collapses to the two endpoints
        let line: Vec<Point> = (0..20).map(|k| Point::new(k as f64 * 0.1, 0.0)).collect();
        assert!((set_diameter(&line) - 1.9).abs() < 1e-12);
    }

    #[test]
    fn point_in_polygon_square() {
        let square = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        assert!(point_in_polygon(Point::new(0.5, 0.5), &square));
        assert!(!point_in_polygon(Point::new(1.5, 0.5), &square));
        assert!(!point_in_polygon(Point::new(-0.1, 0.99), &square));
    }

    #[test]
    fn point_in_polygon_concave() {
        // L-shape: the notch is outside
        let poly = [
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 2.0),
            Point::new(0.0, 2.0),
        ];
        assert!(point_in_polygon(Point::new(0.5, 1.5), &poly));
        assert!(!point_in_polygon(Point::new(1.5, 1.5), &poly));
        assert!(point_in_polygon(Point::new(1.5, 0.5), &poly));
    }
}
