//! Koch curves of base angle θ: the generating similarity pair, dyadic node
//! sets, the natural parametrization φ, and the closed Jordan curve obtained
//! by replacing the edges of a regular polygon with Koch copies.
//!
//! The two generating similarities are orientation-reversing: each subdivision
//! triangle is erected on a lateral side of its predecessor, pointing into
//! it, so the triangles nest and their intersection is the curve. Two
//! independent evaluations of φ are provided: the production route composes
//! the similarities along the binary address of the parameter (exact on
//! dyadic parameters), and a geometric cross-check iterates perpendicular
//! projections onto the subdivided triangles.

use crate::curve::{Sample, SampledCurve};
use crate::geometry::{cross, dot, Point};
use std::f64::consts::{FRAC_PI_4, PI};
use thiserror::Error;

/// Cap on subdivision level (2^level + 1 nodes must stay addressable and
/// λ^level well above machine epsilon).
pub const MAX_LEVEL: u32 = 24;

/// Default address depth for [`phi`]: one similarity per mantissa bit of the
/// parameter, so dyadic doubles are evaluated exactly.
pub const DEFAULT_PHI_DEPTH: u32 = 53;

#[derive(Debug, Error, PartialEq)]
pub enum KochError {
    #[error("base angle {0} is outside (0, π/4]")]
    InvalidAngle(f64),
    #[error("level {level} exceeds the construction cap {max}")]
    LevelTooLarge { level: u32, max: u32 },
    #[error("parameter {0} is outside the admissible range")]
    ParameterOutOfRange(f64),
    #[error("iteration depth must be at least 1")]
    InvalidDepth,
    #[error("polygon needs at least 3 sides, got {0}")]
    TooFewSides(u32),
}

/// Koch base angle θ, radians, constrained to (0, π/4].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle(f64);

impl Angle {
    pub fn new(theta: f64) -> Result<Self, KochError> {
        if theta.is_finite() && theta > 0.0 && theta <= FRAC_PI_4 {
            Ok(Angle(theta))
        } else {
            Err(KochError::InvalidAngle(theta))
        }
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Contraction ratio λ = 1/(2cosθ) shared by both similarities.
    pub fn lambda(self) -> f64 {
        0.5 / self.0.cos()
    }

    /// Apex of the generator triangle on [0, 1]: the point 1/2 + i·tan(θ)/2.
    ///
    /// As a complex multiplier this equals λ·e^{iθ}; building it from the
    /// exact real part 1/2 keeps dyadic evaluation exact.
    pub fn apex(self) -> Point {
        Point::new(0.5, 0.5 * self.0.tan())
    }
}

/// Plane similarity `z ↦ m·z + b` or, when it reverses orientation,
/// `z ↦ m·conj(z) + b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similarity {
    multiplier: Point,
    translation: Point,
    reflects: bool,
}

impl Similarity {
    pub fn direct(scale: f64, rotation: f64, translation: Point) -> Self {
        Similarity {
            multiplier: Point::from_polar(scale, rotation),
            translation,
            reflects: false,
        }
    }

    pub fn from_multiplier(multiplier: Point, translation: Point, reflects: bool) -> Self {
        Similarity {
            multiplier,
            translation,
            reflects,
        }
    }

    pub fn apply(&self, z: Point) -> Point {
        let w = if self.reflects { z.conj() } else { z };
        self.multiplier * w + self.translation
    }

    /// Composition `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &Similarity) -> Similarity {
        let (im, ib) = if self.reflects {
            (inner.multiplier.conj(), inner.translation.conj())
        } else {
            (inner.multiplier, inner.translation)
        };
        Similarity {
            multiplier: self.multiplier * im,
            translation: self.multiplier * ib + self.translation,
            reflects: self.reflects != inner.reflects,
        }
    }

    pub fn scale(&self) -> f64 {
        self.multiplier.norm()
    }

    pub fn rotation(&self) -> f64 {
        self.multiplier.arg()
    }

    pub fn translation(&self) -> Point {
        self.translation
    }

    pub fn reflects(&self) -> bool {
        self.reflects
    }
}

/// The two similarities mapping the base segment [0, 1] onto the lateral
/// sides of the generator triangle: S₁ onto [0 → apex], S₂ onto [apex → 1].
/// Both reflect, so the subdivision triangles they generate point into their
/// parent and the construction nests.
pub fn similarities(angle: Angle) -> (Similarity, Similarity) {
    let omega = angle.apex();
    (
        Similarity::from_multiplier(omega, Point::new(0.0, 0.0), true),
        Similarity::from_multiplier(omega.conj(), omega, true),
    )
}

/// Level-n node set of Γ_θ: the 2ⁿ + 1 images of {0, 1} under all words of
/// length n over {S₁, S₂}, in parameter order.
#[derive(Debug, Clone)]
pub struct NodeSet {
    angle: Angle,
    level: u32,
    nodes: Vec<Point>,
}

impl NodeSet {
    pub fn angle(&self) -> Angle {
        self.angle
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    /// The open curve through the nodes with its natural dyadic parameters
    /// t_k = k/2^level.
    pub fn to_curve(&self) -> SampledCurve {
        let denom = (1u64 << self.level) as f64;
        let samples = self
            .nodes
            .iter()
            .enumerate()
            .map(|(k, &z)| Sample::new(k as f64 / denom, z))
            .collect();
        SampledCurve::new(samples, false).expect("node sets form valid open curves")
    }
}

/// Builds the level-n nodes breadth-first: the level n+1 list is S₁ applied
/// to the level-n list followed by S₂ applied to it (the shared image of the
/// apex stored once). This is the word construction in parameter order.
pub fn nodes(angle: Angle, level: u32) -> Result<NodeSet, KochError> {
    if level > MAX_LEVEL {
        return Err(KochError::LevelTooLarge {
            level,
            max: MAX_LEVEL,
        });
    }
    let (s1, s2) = similarities(angle);
    let mut nodes = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)];
    for _ in 0..level {
        let mut next = Vec::with_capacity(2 * nodes.len() - 1);
        next.extend(nodes.iter().map(|&z| s1.apply(z)));
        next.extend(nodes.iter().skip(1).map(|&z| s2.apply(z)));
        nodes = next;
    }
    Ok(NodeSet {
        angle,
        level,
        nodes,
    })
}

/// Address-map evaluation of the natural parametrization: expand `t` in
/// binary and compose the corresponding similarities, then apply the
/// composition to the anchor 0. Exact on dyadic `t` once `depth` reaches the
/// last 1-bit; otherwise the error is at most λ^depth (the curve lies in the
/// generator triangle, whose diameter is the unit base).
pub fn phi(angle: Angle, t: f64, depth: u32) -> Result<Point, KochError> {
    if depth == 0 {
        return Err(KochError::InvalidDepth);
    }
    if !(0.0..=1.0).contains(&t) || !t.is_finite() {
        return Err(KochError::ParameterOutOfRange(t));
    }
    if t == 1.0 {
        return Ok(Point::new(1.0, 0.0));
    }
    let omega = angle.apex();
    // running composition C(z) = m·z + b or m·conj(z) + b
    let mut mult = Point::new(1.0, 0.0);
    let mut trans = Point::new(0.0, 0.0);
    let mut reflected = false;
    let mut x = t;
    for _ in 0..depth {
        x *= 2.0;
        let (s_mult, s_trans) = if x >= 1.0 {
            x -= 1.0;
            (omega.conj(), omega)
        } else {
            (omega, Point::new(0.0, 0.0))
        };
        // compose C ∘ S where S(z) = s_mult·conj(z) + s_trans
        let (sm, sb) = if reflected {
            (s_mult.conj(), s_trans.conj())
        } else {
            (s_mult, s_trans)
        };
        trans += mult * sb;
        mult *= sm;
        reflected = !reflected;
        if x == 0.0 {
            break; // remaining maps all fix the anchor
        }
    }
    Ok(trans)
}

/// The projection construction of φ: starting from (t, 0) on the base
/// segment, repeatedly replace the point by the second intersection of the
/// perpendicular through it with the active triangle, i.e. its perpendicular
/// projection onto the left or right lateral side. The lateral side becomes
/// the base of the next triangle, whose apex points into the parent. A point
/// that lands on the common vertex of the two subtriangles projects onto
/// itself from then on.
pub fn phi_projection(angle: Angle, t: f64, level: u32) -> Result<Point, KochError> {
    if level == 0 {
        return Err(KochError::InvalidDepth);
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(KochError::ParameterOutOfRange(t));
    }
    let omega = angle.apex();
    let mut p = Point::new(0.0, 0.0);
    let mut q = Point::new(1.0, 0.0);
    let mut apex = omega;
    let mut x = Point::new(t, 0.0);
    for _ in 0..level {
        let base = q - p;
        let along = dot(x - p, base) / dot(base, base);
        // project onto the nearer lateral side; along == 1/2 lands exactly on
        // the apex and stays there
        let (np, nq, opposite) = if along < 0.5 {
            let side = apex - p;
            let v = dot(x - p, base) / dot(side, base);
            x = p + side * v;
            (p, apex, q)
        } else {
            let side = q - apex;
            let v = dot(x - apex, base) / dot(side, base);
            x = apex + side * v;
            (apex, q, p)
        };
        // child apex lies on the parent-interior side of the new base, the
        // side where the opposite parent vertex sits
        let new_base = nq - np;
        let candidate = np + new_base * omega;
        let same_side = cross(new_base, candidate - np) * cross(new_base, opposite - np) > 0.0;
        apex = if same_side {
            candidate
        } else {
            np + new_base * omega.conj()
        };
        p = np;
        q = nq;
    }
    Ok(x)
}

/// Closed Jordan curve Π_θ: each edge of a regular `sides`-gon (centered at
/// the origin, unit side length, counterclockwise) carries a level-`level`
/// Koch copy with the bumps facing outward. Parameter t runs uniformly, edge
/// j covering [j/sides, (j+1)/sides]; the shared endpoint of consecutive
/// edges is stored once, so the curve has sides·2^level samples.
pub fn pi_theta(angle: Angle, sides: u32, level: u32) -> Result<SampledCurve, KochError> {
    if sides < 3 {
        return Err(KochError::TooFewSides(sides));
    }
    let base = nodes(angle, level)?;
    let n = sides as usize;
    let per_edge = 1usize << level;
    let circumradius = 0.5 / (PI / sides as f64).sin();
    let vertex = |j: usize| Point::from_polar(circumradius, 2.0 * PI * (j % n) as f64 / n as f64);

    let total = n * per_edge;
    let mut samples = Vec::with_capacity(total);
    for j in 0..n {
        let a = vertex(j);
        let edge = vertex(j + 1) - a;
        for (k, node) in base.nodes().iter().take(per_edge).enumerate() {
            // conjugation flips the bumps to the right of the edge direction,
            // which is the outside of a counterclockwise polygon
            let z = a + edge * node.conj();
            let t = (j * per_edge + k) as f64 / total as f64;
            samples.push(Sample::new(t, z));
        }
    }
    Ok(SampledCurve::new(samples, true).expect("polygon assembly yields a valid closed curve"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_6;

    #[test]
    fn angle_rejects_out_of_range() {
        assert!(Angle::new(0.0).is_err());
        assert!(Angle::new(-0.1).is_err());
        assert!(Angle::new(FRAC_PI_4 + 1e-12).is_err());
        assert!(Angle::new(f64::NAN).is_err());
        assert!(Angle::new(FRAC_PI_4).is_ok());
    }

    #[test]
    fn similarities_at_quarter_pi() {
        let angle = Angle::new(FRAC_PI_4).unwrap();
        let (s1, s2) = similarities(angle);
        assert!((s1.scale() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s2.scale() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let apex = s1.apply(Point::new(1.0, 0.0));
        assert!((apex - Point::new(0.5, 0.5)).norm() < 1e-15);
        // S₂ sends [0,1] onto [apex → 1]
        assert!((s2.apply(Point::new(0.0, 0.0)) - apex).norm() < 1e-15);
        assert!((s2.apply(Point::new(1.0, 0.0)) - Point::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn similarities_flat_limit() {
        let angle = Angle::new(1e-9).unwrap();
        let (s1, _) = similarities(angle);
        assert!((s1.scale() - 0.5).abs() < 1e-12);
        let apex = angle.apex();
        assert!(apex.im < 1e-9);
        assert!((apex.re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn similarities_at_pi_six() {
        let angle = Angle::new(FRAC_PI_6).unwrap();
        let (s1, _) = similarities(angle);
        // λ = 1/(2cos(π/6)) = 1/√3
        assert!((s1.scale() - 1.0 / 3.0f64.sqrt()).abs() < 1e-15);
        let apex = angle.apex();
        assert!((apex.re - 0.5).abs() < 1e-15);
        assert!((apex.im - 0.5 * FRAC_PI_6.tan()).abs() < 1e-15);
        assert!((apex.im - 0.288_675_134_594_812_9).abs() < 1e-12);
    }

    #[test]
    fn subdivision_triangles_nest() {
        // the images of the generator triangle under S₁, S₂ stay inside it
        let angle = Angle::new(0.3).unwrap();
        let (s1, s2) = similarities(angle);
        let apex = angle.apex();
        let tri = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), apex];
        let inside = |z: Point| {
            // barycentric sign test against the generator triangle
            let d1 = cross(tri[1] - tri[0], z - tri[0]);
            let d2 = cross(tri[2] - tri[1], z - tri[1]);
            let d3 = cross(tri[0] - tri[2], z - tri[2]);
            (d1 >= -1e-12) == (d2 >= -1e-12) && (d2 >= -1e-12) == (d3 >= -1e-12)
        };
        for v in tri {
            assert!(inside(s1.apply(v)), "S1 image of {v} escapes");
            assert!(inside(s2.apply(v)), "S2 image of {v} escapes");
        }
    }

    #[test]
    fn nodes_levels_zero_and_one() {
        let angle = Angle::new(0.3).unwrap();
        let level0 = nodes(angle, 0).unwrap();
        assert_eq!(level0.nodes().len(), 2);
        assert_eq!(level0.nodes()[0], Point::new(0.0, 0.0));
        assert_eq!(level0.nodes()[1], Point::new(1.0, 0.0));

        let level1 = nodes(angle, 1).unwrap();
        assert_eq!(level1.nodes().len(), 3);
        assert!((level1.nodes()[1] - angle.apex()).norm() < 1e-15);
    }

    #[test]
    fn nodes_level_two_matches_word_composition() {
        let angle = Angle::new(FRAC_PI_6).unwrap();
        let (s1, _) = similarities(angle);
        let level2 = nodes(angle, 2).unwrap();
        // node 1 is the image of 1 under the word S₁S₁
        let expected = s1.compose(&s1).apply(Point::new(1.0, 0.0));
        assert!((level2.nodes()[1] - expected).norm() < 1e-15);
        // S₁S₁ cancels the two reflections into a pure scaling by λ²
        let lambda = angle.lambda();
        assert!((level2.nodes()[1] - Point::new(lambda * lambda, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn middle_thirds_limit_matches_classic_koch() {
        // for θ with cosθ = 3/(2√3)... the familiar check is simpler: at any
        // θ, level 2 begins with a segment on the base of length λ²
        let angle = Angle::new(0.25).unwrap();
        let level2 = nodes(angle, 2).unwrap();
        let first = level2.nodes()[1];
        assert!(
            first.im.abs() < 1e-15,
            "first level-2 node {first} not on the base"
        );
    }

    #[test]
    fn nodes_rejects_huge_level() {
        let angle = Angle::new(0.1).unwrap();
        assert!(matches!(
            nodes(angle, MAX_LEVEL + 1),
            Err(KochError::LevelTooLarge { .. })
        ));
    }

    #[test]
    fn phi_fixes_endpoints_and_apex() {
        let angle = Angle::new(0.2).unwrap();
        assert_eq!(
            phi(angle, 0.0, DEFAULT_PHI_DEPTH).unwrap(),
            Point::new(0.0, 0.0)
        );
        assert_eq!(
            phi(angle, 1.0, DEFAULT_PHI_DEPTH).unwrap(),
            Point::new(1.0, 0.0)
        );
        let mid = phi(angle, 0.5, DEFAULT_PHI_DEPTH).unwrap();
        assert_eq!(mid, angle.apex());
    }

    #[test]
    fn phi_rejects_bad_inputs() {
        let angle = Angle::new(0.2).unwrap();
        assert!(matches!(
            phi(angle, -0.1, 53),
            Err(KochError::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            phi(angle, 1.5, 53),
            Err(KochError::ParameterOutOfRange(_))
        ));
        assert!(matches!(phi(angle, 0.5, 0), Err(KochError::InvalidDepth)));
    }

    #[test]
    fn phi_hits_dyadic_nodes_exactly() {
        let angle = Angle::new(0.27).unwrap();
        for level in [1u32, 3, 6] {
            let set = nodes(angle, level).unwrap();
            let denom = (1u64 << level) as f64;
            for (k, &node) in set.nodes().iter().enumerate() {
                let value = phi(angle, k as f64 / denom, DEFAULT_PHI_DEPTH).unwrap();
                assert!(
                    (value - node).norm() < 1e-13,
                    "level {level} node {k}: {value} vs {node}"
                );
            }
        }
    }

    #[test]
    fn projection_apex_is_stationary() {
        let angle = Angle::new(0.15).unwrap();
        for level in [1u32, 2, 7, 40] {
            let x = phi_projection(angle, 0.5, level).unwrap();
            assert_eq!(x, angle.apex(), "level {level}");
        }
    }

    #[test]
    fn projection_rejects_boundary_parameters() {
        let angle = Angle::new(0.15).unwrap();
        assert!(matches!(
            phi_projection(angle, 0.0, 4),
            Err(KochError::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            phi_projection(angle, 1.0, 4),
            Err(KochError::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            phi_projection(angle, 0.5, 0),
            Err(KochError::InvalidDepth)
        ));
    }

    #[test]
    fn projection_reaches_dyadic_nodes() {
        let angle = Angle::new(0.31).unwrap();
        let level = 5u32;
        let set = nodes(angle, level).unwrap();
        let denom = (1u64 << level) as f64;
        for (k, &node) in set.nodes().iter().enumerate() {
            if k == 0 || k == set.nodes().len() - 1 {
                continue; // projection construction is defined on (0, 1)
            }
            let value = phi_projection(angle, k as f64 / denom, level).unwrap();
            assert!((value - node).norm() < 1e-12, "node {k}: {value} vs {node}");
        }
    }

    #[test]
    fn pi_theta_level_zero_is_regular_polygon() {
        let angle = Angle::new(0.1).unwrap();
        let hexagon = pi_theta(angle, 6, 0).unwrap();
        assert_eq!(hexagon.len(), 6);
        assert!(hexagon.is_closed());
        // unit side length
        let pts = hexagon.points();
        for i in 0..6 {
            let side = (pts[(i + 1) % 6] - pts[i]).norm();
            assert!((side - 1.0).abs() < 1e-12, "side {i} length {side}");
        }
    }

    #[test]
    fn pi_theta_sample_count() {
        let angle = Angle::new(0.2).unwrap();
        for (sides, level) in [(3u32, 2u32), (12, 3), (5, 0)] {
            let curve = pi_theta(angle, sides, level).unwrap();
            assert_eq!(curve.len(), (sides as usize) << level);
        }
    }

    #[test]
    fn pi_theta_rejects_degenerate_polygon() {
        let angle = Angle::new(0.2).unwrap();
        assert!(matches!(
            pi_theta(angle, 2, 1),
            Err(KochError::TooFewSides(2))
        ));
    }

    #[test]
    fn pi_theta_corner_angle_opens_by_twice_the_segment_elevation() {
        let theta = 0.1;
        let angle = Angle::new(theta).unwrap();
        let sides = 12u32;

        // At odd levels the first segment of each copy is elevated by θ, so
        // the interior angle at a polygon vertex is π(s-2)/s + 2θ; at even
        // levels the first segment lies on the straight edge (S₁S₁ cancels
        // the two reflections into a pure scaling).
        for (level, elevation) in [(1u32, theta), (2, 0.0), (3, theta), (4, 0.0)] {
            let curve = pi_theta(angle, sides, level).unwrap();
            let pts = curve.points();
            let per_edge = 1usize << level;
            let expected = PI * (sides as f64 - 2.0) / sides as f64 + 2.0 * elevation;
            let v = pts[0];
            let u = pts[pts.len() - 1] - v;
            let w = pts[1] - v;
            let measured = (dot(u, w) / (u.norm() * w.norm())).acos();
            assert!(
                (measured - expected).abs() < 1e-10,
                "level {level}: measured {measured}, expected {expected}"
            );
            // first-segment elevation against the straight edge direction
            let edge_dir = pts[per_edge] - pts[0];
            let first_seg = pts[1] - pts[0];
            let measured_elev = cross(first_seg, edge_dir)
                .atan2(dot(first_seg, edge_dir))
                .abs();
            assert!(
                (measured_elev - elevation).abs() < 1e-12,
                "level {level}: elevation {measured_elev}"
            );
        }
    }
}
