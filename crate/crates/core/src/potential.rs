//! Discrete-potential surrogate for the Green function with pole at infinity:
//! greedy Leja points on a candidate set, the normalized log-product
//! evaluator V̂, the glued inside/outside function for closed curves, and
//! least-squares fitting of the local decay exponent of V̂ near the curve.
//!
//! V̂(z) = (1/N)·(log ∏_{j<N} |z − p_j| − log sup_K ∏_{j<N} |·− p_j|) tends to
//! the Green function of the candidate set as N grows; products are kept in
//! log space throughout.

use crate::curve::SampledCurve;
use crate::geometry::{point_in_polygon, Point};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Probes with V̂ below this floor are quantization noise and are excluded
/// from log-log fits.
pub const NOISE_FLOOR: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum PotentialError {
    #[error("need at least {needed} candidates, got {have}")]
    NotEnoughCandidates { needed: usize, have: usize },
    #[error("candidate points must be pairwise distinct")]
    DuplicateCandidates,
    #[error("order must satisfy 2 <= n <= {max}, got {n}")]
    InvalidOrder { n: usize, max: usize },
    #[error("the glued potential has a pole at the origin")]
    OriginPole,
    #[error("the glued potential needs a closed curve around the origin")]
    CurveNotClosed,
    #[error("probe distances must be >= 4 entries, strictly decreasing, in (0, 1]")]
    BadDistances,
    #[error("fit aborted: only {surviving} probes above the noise floor")]
    FitAborted { surviving: usize },
    #[error("no base point produced a usable fit")]
    AllFitsAborted,
    #[error("need at least one base point")]
    NoBasePoints,
}

/// Greedily chosen discrete-potential nodes plus the running sup of the
/// associated products over the candidate set. The sups are stored as
/// logarithms; the raw products overflow f64 at large orders.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LejaSet {
    points: Vec<Point>,
    log_sup_norms: Vec<f64>,
}

impl LejaSet {
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// log of max over candidates of ∏_{j≤k} |z − p_j|, for k = 0..N-1.
    pub fn log_sup_norms(&self) -> &[f64] {
        &self.log_sup_norms
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Greedy Leja construction: the first point maximizes the distance from the
/// candidate centroid, each next point maximizes the product of distances to
/// the points already chosen. Ties break toward the lowest candidate index,
/// so the construction is deterministic however the argmax is parallelized.
pub fn leja_points(candidates: &[Point], n: usize) -> Result<LejaSet, PotentialError> {
    if n < 2 {
        return Err(PotentialError::InvalidOrder {
            n,
            max: candidates.len(),
        });
    }
    if candidates.len() < n {
        return Err(PotentialError::NotEnoughCandidates {
            needed: n,
            have: candidates.len(),
        });
    }
    let mut sorted: Vec<(f64, f64)> = candidates.iter().map(|z| (z.re, z.im)).collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(PotentialError::DuplicateCandidates);
    }

    let m = candidates.len();
    let centroid = candidates.iter().sum::<Point>() / m as f64;
    let first = candidates
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| {
            (*a - centroid)
                .norm()
                .total_cmp(&(*b - centroid).norm())
                .then(j.cmp(i)) // lowest index wins ties
        })
        .map(|(i, _)| i)
        .expect("candidate set is nonempty");

    let mut selected = vec![false; m];
    let mut log_products = vec![0.0f64; m];
    let mut points = Vec::with_capacity(n);
    let mut log_sup_norms = Vec::with_capacity(n);
    let mut current = first;

    loop {
        selected[current] = true;
        let p = candidates[current];
        points.push(p);
        log_products
            .par_iter_mut()
            .zip(candidates.par_iter())
            .for_each(|(w, z)| *w += (z - p).norm().ln());
        let sup = log_products
            .par_iter()
            .cloned()
            .reduce(|| f64::NEG_INFINITY, f64::max);
        log_sup_norms.push(sup);

        if points.len() == n {
            break;
        }
        current = log_products
            .par_iter()
            .enumerate()
            .filter(|(i, _)| !selected[*i])
            .reduce(
                || (usize::MAX, &f64::NEG_INFINITY),
                |a, b| {
                    if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                        b
                    } else {
                        a
                    }
                },
            )
            .0;
    }

    Ok(LejaSet {
        points,
        log_sup_norms,
    })
}

/// Normalized discrete potential at order `n`: nonnegative, zero on the
/// candidate set (and at the Leja points themselves, where the raw product
/// vanishes and the clamp applies).
pub fn v_hat(z: Point, leja: &LejaSet, n: usize) -> Result<f64, PotentialError> {
    if n < 2 || n > leja.points.len() {
        return Err(PotentialError::InvalidOrder {
            n,
            max: leja.points.len(),
        });
    }
    let log_product: f64 = leja.points[..n].iter().map(|p| (z - p).norm().ln()).sum();
    let value = (log_product - leja.log_sup_norms[n - 1]) / n as f64;
    Ok(value.max(0.0))
}

/// Candidate set for the bounded side of a closed curve: the image of its
/// samples under the inversion z ↦ 1/z.
pub fn inverted_candidates(curve: &SampledCurve) -> Result<Vec<Point>, PotentialError> {
    curve
        .samples()
        .iter()
        .map(|s| {
            if s.z.norm() == 0.0 {
                Err(PotentialError::OriginPole)
            } else {
                Ok(s.z.inv())
            }
        })
        .collect()
}

/// The glued potential for a closed curve around the origin: V̂ of the outer
/// Leja set outside the curve, 0 on the curve (within sample tolerance), and
/// V̂ of the inverted-curve Leja set evaluated at 1/z inside.
pub fn tilde_v_hat(
    z: Point,
    curve: &SampledCurve,
    leja_outer: &LejaSet,
    leja_inner: &LejaSet,
    n: usize,
) -> Result<f64, PotentialError> {
    if z.norm() == 0.0 {
        return Err(PotentialError::OriginPole);
    }
    if !curve.is_closed() {
        return Err(PotentialError::CurveNotClosed);
    }
    let on_curve = curve.samples().iter().any(|s| (s.z - z).norm() <= 1e-12);
    if on_curve {
        return Ok(0.0);
    }
    let polygon = curve.points();
    if point_in_polygon(z, &polygon) {
        v_hat(z.inv(), leja_inner, n)
    } else {
        v_hat(z, leja_outer, n)
    }
}

/// Which side of an open curve the probe normal points to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalSide {
    Left,
    Right,
}

/// One local decay fit: log V̂ against log distance along the outward normal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LsFit {
    pub base_point: Point,
    pub direction: Point,
    /// Probe distances that survived the noise floor, decreasing.
    pub distances: Vec<f64>,
    /// V̂ at base + d·direction for the surviving probes.
    pub values: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

fn probe_direction(curve: &SampledCurve, idx: usize, side: NormalSide) -> Point {
    let samples = curve.samples();
    let m = samples.len();
    if !curve.is_closed() {
        // endpoints probe along the outward tangent continuation
        if idx == 0 {
            let d = samples[0].z - samples[1].z;
            return d / d.norm();
        }
        if idx == m - 1 {
            let d = samples[m - 1].z - samples[m - 2].z;
            return d / d.norm();
        }
    }
    let prev = samples[(idx + m - 1) % m].z;
    let next = samples[(idx + 1) % m].z;
    let chord = next - prev;
    let left = Point::new(-chord.im, chord.re);
    let mut normal = left / left.norm();
    if curve.is_closed() {
        // orient outward: flip if a short probe lands inside the polygon
        let base = samples[idx].z;
        let eps = 0.5 * (next - base).norm().min((base - prev).norm());
        let polygon = curve.points();
        if point_in_polygon(base + normal * eps, &polygon) {
            normal = -normal;
        }
    } else if side == NormalSide::Right {
        normal = -normal;
    }
    normal
}

fn check_distances(distances: &[f64]) -> Result<(), PotentialError> {
    if distances.len() < 4
        || distances.iter().any(|&d| !(d > 0.0 && d <= 1.0))
        || distances.windows(2).any(|w| w[0] <= w[1])
    {
        return Err(PotentialError::BadDistances);
    }
    Ok(())
}

/// Probes V̂ along the outward normal at the sample nearest `base_t` and fits
/// log V̂ = slope·log d + intercept. The slope estimates the local decay
/// exponent of the potential toward the curve.
pub fn ls_fit(
    curve: &SampledCurve,
    leja: &LejaSet,
    base_t: f64,
    distances: &[f64],
    side: NormalSide,
) -> Result<LsFit, PotentialError> {
    check_distances(distances)?;
    let idx = curve.nearest_index(base_t);
    let base = curve.samples()[idx].z;
    let direction = probe_direction(curve, idx, side);
    let order = leja.len();

    let mut kept_d = Vec::with_capacity(distances.len());
    let mut kept_v = Vec::with_capacity(distances.len());
    for &d in distances {
        let v = v_hat(base + direction * d, leja, order)?;
        if v >= NOISE_FLOOR {
            kept_d.push(d);
            kept_v.push(v);
        }
    }
    if kept_d.len() < 3 {
        return Err(PotentialError::FitAborted {
            surviving: kept_d.len(),
        });
    }

    let xs: Vec<f64> = kept_d.iter().map(|d| d.ln()).collect();
    let ys: Vec<f64> = kept_v.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };

    Ok(LsFit {
        base_point: base,
        direction,
        distances: kept_d,
        values: kept_v,
        slope,
        intercept,
        r_squared,
    })
}

/// Parameter of the curve sample farthest from every Leja node. The discrete
/// potential is least contaminated by the per-node log dips there, which
/// makes it the canonical probe base for decay fits on oracle geometries.
pub fn least_covered_base(curve: &SampledCurve, leja: &LejaSet) -> f64 {
    curve
        .samples()
        .iter()
        .map(|s| {
            let d = leja
                .points
                .iter()
                .map(|p| (s.z - p).norm())
                .fold(f64::INFINITY, f64::min);
            (s.t, d)
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(t, _)| t)
        .expect("curves are nonempty")
}

/// Per-base outcome of [`ls_exponent_estimate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LsFitRow {
    pub base_t: f64,
    pub fit: Option<LsFit>,
    pub note: Option<String>,
}

/// Decay-exponent summary over several base points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LsExponentEstimate {
    /// The largest fitted slope: the weakest local decay governs the
    /// Łojasiewicz–Siciak order of the set.
    pub exponent: f64,
    pub rows: Vec<LsFitRow>,
}

/// Runs [`ls_fit`] at every base point and reports the maximum slope together
/// with the per-point table. Aborted fits are recorded, not fatal, unless all
/// of them abort.
pub fn ls_exponent_estimate(
    curve: &SampledCurve,
    leja: &LejaSet,
    base_points: &[f64],
    distances: &[f64],
    side: NormalSide,
) -> Result<LsExponentEstimate, PotentialError> {
    if base_points.is_empty() {
        return Err(PotentialError::NoBasePoints);
    }
    let mut rows = Vec::with_capacity(base_points.len());
    let mut exponent: Option<f64> = None;
    for &base_t in base_points {
        match ls_fit(curve, leja, base_t, distances, side) {
            Ok(fit) => {
                exponent = Some(exponent.map_or(fit.slope, |e: f64| e.max(fit.slope)));
                rows.push(LsFitRow {
                    base_t,
                    fit: Some(fit),
                    note: None,
                });
            }
            Err(e @ PotentialError::FitAborted { .. }) => rows.push(LsFitRow {
                base_t,
                fit: None,
                note: Some(e.to_string()),
            }),
            Err(other) => return Err(other),
        }
    }
    match exponent {
        Some(exponent) => Ok(LsExponentEstimate { exponent, rows }),
        None => Err(PotentialError::AllFitsAborted),
    }
}
