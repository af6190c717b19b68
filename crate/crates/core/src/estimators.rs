//! Empirical Hölder-ratio and Ahlfors three-point estimators on sampled
//! curves. They measure the quantities the analytic pipeline bounds, so every
//! estimate is a lower bound of the true constant: only sample pairs/triples
//! are inspected, never the continuum.
//!
//! Determinism: the pair/triple index space is split into fixed chunks, each
//! chunk draws from its own counter-derived ChaCha stream, and reductions are
//! min/max with index tie-breaking. Results are identical for a fixed seed
//! regardless of how many rayon workers are available.

use crate::curve::SampledCurve;
use crate::geometry::{set_diameter, Point};
use crate::koch::{nodes, Angle, KochError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Largest sample count for which exhaustive enumeration is allowed
/// (level-12 node sets). Beyond this, use `Mode::Sampled`.
pub const EXHAUSTIVE_MAX_SAMPLES: usize = 4097;

/// Draws per deterministic chunk in sampled mode.
const DRAW_CHUNK: u64 = 4096;

#[derive(Debug, Error, PartialEq)]
pub enum EstimateError {
    #[error("Hölder exponent must lie in (0, 1], got {0}")]
    GammaOutOfRange(f64),
    #[error("sampled mode needs a positive draw count")]
    EmptySampleBudget,
    #[error("{samples} samples exceed the exhaustive cap {max}; use sampled mode")]
    ExhaustiveTooLarge { samples: usize, max: usize },
    #[error("delta must be positive and finite, got {0}")]
    InvalidDelta(f64),
    #[error("no admissible triple with |z1-z3| <= {delta}")]
    NoAdmissibleTriple { delta: f64 },
    #[error("curve needs at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("sweep levels must be nonempty and strictly increasing")]
    BadLevels,
    #[error(transparent)]
    Koch(#[from] KochError),
}

/// How the pair/triple space is explored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, count: u64 },
}

/// Extremes of |z_i - z_j| / |t_i - t_j|^γ over sample pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolderEstimate {
    pub gamma_used: f64,
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// Parameter pair attaining the minimum ratio.
    pub argmin_pair: (f64, f64),
    /// Parameter pair attaining the maximum ratio.
    pub argmax_pair: (f64, f64),
    pub pair_count: u64,
}

/// Maximum of (|z1-z2| + |z2-z3|)/|z1-z3| over admissible triples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AhlforsEstimate {
    pub c_hat: f64,
    pub delta_used: f64,
    /// Parameters (t1, t2, t3) of the triple attaining the maximum.
    pub arg_triple: (f64, f64, f64),
    /// Admissible triples actually evaluated.
    pub triple_count: u64,
}

#[derive(Clone, Copy)]
struct PairBest {
    ratio: f64,
    i: u32,
    j: u32,
}

impl PairBest {
    fn lex_before(&self, other: &PairBest) -> bool {
        (self.i, self.j) < (other.i, other.j)
    }
}

#[derive(Clone, Copy)]
struct PairExtremes {
    min: PairBest,
    max: PairBest,
    count: u64,
}

impl PairExtremes {
    fn single(best: PairBest) -> Option<Self> {
        Some(PairExtremes {
            min: best,
            max: best,
            count: 1,
        })
    }

    fn merge(a: Option<Self>, b: Option<Self>) -> Option<Self> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(PairExtremes {
                min: if b.min.ratio < a.min.ratio
                    || (b.min.ratio == a.min.ratio && b.min.lex_before(&a.min))
                {
                    b.min
                } else {
                    a.min
                },
                max: if b.max.ratio > a.max.ratio
                    || (b.max.ratio == a.max.ratio && b.max.lex_before(&a.max))
                {
                    b.max
                } else {
                    a.max
                },
                count: a.count + b.count,
            }),
        }
    }
}

fn pair_ratio(samples: &[crate::curve::Sample], gamma: f64, i: usize, j: usize) -> f64 {
    let dz = (samples[i].z - samples[j].z).norm();
    let dt = (samples[i].t - samples[j].t).abs();
    dz / dt.powf(gamma)
}

/// Measures the bi-Hölder ratio extremes of a sampled curve at exponent
/// `gamma`. Exhaustive mode inspects all pairs (guarded); sampled mode draws
/// `count` pairs from a seeded generator.
pub fn empirical_holder(
    curve: &SampledCurve,
    gamma: f64,
    mode: Mode,
) -> Result<HolderEstimate, EstimateError> {
    if !(gamma.is_finite() && gamma > 0.0 && gamma <= 1.0) {
        return Err(EstimateError::GammaOutOfRange(gamma));
    }
    let samples = curve.samples();
    let m = samples.len();

    let extremes = match mode {
        Mode::Exhaustive => {
            if m > EXHAUSTIVE_MAX_SAMPLES {
                return Err(EstimateError::ExhaustiveTooLarge {
                    samples: m,
                    max: EXHAUSTIVE_MAX_SAMPLES,
                });
            }
            (0..m - 1)
                .into_par_iter()
                .map(|i| {
                    let mut row: Option<PairExtremes> = None;
                    for j in i + 1..m {
                        let best = PairBest {
                            ratio: pair_ratio(samples, gamma, i, j),
                            i: i as u32,
                            j: j as u32,
                        };
                        row = PairExtremes::merge(row, PairExtremes::single(best));
                    }
                    row
                })
                .reduce(|| None, PairExtremes::merge)
        }
        Mode::Sampled { seed, count } => {
            if count == 0 {
                return Err(EstimateError::EmptySampleBudget);
            }
            let chunks = count.div_ceil(DRAW_CHUNK);
            (0..chunks)
                .into_par_iter()
                .map(|chunk| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(chunk);
                    let draws = DRAW_CHUNK.min(count - chunk * DRAW_CHUNK);
                    let mut acc: Option<PairExtremes> = None;
                    for _ in 0..draws {
                        let a = rng.gen_range(0..m);
                        let mut b = rng.gen_range(0..m - 1);
                        if b >= a {
                            b += 1;
                        }
                        let (i, j) = (a.min(b), a.max(b));
                        let best = PairBest {
                            ratio: pair_ratio(samples, gamma, i, j),
                            i: i as u32,
                            j: j as u32,
                        };
                        acc = PairExtremes::merge(acc, PairExtremes::single(best));
                    }
                    acc
                })
                .reduce(|| None, PairExtremes::merge)
        }
    };

    let ext = extremes.expect("curves have at least one sample pair");
    Ok(HolderEstimate {
        gamma_used: gamma,
        ratio_min: ext.min.ratio,
        ratio_max: ext.max.ratio,
        argmin_pair: (samples[ext.min.i as usize].t, samples[ext.min.j as usize].t),
        argmax_pair: (samples[ext.max.i as usize].t, samples[ext.max.j as usize].t),
        pair_count: ext.count,
    })
}

#[derive(Clone, Copy)]
struct TripleBest {
    ratio: f64,
    i: u32,
    j: u32,
    k: u32,
    count: u64,
}

fn merge_triples(a: Option<TripleBest>, b: Option<TripleBest>) -> Option<TripleBest> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            let mut best =
                if b.ratio > a.ratio || (b.ratio == a.ratio && (b.i, b.j, b.k) < (a.i, a.j, a.k)) {
                    b
                } else {
                    a
                };
            best.count = a.count + b.count;
            Some(best)
        }
    }
}

/// Which of the two arcs between samples `i` and `k` of a closed curve has
/// smaller diameter at sample resolution. Ties go to the arc with fewer
/// samples, then to the parameter-inner arc. Returns true when the inner arc
/// (indices i..=k) is chosen.
fn inner_arc_is_smaller(points: &[Point], i: usize, k: usize) -> bool {
    let m = points.len();
    let inner = &points[i..=k];
    let outer: Vec<Point> = (k..=i + m).map(|idx| points[idx % m]).collect();
    let d_inner = set_diameter(inner);
    let d_outer = set_diameter(&outer);
    if d_inner != d_outer {
        return d_inner < d_outer;
    }
    inner.len() <= outer.len()
}

fn triple_ratio(points: &[Point], i: usize, j: usize, k: usize, d13: f64) -> f64 {
    ((points[i] - points[j]).norm() + (points[j] - points[k]).norm()) / d13
}

/// Measures the Ahlfors three-point constant of a sampled curve: the maximum
/// of (|z1-z2| + |z2-z3|)/|z1-z3| over triples with |z1-z3| ≤ delta and z2 on
/// the arc joining z1 and z3 (for closed curves, the arc of smaller
/// diameter). `delta = None` applies the default policy diam(curve)/4.
pub fn empirical_ahlfors(
    curve: &SampledCurve,
    delta: Option<f64>,
    mode: Mode,
) -> Result<AhlforsEstimate, EstimateError> {
    let samples = curve.samples();
    let m = samples.len();
    if m < 3 {
        return Err(EstimateError::TooFewSamples { needed: 3, got: m });
    }
    let delta = delta.unwrap_or_else(|| curve.diameter() / 4.0);
    if !(delta.is_finite() && delta > 0.0) {
        return Err(EstimateError::InvalidDelta(delta));
    }
    let points = curve.points();
    let closed = curve.is_closed();

    let best = match mode {
        Mode::Exhaustive => {
            if m > EXHAUSTIVE_MAX_SAMPLES {
                return Err(EstimateError::ExhaustiveTooLarge {
                    samples: m,
                    max: EXHAUSTIVE_MAX_SAMPLES,
                });
            }
            (0..m - 1)
                .into_par_iter()
                .map(|i| {
                    let mut acc: Option<TripleBest> = None;
                    let mut record = |r: f64, i: usize, j: usize, k: usize| {
                        acc = merge_triples(
                            acc,
                            Some(TripleBest {
                                ratio: r,
                                i: i as u32,
                                j: j as u32,
                                k: k as u32,
                                count: 1,
                            }),
                        );
                    };
                    for k in i + 1..m {
                        // coincident non-neighbors have no defined ratio; they
                        // cannot occur on a Jordan curve
                        let d13 = (points[i] - points[k]).norm();
                        if d13 > delta || d13 == 0.0 {
                            continue;
                        }
                        if closed && !inner_arc_is_smaller(&points, i, k) {
                            for jj in k + 1..i + m {
                                let j = jj % m;
                                record(triple_ratio(&points, i, j, k, d13), i, j, k);
                            }
                        } else {
                            for j in i + 1..k {
                                record(triple_ratio(&points, i, j, k, d13), i, j, k);
                            }
                        }
                    }
                    acc
                })
                .reduce(|| None, merge_triples)
        }
        Mode::Sampled { seed, count } => {
            if count == 0 {
                return Err(EstimateError::EmptySampleBudget);
            }
            let chunks = count.div_ceil(DRAW_CHUNK);
            (0..chunks)
                .into_par_iter()
                .map(|chunk| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(chunk);
                    let draws = DRAW_CHUNK.min(count - chunk * DRAW_CHUNK);
                    let mut acc: Option<TripleBest> = None;
                    for _ in 0..draws {
                        let mut idx;
                        loop {
                            idx = [
                                rng.gen_range(0..m),
                                rng.gen_range(0..m),
                                rng.gen_range(0..m),
                            ];
                            if idx[0] != idx[1] && idx[0] != idx[2] && idx[1] != idx[2] {
                                break;
                            }
                        }
                        idx.sort_unstable();
                        let [a, b, c] = idx;
                        // the three readings of a draw as (pair, middle): z2
                        // inside the pair's parameter interval, or on the
                        // wrap-around arc for closed curves
                        let configs = [(a, c, b, true), (a, b, c, false), (b, c, a, false)];
                        for (p, q, w, w_inside) in configs {
                            if !closed && !w_inside {
                                continue;
                            }
                            let d13 = (points[p] - points[q]).norm();
                            if d13 > delta || d13 == 0.0 {
                                continue;
                            }
                            if closed && inner_arc_is_smaller(&points, p, q) != w_inside {
                                continue;
                            }
                            acc = merge_triples(
                                acc,
                                Some(TripleBest {
                                    ratio: triple_ratio(&points, p, w, q, d13),
                                    i: p as u32,
                                    j: w as u32,
                                    k: q as u32,
                                    count: 1,
                                }),
                            );
                        }
                    }
                    acc
                })
                .reduce(|| None, merge_triples)
        }
    };

    match best {
        Some(best) => Ok(AhlforsEstimate {
            c_hat: best.ratio,
            delta_used: delta,
            arg_triple: (
                samples[best.i as usize].t,
                samples[best.j as usize].t,
                samples[best.k as usize].t,
            ),
            triple_count: best.count,
        }),
        None => Err(EstimateError::NoAdmissibleTriple { delta }),
    }
}

/// One row of [`convergence_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub level: u32,
    pub holder: HolderEstimate,
    pub ahlfors: AhlforsEstimate,
}

/// Runs both estimators on the node sets of Γ_θ at increasing levels.
/// Exhaustive within the guard, sampled with a fixed seed beyond it. Over
/// nested node sets the ratio extremes can only widen with the level.
pub fn convergence_sweep(angle: Angle, levels: &[u32]) -> Result<Vec<SweepRow>, EstimateError> {
    if levels.is_empty() || levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(EstimateError::BadLevels);
    }
    let gamma = crate::constants::gamma_of(angle);
    levels
        .iter()
        .map(|&level| {
            let curve = nodes(angle, level)?.to_curve();
            let mode = if curve.len() <= EXHAUSTIVE_MAX_SAMPLES {
                Mode::Exhaustive
            } else {
                Mode::Sampled {
                    seed: 0,
                    count: 500_000,
                }
            };
            Ok(SweepRow {
                level,
                holder: empirical_holder(&curve, gamma, mode)?,
                ahlfors: empirical_ahlfors(&curve, None, mode)?,
            })
        })
        .collect()
}
