//! Sampled planar curves: the common carrier between the Koch constructions,
//! the empirical estimators and curve files ingested from disk.

use crate::geometry::{set_diameter, Point};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CurveError {
    #[error("curve needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("parameter at sample {0} is not strictly increasing")]
    NonIncreasingParameter(usize),
    #[error("parameter at sample {0} is outside [0, 1]")]
    ParameterOutOfRange(usize),
    #[error("samples {0} and {1} coincide in the plane")]
    CoincidentPoints(usize, usize),
    #[error("non-finite coordinate at sample {0}")]
    NonFinite(usize),
}

/// One curve sample: parameter value and image point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub z: Point,
}

impl Sample {
    pub fn new(t: f64, z: Point) -> Self {
        Sample { t, z }
    }
}

/// An ordered list of `(t, z)` pairs with strictly increasing `t ∈ [0, 1]`.
/// For a closed curve the first point is conceptually revisited after the
/// last one; it is not stored twice.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    samples: Vec<Sample>,
    closed: bool,
}

impl SampledCurve {
    pub fn new(samples: Vec<Sample>, closed: bool) -> Result<Self, CurveError> {
        if samples.len() < 2 {
            return Err(CurveError::TooFewSamples(samples.len()));
        }
        for (i, s) in samples.iter().enumerate() {
            if !(s.t.is_finite() && s.z.re.is_finite() && s.z.im.is_finite()) {
                return Err(CurveError::NonFinite(i));
            }
            if !(0.0..=1.0).contains(&s.t) {
                return Err(CurveError::ParameterOutOfRange(i));
            }
            if i > 0 {
                if s.t <= samples[i - 1].t {
                    return Err(CurveError::NonIncreasingParameter(i));
                }
                if s.z == samples[i - 1].z {
                    return Err(CurveError::CoincidentPoints(i - 1, i));
                }
            }
        }
        if closed && samples[0].z == samples[samples.len() - 1].z {
            return Err(CurveError::CoincidentPoints(samples.len() - 1, 0));
        }
        Ok(SampledCurve { samples, closed })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Image points in parameter order.
    pub fn points(&self) -> Vec<Point> {
        self.samples.iter().map(|s| s.z).collect()
    }

    /// Diameter of the sample set.
    pub fn diameter(&self) -> f64 {
        let pts = self.points();
        set_diameter(&pts)
    }

    /// Index of the sample whose parameter is closest to `t`.
    pub fn nearest_index(&self, t: f64) -> usize {
        let idx = self
            .samples
            .partition_point(|s| s.t < t)
            .min(self.samples.len() - 1);
        if idx > 0 && (t - self.samples[idx - 1].t).abs() <= (self.samples[idx].t - t).abs() {
            idx - 1
        } else {
            idx
        }
    }
}
