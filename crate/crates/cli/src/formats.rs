//! The curve file format: JSON with explicit (t, [x, y]) samples, a closed
//! flag and free-form string metadata. Numbers survive the round trip
//! bit-exactly (shortest-representation float serialization).

use anyhow::{Context, Result};
use minset::curve::{Sample, SampledCurve};
use minset::geometry::Point;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveFileSample {
    pub t: f64,
    pub z: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveFile {
    pub samples: Vec<CurveFileSample>,
    pub closed: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

impl CurveFile {
    pub fn from_curve(curve: &SampledCurve, metadata: BTreeMap<String, String>) -> Self {
        CurveFile {
            samples: curve
                .samples()
                .iter()
                .map(|s| CurveFileSample {
                    t: s.t,
                    z: [s.z.re, s.z.im],
                })
                .collect(),
            closed: curve.is_closed(),
            metadata,
        }
    }

    pub fn to_curve(&self) -> Result<SampledCurve> {
        let samples = self
            .samples
            .iter()
            .map(|s| Sample::new(s.t, Point::new(s.z[0], s.z[1])))
            .collect();
        SampledCurve::new(samples, self.closed).context("invalid curve file")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("curve files serialize")
    }

    pub fn read(path: &Path) -> Result<(Self, Vec<u8>)> {
        let bytes = std::fs::read(path)
            .with_context(|| format!("cannot read curve file {}", path.display()))?;
        let file: CurveFile = serde_json::from_slice(&bytes)
            .with_context(|| format!("cannot parse curve file {}", path.display()))?;
        Ok((file, bytes))
    }
}
