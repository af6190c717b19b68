//! The JSON report emitted by every subcommand. One schema, optional
//! sections; every numeric section carries the mode, tolerance or policy it
//! was produced under so reports are self-describing.

use minset::constants::Certificate;
use minset::estimators::{AhlforsEstimate, HolderEstimate, Mode};
use minset::potential::{LejaSet, LsExponentEstimate, NormalSide};
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdRow {
    pub name: String,
    pub value: f64,
    /// Bisection tolerance for root-found entries, absent for closed forms.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub description: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdSection {
    pub rows: Vec<ThresholdRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateSection {
    /// "analytic" for closed-form bounds, "empirical" for bounds measured
    /// from curve samples. Empirical ratio extremes are inner estimates of
    /// (A, B), so such a certificate is indicative only.
    pub bounds_source: String,
    pub rigorous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateSection {
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holder: Option<HolderEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ahlfors: Option<AhlforsEstimate>,
    /// Analytic comparison values, present when the curve is a Koch curve.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic: Option<AnalyticComparison>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyticComparison {
    pub theta: f64,
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
    pub ahlfors_c: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LsSection {
    pub leja_n: usize,
    pub candidate_count: usize,
    pub noise_floor: f64,
    pub side: NormalSide,
    pub distances: Vec<f64>,
    pub leja: LejaSet,
    pub estimate: LsExponentEstimate,
}

#[derive(Debug, Clone, Serialize)]
pub struct KochSection {
    pub theta: f64,
    pub level: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sides: Option<u32>,
    pub samples: usize,
    pub segment_length: f64,
    /// Interior angle measured where adjacent Koch copies meet at a polygon
    /// vertex; only for closed curves. How close this stays to π decides
    /// whether the polygon corners disturb the three-point constant of the
    /// straight-edge curve.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corner_angle_interior: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepCertRow {
    pub theta: f64,
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
    pub ahlfors_c: f64,
    pub ls_alpha: f64,
    pub certified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    /// Unix timestamp; the only field excluded from byte-identity checks.
    pub generated_at_unix_ms: u128,
    pub command: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<ThresholdSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub koch: Option<KochSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimates: Option<EstimateSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ls: Option<LsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepCertRow>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub files_written: BTreeMap<String, String>,
}

impl Report {
    pub fn new(command: String, seed: u64) -> Self {
        Report {
            tool: "minset",
            version: env!("CARGO_PKG_VERSION"),
            generated_at_unix_ms: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis())
                .unwrap_or(0),
            command,
            seed,
            input_digest: None,
            thresholds: None,
            certificate: None,
            koch: None,
            estimates: None,
            ls: None,
            sweep: None,
            files_written: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Formats with 6 significant digits for the human-readable tables.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::sig6;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(1.0623682557), "1.06237");
        assert_eq!(sig6(0.0037769707), "0.00377697");
        assert_eq!(sig6(std::f64::consts::FRAC_PI_8), "0.392699");
        assert_eq!(sig6(10.0 / 9.0), "1.11111");
    }
}
