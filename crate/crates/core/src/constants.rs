//! Closed-form constants and the minimum-set decision.
//!
//! The chain is: bi-Hölder bounds (A, B, γ) of the parametrization → Ahlfors
//! three-point constant c = 2^{1−γ}B/A → Hölder exponents of the boundary
//! conformal maps → Łojasiewicz–Siciak exponent α(c). The curve is certified
//! as a minimum set of a strictly subharmonic function exactly when α < 2,
//! i.e. when c stays below the critical constant c* = 1/sin(((√17−1)/8)π).

use crate::koch::Angle;
use crate::roots::bisect;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_8, PI};
use thiserror::Error;

/// Root-find tolerance used for every special constant in this module.
pub const ROOT_TOL: f64 = 1e-10;

/// Minimum admissible Hölder exponent; below this 2^{1−γ} is no longer
/// finite-precision-safe.
pub const MIN_GAMMA: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum ConstantsError {
    #[error("Hölder constants must satisfy 0 < A ≤ B, got A={a}, B={b}")]
    InvalidHolderConstants { a: f64, b: f64 },
    #[error("Hölder exponent must lie in ({MIN_GAMMA}, 1], got {0}")]
    InvalidGamma(f64),
    #[error("Ahlfors constant must be ≥ 1, got {0}")]
    AhlforsBelowOne(f64),
    #[error("Hölder exponent must lie in (0, 1), got {0}")]
    AlphaOutOfRange(f64),
    #[error("quasiconformal dilatation must be ≥ 1, got {0}")]
    DilatationBelowOne(f64),
}

/// The triple (A, B, γ) with A|t−s|^γ ≤ |φ(t)−φ(s)| ≤ B|t−s|^γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiHolderBounds {
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
}

impl BiHolderBounds {
    pub fn new(a: f64, b: f64, gamma: f64) -> Result<Self, ConstantsError> {
        if !(a.is_finite() && b.is_finite() && a > 0.0 && a <= b) {
            return Err(ConstantsError::InvalidHolderConstants { a, b });
        }
        if !(gamma.is_finite() && gamma > MIN_GAMMA && gamma <= 1.0) {
            return Err(ConstantsError::InvalidGamma(gamma));
        }
        Ok(BiHolderBounds { a, b, gamma })
    }
}

/// Hölder exponent γ(θ) = log(2cosθ)/log 2 of the natural parametrization.
pub fn gamma_of(angle: Angle) -> f64 {
    let theta = angle.radians();
    // At the right endpoint the rounded cos pushes the two-step evaluation
    // one ulp above 1/2, while the correctly rounded value of
    // log2(2·cos(fl(π/4))) is 1/2 exactly (fl(π/4) sits 3.06e-17 below π/4,
    // so the true result is 1/2 + 4.4e-17, inside the rounding interval
    // of 1/2).
    if theta == std::f64::consts::FRAC_PI_4 {
        return 0.5;
    }
    (2.0 * theta.cos()).log2()
}

/// Hausdorff dimension of Γ_θ: log 2 / log(2cosθ) = 1/γ.
pub fn hausdorff_dim(angle: Angle) -> f64 {
    1.0 / gamma_of(angle)
}

fn first_branch(theta: f64) -> f64 {
    (2.0 * theta).cos() * theta.cos()
        - 8.0 * theta.cos().powi(2) * theta.sin() / (2.0 * theta.cos() - 1.0)
}

/// Lower Hölder constant A(θ). Piecewise: for θ < π/8 the pointwise maximum
/// of cos2θcosθ − 8cos²θsinθ/(2cosθ−1) and 1/(4cos²θ); for θ ≥ π/8 the
/// legacy value sin(3θ)/(8cos³θ).
pub fn koch_a(angle: Angle) -> f64 {
    let theta = angle.radians();
    if theta < FRAC_PI_8 {
        first_branch(theta).max(0.25 / theta.cos().powi(2))
    } else {
        (3.0 * theta).sin() / (8.0 * theta.cos().powi(3))
    }
}

/// Upper Hölder constant B(θ) = 1/cosθ + 8cos²θsinθ/(2cosθ−1).
pub fn koch_b(angle: Angle) -> f64 {
    let theta = angle.radians();
    1.0 / theta.cos() + 8.0 * theta.cos().powi(2) * theta.sin() / (2.0 * theta.cos() - 1.0)
}

/// The bi-Hölder triple of Γ_θ.
pub fn koch_bounds(angle: Angle) -> BiHolderBounds {
    BiHolderBounds::new(koch_a(angle), koch_b(angle), gamma_of(angle))
        .expect("Koch constants are valid bounds for admissible angles")
}

/// Ponomarev's lower constant: 1/(4cos²θ) for θ < π/8, sin(3θ)/(8cos³θ)
/// otherwise. Kept for comparison reporting.
pub fn ponomarev_a(angle: Angle) -> f64 {
    let theta = angle.radians();
    if theta < FRAC_PI_8 {
        0.25 / theta.cos().powi(2)
    } else {
        (3.0 * theta).sin() / (8.0 * theta.cos().powi(3))
    }
}

/// Ponomarev's upper constant, 4 for every angle.
pub fn ponomarev_b() -> f64 {
    4.0
}

/// Ahlfors three-point constant implied by a bi-Hölder parametrization:
/// c = 2^{1−γ}·B/A.
pub fn ahlfors_constant(bounds: &BiHolderBounds) -> f64 {
    (1.0 - bounds.gamma).exp2() * bounds.b / bounds.a
}

fn check_ahlfors(c: f64) -> Result<f64, ConstantsError> {
    if c.is_finite() && c >= 1.0 {
        Ok(c.recip().asin())
    } else {
        Err(ConstantsError::AhlforsBelowOne(c))
    }
}

/// Hölder exponent of the conformal maps f, f* onto the two sides of a curve
/// with Ahlfors constant c: 2arcsin²(c⁻¹)/(π² − π·arcsin(c⁻¹)).
pub fn lesley_forward_exponent(c: f64) -> Result<f64, ConstantsError> {
    let s = check_ahlfors(c)?;
    Ok(2.0 * s * s / (PI * PI - PI * s))
}

/// Hölder exponent of the inverse maps f⁻¹, (f*)⁻¹: π/(2π − 2arcsin(c⁻¹)).
pub fn lesley_inverse_exponent(c: f64) -> Result<f64, ConstantsError> {
    let s = check_ahlfors(c)?;
    Ok(PI / (2.0 * PI - 2.0 * s))
}

/// If f ∈ Lip(α) on one side, the inverse exterior map lies in Lip(1/(2−α)).
pub fn cross_exponent(alpha: f64) -> Result<f64, ConstantsError> {
    if alpha.is_finite() && alpha > 0.0 && alpha < 1.0 {
        Ok(1.0 / (2.0 - alpha))
    } else {
        Err(ConstantsError::AlphaOutOfRange(alpha))
    }
}

/// Łojasiewicz–Siciak exponent α(c) = (π² − π·arcsin(c⁻¹))/(2arcsin²(c⁻¹));
/// the reciprocal of [`lesley_forward_exponent`], strictly increasing in c.
pub fn ls_alpha(c: f64) -> Result<f64, ConstantsError> {
    let s = check_ahlfors(c)?;
    Ok((PI * PI - PI * s) / (2.0 * s * s))
}

/// Critical Ahlfors constant: the solution of α(c) = 2 in closed form,
/// c* = 1/sin(((√17 − 1)/8)·π) ≈ 1.06237.
pub fn c_star() -> f64 {
    1.0 / ((17.0f64.sqrt() - 1.0) / 8.0 * PI).sin()
}

/// Verdict of the certification pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedMinimumSet,
    NotCertified,
}

/// Ponomarev's constants and the Ahlfors constant they would give, carried
/// alongside a Koch certificate to document the improvement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LegacyComparison {
    pub a: f64,
    pub b: f64,
    pub ahlfors_c: f64,
}

/// Full decision record for one curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    /// Koch base angle when the bounds came from a Koch curve.
    pub theta: Option<f64>,
    pub bounds: BiHolderBounds,
    pub ahlfors_c: f64,
    pub lesley_forward: f64,
    pub lesley_inverse: f64,
    pub ls_alpha: f64,
    pub threshold_c_star: f64,
    pub verdict: Verdict,
    pub hausdorff_dim: Option<f64>,
    pub legacy: Option<LegacyComparison>,
}

/// Runs the decision of the certification pipeline on explicit bounds:
/// certified exactly when the Ahlfors constant stays below c*.
pub fn certify(bounds: &BiHolderBounds) -> Certificate {
    let c = ahlfors_constant(bounds);
    let alpha = ls_alpha(c).expect("c = 2^{1-γ}B/A is ≥ 1 for valid bounds");
    let threshold = c_star();
    Certificate {
        theta: None,
        bounds: *bounds,
        ahlfors_c: c,
        lesley_forward: lesley_forward_exponent(c).expect("c ≥ 1"),
        lesley_inverse: lesley_inverse_exponent(c).expect("c ≥ 1"),
        ls_alpha: alpha,
        threshold_c_star: threshold,
        verdict: if c < threshold {
            Verdict::CertifiedMinimumSet
        } else {
            Verdict::NotCertified
        },
        hausdorff_dim: None,
        legacy: None,
    }
}

/// Certifies the Koch curve of angle θ from its closed-form bounds, recording
/// the Hausdorff dimension and the legacy constants for comparison.
pub fn certify_koch(angle: Angle) -> Certificate {
    let bounds = koch_bounds(angle);
    let mut cert = certify(&bounds);
    cert.theta = Some(angle.radians());
    cert.hausdorff_dim = Some(hausdorff_dim(angle));
    let legacy_a = ponomarev_a(angle);
    let legacy_b = ponomarev_b();
    let legacy_bounds = BiHolderBounds::new(legacy_a, legacy_b, bounds.gamma)
        .expect("legacy constants are valid bounds");
    cert.legacy = Some(LegacyComparison {
        a: legacy_a,
        b: legacy_b,
        ahlfors_c: ahlfors_constant(&legacy_bounds),
    });
    cert
}

/// Largest base angle whose Koch bounds still certify: the root of
/// 2^{1−γ(θ)}B(θ)/A(θ) = c* on (0, 0.09], bisected to 1e−10. The criterion
/// function is increasing in θ, so the bracket pins the root.
pub fn theta_tilde() -> f64 {
    bisect(
        1e-9,
        0.09,
        |theta| {
            let angle = Angle::new(theta).expect("bracket stays inside (0, π/4]");
            ahlfors_constant(&koch_bounds(angle)) - c_star()
        },
        ROOT_TOL,
        200,
    )
    .expect("criterion changes sign on (0, 0.09]")
}

/// Crossover angles of the lower-constant formula: θ₀ where the first branch
/// and 1/(4cos²θ) exchange dominance, θ₁ where the first branch vanishes.
pub fn theta_crossovers() -> (f64, f64) {
    let theta0 = bisect(
        0.01,
        0.12,
        |theta| first_branch(theta) - 0.25 / theta.cos().powi(2),
        1e-8,
        200,
    )
    .expect("branch crossover lies in [0.01, 0.12]");
    let theta1 = bisect(0.09, 0.2, first_branch, 1e-8, 200)
        .expect("first branch changes sign in [0.09, 0.2]");
    (theta0, theta1)
}

/// Smirnov's bound 1 + ((K−1)/(K+1))² on the Hausdorff dimension of a
/// K-quasicircle.
pub fn quasicircle_dim_bound(k: f64) -> Result<f64, ConstantsError> {
    if k.is_finite() && k >= 1.0 {
        let r = (k - 1.0) / (k + 1.0);
        Ok(1.0 + r * r)
    } else {
        Err(ConstantsError::DilatationBelowOne(k))
    }
}

/// The angle arccos(2^{−1/10}) at which Γ_θ reaches Hausdorff dimension 10/9,
/// past which no Π_θ can be a minimum set.
pub fn theta_dim_threshold() -> f64 {
    (-0.1f64).exp2().acos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    fn angle(theta: f64) -> Angle {
        Angle::new(theta).unwrap()
    }

    #[test]
    fn gamma_at_quarter_pi_is_half() {
        assert_eq!(gamma_of(angle(FRAC_PI_4)), 0.5);
        assert_eq!(hausdorff_dim(angle(FRAC_PI_4)), 2.0);
    }

    #[test]
    fn gamma_flat_limit() {
        // γ → 1 as θ → 0⁺
        assert!((gamma_of(angle(1e-6)) - 1.0).abs() < 1e-11);
        // frozen high-precision value at θ = 0.1
        assert!((gamma_of(angle(0.1)) - 0.99277447017935).abs() < 1e-14);
        assert!((hausdorff_dim(angle(0.1)) - 1.007_278_118_079_874_3).abs() < 1e-13);
    }

    #[test]
    fn koch_constants_frozen_values() {
        // A(π/6) = 1/(3√3), second branch
        assert!((koch_a(angle(FRAC_PI_6)) - 0.192_450_089_729_875_25).abs() < 1e-15);
        // θ = 0.00378, near the critical angle
        let a = koch_a(angle(0.00378));
        let b = koch_b(angle(0.00378));
        assert!((a - 0.969_724_351_360_710_2).abs() < 1e-12);
        assert!((b - 1.030247072230592).abs() < 1e-12);
        // flat limit: A, B → 1
        assert!((koch_a(angle(1e-6)) - 1.0).abs() < 1e-5);
        assert!((koch_b(angle(1e-6)) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn ponomarev_constants() {
        assert!((ponomarev_a(angle(0.05)) - 0.250_626_043_144_285_6).abs() < 1e-14);
        assert_eq!(ponomarev_b(), 4.0);
        // the branches agree with the new constant at and past π/8
        assert_eq!(ponomarev_a(angle(FRAC_PI_6)), koch_a(angle(FRAC_PI_6)));
        // below π/8 the improved first branch dominates for small θ
        for &theta in &[0.01, 0.03, 0.05, 0.08] {
            assert!(koch_a(angle(theta)) >= ponomarev_a(angle(theta)));
        }
    }

    #[test]
    fn ahlfors_constant_examples() {
        let straight = BiHolderBounds::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(ahlfors_constant(&straight), 1.0);
        let doubled = BiHolderBounds::new(1.0, 2.0, 1.0).unwrap();
        assert_eq!(ahlfors_constant(&doubled), 2.0);
        // Koch bounds near the critical angle sit next to c*
        let c = ahlfors_constant(&koch_bounds(angle(0.00378)));
        assert!((c - 1.062_419_883_670_962_5).abs() < 1e-12);
        assert!((c - c_star()).abs() < 1e-4);
    }

    #[test]
    fn lesley_exponents() {
        assert_eq!(lesley_forward_exponent(1.0).unwrap(), 1.0);
        assert_eq!(lesley_inverse_exponent(1.0).unwrap(), 1.0);
        let cs = c_star();
        assert!((lesley_forward_exponent(cs).unwrap() - 0.5).abs() < 1e-13);
        assert!((lesley_inverse_exponent(cs).unwrap() - 0.820_194_101_601_103_8).abs() < 1e-12);
        assert!(matches!(
            lesley_forward_exponent(0.99),
            Err(ConstantsError::AhlforsBelowOne(_))
        ));
    }

    #[test]
    fn cross_exponent_values() {
        assert!((cross_exponent(1.0 - 1e-12).unwrap() - 1.0).abs() < 1e-11);
        assert_eq!(cross_exponent(0.5).unwrap(), 1.0 / 1.5);
        assert!((cross_exponent(0.9).unwrap() - 0.909_090_909_090_909_1).abs() < 1e-15);
        assert!(cross_exponent(0.0).is_err());
        assert!(cross_exponent(1.0).is_err());
    }

    #[test]
    fn ls_alpha_values() {
        assert_eq!(ls_alpha(1.0).unwrap(), 1.0);
        assert!((ls_alpha(c_star()).unwrap() - 2.0).abs() < 1e-12);
        let mid = ls_alpha(1.03).unwrap();
        assert!((mid - 1.612_512_159_158_125).abs() < 1e-12);
        assert!(mid > 1.0 && mid < 2.0);
    }

    #[test]
    fn c_star_matches_independent_root_find() {
        let cs = c_star();
        assert!((cs - 1.062368255711143).abs() < 1e-12);
        let root = bisect(1.0001, 2.0, |c| ls_alpha(c).unwrap() - 2.0, 1e-12, 300).unwrap();
        assert!(
            (root - cs).abs() < 1e-10,
            "bisection {root} vs closed form {cs}"
        );
    }

    #[test]
    fn certify_limits_and_koch_angles() {
        let smooth = certify(&BiHolderBounds::new(1.0, 1.0, 1.0).unwrap());
        assert_eq!(smooth.verdict, Verdict::CertifiedMinimumSet);
        assert_eq!(smooth.ahlfors_c, 1.0);
        assert_eq!(smooth.ls_alpha, 1.0);

        let good = certify_koch(angle(0.002));
        assert_eq!(good.verdict, Verdict::CertifiedMinimumSet);
        assert!((good.ahlfors_c - 1.032_534_893_954_449).abs() < 1e-12);

        let bad = certify_koch(angle(0.01));
        assert_eq!(bad.verdict, Verdict::NotCertified);
        assert!((bad.ahlfors_c - 1.174_342_036_458_445_6).abs() < 1e-12);

        // consistency of the recorded fields
        assert!((good.lesley_forward * good.ls_alpha - 1.0).abs() < 1e-13);
        assert_eq!(good.threshold_c_star, c_star());
        let legacy = bad.legacy.unwrap();
        assert_eq!(legacy.b, 4.0);
        assert!(legacy.ahlfors_c > bad.ahlfors_c);
    }

    #[test]
    fn theta_tilde_brackets_the_verdict_flip() {
        let tt = theta_tilde();
        assert!((tt - 0.003_776_970_652_889_783_6).abs() < 1e-9);
        let below = certify_koch(angle(tt * 0.99));
        let above = certify_koch(angle(tt * 1.01));
        assert_eq!(below.verdict, Verdict::CertifiedMinimumSet);
        assert_eq!(above.verdict, Verdict::NotCertified);
    }

    #[test]
    fn criterion_is_increasing_in_theta() {
        let mut last = 0.0;
        for k in 1..=60 {
            let theta = 0.0015 * k as f64;
            let c = ahlfors_constant(&koch_bounds(angle(theta)));
            assert!(c > last, "c(θ) not increasing at θ = {theta}");
            last = c;
        }
    }

    #[test]
    fn crossover_angles() {
        let (theta0, theta1) = theta_crossovers();
        assert!((theta0 - 0.091_038_331_846_570_06).abs() < 1e-7);
        assert!((theta1 - 0.120_773_913_313_420_23).abs() < 1e-7);
        assert!(first_branch(theta1 + 0.01) < 0.0);
        assert!(first_branch(theta0 - 0.01) > 0.25 / (theta0 - 0.01).cos().powi(2));
    }

    #[test]
    fn quasicircle_bound_and_threshold() {
        assert_eq!(quasicircle_dim_bound(1.0).unwrap(), 1.0);
        assert!((quasicircle_dim_bound(2.0).unwrap() - 10.0 / 9.0).abs() < 1e-15);
        assert!(quasicircle_dim_bound(0.5).is_err());
        let threshold = theta_dim_threshold();
        assert!((threshold - 0.368_043_693_964_842_1).abs() < 1e-12);
        assert!(threshold < FRAC_PI_8);
        assert!((hausdorff_dim(angle(threshold)) - 10.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn bounds_validation() {
        assert!(BiHolderBounds::new(0.0, 1.0, 0.5).is_err());
        assert!(BiHolderBounds::new(2.0, 1.0, 0.5).is_err());
        assert!(BiHolderBounds::new(1.0, 2.0, 0.0).is_err());
        assert!(BiHolderBounds::new(1.0, 2.0, 1e-9).is_err());
        assert!(BiHolderBounds::new(1.0, 2.0, 1.2).is_err());
        assert!(BiHolderBounds::new(1.0, 2.0, 1.0).is_ok());
    }
}
