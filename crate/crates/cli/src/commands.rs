//! Subcommand implementations. Each command builds a [`Report`]; `main`
//! decides the exit code from the outcome.

use crate::cli::{
    CertifyArgs, EstimateArgs, KochArgs, LsArgs, ModeArg, OracleArg, SideArg, SweepArgs, WhatArg,
};
use crate::formats::CurveFile;
use crate::report::{
    sig6, AnalyticComparison, CertificateSection, EstimateSection, KochSection, LsSection, Report,
    SweepCertRow, ThresholdRow, ThresholdSection,
};
use crate::svg::curve_svg;
use minset::constants::{
    ahlfors_constant, c_star, certify, certify_koch, gamma_of, koch_a, koch_b, koch_bounds,
    theta_crossovers, theta_dim_threshold, theta_tilde, BiHolderBounds, Certificate,
    ConstantsError, Verdict, ROOT_TOL,
};
use minset::curve::{Sample, SampledCurve};
use minset::estimators::{
    empirical_ahlfors, empirical_holder, EstimateError, Mode, EXHAUSTIVE_MAX_SAMPLES,
};
use minset::geometry::{dot, Point};
use minset::koch::{nodes, pi_theta, Angle, KochError};
use minset::potential::{
    least_covered_base, leja_points, ls_exponent_estimate, NormalSide, PotentialError, NOISE_FLOOR,
};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

#[derive(Debug)]
pub enum CliError {
    /// Conflicting or invalid arguments: exit code 2.
    Usage(String),
    /// A numeric guard tripped at run time: exit code 4.
    Guard(String),
    /// I/O or environment failure: exit code 1.
    Io(anyhow::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Guard(msg) => write!(f, "numeric guard: {msg}"),
            CliError::Io(err) => write!(f, "{err:#}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Guard(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

fn from_koch(e: KochError) -> CliError {
    match e {
        KochError::LevelTooLarge { .. } => CliError::Guard(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

fn from_estimate(e: EstimateError) -> CliError {
    match e {
        EstimateError::GammaOutOfRange(_)
        | EstimateError::InvalidDelta(_)
        | EstimateError::BadLevels
        | EstimateError::TooFewSamples { .. }
        | EstimateError::EmptySampleBudget => CliError::Usage(e.to_string()),
        _ => CliError::Guard(e.to_string()),
    }
}

fn from_potential(e: PotentialError) -> CliError {
    match e {
        PotentialError::BadDistances
        | PotentialError::NoBasePoints
        | PotentialError::InvalidOrder { .. }
        | PotentialError::NotEnoughCandidates { .. } => CliError::Usage(e.to_string()),
        _ => CliError::Guard(e.to_string()),
    }
}

fn from_constants(e: ConstantsError) -> CliError {
    CliError::Usage(e.to_string())
}

pub struct Outcome {
    pub report: Report,
    /// Set by `certify`: drives exit code 3 when false.
    pub certified: Option<bool>,
}

impl Outcome {
    fn plain(report: Report) -> Self {
        Outcome {
            report,
            certified: None,
        }
    }
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

fn parse_angle(theta: f64) -> Result<Angle, CliError> {
    Angle::new(theta).map_err(from_koch)
}

pub fn cmd_thresholds(mut report: Report, quiet: bool) -> Result<Outcome, CliError> {
    let (theta0, theta1) = theta_crossovers();
    let rows = vec![
        ThresholdRow {
            name: "c_star".into(),
            value: c_star(),
            tolerance: None,
            description: "critical Ahlfors constant 1/sin(((sqrt(17)-1)/8)*pi)".into(),
        },
        ThresholdRow {
            name: "theta_tilde".into(),
            value: theta_tilde(),
            tolerance: Some(ROOT_TOL),
            description: "largest Koch angle whose closed-form bounds certify".into(),
        },
        ThresholdRow {
            name: "theta0".into(),
            value: theta0,
            tolerance: Some(1e-8),
            description: "crossover angle where 1/(4cos^2) takes over the lower constant".into(),
        },
        ThresholdRow {
            name: "theta1".into(),
            value: theta1,
            tolerance: Some(1e-8),
            description: "angle where the small-angle branch of the lower constant vanishes".into(),
        },
        ThresholdRow {
            name: "theta_dim_threshold".into(),
            value: theta_dim_threshold(),
            tolerance: None,
            description: "arccos(2^(-1/10)): dimension 10/9 is reached here".into(),
        },
        ThresholdRow {
            name: "pi_over_8".into(),
            value: PI / 8.0,
            tolerance: None,
            description: "branch boundary of the lower Holder constant".into(),
        },
        ThresholdRow {
            name: "dim_bound".into(),
            value: 10.0 / 9.0,
            tolerance: None,
            description: "Hausdorff dimension cap for quasicircle minimum sets".into(),
        },
    ];
    if !quiet {
        println!("critical constants (6 significant digits):");
        for row in &rows {
            println!(
                "  {:22} {:>12}  {}",
                row.name,
                sig6(row.value),
                row.description
            );
        }
    }
    report.thresholds = Some(ThresholdSection { rows });
    Ok(Outcome::plain(report))
}

fn print_certificate(section: &CertificateSection) {
    let cert = &section.certificate;
    if let Some(theta) = cert.theta {
        println!("curve: Koch angle theta = {}", sig6(theta));
    }
    println!(
        "bounds ({}): A = {}, B = {}, gamma = {}",
        section.bounds_source,
        sig6(cert.bounds.a),
        sig6(cert.bounds.b),
        sig6(cert.bounds.gamma)
    );
    println!(
        "ahlfors constant c = {}   (threshold c* = {})",
        sig6(cert.ahlfors_c),
        sig6(cert.threshold_c_star)
    );
    println!(
        "LS exponent alpha = {}   lesley exponents: forward {}, inverse {}",
        sig6(cert.ls_alpha),
        sig6(cert.lesley_forward),
        sig6(cert.lesley_inverse)
    );
    if let Some(dim) = cert.hausdorff_dim {
        println!("hausdorff dimension = {}", sig6(dim));
    }
    if let Some(legacy) = &cert.legacy {
        println!(
            "legacy constants: A = {}, B = {}, c = {}",
            sig6(legacy.a),
            sig6(legacy.b),
            sig6(legacy.ahlfors_c)
        );
    }
    if let Some(warning) = &section.warning {
        println!("warning: {warning}");
    }
    match cert.verdict {
        Verdict::CertifiedMinimumSet => println!("verdict: CERTIFIED minimum set (alpha < 2)"),
        Verdict::NotCertified => println!("verdict: NOT certified (alpha >= 2)"),
    }
}

pub fn cmd_certify(
    args: &CertifyArgs,
    seed: u64,
    mut report: Report,
    quiet: bool,
) -> Result<Outcome, CliError> {
    let explicit = args.a.is_some() || args.b.is_some();
    let section = match (&args.theta, &args.curve_file) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "--theta conflicts with --curve-file".into(),
            ))
        }
        (Some(theta), None) => {
            if explicit || args.gamma.is_some() {
                return Err(CliError::Usage(
                    "--theta conflicts with --a/--b/--gamma".into(),
                ));
            }
            let angle = parse_angle(*theta)?;
            CertificateSection {
                bounds_source: "analytic Koch closed form".into(),
                rigorous: true,
                warning: None,
                certificate: certify_koch(angle),
            }
        }
        (None, Some(path)) => {
            if explicit {
                return Err(CliError::Usage(
                    "--curve-file conflicts with --a/--b".into(),
                ));
            }
            let gamma = args
                .gamma
                .ok_or_else(|| CliError::Usage("--curve-file mode needs --gamma".into()))?;
            let (file, bytes) = CurveFile::read(path).map_err(CliError::Io)?;
            let curve = file
                .to_curve()
                .map_err(|e| CliError::Usage(format!("invalid curve file: {e:#}")))?;
            report.input_digest = Some(digest(&bytes));
            let mode = if curve.len() <= EXHAUSTIVE_MAX_SAMPLES {
                Mode::Exhaustive
            } else {
                Mode::Sampled {
                    seed,
                    count: args.count,
                }
            };
            let est = empirical_holder(&curve, gamma, mode).map_err(from_estimate)?;
            let bounds =
                BiHolderBounds::new(est.ratio_min, est.ratio_max, gamma).map_err(from_constants)?;
            CertificateSection {
                bounds_source: format!("empirical ratio extremes over {} pairs", est.pair_count),
                rigorous: false,
                warning: Some(
                    "NON-RIGOROUS: empirical ratio extremes are inner estimates of (A, B); \
                     the verdict is only indicative"
                        .into(),
                ),
                certificate: certify(&bounds),
            }
        }
        (None, None) => {
            let (a, b, gamma) = match (args.a, args.b, args.gamma) {
                (Some(a), Some(b), Some(g)) => (a, b, g),
                _ => {
                    return Err(CliError::Usage(
                        "provide --theta, or --a --b --gamma, or --curve-file --gamma".into(),
                    ))
                }
            };
            let bounds = BiHolderBounds::new(a, b, gamma).map_err(from_constants)?;
            CertificateSection {
                bounds_source: "user-provided bounds".into(),
                rigorous: true,
                warning: None,
                certificate: certify(&bounds),
            }
        }
    };

    if !quiet {
        print_certificate(&section);
    }
    let certified = section.certificate.verdict == Verdict::CertifiedMinimumSet;
    report.certificate = Some(section);
    Ok(Outcome {
        report,
        certified: Some(certified),
    })
}

fn koch_metadata(theta: f64, level: u32, sides: Option<u32>) -> BTreeMap<String, String> {
    let mut meta = BTreeMap::new();
    meta.insert("generator".into(), "minset koch".into());
    meta.insert("theta".into(), format!("{theta}"));
    meta.insert("level".into(), format!("{level}"));
    if let Some(sides) = sides {
        meta.insert("sides".into(), format!("{sides}"));
    }
    meta
}

pub fn cmd_koch(args: &KochArgs, mut report: Report, quiet: bool) -> Result<Outcome, CliError> {
    let angle = parse_angle(args.theta)?;
    let curve = match args.sides {
        Some(sides) => pi_theta(angle, sides, args.level).map_err(from_koch)?,
        None => nodes(angle, args.level).map_err(from_koch)?.to_curve(),
    };
    let file = CurveFile::from_curve(&curve, koch_metadata(args.theta, args.level, args.sides));
    let json = file.to_json();
    report.input_digest = Some(digest(json.as_bytes()));

    if let Some(path) = &args.curve_out {
        std::fs::write(path, &json)
            .map_err(|e| CliError::Io(anyhow::anyhow!("writing {}: {e}", path.display())))?;
        report
            .files_written
            .insert("curve".into(), path.display().to_string());
        if !quiet {
            println!("wrote curve file {}", path.display());
        }
    }
    if let Some(path) = &args.svg_out {
        let stroke = angle.lambda().powi(args.level as i32) / 2.0;
        let svg = curve_svg(&curve.points(), curve.is_closed(), stroke);
        std::fs::write(path, svg)
            .map_err(|e| CliError::Io(anyhow::anyhow!("writing {}: {e}", path.display())))?;
        report
            .files_written
            .insert("svg".into(), path.display().to_string());
        if !quiet {
            println!("wrote svg {}", path.display());
        }
    }
    // for the closed curve, measure the interior angle where adjacent Koch
    // copies meet; its distance to π tells how much the polygon corners can
    // disturb the three-point constant of the straight-edge curve
    let corner_angle = args.sides.map(|_| {
        let pts = curve.points();
        let v = pts[0];
        let u = pts[pts.len() - 1] - v;
        let w = pts[1] - v;
        (dot(u, w) / (u.norm() * w.norm())).acos()
    });
    report.koch = Some(KochSection {
        theta: args.theta,
        level: args.level,
        sides: args.sides,
        samples: curve.len(),
        segment_length: angle.lambda().powi(args.level as i32),
        corner_angle_interior: corner_angle,
    });

    if !quiet {
        println!(
            "koch curve: theta = {}, level = {}, {} samples{}",
            sig6(args.theta),
            args.level,
            curve.len(),
            if curve.is_closed() { " (closed)" } else { "" }
        );
        if let Some(corner) = corner_angle {
            println!(
                "corner angle between adjacent copies: {} rad (π = {})",
                sig6(corner),
                sig6(PI)
            );
        }
    }
    Ok(Outcome::plain(report))
}

struct ResolvedCurve {
    curve: SampledCurve,
    theta: Option<f64>,
}

fn resolve_estimate_curve(
    args: &EstimateArgs,
    report: &mut Report,
) -> Result<ResolvedCurve, CliError> {
    match (&args.theta, &args.curve_file) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--theta conflicts with --curve-file".into(),
        )),
        (Some(theta), None) => {
            let angle = parse_angle(*theta)?;
            let curve = nodes(angle, args.level).map_err(from_koch)?.to_curve();
            Ok(ResolvedCurve {
                curve,
                theta: Some(*theta),
            })
        }
        (None, Some(path)) => {
            let (file, bytes) = CurveFile::read(path).map_err(CliError::Io)?;
            let curve = file
                .to_curve()
                .map_err(|e| CliError::Usage(format!("invalid curve file: {e:#}")))?;
            report.input_digest = Some(digest(&bytes));
            Ok(ResolvedCurve { curve, theta: None })
        }
        (None, None) => Err(CliError::Usage("provide --theta or --curve-file".into())),
    }
}

pub fn cmd_estimate(
    args: &EstimateArgs,
    seed: u64,
    mut report: Report,
    quiet: bool,
) -> Result<Outcome, CliError> {
    let resolved = resolve_estimate_curve(args, &mut report)?;
    let curve = &resolved.curve;
    let mode = match args.mode {
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::Sampled => Mode::Sampled {
            seed,
            count: args.count,
        },
    };

    let analytic = resolved.theta.map(|theta| {
        let angle = Angle::new(theta).expect("validated above");
        AnalyticComparison {
            theta,
            a: koch_a(angle),
            b: koch_b(angle),
            gamma: gamma_of(angle),
            ahlfors_c: ahlfors_constant(&koch_bounds(angle)),
        }
    });

    let want_holder = matches!(args.what, WhatArg::Holder | WhatArg::Both);
    let want_ahlfors = matches!(args.what, WhatArg::Ahlfors | WhatArg::Both);

    let holder = if want_holder {
        let gamma = match (args.gamma, &analytic) {
            (Some(g), _) => g,
            (None, Some(a)) => a.gamma,
            (None, None) => {
                return Err(CliError::Usage(
                    "--gamma is required for the Holder estimate on a curve file".into(),
                ))
            }
        };
        Some(empirical_holder(curve, gamma, mode).map_err(from_estimate)?)
    } else {
        None
    };
    let ahlfors = if want_ahlfors {
        Some(empirical_ahlfors(curve, args.delta, mode).map_err(from_estimate)?)
    } else {
        None
    };

    if !quiet {
        println!(
            "estimates on {} samples ({}):",
            curve.len(),
            match mode {
                Mode::Exhaustive => "exhaustive".to_string(),
                Mode::Sampled { seed, count } => format!("sampled, seed {seed}, count {count}"),
            }
        );
        if let Some(h) = &holder {
            println!(
                "  holder ratios (gamma = {}): min {} at t = ({}, {}), max {} at t = ({}, {}), {} pairs",
                sig6(h.gamma_used),
                sig6(h.ratio_min),
                sig6(h.argmin_pair.0),
                sig6(h.argmin_pair.1),
                sig6(h.ratio_max),
                sig6(h.argmax_pair.0),
                sig6(h.argmax_pair.1),
                h.pair_count
            );
        }
        if let Some(a) = &ahlfors {
            println!(
                "  ahlfors c_hat = {} (delta = {}, {} admissible triples)",
                sig6(a.c_hat),
                sig6(a.delta_used),
                a.triple_count
            );
        }
        if let Some(cmp) = &analytic {
            println!(
                "  analytic comparison: A = {}, B = {}, gamma = {}, c = {}",
                sig6(cmp.a),
                sig6(cmp.b),
                sig6(cmp.gamma),
                sig6(cmp.ahlfors_c)
            );
        }
    }

    report.estimates = Some(EstimateSection {
        mode,
        holder,
        ahlfors,
        analytic,
    });
    Ok(Outcome::plain(report))
}

fn default_distances() -> Vec<f64> {
    (3..=8).map(|k| 0.5f64.powi(k)).collect()
}

fn oracle_circle(count: usize) -> SampledCurve {
    let samples = (0..count)
        .map(|k| {
            let t = k as f64 / count as f64;
            Sample::new(t, Point::from_polar(1.0, 2.0 * PI * t))
        })
        .collect();
    SampledCurve::new(samples, true).expect("circle samples are valid")
}

fn oracle_segment(count: usize) -> SampledCurve {
    // cosine-spaced samples cluster at the endpoints like the equilibrium
    // measure of the interval, which the Leja construction needs
    let m = count - 1;
    let samples = (0..count)
        .map(|k| {
            let t = k as f64 / m as f64;
            Sample::new(t, Point::new(-(PI * t).cos(), 0.0))
        })
        .collect();
    SampledCurve::new(samples, false).expect("segment samples are valid")
}

pub fn cmd_ls(args: &LsArgs, mut report: Report, quiet: bool) -> Result<Outcome, CliError> {
    let picked = [
        args.theta.is_some(),
        args.curve_file.is_some(),
        args.oracle.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if picked != 1 {
        return Err(CliError::Usage(
            "provide exactly one of --theta, --curve-file, --oracle".into(),
        ));
    }

    let (curve, default_bases, default_n): (SampledCurve, Option<Vec<f64>>, usize) =
        if let Some(theta) = args.theta {
            let angle = parse_angle(theta)?;
            let curve = pi_theta(angle, args.sides, args.level).map_err(from_koch)?;
            (curve, None, 128)
        } else if let Some(path) = &args.curve_file {
            let (file, bytes) = CurveFile::read(path).map_err(CliError::Io)?;
            let curve = file
                .to_curve()
                .map_err(|e| CliError::Usage(format!("invalid curve file: {e:#}")))?;
            report.input_digest = Some(digest(&bytes));
            (curve, None, 128)
        } else {
            match args.oracle.expect("picked above") {
                OracleArg::Circle => (oracle_circle(args.candidates.unwrap_or(512)), None, 128),
                // the midpoint decay of the interval needs a fine
                // normalization before the smallest probes clear the
                // sup-norm bias, hence the large default order
                OracleArg::Segment => (
                    oracle_segment(args.candidates.unwrap_or(16385)),
                    Some(vec![1.0, 0.5]),
                    4096,
                ),
            }
        };

    let leja_n = args.leja_n.unwrap_or(default_n);
    let candidates: Vec<Point> = curve.samples().iter().map(|s| s.z).collect();
    let leja = leja_points(&candidates, leja_n).map_err(from_potential)?;

    let bases = match (&args.bases, default_bases) {
        (Some(bases), _) => bases.clone(),
        (None, Some(defaults)) => defaults,
        // probe where the node dips disturb the potential least
        (None, None) if args.oracle.is_some() => vec![least_covered_base(&curve, &leja)],
        (None, None) => (0..8).map(|k| k as f64 / 8.0).collect(),
    };
    let distances = args.distances.clone().unwrap_or_else(default_distances);
    let side = match args.side {
        SideArg::Left => NormalSide::Left,
        SideArg::Right => NormalSide::Right,
    };

    let estimate =
        ls_exponent_estimate(&curve, &leja, &bases, &distances, side).map_err(from_potential)?;

    if !quiet {
        println!(
            "leja set: {} points over {} candidates; decay fits (noise floor {NOISE_FLOOR:e}):",
            leja_n,
            candidates.len()
        );
        for row in &estimate.rows {
            match (&row.fit, &row.note) {
                (Some(fit), _) => println!(
                    "  base t = {}: slope {} (r^2 = {}, {} probes)",
                    sig6(row.base_t),
                    sig6(fit.slope),
                    sig6(fit.r_squared),
                    fit.distances.len()
                ),
                (None, Some(note)) => println!("  base t = {}: {note}", sig6(row.base_t)),
                (None, None) => {}
            }
        }
        println!(
            "decay exponent estimate (max slope): {}",
            sig6(estimate.exponent)
        );
    }

    report.ls = Some(LsSection {
        leja_n,
        candidate_count: candidates.len(),
        noise_floor: NOISE_FLOOR,
        side,
        distances,
        leja,
        estimate,
    });
    Ok(Outcome::plain(report))
}

pub fn cmd_sweep(args: &SweepArgs, mut report: Report, quiet: bool) -> Result<Outcome, CliError> {
    if args.steps < 1 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    if !(args.theta_min > 0.0 && args.theta_min <= args.theta_max) {
        return Err(CliError::Usage(
            "need 0 < --theta-min <= --theta-max".into(),
        ));
    }
    let mut rows = Vec::with_capacity(args.steps as usize);
    for k in 0..args.steps {
        let theta = if args.steps == 1 {
            args.theta_min
        } else {
            args.theta_min + (args.theta_max - args.theta_min) * k as f64 / (args.steps - 1) as f64
        };
        let cert: Certificate = certify_koch(parse_angle(theta)?);
        rows.push(SweepCertRow {
            theta,
            a: cert.bounds.a,
            b: cert.bounds.b,
            gamma: cert.bounds.gamma,
            ahlfors_c: cert.ahlfors_c,
            ls_alpha: cert.ls_alpha,
            certified: cert.verdict == Verdict::CertifiedMinimumSet,
        });
    }
    if !quiet {
        println!(
            "{:>12} {:>12} {:>12} {:>12} {:>12} {:>12}  verdict",
            "theta", "A", "B", "gamma", "c", "alpha"
        );
        for row in &rows {
            println!(
                "{:>12} {:>12} {:>12} {:>12} {:>12} {:>12}  {}",
                sig6(row.theta),
                sig6(row.a),
                sig6(row.b),
                sig6(row.gamma),
                sig6(row.ahlfors_c),
                sig6(row.ls_alpha),
                if row.certified {
                    "certified"
                } else {
                    "not certified"
                }
            );
        }
    }
    report.sweep = Some(rows);
    Ok(Outcome::plain(report))
}

pub fn write_json(report: &Report, path: &Path, quiet: bool) -> Result<(), CliError> {
    let json = report.to_json();
    if path.as_os_str() == "-" {
        println!("{json}");
    } else {
        std::fs::write(path, json)
            .map_err(|e| CliError::Io(anyhow::anyhow!("writing {}: {e}", path.display())))?;
        if !quiet {
            println!("wrote report {}", path.display());
        }
    }
    Ok(())
}
