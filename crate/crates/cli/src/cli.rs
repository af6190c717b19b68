//! Command-line definitions.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "minset",
    version,
    about = "Certifies Jordan curves (Koch curves in particular) as minimum sets of strictly subharmonic functions",
    after_help = "Exit codes: 0 success/certified, 2 usage error, 3 valid but not certified, 4 numeric guard tripped."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the full JSON report to this path ('-' for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    pub json_out: Option<PathBuf>,

    /// Seed for all randomized estimators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the critical constants of the certification pipeline.
    Thresholds,

    /// Decide whether a curve is a certified minimum set.
    Certify(CertifyArgs),

    /// Generate Koch curve geometry as a curve file and/or SVG.
    Koch(KochArgs),

    /// Measure Hölder ratios and the Ahlfors constant on a curve.
    Estimate(EstimateArgs),

    /// Build a Leja potential and fit local decay exponents.
    Ls(LsArgs),

    /// Certify a grid of Koch angles.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Koch base angle θ in (0, π/4]: use the closed-form bounds.
    #[arg(long)]
    pub theta: Option<f64>,

    /// Lower Hölder constant (with --b and --gamma).
    #[arg(long, visible_alias = "A")]
    pub a: Option<f64>,

    /// Upper Hölder constant.
    #[arg(long, visible_alias = "B")]
    pub b: Option<f64>,

    /// Hölder exponent in (0, 1]; with --curve-file, the exponent used for
    /// the empirical ratio measurement.
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Measure the bounds empirically from this curve file (NON-RIGOROUS).
    #[arg(long, value_name = "PATH")]
    pub curve_file: Option<PathBuf>,

    /// Pair budget when the empirical measurement needs sampled mode.
    #[arg(long, default_value_t = 200_000)]
    pub count: u64,
}

#[derive(Debug, Args)]
pub struct KochArgs {
    /// Koch base angle θ in (0, π/4].
    #[arg(long)]
    pub theta: f64,

    /// Subdivision level.
    #[arg(long)]
    pub level: u32,

    /// Close the curve: replace the edges of a regular n-gon with Koch copies.
    #[arg(long)]
    pub sides: Option<u32>,

    /// Write the node curve as a curve file.
    #[arg(long, value_name = "PATH")]
    pub curve_out: Option<PathBuf>,

    /// Write the curve as an SVG drawing.
    #[arg(long, value_name = "PATH")]
    pub svg_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhatArg {
    Holder,
    Ahlfors,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Koch base angle θ: estimate on the level-`level` node curve.
    #[arg(long)]
    pub theta: Option<f64>,

    /// Subdivision level for --theta mode.
    #[arg(long, default_value_t = 10)]
    pub level: u32,

    /// Curve file to estimate on instead of a Koch curve.
    #[arg(long, value_name = "PATH")]
    pub curve_file: Option<PathBuf>,

    /// Which estimators to run.
    #[arg(long, value_enum, default_value_t = WhatArg::Both)]
    pub what: WhatArg,

    /// Hölder exponent; defaults to γ(θ) in Koch mode.
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Ahlfors window; defaults to diam(curve)/4.
    #[arg(long)]
    pub delta: Option<f64>,

    /// Pair/triple exploration strategy.
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,

    /// Draw budget in sampled mode.
    #[arg(long, default_value_t = 200_000)]
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    /// Unit circle (Green function log|z|).
    Circle,
    /// Segment [-1, 1] (Green function log|z + sqrt(z^2-1)|).
    Segment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Args)]
pub struct LsArgs {
    /// Koch base angle θ: run on the closed curve Π_θ.
    #[arg(long)]
    pub theta: Option<f64>,

    /// Subdivision level for --theta mode.
    #[arg(long, default_value_t = 6)]
    pub level: u32,

    /// Polygon sides for --theta mode.
    #[arg(long, default_value_t = 12)]
    pub sides: u32,

    /// Curve file with the candidate set.
    #[arg(long, value_name = "PATH")]
    pub curve_file: Option<PathBuf>,

    /// Built-in validation geometry with a known Green function.
    #[arg(long, value_enum)]
    pub oracle: Option<OracleArg>,

    /// Number of Leja points; defaults to 128, except 4096 for the segment
    /// oracle whose midpoint decay needs the finer normalization.
    #[arg(long)]
    pub leja_n: Option<usize>,

    /// Candidate count for --oracle mode.
    #[arg(long)]
    pub candidates: Option<usize>,

    /// Comma-separated base parameters; defaults depend on the input kind.
    #[arg(long, value_delimiter = ',')]
    pub bases: Option<Vec<f64>>,

    /// Comma-separated probe distances, strictly decreasing in (0, 1];
    /// default 2^-3..2^-8.
    #[arg(long, value_delimiter = ',')]
    pub distances: Option<Vec<f64>>,

    /// Normal side for open curves.
    #[arg(long, value_enum, default_value_t = SideArg::Left)]
    pub side: SideArg,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Smallest angle of the grid.
    #[arg(long)]
    pub theta_min: f64,

    /// Largest angle of the grid.
    #[arg(long)]
    pub theta_max: f64,

    /// Number of grid points (inclusive endpoints).
    #[arg(long, default_value_t = 20)]
    pub steps: u32,
}
