use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qaoa_landscape::estimate::EstimateMethod;
use qaoa_landscape::AngleGrid;

#[derive(Debug, Parser)]
#[command(
    name = "qaoa-landscape",
    version,
    about = "Exact p=1 QAOA landscapes for Ising problems"
)]
pub struct Cli {
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = "QAOA_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scan F(β, γ) over a grid and write CSV and/or PGM.
    Landscape(LandscapeArgs),
    /// Find the minimizing angles.
    Optimize(OptimizeArgs),
    /// Compare the closed form with state-vector simulation at one angle pair.
    Oracle(OracleArgs),
    /// Randomized equivalence sweep against the simulator.
    Verify(VerifyArgs),
    /// Optimal-energy estimates.
    Estimate(EstimateArgs),
    /// Ensemble averages, their optima and γ_min approximations.
    Ensemble(EnsembleArgs),
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Optimize several instances and emit a CSV report.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Method {
    Informal,
    Montanari,
    Parisi,
}

impl From<Method> for EstimateMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Informal => EstimateMethod::Informal,
            Method::Montanari => EstimateMethod::Montanari,
            Method::Parisi => EstimateMethod::Parisi,
        }
    }
}

/// Grid overrides; unset bounds keep the instance's default window.
#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub beta_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma_max: Option<f64>,
    #[arg(long)]
    pub beta_steps: Option<usize>,
    #[arg(long)]
    pub gamma_steps: Option<usize>,
}

impl GridArgs {
    pub fn apply(&self, base: AngleGrid) -> anyhow::Result<AngleGrid> {
        Ok(AngleGrid::new(
            (
                self.beta_min.unwrap_or(base.beta_min),
                self.beta_max.unwrap_or(base.beta_max),
            ),
            (
                self.gamma_min.unwrap_or(base.gamma_min),
                self.gamma_max.unwrap_or(base.gamma_max),
            ),
            self.beta_steps.unwrap_or(base.beta_steps),
            self.gamma_steps.unwrap_or(base.gamma_steps),
        )?)
    }
}

#[derive(Debug, Args)]
pub struct LandscapeArgs {
    /// Instance in G-set format.
    pub instance: PathBuf,
    #[command(flatten)]
    pub grid: GridArgs,
    /// CSV output path; CSV goes to stdout when neither output is given.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// 16-bit PGM output path.
    #[arg(long)]
    pub pgm: Option<PathBuf>,
    /// Export -F instead of F.
    #[arg(long)]
    pub negate: bool,
    /// Divide values by the optimal-energy estimate.
    #[arg(long, requires = "estimator")]
    pub normalize: bool,
    #[arg(long, value_enum)]
    pub estimator: Option<Method>,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    pub instance: PathBuf,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Coarse cells refined by the simplex search.
    #[arg(long, default_value_t = 8)]
    pub starts: usize,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub instance: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Largest qubit count the simulator accepts.
    #[arg(long, default_value_t = qaoa_landscape::oracle::DEFAULT_CAP)]
    pub cap: usize,
    /// Also print an energy histogram with this many bins.
    #[arg(long)]
    pub histogram: Option<usize>,
    /// Also print the exhaustive ground state.
    #[arg(long)]
    pub ground_state: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[arg(long, default_value_t = 50)]
    pub cases: usize,
    /// Angle pairs per instance.
    #[arg(long, default_value_t = 20)]
    pub angles: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Integer weights and fields are drawn from [-w, w].
    #[arg(long, default_value_t = 3)]
    pub max_weight: u32,
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Read |V|, |E| and the squared-weight sum from an instance.
    #[arg(long, conflicts_with_all = ["v", "e", "ssq"])]
    pub instance: Option<PathBuf>,
    #[arg(long, required_unless_present = "instance")]
    pub v: Option<usize>,
    #[arg(long, required_unless_present = "instance")]
    pub e: Option<usize>,
    /// Sum of squared coefficients; defaults to |E| (unit weights, no fields).
    #[arg(long)]
    pub ssq: Option<f64>,
    #[arg(long, value_enum, default_value_t = Method::Informal)]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct EnsembleArgs {
    #[command(subcommand)]
    pub action: EnsembleAction,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModelKind {
    SkGaussian,
    SkBimodal,
    SkTrimodal,
    SkTrimodalLimit,
    SkConstantField,
    SkNormalField,
    RegularGaussian,
    RegularGaussianField,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree (regular models) or expected degree (trimodal).
    #[arg(long)]
    pub d: Option<f64>,
    /// Constant field.
    #[arg(long, allow_negative_numbers = true)]
    pub h: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CaseKind {
    EqualScale,
    FieldDominant,
    CouplingDominant,
}

#[derive(Debug, Subcommand)]
pub enum EnsembleAction {
    /// Energy per spin at one angle pair.
    Value {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
    },
    /// Minimizing angles and energy per spin.
    Optimal {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// γ_min candidates and the vertex term at the approximate optimum.
    Heuristic {
        #[arg(long, value_enum)]
        case: CaseKind,
        /// Weight scale (h for equal-scale and coupling-dominant, J for field-dominant).
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Regular,
    Complete,
    Random,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, required_if_eq("kind", "regular"))]
    pub degree: Option<usize>,
    #[arg(long, required_if_eq("kind", "random"))]
    pub edges: Option<usize>,
    /// `pm1`, `choice:a,b,...` or `gaussian:SIGMA`.
    #[arg(long, default_value = "pm1")]
    pub couplings: String,
    /// `none`, `pm1`, `choice:a,b,...`, `constant:H` or `gaussian:SIGMA`.
    #[arg(long, default_value = "none")]
    pub fields: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(required = true)]
    pub instances: Vec<PathBuf>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Best known energy magnitude, `NAME=VALUE` with NAME the file stem.
    #[arg(long = "best-known", value_parser = parse_named)]
    pub best_known: Vec<(String, f64)>,
    /// Best known cut, `NAME=VALUE`.
    #[arg(long = "best-known-cut", value_parser = parse_named)]
    pub best_known_cut: Vec<(String, f64)>,
    /// Write `NA` in the wall-time column so output is byte-reproducible.
    #[arg(long)]
    pub no_time: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_named(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    let value = value
        .parse()
        .map_err(|_| format!("invalid number `{value}`"))?;
    Ok((name.to_string(), value))
}
