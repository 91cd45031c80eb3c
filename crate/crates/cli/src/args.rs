use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fpp_core::NormSpec;

#[derive(Debug, Parser)]
#[command(
    name = "fpp",
    version,
    about = "Diametral pressure, certificates and nonexpansive dynamics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Include wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-k pressure values and their truncated infimum.
    Pressure(PressureArgs),
    /// Dual certificate for the normalized point set.
    Certificate(CertificateArgs),
    /// Mutual coherence and the frame lower bounds.
    Coherence(CoherenceArgs),
    /// Orbits, displacement and lemma checks for an affine or translation map.
    Dynamics(DynamicsArgs),
    /// Recompute the catalogue of worked examples.
    Replicate(ReplicateArgs),
}

pub fn parse_norm(s: &str) -> Result<NormSpec, String> {
    s.parse::<NormSpec>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Point set: a JSON document or whitespace-separated rows.
    #[arg(long)]
    pub input: PathBuf,

    /// Norm tag (l1, l2, linf, lp:<p>); overrides the document's norm.
    #[arg(long, value_parser = parse_norm)]
    pub norm: Option<NormSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Signed,
    Unsigned,
    Separated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Exhaustive,
    Search,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("level").required(true).args(["k", "k_max"]))]
pub struct PressureArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Evaluate a single level k.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: Option<u64>,

    /// Evaluate k = 1..=K and report the minimum.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k_max: Option<u64>,

    #[arg(long, value_enum, default_value_t = VariantArg::Signed)]
    pub variant: VariantArg,

    /// Separation level in (0, 1], required by the separated variant.
    #[arg(long)]
    pub eta: Option<f64>,

    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,

    /// Maximum number of tuples visited per level.
    #[arg(long, default_value_t = fpp_core::pressure::DEFAULT_SEARCH_BUDGET)]
    pub budget: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Values above this count as positive.
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct CertificateArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct CoherenceArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Compare the bounds with exhaustive Phi_k for k <= m (m <= 6).
    #[arg(long)]
    pub cross_check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Plain,
    Krasnoselskii,
}

#[derive(Debug, Args)]
pub struct DynamicsArgs {
    /// JSON map description: {"kind": "affine", "a": [[..]], "b": [..], "norm": "l2"}
    /// or {"kind": "translation", "b": [..]}.
    #[arg(long)]
    pub map: PathBuf,

    /// Starting point, comma or whitespace separated; the origin by default.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,

    #[arg(long, default_value_t = 10)]
    pub steps: usize,

    #[arg(long, value_enum, default_value_t = SchemeArg::Plain)]
    pub scheme: SchemeArg,

    /// Check the displacement/diameter lemmas on the region (or the orbit).
    #[arg(long)]
    pub check_lemmas: bool,

    /// Require the affine fixed point; fails for maps without one.
    #[arg(long)]
    pub fixed_point: bool,

    /// Sample region for the lemma checks, in the point-set input format.
    #[arg(long)]
    pub region: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("selection").required(true).args(["all", "case"]))]
pub struct ReplicateArgs {
    /// Run every case in the catalogue.
    #[arg(long)]
    pub all: bool,

    /// Run a single case by name.
    #[arg(long)]
    pub case: Option<String>,
}
