use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "cyclodyn",
    version,
    about = "Exact semigroup dynamics over the cyclotomic closure of Q"
)]
pub struct Cli {
    /// Run directory for report.json and manifest.json
    #[arg(long, global = true, default_value = "cyclodyn-out")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the levelled orbit tree of a point
    Orbit(OrbitArgs),
    /// Search for Pi or ov-Pi preperiodicity certificates
    Preperiodic(PreperArgs),
    /// Scan starting points whose orbit meets integers of bounded house
    ScanSa(ScanArgs),
    /// Enumerate Sigma_A candidates and check their root bounds
    Sigma(SigmaArgs),
    /// Classify a generator set as special or not
    Special(SpecialArgs),
    /// Compute L, D, m, K and M for a system
    Bounds(BoundsArgs),
    /// Decompose a cyclotomic integer into roots of unity
    Loxton(LoxtonCmdArgs),
    /// Check the term-count degree bound for g(q)
    FzCheck(FzArgs),
    /// Check growth along a word
    Growth(GrowthArgs),
    /// Run a seeded randomized suite
    Suite(SuiteArgs),
    /// Re-check a run directory's hash and certificates
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 200_000)]
    pub max_nodes: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_words: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LoxtonArgs {
    #[arg(long, default_value_t = 1)]
    pub e_size: u64,
    #[arg(long, default_value = "1")]
    pub b: String,
    #[arg(long, default_value = "1")]
    pub r_scale: String,
    #[arg(long, default_value = "3")]
    pub r_exp: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OrbitArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PreperKind {
    Pi,
    Pibar,
}

impl PreperKind {
    pub fn name(self) -> &'static str {
        match self {
            PreperKind::Pi => "pi",
            PreperKind::Pibar => "pibar",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PreperArgs {
    #[arg(long, value_enum)]
    pub kind: PreperKind,
    #[arg(long)]
    pub system: PathBuf,
    /// Comma-separated starting points
    #[arg(long)]
    pub alpha_set: String,
    /// Tree depth (pibar) or base-word length (pi)
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    /// Longest loop word tried (pi)
    #[arg(long, default_value_t = 4)]
    pub loop_depth: usize,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScanArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long = "A", default_value = "1")]
    pub a: String,
    #[arg(long, default_value_t = 12)]
    pub conductor_max: u64,
    #[arg(long, default_value_t = 4)]
    pub height_max: u64,
    #[arg(long, default_value_t = 6)]
    pub depth: usize,
    /// Starting points examined before the scan stops as budget-exhausted
    #[arg(long, default_value_t = 200_000)]
    pub max_candidates: usize,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SigmaArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long = "A", default_value = "1")]
    pub a: String,
    /// Longest word length
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Comma-separated coefficient pool
    #[arg(long, default_value = "0,1,-1,z(4),-z(4)")]
    pub pool: String,
    /// Cap on assignments per word
    #[arg(long, default_value_t = 100_000)]
    pub max_assignments: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpecialArgs {
    #[arg(long)]
    pub system: PathBuf,
    /// Largest conductor searched for scaling roots
    #[arg(long, default_value_t = cyclodyn_core::canonical::DEFAULT_SCALING_CONDUCTOR)]
    pub max_conductor: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BoundsArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long = "A", default_value = "1")]
    pub a: String,
    #[command(flatten)]
    pub loxton: LoxtonArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LoxtonCmdArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value_t = 4)]
    pub max_b: usize,
    #[arg(long, default_value_t = 60)]
    pub order_bound: u64,
    #[command(flatten)]
    pub loxton: LoxtonArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FzArgs {
    /// Coefficient list, as a file or inline JSON
    #[arg(long)]
    pub g: String,
    /// Exponent -> coefficient map, as a file or inline JSON
    #[arg(long)]
    pub q: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthKind {
    Arch,
    Padic,
    House,
    Integrality,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GrowthArgs {
    #[arg(long, value_enum, default_value = "arch")]
    pub kind: GrowthKind,
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long)]
    pub alpha: String,
    /// Comma-separated 1-based generator indices
    #[arg(long)]
    pub word: String,
    #[arg(long, default_value_t = 1)]
    pub embedding: u64,
    #[arg(long)]
    pub prime: Option<u64>,
    #[arg(long = "A", default_value = "1")]
    pub a: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Growth,
    Sigma,
    Fz,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SuiteArgs {
    #[arg(long, value_enum)]
    pub name: SuiteName,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instances per family; defaults to the suite's standard size
    #[arg(long)]
    pub count: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// Run directory (or its report.json)
    #[arg(long)]
    pub dir: PathBuf,
}
