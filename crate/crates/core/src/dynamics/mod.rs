//! Semigroup dynamics: words, orbit trees, preperiodicity detection and the
//! finite candidate sets built from linear combinations of earlier levels.

mod growth;
mod orbit;
mod preper;
mod scan;
mod sigma;
mod system;
mod word;

use alloc::string::String;

use thiserror::Error;

use crate::arith::ArithError;
use crate::bounds::BoundsError;

pub use growth::{
    growth_check_arch, growth_check_padic, prefix_house_bound, prefix_integrality,
    IntegralityReport, PadicGrowth, PrefixHouse, PrefixHouseReport,
};
pub use orbit::{build_tree, compose_word, evaluate_word, OrbitNode, OrbitTree, TreeBudget};
pub use preper::{detect_pi, detect_pibar, Collision, CollisionCertificate};
pub use scan::{scan_sa, ScanConfig, ScanHit, ScanReport, ScanSkip};
pub use sigma::{
    monic_scaled_integral, pool_house_bound, sigma_members, verify_sigma_bounds, SigmaBoundsReport,
    SigmaCandidate, SigmaOutcome, SigmaSearch, Verdict,
};
pub use system::{PolySystem, SystemError};
pub use word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("tree budget exceeded ({nodes} values, {words} words)")]
    TreeBudgetExceeded { nodes: usize, words: usize },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("all generators must share one degree")]
    UnequalDegrees,
    #[error("common degree {0} is below the required minimum 3")]
    DegreeTooSmall(usize),
    #[error("could not decide a comparison within the precision budget")]
    PrecisionExhausted,
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
