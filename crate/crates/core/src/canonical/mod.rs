//! Chebyshev polynomials, linear conjugacy and two-sided equivalence to power
//! maps and Chebyshev polynomials, special-set classification, and the
//! term-count bound for compositions with Laurent polynomials.

mod forms;
mod fz;
mod linear;
mod special;

use alloc::string::String;

use thiserror::Error;

pub use forms::{
    chebyshev, conjugate_normal_form, is_conjugate_to_cheb, is_conjugate_to_power,
    two_sided_equiv_cheb, two_sided_equiv_power, Sign,
};
pub use fz::{fz_bound_check, is_trinomial_symmetric, laurent_compose, FzReport};
pub use linear::LinearMap;
pub use special::{
    is_special_set, Condition, Finding, Form, SpecialVerdict, SpecialityReport, Witness,
};

/// Default conductor bound for root-of-unity scalings in witnesses.
pub const DEFAULT_SCALING_CONDUCTOR: u64 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("degree {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("the required linear map has a coefficient outside every cyclotomic field")]
    WitnessNotCyclotomic,
    #[error("no scaling with conductor at most {max_conductor} was found")]
    ScalingOutsideSearchSpace { max_conductor: u64 },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
}
