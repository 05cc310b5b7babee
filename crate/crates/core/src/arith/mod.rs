//! Exact arithmetic: rationals, cyclotomic numbers, certified complex
//! enclosures of their embeddings, houses and p-adic valuations.

mod cyclo;
mod cyclotomic;
mod dyadic;
mod embed;
mod integer;
mod interval;
mod parse;
mod radical;
mod rational;
mod trig;

pub use cyclo::{CycloNum, ValueKey};
pub use cyclotomic::cyclotomic_poly;
pub use dyadic::Dyadic;
pub use embed::{
    embed, embeddings, house, house_leq, house_leq_with_budget, is_root_of_unity, units_mod,
    Embedding, HouseInterval, Ternary,
};
pub(crate) use embed::{rational_sqrt_exact, raw_embeddings};
pub(crate) use integer::{gcd_u64, lcm_u64};
pub use integer::{is_prime, prime_factors, totient};
pub use interval::{ComplexBox, Interval};
pub use parse::{parse_element, ParseError};
pub use radical::{nth_root, RadicalSearch};
pub use rational::{
    denominator_clearing, is_integer, padic_val, parse_rational, rat, rational_to_string, PadicVal,
    Rational,
};
pub use trig::{pi_interval, UnitRoots};

use thiserror::Error;

/// Errors raised by the arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid place: {0} is not prime")]
    InvalidPlace(u64),
}
