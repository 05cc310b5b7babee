//! Exact arithmetic over the rationals and their cyclotomic closure, together
//! with the machinery for semigroup polynomial dynamics built on top of it:
//! orbit trees, preperiodicity detectors, special-set classification and the
//! explicit growth and size bounds that control orbits.
//!
//! The crate is `no_std` (it needs `alloc`). Enable the `parallel` feature to
//! fan out tree expansion, candidate scans and root-of-unity searches over a
//! rayon pool; results are identical with or without it.
#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod arith;
pub mod bounds;
pub mod canonical;
pub mod dynamics;
pub mod poly;

mod par;

pub use arith::{
    padic_val, ComplexBox, CycloNum, Dyadic, HouseInterval, Interval, PadicVal, Rational, Ternary,
};
pub use poly::{LaurentPoly, Poly};
