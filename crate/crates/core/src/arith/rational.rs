use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::integer::is_prime;
use super::{ArithError, CycloNum};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// `p/q` (or a bare integer) to a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// Canonical `p/q` form; integers print without a denominator.
pub fn rational_to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

/// A p-adic valuation: finite exponent or +∞ for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PadicVal {
    Finite(i64),
    Infinity,
}

impl PadicVal {
    pub fn finite(self) -> Option<i64> {
        match self {
            PadicVal::Finite(v) => Some(v),
            PadicVal::Infinity => None,
        }
    }
}

impl fmt::Display for PadicVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicVal::Finite(v) => write!(f, "{v}"),
            PadicVal::Infinity => f.write_str("inf"),
        }
    }
}

fn int_val(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Exponent of the prime `p` in `q`; `|q|_p = p^(-v)`.
pub fn padic_val(q: &Rational, p: u64) -> Result<PadicVal, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::InvalidPlace(p));
    }
    if q.is_zero() {
        return Ok(PadicVal::Infinity);
    }
    let pb = BigInt::from(p);
    Ok(PadicVal::Finite(
        int_val(q.numer(), &pb) - int_val(q.denom(), &pb),
    ))
}

/// Least positive `D` with `D·a` an algebraic integer.
pub fn denominator_clearing(a: &CycloNum) -> BigInt {
    a.denominator().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(padic_val(&rat(12, 1), 2), Ok(PadicVal::Finite(2)));
        assert_eq!(padic_val(&rat(3, 4), 2), Ok(PadicVal::Finite(-2)));
        assert_eq!(padic_val(&rat(0, 1), 5), Ok(PadicVal::Infinity));
        assert_eq!(padic_val(&rat(7, 1), 4), Err(ArithError::InvalidPlace(4)));
        assert_eq!(padic_val(&rat(-50, 3), 5), Ok(PadicVal::Finite(2)));
    }

    #[test]
    fn parse_print() {
        assert_eq!(parse_rational("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(rational_to_string(&rat(10, 5)), "2");
        assert_eq!(rational_to_string(&rat(-1, 3)), "-1/3");
    }
}
