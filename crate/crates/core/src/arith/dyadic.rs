use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{rational_to_string, Rational};

/// Exact binary fraction `mantissa * 2^exponent`, normalized to an odd
/// mantissa (zero is `0 * 2^0`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

impl Dyadic {
    pub fn new(m: BigInt, e: i64) -> Self {
        if m.is_zero() {
            return Self::zero();
        }
        let tz = m.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { m, e }
        } else {
            Dyadic {
                m: m >> tz,
                e: e + tz as i64,
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            m: BigInt::zero(),
            e: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::new(n, 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.m.is_positive()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            m: self.m.abs(),
            e: self.e,
        }
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic {
            m: self.m.clone(),
            e: self.e + k,
        }
    }

    pub fn to_rational(&self) -> Rational {
        if self.e >= 0 {
            Rational::from_integer(&self.m << self.e as usize)
        } else {
            Rational::new(self.m.clone(), BigInt::one() << (-self.e) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.m.bits() as i64;
        let (m, e) = if bits > 60 {
            let shift = bits - 60;
            (&self.m >> shift as usize, self.e + shift)
        } else {
            (self.m.clone(), self.e)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        mf * libm::exp2(e as f64)
    }

    /// Largest multiple of `2^-prec` not exceeding `q`.
    pub fn floor_at(q: &Rational, prec: i64) -> Self {
        let (n, d) = scaled(q, prec);
        Self::new(n.div_floor(&d), -prec)
    }

    /// Smallest multiple of `2^-prec` not below `q`.
    pub fn ceil_at(q: &Rational, prec: i64) -> Self {
        let (n, d) = scaled(q, prec);
        Self::new(n.div_ceil(&d), -prec)
    }

    pub fn round_floor(&self, prec: i64) -> Self {
        if self.e >= -prec {
            return self.clone();
        }
        let shift = (-prec - self.e) as usize;
        Self::new(self.m.clone() >> shift, -prec)
    }

    pub fn round_ceil(&self, prec: i64) -> Self {
        -(-self).round_floor(prec)
    }

    /// Keeps at most `bits` significant bits, rounding down.
    pub fn round_floor_rel(&self, bits: u64) -> Self {
        let have = self.m.bits();
        if have <= bits {
            return self.clone();
        }
        let shift = (have - bits) as usize;
        Self::new(self.m.clone() >> shift, self.e + shift as i64)
    }

    pub fn round_ceil_rel(&self, bits: u64) -> Self {
        -(-self).round_floor_rel(bits)
    }

    /// Lower bound for `sqrt(self)` on the `2^-prec` grid; `self >= 0`.
    pub fn sqrt_floor(&self, prec: i64) -> Self {
        debug_assert!(!self.is_negative());
        let y = Self::floor_at(&self.to_rational(), 2 * prec).m_at(-2 * prec);
        Self::new(y.sqrt(), -prec)
    }

    /// Upper bound for `sqrt(self)` on the `2^-prec` grid; `self >= 0`.
    pub fn sqrt_ceil(&self, prec: i64) -> Self {
        debug_assert!(!self.is_negative());
        let y = Self::ceil_at(&self.to_rational(), 2 * prec).m_at(-2 * prec);
        let mut s = y.sqrt();
        if &s * &s < y {
            s += 1;
        }
        Self::new(s, -prec)
    }

    /// Mantissa when the value is written with exponent `e`; the value must
    /// be representable at that exponent.
    fn m_at(&self, e: i64) -> BigInt {
        debug_assert!(self.is_zero() || self.e >= e);
        if self.is_zero() {
            BigInt::zero()
        } else {
            &self.m << (self.e - e) as usize
        }
    }

    pub fn min_ref<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max_ref<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

fn scaled(q: &Rational, prec: i64) -> (BigInt, BigInt) {
    if prec >= 0 {
        (q.numer() << prec as usize, q.denom().clone())
    } else {
        (q.numer().clone(), q.denom() << (-prec) as usize)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.e.min(other.e);
        self.m_at(e).cmp(&other.m_at(e))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.e.min(rhs.e);
        Dyadic::new(self.m_at(e) + rhs.m_at(e), e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.m * &rhs.m, self.e + rhs.e)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            m: -&self.m,
            e: self.e,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            m: -self.m,
            e: self.e,
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational_to_string(&self.to_rational()))
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{} (~{})", self.m, self.e, self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn normalizes_and_compares() {
        let a = Dyadic::new(BigInt::from(12), -3);
        assert_eq!(a.mantissa(), &BigInt::from(3));
        assert_eq!(a.exponent(), -1);
        assert!(Dyadic::from_int(1) < a);
        assert_eq!(a.to_rational(), rat(3, 2));
    }

    #[test]
    fn directed_rounding() {
        let third = rat(1, 3);
        let lo = Dyadic::floor_at(&third, 10);
        let hi = Dyadic::ceil_at(&third, 10);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert_eq!((&hi - &lo).to_rational(), rat(1, 1024));
        let neg = Dyadic::floor_at(&-third.clone(), 4);
        assert_eq!(neg.to_rational(), rat(-6, 16));
    }

    #[test]
    fn square_roots_bracket() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt_floor(40);
        let hi = two.sqrt_ceil(40);
        assert!(&lo * &lo <= two && two <= &hi * &hi);
        assert!((&hi - &lo) <= Dyadic::new(BigInt::one(), -40));
        let four = Dyadic::from_int(4);
        assert_eq!(four.sqrt_floor(8), Dyadic::from_int(2));
        assert_eq!(four.sqrt_ceil(8), Dyadic::from_int(2));
    }

    #[test]
    fn relative_rounding() {
        let x = Dyadic::from_int(0b1011_0111);
        assert_eq!(x.round_floor_rel(3), Dyadic::from_int(0b1010_0000));
        assert_eq!(x.round_ceil_rel(3), Dyadic::from_int(0b1100_0000));
    }
}
