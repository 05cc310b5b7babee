use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::dyadic::Dyadic;
use super::rational::Rational;

/// Closed real interval with dyadic endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        Interval {
            lo: d.clone(),
            hi: d,
        }
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(Dyadic::from_int(n))
    }

    /// Enclosure of `q` on the `2^-prec` grid (exact when `q` is dyadic there).
    pub fn from_rational(q: &Rational, prec: i64) -> Self {
        Interval {
            lo: Dyadic::floor_at(q, prec),
            hi: Dyadic::ceil_at(q, prec),
        }
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn mid_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.max_ref(&other.lo).clone();
        let hi = self.hi.min_ref(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.min_ref(&other.lo).clone(),
            hi: self.hi.max_ref(&other.hi).clone(),
        }
    }

    /// Pointwise maximum of two intervals.
    pub fn max(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.max_ref(&other.lo).clone(),
            hi: self.hi.max_ref(&other.hi).clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().cloned().unwrap_or_else(Dyadic::zero);
        let hi = c.iter().max().cloned().unwrap_or_else(Dyadic::zero);
        Interval { lo, hi }
    }

    pub fn sqr(&self) -> Self {
        let a = self.abs();
        Interval {
            lo: &a.lo * &a.lo,
            hi: &a.hi * &a.hi,
        }
    }

    pub fn abs(&self) -> Self {
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval {
                lo: Dyadic::zero(),
                hi: (-&self.lo).max_ref(&self.hi).clone(),
            }
        } else if self.hi.is_negative() || (self.hi.is_zero() && self.lo.is_negative()) {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        let k = Dyadic::from_bigint(k.clone());
        let a = &self.lo * &k;
        let b = &self.hi * &k;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// Outward-rounded quotient by a nonzero integer.
    pub fn div_int(&self, d: &BigInt, prec: i64) -> Self {
        assert!(!d.is_zero());
        let q = if d.is_negative() {
            self.neg()
        } else {
            self.clone()
        };
        let d = d.abs();
        Interval {
            lo: Dyadic::floor_at(
                &(q.lo.to_rational() / Rational::from_integer(d.clone())),
                prec,
            ),
            hi: Dyadic::ceil_at(&(q.hi.to_rational() / Rational::from_integer(d)), prec),
        }
    }

    /// Outward-rounded reciprocal; `None` when the interval contains zero.
    pub fn recip(&self, prec: i64) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        let one = Rational::from_integer(1.into());
        Some(Interval {
            lo: Dyadic::floor_at(&(&one / self.hi.to_rational()), prec),
            hi: Dyadic::ceil_at(&(&one / self.lo.to_rational()), prec),
        })
    }

    /// Enclosure of the square root of the non-negative part.
    pub fn sqrt(&self, prec: i64) -> Self {
        let lo = if self.lo.is_positive() {
            self.lo.sqrt_floor(prec)
        } else {
            Dyadic::zero()
        };
        let hi = if self.hi.is_positive() {
            self.hi.sqrt_ceil(prec)
        } else {
            Dyadic::zero()
        };
        Interval { lo, hi }
    }

    /// Widen endpoints to the `2^-prec` grid.
    pub fn round_out(&self, prec: i64) -> Self {
        Interval {
            lo: self.lo.round_floor(prec),
            hi: self.hi.round_ceil(prec),
        }
    }

    /// Widen endpoints to at most `bits` significant bits.
    pub fn round_out_rel(&self, bits: u64) -> Self {
        Interval {
            lo: self.lo.round_floor_rel(bits),
            hi: self.hi.round_ceil_rel(bits),
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

/// Axis-aligned complex rectangle `re + i*im`.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexBox {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexBox { re, im }
    }

    pub fn zero() -> Self {
        Self::real(Interval::zero())
    }

    pub fn real(re: Interval) -> Self {
        ComplexBox {
            re,
            im: Interval::zero(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexBox {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexBox {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexBox {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        ComplexBox {
            re: self.re.scale_int(k),
            im: self.im.scale_int(k),
        }
    }

    pub fn div_int(&self, d: &BigInt, prec: i64) -> Self {
        ComplexBox {
            re: self.re.div_int(d, prec),
            im: self.im.div_int(d, prec),
        }
    }

    pub fn conj(&self) -> Self {
        ComplexBox {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// Enclosure of `|z|^2`.
    pub fn abs_sq(&self) -> Interval {
        self.re.sqr().add(&self.im.sqr())
    }

    /// Enclosure of `|z|`.
    pub fn modulus(&self, prec: i64) -> Interval {
        self.abs_sq().sqrt(prec)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn intersect(&self, o: &Self) -> Option<Self> {
        Some(ComplexBox {
            re: self.re.intersect(&o.re)?,
            im: self.im.intersect(&o.im)?,
        })
    }

    pub fn hull(&self, o: &Self) -> Self {
        ComplexBox {
            re: self.re.hull(&o.re),
            im: self.im.hull(&o.im),
        }
    }

    pub fn is_subset_of(&self, o: &Self) -> bool {
        self.re.is_subset_of(&o.re) && self.im.is_subset_of(&o.im)
    }

    pub fn contains_f64(&self, re: f64, im: f64) -> bool {
        self.re.lo.to_f64() <= re
            && re <= self.re.hi.to_f64()
            && self.im.lo.to_f64() <= im
            && im <= self.im.hi.to_f64()
    }

    /// Larger of the two side lengths.
    pub fn width(&self) -> Dyadic {
        self.re.width().max_ref(&self.im.width()).clone()
    }

    pub fn mid_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }

    pub fn round_out(&self, prec: i64) -> Self {
        ComplexBox {
            re: self.re.round_out(prec),
            im: self.im.round_out(prec),
        }
    }
}

impl fmt::Debug for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn products_enclose() {
        let a = Interval::new(Dyadic::from_int(-2), Dyadic::from_int(3));
        let b = Interval::new(Dyadic::from_int(-1), Dyadic::from_int(4));
        let p = a.mul(&b);
        assert_eq!(p.lo, Dyadic::from_int(-8));
        assert_eq!(p.hi, Dyadic::from_int(12));
        assert_eq!(a.sqr().lo, Dyadic::zero());
        assert_eq!(a.abs().hi, Dyadic::from_int(3));
    }

    #[test]
    fn division_rounds_outward() {
        let one = Interval::from_int(1);
        let t = one.div_int(&BigInt::from(3), 20);
        assert!(t.contains_rational(&rat(1, 3)));
        let r = Interval::from_int(3).recip(20).unwrap();
        assert!(r.contains_rational(&rat(1, 3)));
        assert!(Interval::new(Dyadic::from_int(-1), Dyadic::from_int(1))
            .recip(10)
            .is_none());
    }

    #[test]
    fn modulus_of_unit_box() {
        let b = ComplexBox::new(Interval::from_int(3), Interval::from_int(4));
        let m = b.modulus(16);
        assert_eq!(m.lo, Dyadic::from_int(5));
        assert_eq!(m.hi, Dyadic::from_int(5));
    }
}
