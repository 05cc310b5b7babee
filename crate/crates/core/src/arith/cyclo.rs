use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::CycloRing;
use super::integer::{gcd_u64, lcm_u64, prime_factors, totient};
use super::rational::{rational_to_string, Rational};
use super::ArithError;

/// An element of Q(zeta_n), stored as integer power-basis coordinates over a
/// common positive denominator.
///
/// Coordinates are taken with respect to `1, zeta_n, ..., zeta_n^(phi(n)-1)`
/// modulo the n-th cyclotomic polynomial, and `gcd(num..., den) = 1`.
/// Arithmetic between different conductors happens in Q(zeta_lcm). Equality
/// is field equality, whatever the conductors.
#[derive(Clone)]
pub struct CycloNum {
    conductor: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Total-order key of the canonical (minimal conductor) representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValueKey {
    pub conductor: u64,
    pub den: BigInt,
    pub num: Vec<BigInt>,
}

impl CycloNum {
    fn from_parts(conductor: u64, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len() as u64, totient(conductor));
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -core::mem::take(c);
            }
        }
        if num.iter().all(Zero::is_zero) {
            return CycloNum {
                conductor,
                num,
                den: BigInt::one(),
            };
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            den /= &g;
            for c in num.iter_mut() {
                *c /= &g;
            }
        }
        CycloNum {
            conductor,
            num,
            den,
        }
    }

    /// Element of Q(zeta_n) from rational power-basis coordinates.
    pub fn new(conductor: u64, coords: &[Rational]) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        let phi = totient(conductor) as usize;
        assert_eq!(coords.len(), phi, "coordinate count must equal phi(n)");
        let mut den = BigInt::one();
        for c in coords {
            den = den.lcm(c.denom());
        }
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(conductor, num, den)
    }

    pub fn zero() -> Self {
        CycloNum {
            conductor: 1,
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        CycloNum {
            conductor: 1,
            num: vec![BigInt::from(n)],
            den: BigInt::one(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        CycloNum {
            conductor: 1,
            num: vec![n],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        CycloNum {
            conductor: 1,
            num: vec![q.numer().clone()],
            den: q.denom().clone(),
        }
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta(n: u64, k: i64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as u64;
        let ring = CycloRing::new(n);
        Self::from_parts(n, ring.monomial(e), BigInt::one())
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, if this element lies in Q. Rationals have the
    /// unique coordinates `(q, 0, ..., 0)` in every power basis.
    pub fn to_rational(&self) -> Option<Rational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    /// Every power-basis coordinate is an integer. The power basis of a
    /// cyclotomic field is an integral basis, so this is integrality.
    pub fn is_algebraic_integer(&self) -> bool {
        self.den.is_one()
    }

    /// The same element expressed in Q(zeta_target); `conductor | target`.
    pub fn lift(&self, target: u64) -> Self {
        assert!(
            target.is_multiple_of(self.conductor),
            "lift target must be a multiple of the conductor"
        );
        if target == self.conductor {
            return self.clone();
        }
        let step = target / self.conductor;
        let ring = CycloRing::new(target);
        let mut v = vec![BigInt::zero(); (step as usize) * self.num.len()];
        for (j, c) in self.num.iter().enumerate() {
            v[j * step as usize] = c.clone();
        }
        CycloNum {
            conductor: target,
            num: ring.reduce(v),
            den: self.den.clone(),
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let n = lcm_u64(a.conductor, b.conductor);
        (a.lift(n), b.lift(n))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = if self.conductor == other.conductor {
            return Self::add_same(self, other, negate);
        } else {
            Self::common(self, other)
        };
        Self::add_same(&a, &b, negate)
    }

    fn add_same(a: &Self, b: &Self, negate: bool) -> Self {
        let num = if a.den == b.den {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| if negate { x - y } else { x + y })
                .collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| {
                    let l = x * &b.den;
                    let r = y * &a.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if a.den == b.den {
            a.den.clone()
        } else {
            &a.den * &b.den
        };
        Self::from_parts(a.conductor, num, den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.conductor == 1 {
            return other.scale_bigint(&self.num[0], &self.den);
        }
        if other.conductor == 1 {
            return self.scale_bigint(&other.num[0], &other.den);
        }
        let (a, b) = Self::common(self, other);
        let ring = CycloRing::new(a.conductor);
        let num = ring.mul(&a.num, &b.num);
        Self::from_parts(a.conductor, num, &a.den * &b.den)
    }

    fn scale_bigint(&self, n: &BigInt, d: &BigInt) -> Self {
        let num = self.num.iter().map(|c| c * n).collect();
        Self::from_parts(self.conductor, num, &self.den * d)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.scale_bigint(q.numer(), q.denom())
    }

    /// Image under zeta_n -> zeta_n^k; `gcd(k, n) = 1`.
    pub fn galois(&self, k: u64) -> Self {
        if self.conductor <= 2 || k % self.conductor == 1 {
            return self.clone();
        }
        let ring = CycloRing::new(self.conductor);
        CycloNum {
            conductor: self.conductor,
            num: ring.galois(&self.num, k),
            den: self.den.clone(),
        }
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois(self.conductor - 1)
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> Rational {
        let n = self.conductor;
        let mut acc = self.clone();
        for k in 2..n {
            if gcd_u64(k, n) == 1 {
                acc = &acc * &self.galois(k);
            }
        }
        acc.to_rational_unchecked()
    }

    fn to_rational_unchecked(&self) -> Rational {
        debug_assert!(self.num[1..].iter().all(Zero::is_zero));
        Rational::new(self.num[0].clone(), self.den.clone())
    }

    /// Multiplicative inverse, computed as the product of the non-trivial
    /// conjugates divided by the norm.
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = self.conductor;
        if n <= 2 {
            let q = Rational::new(self.den.clone(), self.num[0].clone());
            return Ok(Self::from_rational(&q));
        }
        let mut others = Self::one().lift(n);
        for k in 2..n {
            if gcd_u64(k, n) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (self * &others).to_rational_unchecked();
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ArithError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Coordinates of this element in Q(zeta_m), if it lies there (`m | n`).
    fn descend(&self, m: u64) -> Option<Self> {
        let n = self.conductor;
        let step = n / m;
        // Fixed by Gal(Q(zeta_n)/Q(zeta_m)) is necessary.
        let mut k = 1 + m;
        while k < n {
            if gcd_u64(k, n) == 1 && self.galois(k) != *self {
                return None;
            }
            k += m;
        }
        let ring = CycloRing::new(n);
        let phi_m = totient(m) as usize;
        let phi_n = self.num.len();
        // Columns: images of zeta_m^j = zeta_n^(j*step).
        let cols: Vec<Vec<BigInt>> = (0..phi_m).map(|j| ring.monomial(j as u64 * step)).collect();
        let mut rows: Vec<Vec<Rational>> = (0..phi_n)
            .map(|i| {
                let mut r: Vec<Rational> = cols
                    .iter()
                    .map(|c| Rational::from_integer(c[i].clone()))
                    .collect();
                r.push(Rational::from_integer(self.num[i].clone()));
                r
            })
            .collect();
        let sol = solve_consistent(&mut rows, phi_m)?;
        let mut coords = Vec::with_capacity(phi_m);
        for s in sol {
            coords.push(s / Rational::from_integer(self.den.clone()));
        }
        Some(Self::new(m, &coords))
    }

    /// The same element at its minimal conductor.
    pub fn canonicalize(&self) -> Self {
        let mut x = self.clone();
        if x.is_zero() {
            return Self::zero();
        }
        'outer: loop {
            if x.conductor == 1 {
                return x;
            }
            if x.num[1..].iter().all(Zero::is_zero) {
                return Self::from_parts(1, vec![x.num[0].clone()], x.den.clone());
            }
            for (p, _) in prime_factors(x.conductor) {
                if let Some(y) = x.descend(x.conductor / p) {
                    x = y;
                    continue 'outer;
                }
            }
            return x;
        }
    }

    pub fn key(&self) -> ValueKey {
        let c = self.canonicalize();
        ValueKey {
            conductor: c.conductor,
            den: c.den,
            num: c.num,
        }
    }

    /// Is this `±zeta_n^k` for its own conductor (i.e. a root of unity)?
    pub fn as_root_of_unity(&self) -> Option<(u64, u64)> {
        let c = self.canonicalize();
        if !c.den.is_one() {
            return None;
        }
        let order_bound = lcm_u64(2, c.conductor);
        for e in 0..order_bound {
            if Self::zeta(order_bound, e as i64) == c {
                let g = gcd_u64(e, order_bound);
                return Some((order_bound / g, e / g));
            }
        }
        None
    }
}

/// Gaussian elimination on an augmented system known to be consistent or
/// not; returns the unique solution of a full-column-rank system.
fn solve_consistent(rows: &mut [Vec<Rational>], cols: usize) -> Option<Vec<Rational>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for c in 0..cols {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            return None;
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][c].recip();
        for x in rows[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r2 in 0..rows.len() {
            if r2 != pivot_row && !rows[r2][c].is_zero() {
                let f = rows[r2][c].clone();
                let (src, dst) = if r2 < pivot_row {
                    let (a, b) = rows.split_at_mut(pivot_row);
                    (&b[0], &mut a[r2])
                } else {
                    let (a, b) = rows.split_at_mut(r2);
                    (&a[pivot_row], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d = &*d - &(&f * s);
                    }
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| rows[r][cols].clone()).collect())
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycloNum {}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                $body(self, rhs)
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                $body(&self, &rhs)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycloNum, b: &CycloNum| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &CycloNum, b: &CycloNum| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &CycloNum, b: &CycloNum| a.mul_impl(b));
forward_binop!(Div, div, |a: &CycloNum, b: &CycloNum| a
    .checked_div(b)
    .expect("division by zero"));

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl From<i64> for CycloNum {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for CycloNum {
    fn from(q: Rational) -> Self {
        Self::from_rational(&q)
    }
}

impl fmt::Display for CycloNum {
    /// Element syntax: `1/2 + 3*z(5)^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let n = self.conductor;
        for (j, c) in self.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if j == 0 {
                out.push_str(&rational_to_string(&mag));
                continue;
            }
            if !mag.is_one() {
                out.push_str(&rational_to_string(&mag));
                out.push('*');
            }
            out.push_str(&alloc::format!("z({n})"));
            if j > 1 {
                out.push_str(&alloc::format!("^{j}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({})", self.conductor, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn z(n: u64, k: i64) -> CycloNum {
        CycloNum::zeta(n, k)
    }

    #[test]
    fn minimal_polynomial_identities() {
        assert_eq!(&z(3, 1) + &z(3, 2), CycloNum::from_int(-1));
        assert_eq!(&z(4, 1) * &z(4, 1), CycloNum::from_int(-1));
        assert_eq!(z(5, 1).inv().unwrap(), z(5, 4));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(CycloNum::zero().inv(), Err(ArithError::DivisionByZero));
        assert_eq!(
            CycloNum::zero().lift(12).inv(),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn cross_conductor_equality() {
        assert_eq!(z(6, 2), z(3, 1));
        assert_eq!(z(12, 4), z(3, 1));
        assert_eq!(z(8, 4), CycloNum::from_int(-1));
        assert_ne!(z(5, 1), z(5, 2));
    }

    #[test]
    fn canonical_conductors() {
        let c = z(6, 2).canonicalize();
        assert_eq!(c.conductor(), 3);
        assert_eq!(c, z(3, 1));
        let c = z(8, 4).canonicalize();
        assert_eq!(c.conductor(), 1);
        assert_eq!(c.to_rational(), Some(rat(-1, 1)));
        let real5 = &z(5, 1) + &z(5, 4);
        assert_eq!(real5.canonicalize().conductor(), 5);
        // sqrt(2) = zeta_8 + zeta_8^7 needs all of Q(zeta_8)
        assert_eq!((&z(8, 1) + &z(8, 7)).canonicalize().conductor(), 8);
        // i = zeta_12^3 drops to conductor 4
        assert_eq!(z(12, 3).canonicalize().conductor(), 4);
        assert_eq!(z(10, 1).canonicalize().conductor(), 5);
    }

    #[test]
    fn integrality_and_denominators() {
        assert!((&z(7, 1) + &CycloNum::from_int(3)).is_algebraic_integer());
        assert!(!CycloNum::from_rational(&rat(1, 2)).is_algebraic_integer());
        assert!((&CycloNum::one() + &z(3, 1)).is_algebraic_integer());
        assert_eq!(z(3, 1).scale(&rat(1, 2)).denominator(), &BigInt::from(2));
        assert_eq!(CycloNum::from_int(5).denominator(), &BigInt::from(1));
        let x = &CycloNum::from_rational(&rat(1, 6)) + &z(4, 1).scale(&rat(1, 10));
        assert_eq!(x.denominator(), &BigInt::from(30));
    }

    #[test]
    fn roots_of_unity_detected() {
        assert_eq!(z(12, 5).as_root_of_unity(), Some((12, 5)));
        assert_eq!((-z(3, 1)).as_root_of_unity(), Some((6, 5)));
        assert_eq!(CycloNum::from_int(2).as_root_of_unity(), None);
        assert!((&CycloNum::one() + &z(3, 1)).as_root_of_unity().is_some());
    }

    #[test]
    fn display_forms() {
        let x = &CycloNum::from_rational(&rat(1, 2)) + &z(5, 2).scale(&rat(3, 1));
        assert_eq!(x.to_string(), "1/2 + 3*z(5)^2");
        assert_eq!((-z(4, 1)).to_string(), "-z(4)");
        assert_eq!(CycloNum::zero().to_string(), "0");
    }

    #[test]
    fn norm_of_gaussian_integer() {
        let x = &CycloNum::from_int(2) + &z(4, 1);
        assert_eq!(x.norm(), rat(5, 1));
    }
}
