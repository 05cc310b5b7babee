use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::cyclo::CycloNum;
use super::dyadic::Dyadic;
use super::integer::{gcd_u64, lcm_u64};
use super::interval::{ComplexBox, Interval};
use super::rational::Rational;
use super::trig::UnitRoots;

/// The embedding `zeta_n -> exp(2*pi*i*k/n)` of Q(zeta_n), `gcd(k, n) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Embedding(pub u64);

/// Three-valued outcome of a certified comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ternary {
    Yes,
    No,
    Boundary,
}

/// Certified enclosure `lo <= house <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HouseInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub precision_bits: u32,
}

impl HouseInterval {
    pub fn contains_rational(&self, q: &Rational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }
}

/// Default refinement budget (bits) for `house_leq`.
pub const HOUSE_BUDGET_BITS: u32 = 1 << 14;

/// Residues `1 <= k <= n` coprime to `n`, ascending (`[1]` for n = 1).
pub fn units_mod(n: u64) -> Vec<u64> {
    (1..=n.max(1)).filter(|&k| gcd_u64(k, n) == 1).collect()
}

fn bits_of(x: &BigInt) -> i64 {
    x.bits() as i64
}

fn working_precision(a: &CycloNum, prec: u32) -> u32 {
    let mass: BigInt = a.numerators().iter().map(|c| c.abs()).sum();
    let excess = (bits_of(&mass) - bits_of(a.denominator()) + 1).max(0);
    let phi_bits = 64 - (a.numerators().len() as u64).leading_zeros() as i64;
    (prec as i64 + excess + phi_bits + 8) as u32
}

/// One box per `k`, each certified to contain `sigma_k(a)`.
fn raw_boxes(a: &CycloNum, ks: &[u64], prec: u32) -> Vec<ComplexBox> {
    let n = a.conductor();
    if a.is_zero() {
        return ks.iter().map(|_| ComplexBox::zero()).collect();
    }
    if n <= 2 {
        let q = Rational::new(a.numerators()[0].clone(), a.denominator().clone());
        let b = ComplexBox::real(Interval::from_rational(&q, prec as i64 + 2));
        return ks.iter().map(|_| b.clone()).collect();
    }
    let w = working_precision(a, prec);
    let roots = unit_roots(n, w);
    ks.iter()
        .map(|&k| {
            let mut acc = ComplexBox::zero();
            for (j, c) in a.numerators().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = ((j as u128 * k as u128) % n as u128) as i64;
                let r = roots.get(e);
                acc = if c.is_one() {
                    acc.add(r)
                } else {
                    acc.add(&r.scale_int(c))
                };
            }
            acc.round_out(w as i64 + 2)
                .div_int(a.denominator(), prec as i64 + 2)
        })
        .collect()
}

#[cfg(any(test, feature = "std"))]
fn unit_roots(n: u64, prec: u32) -> alloc::sync::Arc<UnitRoots> {
    use std::collections::HashMap;
    use std::sync::{Arc, Mutex, OnceLock};
    type Table = Mutex<HashMap<(u64, u32), Arc<UnitRoots>>>;
    static CACHE: OnceLock<Table> = OnceLock::new();
    // round up so nearby precisions share a table
    let prec = prec.div_ceil(64) * 64;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("cache lock").get(&(n, prec)) {
        return r.clone();
    }
    let r = Arc::new(UnitRoots::new(n, prec));
    let mut guard = cache.lock().expect("cache lock");
    if guard.len() > 4096 {
        guard.clear();
    }
    guard.entry((n, prec)).or_insert(r).clone()
}

#[cfg(not(any(test, feature = "std")))]
fn unit_roots(n: u64, prec: u32) -> UnitRoots {
    UnitRoots::new(n, prec)
}

fn fits(b: &ComplexBox, prec: u32) -> bool {
    b.width() <= Dyadic::new(BigInt::one(), -(prec as i64))
}

/// Box for each embedding `k` at (at least) `prec` bits, not nested.
pub(crate) fn raw_embeddings(a: &CycloNum, ks: &[u64], prec: u32) -> Vec<ComplexBox> {
    let mut w = prec;
    loop {
        let bs = raw_boxes(a, ks, w);
        if bs.iter().all(|b| fits(b, prec)) {
            return bs;
        }
        w += 32;
    }
}

fn nested(a: &CycloNum, ks: &[u64], prec: u32) -> Vec<ComplexBox> {
    let mut out = raw_embeddings(a, ks, prec);
    let mut q = prec / 2;
    while q >= 1 {
        let coarse = raw_embeddings(a, ks, q);
        for (o, c) in out.iter_mut().zip(coarse) {
            *o = o
                .intersect(&c)
                .expect("certified enclosures of one value intersect");
        }
        q /= 2;
    }
    out
}

/// Box around `sigma_k(a)`.
pub fn embed(a: &CycloNum, k: Embedding, prec: u32) -> ComplexBox {
    nested(a, &[k.0], prec).pop().expect("one box")
}

/// One box per embedding of Q(zeta_n), n = conductor of `a`, in ascending
/// `k` order. Boxes at precision `2t` lie inside the boxes at precision `t`.
pub fn embeddings(a: &CycloNum, prec: u32) -> Vec<ComplexBox> {
    nested(a, &units_mod(a.conductor()), prec)
}

/// `[floor, ceil]` of `sqrt(q)` on the `2^-prec` grid, exact for squares.
pub(crate) fn sqrt_rational(q: &Rational, prec: u32) -> Interval {
    if let Some(r) = rational_sqrt_exact(q) {
        let lo = Dyadic::floor_at(&r, prec as i64);
        let hi = Dyadic::ceil_at(&r, prec as i64);
        return Interval::new(lo, hi);
    }
    let lo = Dyadic::floor_at(q, 2 * prec as i64).sqrt_floor(prec as i64);
    let hi = Dyadic::ceil_at(q, 2 * prec as i64).sqrt_ceil(prec as i64);
    Interval::new(lo, hi)
}

pub(crate) fn rational_sqrt_exact(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// Certified enclosures of `|sigma_k(a)|` for every embedding, not nested.
pub(crate) fn moduli(a: &CycloNum, prec: u32) -> Vec<Interval> {
    raw_embeddings(a, &units_mod(a.conductor()), prec)
        .iter()
        .map(|b| b.modulus(prec as i64 + 2))
        .collect()
}

/// Maximum modulus over all conjugates, with width at most
/// `2^-prec * max(1, hi)`. Exact when `a * conj(a)` is a rational square.
pub fn house(a: &CycloNum, prec: u32) -> HouseInterval {
    if a.is_zero() {
        return HouseInterval {
            lo: Dyadic::zero(),
            hi: Dyadic::zero(),
            precision_bits: prec,
        };
    }
    if let Some(b) = (a * &a.conj()).to_rational() {
        let iv = sqrt_rational(&b, prec + 2);
        return HouseInterval {
            lo: iv.lo,
            hi: iv.hi,
            precision_bits: prec,
        };
    }
    let mut w = prec + 2;
    loop {
        let ms = moduli(a, w);
        let mut it = ms.into_iter();
        let first = it.next().expect("at least one embedding");
        let m = it.fold(first, |acc, x| acc.max(&x));
        let one = Dyadic::from_int(1);
        let scale = m.hi.max_ref(&one).clone();
        if m.width() <= (&scale * &Dyadic::new(BigInt::one(), -(prec as i64))) {
            return HouseInterval {
                lo: m.lo,
                hi: m.hi,
                precision_bits: prec,
            };
        }
        w += 32;
    }
}

/// Certified `house(a) <= bound` with the default refinement budget.
pub fn house_leq(a: &CycloNum, bound: &Rational) -> Ternary {
    house_leq_with_budget(a, bound, HOUSE_BUDGET_BITS)
}

/// Decides `house(a) <= bound`.
///
/// Every conjugate of `c = bound^2 - a*conj(a)` is real and equals
/// `bound^2 - |sigma(a)|^2`, so the answer is the sign pattern of the
/// conjugates of `c`. If `c = 0` the answer is yes; otherwise no conjugate
/// vanishes and refinement terminates. `Boundary` is returned only when
/// `budget_bits` runs out first.
pub fn house_leq_with_budget(a: &CycloNum, bound: &Rational, budget_bits: u32) -> Ternary {
    if a.is_zero() {
        return if bound.is_negative() {
            Ternary::No
        } else {
            Ternary::Yes
        };
    }
    if !bound.is_positive() {
        return Ternary::No;
    }
    let norm_sq = a * &a.conj();
    let bound_sq = bound * bound;
    if let Some(b) = norm_sq.to_rational() {
        return if b <= bound_sq {
            Ternary::Yes
        } else {
            Ternary::No
        };
    }
    if bound.is_one() && a.is_algebraic_integer() {
        // Kronecker: an algebraic integer of house at most 1 is 0 or a root of
        // unity, and roots of unity have a*conj(a) = 1, handled above.
        return Ternary::No;
    }
    let c = &CycloNum::from_rational(&bound_sq) - &norm_sq;
    let ks = units_mod(c.conductor());
    let mut p = 32;
    while p <= budget_bits {
        let boxes = raw_embeddings(&c, &ks, p);
        if boxes.iter().any(|b| b.re.is_negative()) {
            return Ternary::No;
        }
        if boxes.iter().all(|b| b.re.is_positive()) {
            return Ternary::Yes;
        }
        p *= 2;
    }
    Ternary::Boundary
}

/// `a` is a root of unity, i.e. `a^lcm(2, n) = 1` for its conductor `n`.
pub fn is_root_of_unity(a: &CycloNum) -> bool {
    if a.is_zero() || !a.is_algebraic_integer() {
        return false;
    }
    if !(a * &a.conj()).is_one() {
        return false;
    }
    let e = lcm_u64(2, a.conductor());
    a.pow(e as i64).map(|x| x.is_one()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn z(n: u64, k: i64) -> CycloNum {
        CycloNum::zeta(n, k)
    }

    fn sqrt2() -> CycloNum {
        &z(8, 1) + &z(8, 7)
    }

    #[test]
    fn rational_embeds_exactly() {
        let b = embeddings(&CycloNum::from_int(2), 64);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].re, Interval::from_int(2));
        assert_eq!(b[0].im, Interval::zero());
    }

    #[test]
    fn gaussian_unit_embeddings() {
        let b = embeddings(&z(4, 1), 64);
        assert_eq!(b.len(), 2);
        assert!(b[0].contains_f64(0.0, 1.0));
        assert!(b[1].contains_f64(0.0, -1.0));
    }

    #[test]
    fn sqrt_two_embeddings() {
        let b = embeddings(&sqrt2(), 80);
        let signs: Vec<bool> = b.iter().map(|x| x.re.is_positive()).collect();
        assert_eq!(signs, [true, false, false, true]);
        for x in &b {
            assert!(x.re.sqr().contains_rational(&rat(2, 1)));
            assert!(x.width() <= Dyadic::new(BigInt::one(), -80));
        }
    }

    #[test]
    fn nested_refinement() {
        let a = &(&z(7, 1) + &z(7, 3).scale(&rat(5, 3))) - &CycloNum::from_rational(&rat(2, 9));
        let coarse = embeddings(&a, 40);
        let fine = embeddings(&a, 80);
        for (f, c) in fine.iter().zip(&coarse) {
            assert!(f.is_subset_of(c));
        }
    }

    #[test]
    fn houses() {
        let h = house(&z(5, 1), 64);
        assert_eq!(
            (h.lo.clone(), h.hi.clone()),
            (Dyadic::from_int(1), Dyadic::from_int(1))
        );
        let h = house(&CycloNum::from_int(2), 64);
        assert_eq!((h.lo, h.hi), (Dyadic::from_int(2), Dyadic::from_int(2)));
        let h = house(&sqrt2(), 64);
        assert!(h.lo.to_f64() <= 2f64.sqrt() && 2f64.sqrt() <= h.hi.to_f64());
        assert!(h.hi.to_f64() - h.lo.to_f64() <= 2f64.powi(-63));
        let h = house(&CycloNum::zero(), 8);
        assert!(h.lo.is_zero() && h.hi.is_zero());
        // 1 + zeta_7 has conjugate moduli 2|cos(pi k/7)|, largest 2cos(pi/7)
        let h = house(&(&CycloNum::one() + &z(7, 1)), 60);
        let want = 2.0 * (core::f64::consts::PI / 7.0).cos();
        assert!(h.lo.to_f64() <= want + 1e-15 && want - 1e-15 <= h.hi.to_f64());
    }

    #[test]
    fn house_thresholds() {
        let one = rat(1, 1);
        assert_eq!(house_leq(&z(6, 1), &one), Ternary::Yes);
        assert_eq!(house_leq(&CycloNum::from_int(2), &one), Ternary::No);
        assert_eq!(
            house_leq(&(&CycloNum::one() + &z(3, 1)), &one),
            Ternary::Yes
        );
        assert_eq!(house_leq(&sqrt2(), &one), Ternary::No);
        assert_eq!(house_leq(&sqrt2(), &rat(3, 2)), Ternary::Yes);
        let phi = &CycloNum::one() + &(&z(5, 1) + &z(5, 4)).scale(&rat(-1, 1));
        // 1 - 2cos(2pi/5) and 1 - 2cos(4pi/5) = 1 + golden ratio
        assert_eq!(house_leq(&phi, &rat(2618034, 1000000)), Ternary::Yes);
        assert_eq!(house_leq(&phi, &rat(2618033, 1000000)), Ternary::No);
    }

    #[test]
    fn roots_of_unity() {
        assert!(is_root_of_unity(&z(9, 2)));
        assert!(is_root_of_unity(&-z(5, 1)));
        assert!(!is_root_of_unity(&sqrt2()));
        assert!(!is_root_of_unity(&CycloNum::zero()));
    }
}
