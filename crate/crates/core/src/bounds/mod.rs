//! The explicit constants controlling orbit growth (L, D, m, K, M), the
//! function `L_K`, and the roots-of-unity decomposition search.

mod loxton;

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{
    denominator_clearing, rational_sqrt_exact, raw_embeddings, units_mod, CycloNum, Rational,
};
use crate::dynamics::PolySystem;

pub use loxton::{loxton_decompose, verify_loxton_bound, LoxtonCertificate, LoxtonReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("all generators must share one degree")]
    UnequalDegrees,
    #[error("common degree {0} is below the required minimum 3")]
    DegreeTooSmall(usize),
    #[error("could not separate a modulus from its threshold within the precision budget")]
    PrecisionExhausted,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("element is not an algebraic integer")]
    NotIntegral,
    #[error("order bound {order_bound} is not a multiple of the conductor {conductor}")]
    OrderBound { order_bound: u64, conductor: u64 },
}

/// Parameters of `L_K(t) = E_size * R(B * t)` with `R(x) = R_scale * x^R_exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoxtonParams {
    pub e_size: u64,
    pub b: Rational,
    pub r_scale: Rational,
    pub r_exponent: Rational,
}

impl Default for LoxtonParams {
    fn default() -> Self {
        LoxtonParams {
            e_size: 1,
            b: Rational::one(),
            r_scale: Rational::one(),
            r_exponent: Rational::from_integer(3.into()),
        }
    }
}

impl LoxtonParams {
    pub fn validate(&self) -> Result<(), BoundsError> {
        if self.e_size == 0 {
            return Err(BoundsError::InvalidParameter("E_size must be positive"));
        }
        if !self.b.is_positive() {
            return Err(BoundsError::InvalidParameter("B must be positive"));
        }
        if !self.r_scale.is_positive() {
            return Err(BoundsError::InvalidParameter("R_scale must be positive"));
        }
        if self.r_exponent <= Rational::from_integer(2.into()) {
            return Err(BoundsError::InvalidParameter("R_exponent must exceed 2"));
        }
        Ok(())
    }

    fn coefficient(&self) -> Rational {
        Rational::from_integer(self.e_size.into()) * &self.r_scale
    }
}

/// An upper bound; `exact` when it equals the true value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedBound {
    pub value: Rational,
    pub exact: bool,
}

/// Enclosure `[lo, hi]` of a non-negative real, rational endpoints.
#[derive(Debug, Clone)]
struct Mag {
    lo: Rational,
    hi: Rational,
}

impl Mag {
    fn exact(q: Rational) -> Self {
        Mag {
            lo: q.clone(),
            hi: q,
        }
    }

    fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    fn add(&self, o: &Self) -> Self {
        Mag {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Mag {
            lo: &self.lo * &o.lo,
            hi: &self.hi * &o.hi,
        }
    }

    fn recip(&self) -> Option<Self> {
        self.lo.is_positive().then(|| Mag {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    fn sub_rational(&self, q: &Rational) -> Self {
        Mag {
            lo: &self.lo - q,
            hi: &self.hi - q,
        }
    }

    fn max(&self, o: &Self) -> Self {
        Mag {
            lo: (&self.lo).max(&o.lo).clone(),
            hi: (&self.hi).max(&o.hi).clone(),
        }
    }
}

/// `|sigma_k(c)|` for every embedding `k` of `Q(zeta_n)`.
fn magnitudes(c: &CycloNum, n: u64, ks: &[u64], prec: u32) -> Vec<Mag> {
    if let Some(q) = c.to_rational() {
        return ks.iter().map(|_| Mag::exact(q.abs())).collect();
    }
    if let Some(b) = (c * &c.conj()).to_rational() {
        if let Some(r) = rational_sqrt_exact(&b) {
            return ks.iter().map(|_| Mag::exact(r.clone())).collect();
        }
    }
    raw_embeddings(&c.lift(n), ks, prec)
        .iter()
        .map(|b| {
            let m = b.modulus(prec as i64 + 4);
            Mag {
                lo: m.lo.to_rational(),
                hi: m.hi.to_rational(),
            }
        })
        .collect()
}

/// Per generator, per coefficient, per embedding magnitudes.
struct MagTable {
    ks: Vec<u64>,
    mags: Vec<Vec<Vec<Mag>>>,
}

impl MagTable {
    fn new(sys: &PolySystem, prec: u32) -> Self {
        let n = sys.conductor();
        let ks = units_mod(n);
        let mags = sys
            .generators()
            .iter()
            .map(|g| {
                g.coeffs()
                    .iter()
                    .map(|c| magnitudes(c, n, &ks, prec))
                    .collect()
            })
            .collect();
        MagTable { ks, mags }
    }
}

const START_PREC: u32 = 64;
const MAX_PREC: u32 = 1 << 14;

/// `L = max_sigma { 1 + max_i |sigma(1/a_{i,d_i})| (1 + sum_{j<d_i} |sigma(a_{i,j})|), A }`.
pub fn bound_l(sys: &PolySystem, a: &Rational, prec: u32) -> CertifiedBound {
    let mut p = prec + 32;
    loop {
        if let Some(b) = try_bound_l(sys, a, p) {
            return b;
        }
        p *= 2;
    }
}

fn try_bound_l(sys: &PolySystem, a: &Rational, prec: u32) -> Option<CertifiedBound> {
    let t = MagTable::new(sys, prec);
    let one = Mag::exact(Rational::one());
    let mut best = Mag::exact(a.clone());
    for kidx in 0..t.ks.len() {
        for g in &t.mags {
            let d = g.len() - 1;
            let mut sum = one.clone();
            for m in &g[..d] {
                sum = sum.add(&m[kidx]);
            }
            let v = one.add(&g[d][kidx].recip()?.mul(&sum));
            best = best.max(&v);
        }
    }
    let exact = best.is_exact();
    Some(CertifiedBound {
        value: best.hi,
        exact,
    })
}

/// Least positive `D` with `D/a_{i,d_i}` and `D*a_{i,j}/a_{i,d_i}` integral.
pub fn bound_d(sys: &PolySystem) -> BigInt {
    let mut d = BigInt::one();
    for g in sys.generators() {
        let inv = g.leading().inv().expect("nonzero leading coefficient");
        d = d.lcm(&denominator_clearing(&inv));
        for c in &g.coeffs()[..g.degree()] {
            d = d.lcm(&denominator_clearing(&(c * &inv)));
        }
    }
    d
}

/// Least positive `D` making `D/a_{i,d}`, `D*a_{i,j}` and `D*a_{i,j}/a_{i,d}`
/// integral for all `j <= d`; `D * alpha` is then integral on the sets built
/// from linear combinations of earlier orbit levels.
pub fn sigma_bound_d(sys: &PolySystem) -> BigInt {
    let mut d = bound_d(sys);
    for g in sys.generators() {
        for c in g.coeffs() {
            d = d.lcm(&denominator_clearing(c));
        }
    }
    d
}

/// Exact comparison of `|sigma_k(c)|` (c in `Q(zeta_n)`) with `t >= 0`.
pub(crate) fn cmp_modulus(c: &CycloNum, n: u64, k: u64, t: &Rational) -> Option<Ordering> {
    cmp_moduli(c, &CycloNum::from_rational(t), n, k)
}

/// Exact comparison of `|sigma_k(x)|` with `|sigma_k(y)|`.
/// `x conj(x) - y conj(y)` is real under every embedding and vanishes under
/// one only if it is zero, so refinement decides the sign.
pub(crate) fn cmp_moduli(x: &CycloNum, y: &CycloNum, n: u64, k: u64) -> Option<Ordering> {
    let diff = &(x * &x.conj()) - &(y * &y.conj());
    if let Some(q) = diff.to_rational() {
        return Some(q.cmp(&Rational::zero()));
    }
    // only the sign matters, so scale down to keep the working precision small
    let mass: BigInt = diff.numerators().iter().map(|c| c.abs()).sum();
    let excess = mass.bits() as i64 - diff.denominator().bits() as i64 - 64;
    let lifted = if excess > 0 {
        diff.scale(&Rational::new(
            BigInt::one(),
            BigInt::one() << excess as usize,
        ))
        .lift(n)
    } else {
        diff.lift(n)
    };
    let mut p = 32;
    while p <= MAX_PREC {
        let b = raw_embeddings(&lifted, &[k], p).pop().expect("one box");
        if b.re.is_positive() {
            return Some(Ordering::Greater);
        }
        if b.re.is_negative() {
            return Some(Ordering::Less);
        }
        p *= 2;
    }
    None
}

/// Bracket of `1 + max_i |sigma_k(1/a_{i,d_i})| (1 + sum_{j<d_i} |sigma_k(a_{i,j})|)`
/// for the embedding `k` of `Q(zeta_n)`; `n` must be a multiple of the
/// system's conductor.
pub(crate) fn escape_threshold(
    sys: &PolySystem,
    n: u64,
    k: u64,
    prec: u32,
) -> (Rational, Rational) {
    let mut p = prec.max(START_PREC);
    loop {
        let one = Mag::exact(Rational::one());
        let mut best: Option<Mag> = None;
        let mut ok = true;
        for g in sys.generators() {
            let mags: Vec<Mag> = g
                .coeffs()
                .iter()
                .map(|c| magnitudes(c, n, &[k], p).remove(0))
                .collect();
            let d = mags.len() - 1;
            let mut sum = one.clone();
            for m in &mags[..d] {
                sum = sum.add(m);
            }
            let Some(r) = mags[d].recip() else {
                ok = false;
                break;
            };
            let v = one.add(&r.mul(&sum));
            best = Some(match best {
                Some(b) => b.max(&v),
                None => v,
            });
        }
        if ok {
            let b = best.expect("at least one generator");
            return (b.lo, b.hi);
        }
        p *= 2;
    }
}

/// Least `m >= 1` with `|sigma(a_{i,d})| > 1/m` for every embedding and generator.
pub fn choose_m(sys: &PolySystem, prec: u32) -> Result<u64, BoundsError> {
    let t = MagTable::new(sys, prec.max(START_PREC));
    let mut min_hi: Option<Rational> = None;
    for g in &t.mags {
        for m in g.last().expect("leading coefficient") {
            if min_hi.as_ref().is_none_or(|x| m.hi < *x) {
                min_hi = Some(m.hi.clone());
            }
        }
    }
    let mu = min_hi.expect("at least one embedding");
    // 1/mu_hi <= 1/mu, so this start never overshoots the minimum.
    let mut m = (mu.recip().floor().to_integer())
        .to_u64()
        .unwrap_or(1)
        .max(1);
    let n = sys.conductor();
    loop {
        let inv_m = Rational::new(BigInt::one(), BigInt::from(m));
        let mut ok = true;
        'check: for g in sys.generators() {
            let lc = g.leading();
            for &k in &t.ks {
                match cmp_modulus(&lc, n, k, &inv_m) {
                    Some(Ordering::Greater) => {}
                    Some(_) => {
                        ok = false;
                        break 'check;
                    }
                    None => return Err(BoundsError::PrecisionExhausted),
                }
            }
        }
        if ok {
            return Ok(m);
        }
        m += 1;
    }
}

/// `K = max_sigma { 2 s m^2 A + max_i (|sigma(a_{i,d})| + (1 + (|sigma(a_{i,d})| - 1/m)^-1) sum_{j<d} |sigma(a_{i,j})|) }`.
pub fn bound_k(sys: &PolySystem, a: &Rational, prec: u32) -> Result<CertifiedBound, BoundsError> {
    let d = sys.common_degree().ok_or(BoundsError::UnequalDegrees)?;
    if d < 3 {
        return Err(BoundsError::DegreeTooSmall(d));
    }
    let m = choose_m(sys, prec)?;
    let inv_m = Rational::new(BigInt::one(), BigInt::from(m));
    let s = Rational::from_integer(BigInt::from(sys.len()));
    let head =
        Rational::from_integer(2.into()) * s * Rational::from_integer(BigInt::from(m * m)) * a;
    let mut p = prec + 32;
    while p <= MAX_PREC {
        let t = MagTable::new(sys, p);
        let one = Mag::exact(Rational::one());
        let mut best: Option<Mag> = None;
        let mut separated = true;
        'outer: for kidx in 0..t.ks.len() {
            let mut inner: Option<Mag> = None;
            for g in &t.mags {
                let lead = &g[d][kidx];
                let Some(gap_inv) = lead.sub_rational(&inv_m).recip() else {
                    separated = false;
                    break 'outer;
                };
                let mut sum = Mag::exact(Rational::zero());
                for c in &g[..d] {
                    sum = sum.add(&c[kidx]);
                }
                let v = lead.add(&one.add(&gap_inv).mul(&sum));
                inner = Some(match inner {
                    Some(x) => x.max(&v),
                    None => v,
                });
            }
            let v = Mag::exact(head.clone()).add(&inner.expect("at least one generator"));
            best = Some(match best {
                Some(x) => x.max(&v),
                None => v,
            });
        }
        if separated {
            let b = best.expect("at least one embedding");
            let exact = b.is_exact();
            return Ok(CertifiedBound { value: b.hi, exact });
        }
        p *= 2;
    }
    Err(BoundsError::PrecisionExhausted)
}

/// `L_K(t) = E_size * R_scale * (B t)^R_exponent` when the exponent is an
/// integer; `None` otherwise (use [`loxton_lk_at_least`] for exact tests).
pub fn loxton_lk(t: &Rational, params: &LoxtonParams) -> Option<Rational> {
    if !params.r_exponent.is_integer() {
        return None;
    }
    let e = params.r_exponent.to_integer().to_i32()?;
    Some(params.coefficient() * num_traits::pow::Pow::pow(&params.b * t, e))
}

/// Exact test `L_K(t) >= x` for any rational exponent `p/q`:
/// `(x / (E R_scale))^q <= (B t)^p`.
pub fn loxton_lk_at_least(t: &Rational, params: &LoxtonParams, x: &Rational) -> bool {
    if !x.is_positive() {
        return true;
    }
    let p = params
        .r_exponent
        .numer()
        .to_u32()
        .expect("exponent numerator fits");
    let q = params
        .r_exponent
        .denom()
        .to_u32()
        .expect("exponent denominator fits");
    let lhs = num_traits::pow::Pow::pow(x / params.coefficient(), q);
    let rhs = num_traits::pow::Pow::pow(&params.b * t, p);
    lhs <= rhs
}

/// Least positive integer `M > 2 log2(2 L_K(D L)) + 3`, decided exactly as
/// `2^(M-3) > 4 L_K(D L)^2`.
pub fn bound_m_from(d: &BigInt, l: &Rational, params: &LoxtonParams) -> u64 {
    let t = Rational::from_integer(d.clone()) * l;
    let holds = |m: u64| -> bool {
        // 2^(M-3) / (4 (E R_scale)^2) > (B t)^(2p/q)  <=>  lhs^q > (B t)^(2p)
        let two_pow = if m >= 3 {
            Rational::from_integer(BigInt::one() << (m - 3) as usize)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (3 - m) as usize)
        };
        let c = params.coefficient();
        let base = two_pow / (Rational::from_integer(4.into()) * &c * &c);
        let p = params.r_exponent.numer().to_u32().expect("exponent fits");
        let q = params.r_exponent.denom().to_u32().expect("exponent fits");
        num_traits::pow::Pow::pow(base, q) > num_traits::pow::Pow::pow(&params.b * &t, 2 * p)
    };
    let est = {
        let x = params.coefficient().to_f64().unwrap_or(1.0)
            * libm::pow(
                (&params.b * &t).to_f64().unwrap_or(1.0),
                params.r_exponent.to_f64().unwrap_or(3.0),
            );
        let v = 2.0 * libm::log2(2.0 * x) + 3.0;
        if v.is_finite() {
            libm::floor(v).max(1.0) as u64
        } else {
            1
        }
    };
    let mut m = est.max(1);
    while m > 1 && holds(m - 1) {
        m -= 1;
    }
    while !holds(m) {
        m += 1;
    }
    m
}

/// `M` for a system: `D = bound_d`, `L = bound_l` (its certified upper value).
pub fn bound_m(
    sys: &PolySystem,
    a: &Rational,
    params: &LoxtonParams,
    prec: u32,
) -> Result<u64, BoundsError> {
    params.validate()?;
    let l = bound_l(sys, a, prec);
    Ok(bound_m_from(&bound_d(sys), &l.value, params))
}

/// All constants for one system, with the inputs they derive from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub a: Rational,
    pub params: LoxtonParams,
    pub l: CertifiedBound,
    pub d: BigInt,
    pub m_const: Option<u64>,
    pub k: Option<CertifiedBound>,
    /// Why `m`/`K` are absent (e.g. unequal or small degrees).
    pub k_note: Option<BoundsError>,
    pub lk_at_dl: Option<Rational>,
    pub m_big: u64,
}

pub fn bounds_report(
    sys: &PolySystem,
    a: &Rational,
    params: &LoxtonParams,
    prec: u32,
) -> Result<BoundsReport, BoundsError> {
    params.validate()?;
    let l = bound_l(sys, a, prec);
    let d = bound_d(sys);
    let (m_const, k, k_note) = match bound_k(sys, a, prec) {
        Ok(k) => (Some(choose_m(sys, prec)?), Some(k), None),
        Err(e @ (BoundsError::UnequalDegrees | BoundsError::DegreeTooSmall(_))) => {
            (choose_m(sys, prec).ok(), None, Some(e))
        }
        Err(e) => return Err(e),
    };
    let lk_at_dl = loxton_lk(&(Rational::from_integer(d.clone()) * &l.value), params);
    let m_big = bound_m_from(&d, &l.value, params);
    Ok(BoundsReport {
        a: a.clone(),
        params: params.clone(),
        l,
        d,
        m_const,
        k,
        k_note,
        lk_at_dl,
        m_big,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::poly::Poly;

    fn sys(gens: &[&[i64]]) -> PolySystem {
        PolySystem::from_int_coeffs(gens).unwrap()
    }

    fn rsys(gens: &[&[Rational]]) -> PolySystem {
        PolySystem::new(gens.iter().map(|g| Poly::from_rationals(g)).collect()).unwrap()
    }

    #[test]
    fn l_examples() {
        let one = rat(1, 1);
        assert_eq!(
            bound_l(&sys(&[&[1, 0, 1]]), &one, 64),
            CertifiedBound {
                value: rat(3, 1),
                exact: true
            }
        );
        assert_eq!(
            bound_l(&sys(&[&[0, 0, 0, 0, 1]]), &one, 64).value,
            rat(2, 1)
        );
        assert_eq!(
            bound_l(&sys(&[&[0, 0, 2]]), &rat(5, 1), 64).value,
            rat(5, 1)
        );
        assert_eq!(bound_l(&sys(&[&[0, 0, 2]]), &one, 64).value, rat(3, 2));
    }

    #[test]
    fn d_examples() {
        assert_eq!(bound_d(&sys(&[&[1, 0, 1]])), BigInt::from(1));
        let half = rat(1, 2);
        assert_eq!(
            bound_d(&rsys(&[&[half.clone(), rat(0, 1), half.clone()]])),
            BigInt::from(1)
        );
        assert_eq!(
            bound_d(&rsys(&[&[rat(0, 1), rat(1, 2), rat(1, 3)]])),
            BigInt::from(2)
        );
        // the stronger variant also clears the coefficients themselves
        assert_eq!(
            sigma_bound_d(&rsys(&[&[half.clone(), rat(0, 1), half]])),
            BigInt::from(2)
        );
    }

    #[test]
    fn m_examples() {
        assert_eq!(choose_m(&sys(&[&[0, 0, 0, 1]]), 64), Ok(2));
        assert_eq!(choose_m(&sys(&[&[0, 0, 0, 3]]), 64), Ok(1));
        assert_eq!(
            choose_m(&rsys(&[&[rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 4)]]), 64),
            Ok(5)
        );
    }

    #[test]
    fn k_examples() {
        let one = rat(1, 1);
        assert_eq!(
            bound_k(&sys(&[&[0, 0, 0, 1], &[-1, 0, 0, 1]]), &one, 64)
                .unwrap()
                .value,
            rat(20, 1)
        );
        assert_eq!(
            bound_k(&sys(&[&[0, 0, 0, 1]]), &one, 64).unwrap().value,
            rat(9, 1)
        );
        assert_eq!(
            bound_k(&sys(&[&[0, 0, 0, 2]]), &one, 64).unwrap().value,
            rat(4, 1)
        );
        assert_eq!(
            bound_k(&sys(&[&[0, 0, 1]]), &one, 64),
            Err(BoundsError::DegreeTooSmall(2))
        );
    }

    #[test]
    fn lk_and_m_examples() {
        let p = LoxtonParams::default();
        assert_eq!(loxton_lk(&rat(3, 1), &p), Some(rat(27, 1)));
        assert_eq!(loxton_lk(&rat(1, 1), &p), Some(rat(1, 1)));
        let p2 = LoxtonParams {
            e_size: 2,
            ..LoxtonParams::default()
        };
        assert_eq!(loxton_lk(&rat(2, 1), &p2), Some(rat(16, 1)));
        assert_eq!(bound_m(&sys(&[&[1, 0, 1]]), &rat(1, 1), &p, 64), Ok(15));
        assert_eq!(
            bound_m(&sys(&[&[0, 0, 0, 0, 1]]), &rat(1, 1), &p, 64),
            Ok(12)
        );
        // L_K(DL) = 1/2 gives the threshold 3 exactly, so M = 4
        let half_cube_root = LoxtonParams {
            r_scale: rat(1, 2),
            ..LoxtonParams::default()
        };
        assert_eq!(
            bound_m_from(&BigInt::from(1), &rat(1, 1), &half_cube_root),
            4
        );
    }

    #[test]
    fn non_integral_exponent_is_exact() {
        let p = LoxtonParams {
            r_exponent: rat(5, 2),
            ..LoxtonParams::default()
        };
        // L_K(4) = 32
        assert!(loxton_lk_at_least(&rat(4, 1), &p, &rat(32, 1)));
        assert!(!loxton_lk_at_least(&rat(4, 1), &p, &rat(32001, 1000)));
        assert_eq!(loxton_lk(&rat(4, 1), &p), None);
    }

    #[test]
    fn cyclotomic_coefficients() {
        // X^3 + z(4): every conjugate of i has modulus 1, so K matches X^3 - 1.
        let g = Poly::new(alloc::vec![
            CycloNum::zeta(4, 1),
            CycloNum::zero(),
            CycloNum::zero(),
            CycloNum::one()
        ]);
        let s = PolySystem::new(alloc::vec![Poly::x().pow(3), g]).unwrap();
        let k = bound_k(&s, &rat(1, 1), 64).unwrap();
        assert_eq!(k.value, rat(20, 1));
        assert!(k.exact);
        // 1 + zeta_5 has non-constant modulus across embeddings
        let h = Poly::new(alloc::vec![
            &CycloNum::one() + &CycloNum::zeta(5, 1),
            CycloNum::zero(),
            CycloNum::one()
        ]);
        let s = PolySystem::new(alloc::vec![h]).unwrap();
        let l = bound_l(&s, &rat(1, 1), 64);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let v = l.value.to_f64().unwrap();
        assert!(!l.exact && v >= 2.0 + golden && v < 2.0 + golden + 1e-12);
    }
}
