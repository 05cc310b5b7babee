use alloc::vec::Vec;

use super::{CanonicalError, LinearMap};
use crate::arith::{nth_root, CycloNum, RadicalSearch, Rational, ValueKey};
use crate::poly::Poly;

/// `T_d` with `T_d(x + 1/x) = x^d + x^-d`.
pub fn chebyshev(d: usize) -> Poly {
    let (mut prev, mut cur) = (Poly::from_ints(&[2]), Poly::x());
    if d == 0 {
        return prev;
    }
    for _ in 1..d {
        let next = Poly::x().mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply(self, p: &Poly) -> Poly {
        match self {
            Sign::Plus => p.clone(),
            Sign::Minus => p.neg(),
        }
    }
}

fn check_degree(f: &Poly) -> Result<usize, CanonicalError> {
    let d = f.degree();
    if f.is_zero() || d < 2 {
        return Err(CanonicalError::DegreeTooSmall(d));
    }
    Ok(d)
}

/// `c_{d-1} / (d c_d)`: `f(x - s)` has no `x^(d-1)` term.
fn centering_shift(f: &Poly) -> CycloNum {
    let d = f.degree();
    let lc = f.leading();
    f.coeff(d - 1)
        .checked_div(&lc.scale(&Rational::from_integer(d.into())))
        .expect("nonzero")
}

fn shifted(f: &Poly, s: &CycloNum) -> Poly {
    f.compose(&Poly::linear(CycloNum::one(), -s))
}

fn root(c: &CycloNum, k: u32, cap: u64) -> Result<CycloNum, CanonicalError> {
    match nth_root(c, k, cap) {
        RadicalSearch::Found(r) => Ok(r),
        RadicalSearch::NotCyclotomic => Err(CanonicalError::WitnessNotCyclotomic),
        RadicalSearch::OutsideSearchSpace { max_conductor } => {
            Err(CanonicalError::ScalingOutsideSearchSpace { max_conductor })
        }
    }
}

/// `g(x) = f1(u x) / u`.
fn scaled(f1: &Poly, u: &CycloNum) -> Poly {
    let ui = u.inv().expect("nonzero");
    let mut pw = ui.clone();
    let cs = f1
        .coeffs()
        .iter()
        .map(|c| {
            let t = c * &pw;
            pw = &pw * u;
            t
        })
        .collect();
    Poly::new(cs)
}

fn order_key(g: &Poly) -> Vec<ValueKey> {
    g.coeffs().iter().rev().map(CycloNum::key).collect()
}

/// `g = l^-1 o f o l`, monic with no `x^(d-1)` term. Of the `d-1` admissible
/// scalings, the one making the highest nonzero non-leading coefficient 1 is
/// taken; failing that, the least coefficient vector (highest degree first).
pub fn conjugate_normal_form(
    f: &Poly,
    max_conductor: u64,
) -> Result<(Poly, LinearMap), CanonicalError> {
    let d = check_degree(f)?;
    let v = -&centering_shift(f);
    let f1 = shifted(f, &(-&v)).add(&Poly::constant(-&v));
    let u0 = root(
        &f.leading().inv().expect("nonzero"),
        (d - 1) as u32,
        max_conductor,
    )?;
    let mut best: Option<(bool, Vec<ValueKey>, Poly, CycloNum)> = None;
    for k in 0..(d - 1) as i64 {
        let u = &u0 * &CycloNum::zeta((d - 1) as u64, k);
        let g = scaled(&f1, &u);
        let first = g.coeffs()[..d].iter().rev().find(|c| !c.is_zero());
        let unit = first.is_some_and(CycloNum::is_one);
        let key = order_key(&g);
        let better = match &best {
            None => true,
            Some((bu, bk, _, _)) => (unit && !bu) || (unit == *bu && key < *bk),
        };
        if better {
            best = Some((unit, key, g, u));
        }
    }
    let (_, _, g, u) = best.expect("d >= 2");
    Ok((g, LinearMap::new(u, v).expect("nonzero")))
}

/// `l` with `f = l o X^d o l^-1`. `Err` when such `l` exists but none was
/// found with cyclotomic coefficients inside the search space.
pub fn is_conjugate_to_power(
    f: &Poly,
    max_conductor: u64,
) -> Result<Option<LinearMap>, CanonicalError> {
    let d = check_degree(f)?;
    let v = -&centering_shift(f);
    let f1 = shifted(f, &(-&v)).add(&Poly::constant(-&v));
    if f1.coeffs()[..d].iter().any(|c| !c.is_zero()) {
        return Ok(None);
    }
    let u = root(
        &f.leading().inv().expect("nonzero"),
        (d - 1) as u32,
        max_conductor,
    )?;
    let l = LinearMap::new(u, v).expect("nonzero");
    debug_assert_eq!(l.conjugate(&Poly::monomial(CycloNum::one(), d)), *f);
    Ok(Some(l))
}

/// Whether the centered coefficients match `lc * t_j * s^((d-j)/2)` for the
/// parity-compatible `j >= from` and vanish elsewhere.
fn matches_chebyshev_profile(
    c: &[CycloNum],
    d: usize,
    s: &CycloNum,
    from: usize,
    scale_up: bool,
) -> bool {
    let t = chebyshev(d);
    let lc = &c[d];
    let s_inv = s.inv().expect("nonzero");
    (from..d).all(|j| {
        if (d - j) % 2 == 1 {
            return c[j].is_zero();
        }
        let base = if scale_up { s } else { &s_inv };
        let pw = base.pow(((d - j) / 2) as i64).expect("nonzero");
        c[j] == &(lc * &t.coeff(j)) * &pw
    })
}

/// `(l, sign)` with `f = l o (sign T_d) o l^-1`.
pub fn is_conjugate_to_cheb(
    f: &Poly,
    max_conductor: u64,
) -> Result<Option<(LinearMap, Sign)>, CanonicalError> {
    let d = check_degree(f)?;
    let v = -&centering_shift(f);
    let f1 = shifted(f, &(-&v)).add(&Poly::constant(-&v));
    let c = f1.coeffs();
    let lc = &c[d];
    // u^2 from the x^d and x^(d-2) coefficients of f1(u x)/u = sign T_d
    let s = -&c[d - 2]
        .checked_div(&lc.scale(&Rational::from_integer(d.into())))
        .expect("nonzero");
    if s.is_zero() {
        return Ok(None);
    }
    if !matches_chebyshev_profile(c, d, &s, 0, true) {
        return Ok(None);
    }
    // sign^2 = (lc u^(d-1))^2 = 1
    if !(&(lc * lc) * &s.pow((d - 1) as i64).expect("nonzero")).is_one() {
        return Ok(None);
    }
    let u = root(&s, 2, max_conductor)?;
    let eps = lc * &u.pow((d - 1) as i64).expect("nonzero");
    let sign = if eps.is_one() {
        Sign::Plus
    } else {
        Sign::Minus
    };
    let l = LinearMap::new(u, v).expect("nonzero");
    debug_assert_eq!(l.conjugate(&sign.apply(&chebyshev(d))), *f);
    Ok(Some((l, sign)))
}

/// `(l1, l2)` with `f = l1 o X^d o l2`; no radicals are needed.
pub fn two_sided_equiv_power(f: &Poly) -> Result<Option<(LinearMap, LinearMap)>, CanonicalError> {
    let d = check_degree(f)?;
    let s = centering_shift(f);
    let l2 = LinearMap::new(CycloNum::one(), s.clone()).expect("nonzero");
    let b = f.eval(&(-&s));
    let l1 = LinearMap::new(f.leading(), b).expect("nonzero");
    let model = l1.after(&Poly::monomial(CycloNum::one(), d).compose(&l2.as_poly()));
    Ok((model == *f).then_some((l1, l2)))
}

/// `(l1, l2)` with `f = l1 o T_d o l2`. Writing `f(x - s) = a T_d(u x) + b`,
/// `u^2` is forced for `d >= 3` and free for `d = 2`.
pub fn two_sided_equiv_cheb(
    f: &Poly,
    max_conductor: u64,
) -> Result<Option<(LinearMap, LinearMap)>, CanonicalError> {
    let d = check_degree(f)?;
    let s = centering_shift(f);
    let f1 = shifted(f, &s);
    let c = f1.coeffs();
    let t = chebyshev(d);
    let u = if d == 2 {
        CycloNum::one()
    } else {
        if c[d - 2].is_zero() {
            return Ok(None);
        }
        let sq = -&c[d]
            .scale(&Rational::from_integer(d.into()))
            .checked_div(&c[d - 2])
            .expect("nonzero");
        if !matches_chebyshev_profile(c, d, &sq, 1, false) {
            return Ok(None);
        }
        root(&sq, 2, max_conductor)?
    };
    let a = c[d]
        .checked_div(&u.pow(d as i64).expect("nonzero"))
        .expect("nonzero");
    let b = &c[0] - &(&a * &t.coeff(0));
    let l1 = LinearMap::new(a, b).expect("nonzero");
    let l2 = LinearMap::new(u.clone(), &u * &s).expect("nonzero");
    let model = l1.after(&t.compose(&l2.as_poly()));
    Ok((model == *f).then_some((l1, l2)))
}
