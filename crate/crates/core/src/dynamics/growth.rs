use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use core::cmp::Ordering;

use num_bigint::BigInt;

use super::orbit::evaluate_word;
use super::{DynamicsError, PolySystem, Word};
use crate::arith::{
    house, house_leq, lcm_u64, padic_val, CycloNum, Embedding, HouseInterval, Rational, Ternary,
};
use crate::bounds::{bound_d, bound_l, cmp_moduli, cmp_modulus, escape_threshold, CertifiedBound};

const MAX_PREC: u32 = 1 << 14;

/// Whether `|sigma(f_prefix(a))|` strictly increases along `w`, where `sigma`
/// is the embedding `k` of `Q(zeta_N)`, `N` the lcm of the conductors of the
/// system and of `a`. Requires `|sigma(a)|` above the escape threshold.
pub fn growth_check_arch(
    sys: &PolySystem,
    a: &CycloNum,
    w: &Word,
    k: Embedding,
    prec: u32,
) -> Result<bool, DynamicsError> {
    let n = lcm_u64(sys.conductor(), a.conductor());
    if crate::arith::gcd_u64(k.0, n) != 1 {
        return Err(DynamicsError::PreconditionFailed(format!(
            "{} is not a unit modulo {n}",
            k.0
        )));
    }
    let mut p = prec.max(64);
    loop {
        let (lo, hi) = escape_threshold(sys, n, k.0, p);
        match cmp_modulus(a, n, k.0, &hi) {
            Some(Ordering::Greater) => break,
            None => return Err(DynamicsError::PrecisionExhausted),
            _ => {}
        }
        if lo == hi || cmp_modulus(a, n, k.0, &lo) != Some(Ordering::Greater) || p >= MAX_PREC {
            return Err(DynamicsError::HypothesisNotMet(format!(
                "|sigma_{}(a)| does not exceed the escape threshold {}",
                k.0,
                crate::arith::rational_to_string(&hi)
            )));
        }
        p *= 2;
    }
    let mut cur = a.clone();
    for &i in w.indices() {
        let next = sys.generator(i).eval(&cur);
        match cmp_moduli(&next, &cur, n, k.0) {
            Some(Ordering::Greater) => {}
            Some(_) => return Ok(false),
            None => return Err(DynamicsError::PrecisionExhausted),
        }
        cur = next;
    }
    Ok(true)
}

/// p-adic valuations along a word, with the two checked properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicGrowth {
    /// `v_p(a), v_p(f_{w_1}(a)), ...`; `|x|_p = p^(-v)`.
    pub valuations: Vec<i64>,
    /// `|f_prefix(a)|_p` strictly increases.
    pub increasing: bool,
    /// `|f_i(x)|_p = |a_{i,d_i}|_p |x|_p^{d_i}` at every step.
    pub recurrence_exact: bool,
}

impl PadicGrowth {
    pub fn holds(&self) -> bool {
        self.increasing && self.recurrence_exact
    }
}

fn val(q: &Rational, p: u64) -> Result<Option<i64>, DynamicsError> {
    Ok(padic_val(q, p)?.finite())
}

/// Growth of `|.|_p` along `w` for a rational system, under the hypothesis
/// `|a|_p > max(1, |a_{i,j}|_p / |a_{i,d_i}|_p, 1 / |a_{i,d_i}|_p)`.
pub fn growth_check_padic(
    sys: &PolySystem,
    a: &Rational,
    p: u64,
    w: &Word,
) -> Result<PadicGrowth, DynamicsError> {
    let gens: Vec<Vec<Rational>> = sys
        .generators()
        .iter()
        .map(|g| g.rational_coeffs())
        .collect::<Option<_>>()
        .ok_or_else(|| {
            DynamicsError::PreconditionFailed(String::from("coefficients must be rational"))
        })?;
    let not_met = |why: String| DynamicsError::HypothesisNotMet(why);
    let va = val(a, p)?.ok_or_else(|| not_met(String::from("a = 0")))?;
    if va >= 0 {
        return Err(not_met(format!("|a|_{p} <= 1")));
    }
    for g in &gens {
        let vd = val(g.last().expect("nonzero"), p)?.expect("nonzero leading coefficient");
        if va >= -vd {
            return Err(not_met(format!("|a|_{p} <= 1/|leading|_{p}")));
        }
        for c in g {
            if let Some(vc) = val(c, p)? {
                if va >= vc - vd {
                    return Err(not_met(format!("|a|_{p} <= |a_ij|_{p}/|leading|_{p}")));
                }
            }
        }
    }
    let mut vals = alloc::vec![va];
    let mut increasing = true;
    let mut recurrence_exact = true;
    let mut x = a.clone();
    for &i in w.indices() {
        let g = &gens[i];
        let y = eval_rational(g, &x);
        let vx = *vals.last().expect("nonempty");
        let vy = val(&y, p)?;
        let vd = val(g.last().expect("nonzero"), p)?.expect("nonzero");
        let predicted = vd + (g.len() as i64 - 1) * vx;
        match vy {
            Some(vy) => {
                increasing &= vy < vx;
                recurrence_exact &= vy == predicted;
                vals.push(vy);
            }
            None => {
                increasing = false;
                recurrence_exact = false;
                break;
            }
        }
        x = y;
    }
    Ok(PadicGrowth {
        valuations: vals,
        increasing,
        recurrence_exact,
    })
}

fn eval_rational(g: &[Rational], x: &Rational) -> Rational {
    g.iter()
        .rev()
        .fold(Rational::from_integer(BigInt::from(0)), |acc, c| {
            acc * x + c
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixHouse {
    pub word: Word,
    pub value: CycloNum,
    pub house: HouseInterval,
    pub within: Ternary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixHouseReport {
    pub l: CertifiedBound,
    pub prefixes: Vec<PrefixHouse>,
    pub pass: bool,
}

/// `house(f_u(a)) <= L` for every proper prefix `u` of `w`, given
/// `house(f_w(a)) <= A` with `f_w(a)` an algebraic integer.
pub fn prefix_house_bound(
    sys: &PolySystem,
    a: &CycloNum,
    w: &Word,
    bound_a: &Rational,
    prec: u32,
) -> Result<PrefixHouseReport, DynamicsError> {
    let end = evaluate_word(sys, w, a);
    if house_leq(&end, bound_a) != Ternary::Yes {
        return Err(DynamicsError::PreconditionFailed(String::from(
            "endpoint house is not certified at most A",
        )));
    }
    let l = bound_l(sys, bound_a, prec);
    let mut prefixes = Vec::with_capacity(w.len());
    let mut x = a.clone();
    for j in 0..w.len() {
        let within = house_leq(&x, &l.value);
        prefixes.push(PrefixHouse {
            word: w.prefix(j),
            value: x.clone(),
            house: house(&x, prec),
            within,
        });
        x = sys.generator(w.indices()[j]).eval(&x);
    }
    let pass = prefixes.iter().all(|p| p.within == Ternary::Yes);
    Ok(PrefixHouseReport { l, prefixes, pass })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityReport {
    pub d: BigInt,
    /// `(prefix, D * f_prefix(a) integral)` for every proper prefix.
    pub prefixes: Vec<(Word, bool)>,
    pub pass: bool,
}

/// `D * f_u(a)` integral for every proper prefix `u` of `w`, given `f_w(a)` integral.
pub fn prefix_integrality(
    sys: &PolySystem,
    a: &CycloNum,
    w: &Word,
) -> Result<IntegralityReport, DynamicsError> {
    if !evaluate_word(sys, w, a).is_algebraic_integer() {
        return Err(DynamicsError::PreconditionFailed(String::from(
            "endpoint is not an algebraic integer",
        )));
    }
    let d = bound_d(sys);
    let dq = Rational::from_integer(d.clone());
    let mut prefixes = Vec::with_capacity(w.len());
    let mut x = a.clone();
    for j in 0..w.len() {
        prefixes.push((w.prefix(j), x.scale(&dq).is_algebraic_integer()));
        x = sys.generator(w.indices()[j]).eval(&x);
    }
    let pass = prefixes.iter().all(|p| p.1);
    Ok(IntegralityReport { d, prefixes, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_element, rat};
    use crate::poly::Poly;
    use alloc::vec;

    fn sys(gens: &[&[i64]]) -> PolySystem {
        PolySystem::from_int_coeffs(gens).unwrap()
    }

    #[test]
    fn archimedean() {
        let s = sys(&[&[1, 0, 1]]);
        let w = Word(vec![0, 0]);
        assert_eq!(
            growth_check_arch(&s, &CycloNum::from_int(4), &w, Embedding(1), 64),
            Ok(true)
        );
        assert!(matches!(
            growth_check_arch(&s, &CycloNum::from_int(3), &w, Embedding(1), 64),
            Err(DynamicsError::HypothesisNotMet(_))
        ));
        let s = sys(&[&[0, 0, 2]]);
        assert_eq!(
            growth_check_arch(&s, &CycloNum::from_int(2), &w, Embedding(1), 64),
            Ok(true)
        );
        // 4 z(5) has modulus 4 under every embedding
        let s = sys(&[&[1, 0, 1]]);
        let a = parse_element("4*z(5)").unwrap();
        for k in 1..5 {
            assert_eq!(growth_check_arch(&s, &a, &w, Embedding(k), 64), Ok(true));
        }
    }

    #[test]
    fn padic() {
        let s = sys(&[&[1, 0, 1]]);
        let r = growth_check_padic(&s, &rat(1, 2), 2, &Word(vec![0, 0])).unwrap();
        assert_eq!(r.valuations, vec![-1, -2, -4]);
        assert!(r.holds());
        let third = PolySystem::new(vec![Poly::from_rationals(&[
            rat(0, 1),
            rat(0, 1),
            rat(1, 3),
        ])])
        .unwrap();
        assert!(matches!(
            growth_check_padic(&third, &rat(1, 1), 3, &Word(vec![0])),
            Err(DynamicsError::HypothesisNotMet(_))
        ));
        // |1/3|_3 = 3 > max(1, 1/3): the hypothesis holds
        assert!(growth_check_padic(&third, &rat(1, 3), 3, &Word(vec![0, 0]))
            .unwrap()
            .holds());
        let cube = sys(&[&[0, 0, 0, 1]]);
        let r = growth_check_padic(&cube, &rat(1, 5), 5, &Word(vec![0, 0])).unwrap();
        assert_eq!(r.valuations, vec![-1, -3, -9]);
    }

    #[test]
    fn prefixes() {
        let s = sys(&[&[1, 0, 1]]);
        let r = prefix_house_bound(&s, &CycloNum::zero(), &Word(vec![0]), &rat(1, 1), 64).unwrap();
        assert!(r.pass);
        assert_eq!(r.l.value, rat(3, 1));
        let r = prefix_house_bound(&s, &CycloNum::zero(), &Word::empty(), &rat(1, 1), 64);
        assert!(r.unwrap().pass);
        let i = parse_element("z(4)").unwrap();
        let r = prefix_house_bound(&s, &i, &Word(vec![0, 0]), &rat(1, 1), 64).unwrap();
        assert!(r.pass);
        assert_eq!(r.prefixes.len(), 2);

        let r = prefix_integrality(&s, &i, &Word(vec![0])).unwrap();
        assert!(r.pass);
        let half = PolySystem::new(vec![Poly::from_rationals(&[
            rat(1, 2),
            rat(0, 1),
            rat(1, 2),
        ])])
        .unwrap();
        let r = prefix_integrality(&half, &CycloNum::one(), &Word(vec![0])).unwrap();
        assert_eq!(r.d, BigInt::from(1));
        assert!(r.pass);
    }
}
