use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::{loxton_lk, loxton_lk_at_least, BoundsError, LoxtonParams};
use crate::arith::{house, CycloNum, HouseInterval, Rational};
use crate::par::map_ordered;

/// `target = sum coefficient_i * zeta_i`, each `zeta_i = z(order_bound)^exponent_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoxtonCertificate {
    pub target: CycloNum,
    pub order_bound: u64,
    pub exponents: Vec<u64>,
    pub coefficients: Vec<BigInt>,
}

impl LoxtonCertificate {
    pub fn b(&self) -> usize {
        self.exponents.len()
    }

    pub fn roots(&self) -> Vec<CycloNum> {
        self.exponents
            .iter()
            .map(|&e| CycloNum::zeta(self.order_bound, e as i64))
            .collect()
    }

    /// Re-sums the terms exactly.
    pub fn verify(&self) -> bool {
        let mut s = CycloNum::zero();
        for (c, z) in self.coefficients.iter().zip(self.roots()) {
            s = &s + &(&CycloNum::from_bigint(c.clone()) * &z);
        }
        s == self.target
    }
}

fn coords_i64(a: &CycloNum, n: u64) -> Option<Vec<i64>> {
    let l = a.lift(n);
    if !l.denominator().is_one() {
        return None;
    }
    l.numerators().iter().map(ToPrimitive::to_i64).collect()
}

struct Search {
    roots: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, u64>,
}

impl Search {
    fn new(n: u64) -> Self {
        let roots: Vec<Vec<i64>> = (0..n)
            .map(|e| {
                coords_i64(&CycloNum::zeta(n, e as i64), n).expect("roots of unity are integral")
            })
            .collect();
        let mut index = BTreeMap::new();
        for (e, r) in roots.iter().enumerate() {
            index.entry(r.clone()).or_insert(e as u64);
        }
        Search { roots, index }
    }

    /// Extends the nondecreasing prefix `chosen` with `left` more exponents.
    fn extend(&self, residual: &mut Vec<i64>, chosen: &mut Vec<u64>, left: usize) -> bool {
        let start = *chosen.last().unwrap_or(&0);
        if left == 1 {
            return match self.index.get(residual.as_slice()) {
                Some(&e) if e >= start => {
                    chosen.push(e);
                    true
                }
                _ => false,
            };
        }
        for e in start..self.roots.len() as u64 {
            sub_assign(residual, &self.roots[e as usize]);
            chosen.push(e);
            if self.extend(residual, chosen, left - 1) {
                return true;
            }
            chosen.pop();
            add_assign(residual, &self.roots[e as usize]);
        }
        false
    }
}

fn sub_assign(a: &mut [i64], b: &[i64]) {
    a.iter_mut().zip(b).for_each(|(x, y)| *x -= y);
}

fn add_assign(a: &mut [i64], b: &[i64]) {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
}

/// Shortest representation of `a` as a sum of roots of unity of order
/// dividing `order_bound`, trying sizes `1..=max_b` in turn. Zero is the
/// empty sum.
pub fn loxton_decompose(
    a: &CycloNum,
    max_b: usize,
    order_bound: u64,
) -> Result<Option<LoxtonCertificate>, BoundsError> {
    if order_bound == 0 || !order_bound.is_multiple_of(a.conductor()) {
        return Err(BoundsError::OrderBound {
            order_bound,
            conductor: a.conductor(),
        });
    }
    if !a.is_algebraic_integer() {
        return Err(BoundsError::NotIntegral);
    }
    let cert = |exponents: Vec<u64>| LoxtonCertificate {
        target: a.clone(),
        order_bound,
        coefficients: vec![BigInt::one(); exponents.len()],
        exponents,
    };
    if a.is_zero() {
        return Ok(Some(cert(Vec::new())));
    }
    let Some(target) = coords_i64(a, order_bound) else {
        return Ok(None);
    };
    let search = Search::new(order_bound);
    for b in 1..=max_b {
        if b == 1 {
            if let Some(&e) = search.index.get(&target) {
                return Ok(Some(cert(vec![e])));
            }
            continue;
        }
        let firsts: Vec<u64> = (0..order_bound).collect();
        let found = map_ordered(&firsts, |&e1| {
            let mut residual = target.clone();
            sub_assign(&mut residual, &search.roots[e1 as usize]);
            let mut chosen = vec![e1];
            search
                .extend(&mut residual, &mut chosen, b - 1)
                .then_some(chosen)
        });
        if let Some(exps) = found.into_iter().flatten().next() {
            return Ok(Some(cert(exps)));
        }
    }
    Ok(None)
}

/// Outcome of checking `b <= L_K(house(a))`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoxtonReport {
    pub certificate: Option<LoxtonCertificate>,
    pub house: HouseInterval,
    /// `L_K(house.hi)` when the exponent is an integer.
    pub lk_at_house_hi: Option<Rational>,
    pub lk_at_house_hi_f64: f64,
    /// `b <= L_K(house.hi)`.
    pub pass: bool,
    /// `b <= L_K(house.lo)`, which implies the inequality at the true house.
    pub certified: bool,
}

pub fn verify_loxton_bound(
    a: &CycloNum,
    params: &LoxtonParams,
    max_b: usize,
    order_bound: u64,
    prec: u32,
) -> Result<LoxtonReport, BoundsError> {
    params.validate()?;
    let certificate = loxton_decompose(a, max_b, order_bound)?;
    let h = house(a, prec);
    let hi = h.hi.to_rational();
    let lo = h.lo.to_rational();
    let lk_at_house_hi = loxton_lk(&hi, params);
    let lk_at_house_hi_f64 = params.coefficient().to_f64().unwrap_or(f64::NAN)
        * libm::pow(
            (&params.b * &hi).to_f64().unwrap_or(f64::NAN),
            params.r_exponent.to_f64().unwrap_or(f64::NAN),
        );
    let (pass, certified) = match &certificate {
        Some(c) => {
            let b = Rational::from_integer(BigInt::from(c.b()));
            (
                loxton_lk_at_least(&hi, params, &b),
                loxton_lk_at_least(&lo, params, &b),
            )
        }
        None => (false, false),
    };
    Ok(LoxtonReport {
        certificate,
        house: h,
        lk_at_house_hi,
        lk_at_house_hi_f64,
        pass,
        certified,
    })
}
