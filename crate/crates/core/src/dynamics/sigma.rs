use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Pow;

use super::orbit::compose_word;
use super::{DynamicsError, PolySystem, Word};
use crate::arith::{house_leq, units_mod, CycloNum, Dyadic, Rational, Ternary};
use crate::bounds::{bound_k, sigma_bound_d, CertifiedBound};
use crate::poly::{root_clusters, Poly, RootCluster};

/// Roots of `f_word(X) - sum_w gamma_w f_w(X)` over the words `w` shorter than `word`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaCandidate {
    pub defining_poly: Poly,
    pub word: Word,
    pub combination: Vec<(Word, CycloNum)>,
    /// Clusters for the identity embedding of the coefficient field.
    pub roots: Vec<RootCluster>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaOutcome {
    Candidate(SigmaCandidate),
    /// The difference polynomial vanished identically.
    Degenerate {
        word: Word,
        combination: Vec<(Word, CycloNum)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSearch {
    pub outcomes: Vec<SigmaOutcome>,
    /// Assignments examined.
    pub enumerated: usize,
    /// Whether the cap stopped the enumeration early.
    pub truncated: bool,
}

/// `A^(d^(n-1))`.
pub fn pool_house_bound(a: &Rational, d: usize, n: usize) -> Result<Rational, DynamicsError> {
    let e = (d as u64)
        .checked_pow(n.saturating_sub(1) as u32)
        .and_then(|e| u32::try_from(e).ok())
        .ok_or(DynamicsError::PreconditionFailed(String::from(
            "pool house exponent too large",
        )))?;
    Ok(Pow::pow(a, e))
}

/// Enumerates assignments of pool values to the words shorter than `word`
/// (by length, then lexicographically; the first word's coefficient varies
/// fastest), stopping after `cap` assignments.
pub fn sigma_members(
    sys: &PolySystem,
    a: &Rational,
    pool: &[CycloNum],
    word: &Word,
    cap: usize,
) -> Result<SigmaSearch, DynamicsError> {
    let d = sys.common_degree().ok_or(DynamicsError::UnequalDegrees)?;
    if d < 3 {
        return Err(DynamicsError::DegreeTooSmall(d));
    }
    let n = word.len();
    if n == 0 {
        return Err(DynamicsError::PreconditionFailed(String::from(
            "word must be nonempty",
        )));
    }
    if word.indices().iter().any(|&i| i >= sys.len()) {
        return Err(DynamicsError::PreconditionFailed(String::from(
            "word index out of range",
        )));
    }
    if pool.is_empty() {
        return Err(DynamicsError::PreconditionFailed(String::from(
            "empty coefficient pool",
        )));
    }
    let bound = pool_house_bound(a, d, n)?;
    for g in pool {
        if !g.is_algebraic_integer() {
            return Err(DynamicsError::PreconditionFailed(alloc::format!(
                "{g} is not integral"
            )));
        }
        if house_leq(g, &bound) != Ternary::Yes {
            return Err(DynamicsError::PreconditionFailed(alloc::format!(
                "house of {g} is not certified at most {bound}"
            )));
        }
    }
    let shorter = Word::all_shorter_than(sys.len(), n);
    let lower: Vec<Poly> = shorter.iter().map(|w| compose_word(sys, w)).collect();
    let top = compose_word(sys, word);
    let mut digits = vec![0usize; shorter.len()];
    let mut outcomes = Vec::new();
    let mut enumerated = 0;
    let mut truncated = false;
    loop {
        if enumerated == cap {
            truncated = true;
            break;
        }
        enumerated += 1;
        let mut p = top.clone();
        let mut combination = Vec::with_capacity(shorter.len());
        for ((w, q), &di) in shorter.iter().zip(&lower).zip(&digits) {
            let g = &pool[di];
            if !g.is_zero() {
                p = p.sub(&q.scale(g));
            }
            combination.push((w.clone(), g.clone()));
        }
        if p.is_zero() {
            outcomes.push(SigmaOutcome::Degenerate {
                word: word.clone(),
                combination,
            });
        } else {
            let roots = root_clusters(&p, p.conductor(), 1);
            outcomes.push(SigmaOutcome::Candidate(SigmaCandidate {
                defining_poly: p,
                word: word.clone(),
                combination,
                roots,
            }));
        }
        // odometer, first digit fastest
        let mut i = 0;
        while i < digits.len() {
            digits[i] += 1;
            if digits[i] < pool.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            break;
        }
    }
    Ok(SigmaSearch {
        outcomes,
        enumerated,
        truncated,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaBoundsReport {
    pub k_bound: CertifiedBound,
    pub d: BigInt,
    /// Largest certified root modulus over every embedding of the coefficient field.
    pub max_modulus_hi: Dyadic,
    pub house: Verdict,
    pub integrality: Verdict,
}

/// Checks `house(root) <= K` over all conjugates and `D * root` integral for
/// every root of the defining polynomial.
pub fn verify_sigma_bounds(
    c: &SigmaCandidate,
    sys: &PolySystem,
    a: &Rational,
    prec: u32,
) -> Result<SigmaBoundsReport, DynamicsError> {
    let k_bound = bound_k(sys, a, prec)?;
    let d = sigma_bound_d(sys);
    let p = &c.defining_poly;
    let n = p.conductor();
    let k_hi = &k_bound.value;
    let mut max_hi = Dyadic::zero();
    let mut house = Verdict::Pass;
    for k in units_mod(n) {
        for cl in root_clusters(p, n, k) {
            let hi = cl.modulus_hi();
            if hi > max_hi {
                max_hi = hi.clone();
            }
            if hi.to_rational() <= *k_hi {
                continue;
            }
            let lo = modulus_lo(&cl);
            if lo.to_rational() > *k_hi {
                house = Verdict::Fail;
            } else if house == Verdict::Pass {
                house = Verdict::Inconclusive(alloc::format!(
                    "root enclosure under embedding {k} reaches {:.6} against K",
                    hi.to_f64()
                ));
            }
        }
    }
    let integrality = if monic_scaled_integral(p, &d) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(SigmaBoundsReport {
        k_bound,
        d,
        max_modulus_hi: max_hi,
        house,
        integrality,
    })
}

fn modulus_lo(c: &RootCluster) -> Dyadic {
    let near = |lo: &Dyadic, hi: &Dyadic| {
        if lo.is_positive() {
            lo.clone()
        } else if hi.is_negative() {
            hi.abs()
        } else {
            Dyadic::zero()
        }
    };
    let x = near(&c.region.re.lo, &c.region.re.hi);
    let y = near(&c.region.im.lo, &c.region.im.hi);
    (&(&x * &x) + &(&y * &y)).sqrt_floor(64)
}

/// Whether `D^deg p(X/D) / lc` has algebraic-integer coefficients, i.e.
/// whether `D` times every root of `p` is an algebraic integer.
pub fn monic_scaled_integral(p: &Poly, d: &BigInt) -> bool {
    let deg = p.degree();
    let lc = p.leading();
    let inv = lc.inv().expect("nonzero leading coefficient");
    p.coeffs().iter().enumerate().all(|(j, c)| {
        let scale = Rational::from_integer(Pow::pow(d, (deg - j) as u32));
        (c * &inv).scale(&scale).is_algebraic_integer()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn x3() -> PolySystem {
        PolySystem::from_int_coeffs(&[&[0, 0, 0, 1], &[-1, 0, 0, 1]]).unwrap()
    }

    fn pool() -> Vec<CycloNum> {
        vec![CycloNum::zero(), CycloNum::one(), CycloNum::from_int(-1)]
    }

    #[test]
    fn level_one() {
        let s = x3();
        let r = sigma_members(&s, &rat(1, 1), &pool(), &Word(vec![0]), 100).unwrap();
        assert_eq!(r.enumerated, 3);
        assert!(!r.truncated);
        let SigmaOutcome::Candidate(c) = &r.outcomes[1] else {
            panic!()
        };
        assert_eq!(c.defining_poly, Poly::from_ints(&[0, -1, 0, 1]));
        assert_eq!(c.roots.len(), 3);
        let SigmaOutcome::Candidate(c) = &r.outcomes[0] else {
            panic!()
        };
        assert_eq!(c.roots.iter().map(|r| r.count).sum::<usize>(), 1);
        let r = sigma_members(&s, &rat(1, 1), &pool(), &Word(vec![1]), 100).unwrap();
        let SigmaOutcome::Candidate(c) = &r.outcomes[0] else {
            panic!()
        };
        assert_eq!(c.defining_poly, Poly::from_ints(&[-1, 0, 0, 1]));
        assert_eq!(c.roots.len(), 3);
        let rep = verify_sigma_bounds(c, &s, &rat(1, 1), 64).unwrap();
        assert_eq!((rep.house, rep.integrality), (Verdict::Pass, Verdict::Pass));
        assert_eq!(rep.k_bound.value, rat(20, 1));
    }

    #[test]
    fn x_cubed_minus_x() {
        // f_1(X) - 1 * X = X^3 - X, roots 0 and +-1
        let s = x3();
        let c = SigmaCandidate {
            defining_poly: Poly::from_ints(&[0, -1, 0, 1]),
            word: Word(vec![0]),
            combination: vec![(Word::empty(), CycloNum::one())],
            roots: Vec::new(),
        };
        let rep = verify_sigma_bounds(&c, &s, &rat(1, 1), 64).unwrap();
        assert_eq!(rep.house, Verdict::Pass);
        assert_eq!(rep.integrality, Verdict::Pass);
        assert_eq!(rep.d, BigInt::from(1));
    }

    #[test]
    fn integrality_detects_denominators() {
        assert!(!monic_scaled_integral(
            &Poly::from_ints(&[-1, 0, 0, 2]),
            &BigInt::from(1)
        ));
        assert!(monic_scaled_integral(
            &Poly::from_ints(&[-1, 0, 0, 2]),
            &BigInt::from(2)
        ));
        assert!(monic_scaled_integral(
            &Poly::from_ints(&[0, -1, 0, 1]),
            &BigInt::from(1)
        ));
    }

    #[test]
    fn cap_and_preconditions() {
        let s = x3();
        let r = sigma_members(&s, &rat(1, 1), &pool(), &Word(vec![0, 1]), 5).unwrap();
        assert!(r.truncated);
        assert_eq!(r.enumerated, 5);
        let bad = vec![CycloNum::from_int(2)];
        assert!(matches!(
            sigma_members(&s, &rat(1, 1), &bad, &Word(vec![0]), 5),
            Err(DynamicsError::PreconditionFailed(_))
        ));
        let sq = PolySystem::from_int_coeffs(&[&[0, 0, 1]]).unwrap();
        assert_eq!(
            sigma_members(&sq, &rat(1, 1), &pool(), &Word(vec![0]), 5),
            Err(DynamicsError::DegreeTooSmall(2))
        );
    }
}
