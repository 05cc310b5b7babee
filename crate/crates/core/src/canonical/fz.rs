use super::CanonicalError;
use crate::arith::CycloNum;
use crate::poly::{LaurentPoly, Poly};

/// `g(q)`, expanded.
pub fn laurent_compose(g: &Poly, q: &LaurentPoly) -> LaurentPoly {
    q.compose_into(g)
}

/// `(a, b, c, n)` with `q = a X^n + b X^-n + c`, `n >= 1`; a constant `q`
/// is reported with `n = 1`.
pub fn is_trinomial_symmetric(q: &LaurentPoly) -> Option<(CycloNum, CycloNum, CycloNum, u64)> {
    let mut n: Option<u64> = None;
    for &e in q.terms().keys() {
        if e == 0 {
            continue;
        }
        match n {
            None => n = Some(e.unsigned_abs()),
            Some(m) if m == e.unsigned_abs() => {}
            Some(_) => return None,
        }
    }
    let n = n.unwrap_or(1);
    let n_i = n as i64;
    Some((q.coeff(n_i), q.coeff(-n_i), q.coeff(0), n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FzReport {
    /// Nonconstant terms of `g(q)`.
    pub ell: usize,
    pub deg_g: usize,
    /// `2 (2 ell - 1)(ell - 1)`.
    pub bound: u64,
    pub pass: bool,
}

/// Checks `deg g <= 2 (2 ell - 1)(ell - 1)` for `h = g(q)`.
pub fn fz_bound_check(g: &Poly, q: &LaurentPoly) -> Result<FzReport, CanonicalError> {
    if g.is_zero() || g.degree() == 0 {
        return Err(CanonicalError::HypothesisNotMet("g is constant".into()));
    }
    if is_trinomial_symmetric(q).is_some() {
        return Err(CanonicalError::HypothesisNotMet(
            "q has the form aX^n + bX^-n + c".into(),
        ));
    }
    let h = laurent_compose(g, q);
    let ell = h.nonconstant_count();
    let l = ell as u64;
    let bound = if l == 0 { 0 } else { 2 * (2 * l - 1) * (l - 1) };
    let deg_g = g.degree();
    Ok(FzReport {
        ell,
        deg_g,
        bound,
        pass: deg_g as u64 <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, CycloNum::from_int(c))))
    }

    #[test]
    fn compositions() {
        let x2 = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(
            laurent_compose(&x2, &lp(&[(1, 1), (2, 1)])),
            lp(&[(2, 1), (3, 2), (4, 1)])
        );
        let q = lp(&[(3, 2), (-1, 5)]);
        assert_eq!(laurent_compose(&Poly::x(), &q), q);
        assert_eq!(
            laurent_compose(&x2, &lp(&[(1, 1), (-1, 1)])),
            lp(&[(2, 1), (0, 2), (-2, 1)])
        );
    }

    #[test]
    fn trinomials() {
        let q = lp(&[(2, 3), (-2, 5), (0, -1)]);
        assert_eq!(
            is_trinomial_symmetric(&q),
            Some((
                CycloNum::from_int(3),
                CycloNum::from_int(5),
                CycloNum::from_int(-1),
                2
            ))
        );
        assert_eq!(is_trinomial_symmetric(&lp(&[(1, 1), (2, 1)])), None);
        assert_eq!(
            is_trinomial_symmetric(&lp(&[(4, 7)])),
            Some((CycloNum::from_int(7), CycloNum::zero(), CycloNum::zero(), 4))
        );
    }

    #[test]
    fn bound() {
        let q = lp(&[(1, 1), (2, 1)]);
        let r = fz_bound_check(&Poly::from_ints(&[0, 0, 1]), &q).unwrap();
        assert_eq!((r.ell, r.bound, r.pass), (3, 20, true));
        let r = fz_bound_check(&Poly::from_ints(&[0, 0, 0, 1]), &q).unwrap();
        assert_eq!((r.ell, r.bound, r.pass), (4, 42, true));
        assert!(matches!(
            fz_bound_check(&Poly::from_ints(&[0, 0, 1]), &lp(&[(1, 1), (-1, 1)])),
            Err(CanonicalError::HypothesisNotMet(_))
        ));
    }
}
