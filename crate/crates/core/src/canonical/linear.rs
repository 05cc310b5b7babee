use core::fmt;

use crate::arith::CycloNum;
use crate::poly::Poly;

/// `x -> u x + v` with `u != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    u: CycloNum,
    v: CycloNum,
}

impl LinearMap {
    pub fn new(u: CycloNum, v: CycloNum) -> Option<Self> {
        (!u.is_zero()).then_some(LinearMap { u, v })
    }

    pub fn identity() -> Self {
        LinearMap {
            u: CycloNum::one(),
            v: CycloNum::zero(),
        }
    }

    pub fn u(&self) -> &CycloNum {
        &self.u
    }

    pub fn v(&self) -> &CycloNum {
        &self.v
    }

    pub fn apply(&self, x: &CycloNum) -> CycloNum {
        &(&self.u * x) + &self.v
    }

    pub fn as_poly(&self) -> Poly {
        Poly::linear(self.u.clone(), self.v.clone())
    }

    /// `x -> (x - v) / u`.
    pub fn inverse(&self) -> Self {
        let ui = self.u.inv().expect("u is nonzero");
        LinearMap {
            v: -&(&self.v * &ui),
            u: ui,
        }
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        LinearMap {
            u: &self.u * &inner.u,
            v: self.apply(&inner.v),
        }
    }

    /// `self o p`.
    pub fn after(&self, p: &Poly) -> Poly {
        p.scale(&self.u).add(&Poly::constant(self.v.clone()))
    }

    /// `self o g o self^-1`.
    pub fn conjugate(&self, g: &Poly) -> Poly {
        self.after(&g.compose(&self.inverse().as_poly()))
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_element;

    #[test]
    fn inverse_round_trip() {
        let l = LinearMap::new(
            parse_element("2*z(3)").unwrap(),
            parse_element("1/2").unwrap(),
        )
        .unwrap();
        assert_eq!(l.compose(&l.inverse()), LinearMap::identity());
        assert_eq!(l.inverse().compose(&l), LinearMap::identity());
        let x = parse_element("z(4) + 3").unwrap();
        assert_eq!(l.inverse().apply(&l.apply(&x)), x);
        assert!(LinearMap::new(CycloNum::zero(), CycloNum::one()).is_none());
    }

    #[test]
    fn conjugation() {
        let l = LinearMap::new(parse_element("1/2").unwrap(), CycloNum::from_int(-1)).unwrap();
        let f = l.conjugate(&Poly::from_ints(&[0, 0, 1]));
        assert_eq!(f, Poly::from_ints(&[1, 4, 2]));
    }
}
