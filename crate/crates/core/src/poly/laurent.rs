use alloc::collections::BTreeMap;
use core::fmt;

use super::{fmt_coeff, Poly};
use crate::arith::{CycloNum, Rational};

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, CycloNum>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, CycloNum)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }

    pub fn monomial(c: CycloNum, e: i64) -> Self {
        Self::from_terms([(e, c)])
    }

    pub fn constant(c: CycloNum) -> Self {
        Self::monomial(c, 0)
    }

    fn add_term(&mut self, e: i64, c: &CycloNum) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&e) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, CycloNum> {
        &self.terms
    }

    pub fn coeff(&self, e: i64) -> CycloNum {
        self.terms.get(&e).cloned().unwrap_or_else(CycloNum::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Number of terms with nonzero exponent.
    pub fn nonconstant_count(&self) -> usize {
        self.terms.keys().filter(|&&e| e != 0).count()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, &-c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(CycloNum::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `g(self)` by Horner's rule.
    pub fn compose_into(&self, g: &Poly) -> Self {
        let mut acc = Self::zero();
        for c in g.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::constant(c.clone()));
        }
        acc
    }
}

impl From<&Poly> for LaurentPoly {
    fn from(p: &Poly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone())),
        )
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest exponent first: `3*X^2 - 1 + 5*X^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let zero = Rational::from_integer(0.into());
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.to_rational().is_some_and(|q| q < zero);
            let mag = if neg { -c } else { c.clone() };
            match (idx == 0, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            match *e {
                0 => f.write_str(&fmt_coeff(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", fmt_coeff(&mag))?;
                    }
                    if *e == 1 {
                        f.write_str("X")?;
                    } else {
                        write!(f, "X^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
