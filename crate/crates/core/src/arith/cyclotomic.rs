//! Cyclotomic polynomials and reduction in `Z[x]/(Phi_n)`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::integer::{divisors, mobius, totient};

/// Coefficients of the n-th cyclotomic polynomial, low to high.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let mut p: Vec<i128> = vec![1];
    let divs = divisors(n);
    for &d in &divs {
        if mobius(n / d) == 1 {
            // multiply by x^d - 1
            let d = d as usize;
            let mut q = vec![0i128; p.len() + d];
            for (i, &c) in p.iter().enumerate() {
                q[i + d] += c;
                q[i] -= c;
            }
            p = q;
        }
    }
    for &d in &divs {
        if mobius(n / d) == -1 {
            // exact division by x^d - 1: p = q (x^d - 1)
            let d = d as usize;
            let deg = p.len() - 1;
            let mut q = vec![0i128; deg + 1 - d];
            let mut r = p.clone();
            for i in (d..=deg).rev() {
                let c = r[i];
                q[i - d] = c;
                r[i] -= c;
                r[i - d] += c;
            }
            debug_assert!(r.iter().all(|&c| c == 0));
            p = q;
        }
    }
    p.into_iter().map(|c| c as i64).collect()
}

/// `Z[x]/(Phi_n)` with the power basis `1, x, ..., x^(phi-1)`.
#[derive(Debug, Clone)]
pub(crate) struct CycloRing {
    pub n: u64,
    pub phi: usize,
    poly: Vec<i64>,
}

impl CycloRing {
    pub fn new(n: u64) -> Self {
        let poly = cyclotomic_poly(n);
        debug_assert_eq!(poly.len() as u64 - 1, totient(n));
        CycloRing {
            n,
            phi: poly.len() - 1,
            poly,
        }
    }

    /// Reduce a coefficient vector of any length; exponents are first folded
    /// modulo n (x^n = 1), then reduced modulo Phi_n.
    pub fn reduce(&self, coeffs: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.n as usize;
        let mut r: Vec<BigInt> = if coeffs.len() > n {
            let mut folded = vec![BigInt::zero(); n];
            for (i, c) in coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    folded[i % n] += c;
                }
            }
            folded
        } else {
            coeffs
        };
        let phi = self.phi;
        for i in (phi..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = core::mem::take(&mut r[i]);
            for (j, &pj) in self.poly[..phi].iter().enumerate() {
                if pj != 0 {
                    r[i - phi + j] -= &c * pj;
                }
            }
        }
        r.resize(phi, BigInt::zero());
        r
    }

    /// Power basis coordinates of x^e.
    pub fn monomial(&self, e: u64) -> Vec<BigInt> {
        let e = (e % self.n) as usize;
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::from(1);
        self.reduce(v)
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        self.reduce(out)
    }

    /// Image of `a` under the automorphism x -> x^k.
    pub fn galois(&self, a: &[BigInt], k: u64) -> Vec<BigInt> {
        let n = self.n as usize;
        let mut out = vec![BigInt::zero(); n];
        for (j, c) in a.iter().enumerate() {
            if !c.is_zero() {
                out[(j as u64 * k % self.n) as usize] += c;
            }
        }
        self.reduce(out)
    }
}
