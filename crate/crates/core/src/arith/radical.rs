use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclo::CycloNum;
use super::integer::{is_prime, lcm_u64, totient};
use super::rational::Rational;
use super::units_mod;

/// Outcome of a k-th root search in the cyclotomic closure of Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadicalSearch {
    Found(CycloNum),
    /// Proven: no k-th root of the input lies in any cyclotomic field.
    NotCyclotomic,
    /// No root with conductor up to the given bound.
    OutsideSearchSpace {
        max_conductor: u64,
    },
}

impl RadicalSearch {
    pub fn found(self) -> Option<CycloNum> {
        match self {
            RadicalSearch::Found(r) => Some(r),
            _ => None,
        }
    }
}

/// Upper limit on branch patterns tried per candidate field.
const PATTERN_CAP: f64 = (1u64 << 20) as f64;

/// Some `r` with `r^k = c` in `Q(zeta_N)` for `N <= max_conductor` (or the
/// conductor of `c`, if larger).
pub fn nth_root(c: &CycloNum, k: u32, max_conductor: u64) -> RadicalSearch {
    assert!(k >= 1);
    if k == 1 || c.is_zero() {
        return RadicalSearch::Found(c.clone());
    }
    let c = c.canonicalize();
    if let Some(q) = c.to_rational() {
        return rational_root(&q, k, max_conductor);
    }
    let n = c.conductor();
    let top = max_conductor.max(n);
    let mut n_mult = n;
    while n_mult <= top {
        if n_mult % 4 != 2 {
            if let Some(r) = search_field(&c, k, n_mult) {
                return RadicalSearch::Found(r);
            }
        }
        n_mult += n;
    }
    RadicalSearch::OutsideSearchSpace { max_conductor: top }
}

/// Square root of a squarefree positive integer all of whose prime factors
/// are at most `bound`, as an explicit cyclotomic number.
fn sqrt_squarefree(m: u64) -> CycloNum {
    let mut acc = CycloNum::one();
    for (p, _) in super::integer::prime_factors(m) {
        let s = if p == 2 {
            &CycloNum::zeta(8, 1) + &CycloNum::zeta(8, 7)
        } else {
            // Quadratic Gauss sum g with g^2 = (-1)^((p-1)/2) p.
            let mut g = CycloNum::zero();
            for a in 1..p {
                let e = legendre(a, p);
                let t = CycloNum::zeta(p, a as i64);
                g = if e == 1 { &g + &t } else { &g - &t };
            }
            if p % 4 == 1 {
                g
            } else {
                &g * &CycloNum::zeta(4, 3)
            }
        };
        acc = &acc * &s;
    }
    acc
}

fn legendre(a: u64, p: u64) -> i32 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

fn conductor_of_sqrt(m: u64) -> u64 {
    if m == 1 {
        1
    } else if m % 4 == 1 {
        m
    } else {
        4 * m
    }
}

/// Exact integer k-th root, if any.
fn exact_root(x: &BigInt, k: u32) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *x).then_some(r)
}

/// Split `x > 0` as `s^2 * m` with `m` squarefree, using primes up to `bound`;
/// `None` if the leftover cofactor is not a square (it then has a prime
/// factor above `bound` to an odd power).
fn squarefree_split(x: &BigInt, bound: u64) -> Option<(BigInt, u64)> {
    let mut rest = x.clone();
    let mut s = BigInt::one();
    let mut m = 1u64;
    for p in 2..=bound.max(2) {
        if !is_prime(p) {
            continue;
        }
        let bp = BigInt::from(p);
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        s *= num_traits::pow(bp, (e / 2) as usize);
        if e % 2 == 1 {
            m *= p;
        }
    }
    let r = exact_root(&rest, 2)?;
    Some((s * r, m))
}

/// Rational input: the real root `|q|^(1/k)` lies in a cyclotomic field
/// iff its square is rational.
fn rational_root(q: &Rational, k: u32, max_conductor: u64) -> RadicalSearch {
    let q2 = q * q;
    let (Some(tn), Some(td)) = (exact_root(q2.numer(), k), exact_root(q2.denom(), k)) else {
        return RadicalSearch::NotCyclotomic;
    };
    // r^2 = tn/td, so r = sqrt(tn*td)/td.
    let prod = &tn * &td;
    let Some((s, m)) = squarefree_split(&prod, max_conductor) else {
        return RadicalSearch::OutsideSearchSpace { max_conductor };
    };
    let need = lcm_u64(
        conductor_of_sqrt(m),
        if q.is_negative() { 2 * k as u64 } else { 1 },
    );
    let need = if need % 4 == 2 { need / 2 } else { need };
    if need > max_conductor.max(2) {
        return RadicalSearch::OutsideSearchSpace { max_conductor };
    }
    let base = sqrt_squarefree(m).scale(&Rational::new(s, td));
    let target = CycloNum::from_rational(q);
    let order = 2 * k as u64;
    for j in 0..order {
        let cand = &base * &CycloNum::zeta(order, j as i64);
        if cand.pow(k as i64).map(|x| x == target).unwrap_or(false) {
            return RadicalSearch::Found(cand.canonicalize());
        }
    }
    RadicalSearch::NotCyclotomic
}

fn embed_f64(coords: &[f64], n: u64, k: u64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &c) in coords.iter().enumerate() {
        if c != 0.0 {
            let t = 2.0 * core::f64::consts::PI * ((j as u64 * k) % n) as f64 / n as f64;
            acc += Complex64::new(libm::cos(t), libm::sin(t)) * c;
        }
    }
    acc
}

/// Solve the square complex system `m * y = b` by partial pivoting.
fn solve_complex(mut m: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| {
            m[i][col]
                .norm()
                .partial_cmp(&m[j][col].norm())
                .unwrap_or(core::cmp::Ordering::Equal)
        })?;
        if m[piv][col].norm() < 1e-12 {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            if f != Complex64::new(0.0, 0.0) {
                for cc in col..n {
                    let v = m[col][cc];
                    m[r][cc] -= f * v;
                }
                let v = b[col];
                b[r] -= f * v;
            }
        }
    }
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for cc in r + 1..n {
            s -= m[r][cc] * y[cc];
        }
        y[r] = s / m[r][r];
    }
    Some(y)
}

/// Branch-pattern search for a k-th root inside `Q(zeta_big)`.
fn search_field(c: &CycloNum, k: u32, big: u64) -> Option<CycloNum> {
    let lifted = c.lift(big);
    let phi = totient(big) as usize;
    let units = units_mod(big);
    // One representative per complex-conjugate pair of embeddings.
    let half: Vec<u64> = units.iter().copied().filter(|&u| 2 * u < big).collect();
    if (half.len() as f64) * libm::log2(k as f64) > libm::log2(PATTERN_CAP) {
        return None;
    }
    // delta*r is integral when delta*c is.
    let delta = lifted.denominator().clone();
    let delta_f = delta.to_f64()?;
    let coords: Vec<f64> = lifted
        .coords()
        .iter()
        .map(|q| q.to_f64().unwrap_or(f64::NAN))
        .collect();
    let principal: Vec<Complex64> = half
        .iter()
        .map(|&u| embed_f64(&coords, big, u).powf(1.0 / k as f64) * delta_f)
        .collect();
    let branch: Vec<Complex64> = (0..k)
        .map(|b| {
            let t = 2.0 * core::f64::consts::PI * b as f64 / k as f64;
            Complex64::new(libm::cos(t), libm::sin(t))
        })
        .collect();
    let matrix: Vec<Vec<Complex64>> = units
        .iter()
        .map(|&u| {
            (0..phi)
                .map(|j| {
                    let t =
                        2.0 * core::f64::consts::PI * ((j as u64 * u) % big) as f64 / big as f64;
                    Complex64::new(libm::cos(t), libm::sin(t))
                })
                .collect()
        })
        .collect();
    let target = CycloNum::from_bigint(num_traits::pow(delta.clone(), k as usize)) * &lifted;
    let mut digits = vec![0u32; half.len()];
    loop {
        let mut values = vec![Complex64::new(0.0, 0.0); phi];
        for (pos, &u) in units.iter().enumerate() {
            let (idx, conj) = match half.iter().position(|&h| h == u) {
                Some(i) => (i, false),
                None => (half.iter().position(|&h| h == big - u)?, true),
            };
            let v = principal[idx] * branch[digits[idx] as usize];
            values[pos] = if conj { v.conj() } else { v };
        }
        if let Some(y) = solve_complex(matrix.clone(), values) {
            let ok = y.iter().all(|z| {
                let tol = 1e-6 * (1.0 + z.re.abs());
                z.im.abs() < tol && (z.re - libm::round(z.re)).abs() < tol
            });
            if ok {
                let ints: Vec<Rational> = y
                    .iter()
                    .map(|z| Rational::from_integer(BigInt::from(libm::round(z.re) as i64)))
                    .collect();
                let scaled = CycloNum::new(big, &ints);
                if scaled.pow(k as i64).ok()? == target {
                    let r = scaled.scale(&Rational::new(BigInt::one(), delta.clone()));
                    return Some(r.canonicalize());
                }
            }
        }
        // Mixed-radix increment.
        let mut i = 0;
        loop {
            if i == digits.len() {
                return None;
            }
            digits[i] += 1;
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn check(c: &CycloNum, k: u32) -> CycloNum {
        let r = nth_root(c, k, 24).found().expect("root exists");
        assert_eq!(r.pow(k as i64).unwrap(), *c);
        r
    }

    #[test]
    fn rational_square_roots() {
        check(&CycloNum::from_int(2), 2);
        check(&CycloNum::from_int(-1), 2);
        check(&CycloNum::from_int(3), 2);
        check(&CycloNum::from_rational(&rat(-8, 3)), 2);
        check(&CycloNum::from_rational(&rat(9, 4)), 2);
        check(&CycloNum::from_int(5), 2);
        assert_eq!(
            check(&CycloNum::from_int(4), 2)
                .to_rational()
                .unwrap()
                .abs(),
            rat(2, 1)
        );
    }

    #[test]
    fn rational_higher_roots() {
        check(&CycloNum::from_int(-1), 3);
        check(&CycloNum::from_int(8), 3);
        check(&CycloNum::from_int(4), 4);
        check(&CycloNum::from_int(-4), 4);
        check(&CycloNum::from_int(1), 6);
        assert_eq!(
            nth_root(&CycloNum::from_int(2), 3, 24),
            RadicalSearch::NotCyclotomic
        );
        assert_eq!(
            nth_root(&CycloNum::from_int(2), 4, 24),
            RadicalSearch::NotCyclotomic
        );
        assert!(matches!(
            nth_root(&CycloNum::from_int(29), 2, 24),
            RadicalSearch::OutsideSearchSpace { .. }
        ));
    }

    #[test]
    fn roots_of_irrational_elements() {
        check(&CycloNum::zeta(5, 1), 2);
        check(&CycloNum::zeta(3, 1), 2);
        let z = &CycloNum::from_int(2) + &CycloNum::zeta(5, 2);
        check(&(&z * &z), 2);
        let w = &CycloNum::zeta(7, 1) - &CycloNum::from_rational(&rat(1, 2));
        check(&w.pow(3).unwrap(), 3);
    }
}
