use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::dyadic::Dyadic;
use super::integer::gcd_u64;
use super::interval::{ComplexBox, Interval};

/// Certified boxes around `exp(2*pi*i*k/n)` for `k = 0..n`, each of side at
/// most `2^-prec`.
#[derive(Clone, Debug)]
pub struct UnitRoots {
    n: u64,
    prec: u32,
    roots: Vec<ComplexBox>,
}

/// Fixed-point value `v * 2^-g` with absolute error at most `err * 2^-g`.
struct Fixed {
    v: BigInt,
    err: BigInt,
}

/// `2^g * atan(1/x)` by the alternating series.
fn atan_inv(x: u64, g: u32) -> Fixed {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = (BigInt::one() << g as usize) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut i: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * i + 1);
        if i.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        i += 1;
    }
    Fixed {
        v: sum,
        err: BigInt::from(3 * i + 3),
    }
}

/// `2^g * pi` by Machin's formula.
fn pi_fixed(g: u32) -> Fixed {
    let a = atan_inv(5, g);
    let b = atan_inv(239, g);
    Fixed {
        v: a.v * 16 - b.v * 4,
        err: a.err * 16 + b.err * 4,
    }
}

/// Certified enclosure of pi on the `2^-prec` grid.
pub fn pi_interval(prec: u32) -> Interval {
    let g = prec + 16;
    let p = pi_fixed(g);
    fixed_to_interval(&p, g).round_out(prec as i64)
}

fn fixed_to_interval(f: &Fixed, g: u32) -> Interval {
    Interval::new(
        Dyadic::new(&f.v - &f.err, -(g as i64)),
        Dyadic::new(&f.v + &f.err, -(g as i64)),
    )
}

/// `(cos x, sin x)` for fixed-point `0 <= x <= 1`.
fn cos_sin_fixed(x: &Fixed, g: u32) -> (Fixed, Fixed) {
    let one = BigInt::one() << g as usize;
    let x2 = (&x.v * &x.v) >> g as usize;
    let series = |start: BigInt, first: u64| -> Fixed {
        let mut term = start;
        let mut sum = BigInt::zero();
        let mut i: u64 = 0;
        while !term.is_zero() {
            if i.is_multiple_of(2) {
                sum += &term;
            } else {
                sum -= &term;
            }
            let k = 2 * i + first;
            term = ((&term * &x2) >> g as usize) / BigInt::from((k + 1) * (k + 2));
            i += 1;
        }
        let err = BigInt::from(4 * (i + 2) * (i + 2)) + &x.err;
        Fixed { v: sum, err }
    };
    (series(one, 0), series(x.v.clone(), 1))
}

fn clamp_unit(iv: Interval) -> Interval {
    let one = Dyadic::from_int(1);
    let m_one = Dyadic::from_int(-1);
    let lo = iv.lo.max_ref(&m_one).clone();
    let hi = iv.hi.min_ref(&one).clone();
    Interval::new(lo, hi)
}

impl UnitRoots {
    pub fn new(n: u64, prec: u32) -> Self {
        assert!(n >= 1);
        let g = prec + 24 + 2 * (64 - n.leading_zeros());
        let pi = pi_fixed(g);
        // (cos, sin) of 2*pi*a/b with 0 < a/b <= 1/8, keyed by the reduced fraction.
        let mut cache: BTreeMap<(u64, u64), (Interval, Interval)> = BTreeMap::new();
        let mut base = |a: u64, b: u64| -> (Interval, Interval) {
            let gg = gcd_u64(a, b);
            let key = (a / gg, b / gg);
            cache
                .entry(key)
                .or_insert_with(|| {
                    let (a, b) = (BigInt::from(key.0), BigInt::from(key.1));
                    let v = (&pi.v * &a * BigInt::from(2)).div_floor(&b);
                    let err = (&pi.err * &a * BigInt::from(2)).div_ceil(&b) + 1;
                    let (c, s) = cos_sin_fixed(&Fixed { v, err }, g);
                    (
                        clamp_unit(fixed_to_interval(&c, g)).round_out(prec as i64 + 1),
                        clamp_unit(fixed_to_interval(&s, g)).round_out(prec as i64 + 1),
                    )
                })
                .clone()
        };
        let mut roots = Vec::with_capacity(n as usize);
        for k in 0..n {
            // 2*pi*k/n = quadrant * pi/2 + 2*pi*r with 0 <= r < 1/4 (r = rn/(4n)).
            let quadrant = (4 * k) / n;
            let rn = 4 * k - quadrant * n;
            let den = 4 * n;
            let (c, s) = if rn == 0 {
                (Interval::from_int(1), Interval::zero())
            } else if 2 * rn <= n {
                base(rn, den)
            } else {
                let (c, s) = base(n - rn, den);
                (s, c)
            };
            let (c, s) = match quadrant {
                0 => (c, s),
                1 => (s.neg(), c),
                2 => (c.neg(), s.neg()),
                _ => (s, c.neg()),
            };
            roots.push(ComplexBox::new(c, s));
        }
        UnitRoots { n, prec, roots }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Box around `exp(2*pi*i*k/n)`.
    pub fn get(&self, k: i64) -> &ComplexBox {
        &self.roots[k.rem_euclid(self.n as i64) as usize]
    }
}
