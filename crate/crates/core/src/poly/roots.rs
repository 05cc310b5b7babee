use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;

use super::Poly;
use crate::arith::{raw_embeddings, ComplexBox, Dyadic, Interval, Rational};

/// A certified region holding exactly `count` distinct roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCluster {
    pub region: ComplexBox,
    pub count: usize,
}

impl RootCluster {
    /// Upper bound for `|z|` over the region.
    pub fn modulus_hi(&self) -> Dyadic {
        let far = |iv: &Interval| iv.lo.abs().max_ref(&iv.hi.abs()).clone();
        let (x, y) = (far(&self.region.re), far(&self.region.im));
        (&(&x * &x) + &(&y * &y)).sqrt_ceil(PREC)
    }
}

const PREC: i64 = 96;

fn dyadic_from_f64(x: f64) -> Dyadic {
    assert!(x.is_finite());
    if x == 0.0 {
        return Dyadic::zero();
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    Dyadic::new(BigInt::from(m) * sign, e)
}

fn horner(cs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in cs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Simultaneous Newton (Aberth-Ehrlich) approximations of all roots.
fn aberth(cs: &[Complex64]) -> Vec<Complex64> {
    let m = cs.len() - 1;
    let lc = cs[m];
    let radius = 1.0 + cs[..m].iter().map(|c| (c / lc).norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..m)
        .map(|i| {
            let t = 2.0 * core::f64::consts::PI * i as f64 / m as f64 + 0.4;
            Complex64::new(libm::cos(t), libm::sin(t)) * (0.5 * radius)
        })
        .collect();
    let mut settled = 0;
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for i in 0..m {
            let (p, dp) = horner(cs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..m)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.re.is_finite() && w.im.is_finite() {
                z[i] -= w;
                worst = worst.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if worst < 1e-15 {
            settled += 1;
            if settled >= 3 {
                break;
            }
        }
    }
    z
}

/// Certified clusters of the distinct roots of `sigma_k(p)`, where `sigma_k`
/// is the embedding `zeta_N -> exp(2*pi*i*k/N)` of `Q(zeta_N)` and `N` is a
/// multiple of every coefficient conductor.
///
/// Disks `|z - z_i| <= m |p(z_i)| / (|a_m| prod_{j != i} |z_i - z_j|)` around
/// approximations `z_i` of the `m` simple roots cover all roots, and each
/// connected union of `c` disks holds exactly `c` roots. The returned
/// regions are bounding boxes of those unions.
pub fn root_clusters(p: &Poly, conductor: u64, k: u64) -> Vec<RootCluster> {
    let q = p.squarefree_part();
    let m = q.degree();
    if q.is_zero() || m == 0 {
        return Vec::new();
    }
    let boxes: Vec<ComplexBox> = q
        .coeffs()
        .iter()
        .map(|c| {
            raw_embeddings(&c.lift(conductor), &[k], PREC as u32)
                .pop()
                .expect("one box")
        })
        .collect();
    let mids: Vec<Complex64> = boxes
        .iter()
        .map(|b| {
            let (x, y) = b.mid_f64();
            Complex64::new(x, y)
        })
        .collect();
    let approx = aberth(&mids);
    let zs: Vec<ComplexBox> = approx
        .iter()
        .map(|z| {
            ComplexBox::new(
                Interval::point(dyadic_from_f64(z.re)),
                Interval::point(dyadic_from_f64(z.im)),
            )
        })
        .collect();

    let lc_lo = boxes[m].modulus(PREC).lo;
    let mut radii = Vec::with_capacity(m);
    for i in 0..m {
        let mut val = ComplexBox::zero();
        for b in boxes.iter().rev() {
            val = val.mul(&zs[i]).add(b).round_out(PREC + 32);
        }
        let num = val.modulus(PREC).hi;
        let mut den = lc_lo.clone();
        for j in 0..m {
            if j != i {
                den = &den * &zs[i].sub(&zs[j]).modulus(PREC).lo;
            }
        }
        if !den.is_positive() {
            return vec![cauchy_cluster(&boxes, m)];
        }
        let r =
            num.to_rational() * Rational::from_integer(BigInt::from(m as u64)) / den.to_rational();
        radii.push(Dyadic::ceil_at(&r, PREC));
    }

    let disks: Vec<ComplexBox> = zs
        .iter()
        .zip(&radii)
        .map(|(z, r)| {
            let rr = Interval::new(-r.clone(), r.clone());
            ComplexBox::new(z.re.add(&rr), z.im.add(&rr))
        })
        .collect();
    // Union-find over overlapping boxes (box overlap is implied by disk overlap).
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..m {
        for j in i + 1..m {
            if disks[i].intersect(&disks[j]).is_some() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b.max(a)] = a.min(b);
                }
            }
        }
    }
    let mut out: Vec<(usize, RootCluster)> = Vec::new();
    for i in 0..m {
        let r = find(&mut parent, i);
        match out.iter_mut().find(|(root, _)| *root == r) {
            Some((_, c)) => {
                c.region = c.region.hull(&disks[i]);
                c.count += 1;
            }
            None => out.push((
                r,
                RootCluster {
                    region: disks[i].clone(),
                    count: 1,
                },
            )),
        }
    }
    out.into_iter().map(|(_, c)| c).collect()
}

/// One disk `|z| <= 1 + max |a_j / a_m|` holding every root.
fn cauchy_cluster(boxes: &[ComplexBox], m: usize) -> RootCluster {
    let lc_lo = boxes[m].modulus(PREC).lo;
    let mut best = Rational::from_integer(0.into());
    for b in &boxes[..m] {
        let r = b.modulus(PREC).hi.to_rational() / lc_lo.to_rational();
        if r > best {
            best = r;
        }
    }
    let r = Dyadic::ceil_at(&(best + Rational::from_integer(1.into())), PREC);
    let rr = Interval::new(-r.clone(), r);
    RootCluster {
        region: ComplexBox::new(rr.clone(), rr),
        count: m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::CycloNum;

    #[test]
    fn cubic_with_known_roots() {
        // X^3 - X
        let p = Poly::from_ints(&[0, -1, 0, 1]);
        let cl = root_clusters(&p, 1, 1);
        assert_eq!(cl.len(), 3);
        for want in [-1.0, 0.0, 1.0] {
            assert!(cl
                .iter()
                .any(|c| c.count == 1 && c.region.contains_f64(want, 0.0)));
        }
    }

    #[test]
    fn cube_roots_of_unity() {
        let p = Poly::from_ints(&[-1, 0, 0, 1]);
        let cl = root_clusters(&p, 1, 1);
        assert_eq!(cl.len(), 3);
        let h = 3f64.sqrt() / 2.0;
        for (x, y) in [(1.0, 0.0), (-0.5, h), (-0.5, -h)] {
            assert!(cl.iter().any(|c| c.region.contains_f64(x, y)));
        }
        assert!(cl.iter().all(|c| c.modulus_hi().to_f64() < 1.0 + 1e-9));
    }

    #[test]
    fn repeated_roots_collapse() {
        let p = Poly::from_ints(&[1, -2, 1]).mul(&Poly::from_ints(&[2, 1]));
        let cl = root_clusters(&p, 1, 1);
        assert_eq!(cl.iter().map(|c| c.count).sum::<usize>(), 2);
    }

    #[test]
    fn conjugate_embedding() {
        // X - i under the embedding i -> -i has root -i.
        let p = Poly::new(vec![-CycloNum::zeta(4, 1), CycloNum::one()]);
        let c = root_clusters(&p, 4, 3);
        assert!(c[0].region.contains_f64(0.0, -1.0));
    }
}
