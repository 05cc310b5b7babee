use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::orbit::{build_tree_pruned, TreeBudget};
use super::{DynamicsError, PolySystem, Word};
use crate::arith::{house_leq, raw_embeddings, totient, units_mod, CycloNum, Rational, Ternary};
use crate::bounds::bound_l;
use crate::par::map_ordered;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub a: Rational,
    pub conductor_max: u64,
    pub height_max: u64,
    pub depth: usize,
    pub budget: TreeBudget,
    /// Stop after this many distinct starting points.
    pub max_candidates: Option<usize>,
    pub precision: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanHit {
    pub alpha: CycloNum,
    pub word: Word,
    pub value: CycloNum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSkip {
    pub alpha: CycloNum,
    pub reason: DynamicsError,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub hits: Vec<ScanHit>,
    pub skipped: Vec<ScanSkip>,
    pub candidates: usize,
    pub truncated: bool,
}

/// Rationals `p/q` with `|p| <= h`, `1 <= q <= h`, ascending.
fn height_values(h: u64) -> Vec<Rational> {
    let mut set = BTreeSet::new();
    for q in 1..=h.max(1) {
        for p in -(h as i64)..=(h as i64) {
            set.insert(Rational::new(BigInt::from(p), BigInt::from(q)));
        }
    }
    set.into_iter().collect()
}

fn within_height(q: &Rational, h: &BigInt) -> bool {
    q.numer().abs() <= *h && q.denom() <= h
}

/// Whether `a` (found at conductor `n`) was not already produced at a
/// smaller conductor, i.e. has no height-bounded coordinates there.
fn first_occurrence(a: &CycloNum, n: u64, h: &BigInt) -> bool {
    let m = a.conductor();
    (m..n)
        .step_by(m as usize)
        .filter(|k| k % 4 != 2)
        .all(|k| !a.lift(k).coords().iter().all(|q| within_height(q, h)))
}

/// Distinct starting points, streamed: conductors ascending (skipping
/// `n = 2 mod 4`, which repeat `n/2`), coordinates lexicographic, first
/// occurrence kept.
struct Candidates {
    vals: Vec<Rational>,
    h: BigInt,
    n: u64,
    max_n: u64,
    digits: Option<Vec<usize>>,
}

impl Candidates {
    fn new(cfg: &ScanConfig) -> Self {
        Candidates {
            vals: height_values(cfg.height_max),
            h: BigInt::from(cfg.height_max.max(1)),
            n: 1,
            max_n: cfg.conductor_max,
            digits: None,
        }
    }

    /// Last coordinate fastest; moves to the next conductor on wrap-around.
    fn advance(&mut self) {
        let digits = self.digits.as_mut().expect("active conductor");
        for i in (0..digits.len()).rev() {
            digits[i] += 1;
            if digits[i] < self.vals.len() {
                return;
            }
            digits[i] = 0;
        }
        self.digits = None;
        self.n += 1;
    }
}

impl Iterator for Candidates {
    type Item = CycloNum;

    fn next(&mut self) -> Option<CycloNum> {
        loop {
            if self.n > self.max_n {
                return None;
            }
            if self.digits.is_none() {
                if self.n % 4 == 2 {
                    self.n += 1;
                    continue;
                }
                self.digits = Some(vec![0; totient(self.n) as usize]);
            }
            let n = self.n;
            let coords: Vec<Rational> = self
                .digits
                .as_ref()
                .expect("active")
                .iter()
                .map(|&d| self.vals[d].clone())
                .collect();
            self.advance();
            let a = CycloNum::new(n, &coords).canonicalize();
            if first_occurrence(&a, n, &self.h) {
                return Some(a);
            }
        }
    }
}

const CHUNK: usize = 4096;

/// Floating-point screen for "some conjugate of `v` has modulus above `l`",
/// answering only when the margin dwarfs any rounding error.
fn approx_beyond(v: &CycloNum, l: f64) -> Option<bool> {
    let n = v.conductor();
    let den = v.denominator().to_f64()?;
    let coords: Vec<f64> = v
        .numerators()
        .iter()
        .map(|c| c.to_f64().map(|x| x / den))
        .collect::<Option<_>>()?;
    let mass: f64 = coords.iter().map(|c| c.abs()).sum();
    if !mass.is_finite() || !l.is_finite() {
        return None;
    }
    let err = (mass + l) * 1e-9 + 1e-300;
    let mut all_below = true;
    for k in units_mod(n) {
        let (mut re, mut im) = (0.0, 0.0);
        for (j, c) in coords.iter().enumerate() {
            let t = 2.0 * core::f64::consts::PI * ((j as u64 * k) % n) as f64 / n as f64;
            re += c * libm::cos(t);
            im += c * libm::sin(t);
        }
        let m = libm::hypot(re, im);
        if m - err > l {
            return Some(true);
        }
        all_below &= m + err < l;
    }
    all_below.then_some(false)
}

/// Orbit values at levels `1..=depth` that are algebraic integers of house
/// at most `A`. Nodes with a conjugate beyond `L` (the growth threshold, at
/// least `A`) are not expanded: their descendants only grow there.
pub fn scan_sa(sys: &PolySystem, cfg: &ScanConfig) -> ScanReport {
    let l = bound_l(sys, &cfg.a, cfg.precision).value;
    let l_f64 = l.to_f64().unwrap_or(f64::INFINITY);
    let prune = |v: &CycloNum| match approx_beyond(v, l_f64) {
        Some(b) => b,
        None => raw_embeddings(v, &units_mod(v.conductor()), 16)
            .iter()
            .any(|b| b.modulus(24).lo.to_rational() > l),
    };
    let mut source = Candidates::new(cfg);
    let mut report = ScanReport {
        hits: Vec::new(),
        skipped: Vec::new(),
        candidates: 0,
        truncated: false,
    };
    loop {
        let mut chunk = Vec::with_capacity(CHUNK);
        while chunk.len() < CHUNK {
            if cfg.max_candidates.is_some_and(|m| report.candidates == m) {
                report.truncated = source.next().is_some();
                break;
            }
            match source.next() {
                Some(a) => {
                    chunk.push(a);
                    report.candidates += 1;
                }
                None => break,
            }
        }
        if chunk.is_empty() {
            break;
        }
        let results = map_ordered(&chunk, |alpha| {
            build_tree_pruned(sys, alpha, cfg.depth, cfg.budget, prune).map(|t| {
                let mut hits = Vec::new();
                for level in &t.levels[1..] {
                    for node in level {
                        if node.value.is_algebraic_integer()
                            && house_leq(&node.value, &cfg.a) == Ternary::Yes
                        {
                            hits.push(ScanHit {
                                alpha: alpha.clone(),
                                word: node.words[0].clone(),
                                value: node.value.clone(),
                            });
                        }
                    }
                }
                hits
            })
        });
        for (alpha, r) in chunk.into_iter().zip(results) {
            match r {
                Ok(h) => report.hits.extend(h),
                Err(reason) => report.skipped.push(ScanSkip { alpha, reason }),
            }
        }
        if report.truncated {
            break;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn cfg(conductor_max: u64, height_max: u64, depth: usize) -> ScanConfig {
        ScanConfig {
            a: rat(1, 1),
            conductor_max,
            height_max,
            depth,
            budget: TreeBudget::default(),
            max_candidates: None,
            precision: 64,
        }
    }

    #[test]
    fn square_map_hits_roots_of_unity() {
        let s = PolySystem::from_int_coeffs(&[&[0, 0, 1]]).unwrap();
        let r = scan_sa(&s, &cfg(12, 1, 1));
        for n in [1u64, 3, 4, 5, 8, 12] {
            let z = CycloNum::zeta(n, 1);
            assert!(r.hits.iter().any(|h| h.alpha == z), "z({n})");
        }
    }

    #[test]
    fn x2_plus_1_rationals() {
        let s = PolySystem::from_int_coeffs(&[&[1, 0, 1]]).unwrap();
        let r = scan_sa(&s, &cfg(1, 2, 3));
        let alphas: BTreeSet<_> = r.hits.iter().map(|h| h.alpha.key()).collect();
        assert!(alphas.contains(&CycloNum::zero().key()));
        assert!(r.hits.iter().all(|h| h.value.is_one()));
        assert!(r.skipped.is_empty());
    }

    #[test]
    fn empty_and_capped() {
        let s = PolySystem::from_int_coeffs(&[&[1, 0, 1]]).unwrap();
        let r = scan_sa(&s, &cfg(0, 3, 3));
        assert!(r.hits.is_empty() && r.candidates == 0);
        let mut c = cfg(5, 2, 2);
        c.max_candidates = Some(7);
        let r = scan_sa(&s, &c);
        assert!(r.truncated);
        assert_eq!(r.candidates, 7);
    }

    #[test]
    fn streamed_candidates_match_set_dedup() {
        for (n, h) in [(12, 1), (8, 2), (9, 1)] {
            let c = cfg(n, h, 1);
            let vals = height_values(h);
            let mut seen = BTreeSet::new();
            let mut want = Vec::new();
            for m in (1..=n).filter(|m| m % 4 != 2) {
                let phi = totient(m) as u32;
                for idx in 0..vals.len().pow(phi) {
                    let mut r = idx;
                    let mut coords = vec![Rational::from_integer(0.into()); phi as usize];
                    for j in (0..phi as usize).rev() {
                        coords[j] = vals[r % vals.len()].clone();
                        r /= vals.len();
                    }
                    let a = CycloNum::new(m, &coords).canonicalize();
                    if seen.insert(a.key()) {
                        want.push(a);
                    }
                }
            }
            let got: Vec<_> = Candidates::new(&c).collect();
            assert_eq!(got, want, "n <= {n}, h = {h}");
        }
    }

    #[test]
    fn permutation_invariance() {
        let a = PolySystem::from_int_coeffs(&[&[0, 0, 1], &[-1, 0, 1]]).unwrap();
        let b = a.permuted(&[1, 0]);
        let c = cfg(4, 1, 3);
        let key = |r: ScanReport| {
            r.hits
                .into_iter()
                .map(|h| (h.alpha.key(), h.value.key()))
                .collect::<BTreeSet<_>>()
        };
        assert_eq!(key(scan_sa(&a, &c)), key(scan_sa(&b, &c)));
    }
}
