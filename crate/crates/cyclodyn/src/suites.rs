//! Seeded randomized suites. Instances are drawn sequentially from one
//! ChaCha stream, then checked in parallel with order-preserving collection,
//! so a seed fixes the report regardless of thread count.

use std::collections::BTreeMap;

use cyclodyn_core::arith::{units_mod, Embedding};
use cyclodyn_core::bounds::bound_l;
use cyclodyn_core::canonical::{fz_bound_check, is_trinomial_symmetric};
use cyclodyn_core::dynamics::{growth_check_arch, growth_check_padic, PolySystem, Word};
use cyclodyn_core::{CycloNum, LaurentPoly, Poly, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::sigma_body;
use crate::report::sha256_hex;

pub const GROWTH_COUNT: usize = 1000;
pub const FZ_COUNT: usize = 500;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub seed: u64,
    pub instances: usize,
    pub violations: Vec<String>,
    /// Instances the oracle could not decide; not violations.
    pub inconclusive: Vec<String>,
    /// SHA-256 over one line per instance.
    pub digest: String,
    pub details: Value,
}

impl SuiteResult {
    fn new(
        name: &str,
        seed: u64,
        lines: &[String],
        violations: Vec<String>,
        inconclusive: Vec<String>,
        details: Value,
    ) -> Self {
        SuiteResult {
            name: name.into(),
            seed,
            instances: lines.len(),
            violations,
            inconclusive,
            digest: sha256_hex(lines.join("\n").as_bytes()),
            details,
        }
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn random_word<R: Rng>(r: &mut R, s: usize, max_len: usize) -> Word {
    let len = r.gen_range(1..=max_len);
    Word((0..len).map(|_| r.gen_range(0..s)).collect())
}

// ---------------------------------------------------------------- p-adic

fn vp(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

fn vq(q: &Rational, p: u64) -> Option<i64> {
    (!q.is_zero()).then(|| vp(q.numer(), p) - vp(q.denom(), p))
}

fn unit_part<R: Rng>(r: &mut R, p: u64) -> i64 {
    loop {
        let u = r.gen_range(1..=20i64);
        if !(u as u64).is_multiple_of(p) {
            return u;
        }
    }
}

struct PadicCase {
    p: u64,
    gens: Vec<Vec<Rational>>,
    a: Rational,
    word: Word,
}

fn padic_case<R: Rng>(r: &mut R) -> PadicCase {
    let p = *[2u64, 3, 5, 7].choose(r).expect("nonempty");
    let s = r.gen_range(1..=3);
    let gens: Vec<Vec<Rational>> = loop {
        let gens: Vec<Vec<Rational>> = (0..s)
            .map(|_| {
                let d = r.gen_range(2..=3);
                (0..=d)
                    .map(|j| {
                        let num = loop {
                            let n = r.gen_range(-9..=9i64);
                            if n != 0 || (j > 0 && j < d && r.gen_bool(0.5)) {
                                break n;
                            }
                        };
                        let den = *[1i64, 1, p as i64, (p * p) as i64, 2, 3]
                            .choose(r)
                            .expect("nonempty");
                        Rational::new(num.into(), den.into())
                    })
                    .collect()
            })
            .collect();
        if PolySystem::new(gens.iter().map(|g| Poly::from_rationals(g)).collect()).is_ok() {
            break gens;
        }
    };
    // |a|_p above 1, 1/|lead|_p and every |coeff|_p/|lead|_p
    let mut vmax = 0i64;
    for g in &gens {
        let vd = vq(g.last().expect("lead"), p).expect("nonzero lead");
        vmax = vmax.min(-vd);
        for c in g {
            if let Some(vc) = vq(c, p) {
                vmax = vmax.min(vc - vd);
            }
        }
    }
    let va = vmax - 1 - r.gen_range(0..2i64);
    let unit = Rational::new(
        (unit_part(r, p) * if r.gen_bool(0.5) { -1 } else { 1 }).into(),
        unit_part(r, p).into(),
    );
    let pw = Rational::from_integer(BigInt::from(p).pow(va.unsigned_abs() as u32));
    let a = unit / pw;
    let word = random_word(r, s, 6);
    PadicCase { p, gens, a, word }
}

fn eval_q(g: &[Rational], x: &Rational) -> Rational {
    g.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Returns `(line, violation)`.
fn check_padic(i: usize, c: &PadicCase) -> (String, Option<String>) {
    let sys = PolySystem::new(c.gens.iter().map(|g| Poly::from_rationals(g)).collect())
        .expect("valid system");
    // independent oracle: direct evaluation and valuation counting
    let mut x = c.a.clone();
    let mut want = vec![vq(&x, c.p).expect("nonzero")];
    let mut oracle_ok = true;
    for &j in c.word.indices() {
        let g = &c.gens[j];
        let vx = *want.last().expect("nonempty");
        x = eval_q(g, &x);
        let Some(vy) = vq(&x, c.p) else {
            oracle_ok = false;
            break;
        };
        let vd = vq(g.last().expect("lead"), c.p).expect("nonzero");
        oracle_ok &= vy < vx && vy == vd + (g.len() as i64 - 1) * vx;
        want.push(vy);
    }
    let line = format!("padic {i} p={} word={} v={:?}", c.p, c.word, want);
    let violation = match growth_check_padic(&sys, &c.a, c.p, &c.word) {
        Ok(g) if g.holds() && g.valuations == want && oracle_ok => None,
        Ok(g) => Some(format!(
            "padic {i}: library {:?} holds={} oracle {:?} ok={oracle_ok}",
            g.valuations,
            g.holds(),
            want
        )),
        Err(e) => Some(format!("padic {i}: {e}")),
    };
    (line, violation)
}

// ---------------------------------------------------------- archimedean

/// `m * 2^e` with `max(|re|, |im|)` in `[0.5, 1)`, for moduli far past f64 range.
#[derive(Debug, Clone, Copy)]
struct Scaled {
    re: f64,
    im: f64,
    e: i64,
}

impl Scaled {
    fn new(re: f64, im: f64, e: i64) -> Self {
        let m = re.abs().max(im.abs());
        if m == 0.0 {
            return Scaled {
                re: 0.0,
                im: 0.0,
                e: 0,
            };
        }
        let k = m.log2().floor() as i64 + 1;
        let f = (-k as f64).exp2();
        Scaled {
            re: re * f,
            im: im * f,
            e: e + k,
        }
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn mul(&self, o: &Self) -> Self {
        Scaled::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
            self.e + o.e,
        )
    }

    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return *o;
        }
        if o.is_zero() {
            return *self;
        }
        let (big, small) = if self.e >= o.e { (self, o) } else { (o, self) };
        let shift = small.e - big.e;
        let f = if shift < -1100 {
            0.0
        } else {
            (shift as f64).exp2()
        };
        Scaled::new(big.re + small.re * f, big.im + small.im * f, big.e)
    }

    fn log2_abs(&self) -> f64 {
        self.re.hypot(self.im).log2() + self.e as f64
    }
}

fn embed_f64(c: &CycloNum, n: u64, k: u64) -> Scaled {
    let coords = c.lift(n).coords();
    let (mut re, mut im) = (0.0, 0.0);
    for (j, q) in coords.iter().enumerate() {
        let v = q.to_f64().unwrap_or(0.0);
        let t = std::f64::consts::TAU * ((j as u64 * k) % n) as f64 / n as f64;
        re += v * t.cos();
        im += v * t.sin();
    }
    Scaled::new(re, im, 0)
}

struct ArchCase {
    sys: PolySystem,
    a: CycloNum,
    word: Word,
    k: u64,
}

fn small_cyclo<R: Rng>(r: &mut R, n: u64, span: i64) -> CycloNum {
    let mut x = CycloNum::zero();
    for j in 0..n.min(4) {
        let c = r.gen_range(-span..=span);
        if c != 0 {
            x = &x + &(&CycloNum::from_int(c) * &CycloNum::zeta(n, j as i64));
        }
    }
    x
}

fn mass(c: &CycloNum) -> Rational {
    c.coords()
        .iter()
        .map(|q| q.abs())
        .fold(Rational::zero(), |a, b| a + b)
}

fn arch_case<R: Rng>(r: &mut R, prec: u32) -> ArchCase {
    let n = *[1u64, 3, 4, 5, 8, 12].choose(r).expect("nonempty");
    let s = r.gen_range(1..=3);
    let sys = loop {
        let gens: Vec<Poly> = (0..s)
            .map(|_| {
                let d = r.gen_range(2..=3);
                let mut cs: Vec<CycloNum> = (0..d).map(|_| small_cyclo(r, n, 3)).collect();
                let lead = loop {
                    let c = small_cyclo(r, n, 2);
                    if !c.is_zero() {
                        break c;
                    }
                };
                cs.push(lead);
                Poly::new(cs)
            })
            .collect();
        if let Ok(sys) = PolySystem::new(gens) {
            break sys;
        }
    };
    let l = bound_l(&sys, &Rational::from_integer(1.into()), prec).value;
    let m = *[1u64, 3, 4, 5, 7].choose(r).expect("nonempty");
    let e = small_cyclo(r, m, 2);
    let big_r = l.ceil() + mass(&e) + Rational::from_integer((1 + r.gen_range(0..3i64)).into());
    let a = &CycloNum::from_rational(&big_r) * &CycloNum::zeta(m, r.gen_range(0..m as i64)) + e;
    let big_n = lcm(sys.conductor(), a.conductor());
    let k = *units_mod(big_n).choose(r).expect("units exist");
    let word = random_word(r, s, 6);
    ArchCase { sys, a, word, k }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / num_integer::gcd(a, b) * b
}

/// `(line, violation, oracle_undecided)`.
fn check_arch(i: usize, c: &ArchCase, prec: u32) -> (String, Option<String>, Option<String>) {
    let n = lcm(c.sys.conductor(), c.a.conductor());
    // oracle: scaled f64 moduli along the word
    let mut x = embed_f64(&c.a, n, c.k);
    let mut logs = vec![x.log2_abs()];
    let mut oracle_grows = true;
    let mut undecided = None;
    for &j in c.word.indices() {
        let g = c.sys.generator(j);
        let cs: Vec<Scaled> = g.coeffs().iter().map(|q| embed_f64(q, n, c.k)).collect();
        let y = cs
            .iter()
            .rev()
            .fold(Scaled::new(0.0, 0.0, 0), |acc, q| acc.mul(&x).add(q));
        let (lx, ly) = (x.log2_abs(), y.log2_abs());
        if (ly - lx).abs() <= 1e-9 * lx.abs().max(1.0) {
            undecided = Some(format!("arch {i}: moduli too close for f64"));
        } else {
            oracle_grows &= ly > lx;
        }
        logs.push(ly);
        x = y;
    }
    let line = format!("arch {i} n={n} k={} word={} a={}", c.k, c.word, c.a);
    let violation = match growth_check_arch(&c.sys, &c.a, &c.word, Embedding(c.k), prec) {
        Ok(true) if oracle_grows => None,
        Ok(true) => Some(format!(
            "arch {i}: certified growth but oracle log2 moduli {logs:?}"
        )),
        Ok(false) => Some(format!("arch {i}: modulus failed to increase ({})", c.a)),
        Err(e) => Some(format!("arch {i}: {e}")),
    };
    (line, violation, undecided)
}

/// Criterion 3: p-adic and archimedean growth along random words.
pub fn growth_suite(seed: u64, count: usize, prec: u32) -> SuiteResult {
    let mut r = rng(seed, 3);
    let padic: Vec<PadicCase> = (0..count).map(|_| padic_case(&mut r)).collect();
    let arch: Vec<ArchCase> = (0..count).map(|_| arch_case(&mut r, prec)).collect();
    let p: Vec<_> = padic
        .par_iter()
        .enumerate()
        .map(|(i, c)| check_padic(i, c))
        .collect();
    let a: Vec<_> = arch
        .par_iter()
        .enumerate()
        .map(|(i, c)| check_arch(i, c, prec))
        .collect();
    let mut lines = Vec::new();
    let mut violations = Vec::new();
    let mut inconclusive = Vec::new();
    for (l, v) in p {
        lines.push(l);
        violations.extend(v);
    }
    for (l, v, u) in a {
        lines.push(l);
        violations.extend(v);
        inconclusive.extend(u);
    }
    let details = json!({ "padic_instances": count, "arch_instances": count });
    SuiteResult::new("growth", seed, &lines, violations, inconclusive, details)
}

// ---------------------------------------------------------------- sigma

/// Criterion 8: `{X^3, X^3 - 1}`, `A = 1`, words up to length 2, pool
/// `{0, 1, -1, i, -i}`. Deterministic; the seed is only echoed.
pub fn sigma_suite(seed: u64, prec: u32) -> SuiteResult {
    let sys = PolySystem::from_int_coeffs(&[&[0, 0, 0, 1], &[-1, 0, 0, 1]]).expect("valid system");
    let i = CycloNum::zeta(4, 1);
    let pool = [
        CycloNum::zero(),
        CycloNum::one(),
        -CycloNum::one(),
        i.clone(),
        -i,
    ];
    let one = Rational::from_integer(1.into());
    match sigma_body(&sys, &one, 2, &pool, usize::MAX, prec) {
        Ok((body, certs, _)) => {
            let mut lines = Vec::new();
            let mut violations = Vec::new();
            let mut inconclusive = Vec::new();
            for w in body["words"].as_array().expect("words") {
                for c in w["candidates"].as_array().expect("candidates") {
                    let poly = c["defining_poly"].to_string();
                    for key in ["house", "integrality"] {
                        match c[key]["verdict"].as_str() {
                            Some("pass") | None => {}
                            Some("fail") => {
                                violations.push(format!("{key} bound fails for {poly}"))
                            }
                            Some(_) => {
                                inconclusive.push(format!("{key} for {poly}: {}", c[key]["reason"]))
                            }
                        }
                    }
                    lines.push(format!("{poly} {} {}", c["house"], c["integrality"]));
                }
            }
            let certified = certs
                .iter()
                .map(|c| crate::verify::check(c).unwrap_or(false))
                .filter(|&b| b)
                .count();
            if certified != certs.len() {
                violations.push(format!(
                    "{} of {} combination certificates fail",
                    certs.len() - certified,
                    certs.len()
                ));
            }
            SuiteResult::new(
                "sigma",
                seed,
                &lines,
                violations,
                inconclusive,
                json!({ "summary": body["summary"] }),
            )
        }
        Err(e) => SuiteResult::new(
            "sigma",
            seed,
            &[],
            vec![e.to_string()],
            Vec::new(),
            Value::Null,
        ),
    }
}

// ------------------------------------------------------------------- fz

struct FzCase {
    g: Vec<i64>,
    q: BTreeMap<i64, i64>,
}

fn fz_case<R: Rng>(r: &mut R) -> FzCase {
    let d = r.gen_range(1..=10);
    let mut g: Vec<i64> = (0..d).map(|_| r.gen_range(-5..=5)).collect();
    g.push(*[-3i64, -2, -1, 1, 2, 3].choose(r).expect("nonempty"));
    loop {
        let terms = r.gen_range(1..=5);
        let mut q = BTreeMap::new();
        while q.len() < terms {
            let e = r.gen_range(-4..=4i64);
            let c = *[-3i64, -2, -1, 1, 2, 3].choose(r).expect("nonempty");
            q.insert(e, c);
        }
        let lq = LaurentPoly::from_terms(q.iter().map(|(&e, &c)| (e, CycloNum::from_int(c))));
        if is_trinomial_symmetric(&lq).is_none() {
            return FzCase { g, q };
        }
    }
}

/// Oracle: `g(q)` expanded over the integers.
fn compose_int(g: &[i64], q: &BTreeMap<i64, i64>) -> BTreeMap<i64, BigInt> {
    let mul = |a: &BTreeMap<i64, BigInt>, b: &BTreeMap<i64, i64>| {
        let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                *out.entry(ea + eb).or_default() += ca * BigInt::from(*cb);
            }
        }
        out
    };
    let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
    for &c in g.iter().rev() {
        acc = mul(&acc, q);
        *acc.entry(0).or_default() += BigInt::from(c);
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

fn check_fz(i: usize, c: &FzCase) -> (String, Option<String>) {
    let g = Poly::from_ints(&c.g);
    let q = LaurentPoly::from_terms(c.q.iter().map(|(&e, &v)| (e, CycloNum::from_int(v))));
    let h = compose_int(&c.g, &c.q);
    let ell = h.keys().filter(|&&e| e != 0).count();
    let deg = c.g.len() - 1;
    let bound = 2 * (2 * ell as u64).saturating_sub(1) * (ell as u64).saturating_sub(1);
    let line = format!("fz {i} deg={deg} ell={ell}");
    let violation = match fz_bound_check(&g, &q) {
        Ok(r)
            if r.ell == ell
                && r.deg_g == deg
                && r.bound == bound
                && r.pass
                && (deg as u64) <= bound =>
        {
            None
        }
        Ok(r) => Some(format!(
            "fz {i}: g={:?} q={:?} library ell={} bound={} pass={} oracle ell={ell} bound={bound}",
            c.g, c.q, r.ell, r.bound, r.pass
        )),
        Err(e) => Some(format!("fz {i}: g={:?} q={:?}: {e}", c.g, c.q)),
    };
    (line, violation)
}

/// Criterion 9: random `(g, q)` with `q` not of the form `a X^n + b + c X^-n`.
pub fn fz_suite(seed: u64, count: usize) -> SuiteResult {
    let mut r = rng(seed, 9);
    let cases: Vec<FzCase> = (0..count).map(|_| fz_case(&mut r)).collect();
    let out: Vec<_> = cases
        .par_iter()
        .enumerate()
        .map(|(i, c)| check_fz(i, c))
        .collect();
    let mut lines = Vec::new();
    let mut violations = Vec::new();
    for (l, v) in out {
        lines.push(l);
        violations.extend(v);
    }
    SuiteResult::new("fz", seed, &lines, violations, Vec::new(), Value::Null)
}

pub fn suite_value(r: &SuiteResult) -> Value {
    let mut v = serde_json::to_value(r).expect("suite result");
    v["pass"] = json!(r.violations.is_empty());
    v
}
