//! JSON forms of core values. Numbers that must stay exact travel as strings.

use std::collections::BTreeMap;

use cyclodyn_core::arith::{
    parse_element, parse_rational, rational_to_string, ComplexBox, CycloNum, Dyadic, Interval,
    Rational,
};
use cyclodyn_core::canonical::{Condition, Finding, Form, LinearMap, Sign, Witness};
use cyclodyn_core::dynamics::{Collision, CollisionCertificate, PolySystem, SystemError, Word};
use cyclodyn_core::{LaurentPoly, Poly};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::ConfigError;

pub fn elem(a: &CycloNum) -> String {
    a.to_string()
}

pub fn rat(q: &Rational) -> String {
    rational_to_string(q)
}

pub fn dyadic(d: &Dyadic) -> String {
    rational_to_string(&d.to_rational())
}

pub fn interval(i: &Interval) -> [String; 2] {
    [dyadic(&i.lo), dyadic(&i.hi)]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxDto {
    pub re: [String; 2],
    pub im: [String; 2],
}

impl From<&ComplexBox> for BoxDto {
    fn from(b: &ComplexBox) -> Self {
        BoxDto {
            re: interval(&b.re),
            im: interval(&b.im),
        }
    }
}

pub fn poly(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(elem).collect()
}

pub fn system(sys: &PolySystem) -> Vec<Vec<String>> {
    sys.generators().iter().map(poly).collect()
}

pub fn word(w: &Word) -> Vec<usize> {
    w.one_based()
}

pub fn parse_elem_at(s: &str, field: &str) -> Result<CycloNum, ConfigError> {
    parse_element(s).map_err(|e| ConfigError::new(field, e.to_string()))
}

pub fn parse_rat_at(s: &str, field: &str) -> Result<Rational, ConfigError> {
    parse_rational(s.trim())
        .ok_or_else(|| ConfigError::new(field, format!("{s:?} is not a rational number")))
}

fn coeff_at(v: &Value, field: &str) -> Result<CycloNum, ConfigError> {
    match v {
        Value::String(s) => parse_elem_at(s, field),
        Value::Number(n) if n.is_i64() => Ok(CycloNum::from_int(n.as_i64().expect("checked"))),
        _ => Err(ConfigError::new(
            field,
            "expected an element string or an integer",
        )),
    }
}

pub fn poly_from_value(v: &Value, field: &str) -> Result<Poly, ConfigError> {
    let arr = v
        .as_array()
        .ok_or_else(|| ConfigError::new(field, "expected a coefficient list"))?;
    if arr.is_empty() {
        return Err(ConfigError::new(field, "empty coefficient list"));
    }
    let cs = arr
        .iter()
        .enumerate()
        .map(|(j, c)| coeff_at(c, &format!("{field}[{j}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(cs))
}

/// A system file: a JSON array of coefficient lists, lowest degree first.
pub fn system_from_value(v: &Value, field: &str) -> Result<PolySystem, ConfigError> {
    let arr = v
        .as_array()
        .ok_or_else(|| ConfigError::new(field, "expected an array of polynomials"))?;
    let gens = arr
        .iter()
        .enumerate()
        .map(|(i, p)| poly_from_value(p, &format!("{field}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    PolySystem::new(gens).map_err(|e| {
        let at = match &e {
            SystemError::DegreeTooSmall { index, .. } => format!("{field}[{}]", index - 1),
            SystemError::Duplicate { second, .. } => format!("{field}[{}]", second - 1),
            SystemError::Empty => field.to_string(),
        };
        ConfigError::new(&at, e.to_string())
    })
}

pub fn system_from_strings(s: &[Vec<String>], field: &str) -> Result<PolySystem, ConfigError> {
    let v = serde_json::to_value(s).expect("strings serialize");
    system_from_value(&v, field)
}

pub fn poly_from_strings(s: &[String], field: &str) -> Result<Poly, ConfigError> {
    let v = serde_json::to_value(s).expect("strings serialize");
    poly_from_value(&v, field)
}

/// A Laurent polynomial file: an object from exponent strings to coefficients.
pub fn laurent_from_value(v: &Value, field: &str) -> Result<LaurentPoly, ConfigError> {
    let obj = v
        .as_object()
        .ok_or_else(|| ConfigError::new(field, "expected an exponent -> coefficient map"))?;
    let mut terms = Vec::with_capacity(obj.len());
    for (k, c) in obj {
        let f = format!("{field}[{k:?}]");
        let e: i64 = k
            .trim()
            .parse()
            .map_err(|_| ConfigError::new(&f, "exponent is not an integer"))?;
        terms.push((e, coeff_at(c, &f)?));
    }
    Ok(LaurentPoly::from_terms(terms))
}

pub fn laurent(q: &LaurentPoly) -> BTreeMap<i64, String> {
    q.terms().iter().map(|(e, c)| (*e, elem(c))).collect()
}

pub fn word_from(ix: &[usize], s: usize, field: &str) -> Result<Word, ConfigError> {
    if ix.iter().any(|&i| i == 0 || i > s) {
        return Err(ConfigError::new(
            field,
            format!("word indices must lie in 1..={s}"),
        ));
    }
    Ok(Word::from_one_based(ix).expect("range checked"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CollisionDto {
    Pi {
        base: Vec<usize>,
        cycle: Vec<usize>,
    },
    Pibar {
        k: usize,
        n: usize,
        word_k: Vec<usize>,
        word_n: Vec<usize>,
    },
}

impl From<&Collision> for CollisionDto {
    fn from(c: &Collision) -> Self {
        match c {
            Collision::Pi { base, cycle } => CollisionDto::Pi {
                base: word(base),
                cycle: word(cycle),
            },
            Collision::PiBar {
                k,
                n,
                word_k,
                word_n,
            } => CollisionDto::Pibar {
                k: *k,
                n: *n,
                word_k: word(word_k),
                word_n: word(word_n),
            },
        }
    }
}

impl CollisionDto {
    pub fn to_core(&self, s: usize) -> Result<Collision, ConfigError> {
        Ok(match self {
            CollisionDto::Pi { base, cycle } => Collision::Pi {
                base: word_from(base, s, "collision.base")?,
                cycle: word_from(cycle, s, "collision.cycle")?,
            },
            CollisionDto::Pibar {
                k,
                n,
                word_k,
                word_n,
            } => Collision::PiBar {
                k: *k,
                n: *n,
                word_k: word_from(word_k, s, "collision.word_k")?,
                word_n: word_from(word_n, s, "collision.word_n")?,
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearMapDto {
    pub u: String,
    pub v: String,
}

impl From<&LinearMap> for LinearMapDto {
    fn from(l: &LinearMap) -> Self {
        LinearMapDto {
            u: elem(l.u()),
            v: elem(l.v()),
        }
    }
}

impl LinearMapDto {
    pub fn to_core(&self, field: &str) -> Result<LinearMap, ConfigError> {
        let u = parse_elem_at(&self.u, &format!("{field}.u"))?;
        let v = parse_elem_at(&self.v, &format!("{field}.v"))?;
        LinearMap::new(u, v).ok_or_else(|| ConfigError::new(field, "u must be nonzero"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WitnessDto {
    Conjugacy { l: LinearMapDto },
    TwoSided { l1: LinearMapDto, l2: LinearMapDto },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindingDto {
    /// "one" or "two".
    pub condition: String,
    /// 1-based; `[i, j]` means `f_j o f_i`.
    pub indices: Vec<usize>,
    /// "power" or "cheb".
    pub form: String,
    /// "+" or "-".
    pub sign: String,
    pub witness: Option<WitnessDto>,
    pub note: Option<String>,
}

impl From<&Finding> for FindingDto {
    fn from(f: &Finding) -> Self {
        let (form, sign) = match f.form {
            Form::Power => ("power", Sign::Plus),
            Form::Chebyshev(s) => ("cheb", s),
        };
        FindingDto {
            condition: match f.condition {
                Condition::One => "one".into(),
                Condition::Two => "two".into(),
            },
            indices: f.indices.iter().map(|i| i + 1).collect(),
            form: form.into(),
            sign: if sign == Sign::Plus {
                "+".into()
            } else {
                "-".into()
            },
            witness: f.witness.as_ref().map(|w| match w {
                Witness::Conjugacy(l) => WitnessDto::Conjugacy { l: l.into() },
                Witness::TwoSided(a, b) => WitnessDto::TwoSided {
                    l1: a.into(),
                    l2: b.into(),
                },
            }),
            note: f.note.clone(),
        }
    }
}

impl FindingDto {
    pub fn to_core(&self) -> Result<Finding, ConfigError> {
        let condition = match self.condition.as_str() {
            "one" => Condition::One,
            "two" => Condition::Two,
            _ => {
                return Err(ConfigError::new(
                    "finding.condition",
                    "expected \"one\" or \"two\"",
                ))
            }
        };
        let sign = match self.sign.as_str() {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            _ => return Err(ConfigError::new("finding.sign", "expected \"+\" or \"-\"")),
        };
        let form = match self.form.as_str() {
            "power" => Form::Power,
            "cheb" => Form::Chebyshev(sign),
            _ => {
                return Err(ConfigError::new(
                    "finding.form",
                    "expected \"power\" or \"cheb\"",
                ))
            }
        };
        if self.indices.contains(&0) {
            return Err(ConfigError::new("finding.indices", "indices are 1-based"));
        }
        let witness = match &self.witness {
            None => None,
            Some(WitnessDto::Conjugacy { l }) => {
                Some(Witness::Conjugacy(l.to_core("finding.witness.l")?))
            }
            Some(WitnessDto::TwoSided { l1, l2 }) => Some(Witness::TwoSided(
                l1.to_core("finding.witness.l1")?,
                l2.to_core("finding.witness.l2")?,
            )),
        };
        Ok(Finding {
            condition,
            indices: self.indices.iter().map(|i| i - 1).collect(),
            form,
            witness,
            note: self.note.clone(),
        })
    }
}

/// Self-contained identities that `verify` re-checks exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Collision {
        system: Vec<Vec<String>>,
        alpha: String,
        collision: CollisionDto,
        witness_value: String,
    },
    Speciality {
        system: Vec<Vec<String>>,
        max_conductor: u64,
        finding: FindingDto,
    },
    Loxton {
        target: String,
        order_bound: u64,
        exponents: Vec<u64>,
        coefficients: Vec<String>,
    },
    SigmaCombination {
        system: Vec<Vec<String>>,
        word: Vec<usize>,
        combination: Vec<(Vec<usize>, String)>,
        defining_poly: Vec<String>,
    },
    /// `f_word(alpha) = value` with `value` integral of house at most `bound`.
    OrbitValue {
        system: Vec<Vec<String>>,
        alpha: String,
        word: Vec<usize>,
        value: String,
        bound: String,
    },
}

impl Certificate {
    pub fn collision(sys: &PolySystem, alpha: &CycloNum, c: &CollisionCertificate) -> Self {
        Certificate::Collision {
            system: system(sys),
            alpha: elem(alpha),
            collision: (&c.collision).into(),
            witness_value: elem(&c.witness_value),
        }
    }
}
