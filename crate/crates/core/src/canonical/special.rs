use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::forms::{
    chebyshev, is_conjugate_to_cheb, is_conjugate_to_power, two_sided_equiv_cheb,
    two_sided_equiv_power, Sign,
};
use super::{CanonicalError, LinearMap};
use crate::arith::CycloNum;
use crate::dynamics::PolySystem;
use crate::par::map_ordered;
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// A generator is linearly conjugate to `X^d` or `+-T_d`.
    One,
    /// `f_j o f_i` (for `i != j`) is `l1 o X^d o l2` or `l1 o T_d o l2`.
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Power,
    Chebyshev(Sign),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `target = l o model o l^-1`.
    Conjugacy(LinearMap),
    /// `target = l1 o model o l2`.
    TwoSided(LinearMap, LinearMap),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub condition: Condition,
    /// 0-based generator indices: `[i]`, or `[i, j]` for `f_j o f_i`.
    pub indices: Vec<usize>,
    pub form: Form,
    /// Absent when the map exists but has no cyclotomic witness within the search space.
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl Finding {
    pub fn target(&self, sys: &PolySystem) -> Option<Poly> {
        match *self.indices.as_slice() {
            [i] if i < sys.len() => Some(sys.generator(i).clone()),
            [i, j] if i < sys.len() && j < sys.len() && i != j => {
                Some(sys.generator(j).compose(sys.generator(i)))
            }
            _ => None,
        }
    }

    fn model(&self, d: usize) -> Poly {
        match self.form {
            Form::Power => Poly::monomial(CycloNum::one(), d),
            Form::Chebyshev(s) => s.apply(&chebyshev(d)),
        }
    }

    /// Expands the witness identity; witness-less findings re-run the detector.
    pub fn verify(&self, sys: &PolySystem, max_conductor: u64) -> bool {
        let Some(t) = self.target(sys) else {
            return false;
        };
        let expected = matches!(
            (self.condition, self.indices.len()),
            (Condition::One, 1) | (Condition::Two, 2)
        );
        if !expected {
            return false;
        }
        let d = t.degree();
        match &self.witness {
            Some(Witness::Conjugacy(l)) => {
                self.condition == Condition::One && l.conjugate(&self.model(d)) == t
            }
            Some(Witness::TwoSided(l1, l2)) => {
                self.condition == Condition::Two
                    && l1.after(&self.model(d).compose(&l2.as_poly())) == t
            }
            None => detect(&t, self.condition, self.form, max_conductor).is_err(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialVerdict {
    Special,
    NonSpecial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialityReport {
    pub verdict: SpecialVerdict,
    pub findings: Vec<Finding>,
}

fn detect(
    t: &Poly,
    cond: Condition,
    form: Form,
    cap: u64,
) -> Result<Option<Witness>, CanonicalError> {
    Ok(match (cond, form) {
        (Condition::One, Form::Power) => is_conjugate_to_power(t, cap)?.map(Witness::Conjugacy),
        (Condition::One, Form::Chebyshev(want)) => is_conjugate_to_cheb(t, cap)?
            .filter(|(_, s)| *s == want)
            .map(|(l, _)| Witness::Conjugacy(l)),
        (Condition::Two, Form::Power) => {
            two_sided_equiv_power(t)?.map(|(a, b)| Witness::TwoSided(a, b))
        }
        (Condition::Two, Form::Chebyshev(_)) => {
            two_sided_equiv_cheb(t, cap)?.map(|(a, b)| Witness::TwoSided(a, b))
        }
    })
}

fn findings_for(t: &Poly, cond: Condition, indices: &[usize], cap: u64) -> Vec<Finding> {
    let mut out = Vec::new();
    let mut push = |form: Form, r: Result<Option<Witness>, CanonicalError>| match r {
        Ok(Some(w)) => out.push(Finding {
            condition: cond,
            indices: indices.to_vec(),
            form,
            witness: Some(w),
            note: None,
        }),
        Ok(None) | Err(CanonicalError::DegreeTooSmall(_)) => {}
        Err(e) => out.push(Finding {
            condition: cond,
            indices: indices.to_vec(),
            form,
            witness: None,
            note: Some(e.to_string()),
        }),
    };
    push(Form::Power, detect(t, cond, Form::Power, cap));
    match cond {
        Condition::One => match is_conjugate_to_cheb(t, cap) {
            Ok(Some((l, s))) => push(Form::Chebyshev(s), Ok(Some(Witness::Conjugacy(l)))),
            Ok(None) => {}
            Err(e) => push(Form::Chebyshev(Sign::Plus), Err(e)),
        },
        Condition::Two => push(
            Form::Chebyshev(Sign::Plus),
            detect(t, cond, Form::Chebyshev(Sign::Plus), cap),
        ),
    }
    out
}

/// Condition one on every generator, condition two on every ordered pair
/// through the composition `f_j o f_i` (apply `f_i` first).
pub fn is_special_set(sys: &PolySystem, max_conductor: u64) -> SpecialityReport {
    let mut findings = Vec::new();
    for (i, f) in sys.generators().iter().enumerate() {
        findings.extend(findings_for(f, Condition::One, &[i], max_conductor));
    }
    let pairs: Vec<(usize, usize)> = (0..sys.len())
        .flat_map(|i| (0..sys.len()).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let per_pair = map_ordered(&pairs, |&(i, j)| {
        let h = sys.generator(j).compose(sys.generator(i));
        findings_for(&h, Condition::Two, &[i, j], max_conductor)
    });
    findings.extend(per_pair.into_iter().flatten());
    let verdict = if findings.is_empty() {
        SpecialVerdict::NonSpecial
    } else {
        SpecialVerdict::Special
    };
    SpecialityReport { verdict, findings }
}
