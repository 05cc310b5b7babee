//! Exact re-checking of report certificates.

use cyclodyn_core::arith::{house_leq, Ternary};
use cyclodyn_core::bounds::LoxtonCertificate;
use cyclodyn_core::dynamics::{compose_word, evaluate_word, CollisionCertificate, PolySystem};
use num_bigint::BigInt;

use crate::dto::{self, Certificate};
use crate::error::ConfigError;

fn sys_at(s: &[Vec<String>]) -> Result<PolySystem, ConfigError> {
    dto::system_from_strings(s, "certificate.system")
}

/// `Ok(false)` means the certificate parsed but its identity fails.
pub fn check(c: &Certificate) -> Result<bool, ConfigError> {
    match c {
        Certificate::Collision {
            system,
            alpha,
            collision,
            witness_value,
        } => {
            let sys = sys_at(system)?;
            let cert = CollisionCertificate {
                collision: collision.to_core(sys.len())?,
                witness_value: dto::parse_elem_at(witness_value, "certificate.witness_value")?,
            };
            Ok(cert.verify(&sys, &dto::parse_elem_at(alpha, "certificate.alpha")?))
        }
        Certificate::Speciality {
            system,
            max_conductor,
            finding,
        } => {
            let sys = sys_at(system)?;
            Ok(finding.to_core()?.verify(&sys, *max_conductor))
        }
        Certificate::Loxton {
            target,
            order_bound,
            exponents,
            coefficients,
        } => {
            let coefficients = coefficients
                .iter()
                .map(|s| {
                    s.parse::<BigInt>()
                        .map_err(|_| ConfigError::new("certificate.coefficients", "not an integer"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if coefficients.len() != exponents.len() {
                return Ok(false);
            }
            let cert = LoxtonCertificate {
                target: dto::parse_elem_at(target, "certificate.target")?,
                order_bound: *order_bound,
                exponents: exponents.clone(),
                coefficients,
            };
            Ok(cert.verify())
        }
        Certificate::SigmaCombination {
            system,
            word,
            combination,
            defining_poly,
        } => {
            let sys = sys_at(system)?;
            let top = dto::word_from(word, sys.len(), "certificate.word")?;
            let mut p = compose_word(&sys, &top);
            for (j, (w, c)) in combination.iter().enumerate() {
                let w = dto::word_from(w, sys.len(), &format!("certificate.combination[{j}]"))?;
                if w.len() >= top.len() {
                    return Ok(false);
                }
                let c = dto::parse_elem_at(c, &format!("certificate.combination[{j}]"))?;
                p = p.sub(&compose_word(&sys, &w).scale(&c));
            }
            Ok(p == dto::poly_from_strings(defining_poly, "certificate.defining_poly")?)
        }
        Certificate::OrbitValue {
            system,
            alpha,
            word,
            value,
            bound,
        } => {
            let sys = sys_at(system)?;
            let w = dto::word_from(word, sys.len(), "certificate.word")?;
            let alpha = dto::parse_elem_at(alpha, "certificate.alpha")?;
            let value = dto::parse_elem_at(value, "certificate.value")?;
            let bound = dto::parse_rat_at(bound, "certificate.bound")?;
            Ok(evaluate_word(&sys, &w, &alpha) == value
                && value.is_algebraic_integer()
                && house_leq(&value, &bound) == Ternary::Yes)
        }
    }
}
