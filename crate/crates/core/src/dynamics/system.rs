use alloc::vec::Vec;

use thiserror::Error;

use crate::arith::{lcm_u64, CycloNum};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("a system needs at least one generator")]
    Empty,
    #[error("generator {index} has degree {degree}; degrees must be at least 2")]
    DegreeTooSmall { index: usize, degree: usize },
    #[error("generators {first} and {second} coincide")]
    Duplicate { first: usize, second: usize },
}

/// Generators `f_1, ..., f_s`, each of degree at least 2, pairwise distinct.
/// Indices are 0-based in code and 1-based in every rendered form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    generators: Vec<Poly>,
}

impl PolySystem {
    pub fn new(generators: Vec<Poly>) -> Result<Self, SystemError> {
        if generators.is_empty() {
            return Err(SystemError::Empty);
        }
        for (i, g) in generators.iter().enumerate() {
            if g.is_zero() || g.degree() < 2 {
                return Err(SystemError::DegreeTooSmall {
                    index: i + 1,
                    degree: g.degree(),
                });
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if generators[i] == generators[j] {
                    return Err(SystemError::Duplicate {
                        first: i + 1,
                        second: j + 1,
                    });
                }
            }
        }
        Ok(PolySystem { generators })
    }

    /// Integer coefficient lists, low degree first.
    pub fn from_int_coeffs(gens: &[&[i64]]) -> Result<Self, SystemError> {
        Self::new(gens.iter().map(|c| Poly::from_ints(c)).collect())
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Poly {
        &self.generators[i]
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.generators.iter().map(Poly::degree).collect()
    }

    /// The shared degree, if all generators have the same one.
    pub fn common_degree(&self) -> Option<usize> {
        let d = self.generators[0].degree();
        self.generators.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn is_rational(&self) -> bool {
        self.generators.iter().all(Poly::is_rational)
    }

    /// Conductor of the field generated by all coefficients.
    pub fn conductor(&self) -> u64 {
        self.generators
            .iter()
            .flat_map(|g| g.coeffs().iter())
            .map(CycloNum::conductor)
            .fold(1, lcm_u64)
    }

    /// The same system with generators reordered by `perm` (new position i
    /// holds old generator `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        PolySystem {
            generators: perm.iter().map(|&i| self.generators[i].clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert_eq!(PolySystem::new(Vec::new()), Err(SystemError::Empty));
        assert_eq!(
            PolySystem::from_int_coeffs(&[&[1, 1]]),
            Err(SystemError::DegreeTooSmall {
                index: 1,
                degree: 1
            })
        );
        assert_eq!(
            PolySystem::from_int_coeffs(&[&[0, 0, 1], &[0, 0, 1]]),
            Err(SystemError::Duplicate {
                first: 1,
                second: 2
            })
        );
        let s = PolySystem::from_int_coeffs(&[&[0, 0, 0, 1], &[-1, 0, 0, 1]]).unwrap();
        assert_eq!(s.common_degree(), Some(3));
        assert_eq!(s.conductor(), 1);
    }
}
