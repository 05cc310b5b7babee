use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::orbit::{build_tree, evaluate_word, TreeBudget};
use super::{DynamicsError, PolySystem, Word};
use crate::arith::{CycloNum, ValueKey};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Collision {
    /// `f_{base . cycle}(a) = f_base(a)` with `cycle` nonempty.
    Pi { base: Word, cycle: Word },
    /// `f_{word_k}(a) = f_{word_n}(a)` with `1 <= k < n`, `|word_k| = k`, `|word_n| = n`.
    PiBar {
        k: usize,
        n: usize,
        word_k: Word,
        word_n: Word,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollisionCertificate {
    pub collision: Collision,
    pub witness_value: CycloNum,
}

impl CollisionCertificate {
    /// Re-evaluates the recorded identity exactly.
    pub fn verify(&self, sys: &PolySystem, a: &CycloNum) -> bool {
        let in_range = |w: &Word| w.indices().iter().all(|&i| i < sys.len());
        match &self.collision {
            Collision::Pi { base, cycle } => {
                if cycle.is_empty() || !in_range(base) || !in_range(cycle) {
                    return false;
                }
                let b = evaluate_word(sys, base, a);
                b == self.witness_value && evaluate_word(sys, cycle, &b) == b
            }
            Collision::PiBar {
                k,
                n,
                word_k,
                word_n,
            } => {
                if !(1 <= *k && k < n && word_k.len() == *k && word_n.len() == *n) {
                    return false;
                }
                if !in_range(word_k) || !in_range(word_n) {
                    return false;
                }
                evaluate_word(sys, word_k, a) == self.witness_value
                    && evaluate_word(sys, word_n, a) == self.witness_value
            }
        }
    }
}

/// Lexicographically least `v` of length `len` with `f_v(b) = b`.
struct LoopSearch<'a> {
    sys: &'a PolySystem,
    target: CycloNum,
    dead: BTreeSet<(ValueKey, usize)>,
}

impl LoopSearch<'_> {
    fn find(&mut self, x: &CycloNum, left: usize, path: &mut Vec<usize>) -> bool {
        if left == 0 {
            return *x == self.target;
        }
        let key = (x.key(), left);
        if self.dead.contains(&key) {
            return false;
        }
        for i in 0..self.sys.len() {
            let y = self.sys.generator(i).eval(x).canonicalize();
            path.push(i);
            if self.find(&y, left - 1, path) {
                return true;
            }
            path.pop();
        }
        self.dead.insert(key);
        false
    }
}

/// Least certificate of `f_{u.v}(a) = f_u(a)` with `|u| <= base_depth`,
/// `1 <= |v| <= loop_depth`, ordered by `|u|`, then `|v|`, then `u`, then `v`.
pub fn detect_pi(
    sys: &PolySystem,
    a: &CycloNum,
    base_depth: usize,
    loop_depth: usize,
) -> Option<CollisionCertificate> {
    // values f_u(a) for all u of one length, in lexicographic order of u
    let mut bases: Vec<(Word, CycloNum)> = alloc::vec![(Word::empty(), a.canonicalize())];
    for lu in 0..=base_depth {
        if lu > 0 {
            bases = bases
                .iter()
                .flat_map(|(u, x)| {
                    (0..sys.len())
                        .map(move |i| (u.push(i), sys.generator(i).eval(x).canonicalize()))
                })
                .collect();
        }
        let mut searches: BTreeMap<ValueKey, LoopSearch> = BTreeMap::new();
        for lv in 1..=loop_depth {
            for (u, b) in &bases {
                let s = searches.entry(b.key()).or_insert_with(|| LoopSearch {
                    sys,
                    target: b.clone(),
                    dead: BTreeSet::new(),
                });
                let mut path = Vec::new();
                if s.find(b, lv, &mut path) {
                    return Some(CollisionCertificate {
                        collision: Collision::Pi {
                            base: u.clone(),
                            cycle: Word(path),
                        },
                        witness_value: b.clone(),
                    });
                }
            }
        }
    }
    None
}

/// Levels `1 <= k < n <= depth` sharing a value, minimizing `n` then `k`.
pub fn detect_pibar(
    sys: &PolySystem,
    a: &CycloNum,
    depth: usize,
    budget: TreeBudget,
) -> Result<Option<CollisionCertificate>, DynamicsError> {
    let tree = build_tree(sys, a, depth, budget)?;
    for n in 2..=depth {
        for k in 1..n {
            for node in tree.level(n) {
                if let Some(other) = tree.find(k, &node.key) {
                    return Ok(Some(CollisionCertificate {
                        collision: Collision::PiBar {
                            k,
                            n,
                            word_k: other.words[0].clone(),
                            word_n: node.words[0].clone(),
                        },
                        witness_value: node.value.clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_element;
    use alloc::vec;

    fn sys(gens: &[&[i64]]) -> PolySystem {
        PolySystem::from_int_coeffs(gens).unwrap()
    }

    #[test]
    fn pi_examples() {
        let s = sys(&[&[-1, 0, 1]]);
        let c = detect_pi(&s, &CycloNum::zero(), 3, 3).unwrap();
        assert_eq!(
            c.collision,
            Collision::Pi {
                base: Word::empty(),
                cycle: Word(vec![0, 0])
            }
        );
        assert!(c.verify(&s, &CycloNum::zero()));

        let s = sys(&[&[0, 0, 1]]);
        let z5 = parse_element("z(5)").unwrap();
        let c = detect_pi(&s, &z5, 2, 6).unwrap();
        assert_eq!(
            c.collision,
            Collision::Pi {
                base: Word::empty(),
                cycle: Word(vec![0; 4])
            }
        );

        let s = sys(&[&[1, 0, 1]]);
        assert_eq!(detect_pi(&s, &CycloNum::zero(), 4, 4), None);
    }

    #[test]
    fn pibar_examples() {
        let s = sys(&[&[0, 0, 1], &[-1, 0, 2]]);
        let c = detect_pibar(&s, &CycloNum::one(), 3, TreeBudget::default())
            .unwrap()
            .unwrap();
        assert_eq!(
            c.collision,
            Collision::PiBar {
                k: 1,
                n: 2,
                word_k: Word(vec![0]),
                word_n: Word(vec![0, 0])
            }
        );
        assert!(c.verify(&s, &CycloNum::one()));

        let s = sys(&[&[1, 0, 1]]);
        let i = parse_element("z(4)").unwrap();
        assert_eq!(
            detect_pibar(&s, &i, 3, TreeBudget::default()).unwrap(),
            None
        );
    }

    #[test]
    fn tampered_certificates_fail() {
        let s = sys(&[&[-1, 0, 1]]);
        let mut c = detect_pi(&s, &CycloNum::zero(), 1, 2).unwrap();
        c.witness_value = CycloNum::one();
        assert!(!c.verify(&s, &CycloNum::zero()));
        let c = CollisionCertificate {
            collision: Collision::Pi {
                base: Word::empty(),
                cycle: Word::empty(),
            },
            witness_value: CycloNum::zero(),
        };
        assert!(!c.verify(&s, &CycloNum::zero()));
    }
}
