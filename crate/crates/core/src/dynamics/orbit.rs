use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{DynamicsError, PolySystem, Word};
use crate::arith::{CycloNum, ValueKey};
use crate::par::map_ordered;
use crate::poly::Poly;

/// `f_w = f_{i_k} o ... o f_{i_1}`, expanded; `X` for the empty word.
pub fn compose_word(sys: &PolySystem, w: &Word) -> Poly {
    w.indices()
        .iter()
        .fold(Poly::x(), |acc, &i| sys.generator(i).compose(&acc))
}

/// `f_w(a)` by successive evaluation.
pub fn evaluate_word(sys: &PolySystem, w: &Word, a: &CycloNum) -> CycloNum {
    w.indices()
        .iter()
        .fold(a.clone(), |x, &i| sys.generator(i).eval(&x))
}

/// Caps on tree size: distinct values stored and words recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeBudget {
    pub max_nodes: usize,
    pub max_words: usize,
}

impl Default for TreeBudget {
    fn default() -> Self {
        TreeBudget {
            max_nodes: 200_000,
            max_words: 1_000_000,
        }
    }
}

/// One distinct value of a level with every word producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitNode {
    pub value: CycloNum,
    pub key: ValueKey,
    /// The first entry is the lexicographically least word.
    pub words: Vec<Word>,
}

/// Levels `F_0(a) = {a}, F_1(a), ..., F_depth(a)`, each deduplicated by
/// canonical value, nodes in order of their least word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTree {
    pub root: CycloNum,
    pub levels: Vec<Vec<OrbitNode>>,
}

impl OrbitTree {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &[OrbitNode] {
        &self.levels[k]
    }

    pub fn find(&self, k: usize, key: &ValueKey) -> Option<&OrbitNode> {
        self.levels[k].iter().find(|n| &n.key == key)
    }
}

fn node(value: CycloNum, words: Vec<Word>) -> OrbitNode {
    let value = value.canonicalize();
    let key = value.key();
    OrbitNode { value, key, words }
}

pub fn build_tree(
    sys: &PolySystem,
    a: &CycloNum,
    depth: usize,
    budget: TreeBudget,
) -> Result<OrbitTree, DynamicsError> {
    build_tree_pruned(sys, a, depth, budget, |_| false)
}

/// As [`build_tree`], but nodes for which `prune` holds get no children.
pub(crate) fn build_tree_pruned<P>(
    sys: &PolySystem,
    a: &CycloNum,
    depth: usize,
    budget: TreeBudget,
    prune: P,
) -> Result<OrbitTree, DynamicsError>
where
    P: Fn(&CycloNum) -> bool + Sync + Send,
{
    let mut levels = vec![vec![node(a.clone(), vec![Word::empty()])]];
    let (mut nodes, mut words) = (1usize, 1usize);
    for _ in 0..depth {
        let prev = levels.last().expect("level 0 exists");
        let children = map_ordered(prev, |n| {
            if prune(&n.value) {
                return Vec::new();
            }
            (0..sys.len())
                .map(|i| {
                    let v = sys.generator(i).eval(&n.value).canonicalize();
                    let k = v.key();
                    (i, v, k)
                })
                .collect::<Vec<_>>()
        });
        let mut next: Vec<OrbitNode> = Vec::new();
        let mut index: BTreeMap<ValueKey, usize> = BTreeMap::new();
        for (parent, kids) in prev.iter().zip(children) {
            for (i, value, key) in kids {
                let slot = match index.get(&key) {
                    Some(&s) => s,
                    None => {
                        nodes += 1;
                        if nodes > budget.max_nodes {
                            return Err(DynamicsError::TreeBudgetExceeded { nodes, words });
                        }
                        index.insert(key.clone(), next.len());
                        next.push(OrbitNode {
                            value,
                            key,
                            words: Vec::new(),
                        });
                        next.len() - 1
                    }
                };
                words += parent.words.len();
                if words > budget.max_words {
                    return Err(DynamicsError::TreeBudgetExceeded { nodes, words });
                }
                next[slot]
                    .words
                    .extend(parent.words.iter().map(|w| w.push(i)));
            }
        }
        for n in &mut next {
            n.words.sort();
        }
        levels.push(next);
    }
    Ok(OrbitTree {
        root: levels[0][0].value.clone(),
        levels,
    })
}
