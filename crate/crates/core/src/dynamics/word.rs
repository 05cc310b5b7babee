use alloc::vec::Vec;
use core::fmt;

/// Generator indices `i_1 ... i_k` (0-based), applied first to last:
/// the word denotes `f_{i_k} o ... o f_{i_1}`. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// From the 1-based indices used in reports and examples.
    pub fn from_one_based(ix: &[usize]) -> Option<Self> {
        ix.iter()
            .map(|&i| i.checked_sub(1))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, o: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    pub fn push(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.push(i);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Self {
        Word(self.0[..len].to_vec())
    }

    /// Every word of length `len` over `s` letters, lexicographic.
    pub fn all_of_length(s: usize, len: usize) -> Vec<Word> {
        let mut out = alloc::vec![Word::empty()];
        for _ in 0..len {
            out = out
                .iter()
                .flat_map(|w| (0..s).map(move |i| w.push(i)))
                .collect();
        }
        out
    }

    /// Words of length `< n`, by length then lexicographic.
    pub fn all_shorter_than(s: usize, n: usize) -> Vec<Word> {
        (0..n).flat_map(|l| Self::all_of_length(s, l)).collect()
    }
}

impl fmt::Display for Word {
    /// `(1,2)` in 1-based indices; `()` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{self}")
    }
}
