//! A small growable bitset used for element sets of structures and posets.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A set of non-negative integers stored as packed 64-bit words.
///
/// Trailing zero words are always trimmed so that derived equality,
/// ordering and hashing agree with set semantics.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::new();
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn singleton(x: usize) -> Self {
        let mut s = Self::new();
        s.insert(x);
        s
    }

    pub fn insert(&mut self, x: usize) {
        let w = x / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (x % 64);
    }

    pub fn remove(&mut self, x: usize) {
        let w = x / 64;
        if w < self.words.len() {
            self.words[w] &= !(1 << (x % 64));
            self.trim();
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.words
            .get(x / 64)
            .is_some_and(|w| w & (1 << (x % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| {
                self.words.get(i).copied().unwrap_or(0) | other.words.get(i).copied().unwrap_or(0)
            })
            .collect();
        BitSet { words }
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut s = BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        };
        s.trim();
        s
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        let mut s = BitSet {
            words: self
                .words
                .iter()
                .enumerate()
                .map(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0))
                .collect(),
        };
        s.trim();
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for BitSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = BitSet::new();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_trim() {
        let mut s = BitSet::new();
        s.insert(70);
        s.insert(3);
        assert_eq!(s.to_vec(), vec![3, 70]);
        s.remove(70);
        assert_eq!(s, BitSet::singleton(3));
        assert!(s.is_subset(&BitSet::full(4)));
        assert!(!BitSet::full(4).is_subset(&s));
    }

    #[test]
    fn set_algebra() {
        let a: BitSet = [1, 2, 3].into_iter().collect();
        let b: BitSet = [3, 4].into_iter().collect();
        assert_eq!(a.union(&b).to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![3]);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 2]);
        assert!(a.intersects(&b));
        assert!(a.difference(&b).intersection(&b).is_empty());
    }
}
