//! Finite partial orders and preorders.
//!
//! Orders are stored as dense `n × n` boolean matrices with `leq[a*n + b]`
//! meaning `a ≤ b`.

mod enumerate;
mod homogeneity;
mod iso;
mod regular_open;
mod separative;

pub use enumerate::{posets_up_to_iso, MAX_ENUMERATED_POSET};
pub use homogeneity::{
    is_dense, is_homogeneous, is_quasi_homogeneous, is_weakly_homogeneous,
    QUASI_HOMOGENEITY_LIMIT,
};
pub use iso::{poset_iso, preorder_iso, relation_iso, relation_iso_pinned};
pub use regular_open::{
    check_square_distinct, forcing_equiv_finite, is_homogeneous_ba, regular_open,
    witness_sentence, RegularOpenAlgebra, MAX_RO_ATOMS,
};
pub use separative::{
    is_separative, lemma_3_20_transfer, sep_mod, sep_quotient, TransferOutcome, QuotientPoset,
};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{invalid, Result};

fn check_square(n: usize, leq: &[bool]) -> Result<()> {
    if leq.len() != n * n {
        return invalid(format!("order matrix has {} entries, expected {}", leq.len(), n * n));
    }
    Ok(())
}

fn first_intransitive(n: usize, leq: &[bool]) -> Option<(usize, usize, usize)> {
    for a in 0..n {
        for b in 0..n {
            if !leq[a * n + b] {
                continue;
            }
            for c in 0..n {
                if leq[b * n + c] && !leq[a * n + c] {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// A reflexive, antisymmetric, transitive order on `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinitePoset {
    n: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    pub fn new(n: usize, leq: Vec<bool>) -> Result<Self> {
        check_square(n, &leq)?;
        for a in 0..n {
            if !leq[a * n + a] {
                return invalid(format!("order is not reflexive at {a}"));
            }
            for b in 0..a {
                if leq[a * n + b] && leq[b * n + a] {
                    return invalid(format!("order is not antisymmetric: {a} and {b}"));
                }
            }
        }
        if let Some((a, b, c)) = first_intransitive(n, &leq) {
            return invalid(format!("order is not transitive: {a} ≤ {b} ≤ {c}"));
        }
        Ok(Self { n, leq })
    }

    pub fn from_fn(n: usize, le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let leq = (0..n * n).map(|i| le(i / n, i % n)).collect();
        Self::new(n, leq)
    }

    /// Reflexive-transitive closure of `pairs` (each `(a, b)` meaning `a ≤ b`).
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return invalid(format!("pair ({a}, {b}) out of range for {n} elements"));
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if leq[a * n + k] {
                    for b in 0..n {
                        if leq[k * n + b] {
                            leq[a * n + b] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..a {
                if leq[a * n + b] && leq[b * n + a] {
                    return invalid(format!("relation has a cycle through {b} and {a}"));
                }
            }
        }
        Ok(Self { n, leq })
    }

    pub(crate) fn new_unchecked(n: usize, leq: Vec<bool>) -> Self {
        debug_assert!(Self::new(n, leq.clone()).is_ok());
        Self { n, leq }
    }

    /// `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::new_unchecked(n, (0..n * n).map(|i| i / n <= i % n).collect())
    }

    pub fn antichain(n: usize) -> Self {
        Self::new_unchecked(n, (0..n * n).map(|i| i / n == i % n).collect())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[bool] {
        &self.leq
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    /// `p↓`.
    pub fn down_set(&self, p: usize) -> BitSet {
        (0..self.n).filter(|&r| self.le(r, p)).collect()
    }

    pub fn up_set(&self, p: usize) -> BitSet {
        (0..self.n).filter(|&r| self.le(p, r)).collect()
    }

    /// Some common lower bound exists.
    pub fn compatible(&self, p: usize, q: usize) -> bool {
        (0..self.n).any(|r| self.le(r, p) && self.le(r, q))
    }

    pub fn incompatible(&self, p: usize, q: usize) -> bool {
        !self.compatible(p, q)
    }

    pub fn minimal_elements(&self) -> BitSet {
        (0..self.n)
            .filter(|&p| (0..self.n).all(|r| !self.lt(r, p)))
            .collect()
    }

    pub fn maximal_elements(&self) -> BitSet {
        (0..self.n)
            .filter(|&p| (0..self.n).all(|r| !self.lt(p, r)))
            .collect()
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.n).find(|&p| (0..self.n).all(|r| self.le(r, p)))
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.n).find(|&p| (0..self.n).all(|r| self.le(p, r)))
    }

    /// No minimal element. Never true for a non-empty finite poset.
    pub fn is_atomless(&self) -> bool {
        self.minimal_elements().is_empty()
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) && !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn dual(&self) -> Self {
        let n = self.n;
        Self::new_unchecked(n, (0..n * n).map(|i| self.le(i % n, i / n)).collect())
    }

    /// The induced suborder on `elements`; `labels[new] = old`.
    pub fn restrict(&self, elements: &BitSet) -> (FinitePoset, Vec<usize>) {
        let labels = elements.to_vec();
        let m = labels.len();
        let leq = (0..m * m)
            .map(|i| self.le(labels[i / m], labels[i % m]))
            .collect();
        (Self::new_unchecked(m, leq), labels)
    }

    /// The poset with element `x` renamed to `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n || BitSet::from_iter(perm.iter().copied()) != BitSet::full(self.n) {
            return invalid("relabelling must be a permutation");
        }
        let n = self.n;
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[perm[a] * n + perm[b]] = self.le(a, b);
            }
        }
        Ok(Self::new_unchecked(n, leq))
    }

    pub fn as_preorder(&self) -> FinitePreorder {
        FinitePreorder {
            n: self.n,
            leq: self.leq.clone(),
        }
    }
}

/// A reflexive, transitive relation; antisymmetry is not required.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinitePreorder {
    n: usize,
    leq: Vec<bool>,
}

impl FinitePreorder {
    pub fn new(n: usize, leq: Vec<bool>) -> Result<Self> {
        check_square(n, &leq)?;
        if let Some(a) = (0..n).find(|&a| !leq[a * n + a]) {
            return invalid(format!("preorder is not reflexive at {a}"));
        }
        if let Some((a, b, c)) = first_intransitive(n, &leq) {
            return invalid(format!("preorder is not transitive: {a} ≤ {b} ≤ {c}"));
        }
        Ok(Self { n, leq })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[bool] {
        &self.leq
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    /// Mutual `≤`.
    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.le(a, b) && self.le(b, a)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| !self.equivalent(a, b)))
    }
}

/// Componentwise order on the Cartesian product; tuples are numbered
/// lexicographically with the first factor most significant.
pub fn product(posets: &[FinitePoset]) -> Result<FinitePoset> {
    if posets.is_empty() {
        return invalid("product of an empty list of posets");
    }
    let size = posets
        .iter()
        .try_fold(1usize, |acc, p| acc.checked_mul(p.size()))
        .filter(|&s| s <= 4096)
        .ok_or_else(|| crate::Error::UnsupportedSize {
            what: "product size".into(),
            actual: posets.iter().map(|p| p.size()).product(),
            limit: 4096,
        })?;
    let coords = |mut idx: usize| -> Vec<usize> {
        let mut c = vec![0; posets.len()];
        for (slot, p) in c.iter_mut().zip(posets).rev() {
            *slot = idx % p.size();
            idx /= p.size();
        }
        c
    };
    let all: Vec<Vec<usize>> = (0..size).map(coords).collect();
    let leq = (0..size * size)
        .map(|i| {
            let (a, b) = (&all[i / size], &all[i % size]);
            posets
                .iter()
                .enumerate()
                .all(|(k, p)| p.le(a[k], b[k]))
        })
        .collect();
    Ok(FinitePoset::new_unchecked(size, leq))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(FinitePoset::new(2, vec![true, true, true, true]).is_err());
        assert!(FinitePoset::new(2, vec![false, false, false, true]).is_err());
        assert!(FinitePoset::new(3, vec![true; 4]).is_err());
        assert!(FinitePoset::from_pairs(2, &[(0, 1), (1, 0)]).is_err());
        assert!(FinitePoset::from_pairs(2, &[(0, 2)]).is_err());
        let p = FinitePoset::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p, FinitePoset::chain(3));
    }

    #[test]
    fn covers_and_extremes() {
        let v = FinitePoset::from_pairs(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(v.covers(), vec![(0, 2), (1, 2)]);
        assert_eq!(v.minimal_elements().to_vec(), vec![0, 1]);
        assert_eq!(v.greatest(), Some(2));
        assert_eq!(v.least(), None);
        assert!(v.incompatible(0, 1));
        assert!(v.compatible(0, 2));
        assert!(!v.is_atomless());
        assert_eq!(FinitePoset::chain(3).covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn product_examples() {
        let c2 = FinitePoset::chain(2);
        assert_eq!(product(std::slice::from_ref(&c2)).unwrap(), c2);
        let d = product(&[c2.clone(), c2.clone()]).unwrap();
        assert_eq!(d.size(), 4);
        assert_eq!(d.covers().len(), 4);
        assert_eq!(d.least(), Some(0));
        assert_eq!(d.greatest(), Some(3));
        assert!(product(&[]).is_err());
    }

    #[test]
    fn restrict_and_relabel() {
        let c3 = FinitePoset::chain(3);
        let (sub, labels) = c3.restrict(&[0, 2].into_iter().collect());
        assert_eq!(sub, FinitePoset::chain(2));
        assert_eq!(labels, vec![0, 2]);
        let r = c3.relabel(&[2, 1, 0]).unwrap();
        assert_eq!(r, c3.dual());
        assert!(c3.relabel(&[0, 0, 1]).is_err());
    }

    #[test]
    fn preorder_validation() {
        assert!(FinitePreorder::new(2, vec![true, true, true, true]).is_ok());
        assert!(FinitePreorder::new(2, vec![true, true, false, false]).is_err());
        let p = FinitePreorder::new(2, vec![true; 4]).unwrap();
        assert!(!p.is_antisymmetric());
        assert!(p.equivalent(0, 1));
    }
}
