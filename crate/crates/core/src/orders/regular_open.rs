//! Regular-open algebras of finite posets.
//!
//! The topology on a poset is the one whose open sets are the down-sets;
//! `cl(A) = {p : ∃a∈A, a ≤ p}` and `int(B) = {p : p↓ ⊆ B}`. The algebra of
//! a poset is the set of fixed points of `int∘cl` on its separative
//! quotient.

use std::collections::BTreeMap;

use super::{poset_iso, product, sep_quotient, FinitePoset};
use crate::bitset::BitSet;
use crate::error::{invalid, violated, Error, Result};

/// Most atoms (minimal elements of the separative quotient) accepted.
pub const MAX_RO_ATOMS: usize = 16;

pub fn closure(order: &FinitePoset, set: &BitSet) -> BitSet {
    (0..order.size())
        .filter(|&p| set.iter().any(|a| order.le(a, p)))
        .collect()
}

pub fn interior(order: &FinitePoset, set: &BitSet) -> BitSet {
    (0..order.size())
        .filter(|&p| order.down_set(p).is_subset(set))
        .collect()
}

pub fn regularize(order: &FinitePoset, set: &BitSet) -> BitSet {
    interior(order, &closure(order, set))
}

/// The finite Boolean algebra of regular-open down-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularOpenAlgebra {
    order: FinitePoset,
    carrier: Vec<BitSet>,
    index: BTreeMap<BitSet, usize>,
}

/// Regular-open algebra of the separative quotient of `p`.
pub fn regular_open(p: &FinitePoset) -> Result<RegularOpenAlgebra> {
    RegularOpenAlgebra::of_separative(sep_quotient(p).order)
}

impl RegularOpenAlgebra {
    /// The algebra of `order` itself, without passing to the quotient.
    pub fn of_separative(order: FinitePoset) -> Result<Self> {
        let minimal = order.minimal_elements().to_vec();
        if minimal.len() > MAX_RO_ATOMS {
            return Err(Error::UnsupportedSize {
                what: "atoms of the regular-open algebra".into(),
                actual: minimal.len(),
                limit: MAX_RO_ATOMS,
            });
        }
        // every regular open set is determined by the minimal elements it contains
        let mut carrier: Vec<BitSet> = (0u32..1 << minimal.len())
            .map(|mask| {
                let seed: BitSet = minimal
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &m)| m)
                    .collect();
                regularize(&order, &seed)
            })
            .collect();
        carrier.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        carrier.dedup();
        if carrier.len() != 1 << minimal.len() {
            return violated("distinct sets of minimal elements gave equal regular open sets");
        }
        let index = carrier.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(Self {
            order,
            carrier,
            index,
        })
    }

    /// The separative order the algebra is built on.
    pub fn base(&self) -> &FinitePoset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn elements(&self) -> &[BitSet] {
        &self.carrier
    }

    pub fn element(&self, i: usize) -> &BitSet {
        &self.carrier[i]
    }

    pub fn index_of(&self, set: &BitSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.carrier.len() - 1
    }

    fn lookup(&self, set: BitSet) -> usize {
        *self
            .index
            .get(&set)
            .expect("regular open algebra is closed under its operations")
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.lookup(self.carrier[a].intersection(&self.carrier[b]))
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lookup(regularize(&self.order, &self.carrier[a].union(&self.carrier[b])))
    }

    pub fn complement(&self, a: usize) -> usize {
        let top = BitSet::full(self.order.size());
        self.lookup(regularize(&self.order, &top.difference(&self.carrier[a])))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.carrier[a].is_subset(&self.carrier[b])
    }

    pub fn atoms(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&a| (1..self.len()).all(|b| b == a || !self.leq(b, a)))
            .collect()
    }

    pub fn atom_count(&self) -> usize {
        self.len().trailing_zeros() as usize
    }

    /// The algebra as a poset under inclusion.
    pub fn as_poset(&self) -> FinitePoset {
        let n = self.len();
        FinitePoset::new_unchecked(n, (0..n * n).map(|i| self.leq(i / n, i % n)).collect())
    }

    /// `B⁺`, the non-zero elements; element `i` of the result is `i + 1` here.
    pub fn plus_poset(&self) -> FinitePoset {
        let keep: BitSet = (1..self.len()).collect();
        self.as_poset().restrict(&keep).0
    }

    /// The relative algebra `b↓` as a poset.
    pub fn relative(&self, b: usize) -> FinitePoset {
        let keep: BitSet = (0..self.len()).filter(|&a| self.leq(a, b)).collect();
        self.as_poset().restrict(&keep).0
    }
}

/// `B ≅ b↓` for every non-zero `b`.
pub fn is_homogeneous_ba(b: &RegularOpenAlgebra) -> bool {
    let whole = b.as_poset();
    (1..b.len()).all(|x| {
        // sizes differ unless x is the top; skip building b↓ in that case
        let below = (0..b.len()).filter(|&a| b.leq(a, x)).count();
        below == b.len() && poset_iso(&whole, &b.relative(x)).is_some()
    })
}

/// Evaluates `∀x≠1 ∃!y (x ⊥ y ∧ x ∨ y = 1)` on a poset with a top element.
///
/// `x ⊥ y` means no common lower bound; `x ∨ y = 1` means the top is the
/// only common upper bound.
pub fn witness_sentence(p: &FinitePoset) -> Option<bool> {
    let top = p.greatest()?;
    let n = p.size();
    let joins_to_top = |x: usize, y: usize| {
        (0..n).all(|z| !(p.le(x, z) && p.le(y, z)) || z == top)
    };
    Some((0..n).filter(|&x| x != top).all(|x| {
        (0..n)
            .filter(|&y| p.incompatible(x, y) && joins_to_top(x, y))
            .count()
            == 1
    }))
}

/// Confirms `B⁺ ≇ B⁺ × B⁺` through the witness sentence and a direct
/// isomorphism search. Requires `|B| > 2`.
pub fn check_square_distinct(b: &RegularOpenAlgebra) -> Result<bool> {
    if b.len() <= 2 {
        return invalid(format!("algebra has {} elements; more than 2 required", b.len()));
    }
    let plus = b.plus_poset();
    let square = product(&[plus.clone(), plus.clone()])?;
    let on_plus = witness_sentence(&plus).expect("B⁺ has a top");
    let on_square = witness_sentence(&square).expect("B⁺ × B⁺ has a top");
    if !on_plus || on_square {
        return violated(format!(
            "witness sentence gave {on_plus} on B⁺ and {on_square} on its square"
        ));
    }
    Ok(poset_iso(&plus, &square).is_none())
}

/// Finite stand-in for forcing equivalence: isomorphic regular-open
/// algebras, i.e. equally many atoms.
pub fn forcing_equiv_finite(p: &FinitePoset, q: &FinitePoset) -> Result<bool> {
    Ok(regular_open(p)?.atom_count() == regular_open(q)?.atom_count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean(k: usize) -> RegularOpenAlgebra {
        regular_open(&FinitePoset::antichain(k)).unwrap()
    }

    #[test]
    fn small_algebras() {
        let one = regular_open(&FinitePoset::chain(1)).unwrap();
        assert_eq!(one.len(), 2);
        let b = boolean(3);
        assert_eq!(b.len(), 8);
        let atoms: Vec<_> = b.atoms().iter().map(|&a| b.element(a).to_vec()).collect();
        assert_eq!(atoms, vec![vec![0], vec![1], vec![2]]);
        let v = FinitePoset::from_pairs(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(regular_open(&v).unwrap().len(), 4);
    }

    #[test]
    fn boolean_operations() {
        let b = boolean(3);
        for x in 0..b.len() {
            let c = b.complement(x);
            assert_eq!(b.meet(x, c), b.zero());
            assert_eq!(b.join(x, c), b.one());
            assert_eq!(b.complement(c), x);
            for y in 0..b.len() {
                assert_eq!(b.leq(x, y), b.meet(x, y) == x);
                assert_eq!(b.leq(x, y), b.join(x, y) == y);
            }
        }
    }

    #[test]
    fn vee_top_is_regular() {
        let v = FinitePoset::from_pairs(3, &[(0, 2), (1, 2)]).unwrap();
        let b = regular_open(&v).unwrap();
        assert_eq!(b.element(b.one()).to_vec(), vec![0, 1, 2]);
        // {a} regularizes to itself, {a, b} to the whole poset
        assert_eq!(regularize(&v, &BitSet::singleton(0)).to_vec(), vec![0]);
        assert_eq!(regularize(&v, &[0, 1].into_iter().collect()).len(), 3);
    }

    #[test]
    fn homogeneity_of_algebras() {
        assert!(is_homogeneous_ba(&boolean(1)));
        assert!(!is_homogeneous_ba(&boolean(2)));
    }

    #[test]
    fn squares_are_distinct() {
        assert!(check_square_distinct(&boolean(2)).unwrap());
        assert!(check_square_distinct(&boolean(3)).unwrap());
        assert!(check_square_distinct(&boolean(1)).is_err());
    }

    #[test]
    fn forcing_equivalence_examples() {
        let c2 = FinitePoset::chain(2);
        assert!(forcing_equiv_finite(&c2, &c2).unwrap());
        assert!(forcing_equiv_finite(&c2, &FinitePoset::chain(1)).unwrap());
        assert!(!forcing_equiv_finite(&FinitePoset::antichain(2), &FinitePoset::antichain(3)).unwrap());
    }

    #[test]
    fn atom_cap_is_enforced() {
        let big = FinitePoset::antichain(MAX_RO_ATOMS + 1);
        assert!(matches!(regular_open(&big), Err(Error::UnsupportedSize { .. })));
    }
}
