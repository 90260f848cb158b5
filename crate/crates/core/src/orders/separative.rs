use serde::{Deserialize, Serialize};

use super::{FinitePoset, FinitePreorder};
use crate::bitset::BitSet;
use crate::error::{invalid, violated, Result};

/// `p ≤* q` iff every `r ≤ p` has some `s ≤ r` with `s ≤ q`.
pub fn sep_mod(p: &FinitePoset) -> FinitePreorder {
    let n = p.size();
    let mut compat = vec![false; n * n];
    for r in 0..n {
        for q in 0..n {
            compat[r * n + q] = p.compatible(r, q);
        }
    }
    let leq = (0..n * n)
        .map(|i| {
            let (a, b) = (i / n, i % n);
            (0..n).filter(|&r| p.le(r, a)).all(|r| compat[r * n + b])
        })
        .collect();
    FinitePreorder::new(n, leq).expect("the separative modification is a preorder")
}

/// The antisymmetric quotient of a preorder, with its projection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientPoset {
    /// The preorder that was quotiented.
    pub base: FinitePreorder,
    /// Equivalence classes, ordered by least element.
    pub classes: Vec<BitSet>,
    pub order: FinitePoset,
    /// Class index of each base element.
    pub projection: Vec<usize>,
}

impl QuotientPoset {
    pub fn of_preorder(base: FinitePreorder) -> Self {
        let n = base.size();
        let mut projection = vec![usize::MAX; n];
        let mut classes: Vec<BitSet> = Vec::new();
        for a in 0..n {
            if projection[a] != usize::MAX {
                continue;
            }
            let class: BitSet = (a..n).filter(|&b| base.equivalent(a, b)).collect();
            for b in class.iter() {
                projection[b] = classes.len();
            }
            classes.push(class);
        }
        let reps: Vec<usize> = classes.iter().map(|c| c.iter().next().unwrap()).collect();
        let k = reps.len();
        let leq = (0..k * k).map(|i| base.le(reps[i / k], reps[i % k])).collect();
        let order = FinitePoset::new(k, leq).expect("quotient by mutual ≤ is antisymmetric");
        Self {
            base,
            classes,
            order,
            projection,
        }
    }
}

/// Quotient of the separative modification by `=*`.
pub fn sep_quotient(p: &FinitePoset) -> QuotientPoset {
    QuotientPoset::of_preorder(sep_mod(p))
}

/// Whenever `p ≰ q`, some `r ≤ p` is incompatible with `q`.
pub fn is_separative(p: &FinitePoset) -> bool {
    let n = p.size();
    (0..n).all(|a| {
        (0..n).all(|b| p.le(a, b) || (0..n).any(|r| p.le(r, a) && p.incompatible(r, b)))
    })
}

/// Outcome of checking the hypotheses of the surjection transfer criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransferOutcome {
    /// Both hypotheses hold; `class_map[i]` is the image of the i-th
    /// class of `sq P` among the classes of `sq Q`.
    Isomorphism { class_map: Vec<usize> },
    /// Hypothesis (i) `p1 ≤ p2 ⇒ f(p1) ≤* f(p2)` or (ii)
    /// `p1 ⊥ p2 ⇒ f(p1) ⊥ f(p2)` fails at the given pair.
    HypothesisFails { hypothesis: u8, p1: usize, p2: usize },
}

/// For a surjection `f: P → Q` that is monotone into `≤*_Q` and preserves
/// incompatibility, builds `[p] ↦ [f(p)]` and checks it is an isomorphism
/// `sq P ≅ sq Q`.
pub fn lemma_3_20_transfer(
    p: &FinitePoset,
    q: &FinitePoset,
    f: &[usize],
) -> Result<TransferOutcome> {
    if f.len() != p.size() {
        return invalid(format!("map has {} entries for {} elements", f.len(), p.size()));
    }
    if let Some(&y) = f.iter().find(|&&y| y >= q.size()) {
        return invalid(format!("image {y} out of range"));
    }
    if f.iter().copied().collect::<BitSet>() != BitSet::full(q.size()) {
        return invalid("map is not surjective");
    }
    let sm_q = sep_mod(q);
    let n = p.size();
    for p1 in 0..n {
        for p2 in 0..n {
            if p.le(p1, p2) && !sm_q.le(f[p1], f[p2]) {
                return Ok(TransferOutcome::HypothesisFails { hypothesis: 1, p1, p2 });
            }
        }
    }
    for p1 in 0..n {
        for p2 in 0..n {
            if p.incompatible(p1, p2) && q.compatible(f[p1], f[p2]) {
                return Ok(TransferOutcome::HypothesisFails { hypothesis: 2, p1, p2 });
            }
        }
    }
    let sq_p = sep_quotient(p);
    let sq_q = sep_quotient(q);
    let k = sq_p.classes.len();
    let mut class_map = vec![usize::MAX; k];
    for x in 0..n {
        let (from, to) = (sq_p.projection[x], sq_q.projection[f[x]]);
        if class_map[from] == usize::MAX {
            class_map[from] = to;
        } else if class_map[from] != to {
            return violated(format!("[p] ↦ [f(p)] is not well defined at {x}"));
        }
    }
    if class_map.iter().copied().collect::<BitSet>() != BitSet::full(sq_q.classes.len())
        || k != sq_q.classes.len()
    {
        return violated("[p] ↦ [f(p)] is not a bijection of separative quotients");
    }
    for a in 0..k {
        for b in 0..k {
            if sq_p.order.le(a, b) != sq_q.order.le(class_map[a], class_map[b]) {
                return violated(format!("[p] ↦ [f(p)] breaks the order at classes {a}, {b}"));
            }
        }
    }
    Ok(TransferOutcome::Isomorphism { class_map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::poset_iso;

    fn vee() -> FinitePoset {
        // a=0, b=1 below c=2
        FinitePoset::from_pairs(3, &[(0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn two_chain_collapses() {
        let sm = sep_mod(&FinitePoset::chain(2));
        assert!(sm.le(1, 0));
        assert!(sm.le(0, 1));
        let sq = sep_quotient(&FinitePoset::chain(4));
        assert_eq!(sq.order.size(), 1);
    }

    #[test]
    fn antichain_and_vee_are_separative() {
        let a = FinitePoset::antichain(3);
        assert_eq!(sep_mod(&a).matrix(), a.matrix());
        assert!(is_separative(&a));
        assert_eq!(sep_quotient(&a).order, a);
        let v = vee();
        let sm = sep_mod(&v);
        assert_eq!(sm.matrix(), v.matrix());
        assert!(!sm.le(2, 0));
        assert_eq!(sep_quotient(&v).order, v);
    }

    #[test]
    fn two_chain_is_not_separative() {
        assert!(!is_separative(&FinitePoset::chain(2)));
    }

    #[test]
    fn quotient_classes_and_projection() {
        // 0 < 1, 2 < 1 plus 3 above 1: minimal 0 and 2 stay apart, 1 ~ 3
        let p = FinitePoset::from_pairs(4, &[(0, 1), (2, 1), (1, 3)]).unwrap();
        let sq = sep_quotient(&p);
        assert_eq!(sq.classes.len(), 3);
        assert_eq!(sq.projection[1], sq.projection[3]);
        assert!(is_separative(&sq.order));
    }

    #[test]
    fn transfer_identity_and_projection() {
        let v = vee();
        match lemma_3_20_transfer(&v, &v, &[0, 1, 2]).unwrap() {
            TransferOutcome::Isomorphism { class_map } => assert_eq!(class_map, vec![0, 1, 2]),
            other => panic!("unexpected {other:?}"),
        }
        let p = FinitePoset::from_pairs(4, &[(0, 1), (2, 1), (1, 3)]).unwrap();
        let sq = sep_quotient(&p);
        let out = lemma_3_20_transfer(&p, &sq.order, &sq.projection).unwrap();
        assert!(matches!(out, TransferOutcome::Isomorphism { .. }));
        let sqsq = sep_quotient(&sq.order);
        assert!(poset_iso(&sq.order, &sqsq.order).is_some());
    }

    #[test]
    fn transfer_rejects_non_surjective() {
        let c = FinitePoset::chain(3);
        assert!(lemma_3_20_transfer(&c, &c, &[0, 0, 1]).is_err());
        assert!(lemma_3_20_transfer(&c, &c, &[0, 1]).is_err());
    }

    #[test]
    fn transfer_reports_failing_hypothesis() {
        // antichain {0,1} onto the 2-chain: 0 ⊥ 1 but images are compatible
        let a = FinitePoset::antichain(2);
        let c = FinitePoset::chain(2);
        let out = lemma_3_20_transfer(&a, &c, &[0, 1]).unwrap();
        assert_eq!(out, TransferOutcome::HypothesisFails { hypothesis: 2, p1: 0, p2: 1 });
        // the 2-chain onto the antichain: 0 ≤ 1 but 0 ≰* 1 there
        let out = lemma_3_20_transfer(&c, &a, &[0, 1]).unwrap();
        assert_eq!(out, TransferOutcome::HypothesisFails { hypothesis: 1, p1: 0, p2: 1 });
    }
}
