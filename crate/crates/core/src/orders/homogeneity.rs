use super::{poset_iso, relation_iso_pinned, FinitePoset};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Largest poset accepted by the quasi-homogeneity search.
pub const QUASI_HOMOGENEITY_LIMIT: usize = 10;

/// Every element of `within` lies above some element of `set`.
pub fn is_dense(p: &FinitePoset, set: &BitSet, within: &BitSet) -> bool {
    within.iter().all(|u| set.iter().any(|d| p.le(d, u)))
}

/// Has a largest element and is isomorphic to every principal down-set.
pub fn is_homogeneous(p: &FinitePoset) -> bool {
    if p.greatest().is_none() {
        return false;
    }
    (0..p.size()).all(|x| {
        let down = p.down_set(x);
        down.len() == p.size() && poset_iso(p, &p.restrict(&down).0).is_some()
    })
}

/// Every pair is made compatible by some automorphism.
pub fn is_weakly_homogeneous(p: &FinitePoset) -> bool {
    let n = p.size();
    let m = p.matrix();
    let mut orbit = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            orbit[a][b] = a == b || relation_iso_pinned(n, m, n, m, Some((a, b))).is_some();
        }
    }
    (0..n).all(|a| (0..n).all(|q| (0..n).any(|b| orbit[a][b] && p.compatible(b, q))))
}

/// For every `p` some dense `D ⊆ P` order-embeds into `p↓` with dense image.
///
/// Finite dense sets contain all minimal elements, so candidate sets are
/// the supersets of the minimal-element set, tried by increasing size.
pub fn is_quasi_homogeneous(p: &FinitePoset) -> Result<bool> {
    let n = p.size();
    if n > QUASI_HOMOGENEITY_LIMIT {
        return Err(Error::UnsupportedSize {
            what: "poset for the quasi-homogeneity search".into(),
            actual: n,
            limit: QUASI_HOMOGENEITY_LIMIT,
        });
    }
    let minimal = p.minimal_elements();
    let rest: Vec<usize> = (0..n).filter(|&x| !minimal.contains(x)).collect();
    let mut extras: Vec<u32> = (0u32..1 << rest.len()).collect();
    extras.sort_by_key(|m| (m.count_ones(), *m));
    let candidates: Vec<Vec<usize>> = extras
        .into_iter()
        .map(|mask| {
            let mut d: BitSet = minimal.clone();
            for (i, &x) in rest.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    d.insert(x);
                }
            }
            d.to_vec()
        })
        .collect();
    Ok((0..n).all(|target| {
        let down = p.down_set(target);
        let slots = down.to_vec();
        candidates.iter().any(|d| {
            d.len() <= slots.len() && dense_embedding(p, d, &slots, &down, &mut Vec::new())
        })
    }))
}

fn dense_embedding(
    p: &FinitePoset,
    domain: &[usize],
    slots: &[usize],
    down: &BitSet,
    image: &mut Vec<usize>,
) -> bool {
    let k = image.len();
    if k == domain.len() {
        let set: BitSet = image.iter().copied().collect();
        return is_dense(p, &set, down);
    }
    let x = domain[k];
    for &y in slots {
        if image.contains(&y) {
            continue;
        }
        let ok = domain[..k]
            .iter()
            .zip(image.iter())
            .all(|(&x2, &y2)| p.le(x, x2) == p.le(y, y2) && p.le(x2, x) == p.le(y2, y));
        if !ok {
            continue;
        }
        image.push(y);
        if dense_embedding(p, domain, slots, down, image) {
            return true;
        }
        image.pop();
    }
    false
}
