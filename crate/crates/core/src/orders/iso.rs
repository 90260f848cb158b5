//! Isomorphism search for binary relations given as square boolean matrices.
//!
//! Candidates are pruned by iterated colour refinement (out- and
//! in-neighbour colour multisets, computed jointly on both sides), then
//! matched by backtracking in increasing element order. Targets are tried
//! in increasing order, so the witness returned is the lexicographically
//! least isomorphism; on identical inputs that is the identity.

use std::collections::BTreeMap;

use super::{FinitePoset, FinitePreorder};

fn refine(sides: [(usize, &[bool]); 2], pin: Option<(usize, usize)>) -> [Vec<usize>; 2] {
    let init = |side: usize, n: usize, m: &[bool]| -> Vec<(usize, usize, bool, bool)> {
        (0..n)
            .map(|x| {
                let out = (0..n).filter(|&y| m[x * n + y]).count();
                let inn = (0..n).filter(|&y| m[y * n + x]).count();
                let pinned = pin.is_some_and(|(a, b)| if side == 0 { a == x } else { b == x });
                (out, inn, m[x * n + x], pinned)
            })
            .collect()
    };
    let mut table = BTreeMap::new();
    let mut colours: [Vec<usize>; 2] = [0, 1].map(|s| {
        let (n, m) = sides[s];
        init(s, n, m)
            .into_iter()
            .map(|sig| {
                let next = table.len();
                *table.entry(sig).or_insert(next)
            })
            .collect()
    });
    let mut classes = table.len();
    loop {
        let mut table = BTreeMap::new();
        let next: [Vec<usize>; 2] = [0, 1].map(|s| {
            let (n, m) = sides[s];
            let col = &colours[s];
            (0..n)
                .map(|x| {
                    let mut out: Vec<usize> = (0..n).filter(|&y| m[x * n + y]).map(|y| col[y]).collect();
                    let mut inn: Vec<usize> = (0..n).filter(|&y| m[y * n + x]).map(|y| col[y]).collect();
                    out.sort_unstable();
                    inn.sort_unstable();
                    let sig = (col[x], out, inn);
                    let next = table.len();
                    *table.entry(sig).or_insert(next)
                })
                .collect()
        });
        let now = table.len();
        colours = next;
        if now == classes {
            return colours;
        }
        classes = now;
    }
}

fn histogram(c: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

/// An isomorphism `f` with `a[x][y] ⇔ b[f(x)][f(y)]`, if one exists.
pub fn relation_iso(na: usize, a: &[bool], nb: usize, b: &[bool]) -> Option<Vec<usize>> {
    relation_iso_pinned(na, a, nb, b, None)
}

/// As [`relation_iso`], additionally requiring `f(pin.0) = pin.1`.
pub fn relation_iso_pinned(
    na: usize,
    a: &[bool],
    nb: usize,
    b: &[bool],
    pin: Option<(usize, usize)>,
) -> Option<Vec<usize>> {
    if na != nb || a.iter().filter(|&&v| v).count() != b.iter().filter(|&&v| v).count() {
        return None;
    }
    let n = na;
    if let Some((p, q)) = pin {
        if p >= n || q >= n {
            return None;
        }
    }
    let [ca, cb] = refine([(n, a), (n, b)], pin);
    if histogram(&ca) != histogram(&cb) {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    if let Some((p, _)) = pin {
        order.retain(|&x| x != p);
        order.insert(0, p);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if backtrack(0, &order, n, a, b, &ca, &cb, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    depth: usize,
    order: &[usize],
    n: usize,
    a: &[bool],
    b: &[bool],
    ca: &[usize],
    cb: &[usize],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..n {
        if used[y] || ca[x] != cb[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&x2| {
            let y2 = map[x2];
            a[x * n + x2] == b[y * n + y2] && a[x2 * n + x] == b[y2 * n + y]
        }) && a[x * n + x] == b[y * n + y];
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if backtrack(depth + 1, order, n, a, b, ca, cb, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

/// An order-isomorphism `P → Q`, if any.
pub fn poset_iso(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    relation_iso(p.size(), p.matrix(), q.size(), q.matrix())
}

pub fn preorder_iso(p: &FinitePreorder, q: &FinitePreorder) -> Option<Vec<usize>> {
    relation_iso(p.size(), p.matrix(), q.size(), q.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::product;

    fn is_iso(p: &FinitePoset, q: &FinitePoset, f: &[usize]) -> bool {
        let n = p.size();
        (0..n).all(|a| (0..n).all(|b| p.le(a, b) == q.le(f[a], f[b])))
    }

    #[test]
    fn identity_on_equal_posets() {
        let v = FinitePoset::from_pairs(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        assert_eq!(poset_iso(&v, &v), Some(vec![0, 1, 2, 3]));
        let a = FinitePoset::antichain(5);
        assert_eq!(poset_iso(&a, &a), Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn chain_vs_antichain() {
        assert_eq!(poset_iso(&FinitePoset::chain(2), &FinitePoset::antichain(2)), None);
    }

    #[test]
    fn square_of_chain_is_boolean_lattice() {
        let c2 = FinitePoset::chain(2);
        let sq = product(&[c2.clone(), c2]).unwrap();
        // 4-element Boolean lattice labelled ∅=0, {a}=1, {b}=2, {a,b}=3 in a different order
        let b4 = FinitePoset::from_pairs(4, &[(3, 1), (3, 0), (1, 2), (0, 2)]).unwrap();
        let f = poset_iso(&sq, &b4).unwrap();
        assert!(is_iso(&sq, &b4, &f));
    }

    #[test]
    fn relabelled_posets_are_found() {
        let p = FinitePoset::from_pairs(6, &[(0, 1), (1, 2), (0, 3), (4, 5), (3, 5)]).unwrap();
        let q = p.relabel(&[5, 3, 1, 0, 2, 4]).unwrap();
        let f = poset_iso(&p, &q).unwrap();
        assert!(is_iso(&p, &q, &f));
    }

    #[test]
    fn pinned_search_respects_pin() {
        let a = FinitePoset::antichain(3);
        let f = relation_iso_pinned(3, a.matrix(), 3, a.matrix(), Some((0, 2))).unwrap();
        assert_eq!(f[0], 2);
        let c = FinitePoset::chain(3);
        assert!(relation_iso_pinned(3, c.matrix(), 3, c.matrix(), Some((0, 2))).is_none());
    }
}
