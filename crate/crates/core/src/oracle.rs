//! Brute-force reference evaluators.
//!
//! Each function follows a definition literally, by exhaustive enumeration,
//! and shares no search code with the main algorithms. They are meant for
//! cross-checking on small inputs.

use std::collections::BTreeSet;

use crate::bitset::BitSet;
use crate::error::Result;
use crate::orders::FinitePoset;
use crate::structure::{is_embedding, InjectionMap, Structure};

/// All injections `{0..m} → {0..n}` as assignment vectors, in lexicographic order.
pub fn injections(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for y in 0..n {
            if !cur.contains(&y) {
                cur.push(y);
                go(m, n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, n, &mut Vec::with_capacity(m), &mut out);
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    injections(n, n)
}

/// Every injection that passes the preservation biconditional.
pub fn brute_force_embeddings(x: &Structure, y: &Structure) -> Result<Vec<InjectionMap>> {
    let mut out = Vec::new();
    for a in injections(x.size(), y.size()) {
        let f = InjectionMap::new(x.size(), y.size(), a)?;
        if is_embedding(&f, x, y)? {
            out.push(f);
        }
    }
    Ok(out)
}

pub fn brute_force_copies(x: &Structure, y: &Structure) -> Result<BTreeSet<BitSet>> {
    Ok(brute_force_embeddings(x, y)?
        .iter()
        .map(|f| f.image())
        .collect())
}

/// Some bijection `π` with `a ≤ b ⇔ π(a) ≤ π(b)`.
pub fn brute_force_poset_iso(p: &FinitePoset, q: &FinitePoset) -> bool {
    let n = p.size();
    n == q.size()
        && permutations(n).into_iter().any(|pi| {
            (0..n).all(|a| (0..n).all(|b| p.le(a, b) == q.le(pi[a], pi[b])))
        })
}

fn has_common_lower_bound(p: &FinitePoset, a: usize, b: usize) -> bool {
    (0..p.size()).any(|s| p.le(s, a) && p.le(s, b))
}

/// `a ≤* b` iff every `r ≤ a` has a common lower bound with `b`, as a matrix.
pub fn definitional_sep_mod(p: &FinitePoset) -> Vec<bool> {
    let n = p.size();
    let mut m = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            m[a * n + b] = (0..n)
                .filter(|&r| p.le(r, a))
                .all(|r| has_common_lower_bound(p, r, b));
        }
    }
    m
}

/// Classes of mutual `≤*` and the induced order, as an unlabelled poset.
pub fn definitional_sep_quotient(p: &FinitePoset) -> (Vec<BTreeSet<usize>>, FinitePoset) {
    let n = p.size();
    let m = definitional_sep_mod(p);
    let mut classes: Vec<BTreeSet<usize>> = Vec::new();
    for a in 0..n {
        if classes.iter().any(|c| c.contains(&a)) {
            continue;
        }
        classes.push((0..n).filter(|&b| m[a * n + b] && m[b * n + a]).collect());
    }
    let k = classes.len();
    let rep = |i: usize| *classes[i].iter().next().unwrap();
    let order = FinitePoset::from_fn(k, |i, j| m[rep(i) * n + rep(j)])
        .expect("mutual ≤* quotient is a partial order");
    (classes, order)
}

/// All down-sets `A` of `order` with `int(cl(A)) = A`, by scanning every subset.
pub fn definitional_regular_opens(order: &FinitePoset) -> BTreeSet<BitSet> {
    let n = order.size();
    assert!(n <= 20, "exhaustive subset scan limited to 20 elements");
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << n {
        let a: BitSet = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let is_down = a
            .iter()
            .all(|x| (0..n).all(|y| !order.le(y, x) || a.contains(y)));
        if !is_down {
            continue;
        }
        let cl: BitSet = (0..n)
            .filter(|&p| a.iter().any(|x| order.le(x, p)))
            .collect();
        let int_cl: BitSet = (0..n)
            .filter(|&p| (0..n).all(|r| !order.le(r, p) || cl.contains(r)))
            .collect();
        if int_cl == a {
            out.insert(a);
        }
    }
    out
}

/// Connectivity of the symmetric closure, by breadth-first search.
pub fn brute_force_connected(x: &Structure) -> bool {
    let n = x.size();
    let mut seen = vec![false; n];
    let mut queue = vec![0];
    seen[0] = true;
    while let Some(a) = queue.pop() {
        for b in 0..n {
            if !seen[b] && (x.holds(0, &[a, b]) || x.holds(0, &[b, a])) {
                seen[b] = true;
                queue.push(b);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn injection_counts() {
        assert_eq!(injections(2, 3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(injections(0, 2), vec![Vec::<usize>::new()]);
        assert!(injections(3, 2).is_empty());
    }

    #[test]
    fn chain_and_antichain() {
        let c = FinitePoset::chain(3);
        assert_eq!(definitional_sep_quotient(&c).1.size(), 1);
        let a = FinitePoset::antichain(3);
        assert_eq!(definitional_regular_opens(&a).len(), 8);
        assert!(!brute_force_poset_iso(&c, &a));
    }
}
