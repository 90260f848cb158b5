use super::{poset_iso, FinitePoset};

/// Largest size accepted by [`posets_up_to_iso`].
pub const MAX_ENUMERATED_POSET: usize = 7;

/// One representative of every isomorphism type of poset on `n` points.
///
/// Every finite poset has a linear extension, so scanning the transitive
/// relations contained in the natural order `<` reaches every type.
pub fn posets_up_to_iso(n: usize) -> Vec<FinitePoset> {
    assert!(n <= MAX_ENUMERATED_POSET, "poset enumeration limited to {MAX_ENUMERATED_POSET} points");
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut buckets: std::collections::HashMap<Vec<(usize, usize)>, Vec<FinitePoset>> =
        std::collections::HashMap::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << slots.len() {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
        }
        for (k, &(i, j)) in slots.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let transitive = slots.iter().all(|&(i, j)| {
            !leq[i * n + j] || (j + 1..n).all(|k| !leq[j * n + k] || leq[i * n + k])
        });
        if !transitive {
            continue;
        }
        let p = FinitePoset::new_unchecked(n, leq);
        let mut key: Vec<(usize, usize)> = (0..n)
            .map(|x| (p.down_set(x).len(), p.up_set(x).len()))
            .collect();
        key.sort_unstable();
        let bucket = buckets.entry(key).or_default();
        if bucket.iter().all(|q| poset_iso(q, &p).is_none()) {
            bucket.push(p.clone());
            out.push(p);
        }
    }
    out
}
