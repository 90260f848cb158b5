//! Backtracking enumeration of embeddings, copy-sets and the right Green's
//! order on self-embedding monoids.
//!
//! Partial maps are extended in increasing source order with targets tried
//! in increasing order. After each assignment every tuple whose entries are
//! all assigned and which mentions the new element is checked against the
//! preservation biconditional. Candidates are also filtered by per-position
//! tuple counts: an embedding maps the tuples (and the non-tuples) through
//! `x` at position `j` injectively onto tuples (non-tuples) through `f(x)`.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{invalid, violated, Result};
use crate::orders::FinitePoset;
use crate::structure::{disjoint_union, is_embedding, InjectionMap, Structure};

/// Per element, per (symbol, position): number of tuples through it.
fn position_counts(s: &Structure) -> Vec<Vec<usize>> {
    let mut counts = vec![Vec::new(); s.size()];
    for (i, &arity) in s.language().arities().iter().enumerate() {
        let mut per = vec![vec![0usize; arity]; s.size()];
        for t in s.tuples(i) {
            for (j, &x) in t.iter().enumerate() {
                per[x][j] += 1;
            }
        }
        for (x, row) in per.into_iter().enumerate() {
            counts[x].extend(row);
        }
    }
    counts
}

/// Tuples over a domain of size `n` with a given arity that pass through a fixed position.
fn slice_sizes(s: &Structure) -> Vec<usize> {
    s.language()
        .arities()
        .iter()
        .flat_map(|&a| std::iter::repeat_n(s.size().pow(a as u32 - 1), a))
        .collect()
}

struct Search<'a> {
    x: &'a Structure,
    y: &'a Structure,
    /// `allowed[a]` lists targets compatible with source `a` by counts.
    allowed: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(x: &'a Structure, y: &'a Structure, bijective: bool) -> Self {
        let (cx, cy) = (position_counts(x), position_counts(y));
        let (sx, sy) = (slice_sizes(x), slice_sizes(y));
        let allowed = (0..x.size())
            .map(|a| {
                (0..y.size())
                    .filter(|&b| {
                        cx[a].iter().zip(&cy[b]).enumerate().all(|(k, (&ca, &cb))| {
                            if bijective {
                                ca == cb
                            } else {
                                ca <= cb && sx[k] - ca <= sy[k] - cb
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        Self { x, y, allowed }
    }

    /// Checks every tuple over `{0..=k}` that mentions `k`.
    fn consistent(&self, map: &[usize], k: usize) -> bool {
        let mut tuple = Vec::new();
        let mut image = Vec::new();
        for (i, &arity) in self.x.language().arities().iter().enumerate() {
            let base = k + 1;
            let total = base.pow(arity as u32);
            tuple.resize(arity, 0);
            image.resize(arity, 0);
            for code in 0..total {
                let mut c = code;
                let mut mentions = false;
                for j in (0..arity).rev() {
                    tuple[j] = c % base;
                    c /= base;
                    mentions |= tuple[j] == k;
                }
                if !mentions {
                    continue;
                }
                for j in 0..arity {
                    image[j] = map[tuple[j]];
                }
                if self.x.holds(i, &tuple) != self.y.holds(i, &image) {
                    return false;
                }
            }
        }
        true
    }

    fn run<F>(&self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut map = Vec::with_capacity(self.x.size());
        let mut used = vec![false; self.y.size()];
        self.extend(&mut map, &mut used, visit)
    }

    fn extend<F>(&self, map: &mut Vec<usize>, used: &mut [bool], visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let k = map.len();
        if k == self.x.size() {
            return visit(map);
        }
        for &b in &self.allowed[k] {
            if used[b] {
                continue;
            }
            map.push(b);
            if self.consistent(map, k) {
                used[b] = true;
                let flow = self.extend(map, used, visit);
                used[b] = false;
                if flow.is_break() {
                    map.pop();
                    return flow;
                }
            }
            map.pop();
        }
        ControlFlow::Continue(())
    }
}

fn same_language(x: &Structure, y: &Structure) -> Result<()> {
    if x.language() != y.language() {
        return invalid(format!(
            "language mismatch: {:?} vs {:?}",
            x.language().arities(),
            y.language().arities()
        ));
    }
    Ok(())
}

fn collect(x: &Structure, y: &Structure, bijective: bool, limit: Option<usize>) -> Vec<InjectionMap> {
    if x.size() > y.size() || (bijective && x.size() != y.size()) {
        return Vec::new();
    }
    let search = Search::new(x, y, bijective);
    let mut maps = Vec::new();
    let _ = search.run(&mut |m| {
        maps.push(InjectionMap::new_unchecked(x.size(), y.size(), m.to_vec()));
        if limit.is_some_and(|l| maps.len() >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    maps
}

/// A canonically ordered, duplicate-free list of embeddings between two structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingSet {
    pub source: Structure,
    pub target: Structure,
    pub maps: Vec<InjectionMap>,
}

impl EmbeddingSet {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn contains(&self, f: &InjectionMap) -> bool {
        self.maps.binary_search(f).is_ok()
    }

    /// The maps as plain assignment vectors.
    pub fn assignments(&self) -> Vec<Vec<usize>> {
        self.maps.iter().map(|m| m.assignment().to_vec()).collect()
    }
}

/// All embeddings of `x` into `y`.
pub fn enumerate_embeddings(x: &Structure, y: &Structure) -> Result<EmbeddingSet> {
    same_language(x, y)?;
    Ok(EmbeddingSet {
        source: x.clone(),
        target: y.clone(),
        maps: collect(x, y, false, None),
    })
}

/// The least embedding, if any.
pub fn find_embedding(x: &Structure, y: &Structure) -> Result<Option<InjectionMap>> {
    same_language(x, y)?;
    Ok(collect(x, y, false, Some(1)).pop())
}

/// All surjective embeddings of `x` onto `y`.
pub fn enumerate_isos(x: &Structure, y: &Structure) -> Result<EmbeddingSet> {
    same_language(x, y)?;
    Ok(EmbeddingSet {
        source: x.clone(),
        target: y.clone(),
        maps: collect(x, y, true, None),
    })
}

pub fn find_iso(x: &Structure, y: &Structure) -> Result<Option<InjectionMap>> {
    same_language(x, y)?;
    Ok(collect(x, y, true, Some(1)).pop())
}

pub fn automorphisms(x: &Structure) -> EmbeddingSet {
    enumerate_isos(x, x).expect("a structure shares its own language")
}

pub fn isomorphic(x: &Structure, y: &Structure) -> Result<bool> {
    Ok(find_iso(x, y)?.is_some())
}

/// Embeddings exist in both directions.
pub fn equimorphic(x: &Structure, y: &Structure) -> Result<bool> {
    Ok(find_embedding(x, y)?.is_some() && find_embedding(y, x)?.is_some())
}

/// Images of embeddings: the copies of a structure inside another.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CopySet {
    subsets: Vec<BitSet>,
}

impl CopySet {
    pub fn from_subsets(subsets: impl IntoIterator<Item = BitSet>) -> Self {
        let set: BTreeSet<BitSet> = subsets.into_iter().collect();
        Self {
            subsets: set.into_iter().collect(),
        }
    }

    /// Members in ascending order.
    pub fn subsets(&self) -> &[BitSet] {
        &self.subsets
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn contains(&self, set: &BitSet) -> bool {
        self.subsets.binary_search(set).is_ok()
    }

    pub fn index_of(&self, set: &BitSet) -> Option<usize> {
        self.subsets.binary_search(set).ok()
    }

    /// Inclusion order on the members, in the order of [`CopySet::subsets`].
    pub fn poset(&self) -> FinitePoset {
        let n = self.subsets.len();
        FinitePoset::from_fn(n, |a, b| self.subsets[a].is_subset(&self.subsets[b]))
            .expect("inclusion is a partial order")
    }
}

/// `{f[X] : f ∈ Emb(X, Y)}`.
pub fn copies(x: &Structure, y: &Structure) -> Result<CopySet> {
    let emb = enumerate_embeddings(x, y)?;
    let set = CopySet::from_subsets(emb.maps.iter().map(|f| f.image()));
    if cfg!(debug_assertions) && y.size() <= 12 {
        let other = copies_by_substructures(x, y)?;
        if other != set {
            return violated("image copies differ from isomorphic-substructure copies");
        }
    }
    Ok(set)
}

/// `{B ⊆ Y : Y↾B ≅ X}`, by enumerating every subset of the right size.
pub fn copies_by_substructures(x: &Structure, y: &Structure) -> Result<CopySet> {
    same_language(x, y)?;
    let (m, n) = (x.size(), y.size());
    if n > 24 {
        return Err(crate::Error::UnsupportedSize {
            what: "target for subset enumeration".into(),
            actual: n,
            limit: 24,
        });
    }
    let mut found = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != m {
            continue;
        }
        let b: BitSet = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let sub = y.substructure(&b)?;
        if isomorphic(&sub.structure, x)? {
            found.push(b);
        }
    }
    Ok(CopySet::from_subsets(found))
}

/// The inclusion order on `copies(x, y)`.
pub fn copies_poset(x: &Structure, y: &Structure) -> Result<FinitePoset> {
    Ok(copies(x, y)?.poset())
}

/// The right Green's order on the self-embedding monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenQuotient {
    pub embeddings: EmbeddingSet,
    /// Classes as indices into `embeddings.maps`.
    pub classes: Vec<Vec<usize>>,
    /// `order.le(a, b)` iff `f ⪯ g` for members `f` of class `a`, `g` of class `b`.
    pub order: FinitePoset,
    pub class_of: Vec<usize>,
}

/// `h` with `f ∘ h = g`, when `g`'s image lies in `f`'s and `h` is an embedding.
fn right_factor(x: &Structure, f: &InjectionMap, g: &InjectionMap) -> Option<InjectionMap> {
    let assignment: Option<Vec<usize>> = g.assignment().iter().map(|&v| f.preimage(v)).collect();
    let h = InjectionMap::new(x.size(), x.size(), assignment?).ok()?;
    is_embedding(&h, x, x).ok()?.then_some(h)
}

/// `f ⪯ g` iff `f ∘ h = g` for some self-embedding `h`.
pub fn green_quotient(x: &Structure) -> Result<GreenQuotient> {
    let embeddings = enumerate_embeddings(x, x)?;
    let maps = &embeddings.maps;
    let k = maps.len();
    let mut pre = vec![false; k * k];
    for a in 0..k {
        for b in 0..k {
            pre[a * k + b] = right_factor(x, &maps[a], &maps[b]).is_some();
        }
    }
    let mut class_of = vec![usize::MAX; k];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..k {
        if class_of[a] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (a..k).filter(|&b| pre[a * k + b] && pre[b * k + a]).collect();
        for &b in &members {
            class_of[b] = classes.len();
        }
        classes.push(members);
    }
    let c = classes.len();
    let leq = (0..c * c)
        .map(|i| pre[classes[i / c][0] * k + classes[i % c][0]])
        .collect();
    let order = match FinitePoset::new(c, leq) {
        Ok(o) => o,
        Err(e) => return violated(format!("Green quotient is not a partial order: {e}")),
    };
    let id = InjectionMap::identity(x.size());
    let id_class = class_of[maps.binary_search(&id).expect("identity is a self-embedding")];
    if order.least() != Some(id_class) {
        return violated("the identity's class is not the least element of the Green order");
    }
    Ok(GreenQuotient {
        embeddings,
        classes,
        order,
        class_of,
    })
}

/// `F(A) = h[A]` from the self-copies of `X` onto the copies of `X` in `Y`
/// lying inside `h[X]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyTransport {
    /// `(A, h[A])` for each self-copy `A`, in the order of `copies(X, X)`.
    pub pairs: Vec<(BitSet, BitSet)>,
    pub target_copies: CopySet,
}

/// Builds `A ↦ h[A]` and checks it is an order-isomorphism onto the
/// principal down-set of `h[X]` in the copies of `X` in `Y`.
pub fn lemma_2_9_iso(h: &InjectionMap, x: &Structure, y: &Structure) -> Result<CopyTransport> {
    if !is_embedding(h, x, y)? {
        return invalid("h is not an embedding");
    }
    let own = copies(x, x)?;
    let target_copies = copies(x, y)?;
    let c = h.image();
    let below: BTreeSet<BitSet> = target_copies
        .subsets()
        .iter()
        .filter(|d| d.is_subset(&c))
        .cloned()
        .collect();
    let pairs: Vec<(BitSet, BitSet)> = own
        .subsets()
        .iter()
        .map(|a| (a.clone(), h.image_of(a)))
        .collect();
    let images: BTreeSet<BitSet> = pairs.iter().map(|(_, b)| b.clone()).collect();
    if images != below || images.len() != pairs.len() {
        return violated("A ↦ h[A] is not a bijection onto the copies below h[X]");
    }
    for (a, fa) in &pairs {
        for (b, fb) in &pairs {
            if a.is_subset(b) != fa.is_subset(fb) {
                return violated("A ↦ h[A] does not preserve inclusion both ways");
            }
        }
    }
    Ok(CopyTransport {
        pairs,
        target_copies,
    })
}

/// An embedding of disjoint unions split into component embeddings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Component of the target receiving each source component.
    pub index_map: Vec<usize>,
    /// Embedding of source part `i` into target part `index_map[i]`, in local labels.
    pub components: Vec<InjectionMap>,
}

fn rs_related(y: &Structure, a: usize, b: usize) -> bool {
    a == b || y.holds(0, &[a, b]) || y.holds(0, &[b, a])
}

/// Splits `f: ⋃X_i → ⋃Y_j` into `index_map: I → J` and embeddings `g_i`.
pub fn decompose_embedding(
    f: &InjectionMap,
    parts_x: &[Structure],
    parts_y: &[Structure],
) -> Result<Decomposition> {
    let ux = disjoint_union(parts_x)?;
    let uy = disjoint_union(parts_y)?;
    if !is_embedding(f, &ux.structure, &uy.structure)? {
        return invalid("map is not an embedding of the unions");
    }
    let mut index_map = Vec::new();
    let mut components = Vec::new();
    for (i, block) in ux.blocks.blocks().iter().enumerate() {
        let image = f.image_of(block);
        let j = uy
            .blocks
            .block_of(image.iter().next().expect("blocks are non-empty"))
            .expect("image lies in the target domain");
        if !image.is_subset(&uy.blocks.blocks()[j]) {
            return violated(format!("component {i} is spread over several target components"));
        }
        let local = block
            .iter()
            .map(|v| f.apply(v) - uy.offsets[j])
            .collect();
        let g = InjectionMap::new(parts_x[i].size(), parts_y[j].size(), local)?;
        if !is_embedding(&g, &parts_x[i], &parts_y[j])? {
            return violated(format!("restriction to component {i} is not an embedding"));
        }
        index_map.push(j);
        components.push(g);
    }
    let blocks = ux.blocks.blocks();
    for (i, bi) in blocks.iter().enumerate() {
        for bk in blocks.iter().skip(i + 1) {
            for a in bi.iter() {
                for b in bk.iter() {
                    if rs_related(&uy.structure, f.apply(a), f.apply(b)) {
                        return violated("images of distinct components are related");
                    }
                }
            }
        }
    }
    let rebuilt = assemble(&ux.offsets, &uy.offsets, &index_map, &components, ux.structure.size(), uy.structure.size());
    if rebuilt != *f {
        return violated("component embeddings do not reassemble the map");
    }
    Ok(Decomposition {
        index_map,
        components,
    })
}

fn assemble(
    offsets_x: &[usize],
    offsets_y: &[usize],
    index_map: &[usize],
    components: &[InjectionMap],
    nx: usize,
    ny: usize,
) -> InjectionMap {
    let mut assignment = vec![0; nx];
    for (i, g) in components.iter().enumerate() {
        for (local, &t) in g.assignment().iter().enumerate() {
            assignment[offsets_x[i] + local] = offsets_y[index_map[i]] + t;
        }
    }
    InjectionMap::new_unchecked(nx, ny, assignment)
}

/// All embeddings of `⋃X_i` into `⋃Y_j` built from families
/// `(index_map, g_i)` whose images are pairwise unrelated.
pub fn assemble_union_embeddings(parts_x: &[Structure], parts_y: &[Structure]) -> Result<Vec<InjectionMap>> {
    let ux = disjoint_union(parts_x)?;
    let uy = disjoint_union(parts_y)?;
    let local: Vec<Vec<Vec<InjectionMap>>> = parts_x
        .iter()
        .map(|xi| {
            parts_y
                .iter()
                .map(|yj| enumerate_embeddings(xi, yj).map(|e| e.maps))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let (ni, nj) = (parts_x.len(), parts_y.len());
    let mut out = BTreeSet::new();
    let mut index_map = vec![0; ni];
    loop {
        let mut choice = vec![0; ni];
        'families: loop {
            if (0..ni).all(|i| !local[i][index_map[i]].is_empty()) {
                let comps: Vec<InjectionMap> = (0..ni)
                    .map(|i| local[i][index_map[i]][choice[i]].clone())
                    .collect();
                let f = assemble(&ux.offsets, &uy.offsets, &index_map, &comps, ux.structure.size(), uy.structure.size());
                let separated = (0..ni).all(|i| {
                    ((i + 1)..ni).all(|k| {
                        ux.blocks.blocks()[i].iter().all(|a| {
                            ux.blocks.blocks()[k]
                                .iter()
                                .all(|b| !rs_related(&uy.structure, f.apply(a), f.apply(b)))
                        })
                    })
                });
                if separated {
                    out.insert(f);
                }
            } else {
                break 'families;
            }
            let mut i = 0;
            loop {
                if i == ni {
                    break 'families;
                }
                choice[i] += 1;
                if choice[i] < local[i][index_map[i]].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == ni {
                return Ok(out.into_iter().collect());
            }
            index_map[i] += 1;
            if index_map[i] < nj {
                break;
            }
            index_map[i] = 0;
            i += 1;
        }
    }
}

/// For a unary structure, whether an injection `X → X` maps every
/// membership class into itself; this characterises self-embeddings.
pub fn preserves_unary_blocks(f: &InjectionMap, x: &Structure) -> Result<bool> {
    let classes = x.unary_classes()?;
    if f.source_size() != x.size() || f.target_size() != x.size() {
        return invalid("map does not act on the structure's domain");
    }
    Ok(classes
        .blocks()
        .iter()
        .all(|b| f.image_of(b).is_subset(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Language;

    fn all_injections(m: usize, n: usize) -> Vec<Vec<usize>> {
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
        go(m, n, &mut Vec::new(), &mut out);
        out
    }

    fn brute(x: &Structure, y: &Structure) -> Vec<Vec<usize>> {
        all_injections(x.size(), y.size())
            .into_iter()
            .filter(|a| {
                let f = InjectionMap::new(x.size(), y.size(), a.clone()).unwrap();
                is_embedding(&f, x, y).unwrap()
            })
            .collect()
    }

    #[test]
    fn strict_chain_has_only_identity() {
        let c = Structure::binary(2, &[(0, 1)]).unwrap();
        assert_eq!(enumerate_embeddings(&c, &c).unwrap().assignments(), vec![vec![0, 1]]);
    }

    #[test]
    fn empty_relation_has_both_bijections() {
        let e = Structure::binary(2, &[]).unwrap();
        assert_eq!(
            enumerate_embeddings(&e, &e).unwrap().assignments(),
            vec![vec![0, 1], vec![1, 0]]
        );
    }

    #[test]
    fn unary_blocks_give_four_embeddings() {
        let u = Structure::unary(4, &[&[0, 1]]).unwrap();
        assert_eq!(enumerate_embeddings(&u, &u).unwrap().len(), 4);
    }

    #[test]
    fn oversized_source_gives_empty_set() {
        let big = Structure::binary(3, &[]).unwrap();
        let small = Structure::binary(2, &[]).unwrap();
        assert!(enumerate_embeddings(&big, &small).unwrap().is_empty());
        let u = Structure::unary(2, &[&[]]).unwrap();
        assert!(enumerate_embeddings(&small, &u).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        let path = Structure::binary(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(automorphisms(&path).len(), 1);
        let a = Structure::binary(2, &[(0, 1)]).unwrap();
        let b = Structure::binary(2, &[(1, 0)]).unwrap();
        assert_eq!(enumerate_isos(&a, &b).unwrap().assignments(), vec![vec![1, 0]]);
        let c = Structure::binary(3, &[(1, 0)]).unwrap();
        assert!(enumerate_isos(&a, &c).unwrap().is_empty());
    }

    #[test]
    fn matches_brute_force_on_samples() {
        let xs = [
            Structure::binary(2, &[(0, 1), (1, 1)]).unwrap(),
            Structure::binary(3, &[(0, 1), (1, 2)]).unwrap(),
            Structure::binary(1, &[(0, 0)]).unwrap(),
        ];
        let y = Structure::binary(5, &[(0, 1), (1, 2), (2, 3), (3, 3), (4, 4), (4, 0), (2, 2)]).unwrap();
        for x in &xs {
            assert_eq!(enumerate_embeddings(x, &y).unwrap().assignments(), brute(x, &y));
        }
    }

    #[test]
    fn copies_examples() {
        let x = Structure::binary(3, &[(0, 1), (2, 2)]).unwrap();
        assert_eq!(copies(&x, &x).unwrap().subsets(), &[x.domain()]);
        let lp = Structure::binary(1, &[(0, 0)]).unwrap();
        let two = Structure::binary(2, &[(0, 0), (1, 1)]).unwrap();
        let c = copies(&lp, &two).unwrap();
        assert_eq!(c.subsets(), &[BitSet::singleton(0), BitSet::singleton(1)]);
        let pt = Structure::binary(1, &[]).unwrap();
        let chain = Structure::binary(2, &[(0, 1)]).unwrap();
        assert_eq!(copies(&pt, &chain).unwrap().len(), 2);
    }

    #[test]
    fn copies_poset_examples() {
        let x = Structure::binary(2, &[(0, 1)]).unwrap();
        assert_eq!(copies_poset(&x, &x).unwrap().size(), 1);
        let pt = Structure::binary(1, &[]).unwrap();
        let p = copies_poset(&pt, &Structure::binary(2, &[]).unwrap()).unwrap();
        assert_eq!(p, FinitePoset::antichain(2));
        let c3 = Structure::binary(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(copies_poset(&pt, &c3).unwrap(), FinitePoset::antichain(3));
    }

    #[test]
    fn green_quotient_is_trivial_for_finite() {
        let e = Structure::binary(3, &[]).unwrap();
        let g = green_quotient(&e).unwrap();
        assert_eq!(g.embeddings.len(), 6);
        assert_eq!(g.classes.len(), 1);
        let c = Structure::binary(2, &[(0, 1)]).unwrap();
        let g = green_quotient(&c).unwrap();
        assert_eq!(g.classes, vec![vec![0]]);
    }

    #[test]
    fn equimorphism_examples() {
        let c = Structure::binary(2, &[(0, 1)]).unwrap();
        let e = Structure::binary(2, &[]).unwrap();
        assert!(equimorphic(&c, &c.relabel(&[1, 0]).unwrap()).unwrap());
        assert!(!equimorphic(&c, &e).unwrap());
    }

    #[test]
    fn copy_transport_examples() {
        let x = Structure::binary(2, &[(0, 1)]).unwrap();
        let t = lemma_2_9_iso(&InjectionMap::identity(2), &x, &x).unwrap();
        assert_eq!(t.pairs, vec![(x.domain(), x.domain())]);
        let lp = Structure::binary(1, &[(0, 0)]).unwrap();
        let two = Structure::binary(2, &[(0, 0), (1, 1)]).unwrap();
        let h = InjectionMap::new(1, 2, vec![1]).unwrap();
        let t = lemma_2_9_iso(&h, &lp, &two).unwrap();
        assert_eq!(t.pairs, vec![(BitSet::singleton(0), BitSet::singleton(1))]);
        let bad = InjectionMap::new(2, 2, vec![1, 0]).unwrap();
        assert!(lemma_2_9_iso(&bad, &x, &x).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let lp = Structure::binary(1, &[(0, 0)]).unwrap();
        let c = Structure::binary(2, &[(0, 1)]).unwrap();
        let d = decompose_embedding(&InjectionMap::identity(2), std::slice::from_ref(&c), std::slice::from_ref(&c)).unwrap();
        assert_eq!(d.index_map, vec![0]);
        assert_eq!(d.components, vec![InjectionMap::identity(2)]);
        let swap = InjectionMap::new(2, 2, vec![1, 0]).unwrap();
        let parts = [lp.clone(), lp.clone()];
        let d = decompose_embedding(&swap, &parts, &parts).unwrap();
        assert_eq!(d.index_map, vec![1, 0]);
        let direct = enumerate_embeddings(
            &disjoint_union(&parts).unwrap().structure,
            &disjoint_union(&parts).unwrap().structure,
        )
        .unwrap()
        .maps;
        assert_eq!(assemble_union_embeddings(&parts, &parts).unwrap(), direct);
    }

    #[test]
    fn language_mismatch_is_rejected() {
        let b = Structure::binary(1, &[]).unwrap();
        let t = Structure::empty(Language::new(vec![3]).unwrap(), 1).unwrap();
        assert!(copies(&b, &t).is_err());
        assert!(equimorphic(&b, &t).is_err());
    }
}
