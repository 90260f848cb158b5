//! Finite relational structures over the fixed domain `{0, .., n-1}` and
//! the basic constructions on them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{invalid, Result};

/// Largest number of tuple positions (`n^arity`) a single relation may span.
pub const MAX_TUPLE_SPACE: usize = 1 << 22;

/// A relational language: the arity of every relation symbol, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Language {
    arities: Vec<usize>,
}

impl Language {
    pub fn new(arities: Vec<usize>) -> Result<Self> {
        if arities.is_empty() {
            return invalid("a language needs at least one relation symbol");
        }
        if let Some(i) = arities.iter().position(|&a| a == 0) {
            return invalid(format!("symbol {i} has arity 0; arities must be positive"));
        }
        Ok(Self { arities })
    }

    /// The language with a single binary symbol.
    pub fn binary() -> Self {
        Self { arities: vec![2] }
    }

    /// `symbols` unary symbols.
    pub fn unary(symbols: usize) -> Self {
        Self {
            arities: vec![1; symbols.max(1)],
        }
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }

    pub fn symbol_count(&self) -> usize {
        self.arities.len()
    }

    pub fn is_unary(&self) -> bool {
        self.arities.iter().all(|&a| a == 1)
    }

    /// True for the language with exactly one binary symbol.
    pub fn is_binary(&self) -> bool {
        self.arities == [2]
    }

    /// Least index of a symbol with arity at least two.
    pub fn first_non_unary(&self) -> Option<usize> {
        self.arities.iter().position(|&a| a >= 2)
    }
}

pub type Tuple = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Relation {
    arity: usize,
    tuples: Vec<Tuple>,
    members: BitSet,
}

fn encode(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * n + x)
}

fn decode(mut code: usize, arity: usize, n: usize) -> Tuple {
    let mut t = vec![0; arity];
    for slot in t.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    t
}

fn tuple_space(n: usize, arity: usize) -> Option<usize> {
    n.checked_pow(arity as u32)
        .filter(|&s| s <= MAX_TUPLE_SPACE)
}

/// A finite structure: a domain `{0, .., size-1}` and one relation per symbol.
///
/// Relations are kept sorted lexicographically and duplicate-free, so two
/// structures are equal exactly when they interpret every symbol identically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Structure {
    language: Language,
    size: usize,
    relations: Vec<Relation>,
}

impl Structure {
    pub fn new(language: Language, size: usize, relations: Vec<Vec<Tuple>>) -> Result<Self> {
        if size == 0 {
            return invalid("structures have a non-empty domain");
        }
        if relations.len() != language.symbol_count() {
            return invalid(format!(
                "language has {} symbols but {} relations were given",
                language.symbol_count(),
                relations.len()
            ));
        }
        let mut rels = Vec::with_capacity(relations.len());
        for (i, (mut tuples, &arity)) in relations.into_iter().zip(language.arities()).enumerate() {
            if tuple_space(size, arity).is_none() {
                return invalid(format!(
                    "symbol {i}: {size}^{arity} tuple positions exceed the supported {MAX_TUPLE_SPACE}"
                ));
            }
            for t in &tuples {
                if t.len() != arity {
                    return invalid(format!(
                        "symbol {i}: tuple {t:?} has length {}, expected {arity}",
                        t.len()
                    ));
                }
                if let Some(&x) = t.iter().find(|&&x| x >= size) {
                    return invalid(format!(
                        "symbol {i}: element {x} out of range for domain of size {size}"
                    ));
                }
            }
            tuples.sort();
            tuples.dedup();
            let members = tuples.iter().map(|t| encode(t, size)).collect();
            rels.push(Relation {
                arity,
                tuples,
                members,
            });
        }
        Ok(Self {
            language,
            size,
            relations: rels,
        })
    }

    /// Every relation empty.
    pub fn empty(language: Language, size: usize) -> Result<Self> {
        let k = language.symbol_count();
        Self::new(language, size, vec![Vec::new(); k])
    }

    /// A structure of the binary language from a list of pairs.
    pub fn binary(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let tuples = pairs.iter().map(|&(a, b)| vec![a, b]).collect();
        Self::new(Language::binary(), size, vec![tuples])
    }

    /// A structure of a unary language, one member list per symbol.
    pub fn unary(size: usize, sets: &[&[usize]]) -> Result<Self> {
        let rels = sets
            .iter()
            .map(|s| s.iter().map(|&x| vec![x]).collect())
            .collect();
        Self::new(Language::unary(sets.len()), size, rels)
    }

    pub fn language(&self) -> &Language {
        &self.language
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn domain(&self) -> BitSet {
        BitSet::full(self.size)
    }

    pub fn tuples(&self, symbol: usize) -> &[Tuple] {
        &self.relations[symbol].tuples
    }

    pub fn holds(&self, symbol: usize, tuple: &[usize]) -> bool {
        self.relations[symbol]
            .members
            .contains(encode(tuple, self.size))
    }

    /// Number of tuples across all symbols.
    pub fn tuple_count(&self) -> usize {
        self.relations.iter().map(|r| r.tuples.len()).sum()
    }

    /// The image of this structure under a permutation of its domain.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.size || BitSet::from_iter(perm.iter().copied()) != self.domain() {
            return invalid("relabelling must be a permutation of the domain");
        }
        let rels = self
            .relations
            .iter()
            .map(|r| {
                r.tuples
                    .iter()
                    .map(|t| t.iter().map(|&x| perm[x]).collect())
                    .collect()
            })
            .collect();
        Self::new(self.language.clone(), self.size, rels)
    }

    /// The induced substructure on `elements`, renumbered in increasing order.
    pub fn substructure(&self, elements: &BitSet) -> Result<Substructure> {
        if elements.is_empty() {
            return invalid("substructures are taken on non-empty sets");
        }
        if let Some(x) = elements.iter().find(|&x| x >= self.size) {
            return invalid(format!(
                "element {x} out of range for domain of size {}",
                self.size
            ));
        }
        let labels = elements.to_vec();
        let mut index = vec![usize::MAX; self.size];
        for (new, &old) in labels.iter().enumerate() {
            index[old] = new;
        }
        let rels = self
            .relations
            .iter()
            .map(|r| {
                r.tuples
                    .iter()
                    .filter(|t| t.iter().all(|&x| elements.contains(x)))
                    .map(|t| t.iter().map(|&x| index[x]).collect())
                    .collect()
            })
            .collect();
        let structure = Self::new(self.language.clone(), labels.len(), rels)?;
        Ok(Substructure { structure, labels })
    }

    fn binary_pairs(&self, op: &str) -> Result<&[Tuple]> {
        if !self.language.is_binary() {
            return invalid(format!(
                "{op} is defined for the binary language, got arities {:?}",
                self.language.arities()
            ));
        }
        Ok(&self.relations[0].tuples)
    }

    fn with_pairs(&self, pairs: Vec<Tuple>) -> Self {
        Self::new(self.language.clone(), self.size, vec![pairs])
            .expect("pairs stay within the domain")
    }

    /// `(X × X) \ ρ`.
    pub fn complement(&self) -> Result<Self> {
        self.binary_pairs("complement")?;
        let n = self.size;
        let pairs = (0..n)
            .flat_map(|a| (0..n).map(move |b| vec![a, b]))
            .filter(|t| !self.holds(0, t))
            .collect();
        Ok(self.with_pairs(pairs))
    }

    /// `ρ ∪ Δ`.
    pub fn reflexify(&self) -> Result<Self> {
        let mut pairs = self.binary_pairs("reflexify")?.to_vec();
        pairs.extend((0..self.size).map(|x| vec![x, x]));
        Ok(self.with_pairs(pairs))
    }

    /// `ρ \ Δ`.
    pub fn irreflexify(&self) -> Result<Self> {
        let pairs = self
            .binary_pairs("irreflexify")?
            .iter()
            .filter(|t| t[0] != t[1])
            .cloned()
            .collect();
        Ok(self.with_pairs(pairs))
    }

    pub fn has_loop(&self) -> Result<bool> {
        Ok(self.binary_pairs("loop test")?.iter().any(|t| t[0] == t[1]))
    }

    pub fn is_reflexive(&self) -> Result<bool> {
        self.binary_pairs("reflexivity test")?;
        Ok((0..self.size).all(|x| self.holds(0, &[x, x])))
    }

    pub fn is_irreflexive(&self) -> Result<bool> {
        Ok(!self.has_loop()?)
    }

    /// Classes of the least equivalence relation containing `ρ`.
    pub fn components(&self) -> Result<Partition> {
        let pairs = self.binary_pairs("components")?;
        let mut parent: Vec<usize> = (0..self.size).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for t in pairs {
            let (a, b) = (find(&mut parent, t[0]), find(&mut parent, t[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut blocks: BTreeMap<usize, BitSet> = BTreeMap::new();
        for x in 0..self.size {
            let r = find(&mut parent, x);
            blocks.entry(r).or_default().insert(x);
        }
        Ok(Partition::from_blocks(blocks.into_values().collect()))
    }

    pub fn is_connected(&self) -> Result<bool> {
        Ok(self.components()?.len() == 1)
    }

    /// Classes of elements with the same unary membership pattern.
    pub fn unary_classes(&self) -> Result<Partition> {
        if !self.language.is_unary() {
            return invalid(format!(
                "unary classes need a unary language, got arities {:?}",
                self.language.arities()
            ));
        }
        let mut by_pattern: BTreeMap<Vec<bool>, BitSet> = BTreeMap::new();
        for x in 0..self.size {
            let pattern = (0..self.language.symbol_count())
                .map(|i| self.holds(i, &[x]))
                .collect();
            by_pattern.entry(pattern).or_default().insert(x);
        }
        Ok(Partition::from_blocks(by_pattern.into_values().collect()))
    }

    /// A connected relation with a loop and the same self-embeddings.
    ///
    /// Connected irreflexive relations are reflexified; disconnected ones
    /// are complemented (the complement is then connected) and reflexified
    /// if the complement has no loop.
    pub fn normalize_to_int_star(&self) -> Result<Self> {
        let connected = self.is_connected()?;
        let looped = self.has_loop()?;
        match (connected, looped) {
            (true, true) => Ok(self.clone()),
            (true, false) => self.reflexify(),
            (false, _) => {
                let c = self.complement()?;
                if !c.is_connected()? {
                    return Err(crate::Error::InvariantViolation(
                        "neither the relation nor its complement is connected".into(),
                    ));
                }
                if c.has_loop()? {
                    Ok(c)
                } else {
                    c.reflexify()
                }
            }
        }
    }

    /// Connected and carrying at least one loop.
    pub fn is_int_star(&self) -> Result<bool> {
        Ok(self.is_connected()? && self.has_loop()?)
    }
}

/// An induced substructure together with the original label of each new element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substructure {
    pub structure: Structure,
    /// `labels[new] = old`.
    pub labels: Vec<usize>,
}

/// Disjoint union of connected binary structures, with its component blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointUnion {
    pub structure: Structure,
    pub blocks: Partition,
    /// Offset of each part inside the union's domain.
    pub offsets: Vec<usize>,
}

/// Places `parts` side by side, shifting each part past the previous ones.
pub fn disjoint_union(parts: &[Structure]) -> Result<DisjointUnion> {
    if parts.is_empty() {
        return invalid("disjoint union of no parts");
    }
    let mut pairs = Vec::new();
    let mut blocks = Vec::new();
    let mut offsets = Vec::new();
    let mut offset = 0;
    for (i, p) in parts.iter().enumerate() {
        let rel = p.binary_pairs("disjoint union")?;
        if !p.is_connected()? {
            return invalid(format!("part {i} is not connected"));
        }
        pairs.extend(rel.iter().map(|t| vec![t[0] + offset, t[1] + offset]));
        blocks.push((offset..offset + p.size).collect());
        offsets.push(offset);
        offset += p.size;
    }
    let structure = Structure::new(Language::binary(), offset, vec![pairs])?;
    Ok(DisjointUnion {
        structure,
        blocks: Partition::from_blocks(blocks),
        offsets,
    })
}

/// A partition of a domain into non-empty blocks, ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    blocks: Vec<BitSet>,
}

impl Partition {
    fn from_blocks(mut blocks: Vec<BitSet>) -> Self {
        blocks.sort_by_key(|b| b.iter().next());
        Self { blocks }
    }

    /// Validates that `blocks` partition `{0, .., n-1}`.
    pub fn new(n: usize, blocks: Vec<BitSet>) -> Result<Self> {
        let mut seen = BitSet::new();
        for b in &blocks {
            if b.is_empty() {
                return invalid("partition blocks are non-empty");
            }
            if b.intersects(&seen) {
                return invalid("partition blocks overlap");
            }
            seen = seen.union(b);
        }
        if seen != BitSet::full(n) {
            return invalid("partition blocks do not cover the domain");
        }
        Ok(Self::from_blocks(blocks))
    }

    pub fn blocks(&self) -> &[BitSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(x))
    }
}

/// A total injective map between two finite domains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InjectionMap {
    source_size: usize,
    target_size: usize,
    assignment: Vec<usize>,
}

impl InjectionMap {
    pub fn new(source_size: usize, target_size: usize, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source_size {
            return invalid(format!(
                "assignment has {} entries for a source of size {source_size}",
                assignment.len()
            ));
        }
        let mut seen = BitSet::new();
        for &y in &assignment {
            if y >= target_size {
                return invalid(format!("target {y} out of range for size {target_size}"));
            }
            if seen.contains(y) {
                return invalid(format!("target {y} is hit twice"));
            }
            seen.insert(y);
        }
        Ok(Self {
            source_size,
            target_size,
            assignment,
        })
    }

    pub(crate) fn new_unchecked(source_size: usize, target_size: usize, assignment: Vec<usize>) -> Self {
        debug_assert_eq!(assignment.len(), source_size);
        Self {
            source_size,
            target_size,
            assignment,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new_unchecked(n, n, (0..n).collect())
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn image(&self) -> BitSet {
        self.assignment.iter().copied().collect()
    }

    /// Image of a subset of the source.
    pub fn image_of(&self, set: &BitSet) -> BitSet {
        set.iter().map(|x| self.assignment[x]).collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.source_size == self.target_size
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &InjectionMap) -> Result<InjectionMap> {
        if inner.target_size != self.source_size {
            return invalid("composition of maps with mismatched domains");
        }
        Ok(Self::new_unchecked(
            inner.source_size,
            self.target_size,
            inner.assignment.iter().map(|&x| self.assignment[x]).collect(),
        ))
    }

    /// Partial inverse defined on the image.
    pub fn preimage(&self, y: usize) -> Option<usize> {
        self.assignment.iter().position(|&v| v == y)
    }
}

fn check_compatible(f: &InjectionMap, x: &Structure, y: &Structure) -> Result<()> {
    if x.language != y.language {
        return invalid("structures have different languages");
    }
    if f.source_size != x.size || f.target_size != y.size {
        return invalid(format!(
            "map {}->{} does not match structure sizes {}->{}",
            f.source_size, f.target_size, x.size, y.size
        ));
    }
    Ok(())
}

/// Checks the preservation biconditional on every tuple over the source domain.
pub fn is_embedding(f: &InjectionMap, x: &Structure, y: &Structure) -> Result<bool> {
    check_compatible(f, x, y)?;
    for (i, &arity) in x.language.arities().iter().enumerate() {
        let space = tuple_space(x.size, arity).expect("checked on construction");
        for code in 0..space {
            let t = decode(code, arity, x.size);
            let image: Tuple = t.iter().map(|&v| f.assignment[v]).collect();
            if x.holds(i, &t) != y.holds(i, &image) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
