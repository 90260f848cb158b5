//! The twelve similarity relations on the interpretations of a language
//! over a fixed finite domain, and corpus-level checks of their hierarchy.
//!
//! | k  | `ρ ∼k σ` iff                          |
//! |----|---------------------------------------|
//! | 0  | `ρ = σ`                               |
//! | 1  | `P(ρ) = P(σ)` and `ρ ≅ σ`             |
//! | 2  | `P(ρ) = P(σ)` and `ρ ⇄ σ`             |
//! | 3  | `ρ ≅ σ`                               |
//! | 4  | `P(ρ) = P(σ)`                         |
//! | 5  | `P(ρ) ≅ P(σ)` and `ρ ⇄ σ`             |
//! | 6  | `P(ρ) ≅ P(σ)`                         |
//! | 7  | `sq P(ρ) ≅ sq P(σ)` and `ρ ⇄ σ`       |
//! | 8  | `sq P(ρ) ≅ sq P(σ)`                   |
//! | 9  | `ρ ⇄ σ` (equimorphism)                |
//! | 10 | `ro sq P(ρ) ≅ ro sq P(σ)`             |
//! | 11 | always                                |
//!
//! `P(ρ)` is the poset of copies of a structure in itself. On finite
//! domains relation 10 compares finite regular-open algebras, a stand-in
//! for forcing equivalence.

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::Corpus;
use crate::embeddings::{copies, equimorphic, isomorphic, CopySet};
use crate::error::{invalid, violated, Error, Result};
use crate::orders::{poset_iso, regular_open, sep_quotient, FinitePoset};
use crate::structure::Structure;

pub const RELATION_COUNT: usize = 12;

pub const RELATION_DESCRIPTIONS: [&str; RELATION_COUNT] = [
    "equal",
    "same copies and isomorphic",
    "same copies and equimorphic",
    "isomorphic",
    "same copies",
    "isomorphic copy posets and equimorphic",
    "isomorphic copy posets",
    "isomorphic separative quotients and equimorphic",
    "isomorphic separative quotients",
    "equimorphic",
    "isomorphic regular-open completions",
    "always",
];

/// Noted in every report that involves relation 10.
pub const RO_NOTE: &str = "relation 10 is evaluated as isomorphism of the finite regular-open \
    algebras of the separative quotients of the copy posets (equal atom counts); this is a \
    finite stand-in for forcing equivalence";

/// An implication `lower ⇒ upper` of the hierarchy diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub label: char,
    pub lower: usize,
    pub upper: usize,
}

const fn edge(label: char, lower: usize, upper: usize) -> Edge {
    Edge {
        label,
        lower,
        upper,
    }
}

/// The fifteen implications `a`–`o`; this is the Hasse diagram of the
/// implication order.
pub const HIERARCHY_EDGES: [Edge; 15] = [
    edge('a', 0, 1),
    edge('b', 1, 2),
    edge('c', 1, 3),
    edge('d', 2, 4),
    edge('e', 2, 5),
    edge('f', 3, 5),
    edge('g', 4, 6),
    edge('h', 5, 6),
    edge('i', 5, 7),
    edge('j', 6, 8),
    edge('k', 7, 8),
    edge('l', 7, 9),
    edge('m', 8, 10),
    edge('n', 9, 10),
    edge('o', 10, 11),
];

/// `(p, q, r)`: relation `r` is by definition the conjunction of `p` and `q`.
pub const DEFINITIONAL_MEETS: [(usize, usize, usize); 8] = [
    (2, 3, 1),
    (3, 4, 1),
    (4, 5, 2),
    (4, 7, 2),
    (4, 9, 2),
    (6, 7, 5),
    (6, 9, 5),
    (8, 9, 7),
];

/// The implication order generated by [`HIERARCHY_EDGES`].
pub fn diagram_order() -> FinitePoset {
    let pairs: Vec<(usize, usize)> = HIERARCHY_EDGES.iter().map(|e| (e.lower, e.upper)).collect();
    FinitePoset::from_pairs(RELATION_COUNT, &pairs).expect("the diagram is acyclic")
}

/// Pairs of relations not comparable in the diagram, `p < q`.
pub fn diagram_incomparable_pairs() -> Vec<(usize, usize)> {
    let order = diagram_order();
    let mut out = Vec::new();
    for p in 0..RELATION_COUNT {
        for q in p + 1..RELATION_COUNT {
            if !order.le(p, q) && !order.le(q, p) {
                out.push((p, q));
            }
        }
    }
    out
}

/// Which of the twelve relations hold between two structures.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SimilarityVector {
    pub holds: [bool; RELATION_COUNT],
}

impl SimilarityVector {
    pub fn get(&self, k: usize) -> bool {
        self.holds[k]
    }

    pub fn bits(&self) -> u16 {
        self.holds
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &h)| acc | (u16::from(h) << k))
    }

    pub fn from_bits(bits: u16) -> Self {
        let mut holds = [false; RELATION_COUNT];
        for (k, h) in holds.iter_mut().enumerate() {
            *h = bits >> k & 1 == 1;
        }
        Self { holds }
    }

    /// First diagram edge whose lower relation holds but upper fails.
    pub fn first_violated_edge(&self) -> Option<Edge> {
        HIERARCHY_EDGES
            .iter()
            .copied()
            .find(|e| self.holds[e.lower] && !self.holds[e.upper])
    }
}

/// Invariants of a single structure used by the classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureProfile {
    pub structure: Structure,
    pub copies: CopySet,
    pub copies_poset: FinitePoset,
    pub sq: FinitePoset,
    pub ro_atoms: usize,
}

pub fn profile(s: &Structure) -> Result<StructureProfile> {
    let copies = copies(s, s)?;
    let copies_poset = copies.poset();
    if copies_poset.is_atomless() {
        return violated("a non-empty finite copy poset has a minimal element");
    }
    let sq = sep_quotient(&copies_poset).order;
    if sq.size() != 1 {
        return violated(format!(
            "finite copy poset has a separative quotient of size {}",
            sq.size()
        ));
    }
    let ro_atoms = regular_open(&copies_poset)?.atom_count();
    Ok(StructureProfile {
        structure: s.clone(),
        copies,
        copies_poset,
        sq,
        ro_atoms,
    })
}

fn compatible(a: &Structure, b: &Structure) -> Result<()> {
    if a.language() != b.language() {
        return invalid("structures have different languages");
    }
    if a.size() != b.size() {
        return invalid(format!("domains differ: {} and {}", a.size(), b.size()));
    }
    Ok(())
}

/// Evaluates every relation between two profiled structures.
pub fn classify_profiles(a: &StructureProfile, b: &StructureProfile) -> Result<SimilarityVector> {
    compatible(&a.structure, &b.structure)?;
    let mut h = [false; RELATION_COUNT];
    h[0] = a.structure == b.structure;
    h[3] = isomorphic(&a.structure, &b.structure)?;
    h[4] = a.copies == b.copies;
    h[6] = poset_iso(&a.copies_poset, &b.copies_poset).is_some();
    h[8] = poset_iso(&a.sq, &b.sq).is_some();
    h[9] = equimorphic(&a.structure, &b.structure)?;
    h[10] = a.ro_atoms == b.ro_atoms;
    h[11] = true;
    h[1] = h[4] && h[3];
    h[2] = h[4] && h[9];
    h[5] = h[6] && h[9];
    h[7] = h[8] && h[9];
    let v = SimilarityVector { holds: h };
    if let Some(e) = v.first_violated_edge() {
        return violated(format!(
            "edge {}: relation {} holds but {} fails",
            e.label, e.lower, e.upper
        ));
    }
    Ok(v)
}

pub fn classify_pair(rho: &Structure, sigma: &Structure) -> Result<SimilarityVector> {
    compatible(rho, sigma)?;
    classify_profiles(&profile(rho)?, &profile(sigma)?)
}

/// Largest corpus accepted for all-pairs classification.
pub const MAX_GRID_INTERPRETATIONS: usize = 1024;

/// Classification of every ordered pair of a corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairGrid {
    n: usize,
    bits: Vec<u16>,
}

impl PairGrid {
    pub fn of_corpus(corpus: &Corpus) -> Result<Self> {
        let n = corpus.len();
        if n > MAX_GRID_INTERPRETATIONS {
            return Err(Error::UnsupportedSize {
                what: "corpus for all-pairs classification".into(),
                actual: n,
                limit: MAX_GRID_INTERPRETATIONS,
            });
        }
        let profiles: Vec<StructureProfile> = corpus
            .interpretations
            .par_iter()
            .map(profile)
            .collect::<Result<_>>()?;
        let rows: Vec<Vec<u16>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| classify_profiles(&profiles[i], &profiles[j]).map(|v| v.bits()))
                    .collect::<Result<Vec<u16>>>()
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            n,
            bits: rows.concat(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn vector(&self, i: usize, j: usize) -> SimilarityVector {
        SimilarityVector::from_bits(self.bits[i * self.n + j])
    }

    pub fn holds(&self, i: usize, j: usize, k: usize) -> bool {
        self.bits[i * self.n + j] >> k & 1 == 1
    }

    /// Some pair where `p` holds and `q` fails.
    pub fn separating_pair(&self, p: usize, q: usize) -> Option<(usize, usize)> {
        if p == q {
            return None;
        }
        let mask = (1u16 << p) | (1u16 << q);
        self.bits
            .iter()
            .position(|&b| b & mask == 1 << p)
            .map(|i| (i / self.n, i % self.n))
    }

    pub fn same_relation(&self, p: usize, q: usize) -> bool {
        self.bits.iter().all(|&b| (b >> p & 1) == (b >> q & 1))
    }

    pub fn is_full(&self, k: usize) -> bool {
        self.bits.iter().all(|&b| b >> k & 1 == 1)
    }

    /// Reflexive, symmetric and transitive on the corpus.
    pub fn is_equivalence(&self, k: usize) -> bool {
        let n = self.n;
        let row = |i: usize| -> Vec<bool> { (0..n).map(|j| self.holds(i, j, k)).collect() };
        let rows: Vec<Vec<bool>> = (0..n).map(row).collect();
        (0..n).all(|i| rows[i][i])
            && (0..n).all(|i| {
                (0..n).all(|j| rows[i][j] == rows[j][i] && (!rows[i][j] || rows[i] == rows[j]))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeStatus {
    /// Some pair satisfies the upper relation but not the lower.
    Proper,
    /// The two relations coincide on the corpus.
    Equality,
    /// Fewer than two interpretations.
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeRecord {
    pub edge: Edge,
    pub status: EdgeStatus,
    /// A pair in the upper relation but not the lower.
    pub witness: Option<(usize, usize)>,
    /// A pair in the lower relation but not the upper; never expected.
    pub violation: Option<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IncomparabilityStatus {
    Incomparable,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncomparabilityRecord {
    pub p: usize,
    pub q: usize,
    /// The relation defined as the conjunction of `p` and `q`.
    pub meet: usize,
    pub status: IncomparabilityStatus,
    pub p_not_q: Option<(usize, usize)>,
    pub q_not_p: Option<(usize, usize)>,
    /// The meet is strictly below both relations on the corpus.
    pub meet_strictly_below_both: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HierarchyReport {
    pub arities: Vec<usize>,
    pub size: usize,
    pub interpretations: usize,
    pub edges: Vec<EdgeRecord>,
    /// Relations grouped by coincidence on the corpus.
    pub equality_classes: Vec<Vec<usize>>,
    /// Relations holding for every pair.
    pub full_relations: Vec<usize>,
    pub incomparabilities: Vec<IncomparabilityRecord>,
    /// Relations that failed the equivalence-relation screen.
    pub non_equivalences: Vec<usize>,
    /// Pairs violating a conjunction identity or a diagram edge.
    pub violations: usize,
    pub note: String,
}

impl HierarchyReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.non_equivalences.is_empty()
    }
}

fn equality_classes(grid: &PairGrid) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for k in 0..RELATION_COUNT {
        match classes.iter_mut().find(|c| grid.same_relation(c[0], k)) {
            Some(c) => c.push(k),
            None => classes.push(vec![k]),
        }
    }
    classes
}

fn require_labelled(corpus: &Corpus) -> Result<()> {
    if corpus.up_to_iso {
        return invalid("relations 0 and 4 need the labelled corpus, not orbit representatives");
    }
    Ok(())
}

/// Checks every edge of the diagram on every pair of the corpus.
pub fn verify_hierarchy(corpus: &Corpus) -> Result<HierarchyReport> {
    require_labelled(corpus)?;
    let grid = PairGrid::of_corpus(corpus)?;
    Ok(hierarchy_from_grid(corpus, &grid))
}

pub fn hierarchy_from_grid(corpus: &Corpus, grid: &PairGrid) -> HierarchyReport {
    let vacuous = grid.len() < 2;
    let mut violations = 0;
    for i in 0..grid.len() {
        for j in 0..grid.len() {
            let v = grid.vector(i, j);
            let h = v.holds;
            let conj_ok = h[1] == (h[4] && h[3])
                && h[2] == (h[4] && h[9])
                && h[5] == (h[6] && h[9])
                && h[7] == (h[8] && h[9])
                && h[11];
            if !conj_ok || v.first_violated_edge().is_some() {
                violations += 1;
            }
        }
    }
    let edges = HIERARCHY_EDGES
        .iter()
        .map(|&e| {
            let witness = grid.separating_pair(e.upper, e.lower);
            let status = if vacuous {
                EdgeStatus::Vacuous
            } else if witness.is_some() {
                EdgeStatus::Proper
            } else {
                EdgeStatus::Equality
            };
            EdgeRecord {
                edge: e,
                status,
                witness,
                violation: grid.separating_pair(e.lower, e.upper),
            }
        })
        .collect();
    let incomparabilities = DEFINITIONAL_MEETS
        .iter()
        .map(|&(p, q, meet)| {
            let p_not_q = grid.separating_pair(p, q);
            let q_not_p = grid.separating_pair(q, p);
            IncomparabilityRecord {
                p,
                q,
                meet,
                status: if p_not_q.is_some() && q_not_p.is_some() {
                    IncomparabilityStatus::Incomparable
                } else {
                    IncomparabilityStatus::Degenerate
                },
                p_not_q,
                q_not_p,
                meet_strictly_below_both: grid.separating_pair(p, meet).is_some()
                    && grid.separating_pair(q, meet).is_some(),
            }
        })
        .collect();
    HierarchyReport {
        arities: corpus.language.arities().to_vec(),
        size: corpus.size,
        interpretations: corpus.len(),
        edges,
        equality_classes: equality_classes(grid),
        full_relations: (0..RELATION_COUNT).filter(|&k| grid.is_full(k)).collect(),
        incomparabilities,
        non_equivalences: (0..RELATION_COUNT).filter(|&k| !grid.is_equivalence(k)).collect(),
        violations,
        note: RO_NOTE.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseCheck {
    pub name: String,
    pub holds: bool,
    /// A pair exhibiting the check, or contradicting it when it fails.
    pub witness: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseReport {
    pub arities: Vec<usize>,
    pub size: usize,
    pub interpretations: usize,
    pub checks: Vec<CollapseCheck>,
    pub hierarchy: HierarchyReport,
}

impl CollapseReport {
    pub fn passed(&self) -> bool {
        self.hierarchy.passed() && self.checks.iter().all(|c| c.holds)
    }
}

pub const EQUALITY_LEVEL: [usize; 1] = [0];
pub const ISOMORPHISM_LEVEL: [usize; 6] = [1, 2, 3, 5, 7, 9];
pub const FULL_LEVEL: [usize; 5] = [4, 6, 8, 10, 11];

/// Confirms the three-level collapse on a labelled corpus with at least
/// two points: equality, then isomorphism, then the full relation.
pub fn finite_collapse_check(corpus: &Corpus) -> Result<CollapseReport> {
    require_labelled(corpus)?;
    if corpus.size < 2 {
        return invalid("the collapse needs a domain of at least two points");
    }
    let grid = PairGrid::of_corpus(corpus)?;
    let mut checks = Vec::new();
    let n = grid.len();
    let equality_fail = (0..n * n)
        .map(|x| (x / n, x % n))
        .find(|&(i, j)| grid.holds(i, j, 0) != (i == j));
    checks.push(CollapseCheck {
        name: "relation 0 is equality".into(),
        holds: equality_fail.is_none(),
        witness: equality_fail,
    });
    for &k in &ISOMORPHISM_LEVEL {
        let fail = grid
            .separating_pair(k, 3)
            .or_else(|| grid.separating_pair(3, k));
        checks.push(CollapseCheck {
            name: format!("relation {k} equals isomorphism"),
            holds: fail.is_none(),
            witness: fail,
        });
    }
    for &k in &FULL_LEVEL {
        let fail = grid.separating_pair(11, k);
        checks.push(CollapseCheck {
            name: format!("relation {k} is the full relation"),
            holds: fail.is_none(),
            witness: fail,
        });
    }
    let strict = grid.separating_pair(1, 0);
    checks.push(CollapseCheck {
        name: "equality is strictly finer than relation 1".into(),
        holds: strict.is_some(),
        witness: strict,
    });
    // the empty and the full interpretation are never isomorphic
    let (empty, full) = (0, n - 1);
    let separated = !grid.holds(empty, full, 3) && grid.holds(empty, full, 11);
    checks.push(CollapseCheck {
        name: "isomorphism is strictly finer than the full relation (empty vs full)".into(),
        holds: separated,
        witness: Some((empty, full)),
    });
    Ok(CollapseReport {
        arities: corpus.language.arities().to_vec(),
        size: corpus.size,
        interpretations: n,
        checks,
        hierarchy: hierarchy_from_grid(corpus, &grid),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::generate_corpus;
    use crate::structure::Language;

    #[test]
    fn diagram_shape() {
        let order = diagram_order();
        assert_eq!(order.covers().len(), 15);
        assert_eq!(order.least(), Some(0));
        assert_eq!(order.greatest(), Some(11));
        let mut expected: Vec<(usize, usize)> =
            DEFINITIONAL_MEETS.iter().map(|&(p, q, _)| (p, q)).collect();
        expected.sort();
        assert_eq!(diagram_incomparable_pairs(), expected);
        for &(p, q, r) in &DEFINITIONAL_MEETS {
            assert!(order.le(r, p) && order.le(r, q));
            // r is the greatest common lower bound in the diagram
            for s in 0..RELATION_COUNT {
                if order.le(s, p) && order.le(s, q) {
                    assert!(order.le(s, r), "{p} {q} {r} {s}");
                }
            }
        }
    }

    #[test]
    fn equal_structures_satisfy_everything() {
        let s = Structure::binary(3, &[(0, 1), (1, 2)]).unwrap();
        let v = classify_pair(&s, &s).unwrap();
        assert!(v.holds.iter().all(|&h| h));
    }

    #[test]
    fn loops_at_different_points() {
        let a = Structure::binary(3, &[(0, 0)]).unwrap();
        let b = Structure::binary(3, &[(1, 1)]).unwrap();
        let v = classify_pair(&a, &b).unwrap();
        assert!(!v.get(0));
        assert!(v.get(3));
        assert!(v.get(4));
    }

    #[test]
    fn mismatched_inputs() {
        let a = Structure::binary(2, &[]).unwrap();
        let b = Structure::binary(3, &[]).unwrap();
        assert!(classify_pair(&a, &b).is_err());
        let u = Structure::unary(2, &[&[0]]).unwrap();
        assert!(classify_pair(&a, &u).is_err());
    }

    #[test]
    fn bits_round_trip() {
        for bits in [0u16, 1, 0b1010_1010_1010, 0xfff] {
            assert_eq!(SimilarityVector::from_bits(bits).bits(), bits);
        }
    }

    #[test]
    fn size_two_binary_collapse() {
        let c = generate_corpus(&Language::binary(), 2, false).unwrap();
        let r = finite_collapse_check(&c).unwrap();
        assert!(r.passed(), "{r:#?}");
        let a = &r.hierarchy.edges[0];
        assert_eq!(a.status, EdgeStatus::Proper);
        assert_eq!(
            r.hierarchy.equality_classes,
            vec![vec![0], vec![1, 2, 3, 5, 7, 9], vec![4, 6, 8, 10, 11]]
        );
    }

    #[test]
    fn one_point_unary() {
        let c = generate_corpus(&Language::unary(1), 1, false).unwrap();
        let r = verify_hierarchy(&c).unwrap();
        assert!(r.passed());
        assert!(r.equality_classes.iter().any(|cl| cl.contains(&0) && cl.contains(&1)));
        assert!(finite_collapse_check(&c).is_err());
    }

    #[test]
    fn orbit_corpus_is_refused() {
        let c = generate_corpus(&Language::binary(), 2, true).unwrap();
        assert!(verify_hierarchy(&c).is_err());
    }
}
