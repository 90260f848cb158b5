//! Transfer of binary structures into an arbitrary non-unary language.
//!
//! For a connected binary relation `ρ` on `λ` points with at least one loop,
//! and a rigid connected irreflexive digraph `θ` on more than `λ` points,
//! `τ_ρ` lives on `κ = λ + |θ|` points: the least symbol `i0` of arity
//! `n ≥ 2` is interpreted as `(ρ ∪ θ') × κ^(n-2)`, where `θ'` is `θ` shifted
//! past `λ`, and every other symbol is empty.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::embeddings::{copies, copies_poset, enumerate_embeddings, enumerate_isos, EmbeddingSet};
use crate::error::{invalid, Error, Result};
use crate::oracle::{brute_force_connected, brute_force_embeddings};
use crate::similarity::{classify_pair, SimilarityVector, RELATION_COUNT};
use crate::structure::{InjectionMap, Language, Structure, Tuple};

/// Largest size accepted by [`find_rigid_digraph`].
pub const MAX_RIGID_SEARCH: usize = 7;

/// A connected irreflexive digraph whose only self-embedding is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidWitness {
    theta: Structure,
    certificate: EmbeddingSet,
}

impl RigidWitness {
    /// Checks the three defining properties and keeps the embedding enumeration.
    pub fn certify(theta: Structure) -> Result<Self> {
        if !theta.language().is_binary() {
            return invalid("a rigid witness is a binary structure");
        }
        if !theta.is_connected()? {
            return invalid("witness is not connected");
        }
        if !theta.is_irreflexive()? {
            return invalid("witness has a loop");
        }
        let certificate = enumerate_embeddings(&theta, &theta)?;
        if certificate.maps != [InjectionMap::identity(theta.size())] {
            return invalid(format!(
                "witness has {} self-embeddings, not only the identity",
                certificate.len()
            ));
        }
        Ok(Self { theta, certificate })
    }

    pub fn theta(&self) -> &Structure {
        &self.theta
    }

    pub fn size(&self) -> usize {
        self.theta.size()
    }

    pub fn certificate(&self) -> &EmbeddingSet {
        &self.certificate
    }

    /// Re-checks the certificate with the brute-force injection filter.
    pub fn reverify(&self) -> Result<bool> {
        let maps = brute_force_embeddings(&self.theta, &self.theta)?;
        Ok(maps == [InjectionMap::identity(self.size())]
            && brute_force_connected(&self.theta)
            && (0..self.size()).all(|x| !self.theta.holds(0, &[x, x])))
    }
}

/// The least connected irreflexive embedding-rigid relation on `m` points,
/// comparing relations as sorted pair lists lexicographically.
pub fn find_rigid_digraph(m: usize) -> Result<RigidWitness> {
    if m == 0 {
        return invalid("rigid witnesses have at least one point");
    }
    if m > MAX_RIGID_SEARCH {
        return Err(Error::UnsupportedSize {
            what: "rigid digraph search".into(),
            actual: m,
            limit: MAX_RIGID_SEARCH,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (0..m).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    // preorder over sorted pair lists visits them in lexicographic order
    fn visit(
        m: usize,
        pairs: &[(usize, usize)],
        start: usize,
        chosen: &mut Vec<(usize, usize)>,
    ) -> Result<Option<RigidWitness>> {
        let s = Structure::binary(m, chosen)?;
        if s.is_connected()? && enumerate_embeddings(&s, &s)?.len() == 1 {
            return RigidWitness::certify(s).map(Some);
        }
        for k in start..pairs.len() {
            chosen.push(pairs[k]);
            if let Some(w) = visit(m, pairs, k + 1, chosen)? {
                return Ok(Some(w));
            }
            chosen.pop();
        }
        Ok(None)
    }
    visit(m, &pairs, 0, &mut Vec::new())?
        .ok_or_else(|| Error::NotFound(format!("no rigid connected irreflexive digraph on {m} points")))
}

/// The strict linear order `i < j` on `m` points.
pub fn transitive_tournament(m: usize) -> Result<RigidWitness> {
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .collect();
    RigidWitness::certify(Structure::binary(m, &pairs)?)
}

/// `ρ` is connected and has a loop.
pub fn int_star_membership(rho: &Structure) -> Result<bool> {
    rho.is_int_star()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferResult {
    /// Size of the original structure.
    pub lambda: usize,
    /// Size of the transferred structure.
    pub kappa: usize,
    /// The symbol carrying the padded relation.
    pub i0: usize,
    pub tau: Structure,
    /// Whether a rigid witness was added; `false` on the `λ = κ` path.
    pub padded: bool,
}

impl TransferResult {
    /// Distinct first two coordinates of the `i0` relation.
    pub fn projected_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            self.tau.tuples(self.i0).iter().map(|t| (t[0], t[1])).collect();
        out.dedup();
        out
    }

    /// `κ ∖ λ`, the points added by the witness.
    pub fn added(&self) -> BitSet {
        (self.lambda..self.kappa).collect()
    }

    /// `f ∪ id_{κ∖λ}` for a map `f` between the original structures.
    pub fn extend(&self, f: &InjectionMap) -> InjectionMap {
        let mut a = f.assignment().to_vec();
        a.extend(self.lambda..self.kappa);
        InjectionMap::new(self.kappa, self.kappa, a).expect("extension by the identity is injective")
    }
}

fn check_source(rho: &Structure, language: &Language) -> Result<usize> {
    if !rho.language().is_binary() {
        return invalid("the transferred structure must be binary");
    }
    if !rho.is_int_star()? {
        return invalid("the structure must be connected and contain a loop");
    }
    language
        .first_non_unary()
        .ok_or_else(|| Error::InvalidArgument("the target language is unary".into()))
}

fn build(
    rho: &Structure,
    language: &Language,
    i0: usize,
    extra: &[(usize, usize)],
    kappa: usize,
    padded: bool,
) -> Result<TransferResult> {
    let n = language.arities()[i0];
    let mut base: Vec<(usize, usize)> = rho.tuples(0).iter().map(|t| (t[0], t[1])).collect();
    base.extend_from_slice(extra);
    let pad = kappa.checked_pow(n as u32 - 2).unwrap_or(usize::MAX);
    if base.len().saturating_mul(pad) > crate::structure::MAX_TUPLE_SPACE {
        return invalid(format!("padded relation would hold {}×{pad} tuples", base.len()));
    }
    let mut tuples: Vec<Tuple> = Vec::with_capacity(base.len() * pad);
    for &(a, b) in &base {
        for mut code in 0..pad {
            let mut t = vec![a, b];
            let mut rest = vec![0; n - 2];
            for slot in rest.iter_mut().rev() {
                *slot = code % kappa;
                code /= kappa;
            }
            t.extend(rest);
            tuples.push(t);
        }
    }
    let mut rels = vec![Vec::new(); language.symbol_count()];
    rels[i0] = tuples;
    Ok(TransferResult {
        lambda: rho.size(),
        kappa,
        i0,
        tau: Structure::new(language.clone(), kappa, rels)?,
        padded,
    })
}

/// `τ_ρ` with the witness `θ` placed after the points of `ρ`.
pub fn tau(rho: &Structure, language: &Language, theta: &RigidWitness) -> Result<TransferResult> {
    let i0 = check_source(rho, language)?;
    let lambda = rho.size();
    if theta.size() <= lambda {
        return invalid(format!(
            "witness has {} points but must exceed the {lambda} points of the structure, \
             so that it cannot embed into them",
            theta.size()
        ));
    }
    let shifted: Vec<(usize, usize)> = theta
        .theta()
        .tuples(0)
        .iter()
        .map(|t| (t[0] + lambda, t[1] + lambda))
        .collect();
    build(rho, language, i0, &shifted, lambda + theta.size(), true)
}

/// The `λ = κ` variant: `ρ × κ^(n-2)` with no witness.
pub fn tau_unpadded(rho: &Structure, language: &Language) -> Result<TransferResult> {
    let i0 = check_source(rho, language)?;
    build(rho, language, i0, &[], rho.size(), false)
}

fn transfer(rho: &Structure, language: &Language, theta: Option<&RigidWitness>) -> Result<TransferResult> {
    match theta {
        Some(w) => tau(rho, language, w),
        None => tau_unpadded(rho, language),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    /// Size of the side computed on the transferred structures.
    pub transferred: usize,
    /// Size of the side computed from the original structures.
    pub predicted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub lambda: usize,
    pub kappa: usize,
    pub i0: usize,
    pub padded: bool,
    pub identities: Vec<IdentityCheck>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }
}

fn same_shape(rho: &Structure, sigma: &Structure) -> Result<()> {
    if rho.size() != sigma.size() {
        return invalid(format!("sizes differ: {} and {}", rho.size(), sigma.size()));
    }
    Ok(())
}

fn map_check(name: &str, tr: &TransferResult, lhs: &EmbeddingSet, rhs: &EmbeddingSet) -> IdentityCheck {
    let mut predicted: Vec<InjectionMap> = rhs.maps.iter().map(|f| tr.extend(f)).collect();
    predicted.sort();
    IdentityCheck {
        name: name.into(),
        holds: lhs.maps == predicted,
        transferred: lhs.len(),
        predicted: predicted.len(),
    }
}

fn copy_check(name: &str, tr: &TransferResult, lhs: &[BitSet], rhs: &[BitSet]) -> IdentityCheck {
    let added = tr.added();
    let mut predicted: Vec<BitSet> = rhs.iter().map(|c| c.union(&added)).collect();
    predicted.sort();
    IdentityCheck {
        name: name.into(),
        holds: lhs == predicted.as_slice(),
        transferred: lhs.len(),
        predicted: predicted.len(),
    }
}

/// Checks the six identities relating embeddings, isomorphisms and copies
/// of `τ_ρ, τ_σ` to those of `ρ, σ`. `theta = None` selects the `λ = κ` path.
pub fn verify_claim_3_23(
    rho: &Structure,
    sigma: &Structure,
    language: &Language,
    theta: Option<&RigidWitness>,
) -> Result<ClaimReport> {
    same_shape(rho, sigma)?;
    let tr = transfer(rho, language, theta)?;
    let ts = transfer(sigma, language, theta)?;
    let (a, b) = (&tr.tau, &ts.tau);
    let identities = vec![
        map_check("embeddings between", &tr, &enumerate_embeddings(a, b)?, &enumerate_embeddings(rho, sigma)?),
        map_check("isomorphisms between", &tr, &enumerate_isos(a, b)?, &enumerate_isos(rho, sigma)?),
        copy_check("copies between", &tr, copies(a, b)?.subsets(), copies(rho, sigma)?.subsets()),
        map_check("self-embeddings", &tr, &enumerate_embeddings(a, a)?, &enumerate_embeddings(rho, rho)?),
        map_check("automorphisms", &tr, &enumerate_isos(a, a)?, &enumerate_isos(rho, rho)?),
        copy_check("self-copies", &tr, copies(a, a)?.subsets(), copies(rho, rho)?.subsets()),
    ];
    Ok(ClaimReport {
        lambda: tr.lambda,
        kappa: tr.kappa,
        i0: tr.i0,
        padded: tr.padded,
        identities,
    })
}

/// `C ↦ C ∪ (κ∖λ)` is an inclusion-preserving and -reflecting bijection
/// from the copies of `ρ` onto the copies of `τ_ρ`.
pub fn padding_iso_holds(rho: &Structure, tr: &TransferResult) -> Result<bool> {
    let own = copies(rho, rho)?;
    let target = copies(&tr.tau, &tr.tau)?;
    let added = tr.added();
    let image: Vec<BitSet> = own.subsets().iter().map(|c| c.union(&added)).collect();
    if image.len() != target.len() || !image.iter().all(|c| target.contains(c)) {
        return Ok(false);
    }
    let p = copies_poset(rho, rho)?;
    let q = target.poset();
    let idx: Vec<usize> = image.iter().map(|c| target.index_of(c).unwrap()).collect();
    Ok((0..p.size()).all(|x| (0..p.size()).all(|y| p.le(x, y) == q.le(idx[x], idx[y]))))
}

/// Relations compared directly; the rest are conjunctions of these.
pub const PRESERVED_RELATIONS: [usize; 7] = [0, 3, 4, 6, 8, 9, 10];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub original: SimilarityVector,
    pub transferred: SimilarityVector,
    /// Relations whose truth value changed under the transfer.
    pub mismatches: Vec<usize>,
}

impl PreservationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `ρ ∼k σ ⇔ τ_ρ ∼k τ_σ` for every relation.
pub fn verify_preservation(
    rho: &Structure,
    sigma: &Structure,
    language: &Language,
    theta: Option<&RigidWitness>,
) -> Result<PreservationReport> {
    same_shape(rho, sigma)?;
    let tr = transfer(rho, language, theta)?;
    let ts = transfer(sigma, language, theta)?;
    let original = classify_pair(rho, sigma)?;
    let transferred = classify_pair(&tr.tau, &ts.tau)?;
    let mut mismatches: Vec<usize> = PRESERVED_RELATIONS
        .iter()
        .copied()
        .filter(|&k| original.get(k) != transferred.get(k))
        .collect();
    for k in 0..RELATION_COUNT {
        if !PRESERVED_RELATIONS.contains(&k) && original.get(k) != transferred.get(k) {
            mismatches.push(k);
        }
    }
    mismatches.sort_unstable();
    Ok(PreservationReport {
        original,
        transferred,
        mismatches,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationReport {
    pub normalized: Structure,
    /// `P(ρ') = P(ρ)` as sets.
    pub same_copies: bool,
    /// The copies of `τ_{ρ'}` are the padded copies of `ρ'`, order included.
    pub padding_iso: bool,
    pub transfer: TransferResult,
}

impl NormalizationReport {
    pub fn passed(&self) -> bool {
        self.same_copies && self.padding_iso
    }
}

/// Normalises an arbitrary binary `ρ` into the admissible class, transfers
/// it and compares the copy posets along the way.
pub fn verify_normalization(
    rho: &Structure,
    language: &Language,
    theta: &RigidWitness,
) -> Result<NormalizationReport> {
    let normalized = rho.normalize_to_int_star()?;
    let same_copies = copies(&normalized, &normalized)? == copies(rho, rho)?;
    let transfer = tau(&normalized, language, theta)?;
    let padding_iso = padding_iso_holds(&normalized, &transfer)?;
    Ok(NormalizationReport {
        normalized,
        same_copies,
        padding_iso,
        transfer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho() -> Structure {
        Structure::binary(2, &[(0, 0), (0, 1)]).unwrap()
    }

    #[test]
    fn rigid_search() {
        assert_eq!(find_rigid_digraph(1).unwrap().theta().tuple_count(), 0);
        assert_eq!(find_rigid_digraph(2).unwrap().theta().tuples(0), &[vec![0, 1]]);
        let w3 = find_rigid_digraph(3).unwrap();
        assert_eq!(w3.theta().tuples(0), &[vec![0, 1], vec![0, 2], vec![1, 0]]);
        for m in 1..=4 {
            assert!(find_rigid_digraph(m).unwrap().reverify().unwrap());
        }
        assert!(find_rigid_digraph(0).is_err());
    }

    #[test]
    fn certification_rejects() {
        assert!(RigidWitness::certify(Structure::binary(3, &[(0, 1), (0, 2)]).unwrap()).is_err());
        assert!(RigidWitness::certify(Structure::binary(2, &[(0, 0), (0, 1)]).unwrap()).is_err());
        assert!(RigidWitness::certify(Structure::binary(2, &[]).unwrap()).is_err());
        assert!(transitive_tournament(3).unwrap().reverify().unwrap());
    }

    #[test]
    fn int_star_examples() {
        assert!(int_star_membership(&rho()).unwrap());
        assert!(!int_star_membership(&Structure::binary(2, &[(0, 1)]).unwrap()).unwrap());
        assert!(!int_star_membership(&Structure::binary(2, &[(0, 0), (1, 1)]).unwrap()).unwrap());
    }

    #[test]
    fn tau_examples() {
        let theta = transitive_tournament(3).unwrap();
        let t = tau(&rho(), &Language::binary(), &theta).unwrap();
        assert_eq!(t.kappa, 5);
        let expected = Structure::binary(5, &[(0, 0), (0, 1), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(t.tau, expected);
        let t3 = tau(&rho(), &Language::new(vec![3]).unwrap(), &theta).unwrap();
        assert_eq!(t3.tau.tuple_count(), 25);
        assert_eq!(t3.projected_pairs(), t.projected_pairs());
        let t12 = tau(&rho(), &Language::new(vec![1, 2]).unwrap(), &theta).unwrap();
        assert_eq!(t12.i0, 1);
        assert!(t12.tau.tuples(0).is_empty());
    }

    #[test]
    fn tau_preconditions() {
        let theta = transitive_tournament(3).unwrap();
        assert!(tau(&rho(), &Language::unary(2), &theta).is_err());
        assert!(tau(&rho(), &Language::binary(), &transitive_tournament(2).unwrap()).is_err());
        let chain = Structure::binary(2, &[(0, 1)]).unwrap();
        assert!(tau(&chain, &Language::binary(), &theta).is_err());
    }

    #[test]
    fn claim_on_the_basic_instance() {
        let theta = transitive_tournament(3).unwrap();
        let r = verify_claim_3_23(&rho(), &rho(), &Language::binary(), Some(&theta)).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert_eq!(r.identities[3].transferred, 1);
        assert_eq!(r.identities[5].transferred, 1);
        let unpadded = verify_claim_3_23(&rho(), &rho(), &Language::new(vec![3]).unwrap(), None).unwrap();
        assert!(unpadded.passed());
    }

    #[test]
    fn preservation_of_a_relabelling() {
        let theta = transitive_tournament(3).unwrap();
        let sigma = rho().relabel(&[1, 0]).unwrap();
        let r = verify_preservation(&rho(), &sigma, &Language::binary(), Some(&theta)).unwrap();
        assert!(r.passed());
        assert!(r.original.get(3) && !r.original.get(0));
    }

    #[test]
    fn normalization() {
        let theta = transitive_tournament(3).unwrap();
        let strict = Structure::binary(2, &[(0, 1)]).unwrap();
        let r = verify_normalization(&strict, &Language::binary(), &theta).unwrap();
        assert!(r.passed());
        assert_eq!(r.normalized, strict.reflexify().unwrap());
        let split = Structure::binary(2, &[]).unwrap();
        assert!(verify_normalization(&split, &Language::binary(), &theta).unwrap().passed());
    }
}
