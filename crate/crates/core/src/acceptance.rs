//! The acceptance suite: fifteen exact checks, each comparing a library
//! result against a definition, a brute-force oracle or a known outcome.

use std::collections::BTreeSet;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::corpus::{generate_corpus, Corpus};
use crate::embeddings::{
    assemble_union_embeddings, copies, copies_poset, decompose_embedding, enumerate_embeddings,
    equimorphic, green_quotient, isomorphic, lemma_2_9_iso, preserves_unary_blocks,
};
use crate::error::Result;
use crate::oracle;
use crate::orders::{
    check_square_distinct, is_homogeneous_ba, is_quasi_homogeneous, is_separative,
    lemma_3_20_transfer, poset_iso, posets_up_to_iso, preorder_iso, product, regular_open,
    sep_mod, sep_quotient, witness_sentence, FinitePoset, TransferOutcome,
};
use crate::random::{
    random_connected_binary, random_injection, random_permutation, random_poset,
    random_structure, rng,
};
use crate::similarity::{finite_collapse_check, verify_hierarchy};
use crate::structure::{disjoint_union, is_embedding, InjectionMap, Language, Structure};
use crate::transfer::{
    find_rigid_digraph, padding_iso_holds, tau, transitive_tournament, verify_claim_3_23,
    verify_normalization, verify_preservation, RigidWitness,
};

/// Result of one acceptance criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    /// Number of individual instances examined.
    pub checked: usize,
    pub detail: String,
}

pub const CRITERIA: [(u8, &str); 15] = [
    (1, "finite collapse of the similarity hierarchy"),
    (2, "equality and relation 1 coincide exactly on one-point domains"),
    (3, "reversed Green order matches the self-copy poset"),
    (4, "unary block criterion and trivial self-copies"),
    (5, "equimorphic finite structures are isomorphic"),
    (6, "order toolkit against definitional oracles"),
    (7, "isomorphism passes to sm, sq and ro; sq commutes with products"),
    (8, "quasi-homogeneous posets have quasi-homogeneous sq and homogeneous ro"),
    (9, "surjection transfer on canonical projections"),
    (10, "B+ is not isomorphic to its square"),
    (11, "a binary relation or its complement is connected"),
    (12, "embeddings of disjoint unions assemble from components"),
    (13, "self-copies transport along an embedding"),
    (14, "transfer identities and similarity preservation"),
    (15, "rigid digraph search"),
];

/// Instance counts for the seeded criteria.
pub const RANDOM_POSETS: usize = 1000;
pub const RANDOM_SAMPLES: u64 = 1000;
pub const UNION_INSTANCES: u64 = 200;
pub const TRANSPORT_INSTANCES: u64 = 200;
pub const SAMPLED_TRANSFER_PAIRS: u64 = 60;

/// Tally of instances and the first failure seen.
#[derive(Default)]
struct Tally {
    checked: usize,
    failure: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn finish(self, id: u8, detail: String) -> CriterionOutcome {
        CriterionOutcome {
            id,
            name: name_of(id).into(),
            passed: self.failure.is_none(),
            checked: self.checked,
            detail: self.failure.unwrap_or(detail),
        }
    }
}

fn name_of(id: u8) -> &'static str {
    CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, n)| *n)
        .unwrap_or("unknown criterion")
}

/// Runs one criterion; internal errors are reported as failures.
pub fn run_criterion(id: u8, seed: u64) -> CriterionOutcome {
    let result = match id {
        1 => finite_collapse(),
        2 => equality_on_one_point(),
        3 => green_order(),
        4 => unary_criterion(),
        5 => cantor_schroeder_bernstein(),
        6 => order_oracles(seed),
        7 => isomorphism_chain(seed),
        8 => quasi_homogeneity(),
        9 => projection_transfer(),
        10 => boolean_squares(),
        11 => complement_connectivity(),
        12 => union_assembly(seed),
        13 => copy_transport(seed),
        14 => transfer_identities(seed),
        15 => rigid_search(),
        _ => {
            return CriterionOutcome {
                id,
                name: name_of(id).into(),
                passed: false,
                checked: 0,
                detail: format!("no criterion {id}"),
            }
        }
    };
    result.unwrap_or_else(|e| CriterionOutcome {
        id,
        name: name_of(id).into(),
        passed: false,
        checked: 0,
        detail: format!("error: {e}"),
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, seed)).collect()
}

fn finite_collapse() -> Result<CriterionOutcome> {
    let mut t = Tally::default();
    let mut sizes = Vec::new();
    for (lang, size) in [
        (Language::binary(), 3),
        (Language::unary(1), 2),
        (Language::unary(1), 3),
        (Language::unary(1), 4),
    ] {
        let c = generate_corpus(&lang, size, false)?;
        let r = finite_collapse_check(&c)?;
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
        t.check(r.passed(), || {
            format!("language {:?}, size {size}: failed {failed:?}", lang.arities())
        });
        sizes.push(format!("{:?}x{}: {} pairs", lang.arities(), size, c.len() * c.len()));
    }
    Ok(t.finish(1, format!("three-level collapse on {}", sizes.join(", "))))
}

fn equality_on_one_point() -> Result<CriterionOutcome> {
    let mut t = Tally::default();
    for lang in [Language::unary(1), Language::binary()] {
        for size in [1, 2] {
            let r = verify_hierarchy(&generate_corpus(&lang, size, false)?)?;
            let a = &r.edges[0];
            let coincide = a.witness.is_none() && a.violation.is_none();
            t.check(coincide == (size == 1) && r.passed(), || {
                format!("language {:?}, size {size}: edge a is {:?}", lang.arities(), a.status)
            });
        }
    }
    Ok(t.finish(2, "coincide on size 1, separated on size 2, unary and binary".into()))
}

fn green_order() -> Result<CriterionOutcome> {
    let corpus = generate_corpus(&Language::binary(), 3, false)?;
    let results: Vec<Result<bool>> = corpus
        .interpretations
        .par_iter()
        .map(|x| {
            let g = green_quotient(x)?;
            let p = copies_poset(x, x)?;
            let reversed = g.order.dual();
            Ok(poset_iso(&reversed, &p).is_some() && oracle::brute_force_poset_iso(&reversed, &p))
        })
        .collect();
    let mut t = Tally::default();
    for (i, r) in results.into_iter().enumerate() {
        t.check(r?, || format!("interpretation {i}"));
    }
    Ok(t.finish(3, "all 512 binary interpretations on 3 points".into()))
}

fn unary_criterion() -> Result<CriterionOutcome> {
    let mut t = Tally::default();
    for symbols in [1, 2] {
        for size in 1..=4 {
            let corpus = generate_corpus(&Language::unary(symbols), size, false)?;
            let perms = oracle::permutations(size);
            for (i, x) in corpus.interpretations.iter().enumerate() {
                let mut by_blocks = Vec::new();
                for a in &perms {
                    let f = InjectionMap::new(size, size, a.clone())?;
                    let brute = is_embedding(&f, x, x)?;
                    let blocks = preserves_unary_blocks(&f, x)?;
                    t.check(brute == blocks, || {
                        format!("{symbols} symbols, size {size}, interpretation {i}, map {a:?}")
                    });
                    if blocks {
                        by_blocks.push(f);
                    }
                }
                t.check(enumerate_embeddings(x, x)?.maps == by_blocks, || {
                    format!("{symbols} symbols, size {size}, interpretation {i}: embedding sets differ")
                });
                let own = copies(x, x)?;
                t.check(own.subsets() == [x.domain()], || {
                    format!("{symbols} symbols, size {size}, interpretation {i}: P(X) has {} members", own.len())
                });
            }
        }
    }
    Ok(t.finish(4, "1 and 2 unary symbols, sizes 1 to 4, every permutation".into()))
}

fn cantor_schroeder_bernstein() -> Result<CriterionOutcome> {
    let mut t = Tally::default();
    let languages = [
        Language::unary(1),
        Language::unary(2),
        Language::binary(),
        Language::new(vec![1, 2]).expect("valid"),
    ];
    for lang in &languages {
        for size in 1..=3 {
            // both relations are invariant under relabelling, so orbit representatives suffice
            let c: Corpus = generate_corpus(lang, size, true)?;
            let bad: Option<(usize, usize)> = (0..c.len())
                .into_par_iter()
                .map(|i| -> Result<Option<(usize, usize)>> {
                    for j in i + 1..c.len() {
                        let (x, y) = (&c.interpretations[i], &c.interpretations[j]);
                        if equimorphic(x, y)? && !isomorphic(x, y)? {
                            return Ok(Some((i, j)));
                        }
                        if isomorphic(x, y)? {
                            return Ok(Some((i, j)));
                        }
                    }
                    Ok(None)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .next();
            t.check(bad.is_none(), || {
                format!("language {:?}, size {size}: representatives {bad:?}", lang.arities())
            });
            for x in &c.interpretations {
                t.check(equimorphic(x, x)? && isomorphic(x, x)?, || "reflexivity".into());
            }
        }
    }
    Ok(t.finish(5, "languages [1], [1,1], [2], [1,2] on 1 to 3 points".into()))
}

/// Every check of the order toolkit on one poset.
fn order_oracle_check(p: &FinitePoset) -> Result<Option<String>> {
    if sep_mod(p).matrix() != oracle::definitional_sep_mod(p).as_slice() {
        return Ok(Some("separative modification".into()));
    }
    let sq = sep_quotient(p);
    let (classes, order) = oracle::definitional_sep_quotient(p);
    let lib_classes: Vec<BTreeSet<usize>> =
        sq.classes.iter().map(|c| c.iter().collect()).collect();
    if lib_classes != classes || sq.order != order {
        return Ok(Some("separative quotient".into()));
    }
    if !is_separative(&sq.order) {
        return Ok(Some("quotient is not separative".into()));
    }
    let ro = regular_open(p)?;
    let carrier: BTreeSet<BitSet> = ro.elements().iter().cloned().collect();
    if carrier != oracle::definitional_regular_opens(&sq.order) {
        return Ok(Some("regular-open carrier".into()));
    }
    let minimal_classes: BTreeSet<usize> =
        p.minimal_elements().iter().map(|m| sq.projection[m]).collect();
    if ro.len() != 1 << minimal_classes.len() {
        return Ok(Some(format!(
            "|ro| = {} but {} minimal classes",
            ro.len(),
            minimal_classes.len()
        )));
    }
    Ok(None)
}

fn order_oracles(seed: u64) -> Result<CriterionOutcome> {
    let mut t = Tally::default();
    for n in 1..=5 {
        for p in posets_up_to_iso(n) {
            let r = order_oracle_check(&p)?;
            t.check(r.is_none(), || format!("poset {p:?}: {}", r.unwrap_or_default()));
        }
    }
    let random: Vec<(u64, Result<Option<String>>)> = (0..RANDOM_POSETS as u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(seed, i);
            let n = r.random_range(1..=7);
            (i, order_oracle_check(&random_poset(&mut r, n)))
        })
        .collect();
    for (i, r) in random {
        let r = r?;
        t.check(r.is_none(), || format!("random poset {i}: {}", r.unwrap_or_default()));
    }
    Ok(t.finish(6, format!("87 posets up to isomorphism and {RANDOM_POSETS} random posets")))
}

fn isomorphism_chain_sample(seed: u64, i: u64) -> Result<Option<String>> {
    let mut r = rng(seed, i);
    let n = r.random_range(1..=7);
    let p = random_poset(&mut r, n);
    let q = p.relabel(&random_permutation(&mut r, n))?;
    if poset_iso(&p, &q).is_none() {
        return Ok(Some("relabelled copy not recognised as isomorphic".into()));
    }
    if preorder_iso(&sep_mod(&p), &sep_mod(&q)).is_none() {
        return Ok(Some("separative modifications not isomorphic".into()));
    }
    if poset_iso(&sep_quotient(&p).order, &sep_quotient(&q).order).is_none() {
        return Ok(Some("separative quotients not isomorphic".into()));
    }
    if regular_open(&p)?.atom_count() != regular_open(&q)?.atom_count() {
        return Ok(Some("regular-open algebras not isomorphic".into()));
    }
    let factors: Vec<FinitePoset> = if i % 4 == 3 {
        (0..3).map(|_| { let m = r.random_range(1..=3); random_poset(&mut r, m) }).collect()
    } else {
        (0..2).map(|_| { let m = r.random_range(1..=7); random_poset(&mut r, m) }).collect()
    };
    let left = sep_quotient(&product(&factors)?).order;
    let sqs: Vec<FinitePoset> = factors.iter().map(|f| sep_quotient(f).order).collect();
    let right = product(&sqs)?;
    if poset_iso(&left, &right).is_none() {
        return Ok(Some(format!("sq of a product of sizes {:?}", factors.iter().map(|f| f.size()).collect::<Vec<_>>())));
    }
    Ok(None)
}

fn isomorphism_chain(seed: u64) -> Result<CriterionOutcome> {
    let results: Vec<(u64, Result<Option<String>>)> = (0..RANDOM_SAMPLES)
        .into_par_iter()
        .map(|i| (i, isomorphism_chain_sample(seed, i)))
        .collect();
    let mut t = Tally::default();
    for (i, r) in results {
        let r = r?;
        t.check(r.is_none(), || format!("sample {i}: {}", r.unwrap_or_default()));
    }
    Ok(t.finish(7, format!("{RANDOM_SAMPLES} seeded relabellings and products")))
}

fn quasi_homogeneity() -> Result<CriterionOutcome> {
    let mut t = Tally::default();
    let mut quasi = 0;
    for n in 1..=6 {
        for p in posets_up_to_iso(n) {
            if !is_quasi_homogeneous(&p)? {
                continue;
            }
            quasi += 1;
            let sq = sep_quotient(&p).order;
            let ok = is_quasi_homogeneous(&sq)? && is_homogeneous_ba(&regular_open(&p)?);
            t.check(ok, || format!("poset {p:?}"));
        }
    }
    Ok(t.finish(8, format!("{quasi} quasi-homogeneous posets among 405 types on at most 6 points")))
}

fn projection_transfer() -> Result<CriterionOutcome> {
    let mut t = Tally::default();
    for n in 1..=6 {
        for p in posets_up_to_iso(n) {
            let sq = sep_quotient(&p);
            let out = lemma_3_20_transfer(&p, &sq.order, &sq.projection)?;
            let idempotent = poset_iso(&sep_quotient(&sq.order).order, &sq.order).is_some();
            t.check(matches!(out, TransferOutcome::Isomorphism { .. }) && idempotent, || {
                format!("poset {p:?}: {out:?}")
            });
        }
    }
    Ok(t.finish(9, "canonical projections of all 405 poset types on at most 6 points".into()))
}

fn boolean_squares() -> Result<CriterionOutcome> {
    let mut t = Tally::default();
    for atoms in 2..=4 {
        let b = regular_open(&FinitePoset::antichain(atoms))?;
        let plus = b.plus_poset();
        let square = product(&[plus.clone(), plus.clone()])?;
        let sentence = witness_sentence(&plus) == Some(true) && witness_sentence(&square) == Some(false);
        t.check(check_square_distinct(&b)? && sentence, || format!("{atoms} atoms"));
    }
    Ok(t.finish(10, "algebras with 2, 3 and 4 atoms".into()))
}

fn complement_connectivity() -> Result<CriterionOutcome> {
    let mut t = Tally::default();
    for size in [3, 4] {
        let corpus = generate_corpus(&Language::binary(), size, false)?;
        for (i, x) in corpus.interpretations.iter().enumerate() {
            let xc = x.complement()?;
            let (a, b) = (x.is_connected()?, xc.is_connected()?);
            let agree = a == oracle::brute_force_connected(x) && b == oracle::brute_force_connected(&xc);
            t.check((a || b) && agree, || format!("size {size}, relation {i}"));
        }
    }
    Ok(t.finish(11, "all 2^9 relations on 3 points and 2^16 on 4 points".into()))
}

fn random_parts<R: Rng>(r: &mut R) -> Vec<Structure> {
    let k = r.random_range(1..=3);
    (0..k)
        .map(|_| {
            let n = r.random_range(1..=3);
            random_connected_binary(r, n)
        })
        .collect()
}

fn union_sample(seed: u64, i: u64) -> Result<Option<String>> {
    let mut r = rng(seed, i);
    let parts_x = random_parts(&mut r);
    let parts_y = random_parts(&mut r);
    let ux = disjoint_union(&parts_x)?.structure;
    let uy = disjoint_union(&parts_y)?.structure;
    let direct = enumerate_embeddings(&ux, &uy)?.maps;
    let assembled = assemble_union_embeddings(&parts_x, &parts_y)?;
    if direct != assembled {
        return Ok(Some(format!("{} direct vs {} assembled", direct.len(), assembled.len())));
    }
    for f in &direct {
        decompose_embedding(f, &parts_x, &parts_y)?;
    }
    Ok(None)
}

fn union_assembly(seed: u64) -> Result<CriterionOutcome> {
    let results: Vec<(u64, Result<Option<String>>)> = (0..UNION_INSTANCES)
        .into_par_iter()
        .map(|i| (i, union_sample(seed, i)))
        .collect();
    let mut t = Tally::default();
    for (i, r) in results {
        let r = r?;
        t.check(r.is_none(), || format!("instance {i}: {}", r.unwrap_or_default()));
    }
    Ok(t.finish(12, format!("{UNION_INSTANCES} seeded unions of at most 3 parts of size at most 3")))
}

fn transport_sample(seed: u64, i: u64) -> Result<()> {
    let mut r = rng(seed, i);
    let m = r.random_range(1..=3);
    let n = r.random_range(m..=5);
    let x = random_structure(&mut r, &Language::binary(), m, 0.5);
    let base = random_structure(&mut r, &Language::binary(), n, 0.5);
    let h = random_injection(&mut r, m, n);
    // overwrite the image of h with the image of x so that h is an embedding
    let image = h.image();
    let mut pairs: Vec<(usize, usize)> = base
        .tuples(0)
        .iter()
        .filter(|t| !(image.contains(t[0]) && image.contains(t[1])))
        .map(|t| (t[0], t[1]))
        .collect();
    pairs.extend(x.tuples(0).iter().map(|t| (h.apply(t[0]), h.apply(t[1]))));
    let y = Structure::binary(n, &pairs)?;
    lemma_2_9_iso(&h, &x, &y)?;
    Ok(())
}

fn copy_transport(seed: u64) -> Result<CriterionOutcome> {
    let results: Vec<(u64, Result<()>)> = (0..TRANSPORT_INSTANCES)
        .into_par_iter()
        .map(|i| (i, transport_sample(seed, i)))
        .collect();
    let mut t = Tally::default();
    for (i, r) in results {
        let msg = r.as_ref().err().map(|e| e.to_string());
        t.check(r.is_ok(), || format!("instance {i}: {}", msg.unwrap_or_default()));
    }
    Ok(t.finish(13, format!("{TRANSPORT_INSTANCES} seeded embeddings with |X| ≤ 3, |Y| ≤ 5")))
}

/// Connected binary relations with a loop on `lambda` points.
pub fn int_star_relations(lambda: usize) -> Result<Vec<Structure>> {
    let c = generate_corpus(&Language::binary(), lambda, false)?;
    let mut out = Vec::new();
    for s in c.interpretations {
        if s.is_int_star()? {
            out.push(s);
        }
    }
    Ok(out)
}

fn transfer_pair(
    rho: &Structure,
    sigma: &Structure,
    lang: &Language,
    theta: &RigidWitness,
) -> Result<Option<String>> {
    let claim = verify_claim_3_23(rho, sigma, lang, Some(theta))?;
    if !claim.passed() {
        let failed: Vec<&str> = claim.identities.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
        return Ok(Some(format!("identities {failed:?}")));
    }
    let pres = verify_preservation(rho, sigma, lang, Some(theta))?;
    if !pres.passed() {
        return Ok(Some(format!("relations {:?} not preserved", pres.mismatches)));
    }
    Ok(None)
}

fn transfer_identities(seed: u64) -> Result<CriterionOutcome> {
    let languages = [
        Language::binary(),
        Language::new(vec![3]).expect("valid"),
        Language::new(vec![1, 2]).expect("valid"),
    ];
    let mut t = Tally::default();
    let theta3 = transitive_tournament(3)?;
    let lambda2 = int_star_relations(2)?;
    for lang in &languages {
        for rho in &lambda2 {
            let tr = tau(rho, lang, &theta3)?;
            let binary = tau(rho, &Language::binary(), &theta3)?;
            t.check(
                padding_iso_holds(rho, &tr)? && tr.projected_pairs() == binary.projected_pairs(),
                || format!("padding map for {rho:?} in {:?}", lang.arities()),
            );
        }
        let results: Vec<Result<Option<String>>> = lambda2
            .par_iter()
            .flat_map(|rho| lambda2.par_iter().map(move |sigma| (rho, sigma)))
            .map(|(rho, sigma)| transfer_pair(rho, sigma, lang, &theta3))
            .collect();
        for r in results {
            let r = r?;
            t.check(r.is_none(), || format!("λ=2, {:?}: {}", lang.arities(), r.unwrap_or_default()));
        }
    }
    let theta4 = transitive_tournament(4)?;
    let lambda3 = int_star_relations(3)?;
    let sampled: Vec<(u64, Result<Option<String>>)> = (0..SAMPLED_TRANSFER_PAIRS)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(seed, i);
            let rho = &lambda3[r.random_range(0..lambda3.len())];
            let sigma = if i % 3 == 0 {
                rho.relabel(&random_permutation(&mut r, 3)).expect("permutation")
            } else {
                lambda3[r.random_range(0..lambda3.len())].clone()
            };
            let lang = &languages[i as usize % languages.len()];
            let out = transfer_pair(rho, &sigma, lang, &theta4).and_then(|bad| {
                if bad.is_some() {
                    return Ok(bad);
                }
                let tr = tau(rho, lang, &theta4)?;
                Ok((!padding_iso_holds(rho, &tr)?).then(|| "padding map".to_string()))
            });
            (i, out)
        })
        .collect();
    for (i, r) in sampled {
        let r = r?;
        t.check(r.is_none(), || format!("λ=3 sample {i}: {}", r.unwrap_or_default()));
    }
    for (lambda, theta) in [(2, &theta3), (3, &theta4)] {
        let c = generate_corpus(&Language::binary(), lambda, false)?;
        for rho in &c.interpretations {
            let r = verify_normalization(rho, &Language::binary(), theta)?;
            t.check(r.passed(), || format!("normalisation of {rho:?}"));
        }
    }
    Ok(t.finish(
        14,
        format!(
            "{} relations on 2 points exhaustively in 3 languages, {SAMPLED_TRANSFER_PAIRS} sampled pairs on 3 points",
            lambda2.len()
        ),
    ))
}

fn rigid_search() -> Result<CriterionOutcome> {
    let mut t = Tally::default();
    for m in 1..=4 {
        let w = find_rigid_digraph(m)?;
        t.check(w.size() == m && w.reverify()?, || format!("m = {m}"));
    }
    Ok(t.finish(15, "sizes 1 to 4, re-verified over all bijections".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_star_count() {
        assert_eq!(int_star_relations(2).unwrap().len(), 9);
    }

    #[test]
    fn unknown_criterion_fails() {
        assert!(!run_criterion(99, 0).passed);
    }

    #[test]
    fn fast_criteria_pass() {
        for id in [2, 10, 15] {
            let o = run_criterion(id, 0);
            assert!(o.passed, "{o:?}");
        }
    }
}
