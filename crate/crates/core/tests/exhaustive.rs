use std::collections::BTreeSet;

use copieslab_core::bitset::BitSet;
use copieslab_core::corpus::generate_corpus;
use copieslab_core::oracle::{brute_force_poset_iso, definitional_regular_opens};
use copieslab_core::orders::{
    forcing_equiv_finite, is_quasi_homogeneous, poset_iso, posets_up_to_iso, product,
    regular_open, sep_quotient,
};
use copieslab_core::similarity::{classify_pair, finite_collapse_check};
use copieslab_core::{FinitePoset, Language};

#[test]
fn sq_commutes_with_products_of_pairs() {
    let small: Vec<FinitePoset> = (1..=4).flat_map(posets_up_to_iso).collect();
    for p in &small {
        for q in &small {
            let left = sep_quotient(&product(&[p.clone(), q.clone()]).unwrap()).order;
            let right = product(&[sep_quotient(p).order, sep_quotient(q).order]).unwrap();
            assert!(poset_iso(&left, &right).is_some(), "{p:?} x {q:?}");
        }
    }
}

#[test]
fn sq_commutes_with_products_of_triples() {
    let tiny: Vec<FinitePoset> = (1..=3).flat_map(posets_up_to_iso).collect();
    for a in &tiny {
        for b in &tiny {
            for c in &tiny {
                let factors = [a.clone(), b.clone(), c.clone()];
                let left = sep_quotient(&product(&factors).unwrap()).order;
                let sqs: Vec<FinitePoset> = factors.iter().map(|f| sep_quotient(f).order).collect();
                assert!(poset_iso(&left, &product(&sqs).unwrap()).is_some());
            }
        }
    }
}

#[test]
fn regular_opens_match_down_set_scan() {
    for n in 1..=6 {
        for p in posets_up_to_iso(n) {
            let sq = sep_quotient(&p);
            let ro = regular_open(&p).unwrap();
            let carrier: BTreeSet<BitSet> = ro.elements().iter().cloned().collect();
            assert_eq!(carrier, definitional_regular_opens(&sq.order), "{p:?}");
        }
    }
}

#[test]
fn quasi_homogeneity_means_a_least_element() {
    for n in 1..=6 {
        for p in posets_up_to_iso(n) {
            assert_eq!(is_quasi_homogeneous(&p).unwrap(), p.least().is_some(), "{p:?}");
        }
    }
}

#[test]
fn poset_types_are_pairwise_distinct() {
    for n in 1..=5 {
        let types = posets_up_to_iso(n);
        for (i, p) in types.iter().enumerate() {
            for q in &types[i + 1..] {
                assert!(!brute_force_poset_iso(p, q));
            }
        }
    }
}

#[test]
fn forcing_equivalence_of_ro_algebras() {
    let types: Vec<FinitePoset> = (1..=4).flat_map(posets_up_to_iso).collect();
    for p in &types {
        for q in &types {
            let by_iso = poset_iso(
                &regular_open(p).unwrap().as_poset(),
                &regular_open(q).unwrap().as_poset(),
            )
            .is_some();
            assert_eq!(forcing_equiv_finite(p, q).unwrap(), by_iso);
        }
    }
}

#[test]
fn collapse_on_other_languages() {
    for (lang, size) in [
        (Language::binary(), 2),
        (Language::new(vec![1, 2]).unwrap(), 2),
        (Language::unary(2), 2),
        (Language::new(vec![3]).unwrap(), 2),
    ] {
        let c = generate_corpus(&lang, size, false).unwrap();
        assert!(finite_collapse_check(&c).unwrap().passed(), "{lang:?}");
    }
}

#[test]
fn diagram_soundness_on_mixed_pairs() {
    let c = generate_corpus(&Language::new(vec![1, 2]).unwrap(), 2, false).unwrap();
    for a in &c.interpretations {
        for b in &c.interpretations {
            let v = classify_pair(a, b).unwrap();
            assert!(v.first_violated_edge().is_none());
        }
    }
}
