use copieslab_core::embeddings::{copies, copies_by_substructures, enumerate_embeddings, enumerate_isos};
use copieslab_core::format::{emit_poset, emit_structure, parse_poset, parse_structure};
use copieslab_core::oracle::{brute_force_embeddings, brute_force_poset_iso};
use copieslab_core::orders::{is_separative, poset_iso, sep_quotient};
use copieslab_core::similarity::classify_pair;
use copieslab_core::{FinitePoset, Language, Structure};
use proptest::prelude::*;

fn languages() -> Vec<Language> {
    vec![
        Language::unary(1),
        Language::unary(2),
        Language::binary(),
        Language::new(vec![1, 2]).unwrap(),
        Language::new(vec![3]).unwrap(),
    ]
}

fn structure_from_bits(language: &Language, size: usize, bits: &[bool]) -> Structure {
    let mut k = 0;
    let rels = language
        .arities()
        .iter()
        .map(|&a| {
            let space = size.pow(a as u32);
            let mut tuples = Vec::new();
            for mut code in 0..space {
                if bits[k % bits.len()] {
                    let mut t = vec![0; a];
                    for slot in t.iter_mut().rev() {
                        *slot = code % size;
                        code /= size;
                    }
                    tuples.push(t);
                }
                k += 1;
            }
            tuples
        })
        .collect();
    Structure::new(language.clone(), size, rels).unwrap()
}

fn structure(max_size: usize) -> impl Strategy<Value = Structure> {
    (0..languages().len(), 1..=max_size, prop::collection::vec(any::<bool>(), 1..64))
        .prop_map(|(l, size, bits)| structure_from_bits(&languages()[l], size, &bits))
}

fn pair(max_size: usize) -> impl Strategy<Value = (Structure, Structure)> {
    (
        0..languages().len(),
        1..=max_size,
        0..=1usize,
        prop::collection::vec(any::<bool>(), 1..64),
        prop::collection::vec(any::<bool>(), 1..64),
    )
        .prop_map(move |(l, m, extra, a, b)| {
            let lang = &languages()[l];
            let n = (m + extra).min(max_size);
            (structure_from_bits(lang, m, &a), structure_from_bits(lang, n, &b))
        })
}

fn binary(max_size: usize) -> impl Strategy<Value = Structure> {
    (1..=max_size, prop::collection::vec(any::<bool>(), 1..32))
        .prop_map(|(size, bits)| structure_from_bits(&Language::binary(), size, &bits))
}

fn poset(max_size: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max_size, prop::collection::vec(any::<bool>(), 21)).prop_map(|(n, bits)| {
        let mut pairs = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[k] {
                    pairs.push((i, j));
                }
                k += 1;
            }
        }
        FinitePoset::from_pairs(n, &pairs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn embeddings_match_brute_force((x, y) in pair(4)) {
        let fast = enumerate_embeddings(&x, &y).unwrap().maps;
        let slow = brute_force_embeddings(&x, &y).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn isos_are_surjective_embeddings((x, y) in pair(4)) {
        let isos = enumerate_isos(&x, &y).unwrap().maps;
        let expected: Vec<_> = brute_force_embeddings(&x, &y)
            .unwrap()
            .into_iter()
            .filter(|f| f.is_surjective())
            .collect();
        prop_assert_eq!(isos, expected);
    }

    #[test]
    fn copies_match_substructure_characterisation((x, y) in pair(4)) {
        prop_assert_eq!(copies(&x, &y).unwrap(), copies_by_substructures(&x, &y).unwrap());
    }

    #[test]
    fn structure_text_round_trip(s in structure(4)) {
        prop_assert_eq!(parse_structure(&emit_structure(&s)).unwrap(), s);
    }

    #[test]
    fn poset_text_round_trip(p in poset(7)) {
        prop_assert_eq!(parse_poset(&emit_poset(&p)).unwrap(), p);
    }

    #[test]
    fn poset_iso_agrees_with_brute_force(p in poset(5), q in poset(5)) {
        let found = poset_iso(&p, &q);
        prop_assert_eq!(found.is_some(), brute_force_poset_iso(&p, &q));
        if let Some(pi) = found {
            for a in 0..p.size() {
                for b in 0..p.size() {
                    prop_assert_eq!(p.le(a, b), q.le(pi[a], pi[b]));
                }
            }
            let mut inverse = vec![0; pi.len()];
            for (a, &b) in pi.iter().enumerate() {
                inverse[b] = a;
            }
            for a in 0..q.size() {
                for b in 0..q.size() {
                    prop_assert_eq!(q.le(a, b), p.le(inverse[a], inverse[b]));
                }
            }
        }
        prop_assert!(poset_iso(&p, &p).is_some());
    }

    #[test]
    fn separative_quotient_is_idempotent(p in poset(7)) {
        let sq = sep_quotient(&p).order;
        prop_assert!(is_separative(&sq));
        prop_assert!(poset_iso(&sep_quotient(&sq).order, &sq).is_some());
    }

    #[test]
    fn normalisation_lands_in_the_admissible_class(x in binary(4)) {
        let n = x.normalize_to_int_star().unwrap();
        prop_assert!(n.is_int_star().unwrap());
        prop_assert_eq!(
            enumerate_embeddings(&n, &n).unwrap().maps,
            enumerate_embeddings(&x, &x).unwrap().maps
        );
    }

    #[test]
    fn complement_and_reflexification_preserve_self_embeddings(x in binary(4)) {
        let own = enumerate_embeddings(&x, &x).unwrap().maps;
        let c = x.complement().unwrap();
        prop_assert_eq!(&enumerate_embeddings(&c, &c).unwrap().maps, &own);
        if x.is_irreflexive().unwrap() {
            let r = x.reflexify().unwrap();
            prop_assert_eq!(&enumerate_embeddings(&r, &r).unwrap().maps, &own);
        }
    }

    #[test]
    fn classification_is_symmetric((x, y) in pair(3)) {
        prop_assume!(x.size() == y.size());
        prop_assert_eq!(classify_pair(&x, &y).unwrap(), classify_pair(&y, &x).unwrap());
    }
}
