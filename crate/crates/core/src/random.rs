//! Seeded generators for random test instances.
//!
//! [`rng`] derives an independent stream per sample index, so a sample can
//! be reproduced from `(seed, index)` regardless of how work is split.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::orders::FinitePoset;
use crate::structure::{InjectionMap, Language, Structure};

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Each pair `i < j` becomes `i ≤ j` with probability 1/2, then closure.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize) -> FinitePoset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(0.5) {
                pairs.push((i, j));
            }
        }
    }
    FinitePoset::from_pairs(n, &pairs).expect("pairs respect the natural order")
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn random_injection<R: Rng>(rng: &mut R, m: usize, n: usize) -> InjectionMap {
    let mut targets = random_permutation(rng, n);
    targets.truncate(m);
    InjectionMap::new(m, n, targets).expect("m ≤ n")
}

/// Every tuple present independently with probability `density`.
pub fn random_structure<R: Rng>(rng: &mut R, language: &Language, n: usize, density: f64) -> Structure {
    let rels = language
        .arities()
        .iter()
        .map(|&a| {
            let space = n.pow(a as u32);
            (0..space)
                .filter(|_| rng.random_bool(density))
                .map(|mut code| {
                    let mut t = vec![0; a];
                    for slot in t.iter_mut().rev() {
                        *slot = code % n;
                        code /= n;
                    }
                    t
                })
                .collect()
        })
        .collect();
    Structure::new(language.clone(), n, rels).expect("generated tuples are in range")
}

/// A uniformly random connected binary relation, by rejection.
pub fn random_connected_binary<R: Rng>(rng: &mut R, n: usize) -> Structure {
    loop {
        let s = random_structure(rng, &Language::binary(), n, 0.5);
        if s.is_connected().expect("binary") {
            return s;
        }
    }
}
