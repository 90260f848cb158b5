//! Exhaustive enumeration of the interpretations of a language on a fixed domain.

use crate::error::{invalid, Error, Result};
use crate::structure::{Language, Structure};

/// Default cap on the total number of tuple positions `Σ size^arity`.
pub const DEFAULT_TUPLE_BUDGET: usize = 20;

/// Largest domain for which orbit representatives are computed.
pub const MAX_ORBIT_DOMAIN: usize = 7;

/// All interpretations of a language on `{0, .., size-1}`, or one
/// representative per isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub language: Language,
    pub size: usize,
    pub up_to_iso: bool,
    /// Interpretations in increasing index order.
    pub interpretations: Vec<Structure>,
    /// Enumeration index of each interpretation.
    pub indices: Vec<u64>,
    /// Orbit sizes when `up_to_iso`, all ones otherwise.
    pub multiplicities: Vec<u64>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.interpretations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interpretations.is_empty()
    }

    /// Number of labelled interpretations the corpus stands for.
    pub fn total_multiplicity(&self) -> u64 {
        self.multiplicities.iter().sum()
    }
}

/// Total tuple positions `Σ size^arity`, or `None` on overflow.
pub fn tuple_positions(language: &Language, size: usize) -> Option<usize> {
    language
        .arities()
        .iter()
        .try_fold(0usize, |acc, &a| acc.checked_add(size.checked_pow(a as u32)?))
}

fn positions(language: &Language, size: usize) -> Vec<(usize, usize)> {
    language
        .arities()
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| (0..size.pow(a as u32)).map(move |c| (i, c)))
        .collect()
}

fn encode(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

fn decode(mut code: usize, arity: usize, n: usize) -> Vec<usize> {
    let mut t = vec![0; arity];
    for slot in t.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    t
}

/// The interpretation with enumeration index `index`: bit `k` of the index
/// switches on the `k`-th tuple position, symbols in order and tuples in
/// lexicographic order within a symbol.
pub fn interpretation(language: &Language, size: usize, index: u64) -> Result<Structure> {
    let pos = positions(language, size);
    if pos.len() < 64 && index >> pos.len() != 0 {
        return invalid(format!("index {index} exceeds 2^{}", pos.len()));
    }
    let mut rels = vec![Vec::new(); language.symbol_count()];
    for (k, &(i, c)) in pos.iter().enumerate() {
        if index >> k & 1 == 1 {
            rels[i].push(decode(c, language.arities()[i], size));
        }
    }
    Structure::new(language.clone(), size, rels)
}

/// Enumeration index of `s` within the corpus of its language and size.
pub fn index_of(s: &Structure) -> Result<u64> {
    let pos = positions(s.language(), s.size());
    if pos.len() > 63 {
        return invalid("structure has more than 63 tuple positions");
    }
    let mut offsets = Vec::new();
    let mut acc = 0;
    for &a in s.language().arities() {
        offsets.push(acc);
        acc += s.size().pow(a as u32);
    }
    let mut index = 0u64;
    for (i, &off) in offsets.iter().enumerate() {
        for t in s.tuples(i) {
            index |= 1 << (off + encode(t, s.size()));
        }
    }
    Ok(index)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Enumerates every interpretation of `language` on `size` points, or the
/// least-index member of each isomorphism class when `up_to_iso`.
pub fn generate_corpus(language: &Language, size: usize, up_to_iso: bool) -> Result<Corpus> {
    generate_corpus_with_budget(language, size, up_to_iso, DEFAULT_TUPLE_BUDGET)
}

pub fn generate_corpus_with_budget(
    language: &Language,
    size: usize,
    up_to_iso: bool,
    budget: usize,
) -> Result<Corpus> {
    if size == 0 {
        return invalid("corpus domain must be non-empty");
    }
    let count = tuple_positions(language, size).unwrap_or(usize::MAX);
    if count > budget || count >= 63 {
        return Err(Error::BudgetExceeded {
            what: format!(
                "tuple positions for language {:?} on {size} points (2^{count} interpretations)",
                language.arities()
            ),
            required: count as u128,
            cap: budget as u128,
        });
    }
    if up_to_iso && size > MAX_ORBIT_DOMAIN {
        return Err(Error::UnsupportedSize {
            what: "domain for orbit representatives".into(),
            actual: size,
            limit: MAX_ORBIT_DOMAIN,
        });
    }
    let total = 1u64 << count;
    let (indices, multiplicities) = if up_to_iso {
        orbit_representatives(language, size, total)
    } else {
        ((0..total).collect(), vec![1; total as usize])
    };
    let interpretations = indices
        .iter()
        .map(|&i| interpretation(language, size, i))
        .collect::<Result<_>>()?;
    Ok(Corpus {
        language: language.clone(),
        size,
        up_to_iso,
        interpretations,
        indices,
        multiplicities,
    })
}

fn orbit_representatives(language: &Language, size: usize, total: u64) -> (Vec<u64>, Vec<u64>) {
    let pos = positions(language, size);
    let lookup: std::collections::HashMap<(usize, usize), usize> =
        pos.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    // for each permutation, the image position of every tuple position
    let mut moves: Vec<Vec<usize>> = Vec::new();
    let mut perm: Vec<usize> = (0..size).collect();
    loop {
        moves.push(
            pos.iter()
                .map(|&(i, c)| {
                    let t: Vec<usize> = decode(c, language.arities()[i], size)
                        .into_iter()
                        .map(|x| perm[x])
                        .collect();
                    lookup[&(i, encode(&t, size))]
                })
                .collect(),
        );
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let mut reps = Vec::new();
    let mut mult = Vec::new();
    let mut orbit = Vec::with_capacity(moves.len());
    for index in 0..total {
        orbit.clear();
        let mut least = true;
        for mv in &moves {
            let mut image = 0u64;
            let mut bits = index;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                image |= 1 << mv[k];
                bits &= bits - 1;
            }
            if image < index {
                least = false;
                break;
            }
            orbit.push(image);
        }
        if least {
            orbit.sort_unstable();
            orbit.dedup();
            reps.push(index);
            mult.push(orbit.len() as u64);
        }
    }
    (reps, mult)
}
