//! On-disk corpus cache.
//!
//! One file per (language, size, canonicalization) key. The body lists
//! `index multiplicity` per line and the header carries its sha256; a file
//! whose key or hash does not match is regenerated.

use std::fs;
use std::path::{Path, PathBuf};

use copieslab_core::corpus::{generate_corpus, interpretation};
use copieslab_core::{Corpus, Language, Result};
use sha2::{Digest, Sha256};

const MAGIC: &str = "# copieslab corpus cache v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
    Regenerated,
}

fn key(language: &Language, size: usize, up_to_iso: bool) -> String {
    let arities: Vec<String> = language.arities().iter().map(|a| a.to_string()).collect();
    format!("arities={} size={size} up_to_iso={up_to_iso}", arities.join(","))
}

fn file_name(language: &Language, size: usize, up_to_iso: bool) -> String {
    let arities: Vec<String> = language.arities().iter().map(|a| a.to_string()).collect();
    let tag = if up_to_iso { "iso" } else { "labelled" };
    format!("corpus-{}-n{size}-{tag}.txt", arities.join("_"))
}

fn body(corpus: &Corpus) -> String {
    corpus
        .indices
        .iter()
        .zip(&corpus.multiplicities)
        .map(|(i, m)| format!("{i} {m}\n"))
        .collect()
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn render(corpus: &Corpus) -> String {
    let body = body(corpus);
    format!(
        "{MAGIC}\n# key {}\n# sha256 {}\n{body}",
        key(&corpus.language, corpus.size, corpus.up_to_iso),
        sha256_hex(&body)
    )
}

/// Rebuilds a corpus from cached text, or `None` if anything is off.
fn load(text: &str, language: &Language, size: usize, up_to_iso: bool) -> Option<Corpus> {
    let mut lines = text.split_inclusive('\n');
    if lines.next()?.trim_end() != MAGIC {
        return None;
    }
    let k = lines.next()?.trim_end().strip_prefix("# key ")?;
    if k != key(language, size, up_to_iso) {
        return None;
    }
    let hash = lines.next()?.trim_end().strip_prefix("# sha256 ")?.to_string();
    let body: String = lines.collect();
    if sha256_hex(&body) != hash {
        return None;
    }
    let mut corpus = Corpus {
        language: language.clone(),
        size,
        up_to_iso,
        interpretations: Vec::new(),
        indices: Vec::new(),
        multiplicities: Vec::new(),
    };
    for line in body.lines() {
        let mut it = line.split_whitespace();
        let index: u64 = it.next()?.parse().ok()?;
        let mult: u64 = it.next()?.parse().ok()?;
        if it.next().is_some() || corpus.indices.last().is_some_and(|&last| last >= index) {
            return None;
        }
        corpus.interpretations.push(interpretation(language, size, index).ok()?);
        corpus.indices.push(index);
        corpus.multiplicities.push(mult);
    }
    Some(corpus)
}

pub struct CorpusCache {
    dir: Option<PathBuf>,
}

impl CorpusCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    pub fn path_for(dir: &Path, language: &Language, size: usize, up_to_iso: bool) -> PathBuf {
        dir.join(file_name(language, size, up_to_iso))
    }

    /// The corpus for the key, from disk when a valid entry exists.
    pub fn get(&self, language: &Language, size: usize, up_to_iso: bool) -> Result<(Corpus, CacheStatus)> {
        let Some(dir) = &self.dir else {
            return Ok((generate_corpus(language, size, up_to_iso)?, CacheStatus::Disabled));
        };
        let path = Self::path_for(dir, language, size, up_to_iso);
        let status = match fs::read_to_string(&path) {
            Ok(text) => match load(&text, language, size, up_to_iso) {
                Some(c) => return Ok((c, CacheStatus::Hit)),
                None => CacheStatus::Regenerated,
            },
            Err(_) => CacheStatus::Miss,
        };
        let corpus = generate_corpus(language, size, up_to_iso)?;
        // A cache that cannot be written is not an error; the corpus is still valid.
        if fs::create_dir_all(dir).is_ok() {
            let _ = fs::write(&path, render(&corpus));
        }
        Ok((corpus, status))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scratch(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("copieslab-cache-{name}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        dir
    }

    #[test]
    fn miss_then_hit() {
        let dir = scratch("hit");
        let cache = CorpusCache::new(Some(dir.clone()));
        let lang = Language::binary();
        let (a, s) = cache.get(&lang, 2, true).unwrap();
        assert_eq!(s, CacheStatus::Miss);
        let (b, s) = cache.get(&lang, 2, true).unwrap();
        assert_eq!(s, CacheStatus::Hit);
        assert_eq!(a, b);
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn corruption_is_regenerated() {
        let dir = scratch("corrupt");
        let cache = CorpusCache::new(Some(dir.clone()));
        let lang = Language::unary(2);
        let (good, _) = cache.get(&lang, 2, false).unwrap();
        let path = CorpusCache::path_for(&dir, &lang, 2, false);
        let text = fs::read_to_string(&path).unwrap().replace("\n3 1\n", "\n3 7\n");
        fs::write(&path, text).unwrap();
        let (again, s) = cache.get(&lang, 2, false).unwrap();
        assert_eq!(s, CacheStatus::Regenerated);
        assert_eq!(again, good);
        assert_eq!(cache.get(&lang, 2, false).unwrap().1, CacheStatus::Hit);
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn wrong_key_is_rejected() {
        let c = generate_corpus(&Language::binary(), 1, false).unwrap();
        let text = render(&c);
        assert!(load(&text, &Language::binary(), 1, false).is_some());
        assert!(load(&text, &Language::binary(), 1, true).is_none());
        assert!(load(&text, &Language::unary(1), 1, false).is_none());
    }
}
