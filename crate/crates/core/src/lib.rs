//! Embeddings, posets of copies and similarity relations between finite
//! relational structures.
//!
//! The crate is organised around five layers:
//!
//! * [`structure`]: finite structures over `{0, .., n-1}`, substructures,
//!   complements, (ir)reflexification, components and disjoint unions;
//! * [`embeddings`]: backtracking enumeration of embeddings, copy-sets and
//!   the right Green's order of the self-embedding monoid;
//! * [`orders`]: finite posets, separative quotients, regular-open algebras
//!   and homogeneity notions;
//! * [`similarity`]: the twelve similarity relations and their hierarchy;
//! * [`transfer`]: padding binary structures with a rigid digraph into an
//!   arbitrary non-unary language.

pub mod acceptance;
pub mod bitset;
pub mod corpus;
pub mod dot;
pub mod embeddings;
pub mod error;
pub mod format;
pub mod oracle;
pub mod orders;
pub mod random;
pub mod similarity;
pub mod structure;
pub mod transfer;

pub use bitset::BitSet;
pub use corpus::{generate_corpus, Corpus};
pub use error::{Error, Result};
pub use orders::{FinitePoset, FinitePreorder};
pub use similarity::{classify_pair, SimilarityVector};
pub use structure::{InjectionMap, Language, Partition, Structure};
