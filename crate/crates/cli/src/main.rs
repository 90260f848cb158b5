mod cache;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use copieslab_core::acceptance::{self, int_star_relations, CRITERIA};
use copieslab_core::corpus::DEFAULT_TUPLE_BUDGET;
use copieslab_core::dot::{hasse_dot, hierarchy_dot};
use copieslab_core::embeddings::{
    automorphisms, copies, enumerate_embeddings, enumerate_isos, green_quotient, EmbeddingSet,
};
use copieslab_core::format::{emit_poset, emit_structure, parse_poset, parse_structures};
use copieslab_core::orders::{
    is_homogeneous, is_quasi_homogeneous, is_separative, is_weakly_homogeneous, poset_iso,
    regular_open, sep_quotient, QUASI_HOMOGENEITY_LIMIT,
};
use copieslab_core::random::{random_permutation, rng};
use copieslab_core::similarity::{
    classify_pair, finite_collapse_check, verify_hierarchy, EdgeStatus, HierarchyReport,
    IncomparabilityStatus, RELATION_COUNT, RELATION_DESCRIPTIONS,
};
use copieslab_core::transfer::{
    find_rigid_digraph, padding_iso_holds, tau, tau_unpadded, transitive_tournament,
    verify_claim_3_23, verify_preservation, RigidWitness,
};
use copieslab_core::{Corpus, Error, FinitePoset, Language, Structure};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use cache::{CacheStatus, CorpusCache};
use report::{Check, Clock, Status};

#[derive(Parser, Serialize)]
#[command(name = "copieslab", version, about = "Embeddings, posets of copies and similarity relations of finite structures")]
struct Cli {
    /// Seed for every sampled check; recorded in the report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Print the JSON report on stdout instead of the text summary.
    #[arg(long, global = true)]
    json: bool,

    /// Write a Graphviz diagram here, for subcommands that draw one.
    #[arg(long, global = true, value_name = "FILE")]
    dot: Option<PathBuf>,

    /// Write the JSON report here.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Directory for cached corpora; caching is off without it.
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Serialize, Clone)]
struct LanguageArgs {
    /// Arities of the symbols, e.g. `2` or `1,2`.
    #[arg(long, alias = "language", default_value = "2")]
    arities: String,
}

impl LanguageArgs {
    fn language(&self) -> Result<Language, Error> {
        parse_arities(&self.arities)
    }
}

#[derive(Args, Serialize, Clone)]
struct CorpusArgs {
    #[command(flatten)]
    language: LanguageArgs,
    /// Domain size.
    #[arg(long, default_value_t = 2)]
    size: usize,
    /// One representative per isomorphism class.
    #[arg(long)]
    up_to_iso: bool,
    /// Cap on the number of tuple positions.
    #[arg(long, default_value_t = DEFAULT_TUPLE_BUDGET)]
    budget: usize,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ThetaKind {
    /// Transitive tournament.
    Tournament,
    /// The least rigid digraph in lexicographic order.
    Lex,
}

#[derive(Args, Serialize, Clone)]
struct TransferArgs {
    #[command(flatten)]
    language: LanguageArgs,
    /// Size of the structures to transfer.
    #[arg(long, default_value_t = 2)]
    lambda: usize,
    /// Size of the rigid witness (default: lambda + 1).
    #[arg(long)]
    theta_size: Option<usize>,
    #[arg(long, value_enum, default_value_t = ThetaKind::Tournament)]
    theta: ThetaKind,
    /// Transfer without a witness (`κ = λ`).
    #[arg(long, conflicts_with_all = ["theta_size"])]
    unpadded: bool,
    /// First structure; with `--sigma`, checks only this pair.
    #[arg(long, requires = "sigma")]
    rho: Option<PathBuf>,
    #[arg(long, requires = "rho")]
    sigma: Option<PathBuf>,
    /// Pairs to sample when the exhaustive grid exceeds `--max-pairs`.
    #[arg(long, default_value_t = 200)]
    samples: u64,
    #[arg(long, default_value_t = 10_000)]
    max_pairs: usize,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "subcommand")]
enum Command {
    /// All embeddings of X into Y.
    Emb { x: PathBuf, y: PathBuf },
    /// All isomorphisms from X onto Y.
    Iso { x: PathBuf, y: PathBuf },
    /// Automorphisms of X.
    Aut { x: PathBuf },
    /// Copies of X inside Y (default Y = X) and their inclusion order.
    Copies { x: PathBuf, y: Option<PathBuf> },
    /// Green's right order on the self-embeddings of X.
    Green { x: PathBuf },
    /// Separative quotient of a poset.
    Sq { poset: PathBuf },
    /// Regular-open algebra of a poset.
    Ro { poset: PathBuf },
    /// Homogeneity properties of a poset.
    Homog { poset: PathBuf },
    /// The twelve similarity relations between two structures.
    Classify {
        /// One file holding two structures, or two files.
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
    },
    /// Implication diagram of the similarity relations over a corpus.
    Hierarchy(CorpusArgs),
    /// The finite collapse of the diagram to three levels.
    Collapse(CorpusArgs),
    /// Enumerate the interpretations of a language on a domain.
    Corpus(CorpusArgs),
    /// A connected irreflexive digraph with only the trivial self-embedding.
    Rigid {
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value_t = ThetaKind::Lex)]
        theta: ThetaKind,
    },
    /// Transfer a binary structure into a language with a non-unary symbol.
    Tau {
        #[arg(long)]
        rho: PathBuf,
        #[command(flatten)]
        language: LanguageArgs,
        #[arg(long)]
        theta_size: Option<usize>,
        #[arg(long, value_enum, default_value_t = ThetaKind::Tournament)]
        theta: ThetaKind,
        #[arg(long, conflicts_with_all = ["theta_size"])]
        unpadded: bool,
    },
    /// Embedding, isomorphism and copy identities across the transfer.
    VerifyClaim(TransferArgs),
    /// Each similarity relation is preserved and reflected by the transfer.
    VerifyPreserve(TransferArgs),
    /// Run the acceptance suite.
    Accept {
        /// Only these criteria.
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u8>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Emb { .. } => "emb",
            Command::Iso { .. } => "iso",
            Command::Aut { .. } => "aut",
            Command::Copies { .. } => "copies",
            Command::Green { .. } => "green",
            Command::Sq { .. } => "sq",
            Command::Ro { .. } => "ro",
            Command::Homog { .. } => "homog",
            Command::Classify { .. } => "classify",
            Command::Hierarchy(_) => "hierarchy",
            Command::Collapse(_) => "collapse",
            Command::Corpus(_) => "corpus",
            Command::Rigid { .. } => "rigid",
            Command::Tau { .. } => "tau",
            Command::VerifyClaim(_) => "verify-claim",
            Command::VerifyPreserve(_) => "verify-preserve",
            Command::Accept { .. } => "accept",
        }
    }
}

/// Errors that end a run before a report exists.
enum Failure {
    /// Bad input: exit status 2.
    Input(String),
    /// An internal invariant broke: exit status 1.
    Internal(String),
}

impl Failure {
    fn at(path: Option<&Path>, e: Error) -> Self {
        let place = path.map(|p| format!("{}:", p.display())).unwrap_or_default();
        match e {
            Error::Parse { line, message } => Failure::Input(format!("{place}{line}: {message}")),
            Error::InvariantViolation(m) => Failure::Internal(format!("invariant violated: {m}")),
            other => match path {
                Some(p) => Failure::Input(format!("{}: {other}", p.display())),
                None => Failure::Input(other.to_string()),
            },
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::at(None, e)
    }
}

type Run<T> = Result<T, Failure>;

fn parse_arities(text: &str) -> Result<Language, Error> {
    let arities = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("arity `{t}` is not a number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Language::new(arities)
}

fn read(path: &Path) -> Run<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_structures(path: &Path) -> Run<Vec<Structure>> {
    parse_structures(&read(path)?).map_err(|e| Failure::at(Some(path), e))
}

fn load_structure(path: &Path) -> Run<Structure> {
    let mut all = load_structures(path)?;
    if all.len() != 1 {
        return Err(Failure::Input(format!(
            "{}: expected one structure, found {}",
            path.display(),
            all.len()
        )));
    }
    Ok(all.remove(0))
}

fn load_poset(path: &Path) -> Run<FinitePoset> {
    parse_poset(&read(path)?).map_err(|e| Failure::at(Some(path), e))
}

/// What a subcommand produced besides its checks.
#[derive(Default)]
struct Outcome {
    checks: Vec<Check>,
    dot: Option<String>,
    /// Text printed verbatim in text mode (structure stanzas and the like).
    text: Option<String>,
}

impl Outcome {
    fn push(&mut self, c: Check) {
        self.checks.push(c);
    }
}

fn maps_json(set: &EmbeddingSet) -> Value {
    json!(set.assignments())
}

fn all_embeddings_check(name: &str, set: &EmbeddingSet, surjective: bool) -> Check {
    let ok = set.maps.iter().all(|f| {
        copieslab_core::structure::is_embedding(f, &set.source, &set.target).unwrap_or(false)
            && (!surjective || f.is_surjective())
    });
    Check::new(name, "embedding-search", Status::from_bool(ok))
        .with_data(json!({ "count": set.len(), "maps": maps_json(set) }))
}

fn labels_of_sets(sets: &[copieslab_core::BitSet]) -> Vec<String> {
    sets.iter().map(|s| format!("{:?}", s.to_vec())).collect()
}

fn run_emb(x: &Path, y: &Path, iso: bool) -> Run<Outcome> {
    let (a, b) = (load_structure(x)?, load_structure(y)?);
    let set = if iso { enumerate_isos(&a, &b)? } else { enumerate_embeddings(&a, &b)? };
    let name = if iso { "isomorphisms" } else { "embeddings" };
    Ok(Outcome {
        checks: vec![all_embeddings_check(name, &set, iso)],
        ..Default::default()
    })
}

fn run_aut(x: &Path) -> Run<Outcome> {
    let a = load_structure(x)?;
    let set = automorphisms(&a);
    Ok(Outcome {
        checks: vec![all_embeddings_check("automorphisms", &set, true)],
        ..Default::default()
    })
}

fn run_copies(x: &Path, y: Option<&Path>) -> Run<Outcome> {
    let a = load_structure(x)?;
    let b = match y {
        Some(p) => load_structure(p)?,
        None => a.clone(),
    };
    let set = copies(&a, &b)?;
    let poset = set.poset();
    let mut out = Outcome::default();
    let subsets: Vec<Vec<usize>> = set.subsets().iter().map(|s| s.to_vec()).collect();
    out.push(
        Check::info("copies", "copy-poset", json!({ "count": set.len(), "copies": subsets }))
            .with_witnesses(vec![emit_poset(&poset)]),
    );
    if y.is_none() {
        out.push(
            Check::new("a finite structure is its only self-copy", "finite-self-copies", Status::from_bool(set.len() == 1))
                .with_data(json!(set.len())),
        );
    }
    out.dot = Some(hasse_dot(&poset, "copies", Some(&labels_of_sets(set.subsets()))));
    Ok(out)
}

fn run_green(x: &Path) -> Run<Outcome> {
    let a = load_structure(x)?;
    let g = green_quotient(&a)?;
    let reversed = g.order.dual();
    let copy_poset = copies(&a, &a)?.poset();
    let mut out = Outcome::default();
    out.push(
        Check::info(
            "green classes",
            "green-order",
            json!({ "embeddings": g.embeddings.len(), "classes": g.classes }),
        )
        .with_witnesses(vec![emit_poset(&g.order)]),
    );
    out.push(
        Check::new(
            "reversed Green order is isomorphic to the copy poset",
            "green-order",
            Status::from_bool(poset_iso(&reversed, &copy_poset).is_some()),
        )
        .with_witnesses(vec![emit_poset(&reversed), emit_poset(&copy_poset)]),
    );
    out.dot = Some(hasse_dot(&g.order, "green", None));
    Ok(out)
}

fn run_sq(path: &Path) -> Run<Outcome> {
    let p = load_poset(path)?;
    let q = sep_quotient(&p);
    let classes: Vec<Vec<usize>> = q.classes.iter().map(|c| c.to_vec()).collect();
    let mut out = Outcome::default();
    out.push(
        Check::info("separative quotient", "separative-quotient", json!({ "size": q.order.size(), "classes": classes, "projection": q.projection }))
            .with_witnesses(vec![emit_poset(&q.order)]),
    );
    out.push(Check::new(
        "quotient is separative",
        "separative-quotient",
        Status::from_bool(is_separative(&q.order)),
    ));
    out.push(Check::new(
        "quotient is idempotent",
        "separative-quotient",
        Status::from_bool(poset_iso(&sep_quotient(&q.order).order, &q.order).is_some()),
    ));
    out.dot = Some(hasse_dot(&q.order, "sq", Some(&labels_of_sets(&q.classes))));
    Ok(out)
}

fn run_ro(path: &Path) -> Run<Outcome> {
    let p = load_poset(path)?;
    let ro = regular_open(&p)?;
    let atoms = ro.atom_count();
    let mut out = Outcome::default();
    let elements: Vec<Vec<usize>> = ro.elements().iter().map(|e| e.to_vec()).collect();
    out.push(
        Check::info("regular open algebra", "regular-open", json!({ "size": ro.len(), "atoms": atoms, "elements": elements }))
            .with_witnesses(vec![emit_poset(ro.base()), emit_poset(&ro.as_poset())]),
    );
    let boolean = atoms < usize::BITS as usize && ro.len() == 1 << atoms;
    out.push(
        Check::new("algebra is Boolean of size 2^atoms", "regular-open", Status::from_bool(boolean))
            .with_data(json!({ "size": ro.len(), "atoms": atoms })),
    );
    out.push(
        Check::new(
            "atoms are the minimal elements of the separative quotient",
            "regular-open",
            Status::from_bool(atoms == ro.base().minimal_elements().len()),
        ),
    );
    out.dot = Some(hasse_dot(&ro.as_poset(), "ro", Some(&labels_of_sets(ro.elements()))));
    Ok(out)
}

fn run_homog(path: &Path) -> Run<Outcome> {
    let p = load_poset(path)?;
    if p.size() > QUASI_HOMOGENEITY_LIMIT {
        return Err(Error::UnsupportedSize {
            what: "poset for the quasi-homogeneity search".into(),
            actual: p.size(),
            limit: QUASI_HOMOGENEITY_LIMIT,
        }
        .into());
    }
    let quasi = is_quasi_homogeneous(&p)?;
    let mut out = Outcome::default();
    out.push(Check::info(
        "homogeneity",
        "homogeneity",
        json!({
            "homogeneous": is_homogeneous(&p),
            "weakly_homogeneous": is_weakly_homogeneous(&p),
            "quasi_homogeneous": quasi,
            "least": p.least(),
        }),
    ));
    out.push(Check::new(
        "quasi-homogeneous iff a least element exists",
        "quasi-homogeneity",
        Status::from_bool(quasi == p.least().is_some()),
    ));
    out.dot = Some(hasse_dot(&p, "poset", None));
    Ok(out)
}

fn vector_json(v: &copieslab_core::SimilarityVector) -> Value {
    let holding: Vec<usize> = (0..RELATION_COUNT).filter(|&k| v.get(k)).collect();
    json!({ "holding": holding, "bits": v.bits() })
}

fn run_classify(files: &[PathBuf]) -> Run<Outcome> {
    let mut all = Vec::new();
    for f in files {
        all.extend(load_structures(f)?);
    }
    if all.len() != 2 {
        return Err(Failure::Input(format!("classify needs two structures, found {}", all.len())));
    }
    let v = classify_pair(&all[0], &all[1])?;
    let mut out = Outcome::default();
    out.push(Check::info("similarity vector", "similarity-relations", vector_json(&v)));
    let bad = v.first_violated_edge();
    out.push(
        Check::new("diagram implications hold", "similarity-diagram", Status::from_bool(bad.is_none()))
            .with_data(bad.map(|e| json!(e)).unwrap_or(Value::Null)),
    );
    Ok(out)
}

fn load_corpus(args: &CorpusArgs, cache: &CorpusCache) -> Run<Corpus> {
    let lang = args.language.language()?;
    let positions = copieslab_core::corpus::tuple_positions(&lang, args.size);
    if positions.is_none_or(|p| p > args.budget) {
        return Err(Error::BudgetExceeded {
            what: format!("corpus for arities {:?} on {} points", lang.arities(), args.size),
            required: positions.map_or(u128::MAX, |p| p as u128),
            cap: args.budget as u128,
        }
        .into());
    }
    let (corpus, status) = cache.get(&lang, args.size, args.up_to_iso)?;
    match status {
        CacheStatus::Disabled => {}
        CacheStatus::Hit => eprintln!("corpus cache: hit"),
        CacheStatus::Miss => eprintln!("corpus cache: miss, stored"),
        CacheStatus::Regenerated => eprintln!("corpus cache: entry failed verification, regenerated"),
    }
    Ok(corpus)
}

fn pair_witness(corpus: &Corpus, pair: Option<(usize, usize)>) -> Vec<String> {
    pair.map(|(i, j)| {
        vec![
            emit_structure(&corpus.interpretations[i]),
            emit_structure(&corpus.interpretations[j]),
        ]
    })
    .unwrap_or_default()
}

fn pair_json(corpus: &Corpus, pair: Option<(usize, usize)>) -> Value {
    match pair {
        Some((i, j)) => json!([corpus.indices[i], corpus.indices[j]]),
        None => Value::Null,
    }
}

fn hierarchy_checks(corpus: &Corpus, h: &HierarchyReport, out: &mut Outcome) {
    for e in &h.edges {
        let status = match e.status {
            EdgeStatus::Proper => "proper",
            EdgeStatus::Equality => "equality",
            EdgeStatus::Vacuous => "vacuous",
        };
        let name = format!("edge {}: ~{} implies ~{}", e.edge.label, e.edge.lower, e.edge.upper);
        let witness = e.violation.or(e.witness);
        out.push(
            Check::new(name, "similarity-diagram", Status::from_bool(e.violation.is_none()))
                .with_data(json!({ "status": status, "witness": pair_json(corpus, e.witness), "violation": pair_json(corpus, e.violation) }))
                .with_witnesses(pair_witness(corpus, witness)),
        );
    }
    for r in &h.incomparabilities {
        let status = match r.status {
            IncomparabilityStatus::Incomparable => "incomparable",
            IncomparabilityStatus::Degenerate => "degenerate",
        };
        out.push(
            Check::info(
                format!("~{} and ~{} (meet ~{})", r.p, r.q, r.meet),
                "meet-incomparability",
                json!({
                    "status": status,
                    "p_not_q": pair_json(corpus, r.p_not_q),
                    "q_not_p": pair_json(corpus, r.q_not_p),
                    "meet_strictly_below_both": r.meet_strictly_below_both,
                }),
            )
            .with_witnesses(pair_witness(corpus, r.p_not_q.or(r.q_not_p))),
        );
    }
    out.push(
        Check::new(
            "every relation is an equivalence",
            "equivalence-screen",
            Status::from_bool(h.non_equivalences.is_empty()),
        )
        .with_data(json!(h.non_equivalences)),
    );
    out.push(
        Check::new("conjunction identities and implications", "similarity-diagram", Status::from_bool(h.violations == 0))
            .with_data(json!({ "violations": h.violations })),
    );
    out.push(Check::info(
        "equality classes",
        "similarity-diagram",
        json!({ "classes": h.equality_classes, "full": h.full_relations, "interpretations": h.interpretations }),
    ));
    out.push(Check::info("relation 10", "regular-open-similarity", json!(h.note)));
    out.dot = Some(hierarchy_dot(&h.equality_classes));
}

fn run_hierarchy(args: &CorpusArgs, cache: &CorpusCache) -> Run<Outcome> {
    let corpus = load_corpus(args, cache)?;
    let h = verify_hierarchy(&corpus)?;
    let mut out = Outcome::default();
    hierarchy_checks(&corpus, &h, &mut out);
    Ok(out)
}

fn run_collapse(args: &CorpusArgs, cache: &CorpusCache) -> Run<Outcome> {
    let corpus = load_corpus(args, cache)?;
    let r = finite_collapse_check(&corpus)?;
    let mut out = Outcome::default();
    for c in &r.checks {
        out.push(
            Check::new(c.name.clone(), "finite-collapse", Status::from_bool(c.holds))
                .with_data(json!({ "pair": pair_json(&corpus, c.witness) }))
                .with_witnesses(pair_witness(&corpus, c.witness)),
        );
    }
    hierarchy_checks(&corpus, &r.hierarchy, &mut out);
    let levels = r.hierarchy.equality_classes.len();
    out.push(
        Check::new("diagram contracts to three levels", "finite-collapse", Status::from_bool(levels == 3))
            .with_data(json!({ "levels": levels })),
    );
    Ok(out)
}

fn run_corpus(args: &CorpusArgs, cache: &CorpusCache) -> Run<Outcome> {
    let corpus = load_corpus(args, cache)?;
    let mut text = String::new();
    for ((s, i), m) in corpus.interpretations.iter().zip(&corpus.indices).zip(&corpus.multiplicities) {
        text.push_str(&format!("# index {i} multiplicity {m}\n"));
        text.push_str(&emit_structure(s));
    }
    let expected_total = 1u128 << copieslab_core::corpus::tuple_positions(&corpus.language, corpus.size).unwrap_or(0);
    let mut out = Outcome::default();
    out.push(Check::info(
        "corpus",
        "structure-corpus",
        json!({
            "arities": corpus.language.arities(),
            "size": corpus.size,
            "up_to_iso": corpus.up_to_iso,
            "interpretations": corpus.len(),
            "total_multiplicity": corpus.total_multiplicity(),
            "content_sha256": cache::sha256_hex(&text),
        }),
    ));
    out.push(
        Check::new(
            "multiplicities sum to the labelled count",
            "structure-corpus",
            Status::from_bool(corpus.total_multiplicity() as u128 == expected_total),
        )
        .with_data(json!({ "expected": expected_total.to_string() })),
    );
    out.text = Some(text);
    Ok(out)
}

fn witness(kind: ThetaKind, m: usize) -> Run<RigidWitness> {
    Ok(match kind {
        ThetaKind::Tournament => transitive_tournament(m)?,
        ThetaKind::Lex => find_rigid_digraph(m)?,
    })
}

fn rigid_checks(w: &RigidWitness, out: &mut Outcome) -> Run<()> {
    out.push(
        Check::new("rigid witness re-verified by brute force", "rigid-witness", Status::from_bool(w.reverify()?))
            .with_data(json!({ "size": w.size(), "self_embeddings": w.certificate().len() }))
            .with_witnesses(vec![emit_structure(w.theta())]),
    );
    Ok(())
}

fn run_rigid(size: usize, kind: ThetaKind) -> Run<Outcome> {
    let w = witness(kind, size)?;
    let mut out = Outcome::default();
    rigid_checks(&w, &mut out)?;
    out.text = Some(emit_structure(w.theta()));
    Ok(out)
}

fn run_tau(rho: &Path, lang: &LanguageArgs, theta_size: Option<usize>, kind: ThetaKind, unpadded: bool) -> Run<Outcome> {
    let r = load_structure(rho)?;
    let language = lang.language()?;
    let mut out = Outcome::default();
    let tr = if unpadded {
        tau_unpadded(&r, &language)?
    } else {
        let w = witness(kind, theta_size.unwrap_or(r.size() + 1))?;
        rigid_checks(&w, &mut out)?;
        tau(&r, &language, &w)?
    };
    let stanza = emit_structure(&tr.tau);
    out.push(
        Check::info(
            "transferred structure",
            "transfer",
            json!({ "lambda": tr.lambda, "kappa": tr.kappa, "i0": tr.i0, "padded": tr.padded }),
        )
        .with_witnesses(vec![stanza.clone()]),
    );
    out.push(Check::new(
        "copies of the transfer are the padded copies",
        "transfer-padding",
        Status::from_bool(padding_iso_holds(&r, &tr)?),
    ));
    out.text = Some(stanza);
    Ok(out)
}

/// The (ρ, σ) pairs a transfer verification runs over, and how they were chosen.
fn transfer_pairs(args: &TransferArgs, seed: u64) -> Run<(Vec<(Structure, Structure)>, Value)> {
    if let (Some(r), Some(s)) = (&args.rho, &args.sigma) {
        return Ok((vec![(load_structure(r)?, load_structure(s)?)], json!({ "mode": "single" })));
    }
    let pool = int_star_relations(args.lambda)?;
    if pool.is_empty() {
        return Err(Failure::Input(format!("no admissible relations on {} points", args.lambda)));
    }
    let grid = pool.len().saturating_mul(pool.len());
    if grid <= args.max_pairs {
        let pairs = pool
            .iter()
            .flat_map(|a| pool.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        return Ok((pairs, json!({ "mode": "exhaustive", "relations": pool.len(), "pairs": grid })));
    }
    let pairs = (0..args.samples)
        .map(|i| {
            let mut r = rng(seed, i);
            let a = pool[r.random_range(0..pool.len())].clone();
            let b = if i % 3 == 0 {
                a.relabel(&random_permutation(&mut r, args.lambda)).expect("permutation")
            } else {
                pool[r.random_range(0..pool.len())].clone()
            };
            (a, b)
        })
        .collect();
    Ok((pairs, json!({ "mode": "sampled", "relations": pool.len(), "pairs": args.samples })))
}

fn transfer_witness(args: &TransferArgs, out: &mut Outcome) -> Run<Option<RigidWitness>> {
    if args.unpadded {
        return Ok(None);
    }
    let w = witness(args.theta, args.theta_size.unwrap_or(args.lambda + 1))?;
    rigid_checks(&w, out)?;
    Ok(Some(w))
}

const SHOWN_FAILURES: usize = 3;

fn run_verify_claim(args: &TransferArgs, seed: u64) -> Run<Outcome> {
    let language = args.language.language()?;
    let mut out = Outcome::default();
    let theta = transfer_witness(args, &mut out)?;
    let (pairs, selection) = transfer_pairs(args, seed)?;
    let reports = pairs
        .par_iter()
        .map(|(a, b)| verify_claim_3_23(a, b, &language, theta.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;
    out.push(Check::info("pairs", "transfer-identities", selection));
    let names: Vec<String> = reports
        .first()
        .map(|r| r.identities.iter().map(|c| c.name.clone()).collect())
        .unwrap_or_default();
    for (k, name) in names.iter().enumerate() {
        let failing: Vec<usize> = (0..reports.len()).filter(|&i| !reports[i].identities[k].holds).collect();
        let witnesses = failing
            .iter()
            .take(SHOWN_FAILURES)
            .flat_map(|&i| [emit_structure(&pairs[i].0), emit_structure(&pairs[i].1)])
            .collect();
        out.push(
            Check::new(name.clone(), "transfer-identities", Status::from_bool(failing.is_empty()))
                .with_data(json!({ "pairs": reports.len(), "failures": failing.len() }))
                .with_witnesses(witnesses),
        );
    }
    if let Some(first) = reports.first() {
        out.push(Check::info(
            "transfer shape",
            "transfer",
            json!({ "lambda": first.lambda, "kappa": first.kappa, "i0": first.i0, "padded": first.padded }),
        ));
    }
    Ok(out)
}

fn run_verify_preserve(args: &TransferArgs, seed: u64) -> Run<Outcome> {
    let language = args.language.language()?;
    let mut out = Outcome::default();
    let theta = transfer_witness(args, &mut out)?;
    let (pairs, selection) = transfer_pairs(args, seed)?;
    let reports = pairs
        .par_iter()
        .map(|(a, b)| verify_preservation(a, b, &language, theta.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;
    out.push(Check::info("pairs", "transfer-preservation", selection));
    for (k, description) in RELATION_DESCRIPTIONS.iter().enumerate() {
        let failing: Vec<usize> = (0..reports.len()).filter(|&i| reports[i].mismatches.contains(&k)).collect();
        let holding = reports.iter().filter(|r| r.original.get(k)).count();
        let witnesses = failing
            .iter()
            .take(SHOWN_FAILURES)
            .flat_map(|&i| [emit_structure(&pairs[i].0), emit_structure(&pairs[i].1)])
            .collect();
        out.push(
            Check::new(format!("~{k} preserved: {description}"), "transfer-preservation", Status::from_bool(failing.is_empty()))
                .with_data(json!({ "pairs": reports.len(), "holding": holding, "failures": failing.len() }))
                .with_witnesses(witnesses),
        );
    }
    Ok(out)
}

fn run_accept(ids: &[u8], seed: u64) -> Run<Outcome> {
    let ids: Vec<u8> = if ids.is_empty() {
        CRITERIA.iter().map(|&(id, _)| id).collect()
    } else {
        ids.to_vec()
    };
    if let Some(bad) = ids.iter().find(|&&id| !CRITERIA.iter().any(|&(c, _)| c == id)) {
        return Err(Failure::Input(format!("no criterion {bad}; criteria are 1 to {}", CRITERIA.len())));
    }
    let mut out = Outcome::default();
    for id in ids {
        let o = acceptance::run_criterion(id, seed);
        out.push(
            Check::new(format!("criterion {}: {}", o.id, o.name), "acceptance", Status::from_bool(o.passed))
                .with_data(json!({ "checked": o.checked, "detail": o.detail })),
        );
    }
    Ok(out)
}

fn dispatch(cli: &Cli, cache: &CorpusCache) -> Run<Outcome> {
    match &cli.command {
        Command::Emb { x, y } => run_emb(x, y, false),
        Command::Iso { x, y } => run_emb(x, y, true),
        Command::Aut { x } => run_aut(x),
        Command::Copies { x, y } => run_copies(x, y.as_deref()),
        Command::Green { x } => run_green(x),
        Command::Sq { poset } => run_sq(poset),
        Command::Ro { poset } => run_ro(poset),
        Command::Homog { poset } => run_homog(poset),
        Command::Classify { files } => run_classify(files),
        Command::Hierarchy(a) => run_hierarchy(a, cache),
        Command::Collapse(a) => run_collapse(a, cache),
        Command::Corpus(a) => run_corpus(a, cache),
        Command::Rigid { size, theta } => run_rigid(*size, *theta),
        Command::Tau { rho, language, theta_size, theta, unpadded } => {
            run_tau(rho, language, *theta_size, *theta, *unpadded)
        }
        Command::VerifyClaim(a) => run_verify_claim(a, cli.seed),
        Command::VerifyPreserve(a) => run_verify_preserve(a, cli.seed),
        Command::Accept { criterion } => run_accept(criterion, cli.seed),
    }
}

fn write_file(path: &Path, text: &str) -> Run<()> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Run<bool> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::Input("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    let clock = Clock::start();
    let cache = CorpusCache::new(cli.cache_dir.clone());
    let outcome = dispatch(cli, &cache)?;
    let config = serde_json::to_value(cli).expect("config serializes");
    let report = clock.finish(cli.command.name(), config, outcome.checks);
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    if let Some(path) = &cli.out {
        write_file(path, &rendered)?;
    }
    match (&cli.dot, &outcome.dot) {
        (Some(path), Some(dot)) => write_file(path, dot)?,
        (Some(_), None) => eprintln!("warning: {} draws no diagram", cli.command.name()),
        _ => {}
    }
    if cli.json {
        print!("{rendered}");
    } else {
        if let Some(text) = &outcome.text {
            print!("{text}");
        }
        print!("{}", report.human());
        let failed = report.checks.iter().filter(|c| c.status == Status::Fail).count();
        if failed > 0 {
            println!("{failed} check(s) failed");
        }
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
