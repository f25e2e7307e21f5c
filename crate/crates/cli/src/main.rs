//! Command-line front end for the packing library: constructions,
//! verification, exact search, and bound computations with reproducible
//! JSON output.
//!
//! Data output (stdout, and any `--out` files) is byte-deterministic for a
//! given invocation; wall-clock runtime goes to stderr only. Exit codes:
//! 0 success, 2 invalid input, 3 cap or budget exceeded, 4 verification
//! failed.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, One, Zero};
use serde_json::{json, Map, Value};

use bnpack::construction::{
    build_incomparable_family, build_ordered_copies, path_family, thin_family, v_conjecture_sum,
    v_family, ConstructionError, PackingFamily,
};
use bnpack::embedding::{
    enumerate_embeddings, height_embedding, is_slim, is_thin, min_hull, Embedding, EmbeddingError,
    EmbeddingKind,
};
use bnpack::io::{kind_name, FamilyDoc, IoError, PosetDoc};
use bnpack::labeling::{hull_interval_labeling, LabelingError};
use bnpack::lattice::{
    chains_meeting_lower_bound, count_chains_meeting, factorial, GroundSet, LatticeError,
    SetFamily, Subset,
};
use bnpack::oracle::{
    bollobas_check, chain_set_pairs, max_incomparable_packing, sharp_chain_bound,
    upper_bound_estimate, verify_packing, ChainBoundEstimate, OracleBudget, OracleError,
    VerificationReport,
};
use bnpack::poset::{ForkDirection, Poset, PosetError};

/// Environment variable overriding the default search-node budget of the
/// exact solver (the `--budget-nodes` flag wins over both).
const NODE_BUDGET_ENV: &str = "BNPACK_NODE_BUDGET";

#[derive(Parser)]
#[command(
    name = "bnpack",
    version,
    about = "Incomparable copies of posets in subset lattices: constructions, exact search, bounds"
)]
struct Cli {
    /// Output format for the run document on stdout.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Human,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindOpt {
    Weak,
    Induced,
}

impl From<KindOpt> for EmbeddingKind {
    fn from(k: KindOpt) -> Self {
        match k {
            KindOpt::Weak => EmbeddingKind::Weak,
            KindOpt::Induced => EmbeddingKind::Induced,
        }
    }
}

#[derive(Args)]
struct PosetArg {
    /// Named poset: single | chain:<len> | v | vk:<k> | lambdak:<k> | diamond.
    #[arg(long, conflicts_with = "poset_file")]
    poset: Option<String>,
    /// JSON file with {"elements": [...], "covers": [[lower, upper], ...]}.
    #[arg(long)]
    poset_file: Option<PathBuf>,
}

impl PosetArg {
    fn load(&self) -> Result<Poset, CliError> {
        match (&self.poset, &self.poset_file) {
            (Some(spec), None) => parse_poset(spec),
            (None, Some(path)) => {
                let doc: PosetDoc = read_json(path)?;
                Ok(doc.to_poset()?)
            }
            _ => Err(CliError::usage("provide exactly one of --poset, --poset-file")),
        }
    }

    fn describe(&self) -> String {
        match (&self.poset, &self.poset_file) {
            (Some(spec), _) => spec.clone(),
            (_, Some(path)) => path.display().to_string(),
            _ => String::new(),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimal convex-hull size over embeddings, certified up to an ambient
    /// ceiling, with the first witness attaining it.
    Tmin {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long, value_enum, default_value = "weak")]
        kind: KindOpt,
        /// Largest ambient searched; defaults to 2·|P|.
        #[arg(long)]
        m_max: Option<u32>,
    },
    /// Whether the poset embeds into the lattice of its own height
    /// (weakly: thin; induced: slim), with witnesses.
    Classify {
        #[command(flatten)]
        poset: PosetArg,
    },
    /// Enumerate embeddings into B_n in deterministic order.
    Embed {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "weak")]
        kind: KindOpt,
        /// Stop after this many embeddings.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Convex hull of an explicit set family.
    Hull {
        #[arg(long)]
        n: u32,
        /// A subset as comma-separated 1-based positions; repeat per set.
        /// An empty string is the empty set.
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
    },
    /// Hull-interval labeling of the minimum-hull witness embedding.
    Label {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long, value_enum, default_value = "weak")]
        kind: KindOpt,
        #[arg(long)]
        m_max: Option<u32>,
    },
    /// Build explicit families of pairwise-incomparable copies.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Re-verify a family file: embedding validity, pairwise image
    /// incomparability, pairwise hull incomparability.
    Verify {
        /// Family JSON file.
        #[arg(long)]
        family: PathBuf,
    },
    /// Exact maximum packing by exhaustive search (small n only).
    Exact {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "weak")]
        kind: KindOpt,
        /// Search-node budget (default 2000000; env BNPACK_NODE_BUDGET).
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Write the witness family to this file.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Chain-counting upper bound on the packing number for hull size t.
    Bound {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        n: u32,
        /// Also scan all convex families for the exact per-hull minimum
        /// (n ≤ 4).
        #[arg(long)]
        sharp: bool,
    },
    /// Count maximal chains meeting an explicit family, against the
    /// guaranteed lower bound for its size.
    Chains {
        #[arg(long)]
        n: u32,
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
    },
    /// Bollobás set-pair inequality on pairs extracted from a family file
    /// (image of the minimum, complement of the image of the maximum).
    Bollobas {
        #[arg(long)]
        family: PathBuf,
    },
    /// Conjectured vs constructed vs exact counts for fork copies.
    ConjectureV {
        #[arg(long)]
        n_max: u32,
        /// Run the exact oracle for n up to this value (default 4).
        #[arg(long, default_value_t = 4)]
        oracle_max: u32,
        /// Fully re-verify constructed families for n up to this value.
        #[arg(long, default_value_t = 12)]
        verify_max: u32,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Block-coded ordered copy system reaching a 1−ε′ density fraction.
    Ordered {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long, value_enum, default_value = "weak")]
        kind: KindOpt,
        /// Accuracy ε′ in (0,1), as p/q or a decimal.
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long, default_value_t = 100_000)]
        max_copies: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Layered incomparable family of density ≥ (1−ε)/t asymptotically.
    Lower {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long, value_enum, default_value = "weak")]
        kind: KindOpt,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long, default_value_t = 100_000)]
        max_copies: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shifted saturated chains: C(n−h, ⌊(n−h)/2⌋) copies of a chain.
    Path {
        #[arg(long)]
        h: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 100_000)]
        max_copies: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shifted copies of a poset that embeds into the lattice of its height.
    Thin {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long, value_enum, default_value = "weak")]
        kind: KindOpt,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 100_000)]
        max_copies: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stacked three-set fork families of the conjectured maximum size.
    VFamily {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 100_000)]
        max_copies: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

// ---------------------------------------------------------------------------
// Error classification

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            message: msg.into(),
            code: 2,
        }
    }

    fn resource(msg: impl Into<String>) -> Self {
        CliError {
            message: msg.into(),
            code: 3,
        }
    }
}

impl From<PosetError> for CliError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::TooLarge { .. } => CliError::resource(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::GroundTooLarge(_) | LatticeError::ChainGroundTooLarge(_) => {
                CliError::resource(e.to_string())
            }
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<EmbeddingError> for CliError {
    fn from(e: EmbeddingError) -> Self {
        match e {
            EmbeddingError::NoEmbedding { .. } => CliError::resource(e.to_string()),
            EmbeddingError::Lattice(inner) => inner.into(),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<LabelingError> for CliError {
    fn from(e: LabelingError) -> Self {
        CliError::resource(e.to_string())
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::BlocksTooWide { .. } | ConstructionError::TooManyCopies { .. } => {
                CliError::resource(e.to_string())
            }
            ConstructionError::Embedding(inner) => inner.into(),
            ConstructionError::Labeling(inner) => inner.into(),
            ConstructionError::Lattice(inner) => inner.into(),
            ConstructionError::Poset(inner) => inner.into(),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::ScaleExceeded { .. }
            | OracleError::TooManyImages { .. }
            | OracleError::NodeBudgetExceeded { .. }
            | OracleError::SharpGroundOutOfRange(_) => CliError::resource(e.to_string()),
            OracleError::Lattice(inner) => inner.into(),
            OracleError::Embedding(inner) => inner.into(),
            OracleError::NoExtremeElements => CliError::usage(e.to_string()),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Poset(inner) => inner.into(),
            IoError::Lattice(inner) => inner.into(),
            IoError::Construction(inner) => inner.into(),
            _ => CliError::usage(e.to_string()),
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing helpers

fn parse_poset(spec: &str) -> Result<Poset, CliError> {
    let named = |s: &str| -> Option<Result<Poset, CliError>> {
        match s {
            "single" => Some(Ok(Poset::singleton())),
            "v" => Some(Ok(Poset::v())),
            "diamond" => Some(Ok(Poset::diamond())),
            _ => None,
        }
    };
    if let Some(p) = named(spec) {
        return p;
    }
    let parse_k = |arg: &str, what: &str| -> Result<usize, CliError> {
        arg.parse::<usize>()
            .map_err(|_| CliError::usage(format!("bad {what} parameter {arg:?}")))
    };
    if let Some(len) = spec.strip_prefix("chain:") {
        return Ok(Poset::chain(parse_k(len, "chain")?)?);
    }
    if let Some(k) = spec.strip_prefix("vk:") {
        return Ok(Poset::fork(parse_k(k, "fork")?, ForkDirection::Up)?);
    }
    if let Some(k) = spec.strip_prefix("lambdak:") {
        return Ok(Poset::fork(parse_k(k, "fork")?, ForkDirection::Down)?);
    }
    Err(CliError::usage(format!(
        "unknown poset {spec:?}; expected single | chain:<len> | v | vk:<k> | lambdak:<k> | diamond"
    )))
}

/// Exact rational from "p/q", a decimal, or an integer literal.
fn parse_ratio(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::usage(format!("cannot parse {s:?} as an exact rational"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| bad())?;
        let den: BigInt = q.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let joined: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
        return Ok(BigRational::new(joined, BigInt::from(10u8).pow(frac.len() as u32)));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

fn parse_set(ground: GroundSet, spec: &str) -> Result<Subset, CliError> {
    let mut indices = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        indices.push(
            part.parse::<u32>()
                .map_err(|_| CliError::usage(format!("bad position {part:?} in --set {spec:?}")))?,
        );
    }
    Ok(Subset::from_indices(ground, &indices)?)
}

fn default_m_max(m_max: Option<u32>, poset: &Poset) -> u32 {
    m_max.unwrap_or(2 * poset.size() as u32)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("cannot parse {}: {e}", path.display())))
}

fn write_family(path: &Path, fam: &PackingFamily) -> Result<(), CliError> {
    let doc = FamilyDoc::from_family(fam);
    let text = serde_json::to_string_pretty(&doc).expect("documents serialize");
    std::fs::write(path, text + "\n")
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// JSON builders

fn ratio_json(r: &BigRational) -> Value {
    if r.denom().is_one() {
        Value::String(r.numer().to_string())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

fn subset_json(s: Subset) -> Value {
    json!(s.indices())
}

fn family_json(f: &SetFamily) -> Value {
    json!(f.members().iter().map(|&s| s.indices()).collect::<Vec<_>>())
}

fn assignment_json(e: &Embedding) -> Value {
    let poset = e.poset();
    Value::Array(
        (0..poset.size())
            .map(|x| {
                json!({
                    "element": poset.label(x),
                    "set": subset_json(e.image_of(x)),
                })
            })
            .collect(),
    )
}

fn report_json(report: &VerificationReport) -> Value {
    json!({
        "copy_count": report.copy_count,
        "invalid_copies": report.invalid_copies,
        "image_failures": report.image_failures,
        "hull_failures": report.hull_failures,
        "pairs_checked": report.pairs_checked,
        "set_comparisons": report.set_comparisons,
        "pass": report.pass,
    })
}

fn run_doc(command: &str, parameters: Value, result: Value) -> Value {
    json!({
        "meta": {
            "command": command,
            "parameters": parameters,
            "version": env!("CARGO_PKG_VERSION"),
        },
        "result": result,
    })
}

/// Render `doc` for the chosen format. The human form is a flat indented
/// listing of the result section — stable, but meant for eyes, not diffs.
fn emit(format: Format, doc: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(doc).expect("serializable")),
        Format::Human => {
            fn walk(prefix: &str, v: &Value) {
                match v {
                    Value::Object(map) => {
                        for (k, v) in map {
                            match v {
                                Value::Object(_) | Value::Array(_) if !is_leaf_array(v) => {
                                    println!("{prefix}{k}:");
                                    walk(&format!("{prefix}  "), v);
                                }
                                _ => println!("{prefix}{k}: {}", compact(v)),
                            }
                        }
                    }
                    Value::Array(items) => {
                        for item in items {
                            match item {
                                Value::Object(_) | Value::Array(_) if !is_leaf_array(item) => {
                                    println!("{prefix}-");
                                    walk(&format!("{prefix}  "), item);
                                }
                                _ => println!("{prefix}- {}", compact(item)),
                            }
                        }
                    }
                    _ => println!("{prefix}{}", compact(v)),
                }
            }
            fn is_leaf_array(v: &Value) -> bool {
                matches!(v, Value::Array(items)
                    if items.iter().all(|i| !matches!(i, Value::Object(_) | Value::Array(_))))
            }
            fn compact(v: &Value) -> String {
                serde_json::to_string(v).expect("serializable")
            }
            walk("", &doc["result"]);
        }
    }
}

// ---------------------------------------------------------------------------
// Command implementations

fn exit_with(code: u8) -> ExitCode {
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = run(&cli);
    eprintln!("runtime_ms {}", started.elapsed().as_millis());
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            exit_with(e.code)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Cmd::Tmin { poset, kind, m_max } => {
            let p = poset.load()?;
            let kind = EmbeddingKind::from(*kind);
            let m_max = default_m_max(*m_max, &p);
            let found = min_hull(&p, kind, m_max)?;
            let doc = run_doc(
                "tmin",
                json!({
                    "poset": poset.describe(),
                    "kind": kind_name(kind),
                    "m_max": m_max,
                }),
                json!({
                    "t": found.value,
                    "ambient_m": found.ambient_m,
                    "searched_m_max": found.searched_m_max,
                    "witness": assignment_json(&found.witness),
                    "hull": family_json(&found.witness.hull()),
                }),
            );
            emit(cli.format, &doc);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Classify { poset } => {
            let p = poset.load()?;
            let weak = height_embedding(&p, EmbeddingKind::Weak);
            let induced = height_embedding(&p, EmbeddingKind::Induced);
            let doc = run_doc(
                "classify",
                json!({ "poset": poset.describe() }),
                json!({
                    "size": p.size(),
                    "height": p.height(),
                    "thin": is_thin(&p),
                    "slim": is_slim(&p),
                    "weak_witness": weak.as_ref().map(assignment_json),
                    "induced_witness": induced.as_ref().map(assignment_json),
                }),
            );
            emit(cli.format, &doc);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Embed {
            poset,
            n,
            kind,
            limit,
        } => {
            let p = poset.load()?;
            let kind = EmbeddingKind::from(*kind);
            let mut stream = enumerate_embeddings(&p, *n, kind)?;
            let mut listed = Vec::new();
            let mut truncated = false;
            match limit {
                Some(cap) => {
                    for e in stream.by_ref().take(*cap) {
                        listed.push(e);
                    }
                    truncated = stream.next().is_some();
                }
                None => listed.extend(stream),
            }
            let doc = run_doc(
                "embed",
                json!({
                    "poset": poset.describe(),
                    "n": n,
                    "kind": kind_name(kind),
                    "limit": limit,
                }),
                json!({
                    "count": listed.len(),
                    "truncated": truncated,
                    "embeddings": listed.iter().map(assignment_json).collect::<Vec<_>>(),
                }),
            );
            emit(cli.format, &doc);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Hull { n, sets } => {
            let ground = GroundSet::new(*n)?;
            let members = sets
                .iter()
                .map(|s| parse_set(ground, s))
                .collect::<Result<Vec<_>, _>>()?;
            let fam = SetFamily::new(ground, members)?;
            let hull = fam.convex_hull()?;
            let doc = run_doc(
                "hull",
                json!({ "n": n, "sets": sets }),
                json!({
                    "family": family_json(&fam),
                    "hull": family_json(&hull),
                    "hull_size": hull.len(),
                }),
            );
            emit(cli.format, &doc);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Label { poset, kind, m_max } => {
            let p = poset.load()?;
            let kind = EmbeddingKind::from(*kind);
            let m_max = default_m_max(*m_max, &p);
            let found = min_hull(&p, kind, m_max)?;
            let labeling = hull_interval_labeling(&found.witness)?;
            let (lo, hi) = labeling.interval();
            let ranks: Vec<Value> = (1..=1u64 << labeling.m())
                .map(|r| {
                    let s = labeling
                        .subset_with_rank(r as u32)
                        .expect("ranks cover the lattice");
                    json!({ "rank": r, "set": subset_json(s) })
                })
                .collect();
            let doc = run_doc(
                "label",
                json!({
                    "poset": poset.describe(),
                    "kind": kind_name(kind),
                    "m_max": m_max,
                }),
                json!({
                    "ambient_m": labeling.m(),
                    "interval": [lo, hi],
                    "witness": assignment_json(&found.witness),
                    "ranks": ranks,
                }),
            );
            emit(cli.format, &doc);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Construct(sub) => run_construct(cli, sub),
        Cmd::Verify { family } => {
            let doc: FamilyDoc = read_json(family)?;
            let fam = doc.to_family()?;
            let report = verify_packing(&fam);
            let pass = report.pass;
            let out = run_doc(
                "verify",
                json!({ "family": family.display().to_string() }),
                report_json(&report),
            );
            emit(cli.format, &out);
            if pass {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(exit_with(4))
            }
        }
        Cmd::Exact {
            poset,
            n,
            kind,
            budget_nodes,
            witness_out,
        } => {
            let p = poset.load()?;
            let kind = EmbeddingKind::from(*kind);
            let mut budget = OracleBudget::default();
            if let Some(nodes) = budget_nodes
                .or_else(|| std::env::var(NODE_BUDGET_ENV).ok().and_then(|v| v.parse().ok()))
            {
                budget.max_nodes = nodes;
            }
            let got = max_incomparable_packing(&p, *n, kind, &budget)?;
            if let Some(path) = witness_out {
                write_family(path, &got.witness)?;
            }
            let doc = run_doc(
                "exact",
                json!({
                    "poset": poset.describe(),
                    "n": n,
                    "kind": kind_name(kind),
                    "max_nodes": budget.max_nodes,
                }),
                json!({
                    "m": got.m,
                    "image_count": got.image_count,
                    "min_hull_value": got.min_hull_value,
                    "upper_bound": got.upper_bound.as_ref().map(|b| b.to_string()),
                    "nodes_explored": got.nodes_explored,
                    "witness": serde_json::to_value(FamilyDoc::from_family(&got.witness))
                        .expect("documents serialize"),
                }),
            );
            emit(cli.format, &doc);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bound { t, n, sharp } => {
            let per_hull = if *n == 0 {
                BigRational::zero()
            } else {
                chains_meeting_lower_bound(*t, u64::from(*n))
            };
            let estimate = upper_bound_estimate(*t, *n);
            let mut result = Map::new();
            result.insert("t".into(), json!(t));
            result.insert("n".into(), json!(n));
            result.insert("per_hull_chain_lower_bound".into(), ratio_json(&per_hull));
            match &estimate {
                ChainBoundEstimate::Bound(b) => {
                    result.insert("bound".into(), Value::String(b.to_string()));
                    result.insert("vacuous".into(), json!(false));
                }
                ChainBoundEstimate::Vacuous => {
                    result.insert("bound".into(), Value::Null);
                    result.insert("vacuous".into(), json!(true));
                }
            }
            if *sharp {
                let s = sharp_chain_bound(*t, *n)?;
                result.insert(
                    "sharp".into(),
                    json!({
                        "min_chains": s.min_chains.as_ref().map(|c| c.to_string()),
                        "bound": s.bound.as_ref().map(|b| b.to_string()),
                        "witness": s.witness.as_ref().map(family_json),
                    }),
                );
            }
            let doc = run_doc(
                "bound",
                json!({ "t": t, "n": n, "sharp": sharp }),
                Value::Object(result),
            );
            emit(cli.format, &doc);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Chains { n, sets } => {
            let ground = GroundSet::new(*n)?;
            let members = sets
                .iter()
                .map(|s| parse_set(ground, s))
                .collect::<Result<Vec<_>, _>>()?;
            let fam = SetFamily::new(ground, members)?;
            let meeting = count_chains_meeting(&fam)?;
            let lower = chains_meeting_lower_bound(fam.len() as u64, u64::from(*n));
            let meets_big = BigRational::from_integer(BigInt::from(meeting.clone()));
            let doc = run_doc(
                "chains",
                json!({ "n": n, "sets": sets }),
                json!({
                    "family": family_json(&fam),
                    "distinct_sets": fam.len(),
                    "chains_meeting": meeting.to_string(),
                    "total_chains": factorial(u64::from(*n)).to_string(),
                    "guaranteed_lower_bound": ratio_json(&lower),
                    "lower_bound_holds": meets_big >= lower,
                }),
            );
            emit(cli.format, &doc);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bollobas { family } => {
            let doc: FamilyDoc = read_json(family)?;
            let fam = doc.to_family()?;
            let system = chain_set_pairs(&fam)?;
            let report = bollobas_check(&system);
            let ok = report.disjoint_violation.is_none()
                && report.cross_violation.is_none()
                && report.holds == Some(true);
            let out = run_doc(
                "bollobas",
                json!({ "family": family.display().to_string() }),
                json!({
                    "pair_count": system.len(),
                    "pairs": system
                        .pairs()
                        .iter()
                        .map(|(a, b)| json!([subset_json(*a), subset_json(*b)]))
                        .collect::<Vec<_>>(),
                    "disjoint_violation": report.disjoint_violation,
                    "cross_violation": report.cross_violation,
                    "sum": report.sum.as_ref().map(ratio_json),
                    "holds": report.holds,
                }),
            );
            emit(cli.format, &out);
            if ok {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(exit_with(4))
            }
        }
        Cmd::ConjectureV {
            n_max,
            oracle_max,
            verify_max,
        } => {
            let mut rows = Vec::new();
            let mut all_match = true;
            for n in 2..=*n_max {
                let formula = v_conjecture_sum(n);
                let mut row = Map::new();
                let mut row_match = true;
                row.insert("n".into(), json!(n));
                row.insert("formula".into(), Value::String(formula.to_string()));
                let constructed = v_family(n, 100_000).ok();
                row.insert(
                    "construction_size".into(),
                    constructed
                        .as_ref()
                        .map_or(Value::Null, |f| Value::String(f.len().to_string())),
                );
                if let Some(f) = &constructed {
                    row_match &= BigUint::from(f.len()) == formula;
                    if n <= *verify_max {
                        let verified = verify_packing(f).pass;
                        row_match &= verified;
                        row.insert("construction_verified".into(), json!(verified));
                    }
                }
                if n <= *oracle_max {
                    let got = max_incomparable_packing(
                        &Poset::v(),
                        n,
                        EmbeddingKind::Weak,
                        &OracleBudget::default(),
                    )?;
                    row_match &= BigUint::from(got.m) == formula;
                    row.insert("oracle_m".into(), json!(got.m));
                }
                row.insert("matches".into(), json!(row_match));
                all_match &= row_match;
                rows.push(Value::Object(row));
            }
            let doc = run_doc(
                "conjecture-v",
                json!({ "n_max": n_max, "oracle_max": oracle_max, "verify_max": verify_max }),
                json!({ "rows": rows, "all_match": all_match }),
            );
            emit(cli.format, &doc);
            if all_match {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(exit_with(4))
            }
        }
    }
}

fn run_construct(cli: &Cli, sub: &ConstructCmd) -> Result<ExitCode, CliError> {
    match sub {
        ConstructCmd::Ordered {
            poset,
            kind,
            eps,
            m_max,
            max_copies,
            out,
        } => {
            let p = poset.load()?;
            let kind = EmbeddingKind::from(*kind);
            let eps_prime = parse_ratio(eps)?;
            let m_max = default_m_max(*m_max, &p);
            let system = build_ordered_copies(&p, kind, &eps_prime, m_max, *max_copies)?;
            let plan = system.plan();
            let (lo, hi) = plan.interval();
            let copies: Vec<Value> = system
                .copies()
                .iter()
                .map(|c| {
                    json!({
                        "code": c.code,
                        "pivot_block": c.pivot + 1,
                        "assignment": assignment_json(&c.embedding),
                    })
                })
                .collect();
            if let Some(path) = out {
                let fam = PackingFamily::new(
                    plan.ground(),
                    plan.base().poset().clone(),
                    kind,
                    system.copies().iter().map(|c| c.embedding.clone()).collect(),
                )?;
                write_family(path, &fam)?;
            }
            let doc = run_doc(
                "construct-ordered",
                json!({
                    "poset": poset.describe(),
                    "kind": kind_name(kind),
                    "eps": eps,
                    "m_max": m_max,
                    "max_copies": max_copies,
                }),
                json!({
                    "hull_size_t": plan.hull_size(),
                    "block_width_m": plan.block_width(),
                    "block_count_k": plan.block_count(),
                    "ground_n": plan.ground().n(),
                    "interval": [lo, hi],
                    "copy_count": plan.total().to_string(),
                    "copies": copies,
                }),
            );
            emit(cli.format, &doc);
            Ok(ExitCode::SUCCESS)
        }
        ConstructCmd::Lower {
            poset,
            kind,
            n,
            eps,
            m_max,
            max_copies,
            out,
        } => {
            let p = poset.load()?;
            let kind = EmbeddingKind::from(*kind);
            let eps_v = parse_ratio(eps)?;
            let m_max = default_m_max(*m_max, &p);
            let fam = build_incomparable_family(&p, kind, *n, &eps_v, m_max, *max_copies)?;
            if let Some(path) = out {
                write_family(path, &fam.family)?;
            }
            let plan = fam.system.plan();
            let doc = run_doc(
                "construct-lower",
                json!({
                    "poset": poset.describe(),
                    "kind": kind_name(kind),
                    "n": n,
                    "eps": eps,
                    "m_max": m_max,
                    "max_copies": max_copies,
                }),
                json!({
                    "n": fam.n,
                    "block_ground_n": plan.ground().n(),
                    "hull_size_t": plan.hull_size(),
                    "system_copies_k": plan.total().to_string(),
                    "tail_width": fam.tail_width,
                    "middle": fam.middle,
                    "layer_sizes": fam.layer_sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "size": fam.size.to_string(),
                    "target": ratio_json(&fam.target),
                    "meets_target": fam.meets_target,
                    "family": serde_json::to_value(FamilyDoc::from_family(&fam.family))
                        .expect("documents serialize"),
                }),
            );
            emit(cli.format, &doc);
            Ok(ExitCode::SUCCESS)
        }
        ConstructCmd::Path {
            h,
            n,
            max_copies,
            out,
        } => {
            let fam = path_family(*h, *n, *max_copies)?;
            if let Some(path) = out {
                write_family(path, &fam)?;
            }
            let doc = run_doc(
                "construct-path",
                json!({ "h": h, "n": n, "max_copies": max_copies }),
                json!({
                    "size": fam.len(),
                    "family": serde_json::to_value(FamilyDoc::from_family(&fam))
                        .expect("documents serialize"),
                }),
            );
            emit(cli.format, &doc);
            Ok(ExitCode::SUCCESS)
        }
        ConstructCmd::Thin {
            poset,
            kind,
            n,
            max_copies,
            out,
        } => {
            let p = poset.load()?;
            let kind = EmbeddingKind::from(*kind);
            let fam = thin_family(&p, kind, *n, *max_copies)?;
            if let Some(path) = out {
                write_family(path, &fam)?;
            }
            let doc = run_doc(
                "construct-thin",
                json!({
                    "poset": poset.describe(),
                    "kind": kind_name(kind),
                    "n": n,
                    "max_copies": max_copies,
                }),
                json!({
                    "height": p.height(),
                    "size": fam.len(),
                    "family": serde_json::to_value(FamilyDoc::from_family(&fam))
                        .expect("documents serialize"),
                }),
            );
            emit(cli.format, &doc);
            Ok(ExitCode::SUCCESS)
        }
        ConstructCmd::VFamily { n, max_copies, out } => {
            let fam = v_family(*n, *max_copies)?;
            if let Some(path) = out {
                write_family(path, &fam)?;
            }
            let doc = run_doc(
                "construct-v-family",
                json!({ "n": n, "max_copies": max_copies }),
                json!({
                    "size": fam.len(),
                    "conjectured_maximum": v_conjecture_sum(*n).to_string(),
                    "family": serde_json::to_value(FamilyDoc::from_family(&fam))
                        .expect("documents serialize"),
                }),
            );
            emit(cli.format, &doc);
            Ok(ExitCode::SUCCESS)
        }
    }
}
