use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use gcon_core::config::{
    configuration_contained, configuration_set_ball, configuration_set_finite, search_matching_pair,
    strong_contained, Exactness, Verdict,
};
use gcon_core::docs::{
    builtin_group, parse_group_doc, parse_partition_doc, symbolic_partition, CertificateDoc,
    ConfigSetDoc, EquivalenceDoc, GoldenDoc, Manifest, StrongDoc, VerifyDoc,
};
use gcon_core::engine::{derived_series, Engine, GeneratingTuple};
use gcon_core::golden::{
    dinf_partition, free_block_absorption_check, free_group_partition, verify_block_structure,
    verify_golden_implication, verify_translation_relations, znf_sigma_candidate, GoldenCandidate,
    GoldenFamily,
};
use gcon_core::localhom::{
    build_pair_sets, check_group_law, is_bounded_epimorphism, is_local_homomorphism, tau_relation,
    GroupLaw, LawDomain, LocalHomVerdict,
};
use gcon_core::words::{derivation_form_pairs, RepPair};
use gcon_core::{Error, Result};

#[derive(Parser)]
#[command(name = "gcon", version, about = "Configuration sets of finitely generated groups")]
pub struct Cli {
    /// Worker threads for searches (0 = library default). Results are
    /// byte-identical regardless of this setting.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on enumerated search candidates / pair sets.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    pub budget: u64,
    /// Write the result document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Exit with status 3 when the computed verdict is negative.
    #[arg(long, global = true)]
    pub assert: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compute a configuration set (exact or ball-observed).
    Con(ConArgs),
    /// Decide configuration containment of two finite groups within bounds.
    Contain(ContainArgs),
    /// Decide two-sided containment (equivalence within bounds).
    Equiv(ContainArgs),
    /// Strong containment: fixed generating tuples, all partitions up to a
    /// block bound.
    Strong(StrongArgs),
    /// Verify a golden configuration pair family.
    Golden(GoldenArgs),
    /// Evaluate or reduce a representative pair.
    Words(WordsArgs),
    /// Generate derivation-form pairs or compute a derived series.
    Derived(DerivedArgs),
    /// Check a group law over a domain.
    Law(LawArgs),
    /// Tau relation, local-homomorphism and bounded-epimorphism checks.
    Localhom(LocalhomArgs),
}

#[derive(Args)]
pub struct ConArgs {
    /// Group document path or builtin:<name>.
    #[arg(long)]
    group: String,
    /// Partition document path or symbolic:<name>.
    #[arg(long)]
    partition: String,
    /// Generator element names (finite engines); repeat per component.
    #[arg(long = "gen")]
    gens: Vec<String>,
    /// Observation radius; infinite engines only (default 8).
    #[arg(long)]
    radius: Option<usize>,
    /// Stability window for saturation detection; infinite engines only
    /// (default 2).
    #[arg(long)]
    window: Option<usize>,
}

#[derive(Args)]
pub struct ContainArgs {
    #[arg(long = "group-g")]
    group_g: String,
    #[arg(long = "group-h")]
    group_h: String,
    #[arg(long = "max-n")]
    max_n: usize,
    #[arg(long = "max-m")]
    max_m: usize,
    /// Re-validate a previously emitted certificate document instead of
    /// searching.
    #[arg(long)]
    verify: Option<PathBuf>,
}

#[derive(Args)]
pub struct StrongArgs {
    #[arg(long = "group-g")]
    group_g: String,
    #[arg(long = "group-h")]
    group_h: String,
    #[arg(long = "gen-g")]
    gens_g: Vec<String>,
    #[arg(long = "gen-h")]
    gens_h: Vec<String>,
    #[arg(long = "max-m")]
    max_m: usize,
    #[arg(long)]
    verify: Option<PathBuf>,
}

#[derive(Args)]
pub struct GoldenArgs {
    /// free | dinf | znf
    #[arg(long)]
    family: String,
    /// Rank for the free and znf families.
    #[arg(long)]
    rank: Option<usize>,
    /// Finite factor for the znf family: group path or builtin:<name>.
    #[arg(long)]
    finite: Option<String>,
    #[arg(long = "max-len", default_value_t = 5)]
    max_len: usize,
    #[arg(long, default_value_t = 8)]
    radius: usize,
    /// Rival partition document for the golden implication (defaults to the
    /// candidate's own partition).
    #[arg(long = "rival-partition")]
    rival_partition: Option<String>,
    /// Label of the rival block corresponding to {e}.
    #[arg(long = "rival-block")]
    rival_block: Option<usize>,
}

#[derive(Args)]
pub struct WordsArgs {
    /// eval | reduce
    #[arg(long)]
    op: String,
    #[arg(long)]
    group: String,
    /// Signed-index pair text, e.g. "+1 -2 +1".
    #[arg(long, allow_hyphen_values = true)]
    pair: String,
    #[arg(long = "gen")]
    gens: Vec<String>,
}

#[derive(Args)]
pub struct DerivedArgs {
    /// gen | series
    #[arg(long)]
    op: String,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    /// Number of pairs to emit (gen).
    #[arg(long = "pair-budget", default_value_t = 10)]
    pair_budget: usize,
    /// Group for the series computation.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Args)]
pub struct LawArgs {
    #[arg(long)]
    group: String,
    /// Law text over variable indices, e.g. "-1 -2 +1 +2".
    #[arg(long, allow_hyphen_values = true)]
    law: String,
    #[arg(long)]
    vars: usize,
    /// all | ball:<radius> | sample:<count>
    #[arg(long, default_value = "all")]
    domain: String,
}

#[derive(Args)]
pub struct LocalhomArgs {
    #[arg(long = "group-g")]
    group_g: String,
    #[arg(long = "group-h")]
    group_h: String,
    #[arg(long = "gen-g")]
    gens_g: Vec<String>,
    #[arg(long = "gen-h")]
    gens_h: Vec<String>,
    /// Maximum driving pair length n0 (tiers go up to 3 n0).
    #[arg(long, default_value_t = 1)]
    n0: usize,
}

pub enum RunError {
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Core(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

fn digest_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Resolves a group spec: `builtin:<name>` or a document path.
fn resolve_group(spec: &str) -> Result<(Engine, String)> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        Ok((builtin_group(name)?, digest_hex(spec.as_bytes())))
    } else {
        let text = fs::read_to_string(spec)
            .map_err(|e| Error::Parse(format!("cannot read group document {spec}: {e}")))?;
        Ok((parse_group_doc(&text)?, digest_hex(text.as_bytes())))
    }
}

/// Resolves a partition spec: `symbolic:<name>` or a document path.
fn resolve_partition(spec: &str, engine: &Engine) -> Result<(gcon_core::partition::Partition, String)> {
    if let Some(name) = spec.strip_prefix("symbolic:") {
        Ok((symbolic_partition(name, engine)?, digest_hex(spec.as_bytes())))
    } else {
        let text = fs::read_to_string(spec)
            .map_err(|e| Error::Parse(format!("cannot read partition document {spec}: {e}")))?;
        Ok((parse_partition_doc(&text, engine)?, digest_hex(text.as_bytes())))
    }
}

/// Builds a generating tuple from `--gen` names. Finite engines need explicit
/// names; infinite engines take their curated standard tuple (names must be
/// absent or the single word "standard").
fn resolve_gens(engine: &Engine, names: &[String]) -> Result<GeneratingTuple> {
    if engine.is_finite() {
        if names.is_empty() {
            return Err(Error::Invalid(
                "finite groups need explicit --gen element names".into(),
            ));
        }
        let elements = names
            .iter()
            .map(|n| engine.element_by_name(n))
            .collect::<Result<Vec<_>>>()?;
        engine.generating_tuple(elements)
    } else {
        match names {
            [] => Ok(engine.standard_generators()),
            [only] if only == "standard" => Ok(engine.standard_generators()),
            _ => Err(Error::Invalid(
                "infinite engines use their standard generating tuple (--gen standard)".into(),
            )),
        }
    }
}

fn emit(doc: &impl Serialize, out: &Option<PathBuf>) -> std::result::Result<(), RunError> {
    let body = serde_json::to_string_pretty(doc).expect("documents serialize");
    match out {
        Some(path) => fs::write(path, body + "\n").map_err(RunError::Io),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

/// Runs the selected subcommand; `Ok(true)` means a negative verdict was
/// computed while --assert is active.
pub fn run(cli: &Cli) -> std::result::Result<bool, RunError> {
    if cli.threads > 0 {
        // ignore failure: the global pool can only be set once (tests)
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    match &cli.command {
        Command::Con(args) => cmd_con(cli, args),
        Command::Contain(args) => cmd_contain(cli, args),
        Command::Equiv(args) => cmd_equiv(cli, args),
        Command::Strong(args) => cmd_strong(cli, args),
        Command::Golden(args) => cmd_golden(cli, args),
        Command::Words(args) => cmd_words(cli, args),
        Command::Derived(args) => cmd_derived(cli, args),
        Command::Law(args) => cmd_law(cli, args),
        Command::Localhom(args) => cmd_localhom(cli, args),
    }
}

fn cmd_con(cli: &Cli, args: &ConArgs) -> std::result::Result<bool, RunError> {
    let (engine, group_digest) = resolve_group(&args.group)?;
    let (partition, part_digest) = resolve_partition(&args.partition, &engine)?;
    let gens = resolve_gens(&engine, &args.gens)?;
    if engine.is_finite() && (args.radius.is_some() || args.window.is_some()) {
        return Err(RunError::Core(Error::Invalid(
            "--radius and --window apply to infinite engines only".into(),
        )));
    }
    let max_radius = args.radius.unwrap_or(8);
    let window = args.window.unwrap_or(2);
    let set = if engine.is_finite() {
        configuration_set_finite(&gens, &partition)?
    } else {
        configuration_set_ball(&gens, &partition, max_radius, window)?
    };
    let (exactness, radius, saturated) = match set.exactness() {
        Exactness::Exact => ("exact".to_string(), None, None),
        Exactness::BallObserved { radius, saturated } => {
            ("ball-observed".to_string(), Some(radius), Some(saturated))
        }
    };
    let mut manifest = Manifest::new("gcon/configuration-set/v1", "con")
        .input("group", &args.group, group_digest)
        .input("partition", &args.partition, part_digest)
        .parameter("gens", gens.show());
    if !engine.is_finite() {
        manifest = manifest.parameter("radius", max_radius).parameter("window", window);
    }
    let doc = ConfigSetDoc {
        manifest,
        n: set.n(),
        m: set.m(),
        exactness,
        radius,
        saturated,
        configurations: set.to_rows(),
    };
    emit(&doc, &cli.out)?;
    Ok(false)
}

fn contain_manifest(args: &ContainArgs, subcommand: &str, dg: String, dh: String) -> Manifest {
    Manifest::new("gcon/certificate/v1", subcommand)
        .input("group-g", &args.group_g, dg)
        .input("group-h", &args.group_h, dh)
        .parameter("max-n", args.max_n)
        .parameter("max-m", args.max_m)
}

fn cmd_contain(cli: &Cli, args: &ContainArgs) -> std::result::Result<bool, RunError> {
    let (g, dg) = resolve_group(&args.group_g)?;
    let (h, dh) = resolve_group(&args.group_h)?;
    if let Some(path) = &args.verify {
        return verify_contain(cli, args, &g, &h, path);
    }
    let certificate = configuration_contained(&g, &h, args.max_n, args.max_m, cli.budget)?;
    let negative = certificate.verdict == Verdict::NotContained;
    let doc = CertificateDoc { manifest: contain_manifest(args, "contain", dg, dh), certificate };
    emit(&doc, &cli.out)?;
    Ok(cli.assert && negative)
}

fn cmd_equiv(cli: &Cli, args: &ContainArgs) -> std::result::Result<bool, RunError> {
    let (g, dg) = resolve_group(&args.group_g)?;
    let (h, dh) = resolve_group(&args.group_h)?;
    let forward = configuration_contained(&g, &h, args.max_n, args.max_m, cli.budget)?;
    let backward = configuration_contained(&h, &g, args.max_n, args.max_m, cli.budget)?;
    let equivalent = forward.verdict == Verdict::ContainedWithinBounds
        && backward.verdict == Verdict::ContainedWithinBounds;
    let doc = EquivalenceDoc {
        manifest: contain_manifest(args, "equiv", dg, dh),
        equivalent_within_bounds: equivalent,
        forward,
        backward,
    };
    emit(&doc, &cli.out)?;
    Ok(cli.assert && !equivalent)
}

/// Recomputes the definitional checks of a stored containment certificate:
/// every match must reproduce the target set, and a not-contained witness
/// must reproduce its stored configurations and still have no match in the
/// single (n, m) candidate space it names.
fn verify_contain(
    cli: &Cli,
    args: &ContainArgs,
    g: &Engine,
    h: &Engine,
    path: &PathBuf,
) -> std::result::Result<bool, RunError> {
    let text = fs::read_to_string(path)?;
    let doc: CertificateDoc = serde_json::from_str(&text)
        .map_err(|e| RunError::Core(Error::Parse(format!("certificate document: {e}"))))?;
    let cert = &doc.certificate;
    let mut checks = Vec::new();
    let mut verified = true;
    for (i, record) in cert.matches.iter().enumerate() {
        let (tg, pg) = record.target.realize(g)?;
        let (th, ph) = record.matched.realize(h)?;
        let target_set = configuration_set_finite(&tg, &pg)?;
        let matched_set = configuration_set_finite(&th, &ph)?;
        if target_set.to_rows() == matched_set.to_rows() {
            checks.push(format!("match {i}: reproduces the target set"));
        } else {
            verified = false;
            checks.push(format!("match {i}: FAILS to reproduce the target set"));
        }
    }
    if let Some(witness) = &cert.witness {
        let (tg, pg) = witness.target.realize(g)?;
        let target_set = configuration_set_finite(&tg, &pg)?;
        if target_set.to_rows() == witness.target_configurations {
            checks.push("witness: stored configurations reproduce".into());
        } else {
            verified = false;
            checks.push("witness: stored configurations FAIL to reproduce".into());
        }
        if search_matching_pair(&target_set, h)?.is_none() {
            checks.push("witness: candidate space re-exhausted with no match".into());
        } else {
            verified = false;
            checks.push("witness: a match EXISTS after all".into());
        }
    }
    let manifest = Manifest::new("gcon/verify/v1", "contain --verify")
        .input("certificate", &path.display().to_string(), digest_hex(text.as_bytes()))
        .parameter("max-n", args.max_n)
        .parameter("max-m", args.max_m);
    emit(&VerifyDoc { manifest, verified, checks }, &cli.out)?;
    Ok(cli.assert && !verified)
}

fn cmd_strong(cli: &Cli, args: &StrongArgs) -> std::result::Result<bool, RunError> {
    let (g, dg) = resolve_group(&args.group_g)?;
    let (h, dh) = resolve_group(&args.group_h)?;
    let gens_g = resolve_gens(&g, &args.gens_g)?;
    let gens_h = resolve_gens(&h, &args.gens_h)?;
    let manifest = Manifest::new("gcon/strong-certificate/v1", "strong")
        .input("group-g", &args.group_g, dg)
        .input("group-h", &args.group_h, dh)
        .parameter("gens-g", gens_g.show())
        .parameter("gens-h", gens_h.show())
        .parameter("max-m", args.max_m);
    if let Some(path) = &args.verify {
        return verify_strong(cli, &g, &h, path, manifest);
    }
    let certificate = strong_contained(&gens_g, &gens_h, args.max_m)?;
    let negative = certificate.verdict == Verdict::NotContained;
    emit(&StrongDoc { manifest, certificate }, &cli.out)?;
    Ok(cli.assert && negative)
}

fn verify_strong(
    cli: &Cli,
    g: &Engine,
    h: &Engine,
    path: &PathBuf,
    manifest: Manifest,
) -> std::result::Result<bool, RunError> {
    let text = fs::read_to_string(path)?;
    let doc: StrongDoc = serde_json::from_str(&text)
        .map_err(|e| RunError::Core(Error::Parse(format!("certificate document: {e}"))))?;
    let mut checks = Vec::new();
    let mut verified = true;
    for (i, record) in doc.certificate.matches.iter().enumerate() {
        let (tg, pg) = record.target.realize(g)?;
        let (th, ph) = record.matched.realize(h)?;
        if configuration_set_finite(&tg, &pg)?.to_rows()
            == configuration_set_finite(&th, &ph)?.to_rows()
        {
            checks.push(format!("match {i}: reproduces the target set"));
        } else {
            verified = false;
            checks.push(format!("match {i}: FAILS to reproduce the target set"));
        }
    }
    if let Some(witness) = &doc.certificate.witness {
        let (tg, pg) = witness.target.realize(g)?;
        let target_set = configuration_set_finite(&tg, &pg)?;
        if target_set.to_rows() == witness.target_configurations {
            checks.push("witness: stored configurations reproduce".into());
        } else {
            verified = false;
            checks.push("witness: stored configurations FAIL to reproduce".into());
        }
        let elements = doc
            .certificate
            .gens_h
            .iter()
            .map(|&i| h.element(i))
            .collect::<gcon_core::Result<Vec<_>>>()?;
        let gens_h = h.generating_tuple(elements)?;
        let mut matched = false;
        for part in gcon_core::config::partitions_into(h, witness.m)? {
            let candidate = configuration_set_finite(&gens_h, &part)?;
            if gcon_core::config::sets_equal_up_to_relabel(&target_set, &candidate).is_some() {
                matched = true;
                break;
            }
        }
        if matched {
            verified = false;
            checks.push("witness: a matching partition EXISTS after all".into());
        } else {
            checks.push("witness: partition space re-exhausted with no match".into());
        }
    }
    let manifest = Manifest {
        subcommand: "strong --verify".into(),
        ..manifest
    };
    emit(&VerifyDoc { manifest, verified, checks }, &cli.out)?;
    Ok(cli.assert && !verified)
}

fn cmd_golden(cli: &Cli, args: &GoldenArgs) -> std::result::Result<bool, RunError> {
    let candidate: GoldenCandidate = match args.family.as_str() {
        "free" | "free-first-letter" => {
            let rank = args.rank.ok_or_else(|| Error::Invalid("--rank required".into()))?;
            free_group_partition(rank)?
        }
        "dinf" | "dinf-five" => dinf_partition(),
        "znf" | "znf-sign" => {
            let rank = args.rank.ok_or_else(|| Error::Invalid("--rank required".into()))?;
            let spec = args
                .finite
                .as_ref()
                .ok_or_else(|| Error::Invalid("--finite required for the znf family".into()))?;
            let (engine, _) = resolve_group(spec)?;
            let table = engine
                .finite_group()
                .ok_or_else(|| Error::Invalid("the znf finite factor must be finite".into()))?;
            znf_sigma_candidate(rank, table.clone())?
        }
        other => {
            return Err(RunError::Core(Error::Invalid(format!("unknown family {other:?}"))))
        }
    };
    let mut manifest = Manifest::new("gcon/golden/v1", "golden")
        .parameter("family", candidate.family().name())
        .parameter("max-len", args.max_len)
        .parameter("radius", args.radius);
    if let Some(rank) = args.rank {
        manifest = manifest.parameter("rank", rank);
    }

    let mut reports = vec![verify_block_structure(&candidate, args.radius)?];
    if candidate.family() == GoldenFamily::FreeFirstLetter {
        reports.push(verify_translation_relations(&candidate, args.radius)?);
        reports.push(free_block_absorption_check(
            args.rank.expect("free family has a rank"),
            args.max_len,
        )?);
    }
    let (rival_part, rival_block, rival_digest) = match &args.rival_partition {
        Some(spec) => {
            let (part, digest) = resolve_partition(spec, candidate.engine())?;
            let block = args.rival_block.ok_or_else(|| {
                Error::Invalid("--rival-block names the block corresponding to {e}".into())
            })?;
            (part, block, Some((spec.clone(), digest)))
        }
        None => (candidate.partition().clone(), candidate.identity_label(), None),
    };
    if let Some((spec, digest)) = rival_digest {
        manifest = manifest.input("rival-partition", &spec, digest);
    }
    reports.push(verify_golden_implication(
        &candidate,
        candidate.gens(),
        &rival_part,
        rival_block,
        args.max_len,
        args.radius,
    )?);
    let passed = reports.iter().all(|r| r.passed());
    emit(&GoldenDoc { manifest, passed, reports }, &cli.out)?;
    Ok(cli.assert && !passed)
}

#[derive(Serialize)]
struct WordsResultDoc {
    manifest: Manifest,
    pair: String,
    is_reduced: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduced_pair: Option<String>,
}

fn cmd_words(cli: &Cli, args: &WordsArgs) -> std::result::Result<bool, RunError> {
    let (engine, group_digest) = resolve_group(&args.group)?;
    let gens = resolve_gens(&engine, &args.gens)?;
    let pair = RepPair::parse(&args.pair, gens.len())?;
    let manifest = Manifest::new("gcon/words/v1", "words")
        .input("group", &args.group, group_digest)
        .parameter("op", &args.op)
        .parameter("gens", gens.show());
    let doc = match args.op.as_str() {
        "eval" => {
            let value = pair.evaluate(&gens)?;
            WordsResultDoc {
                manifest,
                pair: pair.to_string(),
                is_reduced: pair.is_reduced(),
                value: Some(engine.show(&value)),
                reduced_pair: None,
            }
        }
        "reduce" => WordsResultDoc {
            manifest,
            pair: pair.to_string(),
            is_reduced: pair.is_reduced(),
            value: None,
            reduced_pair: Some(pair.free_reduce().to_string()),
        },
        other => return Err(RunError::Core(Error::Invalid(format!("unknown op {other:?}")))),
    };
    emit(&doc, &cli.out)?;
    Ok(false)
}

#[derive(Serialize)]
struct DerivedGenDoc {
    manifest: Manifest,
    rank: usize,
    depth: usize,
    pairs: Vec<String>,
    all_first_derivation_form: bool,
}

#[derive(Serialize)]
struct DerivedSeriesDoc {
    manifest: Manifest,
    depth: usize,
    cardinalities: Vec<usize>,
    levels: Vec<Vec<String>>,
}

fn cmd_derived(cli: &Cli, args: &DerivedArgs) -> std::result::Result<bool, RunError> {
    match args.op.as_str() {
        "gen" => {
            let rank = args.rank.ok_or_else(|| Error::Invalid("--rank required".into()))?;
            let depth = args.depth.ok_or_else(|| Error::Invalid("--depth required".into()))?;
            let pairs = derivation_form_pairs(rank, depth, args.pair_budget)?;
            // nested derived subgroups: every depth-k pair is also first-form
            let all_first = pairs.iter().all(|p| p.is_first_derivation_form());
            let manifest = Manifest::new("gcon/derived-gen/v1", "derived")
                .parameter("op", "gen")
                .parameter("rank", rank)
                .parameter("depth", depth)
                .parameter("pair-budget", args.pair_budget);
            let doc = DerivedGenDoc {
                manifest,
                rank,
                depth,
                pairs: pairs.iter().map(|p| p.to_string()).collect(),
                all_first_derivation_form: all_first,
            };
            emit(&doc, &cli.out)?;
            Ok(false)
        }
        "series" => {
            let spec =
                args.group.as_ref().ok_or_else(|| Error::Invalid("--group required".into()))?;
            let depth = args.depth.ok_or_else(|| Error::Invalid("--depth required".into()))?;
            let (engine, digest) = resolve_group(spec)?;
            let report = derived_series(&engine, depth)?;
            let group = engine.finite_group().expect("derived series is finite-only");
            let levels = report
                .levels
                .iter()
                .map(|level| level.iter().map(|&i| group.name(i).to_string()).collect())
                .collect();
            let manifest = Manifest::new("gcon/derived-series/v1", "derived")
                .input("group", spec, digest)
                .parameter("op", "series")
                .parameter("depth", depth);
            let doc = DerivedSeriesDoc {
                manifest,
                depth,
                cardinalities: report.cardinalities,
                levels,
            };
            emit(&doc, &cli.out)?;
            Ok(false)
        }
        other => Err(RunError::Core(Error::Invalid(format!("unknown op {other:?}")))),
    }
}

#[derive(Serialize)]
struct LawDoc {
    manifest: Manifest,
    law: String,
    variables: usize,
    domain: String,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<String>>,
    tuples_checked: usize,
}

fn cmd_law(cli: &Cli, args: &LawArgs) -> std::result::Result<bool, RunError> {
    let (engine, digest) = resolve_group(&args.group)?;
    let law = GroupLaw::parse(&args.law, args.vars)?;
    let domain = match args.domain.as_str() {
        "all" => LawDomain::All,
        other => {
            if let Some(r) = other.strip_prefix("ball:") {
                LawDomain::Ball(
                    r.parse().map_err(|_| Error::Parse(format!("bad radius in {other:?}")))?,
                )
            } else if let Some(k) = other.strip_prefix("sample:") {
                LawDomain::Sample {
                    count: k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad count in {other:?}")))?,
                    seed: cli.seed,
                }
            } else {
                return Err(RunError::Core(Error::Parse(format!(
                    "domain is all, ball:<r> or sample:<k>, got {other:?}"
                ))));
            }
        }
    };
    let result = check_group_law(&engine, &law, domain)?;
    let manifest = Manifest::new("gcon/law/v1", "law")
        .input("group", &args.group, digest)
        .parameter("law", &args.law)
        .parameter("domain", &args.domain)
        .parameter("seed", cli.seed);
    let doc = LawDoc {
        manifest,
        law: law.word().to_string(),
        variables: args.vars,
        domain: args.domain.clone(),
        holds: result.holds,
        witness: result
            .witness
            .map(|w| w.iter().map(|el| engine.show(el)).collect()),
        tuples_checked: result.tuples_checked,
    };
    let negative = !doc.holds;
    emit(&doc, &cli.out)?;
    Ok(cli.assert && negative)
}

#[derive(Serialize)]
struct LocalHomDoc {
    manifest: Manifest,
    n0: usize,
    pair_tiers: Vec<usize>,
    functional: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    functionality_conflict: Option<String>,
    local_homomorphism: bool,
    verdict: String,
    epi_forward: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    epi_forward_witness: Option<String>,
    epi_backward: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    epi_backward_witness: Option<String>,
}

fn cmd_localhom(cli: &Cli, args: &LocalhomArgs) -> std::result::Result<bool, RunError> {
    let (g, dg) = resolve_group(&args.group_g)?;
    let (h, dh) = resolve_group(&args.group_h)?;
    let gens_g = resolve_gens(&g, &args.gens_g)?;
    let gens_h = resolve_gens(&h, &args.gens_h)?;
    let sets = build_pair_sets(gens_g.len(), args.n0, cli.budget)?;
    let rel = tau_relation(&gens_g, &gens_h, &sets.s1)?;
    let mut base = vec![g.identity()];
    for pair in &sets.s2 {
        let value = pair.evaluate(&gens_g)?;
        if !base.contains(&value) {
            base.push(value);
        }
    }
    let verdict = is_local_homomorphism(&rel, &base)?;
    let functional = !matches!(verdict, LocalHomVerdict::NotFunctional { .. });
    let conflict = match &verdict {
        LocalHomVerdict::NotFunctional { g_value, h_first, h_second } => Some(format!(
            "{} maps to both {} and {}",
            g.show(g_value),
            h.show(h_first),
            h.show(h_second)
        )),
        _ => None,
    };
    let verdict_text = match &verdict {
        LocalHomVerdict::LocalHomomorphism { pairs_checked } => {
            format!("local homomorphism on {} base elements ({pairs_checked} pairs)", base.len())
        }
        LocalHomVerdict::NotFunctional { .. } => "not functional".into(),
        LocalHomVerdict::NotDefined { missing } => {
            format!("value missing from the relation: {}", g.show(missing))
        }
        LocalHomVerdict::IdentityFails { x, y } => {
            format!("identity fails at x = {}, y = {}", g.show(x), g.show(y))
        }
    };
    let forward = is_bounded_epimorphism(&gens_g, &gens_h, 3 * args.n0)?;
    let backward = is_bounded_epimorphism(&gens_h, &gens_g, 3 * args.n0)?;
    let manifest = Manifest::new("gcon/localhom/v1", "localhom")
        .input("group-g", &args.group_g, dg)
        .input("group-h", &args.group_h, dh)
        .parameter("gens-g", gens_g.show())
        .parameter("gens-h", gens_h.show())
        .parameter("n0", args.n0);
    let holds = verdict.holds();
    let doc = LocalHomDoc {
        manifest,
        n0: args.n0,
        pair_tiers: vec![sets.s0.len(), sets.s1.len(), sets.s2.len()],
        functional,
        functionality_conflict: conflict,
        local_homomorphism: holds,
        verdict: verdict_text,
        epi_forward: forward.holds,
        epi_forward_witness: forward.witness.map(|p| p.to_string()),
        epi_backward: backward.holds,
        epi_backward_witness: backward.witness.map(|p| p.to_string()),
    };
    emit(&doc, &cli.out)?;
    Ok(cli.assert && !holds)
}
