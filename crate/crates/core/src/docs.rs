//! Input document formats (group and partition description files), the
//! bundled small-group corpus with `builtin:` names, and the structured
//! result documents the toolkit emits. Result documents are pure functions of
//! their inputs; anything timing-related stays out of them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::{Certificate, StrongCertificate};
use crate::engine::{
    alternating4, ball, cyclic, dihedral, quaternion, symmetric3, Engine, FiniteGroup,
};
use crate::golden::GoldenReport;
use crate::partition::{Classifier, Partition};
use crate::{Error, Result};

#[derive(Deserialize)]
struct FiniteTableDoc {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteTableDoc {
    fn build(self) -> Result<FiniteGroup> {
        FiniteGroup::from_table(self.elements, self.table, self.identity)
    }
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum GroupDoc {
    FiniteTable { elements: Vec<String>, table: Vec<Vec<usize>>, identity: usize },
    Permutation { degree: usize, generators: Vec<Vec<usize>> },
    Free { rank: usize },
    FreeAbelian { rank: usize },
    ProductZnF { rank: usize, finite: FiniteTableDoc },
    DihedralInfinite,
}

/// Parses a group description document (TOML, one group per document).
pub fn parse_group_doc(text: &str) -> Result<Engine> {
    let doc: GroupDoc =
        toml::from_str(text).map_err(|e| Error::Parse(format!("group document: {e}")))?;
    match doc {
        GroupDoc::FiniteTable { elements, table, identity } => {
            Ok(Engine::finite(FiniteGroup::from_table(elements, table, identity)?))
        }
        GroupDoc::Permutation { degree, generators } => {
            Ok(Engine::finite(FiniteGroup::from_permutations(degree, generators)?))
        }
        GroupDoc::Free { rank } => {
            if rank == 0 {
                return Err(Error::Parse("free rank must be positive".into()));
            }
            Ok(Engine::free(rank))
        }
        GroupDoc::FreeAbelian { rank } => {
            if rank == 0 {
                return Err(Error::Parse("free-abelian rank must be positive".into()));
            }
            Ok(Engine::free_abelian(rank))
        }
        GroupDoc::ProductZnF { rank, finite } => {
            if rank == 0 {
                return Err(Error::Parse("product rank must be positive".into()));
            }
            Ok(Engine::product_zn_f(rank, finite.build()?))
        }
        GroupDoc::DihedralInfinite => Ok(Engine::dihedral_infinite()),
    }
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum PartitionDoc {
    /// Blocks as lists of element names or 0-based indices.
    ExplicitFinite { blocks: Vec<Vec<toml::Value>> },
    /// One of the curated symbolic classifiers.
    BuiltinSymbolic { name: String },
    /// Labels for the canonical ball of the stated radius, in canonical
    /// element order.
    BallExplicit { radius: usize, labels: Vec<usize> },
}

/// Parses a partition description document against the engine it labels.
pub fn parse_partition_doc(text: &str, engine: &Engine) -> Result<Partition> {
    let doc: PartitionDoc =
        toml::from_str(text).map_err(|e| Error::Parse(format!("partition document: {e}")))?;
    match doc {
        PartitionDoc::ExplicitFinite { blocks } => {
            let mut resolved = Vec::with_capacity(blocks.len());
            for block in blocks {
                let mut elements = Vec::with_capacity(block.len());
                for value in block {
                    let el = match value {
                        toml::Value::String(name) => engine.element_by_name(&name)?,
                        toml::Value::Integer(idx) if idx >= 0 => engine.element(idx as usize)?,
                        other => {
                            return Err(Error::Parse(format!(
                                "block entries are element names or indices, got {other:?}"
                            )))
                        }
                    };
                    elements.push(el);
                }
                resolved.push(elements);
            }
            Partition::from_blocks(engine, &resolved)
        }
        PartitionDoc::BuiltinSymbolic { name } => symbolic_partition(&name, engine),
        PartitionDoc::BallExplicit { radius, labels } => {
            let domain = ball(&engine.standard_generators(), radius)?;
            let m = labels.iter().copied().max().unwrap_or(0);
            Partition::ball_explicit(domain, labels, m, radius)
        }
    }
}

/// Resolves a symbolic classifier name against an engine.
pub fn symbolic_partition(name: &str, engine: &Engine) -> Result<Partition> {
    match (name, engine) {
        ("trivial", _) => Ok(Partition::trivial()),
        ("free-first-letter", Engine::Free { rank }) => {
            Ok(Partition::symbolic(Classifier::FreeFirstLetter { rank: *rank }))
        }
        ("dinf-five-block", Engine::DihedralInfinite) => {
            Ok(Partition::symbolic(Classifier::DinfFiveBlock))
        }
        ("znf-sign-atoms", Engine::Product { rank, finite }) => {
            Ok(Partition::symbolic(Classifier::znf(*rank, finite)))
        }
        ("free-first-letter" | "dinf-five-block" | "znf-sign-atoms", _) => Err(Error::Invalid(
            format!("classifier {name:?} does not apply to this group kind"),
        )),
        _ => Err(Error::Invalid(format!("unknown symbolic classifier {name:?}"))),
    }
}

/// The bundled finite groups of order at most 12, by name.
pub fn corpus() -> Vec<(String, Engine)> {
    let mut out: Vec<(String, Engine)> = Vec::new();
    for n in 1..=12 {
        out.push((format!("z{n}"), Engine::finite(cyclic(n))));
    }
    for name in
        ["v4", "z2xz4", "z2xz2xz2", "z3xz3", "z2xz6", "s3", "d4", "d5", "d6", "a4", "q8"]
    {
        out.push((name.to_string(), builtin_group(name).expect("corpus names resolve")));
    }
    out
}

/// Resolves a `builtin:` group name: cyclic `z<n>`, dihedral `d<n>` (order
/// 2n), `s3`, `a4`, `q8`, `v4`, direct products like `z2xz4`, and the
/// infinite engines `free<n>`, `abelian<n>`, `dinf`, `znf:<n>:<finite>`.
pub fn builtin_group(name: &str) -> Result<Engine> {
    let fail = || Error::Invalid(format!("unknown builtin group {name:?}"));
    match name {
        "s3" => return Ok(Engine::finite(symmetric3())),
        "a4" => return Ok(Engine::finite(alternating4())),
        "q8" => return Ok(Engine::finite(quaternion())),
        "v4" => return Ok(Engine::finite(cyclic(2).direct_product(&cyclic(2)))),
        "dinf" => return Ok(Engine::dihedral_infinite()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("znf:") {
        let (rank_text, finite_name) = rest.split_once(':').ok_or_else(|| {
            Error::Invalid(format!("product groups are written znf:<rank>:<finite>, got {name:?}"))
        })?;
        let rank: usize = rank_text.parse().map_err(|_| fail())?;
        if rank == 0 {
            return Err(fail());
        }
        let finite = builtin_group(finite_name)?;
        let table = finite
            .finite_group()
            .ok_or_else(|| Error::Invalid(format!("the F part of {name:?} must be finite")))?;
        return Ok(Engine::product_zn_f(rank, table.clone()));
    }
    if let Some(rank) = name.strip_prefix("free").and_then(|r| r.parse::<usize>().ok()) {
        if rank >= 1 {
            return Ok(Engine::free(rank));
        }
    }
    if let Some(rank) = name.strip_prefix("abelian").and_then(|r| r.parse::<usize>().ok()) {
        if rank >= 1 {
            return Ok(Engine::free_abelian(rank));
        }
    }
    if let Some(n) = name.strip_prefix('d').and_then(|r| r.parse::<usize>().ok()) {
        if n >= 2 {
            return Ok(Engine::finite(dihedral(n)));
        }
    }
    // direct products of cyclic groups: z2xz4, z3xz3, ...
    if name.contains('x') {
        let mut factors = Vec::new();
        for part in name.split('x') {
            let n = part
                .strip_prefix('z')
                .and_then(|r| r.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(fail)?;
            factors.push(cyclic(n));
        }
        let mut product = factors.first().cloned().ok_or_else(fail)?;
        for f in &factors[1..] {
            product = product.direct_product(f);
        }
        return Ok(Engine::finite(product));
    }
    if let Some(n) = name.strip_prefix('z').and_then(|r| r.parse::<usize>().ok()) {
        if n >= 1 {
            return Ok(Engine::finite(cyclic(n)));
        }
    }
    Err(fail())
}

/// One input to a run, with its digest.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InputRecord {
    pub role: String,
    pub source: String,
    pub sha256: String,
}

/// Deterministic run metadata embedded in every result document. Wall time is
/// deliberately absent: identical inputs must produce byte-identical
/// documents.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: String,
    pub toolkit_version: String,
    pub subcommand: String,
    pub inputs: Vec<InputRecord>,
    pub parameters: BTreeMap<String, String>,
}

impl Manifest {
    pub fn new(schema: &str, subcommand: &str) -> Self {
        Manifest {
            schema: schema.to_string(),
            toolkit_version: crate::TOOLKIT_VERSION.to_string(),
            subcommand: subcommand.to_string(),
            inputs: Vec::new(),
            parameters: BTreeMap::new(),
        }
    }

    pub fn input(mut self, role: &str, source: &str, sha256: String) -> Self {
        self.inputs.push(InputRecord { role: role.into(), source: source.into(), sha256 });
        self
    }

    pub fn parameter(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }
}

/// Configuration-set result document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigSetDoc {
    pub manifest: Manifest,
    pub n: usize,
    pub m: usize,
    pub exactness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub saturated: Option<bool>,
    pub configurations: Vec<Vec<usize>>,
}

/// Containment certificate document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub manifest: Manifest,
    pub certificate: Certificate,
}

/// Two-sided containment document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquivalenceDoc {
    pub manifest: Manifest,
    pub equivalent_within_bounds: bool,
    pub forward: Certificate,
    pub backward: Certificate,
}

/// Strong-containment certificate document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StrongDoc {
    pub manifest: Manifest,
    pub certificate: StrongCertificate,
}

/// Golden-family verification document.
#[derive(Clone, Debug, Serialize)]
pub struct GoldenDoc {
    pub manifest: Manifest,
    pub passed: bool,
    pub reports: Vec<GoldenReport>,
}

/// Certificate re-validation document.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyDoc {
    pub manifest: Manifest,
    pub verified: bool,
    pub checks: Vec<String>,
}

/// Machine-readable error document; paired with a nonzero exit status.
#[derive(Clone, Debug, Serialize)]
pub struct ErrorDoc {
    pub schema: String,
    pub error_kind: String,
    pub message: String,
}

impl ErrorDoc {
    pub fn from_error(err: &Error) -> Self {
        let error_kind = match err {
            Error::EngineMismatch(_) => "engine-mismatch",
            Error::ArityMismatch(_) => "arity-mismatch",
            Error::IndexOutOfRange(_) => "index-out-of-range",
            Error::InfiniteEngine => "infinite-engine",
            Error::InvalidTable(_) => "invalid-multiplication-table",
            Error::InvalidPermutation(_) => "invalid-permutation",
            Error::NotGenerating(_) => "not-generating",
            Error::UnverifiableGeneration(_) => "unverifiable-generation",
            Error::InvalidPartition(_) => "invalid-partition",
            Error::ClassificationDomain(_) => "classification-domain",
            Error::BudgetExceeded(_) => "budget-exceeded",
            Error::Parse(_) => "parse-error",
            Error::Invalid(_) => "invalid-input",
            Error::Io(_) => "io-error",
        };
        ErrorDoc {
            schema: "gcon/error/v1".into(),
            error_kind: error_kind.into(),
            message: err.to_string(),
        }
    }
}
