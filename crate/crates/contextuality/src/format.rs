//! JSON interchange format for systems and constraint files.
//!
//! Outcome keys are strings over the `{+,-}` alphabet (`+` is `+1`, `-` is
//! `-1`), position-aligned with the context's `contents` array. All
//! probabilities travel as rational strings (`"a/b"` or an integer
//! literal), never as floats. Canonical files have sorted outcome keys,
//! lowest-terms rationals, and no zero entries; serializing a parsed
//! canonical file reproduces it byte for byte.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::bayes::{ContextConstraint, RealizationConstraints};
use crate::consistify::{ConsistifiedSystem, ContextKind};
use crate::error::{Error, Result};
use crate::ratio::{format_rational, parse_rational, Rational};
use crate::system::{outcome_string, parse_outcomes, BunchDistribution, System};

/// Top-level file: a system (every context carries `pmf`) or a constraint
/// description (every context carries `allowed`, optionally with `prior`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemFile {
    pub contents: Vec<String>,
    pub contexts: Vec<ContextFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prior: Option<PriorSpec>,
    /// Provenance annotation written by consistification: new content to
    /// (old content, old context).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<BTreeMap<String, OriginEntry>>,
    /// Provenance annotation written by consistification: context id to
    /// `"context"` or `"content"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context_kinds: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContextFile {
    pub id: String,
    pub contents: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmf: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub allowed: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PriorSpec {
    Keyword(String),
    Weights(Vec<String>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OriginEntry {
    pub content: String,
    pub context: String,
}

/// A parsed file, classified by what its contexts carry.
#[derive(Debug, Clone)]
pub enum ParsedFile {
    System(System),
    Constraints {
        constraints: RealizationConstraints,
        prior: Option<Vec<Rational>>,
    },
}

/// Parses and validates a file from JSON text.
pub fn parse_file(text: &str) -> Result<ParsedFile> {
    let file: SystemFile = serde_json::from_str(text)?;
    from_file(&file)
}

/// Validates an already-deserialized file.
pub fn from_file(file: &SystemFile) -> Result<ParsedFile> {
    let with_pmf = file.contexts.iter().filter(|c| c.pmf.is_some()).count();
    let with_allowed = file.contexts.iter().filter(|c| c.allowed.is_some()).count();
    let total = file.contexts.len();
    if with_pmf == total && with_allowed == 0 {
        if file.prior.is_some() {
            return Err(Error::Format(
                "`prior` is only meaningful in constraint files".to_string(),
            ));
        }
        Ok(ParsedFile::System(system_from_file(file)?))
    } else if with_allowed == total && with_pmf == 0 {
        let constraints = constraints_from_file(file)?;
        let prior = match &file.prior {
            None => None,
            Some(PriorSpec::Keyword(word)) if word == "uniform" => None,
            Some(PriorSpec::Keyword(word)) => {
                return Err(Error::InvalidPrior(format!("unknown keyword `{word}`")))
            }
            Some(PriorSpec::Weights(weights)) => Some(
                weights
                    .iter()
                    .map(|w| parse_rational(w))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok(ParsedFile::Constraints { constraints, prior })
    } else {
        Err(Error::Format(
            "every context must carry `pmf` (system file) or every context must carry `allowed` (constraint file)"
                .to_string(),
        ))
    }
}

/// Parses a file that must be a system.
pub fn parse_system(text: &str) -> Result<System> {
    match parse_file(text)? {
        ParsedFile::System(system) => Ok(system),
        ParsedFile::Constraints { .. } => Err(Error::Format(
            "this command needs a system file with bunch pmfs, not a constraint file".to_string(),
        )),
    }
}

fn system_from_file(file: &SystemFile) -> Result<System> {
    let contents = file.contents.iter().map(|s| s.as_str().into()).collect();
    let mut bunches = Vec::new();
    for context in &file.contexts {
        let entries = context.pmf.as_ref().expect("checked by caller");
        let mut pmf = BTreeMap::new();
        for (outcome, value) in entries {
            pmf.insert(parse_outcomes(outcome)?, parse_rational(value)?);
        }
        bunches.push(BunchDistribution::new(
            context.id.as_str().into(),
            context.contents.iter().map(|s| s.as_str().into()).collect(),
            pmf,
        )?);
    }
    System::new(contents, bunches)
}

fn constraints_from_file(file: &SystemFile) -> Result<RealizationConstraints> {
    let contents = file.contents.iter().map(|s| s.as_str().into()).collect();
    let mut constraints = Vec::new();
    for context in &file.contexts {
        let allowed_strings = context.allowed.as_ref().expect("checked by caller");
        let mut allowed = BTreeSet::new();
        for outcome in allowed_strings {
            allowed.insert(parse_outcomes(outcome)?);
        }
        constraints.push(ContextConstraint {
            context: context.id.as_str().into(),
            contents: context.contents.iter().map(|s| s.as_str().into()).collect(),
            allowed,
        });
    }
    RealizationConstraints::new(contents, constraints)
}

/// Serializes a system into the canonical file form: sorted outcome keys,
/// lowest-terms rationals, no zero entries.
pub fn system_to_file(system: &System) -> SystemFile {
    let contexts = system
        .bunches()
        .iter()
        .map(|bunch| ContextFile {
            id: bunch.context().to_string(),
            contents: bunch.contents().iter().map(|q| q.to_string()).collect(),
            pmf: Some(
                bunch
                    .pmf()
                    .iter()
                    .map(|(t, p)| (outcome_string(t), format_rational(p)))
                    .collect(),
            ),
            allowed: None,
        })
        .collect();
    SystemFile {
        contents: system.contents().iter().map(|q| q.to_string()).collect(),
        contexts,
        prior: None,
        origin: None,
        context_kinds: None,
    }
}

/// Serializes a consistified system with its provenance annotations.
pub fn consistified_to_file(cs: &ConsistifiedSystem) -> SystemFile {
    let mut file = system_to_file(&cs.base);
    file.origin = Some(
        cs.origin
            .iter()
            .map(|(new, (q, c))| {
                (
                    new.to_string(),
                    OriginEntry {
                        content: q.to_string(),
                        context: c.to_string(),
                    },
                )
            })
            .collect(),
    );
    file.context_kinds = Some(
        cs.kinds
            .iter()
            .map(|(c, kind)| {
                let label = match kind {
                    ContextKind::OldContext => "context",
                    ContextKind::OldContent => "content",
                };
                (c.to_string(), label.to_string())
            })
            .collect(),
    );
    file
}

/// Canonical JSON rendering: pretty-printed with a trailing newline.
pub fn to_json_string(file: &SystemFile) -> String {
    let mut text = serde_json::to_string_pretty(file).expect("file form serializes");
    text.push('\n');
    text
}
