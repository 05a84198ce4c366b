//! Consistification: rewriting an arbitrary system into a consistently
//! connected, contextually equivalent one.
//!
//! Every variable `R_q^c` of the input becomes a fresh content measured in
//! exactly two new contexts: one context per old context (carrying a copy
//! of the old bunch) and one context per old content (carrying the
//! multimaximal coupling of the old connection as a new bunch). The result
//! has one content per (content, context) pair of the input and
//! `|contexts| + |contents|` contexts.

use std::collections::{BTreeMap, BTreeSet};

use crate::coupling::multimaximal_coupling;
use crate::error::{Error, Result};
use crate::system::{BunchDistribution, ContentId, ContextId, System};

/// Whether a consistified context descends from an old context or an old content.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContextKind {
    OldContext,
    OldContent,
}

/// A consistified system together with its provenance maps.
#[derive(Debug, Clone)]
pub struct ConsistifiedSystem {
    /// The consistently connected output system.
    pub base: System,
    /// Each new content mapped to the (content, context) pair it came from.
    pub origin: BTreeMap<ContentId, (ContentId, ContextId)>,
    /// Each new context mapped to its kind.
    pub kinds: BTreeMap<ContextId, ContextKind>,
}

/// New content id for the variable of `content` in `context`.
pub fn derived_content_id(content: &ContentId, context: &ContextId) -> ContentId {
    ContentId::new(format!("{content}@{context}"))
}

/// New context id for an old context.
pub fn context_from_context(context: &ContextId) -> ContextId {
    ContextId::new(format!("c:{context}"))
}

/// New context id for an old content.
pub fn context_from_content(content: &ContentId) -> ContextId {
    ContextId::new(format!("q:{content}"))
}

/// Builds the consistification of a system.
///
/// For each old context the new bunch coincides in distribution with the
/// old one (contents relabeled); for each old content the new bunch is the
/// multimaximal coupling of its connection, with coordinates ordered by
/// the connection's canonical member order.
pub fn consistify(system: &System) -> Result<ConsistifiedSystem> {
    let mut contents = Vec::new();
    let mut origin = BTreeMap::new();
    for bunch in system.bunches() {
        for q in bunch.contents() {
            let id = derived_content_id(q, bunch.context());
            contents.push(id.clone());
            origin.insert(id, (q.clone(), bunch.context().clone()));
        }
    }

    let mut bunches = Vec::new();
    let mut kinds = BTreeMap::new();
    for bunch in system.bunches() {
        let context = context_from_context(bunch.context());
        kinds.insert(context.clone(), ContextKind::OldContext);
        let relabeled: Vec<ContentId> = bunch
            .contents()
            .iter()
            .map(|q| derived_content_id(q, bunch.context()))
            .collect();
        bunches.push(BunchDistribution::new(
            context,
            relabeled,
            bunch.pmf().clone(),
        )?);
    }
    for q in system.contents() {
        let connection = system.connection(q)?;
        let coupling = multimaximal_coupling(&connection);
        let context = context_from_content(q);
        kinds.insert(context.clone(), ContextKind::OldContent);
        let coordinates: Vec<ContentId> = connection
            .members()
            .iter()
            .map(|(c, _)| derived_content_id(q, c))
            .collect();
        bunches.push(BunchDistribution::new(
            context,
            coordinates,
            coupling.pmf().clone(),
        )?);
    }

    let base = System::new(contents, bunches)?;
    Ok(ConsistifiedSystem {
        base,
        origin,
        kinds,
    })
}

/// Structural summary of a verified consistified system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistifyReport {
    pub contents: usize,
    pub contexts: usize,
    /// Bunches from old contexts are pairwise disjoint in contents.
    pub context_bunches_disjoint: bool,
    /// Bunches from old contents are pairwise disjoint in contents.
    pub content_bunches_disjoint: bool,
    /// Any old-content bunch and old-context bunch share at most one content.
    pub cross_overlap_at_most_one: bool,
    /// Every connection has exactly two members with equal marginals.
    pub connections_paired: bool,
}

/// Verifies the four structural properties of a consistified system,
/// erroring on the first violation. A violation on the output of
/// [`consistify`] signals an implementation bug; the check also serves as
/// a negative control for hand-built inputs.
pub fn check_consistified_properties(cs: &ConsistifiedSystem) -> Result<ConsistifyReport> {
    let base = &cs.base;
    let mut context_sets: Vec<BTreeSet<&ContentId>> = Vec::new();
    let mut content_sets: Vec<BTreeSet<&ContentId>> = Vec::new();
    for bunch in base.bunches() {
        let kind = cs.kinds.get(bunch.context()).ok_or_else(|| {
            Error::ConsistifiedProperty(format!(
                "context `{}` has no recorded kind",
                bunch.context()
            ))
        })?;
        let set: BTreeSet<&ContentId> = bunch.contents().iter().collect();
        match kind {
            ContextKind::OldContext => context_sets.push(set),
            ContextKind::OldContent => content_sets.push(set),
        }
    }

    let disjoint = |sets: &[BTreeSet<&ContentId>], label: &str| -> Result<()> {
        for i in 0..sets.len() {
            for j in (i + 1)..sets.len() {
                if sets[i].intersection(&sets[j]).next().is_some() {
                    return Err(Error::ConsistifiedProperty(format!(
                        "{label} bunches {i} and {j} share a content"
                    )));
                }
            }
        }
        Ok(())
    };
    disjoint(&context_sets, "old-context")?;
    disjoint(&content_sets, "old-content")?;

    for (i, content_set) in content_sets.iter().enumerate() {
        for (j, context_set) in context_sets.iter().enumerate() {
            if content_set.intersection(context_set).count() > 1 {
                return Err(Error::ConsistifiedProperty(format!(
                    "old-content bunch {i} and old-context bunch {j} share more than one content"
                )));
            }
        }
    }

    for q in base.contents() {
        let connection = base.connection(q)?;
        if connection.len() != 2 {
            return Err(Error::ConsistifiedProperty(format!(
                "content `{q}` is measured in {} contexts, expected 2",
                connection.len()
            )));
        }
        let members = connection.members();
        if members[0].1 != members[1].1 {
            return Err(Error::ConsistifiedProperty(format!(
                "content `{q}` has unequal marginals across its two contexts"
            )));
        }
        let kind_a = cs.kinds.get(&members[0].0);
        let kind_b = cs.kinds.get(&members[1].0);
        if !matches!(
            (kind_a, kind_b),
            (Some(ContextKind::OldContext), Some(ContextKind::OldContent))
                | (Some(ContextKind::OldContent), Some(ContextKind::OldContext))
        ) {
            return Err(Error::ConsistifiedProperty(format!(
                "content `{q}` is not paired across one old-context and one old-content bunch"
            )));
        }
    }

    Ok(ConsistifyReport {
        contents: base.contents().len(),
        contexts: base.contexts().len(),
        context_bunches_disjoint: true,
        content_bunches_disjoint: true,
        cross_overlap_at_most_one: true,
        connections_paired: true,
    })
}
