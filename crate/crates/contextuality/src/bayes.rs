//! Deterministic systems and their epistemic (Bayesian) mixtures.
//!
//! A fully specified deterministic system is always noncontextual, so the
//! interesting case is a system that is only *constrained*: each context
//! lists the outcome tuples it allows, and every choice of one allowed
//! tuple per context is a deterministic realization. Assigning a prior to
//! the realizations and averaging their point masses turns the family into
//! a quasi-probabilistic system whose contextuality can be measured. The
//! three-statement Liar antinomy is the canonical example: its uniform
//! mixture has uniform marginals, chain correlations `(+1, +1, -1)`, and a
//! noncontextual fraction of exactly zero.
//!
//! Constraints are extensional (explicit allowed tuples per context), never
//! a logic of cross-referencing statements: the direction of inference in
//! a statement like "q2 is true" is ambiguous, explicit tuple sets are not.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lp::{cbd_noncontextual, GlobalMassVector};
use crate::ratio::{format_rational, zero, Rational};
use crate::system::{outcome_string, BunchDistribution, ContentId, ContextId, Sign, System};

/// Default cap on the number of enumerated realizations (2^20).
pub const DEFAULT_MAX_REALIZATIONS: u64 = 1 << 20;

/// A context together with the outcome tuples it allows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextConstraint {
    pub context: ContextId,
    pub contents: Vec<ContentId>,
    pub allowed: BTreeSet<Vec<Sign>>,
}

/// A constraint-specified deterministic system: contents, contexts, and one
/// allowed-tuple set per context. Empty allowed sets are legal here; they
/// surface as the no-realization outcome when enumerating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationConstraints {
    contents: Vec<ContentId>,
    constraints: Vec<ContextConstraint>,
}

impl RealizationConstraints {
    pub fn new(contents: Vec<ContentId>, constraints: Vec<ContextConstraint>) -> Result<Self> {
        if contents.is_empty() || constraints.is_empty() {
            return Err(Error::EmptyRelation);
        }
        let mut seen_contents = BTreeSet::new();
        for q in &contents {
            if !seen_contents.insert(q.clone()) {
                return Err(Error::DuplicateContent(q.to_string()));
            }
        }
        let mut seen_contexts = BTreeSet::new();
        let mut measured = BTreeSet::new();
        for constraint in &constraints {
            if !seen_contexts.insert(constraint.context.clone()) {
                return Err(Error::DuplicateContext(constraint.context.to_string()));
            }
            if constraint.contents.is_empty() {
                return Err(Error::EmptyContext(constraint.context.to_string()));
            }
            let mut in_context = BTreeSet::new();
            for q in &constraint.contents {
                if !seen_contents.contains(q) {
                    return Err(Error::UnknownContent(q.to_string()));
                }
                if !in_context.insert(q.clone()) {
                    return Err(Error::DuplicateContent(q.to_string()));
                }
                measured.insert(q.clone());
            }
            for tuple in &constraint.allowed {
                if tuple.len() != constraint.contents.len() {
                    return Err(Error::OutcomeLength {
                        context: constraint.context.to_string(),
                        outcome: outcome_string(tuple),
                        got: tuple.len(),
                        expected: constraint.contents.len(),
                    });
                }
            }
        }
        for q in &contents {
            if !measured.contains(q) {
                return Err(Error::UnmeasuredContent(q.to_string()));
            }
        }
        Ok(Self {
            contents,
            constraints,
        })
    }

    pub fn contents(&self) -> &[ContentId] {
        &self.contents
    }

    pub fn constraints(&self) -> &[ContextConstraint] {
        &self.constraints
    }

    /// Product of the allowed-set sizes, saturating at `u128::MAX`.
    pub fn realization_count(&self) -> u128 {
        self.constraints
            .iter()
            .fold(1u128, |acc, c| {
                acc.saturating_mul(c.allowed.len() as u128)
            })
    }
}

/// Deterministic realizations of a constraint system with a prior over them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationFamily {
    realizations: Vec<System>,
    prior: Vec<Rational>,
}

impl RealizationFamily {
    /// Validates a family: at least one realization, a matching prior that
    /// sums to one, and a shared format (same contents, contexts, and
    /// per-context content lists).
    pub fn new(realizations: Vec<System>, prior: Vec<Rational>) -> Result<Self> {
        if realizations.is_empty() {
            return Err(Error::NoRealizations(Vec::new()));
        }
        if prior.len() != realizations.len() {
            return Err(Error::InvalidPrior(format!(
                "{} weights for {} realizations",
                prior.len(),
                realizations.len()
            )));
        }
        let mut total = zero();
        for p in &prior {
            if p.is_negative() {
                return Err(Error::InvalidPrior(format!(
                    "negative weight {}",
                    format_rational(p)
                )));
            }
            total += p;
        }
        if !total.is_one() {
            return Err(Error::InvalidPrior(format!(
                "weights sum to {}",
                format_rational(&total)
            )));
        }
        let first = &realizations[0];
        for system in &realizations[1..] {
            let same_format = system.contents() == first.contents()
                && system.contexts() == first.contexts()
                && system
                    .bunches()
                    .iter()
                    .zip(first.bunches())
                    .all(|(a, b)| a.contents() == b.contents());
            if !same_format {
                return Err(Error::Format(
                    "realizations do not share a single system format".to_string(),
                ));
            }
        }
        Ok(Self {
            realizations,
            prior,
        })
    }

    pub fn realizations(&self) -> &[System] {
        &self.realizations
    }

    pub fn prior(&self) -> &[Rational] {
        &self.prior
    }

    pub fn len(&self) -> usize {
        self.realizations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.realizations.is_empty()
    }

    /// Replaces the prior, keeping the realizations.
    pub fn with_prior(self, prior: Vec<Rational>) -> Result<Self> {
        Self::new(self.realizations, prior)
    }
}

/// Enumerates every deterministic realization with the default cap and a
/// uniform prior.
pub fn enumerate_realizations(rc: &RealizationConstraints) -> Result<RealizationFamily> {
    enumerate_realizations_with_limit(rc, DEFAULT_MAX_REALIZATIONS)
}

/// Enumerates the Cartesian product of the allowed tuples, one per context,
/// in lexicographic order (contexts in canonical order, first context most
/// significant, tuples ascending). Contexts with empty allowed sets make
/// the family empty, which is reported with the offending contexts rather
/// than silently dropped.
pub fn enumerate_realizations_with_limit(
    rc: &RealizationConstraints,
    max_realizations: u64,
) -> Result<RealizationFamily> {
    let empty: Vec<String> = rc
        .constraints()
        .iter()
        .filter(|c| c.allowed.is_empty())
        .map(|c| c.context.to_string())
        .collect();
    if !empty.is_empty() {
        return Err(Error::NoRealizations(empty));
    }
    let count = rc.realization_count();
    if count > max_realizations as u128 {
        return Err(Error::RealizationLimit {
            count: count.to_string(),
            limit: max_realizations,
        });
    }

    let choices: Vec<Vec<&Vec<Sign>>> = rc
        .constraints()
        .iter()
        .map(|c| c.allowed.iter().collect())
        .collect();
    let mut indices = vec![0usize; choices.len()];
    let mut realizations = Vec::with_capacity(count as usize);
    loop {
        let bunches = rc
            .constraints()
            .iter()
            .enumerate()
            .map(|(c, constraint)| {
                let mut pmf = BTreeMap::new();
                pmf.insert(choices[c][indices[c]].clone(), crate::ratio::one());
                BunchDistribution::new(
                    constraint.context.clone(),
                    constraint.contents.clone(),
                    pmf,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        realizations.push(System::new(rc.contents().to_vec(), bunches)?);

        // Odometer: last context cycles fastest.
        let mut pos = indices.len();
        loop {
            if pos == 0 {
                let n = realizations.len();
                let weight = Rational::new(1.into(), (n as i64).into());
                return RealizationFamily::new(realizations, vec![weight; n]);
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < choices[pos].len() {
                break;
            }
            indices[pos] = 0;
        }
    }
}

/// The prior-weighted average of the realizations' point masses, context by
/// context. The output is a valid system; with a uniform prior each bunch
/// is uniform over the allowed tuples of its context.
pub fn epistemic_mixture(family: &RealizationFamily) -> Result<System> {
    let first = &family.realizations()[0];
    let mut bunches = Vec::new();
    for (c, template) in first.bunches().iter().enumerate() {
        let mut pmf: BTreeMap<Vec<Sign>, Rational> = BTreeMap::new();
        for (system, weight) in family.realizations().iter().zip(family.prior()) {
            for (tuple, p) in system.bunches()[c].pmf() {
                *pmf.entry(tuple.clone()).or_insert_with(zero) += weight * p;
            }
        }
        bunches.push(BunchDistribution::new(
            template.context().clone(),
            template.contents().to_vec(),
            pmf,
        )?);
    }
    System::new(first.contents().to_vec(), bunches)
}

/// The `n`-statement Liar constraint system: contents `q1..qn`, contexts
/// `ci` over `(qi, qi+1)` allowing equal values, and the closing context
/// `cn` over `(qn, q1)` allowing opposite values. Each context allows two
/// tuples, so there are `2^n` realizations.
pub fn liar_system(n: usize) -> Result<RealizationConstraints> {
    if n < 3 {
        return Err(Error::LiarTooSmall(n));
    }
    let contents: Vec<ContentId> = (1..=n).map(|i| ContentId::new(format!("q{i}"))).collect();
    let equal: BTreeSet<Vec<Sign>> = [
        vec![Sign::Minus, Sign::Minus],
        vec![Sign::Plus, Sign::Plus],
    ]
    .into_iter()
    .collect();
    let opposite: BTreeSet<Vec<Sign>> = [
        vec![Sign::Minus, Sign::Plus],
        vec![Sign::Plus, Sign::Minus],
    ]
    .into_iter()
    .collect();
    let constraints = (1..=n)
        .map(|i| {
            let (a, b, allowed) = if i < n {
                (i, i + 1, equal.clone())
            } else {
                (n, 1, opposite.clone())
            };
            ContextConstraint {
                context: ContextId::new(format!("c{i}")),
                contents: vec![
                    ContentId::new(format!("q{a}")),
                    ContentId::new(format!("q{b}")),
                ],
                allowed,
            }
        })
        .collect();
    RealizationConstraints::new(contents, constraints)
}

/// Asserts the deterministic-noncontextuality theorem on one system: a
/// deterministic system must come out noncontextual, and the single overall
/// coupling is returned as the witness. A `false` verdict is an
/// implementation bug, reported as an invariant error.
pub fn assert_deterministic_noncontextual(system: &System) -> Result<GlobalMassVector> {
    if !system.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    let (noncontextual, witness) = cbd_noncontextual(system)?;
    if !noncontextual {
        return Err(Error::Invariant(
            "a deterministic system was reported contextual".to_string(),
        ));
    }
    Ok(witness)
}
