//! The content-context system data model.
//!
//! A system is a finite family of dichotomous (±1) random variables, each
//! labeled by *what* is measured (its content) and *under which conditions*
//! (its context). Variables sharing a context are jointly distributed and
//! form a *bunch*; variables sharing a content across contexts form a
//! *connection* and carry no joint distribution. Two structural rules hold
//! by construction: every bunch is stored as a single joint pmf, and no
//! cross-context joint is ever stored.
//!
//! All distributions are exact rational pmfs over `{-1,+1}^k`; equality of
//! distributions means exact equality of rationals, never a tolerance.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratio::{format_rational, one, zero, Rational};

/// Symbolic identifier of a measured content (the "what").
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContentId(String);

/// Symbolic identifier of a measurement context (the "under which conditions").
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContextId(String);

macro_rules! id_impls {
    ($ty:ident) => {
        impl $ty {
            pub fn new(name: impl Into<String>) -> Self {
                Self(name.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $ty {
            fn from(name: &str) -> Self {
                Self(name.to_string())
            }
        }

        impl From<String> for $ty {
            fn from(name: String) -> Self {
                Self(name)
            }
        }

        impl std::borrow::Borrow<str> for $ty {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

id_impls!(ContentId);
id_impls!(ContextId);

/// One of the two values a variable can attain. `Minus` sorts before `Plus`,
/// which fixes the lexicographic order of outcome tuples everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn from_char(ch: char) -> Option<Sign> {
        match ch {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

/// Parses an outcome string such as `"+-+"` into signs, position by position.
pub fn parse_outcomes(text: &str) -> Result<Vec<Sign>> {
    text.chars()
        .map(|ch| Sign::from_char(ch).ok_or_else(|| Error::ParseOutcome(text.to_string())))
        .collect()
}

/// Renders signs as an outcome string over the `{+,-}` alphabet.
pub fn outcome_string(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.to_char()).collect()
}

/// Packs a tuple into an integer, first coordinate most significant,
/// `Minus = 0`, `Plus = 1`. Ascending integers enumerate tuples in
/// lexicographic order with `-1 < +1`.
pub fn pattern_of(signs: &[Sign]) -> u64 {
    signs.iter().fold(0, |acc, s| {
        (acc << 1)
            | match s {
                Sign::Minus => 0,
                Sign::Plus => 1,
            }
    })
}

/// Inverse of [`pattern_of`] for tuples of a known length.
pub fn signs_of(pattern: u64, len: usize) -> Vec<Sign> {
    (0..len)
        .map(|i| {
            if (pattern >> (len - 1 - i)) & 1 == 1 {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect()
}

/// The is-measured-in relation: every (content, context) pair of the system,
/// in context-major canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementRelation {
    pairs: Vec<(ContentId, ContextId)>,
}

impl MeasurementRelation {
    pub fn pairs(&self) -> &[(ContentId, ContextId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, content: &ContentId, context: &ContextId) -> bool {
        self.pairs.iter().any(|(q, c)| q == content && c == context)
    }
}

/// Joint pmf of all variables sharing one context.
///
/// The pmf is sparse: outcomes absent from the map have probability zero,
/// and zero entries are never stored, so equal distributions compare equal
/// as maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BunchDistribution {
    context: ContextId,
    contents: Vec<ContentId>,
    pmf: BTreeMap<Vec<Sign>, Rational>,
}

impl BunchDistribution {
    /// Validates and canonicalizes a bunch pmf: no duplicate contents, all
    /// outcome tuples of length `k`, probabilities nonnegative and summing
    /// exactly to one. Zero entries are dropped.
    pub fn new(
        context: ContextId,
        contents: Vec<ContentId>,
        pmf: BTreeMap<Vec<Sign>, Rational>,
    ) -> Result<Self> {
        if contents.is_empty() {
            return Err(Error::EmptyContext(context.to_string()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for q in &contents {
            if !seen.insert(q.clone()) {
                return Err(Error::DuplicateContent(q.to_string()));
            }
        }
        let arity = contents.len();
        let mut sum = zero();
        let mut canonical = BTreeMap::new();
        for (outcome, p) in pmf {
            if outcome.len() != arity {
                return Err(Error::OutcomeLength {
                    context: context.to_string(),
                    outcome: outcome_string(&outcome),
                    got: outcome.len(),
                    expected: arity,
                });
            }
            if p.is_negative() {
                return Err(Error::NegativeProbability {
                    context: context.to_string(),
                    outcome: outcome_string(&outcome),
                    value: format_rational(&p),
                });
            }
            sum += &p;
            if !p.is_zero() {
                // Duplicate keys cannot occur: the input is already a map.
                canonical.insert(outcome, p);
            }
        }
        if !sum.is_one() {
            return Err(Error::PmfSum {
                context: context.to_string(),
                sum: format_rational(&sum),
            });
        }
        Ok(Self {
            context,
            contents,
            pmf: canonical,
        })
    }

    pub fn context(&self) -> &ContextId {
        &self.context
    }

    pub fn contents(&self) -> &[ContentId] {
        &self.contents
    }

    pub fn arity(&self) -> usize {
        self.contents.len()
    }

    /// Probability of one outcome tuple; zero when absent.
    pub fn probability(&self, outcome: &[Sign]) -> Rational {
        self.pmf.get(outcome).cloned().unwrap_or_else(zero)
    }

    /// Support of the pmf in lexicographic order.
    pub fn pmf(&self) -> &BTreeMap<Vec<Sign>, Rational> {
        &self.pmf
    }

    pub fn is_point_mass(&self) -> bool {
        self.pmf.len() == 1
    }

    /// Exact marginal pmf on an ordered subset of the bunch contents,
    /// computed by summing out the discarded coordinates.
    pub fn marginal(&self, subset: &[ContentId]) -> Result<BTreeMap<Vec<Sign>, Rational>> {
        let positions = self.positions_of(subset)?;
        let mut out: BTreeMap<Vec<Sign>, Rational> = BTreeMap::new();
        for (outcome, p) in &self.pmf {
            let projected: Vec<Sign> = positions.iter().map(|&i| outcome[i]).collect();
            *out.entry(projected).or_insert_with(zero) += p;
        }
        Ok(out)
    }

    /// Expectation of the product of the variables in `subset`, e.g. the
    /// mean of a single variable or the correlation of a pair.
    pub fn expectation(&self, subset: &[ContentId]) -> Result<Rational> {
        let positions = self.positions_of(subset)?;
        let mut total = zero();
        for (outcome, p) in &self.pmf {
            let product: i64 = positions.iter().map(|&i| outcome[i].value()).product();
            total += p * Rational::from_integer(product.into());
        }
        Ok(total)
    }

    fn positions_of(&self, subset: &[ContentId]) -> Result<Vec<usize>> {
        let mut seen = std::collections::BTreeSet::new();
        subset
            .iter()
            .map(|q| {
                if !seen.insert(q) {
                    return Err(Error::DuplicateContent(q.to_string()));
                }
                self.contents.iter().position(|c| c == q).ok_or_else(|| {
                    Error::SubsetNotInBunch {
                        context: self.context.to_string(),
                        content: q.to_string(),
                    }
                })
            })
            .collect()
    }
}

/// All variables sharing one content: the ordered list of contexts that
/// measure it, each with the exact marginal probability of `+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    content: ContentId,
    members: Vec<(ContextId, Rational)>,
}

impl Connection {
    /// Builds a connection from explicit marginals; every probability must
    /// lie in `[0, 1]` and at least one member is required.
    pub fn new(content: ContentId, members: Vec<(ContextId, Rational)>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyConnection);
        }
        for (_, p) in &members {
            if p.is_negative() || *p > one() {
                return Err(Error::ProbabilityRange(format_rational(p)));
            }
        }
        Ok(Self { content, members })
    }

    pub fn content(&self) -> &ContentId {
        &self.content
    }

    pub fn members(&self) -> &[(ContextId, Rational)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The marginal probabilities of `+1`, in member order.
    pub fn marginals(&self) -> Vec<Rational> {
        self.members.iter().map(|(_, p)| p.clone()).collect()
    }
}

/// Result of a simple consistent-connectedness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleConnectedness {
    pub holds: bool,
    pub violations: Vec<SimpleViolation>,
}

/// A content measured with different one-variable distributions in two contexts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleViolation {
    pub content: ContentId,
    pub context_a: ContextId,
    pub context_b: ContextId,
}

/// Result of a strong consistent-connectedness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongConnectedness {
    pub holds: bool,
    pub violations: Vec<StrongViolation>,
}

/// Two overlapping bunches whose joint distributions on the shared contents differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongViolation {
    pub context_a: ContextId,
    pub context_b: ContextId,
    pub shared: Vec<ContentId>,
}

/// A validated system: contents, contexts, the is-measured-in relation, and
/// exactly one bunch distribution per context. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    contents: Vec<ContentId>,
    contexts: Vec<ContextId>,
    bunches: Vec<BunchDistribution>,
}

impl System {
    /// Validates a raw description. The relation is read off the bunches:
    /// the contents of each bunch are exactly the contents measured in its
    /// context. Errors on duplicate ids, unknown contents, contexts without
    /// contents, unmeasured contents, and an empty relation.
    pub fn new(contents: Vec<ContentId>, bunches: Vec<BunchDistribution>) -> Result<Self> {
        if contents.is_empty() || bunches.is_empty() {
            return Err(Error::EmptyRelation);
        }
        let mut seen_contents = std::collections::BTreeSet::new();
        for q in &contents {
            if !seen_contents.insert(q.clone()) {
                return Err(Error::DuplicateContent(q.to_string()));
            }
        }
        let mut seen_contexts = std::collections::BTreeSet::new();
        let mut measured = std::collections::BTreeSet::new();
        for bunch in &bunches {
            if !seen_contexts.insert(bunch.context().clone()) {
                return Err(Error::DuplicateContext(bunch.context().to_string()));
            }
            for q in bunch.contents() {
                if !seen_contents.contains(q) {
                    return Err(Error::UnknownContent(q.to_string()));
                }
                measured.insert(q.clone());
            }
        }
        for q in &contents {
            if !measured.contains(q) {
                return Err(Error::UnmeasuredContent(q.to_string()));
            }
        }
        let contexts = bunches.iter().map(|b| b.context().clone()).collect();
        Ok(Self {
            contents,
            contexts,
            bunches,
        })
    }

    /// Convenience builder; see [`SystemBuilder`].
    pub fn builder() -> SystemBuilder {
        SystemBuilder::default()
    }

    pub fn contents(&self) -> &[ContentId] {
        &self.contents
    }

    pub fn contexts(&self) -> &[ContextId] {
        &self.contexts
    }

    pub fn bunches(&self) -> &[BunchDistribution] {
        &self.bunches
    }

    pub fn content_index(&self, q: &ContentId) -> Result<usize> {
        self.contents
            .iter()
            .position(|x| x == q)
            .ok_or_else(|| Error::UnknownContent(q.to_string()))
    }

    pub fn context_index(&self, c: &ContextId) -> Result<usize> {
        self.contexts
            .iter()
            .position(|x| x == c)
            .ok_or_else(|| Error::UnknownContext(c.to_string()))
    }

    /// The bunch of one context.
    pub fn bunch(&self, c: &ContextId) -> Result<&BunchDistribution> {
        Ok(&self.bunches[self.context_index(c)?])
    }

    /// The is-measured-in relation in context-major canonical order.
    pub fn relation(&self) -> MeasurementRelation {
        let mut pairs = Vec::new();
        for bunch in &self.bunches {
            for q in bunch.contents() {
                pairs.push((q.clone(), bunch.context().clone()));
            }
        }
        MeasurementRelation { pairs }
    }

    /// Number of (content, context) pairs, the cardinality of the relation.
    pub fn relation_size(&self) -> usize {
        self.bunches.iter().map(|b| b.arity()).sum()
    }

    /// Contexts measuring `q`, in canonical context order.
    pub fn measuring_contexts(&self, q: &ContentId) -> Result<Vec<&ContextId>> {
        self.content_index(q)?;
        Ok(self
            .bunches
            .iter()
            .filter(|b| b.contents().contains(q))
            .map(|b| b.context())
            .collect())
    }

    /// The connection of a content: its measuring contexts together with
    /// the exact marginal probability of `+1` in each.
    pub fn connection(&self, q: &ContentId) -> Result<Connection> {
        self.content_index(q)?;
        let mut members = Vec::new();
        for bunch in &self.bunches {
            if bunch.contents().contains(q) {
                let marginal = bunch.marginal(std::slice::from_ref(q))?;
                let p = marginal
                    .get(&vec![Sign::Plus])
                    .cloned()
                    .unwrap_or_else(zero);
                members.push((bunch.context().clone(), p));
            }
        }
        Connection::new(q.clone(), members)
    }

    /// Checks that content-sharing variables have equal one-variable
    /// distributions in every pair of contexts measuring them.
    pub fn simply_consistently_connected(&self) -> SimpleConnectedness {
        let mut violations = Vec::new();
        for q in &self.contents {
            let connection = self.connection(q).expect("contents are valid");
            let members = connection.members();
            for i in 0..members.len() {
                for j in (i + 1)..members.len() {
                    if members[i].1 != members[j].1 {
                        violations.push(SimpleViolation {
                            content: q.clone(),
                            context_a: members[i].0.clone(),
                            context_b: members[j].0.clone(),
                        });
                    }
                }
            }
        }
        SimpleConnectedness {
            holds: violations.is_empty(),
            violations,
        }
    }

    /// Checks that any two overlapping bunches induce the same joint
    /// distribution on their shared contents.
    pub fn strongly_consistently_connected(&self) -> StrongConnectedness {
        let mut violations = Vec::new();
        for i in 0..self.bunches.len() {
            for j in (i + 1)..self.bunches.len() {
                let shared: Vec<ContentId> = self
                    .contents
                    .iter()
                    .filter(|q| {
                        self.bunches[i].contents().contains(q)
                            && self.bunches[j].contents().contains(q)
                    })
                    .cloned()
                    .collect();
                if shared.is_empty() {
                    continue;
                }
                let a = self.bunches[i].marginal(&shared).expect("shared contents");
                let b = self.bunches[j].marginal(&shared).expect("shared contents");
                if a != b {
                    violations.push(StrongViolation {
                        context_a: self.contexts[i].clone(),
                        context_b: self.contexts[j].clone(),
                        shared,
                    });
                }
            }
        }
        StrongConnectedness {
            holds: violations.is_empty(),
            violations,
        }
    }

    /// True when every bunch is a point mass.
    pub fn is_deterministic(&self) -> bool {
        self.bunches.iter().all(|b| b.is_point_mass())
    }
}

type RawBunch = (ContextId, Vec<ContentId>, Vec<(String, String)>);

/// Incremental construction of a [`System`] from string ids, outcome strings,
/// and rational strings. Validation happens in [`SystemBuilder::build`].
#[derive(Default)]
pub struct SystemBuilder {
    contents: Vec<ContentId>,
    bunches: Vec<RawBunch>,
}

impl SystemBuilder {
    pub fn contents<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.contents
            .extend(ids.into_iter().map(|s| ContentId::new(s)));
        self
    }

    /// Adds a context with its bunch pmf given as `(outcome, probability)`
    /// string pairs, e.g. `("+-", "1/2")`.
    pub fn context<S, I, Q>(mut self, id: S, contents: I, pmf: &[(&str, &str)]) -> Self
    where
        S: Into<String>,
        I: IntoIterator<Item = Q>,
        Q: Into<String>,
    {
        let contents = contents
            .into_iter()
            .map(|q| ContentId::new(q))
            .collect::<Vec<_>>();
        let pmf = pmf
            .iter()
            .map(|(o, p)| (o.to_string(), p.to_string()))
            .collect();
        self.bunches.push((ContextId::new(id), contents, pmf));
        self
    }

    /// Adds a deterministic context: a point mass on one outcome string.
    pub fn point_context<S, I, Q>(self, id: S, contents: I, outcome: &str) -> Self
    where
        S: Into<String>,
        I: IntoIterator<Item = Q>,
        Q: Into<String>,
    {
        self.context(id, contents, &[(outcome, "1")])
    }

    pub fn build(self) -> Result<System> {
        let mut bunches = Vec::new();
        for (context, contents, entries) in self.bunches {
            let mut pmf = BTreeMap::new();
            for (outcome, prob) in entries {
                let key = parse_outcomes(&outcome)?;
                let value = crate::ratio::parse_rational(&prob)?;
                if pmf.insert(key, value).is_some() {
                    return Err(Error::Format(format!(
                        "context `{context}`: duplicate outcome `{outcome}`"
                    )));
                }
            }
            bunches.push(BunchDistribution::new(context, contents, pmf)?);
        }
        System::new(self.contents, bunches)
    }
}
