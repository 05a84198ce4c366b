//! Contextuality analysis of finite systems of dichotomous random variables.
//!
//! A *system* is a family of ±1-valued random variables, each labeled by
//! its content (what is measured) and its context (under which conditions).
//! Variables sharing a context have a joint distribution (a *bunch*);
//! variables sharing a content across contexts (a *connection*) do not.
//! This crate decides and measures how far such a system is from admitting
//! a single global source:
//!
//! - [`system`] models systems with exact rational probabilities and checks
//!   simple and strong consistent connectedness and determinism;
//! - [`coupling`] constructs the unique multimaximal coupling of a
//!   connection and validates it against an exact LP oracle;
//! - [`consistify`] rewrites an arbitrary system into a consistently
//!   connected, contextually equivalent one;
//! - [`lp`] computes the noncontextual fraction `alpha_max` and the
//!   contextual fraction `1 - alpha_max` by exact rational linear
//!   programming, with verdicts at 0 and 1 decided exactly;
//! - [`bayes`] enumerates deterministic realizations of constraint-specified
//!   systems and builds their epistemic (Bayesian) mixtures, covering
//!   Liar-antinomy style systems;
//! - [`format`] and [`cli`] provide the JSON file format and the
//!   command-line front end.
//!
//! Every probability is a [`ratio::Rational`]; no verdict ever depends on a
//! floating-point tolerance. Runnable walkthroughs live in `examples/`.

pub mod bayes;
pub mod cli;
pub mod consistify;
pub mod coupling;
pub mod error;
pub mod format;
pub mod lp;
pub mod ratio;
pub mod report;
pub mod system;

mod simplex;

pub use crate::error::{Error, Result};
pub use crate::ratio::Rational;
pub use crate::system::{
    BunchDistribution, Connection, ContentId, ContextId, Sign, System, SystemBuilder,
};

pub use crate::consistify::{consistify, ConsistifiedSystem};
pub use crate::coupling::{multimaximal_coupling, JointPmf};
pub use crate::lp::{
    cbd_noncontextual, generalized_fraction, noncontextual_fraction, FractionResult,
};
