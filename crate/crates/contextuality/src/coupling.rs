//! Multimaximal couplings of connections of dichotomous variables.
//!
//! A coupling of a connection puts all its variables on one probability
//! space while preserving each marginal. The *multimaximal* coupling
//! additionally maximizes `Pr[T_i = T_j]` for every pair simultaneously;
//! for ±1-valued variables it exists and is unique, and is realized here
//! by the quantile (comonotone) construction: draw a single uniform
//! threshold and let every coordinate answer `+1` exactly when the
//! threshold falls below its marginal.
//!
//! The construction is validated against an independent linear-programming
//! oracle ([`oracle_unique_multimaximal`]) that solves for *all* pmfs
//! matching the marginals and the pairwise maxima and checks that exactly
//! one exists.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratio::{one, zero, Rational};
use crate::simplex::{Constraint, Relation, Simplex};
use crate::system::{outcome_string, Connection, Sign};

/// Largest connection size accepted by the exact enumeration oracle.
pub const ORACLE_LIMIT: usize = 4;

/// A joint pmf over labeled ±1 variables, sparse and zero-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointPmf {
    variables: Vec<String>,
    pmf: BTreeMap<Vec<Sign>, Rational>,
}

impl JointPmf {
    /// Validates lengths, nonnegativity, and exact unit total; zero atoms
    /// are dropped so that equal distributions compare equal as maps.
    pub fn new(variables: Vec<String>, pmf: BTreeMap<Vec<Sign>, Rational>) -> Result<Self> {
        let arity = variables.len();
        let mut sum = zero();
        let mut canonical = BTreeMap::new();
        for (outcome, p) in pmf {
            if outcome.len() != arity {
                return Err(Error::OutcomeLength {
                    context: "coupling".to_string(),
                    outcome: outcome_string(&outcome),
                    got: outcome.len(),
                    expected: arity,
                });
            }
            if p.is_negative() {
                return Err(Error::NegativeProbability {
                    context: "coupling".to_string(),
                    outcome: outcome_string(&outcome),
                    value: crate::ratio::format_rational(&p),
                });
            }
            sum += &p;
            if !p.is_zero() {
                canonical.insert(outcome, p);
            }
        }
        if !num_traits::One::is_one(&sum) {
            return Err(Error::PmfSum {
                context: "coupling".to_string(),
                sum: crate::ratio::format_rational(&sum),
            });
        }
        Ok(Self {
            variables,
            pmf: canonical,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn pmf(&self) -> &BTreeMap<Vec<Sign>, Rational> {
        &self.pmf
    }

    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    pub fn probability(&self, outcome: &[Sign]) -> Rational {
        self.pmf.get(outcome).cloned().unwrap_or_else(zero)
    }

    /// `Pr[T_i = +1]`.
    pub fn single_marginal(&self, i: usize) -> Rational {
        self.pmf
            .iter()
            .filter(|(t, _)| t[i] == Sign::Plus)
            .map(|(_, p)| p)
            .sum()
    }

    /// `Pr[T_i = T_j]`.
    pub fn equality_probability(&self, i: usize, j: usize) -> Rational {
        self.pmf
            .iter()
            .filter(|(t, _)| t[i] == t[j])
            .map(|(_, p)| p)
            .sum()
    }

    /// `Pr[T_1 = ... = T_n]`.
    pub fn chain_equality(&self) -> Rational {
        self.pmf
            .iter()
            .filter(|(t, _)| t.iter().all(|&s| s == t[0]))
            .map(|(_, p)| p)
            .sum()
    }

    /// Exact marginal onto a list of coordinate indices.
    pub fn marginal_onto(&self, indices: &[usize]) -> Result<JointPmf> {
        for &i in indices {
            if i >= self.arity() {
                return Err(Error::DimensionMismatch {
                    got: i,
                    expected: self.arity(),
                });
            }
        }
        let variables = indices.iter().map(|&i| self.variables[i].clone()).collect();
        let mut pmf: BTreeMap<Vec<Sign>, Rational> = BTreeMap::new();
        for (outcome, p) in &self.pmf {
            let projected: Vec<Sign> = indices.iter().map(|&i| outcome[i]).collect();
            *pmf.entry(projected).or_insert_with(zero) += p;
        }
        JointPmf::new(variables, pmf)
    }
}

/// Pairwise equality probabilities and the chain equality of a coupling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingReport {
    /// `(i, j) -> Pr[T_i = T_j]` for `i < j`.
    pub pairwise_equalities: BTreeMap<(usize, usize), Rational>,
    /// `Pr[T_1 = ... = T_n]`.
    pub chain_equality: Rational,
}

/// Computes the equality probabilities of a coupling.
pub fn coupling_report(joint: &JointPmf) -> CouplingReport {
    let n = joint.arity();
    let mut pairwise = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairwise.insert((i, j), joint.equality_probability(i, j));
        }
    }
    let chain = joint.chain_equality();
    debug_assert!(pairwise.values().all(|p| chain <= *p));
    CouplingReport {
        pairwise_equalities: pairwise,
        chain_equality: chain,
    }
}

/// The largest achievable `Pr[X = Y]` over all couplings of two ±1
/// variables with `Pr[X = +1] = p` and `Pr[Y = +1] = p_other`:
/// `min(p, p') + min(1-p, 1-p') = 1 - |p - p'|`.
pub fn pairwise_max_equality(p: &Rational, p_other: &Rational) -> Result<Rational> {
    for value in [p, p_other] {
        if value.is_negative() || *value > one() {
            return Err(Error::ProbabilityRange(crate::ratio::format_rational(value)));
        }
    }
    Ok(one() - (p - p_other).abs())
}

/// The largest achievable `Pr[T_1 = ... = T_n]` over all couplings of the
/// connection: `min_i p_i + min_i (1 - p_i)`.
pub fn max_chain_equality(connection: &Connection) -> Rational {
    let ps = connection.marginals();
    let min_p = ps.iter().min().cloned().expect("nonempty connection");
    let min_q = ps.iter().map(|p| one() - p).min().expect("nonempty connection");
    min_p + min_q
}

/// Builds the unique multimaximal coupling of a connection by the quantile
/// construction. With thresholds at the sorted distinct marginals, the atom
/// for the interval `(a, b]` assigns `+1` to exactly the coordinates with
/// `p_i >= b` and carries mass `b - a`. Consequently every
/// `Pr[T_i = T_j] = 1 - |p_i - p_j|`, every marginal is preserved, and the
/// support has at most `n + 1` atoms.
pub fn multimaximal_coupling(connection: &Connection) -> JointPmf {
    let ps = connection.marginals();
    let labels: Vec<String> = connection
        .members()
        .iter()
        .map(|(c, _)| c.to_string())
        .collect();

    let mut breakpoints: Vec<Rational> = vec![zero(), one()];
    breakpoints.extend(ps.iter().cloned());
    breakpoints.sort();
    breakpoints.dedup();

    let mut pmf: BTreeMap<Vec<Sign>, Rational> = BTreeMap::new();
    for window in breakpoints.windows(2) {
        let (low, high) = (&window[0], &window[1]);
        let atom: Vec<Sign> = ps
            .iter()
            .map(|p| if p >= high { Sign::Plus } else { Sign::Minus })
            .collect();
        *pmf.entry(atom).or_insert_with(zero) += high - low;
    }
    JointPmf::new(labels, pmf).expect("quantile atoms form a pmf")
}

/// Checks that a joint pmf is the multimaximal coupling of the connection:
/// every single marginal matches and every pairwise equality probability
/// attains [`pairwise_max_equality`].
pub fn verify_multimaximal(joint: &JointPmf, connection: &Connection) -> Result<bool> {
    if joint.arity() != connection.len() {
        return Err(Error::DimensionMismatch {
            got: joint.arity(),
            expected: connection.len(),
        });
    }
    let ps = connection.marginals();
    for (i, p) in ps.iter().enumerate() {
        if joint.single_marginal(i) != *p {
            return Ok(false);
        }
    }
    for i in 0..ps.len() {
        for j in (i + 1)..ps.len() {
            let target = pairwise_max_equality(&ps[i], &ps[j])?;
            if joint.equality_probability(i, j) != target {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Independent oracle: solves by exact linear programming for *all* pmfs
/// over `{-1,+1}^n` that match the connection's marginals and attain every
/// pairwise maximum, asserts the feasible set is a single point, and
/// returns it. Limited to `n <= 4` (at most 16 unknowns).
pub fn oracle_unique_multimaximal(connection: &Connection) -> Result<JointPmf> {
    let n = connection.len();
    if n > ORACLE_LIMIT {
        return Err(Error::OracleLimit {
            got: n,
            limit: ORACLE_LIMIT,
        });
    }
    let ps = connection.marginals();
    let atoms = 1usize << n;
    let sign_at = |pattern: usize, i: usize| (pattern >> (n - 1 - i)) & 1 == 1;

    let mut constraints = Vec::new();
    constraints.push(Constraint::new(vec![one(); atoms], Relation::Eq, one()));
    for (i, p) in ps.iter().enumerate() {
        let coeffs = (0..atoms)
            .map(|g| if sign_at(g, i) { one() } else { zero() })
            .collect();
        constraints.push(Constraint::new(coeffs, Relation::Eq, p.clone()));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let coeffs = (0..atoms)
                .map(|g| {
                    if sign_at(g, i) == sign_at(g, j) {
                        one()
                    } else {
                        zero()
                    }
                })
                .collect();
            constraints.push(Constraint::new(
                coeffs,
                Relation::Eq,
                pairwise_max_equality(&ps[i], &ps[j])?,
            ));
        }
    }

    let mut simplex = Simplex::prepare(atoms, &constraints).map_err(|_| Error::OracleInfeasible)?;
    let mut point = vec![zero(); atoms];
    for g in 0..atoms {
        let mut objective = vec![zero(); atoms];
        objective[g] = one();
        let (hi, _) = simplex
            .maximize(&objective)
            .map_err(|_| Error::Invariant("bounded coupling polytope reported unbounded".into()))?;
        objective[g] = -one();
        let (neg_lo, _) = simplex
            .maximize(&objective)
            .map_err(|_| Error::Invariant("bounded coupling polytope reported unbounded".into()))?;
        if hi != -neg_lo {
            return Err(Error::OracleAmbiguous);
        }
        point[g] = hi;
    }

    let labels: Vec<String> = connection
        .members()
        .iter()
        .map(|(c, _)| c.to_string())
        .collect();
    let mut pmf = BTreeMap::new();
    for (g, mass) in point.into_iter().enumerate() {
        if !mass.is_zero() {
            pmf.insert(crate::system::signs_of(g as u64, n), mass);
        }
    }
    JointPmf::new(labels, pmf)
}
