//! The noncontextual fraction by exact linear programming.
//!
//! A system is noncontextual exactly when some probability mass `s` over
//! all global ±1 assignments to its contents reproduces every bunch
//! distribution. Relaxing "reproduces" to "is majorized by" and maximizing
//! the total mass `1.s` over the polytope `{s : Bs <= r, s >= 0, 1.s <= 1}`
//! yields the noncontextual fraction `alpha_max`; `1 - alpha_max` is the
//! contextual fraction. `B` is the Boolean incidence matrix whose rows are
//! (context, outcome-tuple) pairs and whose columns are global assignments:
//! an entry is 1 when the column's assignment restricts, on the row's
//! context, to the row's tuple. `r` stacks the bunch probabilities.
//!
//! Everything is exact: the matrix is Boolean, `r` is rational, and the
//! simplex solver pivots over rationals with Bland's rule, so `alpha_max`
//! at 0 or 1 is a certainty, not a tolerance.
//!
//! Columns incident to a zero-probability row are forced to zero mass by
//! `Bs <= r` and are eliminated before the solver runs; the reduced
//! program is the same polytope restricted to the surviving coordinates.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::consistify::consistify;
use crate::error::{Error, Result};
use crate::ratio::{one, zero, Rational};
use crate::simplex::{Constraint, Relation, Simplex, SolveError};
use crate::system::{pattern_of, signs_of, ContentId, ContextId, Sign, System};

/// Default cap on the number of global-assignment columns (2^20).
pub const DEFAULT_MAX_COLUMNS: u64 = 1 << 20;

/// Largest relation size accepted by [`cbd_feasibility_oracle`].
pub const FEASIBILITY_ORACLE_LIMIT: usize = 12;

/// The exact linear system `Bs <= r` of a system of random variables.
///
/// Rows are (context, outcome tuple) pairs grouped by context in canonical
/// order, tuples in lexicographic order with `-1 < +1`. Columns are global
/// assignments of one sign to each content, enumerated lexicographically
/// over contents in canonical order. The Boolean matrix is addressed
/// through [`IncidenceSystem::entry`]; rows and columns are decoded with
/// [`IncidenceSystem::row_index`] and [`IncidenceSystem::column_assignment`].
#[derive(Debug, Clone)]
pub struct IncidenceSystem {
    contents: Vec<ContentId>,
    contexts: Vec<ContextId>,
    /// Per context: position of each bunch coordinate in canonical content order.
    positions: Vec<Vec<usize>>,
    /// Per context: bunch pmf keyed by packed outcome pattern.
    supports: Vec<BTreeMap<u64, Rational>>,
    /// Per context: first row of its block.
    row_offsets: Vec<u64>,
    row_count: u64,
    col_count: u64,
}

impl IncidenceSystem {
    pub fn contents(&self) -> &[ContentId] {
        &self.contents
    }

    pub fn contexts(&self) -> &[ContextId] {
        &self.contexts
    }

    pub fn row_count(&self) -> u64 {
        self.row_count
    }

    pub fn col_count(&self) -> u64 {
        self.col_count
    }

    /// The Boolean matrix entry `B[row, col]`.
    pub fn entry(&self, row: u64, col: u64) -> bool {
        let (context, pattern) = self.locate(row);
        self.column_pattern(col, context) == pattern
    }

    /// The bunch probability `r[row]`.
    pub fn probability(&self, row: u64) -> Rational {
        let (context, pattern) = self.locate(row);
        self.supports[context]
            .get(&pattern)
            .cloned()
            .unwrap_or_else(zero)
    }

    /// Decodes a row into its context and outcome tuple.
    pub fn row_index(&self, row: u64) -> (&ContextId, Vec<Sign>) {
        let (context, pattern) = self.locate(row);
        let arity = self.positions[context].len();
        (&self.contexts[context], signs_of(pattern, arity))
    }

    /// Decodes a column into the global assignment over the contents.
    pub fn column_assignment(&self, col: u64) -> Vec<Sign> {
        signs_of(col, self.contents.len())
    }

    fn locate(&self, row: u64) -> (usize, u64) {
        assert!(row < self.row_count, "row out of range");
        let context = match self.row_offsets.binary_search(&row) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        (context, row - self.row_offsets[context])
    }

    /// The outcome pattern that a global assignment induces on a context.
    fn column_pattern(&self, col: u64, context: usize) -> u64 {
        let m = self.contents.len();
        self.positions[context]
            .iter()
            .fold(0, |acc, &pos| (acc << 1) | ((col >> (m - 1 - pos)) & 1))
    }

    /// Columns not incident to any zero-probability row, in ascending
    /// order. Any feasible mass vector vanishes outside this set.
    pub fn surviving_columns(&self) -> Vec<u64> {
        let m = self.contents.len();
        // Contexts are checked as soon as their last content is assigned.
        let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (c, positions) in self.positions.iter().enumerate() {
            let last = *positions.iter().max().expect("nonempty bunch");
            check_at[last].push(c);
        }
        // For each content, the contexts measuring it with the coordinate slot.
        let mut slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
        for (c, positions) in self.positions.iter().enumerate() {
            for (coord, &pos) in positions.iter().enumerate() {
                slots[pos].push((c, positions.len() - 1 - coord));
            }
        }

        let mut survivors = Vec::new();
        let mut patterns = vec![0u64; self.contexts.len()];
        self.descend(0, 0, &mut patterns, &check_at, &slots, &mut survivors);
        survivors
    }

    fn descend(
        &self,
        depth: usize,
        col: u64,
        patterns: &mut Vec<u64>,
        check_at: &[Vec<usize>],
        slots: &[Vec<(usize, usize)>],
        survivors: &mut Vec<u64>,
    ) {
        let m = self.contents.len();
        if depth == m {
            survivors.push(col);
            return;
        }
        for bit in 0..2u64 {
            let saved: Vec<u64> = slots[depth].iter().map(|&(c, _)| patterns[c]).collect();
            for &(c, shift) in &slots[depth] {
                patterns[c] |= bit << shift;
            }
            let alive = check_at[depth]
                .iter()
                .all(|&c| self.supports[c].contains_key(&patterns[c]));
            if alive {
                self.descend(
                    depth + 1,
                    (col << 1) | bit,
                    patterns,
                    check_at,
                    slots,
                    survivors,
                );
            }
            for (&(c, _), old) in slots[depth].iter().zip(&saved) {
                patterns[c] = *old;
            }
        }
    }

    /// Copy with every bunch probability multiplied by `factor`; used to
    /// probe the positive homogeneity of the polytope in `r`.
    #[cfg(test)]
    pub(crate) fn scaled(&self, factor: &Rational) -> IncidenceSystem {
        let mut scaled = self.clone();
        for support in &mut scaled.supports {
            for value in support.values_mut() {
                *value *= factor;
            }
        }
        scaled
    }
}

/// Builds the incidence system with the default column cap.
pub fn build_incidence(system: &System) -> Result<IncidenceSystem> {
    build_incidence_with_limit(system, DEFAULT_MAX_COLUMNS)
}

/// Builds the incidence system, refusing more than `max_columns` global
/// assignment columns.
pub fn build_incidence_with_limit(system: &System, max_columns: u64) -> Result<IncidenceSystem> {
    let m = system.contents().len();
    if m >= 64 || (1u64 << m) > max_columns {
        return Err(Error::ColumnLimit {
            contents: m,
            limit: max_columns,
        });
    }
    let mut positions = Vec::new();
    let mut supports = Vec::new();
    let mut row_offsets = Vec::new();
    let mut row_count = 0u64;
    for bunch in system.bunches() {
        let pos: Vec<usize> = bunch
            .contents()
            .iter()
            .map(|q| system.content_index(q).expect("validated system"))
            .collect();
        let support: BTreeMap<u64, Rational> = bunch
            .pmf()
            .iter()
            .map(|(t, p)| (pattern_of(t), p.clone()))
            .collect();
        row_offsets.push(row_count);
        row_count += 1u64 << pos.len();
        positions.push(pos);
        supports.push(support);
    }
    Ok(IncidenceSystem {
        contents: system.contents().to_vec(),
        contexts: system.contexts().to_vec(),
        positions,
        supports,
        row_offsets,
        row_count,
        col_count: 1u64 << m,
    })
}

/// A sub-probability mass over global assignment columns: the witness
/// `s` with `s >= 0`, `1.s <= 1`, `Bs <= r`, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalMassVector {
    masses: BTreeMap<u64, Rational>,
    col_count: u64,
}

impl GlobalMassVector {
    pub fn masses(&self) -> &BTreeMap<u64, Rational> {
        &self.masses
    }

    pub fn col_count(&self) -> u64 {
        self.col_count
    }

    pub fn total_mass(&self) -> Rational {
        self.masses.values().sum()
    }

    /// Verifies `s >= 0`, `1.s <= 1`, and `Bs <= r` against an incidence system.
    pub fn satisfies(&self, incidence: &IncidenceSystem) -> bool {
        if self.col_count != incidence.col_count() {
            return false;
        }
        if self.masses.values().any(|p| *p < zero()) {
            return false;
        }
        if self.total_mass() > one() {
            return false;
        }
        let mut row_sums: BTreeMap<u64, Rational> = BTreeMap::new();
        for (&col, mass) in &self.masses {
            if col >= incidence.col_count() {
                return false;
            }
            for (c, offset) in incidence.row_offsets.iter().enumerate() {
                let row = offset + incidence.column_pattern(col, c);
                *row_sums.entry(row).or_insert_with(zero) += mass;
            }
        }
        row_sums
            .iter()
            .all(|(&row, sum)| *sum <= incidence.probability(row))
    }
}

/// The exact noncontextuality verdict of one linear program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionResult {
    /// The noncontextual fraction `alpha_max`.
    pub alpha_max: Rational,
    /// `1 - alpha_max`.
    pub contextual_fraction: Rational,
    /// `alpha_max = 1`.
    pub noncontextual: bool,
    /// `alpha_max = 0`.
    pub strongly_contextual: bool,
    /// An optimal vertex: a mass vector attaining `1.s = alpha_max`.
    pub witness: GlobalMassVector,
}

impl FractionResult {
    fn from_optimum(alpha_max: Rational, witness: GlobalMassVector) -> Self {
        let noncontextual = num_traits::One::is_one(&alpha_max);
        let strongly_contextual = alpha_max.is_zero();
        FractionResult {
            contextual_fraction: one() - &alpha_max,
            alpha_max,
            noncontextual,
            strongly_contextual,
            witness,
        }
    }
}

/// Maximizes an arbitrary rational objective over the polytope
/// `{s : Bs <= r, s >= 0, 1.s <= 1}`, returning the exact optimum and an
/// optimal vertex. The objective is indexed by columns and must cover all
/// of them.
pub fn simplex_max(
    objective: &[Rational],
    incidence: &IncidenceSystem,
) -> Result<(Rational, GlobalMassVector)> {
    if objective.len() as u64 != incidence.col_count() {
        return Err(Error::DimensionMismatch {
            got: objective.len(),
            expected: incidence.col_count() as usize,
        });
    }
    Ok(solve(incidence, |col| objective[col as usize].clone()))
}

/// Core solve: maximize `sum_col objective(col) * s_col` over the polytope.
/// Columns killed by zero-probability rows never reach the solver.
fn solve(
    incidence: &IncidenceSystem,
    objective: impl Fn(u64) -> Rational,
) -> (Rational, GlobalMassVector) {
    let survivors = incidence.surviving_columns();
    let empty = GlobalMassVector {
        masses: BTreeMap::new(),
        col_count: incidence.col_count(),
    };
    if survivors.is_empty() {
        return (zero(), empty);
    }

    // Constraint rows that touch at least one surviving column.
    let mut row_members: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (idx, &col) in survivors.iter().enumerate() {
        for (c, offset) in incidence.row_offsets.iter().enumerate() {
            let row = offset + incidence.column_pattern(col, c);
            row_members.entry(row).or_default().push(idx);
        }
    }

    let n = survivors.len();
    let mut constraints = Vec::with_capacity(row_members.len() + 1);
    for (&row, members) in &row_members {
        let mut coeffs = vec![zero(); n];
        for &idx in members {
            coeffs[idx] = one();
        }
        constraints.push(Constraint::new(coeffs, Relation::Le, incidence.probability(row)));
    }
    constraints.push(Constraint::new(vec![one(); n], Relation::Le, one()));

    let obj: Vec<Rational> = survivors.iter().map(|&col| objective(col)).collect();
    let (value, point) = match Simplex::prepare(n, &constraints) {
        Ok(mut simplex) => simplex
            .maximize(&obj)
            .expect("the mass polytope is bounded"),
        Err(SolveError::Infeasible) => unreachable!("s = 0 is always feasible"),
        Err(SolveError::Unbounded) => unreachable!("prepare does not optimize"),
    };

    let mut masses = BTreeMap::new();
    for (idx, mass) in point.into_iter().enumerate() {
        if !mass.is_zero() {
            masses.insert(survivors[idx], mass);
        }
    }
    (
        value,
        GlobalMassVector {
            masses,
            col_count: incidence.col_count(),
        },
    )
}

/// The noncontextual fraction of a simply consistently connected system.
///
/// `alpha_max` is the maximum of `1.s` over the polytope; the system is
/// noncontextual exactly when `alpha_max = 1` (the witness then solves
/// `Bs = r`), strongly contextual exactly when `alpha_max = 0`. For
/// inconsistently connected systems this errors; use
/// [`generalized_fraction`] instead.
pub fn noncontextual_fraction(system: &System) -> Result<FractionResult> {
    noncontextual_fraction_with_limit(system, DEFAULT_MAX_COLUMNS)
}

/// [`noncontextual_fraction`] with an explicit column cap.
pub fn noncontextual_fraction_with_limit(
    system: &System,
    max_columns: u64,
) -> Result<FractionResult> {
    if !system.simply_consistently_connected().holds {
        return Err(Error::InconsistentlyConnected);
    }
    let incidence = build_incidence_with_limit(system, max_columns)?;
    let (alpha, witness) = solve(&incidence, |_| one());
    debug_assert!(witness.satisfies(&incidence));
    Ok(FractionResult::from_optimum(alpha, witness))
}

/// The noncontextual fraction of an arbitrary system, computed on its
/// consistification. For consistently connected inputs this equals
/// [`noncontextual_fraction`] of the input exactly.
pub fn generalized_fraction(system: &System) -> Result<FractionResult> {
    generalized_fraction_with_limit(system, DEFAULT_MAX_COLUMNS)
}

/// [`generalized_fraction`] with an explicit column cap. The consistified
/// system has one content per (content, context) pair, so the column count
/// is two to the size of the relation.
pub fn generalized_fraction_with_limit(
    system: &System,
    max_columns: u64,
) -> Result<FractionResult> {
    let cs = consistify(system)?;
    noncontextual_fraction_with_limit(&cs.base, max_columns)
}

/// Whether the system is noncontextual in the multimaximal-coupling sense:
/// true exactly when its generalized fraction is 1. The witness is the
/// achieving mass vector over the consistified system's columns (a full
/// coupling when the verdict is true).
pub fn cbd_noncontextual(system: &System) -> Result<(bool, GlobalMassVector)> {
    let result = generalized_fraction(system)?;
    Ok((result.noncontextual, result.witness))
}

/// Direct feasibility oracle for the multimaximal-coupling definition:
/// looks for one joint pmf over all `|relation|` variables whose context
/// marginals equal the bunches and whose every content-sharing pair
/// attains its maximal equality probability. Must agree with
/// [`cbd_noncontextual`]; limited to relations of size at most 12.
pub fn cbd_feasibility_oracle(system: &System) -> Result<bool> {
    let size = system.relation_size();
    if size > FEASIBILITY_ORACLE_LIMIT {
        return Err(Error::RelationLimit {
            size,
            limit: FEASIBILITY_ORACLE_LIMIT,
        });
    }

    // Any feasible pmf is supported on tuples whose restriction to every
    // context lies in the bunch support, so candidate atoms are the
    // product of the supports.
    let bunches = system.bunches();
    let support_patterns: Vec<Vec<u64>> = bunches
        .iter()
        .map(|b| b.pmf().keys().map(|t| pattern_of(t)).collect())
        .collect();
    let mut candidates: Vec<Vec<u64>> = vec![vec![]];
    for patterns in &support_patterns {
        let mut next = Vec::with_capacity(candidates.len() * patterns.len());
        for prefix in &candidates {
            for &p in patterns {
                let mut extended = prefix.clone();
                extended.push(p);
                next.push(extended);
            }
        }
        candidates = next;
    }
    let n = candidates.len();

    let mut constraints = Vec::new();
    for (c, bunch) in bunches.iter().enumerate() {
        for (tuple, prob) in bunch.pmf() {
            let pattern = pattern_of(tuple);
            let coeffs = candidates
                .iter()
                .map(|cand| if cand[c] == pattern { one() } else { zero() })
                .collect();
            constraints.push(Constraint::new(coeffs, Relation::Eq, prob.clone()));
        }
    }

    let sign_in = |cand: &[u64], context: usize, content: &ContentId| -> u64 {
        let bunch = &bunches[context];
        let coord = bunch
            .contents()
            .iter()
            .position(|q| q == content)
            .expect("content measured in context");
        (cand[context] >> (bunch.arity() - 1 - coord)) & 1
    };

    for q in system.contents() {
        let connection = system.connection(q)?;
        let members = connection.members();
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                let ci = system.context_index(&members[i].0)?;
                let cj = system.context_index(&members[j].0)?;
                let coeffs = candidates
                    .iter()
                    .map(|cand| {
                        if sign_in(cand, ci, q) == sign_in(cand, cj, q) {
                            one()
                        } else {
                            zero()
                        }
                    })
                    .collect();
                let target =
                    crate::coupling::pairwise_max_equality(&members[i].1, &members[j].1)?;
                constraints.push(Constraint::new(coeffs, Relation::Eq, target));
            }
        }
    }

    match Simplex::prepare(n, &constraints) {
        Ok(_) => Ok(true),
        Err(SolveError::Infeasible) => Ok(false),
        Err(SolveError::Unbounded) => unreachable!("prepare does not optimize"),
    }
}
