//! Dense exact-rational simplex with Bland's pivoting rule.
//!
//! Two-phase primal simplex over `BigRational`. Bland's rule (smallest
//! eligible variable index enters, smallest basic variable index leaves on
//! ratio ties) guarantees termination without cycling. The tableau keeps a
//! feasible basis between calls, so several objectives can be optimized
//! over one constraint set without repeating phase one.

use num_traits::Zero;

use crate::ratio::{one, zero, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub(crate) struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Self {
            coeffs,
            relation,
            rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SolveError {
    Infeasible,
    Unbounded,
}

pub(crate) struct Simplex {
    n_structural: usize,
    ncols: usize,
    /// Constraint rows, each `ncols + 1` long with the rhs last.
    rows: Vec<Vec<Rational>>,
    /// Basic variable of each row.
    basis: Vec<usize>,
}

impl Simplex {
    /// Builds the tableau and runs phase one. `n_structural` is the number
    /// of decision variables; every variable is constrained to be `>= 0`.
    pub fn prepare(n_structural: usize, constraints: &[Constraint]) -> Result<Self, SolveError> {
        let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = constraints
            .iter()
            .map(|c| {
                assert_eq!(c.coeffs.len(), n_structural, "constraint width mismatch");
                (c.coeffs.clone(), c.relation, c.rhs.clone())
            })
            .collect();
        // Normalize to nonnegative right-hand sides.
        for (coeffs, relation, rhs) in &mut rows {
            if *rhs < zero() {
                for a in coeffs.iter_mut() {
                    *a = -std::mem::replace(a, zero());
                }
                *rhs = -std::mem::replace(rhs, zero());
                *relation = match *relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
        }

        let m = rows.len();
        let n_slack = rows
            .iter()
            .filter(|(_, rel, _)| matches!(rel, Relation::Le | Relation::Ge))
            .count();
        let n_artificial = rows
            .iter()
            .filter(|(_, rel, _)| matches!(rel, Relation::Ge | Relation::Eq))
            .count();
        let slack_start = n_structural;
        let art_start = n_structural + n_slack;
        let ncols_full = art_start + n_artificial;

        let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_slack = slack_start;
        let mut next_art = art_start;
        for (coeffs, relation, rhs) in rows {
            let mut row = vec![zero(); ncols_full + 1];
            row[..n_structural].clone_from_slice(&coeffs);
            row[ncols_full] = rhs;
            match relation {
                Relation::Le => {
                    row[next_slack] = one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -one();
                    next_slack += 1;
                    row[next_art] = one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            tableau.push(row);
        }

        let mut simplex = Self {
            n_structural,
            ncols: ncols_full,
            rows: tableau,
            basis,
        };

        if n_artificial > 0 {
            // Phase one: maximize minus the sum of artificials.
            let mut costs = vec![zero(); ncols_full];
            for c in costs.iter_mut().take(ncols_full).skip(art_start) {
                *c = -one();
            }
            let (value, _) = simplex.run(&costs).map_err(|_| SolveError::Infeasible)?;
            if !value.is_zero() {
                return Err(SolveError::Infeasible);
            }
            simplex.evict_artificials(art_start);
            simplex.drop_columns_from(art_start);
        }
        Ok(simplex)
    }

    /// Maximizes `objective . x` over the prepared feasible region.
    /// `objective` covers the structural variables only.
    pub fn maximize(
        &mut self,
        objective: &[Rational],
    ) -> Result<(Rational, Vec<Rational>), SolveError> {
        assert_eq!(objective.len(), self.n_structural, "objective width mismatch");
        let mut costs = vec![zero(); self.ncols];
        costs[..self.n_structural].clone_from_slice(objective);
        self.run(&costs)
    }

    /// Pivots until optimal for the given full-width cost vector.
    fn run(&mut self, costs: &[Rational]) -> Result<(Rational, Vec<Rational>), SolveError> {
        let rhs = self.ncols;
        let mut obj: Vec<Rational> = costs.to_vec();
        let mut value = zero();
        for (i, &b) in self.basis.iter().enumerate() {
            if costs[b].is_zero() {
                continue;
            }
            for (target, cell) in obj.iter_mut().zip(&self.rows[i]) {
                if !cell.is_zero() {
                    *target -= &costs[b] * cell;
                }
            }
            value += &costs[b] * &self.rows[i][rhs];
        }

        loop {
            // Bland: smallest-index column with positive reduced cost.
            let entering = match (0..self.ncols).find(|&j| obj[j] > zero()) {
                Some(j) => j,
                None => {
                    let mut point = vec![zero(); self.n_structural];
                    for (i, &b) in self.basis.iter().enumerate() {
                        if b < self.n_structural {
                            point[b] = self.rows[i][rhs].clone();
                        }
                    }
                    return Ok((value, point));
                }
            };

            // Ratio test; ties broken by smallest basic variable index.
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][entering];
                if *a <= zero() {
                    continue;
                }
                let ratio = &self.rows[i][rhs] / a;
                match &leaving {
                    None => leaving = Some((i, ratio)),
                    Some((best, best_ratio)) => {
                        if ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                        {
                            leaving = Some((i, ratio));
                        }
                    }
                }
            }
            let (pivot_row, _) = leaving.ok_or(SolveError::Unbounded)?;

            self.pivot(pivot_row, entering);
            let factor = std::mem::replace(&mut obj[entering], zero());
            if !factor.is_zero() {
                for (target, cell) in obj.iter_mut().zip(&self.rows[pivot_row]) {
                    if !cell.is_zero() {
                        *target -= &factor * cell;
                    }
                }
                obj[entering] = zero();
                value += &factor * &self.rows[pivot_row][rhs];
            }
        }
    }

    fn pivot(&mut self, pivot_row: usize, entering: usize) {
        let width = self.ncols + 1;
        let mut row = std::mem::take(&mut self.rows[pivot_row]);
        let pivot = row[entering].clone();
        for cell in row.iter_mut() {
            if !cell.is_zero() {
                *cell /= &pivot;
            }
        }
        for (i, other) in self.rows.iter_mut().enumerate() {
            if i == pivot_row {
                continue;
            }
            let factor = other[entering].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..width {
                if !row[j].is_zero() {
                    let delta = &factor * &row[j];
                    other[j] -= delta;
                }
            }
            other[entering] = zero();
        }
        self.rows[pivot_row] = row;
        self.basis[pivot_row] = entering;
    }

    /// After a successful phase one, pivots basic artificials out of the
    /// basis (they all sit at level zero) or drops their rows as redundant.
    fn evict_artificials(&mut self, art_start: usize) {
        let rhs = self.ncols;
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < art_start {
                i += 1;
                continue;
            }
            debug_assert!(self.rows[i][rhs].is_zero());
            match (0..art_start).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    // Pivoting on a zero-rhs row keeps the basis feasible
                    // even when the pivot entry is negative.
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }

    fn drop_columns_from(&mut self, new_ncols: usize) {
        let rhs = self.ncols;
        for row in &mut self.rows {
            let tail = row[rhs].clone();
            row.truncate(new_ncols);
            row.push(tail);
        }
        self.ncols = new_ncols;
    }
}

/// One-shot convenience wrapper.
#[cfg(test)]
pub(crate) fn maximize(
    n_structural: usize,
    constraints: &[Constraint],
    objective: &[Rational],
) -> Result<(Rational, Vec<Rational>), SolveError> {
    Simplex::prepare(n_structural, constraints)?.maximize(objective)
}
