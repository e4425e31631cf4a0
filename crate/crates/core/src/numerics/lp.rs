//! Exact two-phase tableau simplex.
//!
//! [`solve_lp`] handles the general form used throughout the crate. The
//! underlying [`Simplex`] is exposed for column generation: columns may be
//! appended to a solved tableau and optimization resumed from the current
//! basis, with duals read off the retained identity columns.

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Consecutive degenerate pivots tolerated under Dantzig's rule before the
/// solver falls back to Bland's rule.
const DEGENERATE_SWITCH: usize = 50;

/// `maximize objective·x` subject to `eq` rows (`row·x = rhs`), `ineq` rows
/// (`row·x ≤ rhs`) and `x_j ≥ 0` wherever `nonneg[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub eq_constraints: Vec<(Vec<Rational>, Rational)>,
    pub ineq_constraints: Vec<(Vec<Rational>, Rational)>,
    pub nonneg: Vec<bool>,
}

impl LinearProgram {
    /// An LP in `dim` nonnegative variables with the given objective.
    pub fn new(objective: Vec<Rational>) -> Self {
        let dim = objective.len();
        LinearProgram {
            objective,
            eq_constraints: Vec::new(),
            ineq_constraints: Vec::new(),
            nonneg: vec![true; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.objective.len()
    }

    pub fn eq(mut self, row: Vec<Rational>, rhs: Rational) -> Self {
        self.eq_constraints.push((row, rhs));
        self
    }

    pub fn le(mut self, row: Vec<Rational>, rhs: Rational) -> Self {
        self.ineq_constraints.push((row, rhs));
        self
    }

    pub fn free(mut self, var: usize) -> Self {
        self.nonneg[var] = false;
        self
    }

    fn check_dims(&self) -> Result<()> {
        let dim = self.dim();
        let mismatch = |found: usize| Error::DimensionMismatch {
            context: "linear program",
            expected: dim,
            found,
        };
        if self.nonneg.len() != dim {
            return Err(mismatch(self.nonneg.len()));
        }
        for (row, _) in self.eq_constraints.iter().chain(&self.ineq_constraints) {
            if row.len() != dim {
                return Err(mismatch(row.len()));
            }
        }
        Ok(())
    }

    /// Whether `x` satisfies every constraint exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        let dot = |row: &[Rational]| -> Rational { row.iter().zip(x).map(|(a, b)| a * b).sum() };
        self.nonneg
            .iter()
            .zip(x)
            .all(|(nn, v)| !nn || !v.is_negative())
            && self.eq_constraints.iter().all(|(r, b)| &dot(r) == b)
            && self.ineq_constraints.iter().all(|(r, b)| &dot(r) <= b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpResult {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub witness: Option<Vec<Rational>>,
    /// Dual multipliers of the equality rows, when optimal.
    pub eq_duals: Option<Vec<Rational>>,
    /// Dual multipliers of the inequality rows (all nonnegative), when optimal.
    pub ineq_duals: Option<Vec<Rational>>,
}

impl LpResult {
    fn without_solution(status: LpStatus) -> Self {
        LpResult {
            status,
            value: None,
            witness: None,
            eq_duals: None,
            ineq_duals: None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Solve `lp` exactly. Deterministic for a fixed input.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpResult> {
    lp.check_dims()?;
    let dim = lp.dim();

    // Free variables are split as x = x⁺ − x⁻; `split[j]` is the column of x⁻.
    let mut split = vec![None; dim];
    let mut n_cols = dim;
    for (j, nn) in lp.nonneg.iter().enumerate() {
        if !nn {
            split[j] = Some(n_cols);
            n_cols += 1;
        }
    }
    let sparse = |row: &[Rational]| -> Vec<(usize, Rational)> {
        let mut out = Vec::new();
        for (j, a) in row.iter().enumerate() {
            if !a.is_zero() {
                out.push((j, a.clone()));
                if let Some(k) = split[j] {
                    out.push((k, -a));
                }
            }
        }
        out
    };
    let mut rows = Vec::with_capacity(lp.eq_constraints.len() + lp.ineq_constraints.len());
    for (row, rhs) in &lp.eq_constraints {
        rows.push(Row {
            coeffs: sparse(row),
            sense: Sense::Eq,
            rhs: rhs.clone(),
        });
    }
    for (row, rhs) in &lp.ineq_constraints {
        rows.push(Row {
            coeffs: sparse(row),
            sense: Sense::Le,
            rhs: rhs.clone(),
        });
    }
    let mut cost = vec![Rational::zero(); n_cols];
    for (j, c) in lp.objective.iter().enumerate() {
        cost[j] = c.clone();
        if let Some(k) = split[j] {
            cost[k] = -c;
        }
    }

    let mut simplex = Simplex::new(n_cols, &rows, &cost);
    match simplex.optimize() {
        LpStatus::Optimal => {}
        status => return Ok(LpResult::without_solution(status)),
    }
    let raw = simplex.structural_values();
    let witness: Vec<Rational> = (0..dim)
        .map(|j| match split[j] {
            Some(k) => &raw[j] - &raw[k],
            None => raw[j].clone(),
        })
        .collect();
    let duals = simplex.duals();
    let m_eq = lp.eq_constraints.len();
    Ok(LpResult {
        status: LpStatus::Optimal,
        value: Some(simplex.value()),
        witness: Some(witness),
        eq_duals: Some(duals[..m_eq].to_vec()),
        ineq_duals: Some(duals[m_eq..].to_vec()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Eq,
    Le,
}

/// One constraint row over nonnegative structural columns, stored sparsely.
#[derive(Debug, Clone)]
pub struct Row {
    pub coeffs: Vec<(usize, Rational)>,
    pub sense: Sense,
    pub rhs: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural(usize),
    Slack,
    Artificial,
}

/// Dense exact tableau over nonnegative variables.
#[derive(Debug, Clone)]
pub struct Simplex {
    tableau: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Reduced costs `c_B B⁻¹ a_j − c_j`; optimal when none is negative.
    reduced: Vec<Rational>,
    value: Rational,
    basis: Vec<usize>,
    cost: Vec<Rational>,
    kind: Vec<ColKind>,
    blocked: Vec<bool>,
    /// Rows multiplied by −1 to make the right-hand side nonnegative.
    flipped: Vec<bool>,
    /// Column holding the initial unit vector of each row.
    identity: Vec<usize>,
    structural: Vec<usize>,
    solved: bool,
}

impl Simplex {
    /// Build the phase-one tableau for `maximize cost·x` over `rows`, `x ≥ 0`.
    pub fn new(n_struct: usize, rows: &[Row], cost: &[Rational]) -> Self {
        assert_eq!(cost.len(), n_struct);
        let m = rows.len();
        let mut flipped = vec![false; m];
        let mut needs_artificial = vec![false; m];
        for (i, row) in rows.iter().enumerate() {
            flipped[i] = row.rhs.is_negative();
            needs_artificial[i] = row.sense == Sense::Eq || flipped[i];
        }
        let n_slack = rows.iter().filter(|r| r.sense == Sense::Le).count();
        let n_art = needs_artificial.iter().filter(|&&a| a).count();
        let n_cols = n_struct + n_slack + n_art;

        let mut tableau = vec![vec![Rational::zero(); n_cols]; m];
        let mut rhs = Vec::with_capacity(m);
        let mut kind: Vec<ColKind> = (0..n_struct).map(ColKind::Structural).collect();
        let mut identity = vec![0; m];
        for (i, row) in rows.iter().enumerate() {
            for (j, a) in &row.coeffs {
                assert!(*j < n_struct, "column index out of range");
                let a = if flipped[i] { -a } else { a.clone() };
                tableau[i][*j] += a;
            }
            rhs.push(row.rhs.abs());
        }
        for (i, row) in rows.iter().enumerate() {
            if row.sense == Sense::Le {
                let col = kind.len();
                kind.push(ColKind::Slack);
                tableau[i][col] = if flipped[i] { -Rational::one() } else { Rational::one() };
                identity[i] = col;
            }
        }
        for i in 0..m {
            if needs_artificial[i] {
                let col = kind.len();
                kind.push(ColKind::Artificial);
                tableau[i][col] = Rational::one();
                identity[i] = col;
            }
        }
        let mut full_cost = cost.to_vec();
        full_cost.resize(n_cols, Rational::zero());

        Simplex {
            tableau,
            rhs,
            reduced: vec![Rational::zero(); n_cols],
            value: Rational::zero(),
            basis: identity.clone(),
            cost: full_cost,
            kind,
            blocked: vec![false; n_cols],
            flipped,
            identity,
            structural: (0..n_struct).collect(),
            solved: false,
        }
    }

    fn n_cols(&self) -> usize {
        self.kind.len()
    }

    fn pivot(&mut self, p: usize, e: usize) {
        let piv = self.tableau[p][e].clone();
        let nz: Vec<usize> = (0..self.n_cols())
            .filter(|&j| !self.tableau[p][j].is_zero())
            .collect();
        if !piv.is_one() {
            let inv = piv.recip();
            for &j in &nz {
                self.tableau[p][j] *= &inv;
            }
            self.rhs[p] *= &inv;
        }
        let (before, rest) = self.tableau.split_at_mut(p);
        let (prow, after) = rest.split_first_mut().expect("pivot row");
        let prhs = self.rhs[p].clone();
        for (offset, row) in before.iter_mut().enumerate().chain(
            after
                .iter_mut()
                .enumerate()
                .map(|(k, r)| (p + 1 + k, r)),
        ) {
            let f = row[e].clone();
            if f.is_zero() {
                continue;
            }
            for &j in &nz {
                let d = &f * &prow[j];
                row[j] -= d;
            }
            let d = &f * &prhs;
            self.rhs[offset] -= d;
        }
        let f = self.reduced[e].clone();
        if !f.is_zero() {
            for &j in &nz {
                let d = &f * &prow[j];
                self.reduced[j] -= d;
            }
            self.value -= &f * &prhs;
        }
        self.basis[p] = e;
    }

    /// Pivot until optimal or unbounded under the current reduced costs.
    fn run(&mut self) -> LpStatus {
        let mut degenerate_run = 0usize;
        loop {
            let bland = degenerate_run >= DEGENERATE_SWITCH;
            let mut entering: Option<usize> = None;
            for j in 0..self.n_cols() {
                if self.blocked[j] || !self.reduced[j].is_negative() {
                    continue;
                }
                match entering {
                    None => entering = Some(j),
                    Some(best) if !bland && self.reduced[j] < self.reduced[best] => entering = Some(j),
                    _ => {}
                }
                if bland {
                    break;
                }
            }
            let Some(e) = entering else {
                return LpStatus::Optimal;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.tableau.len() {
                let a = &self.tableau[i][e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leaving {
                    None => true,
                    Some((k, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            let Some((p, ratio)) = leaving else {
                return LpStatus::Unbounded;
            };
            if ratio.is_zero() {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(p, e);
        }
    }

    fn phase_one(&mut self) -> bool {
        let art_rows: Vec<usize> = (0..self.basis.len())
            .filter(|&i| self.kind[self.basis[i]] == ColKind::Artificial)
            .collect();
        if art_rows.is_empty() {
            return true;
        }
        for j in 0..self.n_cols() {
            self.reduced[j] = if self.kind[j] == ColKind::Artificial {
                Rational::zero()
            } else {
                -art_rows.iter().map(|&i| &self.tableau[i][j]).sum::<Rational>()
            };
        }
        self.value = -art_rows.iter().map(|&i| &self.rhs[i]).sum::<Rational>();
        let status = self.run();
        debug_assert_eq!(status, LpStatus::Optimal, "phase one is bounded");
        if self.value.is_negative() {
            return false;
        }
        // Drive zero-level artificials out of the basis where possible; rows
        // where this fails are redundant and keep their artificial at zero.
        for i in 0..self.basis.len() {
            if self.kind[self.basis[i]] != ColKind::Artificial {
                continue;
            }
            if let Some(j) = (0..self.n_cols())
                .find(|&j| self.kind[j] != ColKind::Artificial && !self.tableau[i][j].is_zero())
            {
                self.pivot(i, j);
            }
        }
        true
    }

    fn install_objective(&mut self) {
        for j in 0..self.n_cols() {
            self.reduced[j] = -&self.cost[j];
        }
        self.value = Rational::zero();
        for i in 0..self.basis.len() {
            let cb = self.cost[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.n_cols() {
                if !self.tableau[i][j].is_zero() {
                    let d = &cb * &self.tableau[i][j];
                    self.reduced[j] += d;
                }
            }
            self.value += &cb * &self.rhs[i];
        }
    }

    /// Solve from scratch on first call; afterwards resume from the current
    /// basis (after [`Simplex::add_column`]).
    pub fn optimize(&mut self) -> LpStatus {
        if !self.solved {
            if !self.phase_one() {
                return LpStatus::Infeasible;
            }
            for j in 0..self.n_cols() {
                if self.kind[j] == ColKind::Artificial {
                    self.blocked[j] = true;
                }
            }
            self.install_objective();
            self.solved = true;
        }
        self.run()
    }

    pub fn value(&self) -> Rational {
        self.value.clone()
    }

    pub fn n_structural(&self) -> usize {
        self.structural.len()
    }

    /// Current values of the structural variables in creation order.
    pub fn structural_values(&self) -> Vec<Rational> {
        let mut at = vec![None; self.n_cols()];
        for (i, &b) in self.basis.iter().enumerate() {
            at[b] = Some(i);
        }
        self.structural
            .iter()
            .map(|&c| at[c].map(|i| self.rhs[i].clone()).unwrap_or_default())
            .collect()
    }

    /// Dual multipliers of the original rows at the current basis.
    pub fn duals(&self) -> Vec<Rational> {
        self.identity
            .iter()
            .zip(&self.flipped)
            .map(|(&col, &flip)| {
                let y = self.reduced[col].clone();
                if flip {
                    -y
                } else {
                    y
                }
            })
            .collect()
    }

    /// Append a nonnegative structural column with coefficients given per
    /// original row. Only valid once [`Simplex::optimize`] has run; returns
    /// its structural index.
    pub fn add_column(&mut self, coeffs: &[(usize, Rational)], cost: Rational) -> usize {
        assert!(self.solved, "add_column before the first optimize");
        let m = self.basis.len();
        let signed: Vec<(usize, Rational)> = coeffs
            .iter()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (*i, if self.flipped[*i] { -a } else { a.clone() }))
            .collect();
        let col = self.n_cols();
        for r in 0..m {
            let mut v = Rational::zero();
            for (i, a) in &signed {
                let b = &self.tableau[r][self.identity[*i]];
                if !b.is_zero() {
                    v += a * b;
                }
            }
            self.tableau[r].push(v);
        }
        let mut red = -&cost;
        for (i, a) in &signed {
            red += a * &self.reduced[self.identity[*i]];
        }
        self.reduced.push(red);
        self.cost.push(cost);
        let index = self.structural.len();
        self.kind.push(ColKind::Structural(index));
        self.blocked.push(false);
        self.structural.push(col);
        for r in 0..m {
            if self.kind[self.basis[r]] == ColKind::Artificial && !self.tableau[r][col].is_zero() {
                self.pivot(r, col);
            }
        }
        index
    }

    /// Reduced cost of structural column `index`.
    pub fn reduced_cost(&self, index: usize) -> Rational {
        self.reduced[self.structural[index]].clone()
    }

    /// Whether structural column `index` is currently basic.
    pub fn is_basic(&self, index: usize) -> bool {
        let col = self.structural[index];
        matches!(self.kind[col], ColKind::Structural(_)) && self.basis.contains(&col)
    }
}
