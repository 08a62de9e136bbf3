//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Dual multipliers are read off the final objective row at the columns that
//! formed the initial identity basis, then checked independently by
//! [`verify_certificate`].

use num::{Signed, Zero};
use serde::Serialize;

use crate::error::{ensure, Error, Result};
use crate::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `opt cᵀx` subject to `a_i·x (≤|≥|=) b_i`, with per-variable sign flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPProblem {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    /// `nonneg[j]` is false for free variables.
    pub nonneg: Vec<bool>,
}

impl LPProblem {
    /// All variables non-negative, no constraints yet.
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        Self {
            sense,
            objective,
            constraints: Vec::new(),
            nonneg: vec![true; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Result<()> {
        ensure!(
            coeffs.len() == self.num_vars(),
            Structural,
            "constraint has {} coefficients for {} variables",
            coeffs.len(),
            self.num_vars()
        );
        self.constraints.push(Constraint { coeffs, relation, rhs });
        Ok(())
    }

    pub fn set_free(&mut self, var: usize) {
        self.nonneg[var] = false;
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(
            self.nonneg.len() == self.num_vars(),
            Structural,
            "{} sign flags for {} variables",
            self.nonneg.len(),
            self.num_vars()
        );
        for (i, c) in self.constraints.iter().enumerate() {
            ensure!(
                c.coeffs.len() == self.num_vars(),
                Structural,
                "constraint {i} has {} coefficients for {} variables",
                c.coeffs.len(),
                self.num_vars()
            );
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    /// Exact primal feasibility of `x`.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        if x.iter().zip(&self.nonneg).any(|(v, &nn)| nn && v.is_negative()) {
            return false;
        }
        self.constraints.iter().all(|c| {
            let lhs = dot(&c.coeffs, x);
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            }
        })
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(u, v)| !u.is_zero() && !v.is_zero())
        .map(|(u, v)| u * v)
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LPStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPSolution {
    pub status: LPStatus,
    /// Primal optimum; empty unless optimal.
    pub x: Vec<Rational>,
    pub value: Option<Rational>,
    /// One multiplier per constraint; empty unless optimal.
    pub y: Vec<Rational>,
    pub pivots: usize,
}

impl LPSolution {
    fn without_optimum(status: LPStatus, pivots: usize) -> Self {
        Self {
            status,
            x: Vec::new(),
            value: None,
            y: Vec::new(),
            pivots,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LPStatus::Optimal
    }

    /// The optimal value, or a solver error naming the status.
    pub fn optimum(&self) -> Result<&Rational> {
        self.value
            .as_ref()
            .ok_or_else(|| Error::Solver(format!("LP is {:?}", self.status)))
    }

    /// `bᵀy`, the dual objective.
    pub fn dual_value(&self, lp: &LPProblem) -> Rational {
        lp.constraints
            .iter()
            .zip(&self.y)
            .map(|(c, y)| &c.rhs * y)
            .sum()
    }
}

/// Checks the optimality certificate `(x, y)` exactly: primal feasibility,
/// dual sign conditions, dual feasibility, `cᵀx = bᵀy`, and complementary
/// slackness.
///
/// For maximization the dual is `min bᵀy` with `y ≥ 0` on `≤` rows, `y ≤ 0`
/// on `≥` rows, `Aᵀy ≥ c` on non-negative variables and `Aᵀy = c` on free
/// ones. Minimization flips every inequality.
pub fn verify_certificate(lp: &LPProblem, sol: &LPSolution) -> Result<()> {
    ensure!(sol.is_optimal(), Verification, "no certificate for status {:?}", sol.status);
    ensure!(lp.is_feasible(&sol.x), Verification, "primal point is infeasible");
    ensure!(
        sol.y.len() == lp.constraints.len(),
        Verification,
        "{} multipliers for {} constraints",
        sol.y.len(),
        lp.constraints.len()
    );
    let flip = if lp.sense == Sense::Maximize { int(1) } else { int(-1) };
    for (i, (c, y)) in lp.constraints.iter().zip(&sol.y).enumerate() {
        let s = y * &flip;
        let ok = match c.relation {
            Relation::Le => !s.is_negative(),
            Relation::Ge => !s.is_positive(),
            Relation::Eq => true,
        };
        ensure!(ok, Verification, "multiplier {i} = {y} has the wrong sign");
        let slack = &c.rhs - dot(&c.coeffs, &sol.x);
        ensure!(
            (y * slack).is_zero(),
            Verification,
            "complementary slackness fails at constraint {i}"
        );
    }
    for j in 0..lp.num_vars() {
        let aty: Rational = lp
            .constraints
            .iter()
            .zip(&sol.y)
            .map(|(c, y)| &c.coeffs[j] * y)
            .sum();
        let reduced = (&aty - &lp.objective[j]) * &flip;
        let ok = if lp.nonneg[j] { !reduced.is_negative() } else { reduced.is_zero() };
        ensure!(ok, Verification, "dual constraint for variable {j} is violated");
        ensure!(
            (&sol.x[j] * &reduced).is_zero(),
            Verification,
            "complementary slackness fails at variable {j}"
        );
    }
    let primal = lp.objective_value(&sol.x);
    let dual = sol.dual_value(lp);
    ensure!(primal == dual, Verification, "duality gap: primal {primal} != dual {dual}");
    ensure!(
        sol.value.as_ref() == Some(&primal),
        Verification,
        "reported value differs from c·x"
    );
    Ok(())
}

const MAX_PIVOTS: usize = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs `c_B B⁻¹ a_j − c_j`; last entry is the objective value.
    objective: Vec<Rational>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    pivots: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn price(&mut self, costs: &[Rational]) {
        let w = self.width();
        let mut obj: Vec<Rational> = costs.iter().map(|c| -c).collect();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=w {
                if !row[j].is_zero() {
                    obj[j] += cb * &row[j];
                }
            }
        }
        self.objective = obj;
    }

    fn pivot(&mut self, p: usize, col: usize) {
        let inv = Rational::from_integer(1.into()) / &self.rows[p][col];
        for v in self.rows[p].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.rows[p].clone();
        let eliminate = |target: &mut Vec<Rational>| {
            let f = target[col].clone();
            if f.is_zero() {
                return;
            }
            for (t, v) in target.iter_mut().zip(&pivot_row) {
                if !v.is_zero() {
                    *t -= &f * v;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != p {
                eliminate(row);
            }
        }
        eliminate(&mut self.objective);
        self.basis[p] = col;
        self.pivots += 1;
    }

    /// Bland's rule: lowest-index improving column, ties in the ratio test
    /// broken by lowest basic index.
    fn run(&mut self, allow_artificial: bool) -> Result<Outcome> {
        let w = self.width();
        loop {
            let entering = (0..w).find(|&j| {
                (allow_artificial || self.kinds[j] != ColumnKind::Artificial) && self.objective[j].is_negative()
            });
            let Some(col) = entering else {
                return Ok(Outcome::Optimal);
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[w] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((p, _)) = best else {
                return Ok(Outcome::Unbounded);
            };
            if self.pivots >= MAX_PIVOTS {
                return Err(Error::Solver(format!("pivot limit {MAX_PIVOTS} reached")));
            }
            self.pivot(p, col);
        }
    }
}

/// Solves `lp` exactly. Infeasible and unbounded problems are reported
/// through [`LPSolution::status`].
pub fn simplex_solve(lp: &LPProblem) -> Result<LPSolution> {
    lp.validate()?;
    let n = lp.num_vars();
    let m = lp.constraints.len();

    // Free variables are split into x⁺ − x⁻.
    let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut n_struct = 0;
    for &nn in &lp.nonneg {
        if nn {
            var_cols.push((n_struct, None));
            n_struct += 1;
        } else {
            var_cols.push((n_struct, Some(n_struct + 1)));
            n_struct += 2;
        }
    }

    let mut row_sign = Vec::with_capacity(m);
    let mut relations = Vec::with_capacity(m);
    for c in &lp.constraints {
        if c.rhs.is_negative() {
            row_sign.push(int(-1));
            relations.push(c.relation.flipped());
        } else {
            row_sign.push(int(1));
            relations.push(c.relation);
        }
    }
    let n_slack = relations.iter().filter(|r| **r != Relation::Eq).count();
    let n_art = relations.iter().filter(|r| **r != Relation::Le).count();
    let width = n_struct + n_slack + n_art;

    let mut kinds = vec![ColumnKind::Structural; n_struct];
    kinds.extend(std::iter::repeat_n(ColumnKind::Slack, n_slack));
    kinds.extend(std::iter::repeat_n(ColumnKind::Artificial, n_art));

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut unit_col = Vec::with_capacity(m);
    let (mut next_slack, mut next_art) = (n_struct, n_struct + n_slack);
    for (i, c) in lp.constraints.iter().enumerate() {
        let s = &row_sign[i];
        let mut row = vec![Rational::zero(); width + 1];
        for (j, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (plus, minus) = var_cols[j];
            row[plus] = a * s;
            if let Some(mc) = minus {
                row[mc] = -(a * s);
            }
        }
        row[width] = &c.rhs * s;
        match relations[i] {
            Relation::Le => {
                row[next_slack] = int(1);
                basis.push(next_slack);
                unit_col.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = int(-1);
                next_slack += 1;
                row[next_art] = int(1);
                basis.push(next_art);
                unit_col.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = int(1);
                basis.push(next_art);
                unit_col.push(next_art);
                next_art += 1;
            }
        }
        rows.push(row);
    }

    let mut tab = Tableau {
        rows,
        objective: Vec::new(),
        basis,
        kinds,
        pivots: 0,
    };

    if n_art > 0 {
        let phase1: Vec<Rational> = tab
            .kinds
            .iter()
            .map(|k| if *k == ColumnKind::Artificial { int(-1) } else { Rational::zero() })
            .collect();
        tab.price(&phase1);
        tab.run(true)?;
        if tab.objective[width].is_negative() {
            return Ok(LPSolution::without_optimum(LPStatus::Infeasible, tab.pivots));
        }
        // Drive zero-level artificials out of the basis. Rows where this is
        // impossible are redundant and keep their artificial at zero.
        for i in 0..m {
            if tab.kinds[tab.basis[i]] != ColumnKind::Artificial {
                continue;
            }
            if let Some(col) = (0..width).find(|&j| tab.kinds[j] != ColumnKind::Artificial && !tab.rows[i][j].is_zero()) {
                tab.pivot(i, col);
            }
        }
    }

    let sense_sign = if lp.sense == Sense::Maximize { int(1) } else { int(-1) };
    let mut costs = vec![Rational::zero(); width];
    for (j, c) in lp.objective.iter().enumerate() {
        let (plus, minus) = var_cols[j];
        costs[plus] = c * &sense_sign;
        if let Some(mc) = minus {
            costs[mc] = -(c * &sense_sign);
        }
    }
    tab.price(&costs);
    if let Outcome::Unbounded = tab.run(false)? {
        return Ok(LPSolution::without_optimum(LPStatus::Unbounded, tab.pivots));
    }

    let mut col_value = vec![Rational::zero(); width];
    for (row, &b) in tab.rows.iter().zip(&tab.basis) {
        col_value[b] = row[width].clone();
    }
    let x: Vec<Rational> = var_cols
        .iter()
        .map(|&(plus, minus)| match minus {
            Some(mc) => &col_value[plus] - &col_value[mc],
            None => col_value[plus].clone(),
        })
        .collect();
    let y: Vec<Rational> = (0..m)
        .map(|i| &tab.objective[unit_col[i]] * &row_sign[i] * &sense_sign)
        .collect();
    let value = lp.objective_value(&x);
    Ok(LPSolution {
        status: LPStatus::Optimal,
        x,
        value: Some(value),
        y,
        pivots: tab.pivots,
    })
}
