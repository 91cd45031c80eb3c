//! Dense two-phase tableau simplex with Bland's anti-cycling rule.
//!
//! Sized for the tiny programmes that show up here (tens of variables and
//! constraints). All variables are nonnegative; free variables are split by
//! the caller.

use crate::error::{Error, Result};

const EPS: f64 = 1e-12;
const FEASIBILITY_TOL: f64 = 1e-9;
const MAX_PIVOTS: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn new(coeffs: Vec<f64>, relation: Relation, rhs: f64) -> Self {
        Self {
            coeffs,
            relation,
            rhs,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
}

struct Tableau {
    // rows of [coefficients..., rhs]
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        self.rows[r].iter_mut().for_each(|v| *v /= p);
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs of `cost` with respect to the current basis.
    fn reduced(&self, cost: &[f64]) -> Vec<f64> {
        let mut d = cost.to_vec();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = cost[b];
            if cb != 0.0 {
                for (dj, a) in d.iter_mut().zip(row.iter()) {
                    *dj -= cb * a;
                }
            }
        }
        d
    }

    /// Minimizes `cost . x` over the columns allowed by `allowed`.
    fn optimize(&mut self, cost: &[f64], allowed: &dyn Fn(usize) -> bool) -> Result<()> {
        for _ in 0..MAX_PIVOTS {
            let d = self.reduced(cost);
            // Bland: lowest-index improving column
            let entering = (0..self.width).find(|&j| allowed(j) && d[j] < -EPS);
            let Some(c) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[c];
                if a > EPS {
                    let ratio = row[self.width] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - EPS
                                || ((ratio - br).abs() <= EPS && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                return Err(Error::LpUnbounded);
            };
            self.pivot(r, c);
        }
        Err(Error::LpDegenerate)
    }
}

/// Minimizes `objective . x` subject to `constraints` and `x >= 0`.
pub fn minimize(objective: &[f64], constraints: &[Constraint]) -> Result<LpSolution> {
    let n = objective.len();
    let m = constraints.len();
    let slack_count = constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let art_start = n + slack_count;
    let width = art_start + m;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut slack = n;
    for (i, con) in constraints.iter().enumerate() {
        debug_assert_eq!(con.coeffs.len(), n);
        let mut row = vec![0.0; width + 1];
        row[..n].copy_from_slice(&con.coeffs);
        match con.relation {
            Relation::Le => {
                row[slack] = 1.0;
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -1.0;
                slack += 1;
            }
            Relation::Eq => {}
        }
        row[width] = con.rhs;
        if row[width] < 0.0 {
            row.iter_mut().for_each(|v| *v = -*v);
        }
        row[art_start + i] = 1.0;
        rows.push(row);
        basis.push(art_start + i);
    }
    let mut tab = Tableau { rows, basis, width };

    // phase 1
    let mut phase1 = vec![0.0; width];
    phase1[art_start..].iter_mut().for_each(|c| *c = 1.0);
    tab.optimize(&phase1, &|_| true)?;
    let infeasibility: f64 = tab
        .rows
        .iter()
        .zip(&tab.basis)
        .filter(|(_, &b)| b >= art_start)
        .map(|(row, _)| row[width])
        .sum();
    if infeasibility > FEASIBILITY_TOL {
        return Err(Error::LpInfeasible);
    }
    // drive zero-level artificials out of the basis where possible
    for r in 0..m {
        if tab.basis[r] >= art_start {
            if let Some(c) = (0..art_start).find(|&j| tab.rows[r][j].abs() > EPS) {
                tab.pivot(r, c);
            }
        }
    }

    // phase 2
    let mut cost = vec![0.0; width];
    cost[..n].copy_from_slice(objective);
    tab.optimize(&cost, &|j| j < art_start)?;

    let mut x = vec![0.0; n];
    for (row, &b) in tab.rows.iter().zip(&tab.basis) {
        if b < n {
            x[b] = row[width].max(0.0);
        }
    }
    let objective_value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution {
        x,
        objective: objective_value,
    })
}
