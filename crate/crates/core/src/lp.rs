//! Dense two-phase primal simplex for small linear programs.
//!
//! Problems are stated as `maximize c·x` subject to linear rows with
//! `<=`, `>=` or `=` relations and `x >= 0`. Pivoting uses Dantzig's rule and
//! falls back to Bland's rule after a run of degenerate pivots, which rules
//! out cycling on the highly degenerate flow problems this crate builds.

use std::fmt;

/// Pivot and reduced-cost tolerance.
pub const PIVOT_EPS: f64 = 1e-9;
/// Phase-one objective above which a problem is declared infeasible.
pub const FEASIBILITY_EPS: f64 = 1e-9;

const DEGENERATE_STREAK: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpError {
    Infeasible,
    Unbounded,
    IterationLimit,
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpError::Infeasible => f.write_str("infeasible"),
            LpError::Unbounded => f.write_str("unbounded"),
            LpError::IterationLimit => f.write_str("iteration limit reached"),
        }
    }
}

impl std::error::Error for LpError {}

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<(usize, f64)>,
    rel: Relation,
    rhs: f64,
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<f64>,
    rows: Vec<Row>,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub x: Vec<f64>,
    pub objective: f64,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![0.0; num_vars],
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_constraints(&self) -> usize {
        self.rows.len()
    }

    /// Sets the coefficient of `var` in the (maximized) objective.
    pub fn set_objective(&mut self, var: usize, coeff: f64) {
        self.objective[var] = coeff;
    }

    pub fn add_constraint(&mut self, coeffs: Vec<(usize, f64)>, rel: Relation, rhs: f64) {
        debug_assert!(coeffs.iter().all(|&(v, _)| v < self.num_vars));
        self.rows.push(Row { coeffs, rel, rhs });
    }

    pub fn solve(&self) -> Result<Solution, LpError> {
        Tableau::build(self).run(&self.objective)
    }
}

struct Tableau {
    rows: usize,
    /// Columns excluding the right-hand side.
    cols: usize,
    width: usize,
    data: Vec<f64>,
    basis: Vec<usize>,
    num_vars: usize,
    first_artificial: usize,
    max_iters: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.rows.len();
        let n = lp.num_vars;
        let slacks = lp.rows.iter().filter(|r| r.rel != Relation::Eq).count();
        let artificials = lp
            .rows
            .iter()
            .filter(|r| {
                let flipped = r.rhs < 0.0;
                match r.rel {
                    Relation::Eq => true,
                    Relation::Le => flipped,
                    Relation::Ge => !flipped,
                }
            })
            .count();
        let cols = n + slacks + artificials;
        let width = cols + 1;
        let mut data = vec![0.0; m * width];
        let mut basis = vec![0; m];
        let mut next_slack = n;
        let mut next_art = n + slacks;
        for (i, row) in lp.rows.iter().enumerate() {
            let sign = if row.rhs < 0.0 { -1.0 } else { 1.0 };
            let rel = match (row.rel, sign < 0.0) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => r,
            };
            let line = &mut data[i * width..(i + 1) * width];
            for &(v, c) in &row.coeffs {
                line[v] += sign * c;
            }
            line[cols] = sign * row.rhs;
            match rel {
                Relation::Le => {
                    line[next_slack] = 1.0;
                    basis[i] = next_slack;
                    next_slack += 1;
                }
                Relation::Ge => {
                    line[next_slack] = -1.0;
                    next_slack += 1;
                    line[next_art] = 1.0;
                    basis[i] = next_art;
                    next_art += 1;
                }
                Relation::Eq => {
                    line[next_art] = 1.0;
                    basis[i] = next_art;
                    next_art += 1;
                }
            }
        }
        Tableau {
            rows: m,
            cols,
            width,
            data,
            basis,
            num_vars: n,
            first_artificial: n + slacks,
            max_iters: 20_000 + 50 * (m + cols),
        }
    }

    fn run(mut self, objective: &[f64]) -> Result<Solution, LpError> {
        if self.first_artificial < self.cols {
            let mut cost = vec![0.0; self.cols];
            for c in &mut cost[self.first_artificial..] {
                *c = -1.0;
            }
            let value = self.optimize(&cost, self.cols)?;
            if value < -FEASIBILITY_EPS * (1.0 + self.rhs_scale()) {
                return Err(LpError::Infeasible);
            }
            self.evict_artificials();
        }
        let mut cost = vec![0.0; self.cols];
        cost[..self.num_vars].copy_from_slice(objective);
        let value = self.optimize(&cost, self.first_artificial)?;

        let mut x = vec![0.0; self.num_vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.num_vars {
                x[b] = self.data[i * self.width + self.cols].max(0.0);
            }
        }
        Ok(Solution { x, objective: value })
    }

    fn rhs_scale(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.data[i * self.width + self.cols].abs())
            .fold(0.0, f64::max)
    }

    /// Maximizes `cost·x` over the current basis using columns below
    /// `allowed`. Returns the optimal objective value.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> Result<f64, LpError> {
        // Reduced costs r_j = c_j - c_B B^-1 A_j; last entry is -z.
        let mut reduced = vec![0.0; self.width];
        reduced[..self.cols].copy_from_slice(cost);
        for i in 0..self.rows {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                let line = &self.data[i * self.width..(i + 1) * self.width];
                for (r, &a) in reduced.iter_mut().zip(line) {
                    *r -= cb * a;
                }
            }
        }

        let mut degenerate = 0usize;
        for _ in 0..self.max_iters {
            let bland = degenerate >= DEGENERATE_STREAK;
            let mut entering = None;
            let mut best = PIVOT_EPS;
            for (j, &r) in reduced[..allowed].iter().enumerate() {
                if r > best {
                    entering = Some(j);
                    if bland {
                        break;
                    }
                    best = r;
                }
            }
            let Some(pc) = entering else {
                return Ok(-reduced[self.cols]);
            };

            let mut leaving: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.data[i * self.width + pc];
                if a > PIVOT_EPS {
                    let ratio = self.data[i * self.width + self.cols].max(0.0) / a;
                    let better = match leaving {
                        None => true,
                        Some((li, lr)) => {
                            ratio < lr - 1e-12
                                || (ratio <= lr + 1e-12 && self.basis[i] < self.basis[li])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((pr, ratio)) = leaving else {
                return Err(LpError::Unbounded);
            };
            if ratio <= 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(pr, pc, &mut reduced);
        }
        Err(LpError::IterationLimit)
    }

    fn pivot(&mut self, pr: usize, pc: usize, reduced: &mut [f64]) {
        let w = self.width;
        let inv = 1.0 / self.data[pr * w + pc];
        {
            let line = &mut self.data[pr * w..(pr + 1) * w];
            for a in line.iter_mut() {
                *a *= inv;
            }
            line[pc] = 1.0;
        }
        let pivot_row: Vec<f64> = self.data[pr * w..(pr + 1) * w].to_vec();
        let nonzero: Vec<usize> = (0..w).filter(|&j| pivot_row[j] != 0.0).collect();
        for i in 0..self.rows {
            if i == pr {
                continue;
            }
            let f = self.data[i * w + pc];
            if f == 0.0 {
                continue;
            }
            let line = &mut self.data[i * w..(i + 1) * w];
            for &j in &nonzero {
                line[j] -= f * pivot_row[j];
            }
            line[pc] = 0.0;
            if line[w - 1].abs() < 1e-13 {
                line[w - 1] = 0.0;
            }
        }
        let f = reduced[pc];
        if f != 0.0 {
            for &j in &nonzero {
                reduced[j] -= f * pivot_row[j];
            }
            reduced[pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    /// Pivots basic artificials (all at zero after a feasible phase one) out
    /// of the basis; rows with no other nonzero entry are redundant and
    /// dropped.
    fn evict_artificials(&mut self) {
        let mut dummy = vec![0.0; self.width];
        let mut i = 0;
        while i < self.rows {
            if self.basis[i] < self.first_artificial {
                i += 1;
                continue;
            }
            let w = self.width;
            let col = (0..self.first_artificial)
                .filter(|&j| self.data[i * w + j].abs() > PIVOT_EPS)
                .max_by(|&a, &b| {
                    self.data[i * w + a]
                        .abs()
                        .total_cmp(&self.data[i * w + b].abs())
                });
            match col {
                Some(j) => {
                    self.pivot(i, j, &mut dummy);
                    i += 1;
                }
                None => {
                    self.data.drain(i * w..(i + 1) * w);
                    self.basis.remove(i);
                    self.rows -= 1;
                }
            }
        }
    }
}
