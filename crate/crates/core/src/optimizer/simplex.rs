//! Dense-tableau two-phase primal simplex with Bland's rule.
//!
//! Rows are equilibrated (divided by their largest coefficient magnitude) and
//! flipped so every right-hand side is non-negative. Each row gets one
//! slack (`<=`) or surplus (`>=`) column; `>=` rows additionally get an
//! artificial column for the phase-1 basis. Duals are read from the reduced
//! costs of the slack/surplus columns and mapped back through the row
//! scaling and flips.

use super::{LpProblem, LpSolution, LpStatus, OptimizerError, Relation};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    /// Pivot budget across both phases; `None` means `10 * (rows + vars)^2`.
    pub max_iterations: Option<usize>,
    /// Phase-1 residual, relative to the largest scaled right-hand side,
    /// above which the problem is declared infeasible.
    pub feasibility_tol: f64,
    /// Reduced costs below `-optimality_tol` are eligible to enter.
    pub optimality_tol: f64,
    /// Smallest column entry accepted as a pivot.
    pub pivot_tol: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            max_iterations: None,
            feasibility_tol: 1e-7,
            optimality_tol: 1e-9,
            pivot_tol: 1e-9,
        }
    }
}

pub fn solve_simplex(p: &LpProblem) -> Result<LpSolution, OptimizerError> {
    solve_simplex_with(p, &SimplexOptions::default())
}

struct Tableau {
    m: usize,
    /// Columns excluding the right-hand side.
    cols: usize,
    /// `m` rows of `cols + 1` entries; the last entry is the right-hand side.
    a: Vec<f64>,
    /// Reduced costs; the last entry holds minus the objective value.
    d: Vec<f64>,
    basis: Vec<usize>,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cols + 1
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.width() + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.cols)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width();
        let p = self.a[r * w + c];
        for v in &mut self.a[r * w..(r + 1) * w] {
            *v /= p;
        }
        self.a[r * w + c] = 1.0;
        let (before, rest) = self.a.split_at_mut(r * w);
        let (row_r, after) = rest.split_at_mut(w);
        for row in before.chunks_exact_mut(w).chain(after.chunks_exact_mut(w)) {
            let f = row[c];
            if f != 0.0 {
                for (v, &rv) in row.iter_mut().zip(row_r.iter()) {
                    *v -= f * rv;
                }
                row[c] = 0.0;
            }
        }
        let f = self.d[c];
        if f != 0.0 {
            for (v, &rv) in self.d.iter_mut().zip(row_r.iter()) {
                *v -= f * rv;
            }
            self.d[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Resets reduced costs for column costs `cost` (length `cols`).
    fn price(&mut self, cost: &[f64]) {
        let w = self.width();
        self.d = cost.iter().copied().chain([0.0]).collect();
        for i in 0..self.m {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for (dj, &aij) in self.d.iter_mut().zip(&self.a[i * w..(i + 1) * w]) {
                    *dj -= cb * aij;
                }
            }
        }
    }

    fn run(
        &mut self,
        allowed: impl Fn(usize) -> bool,
        opts: &SimplexOptions,
        iterations: &mut usize,
        limit: usize,
    ) -> Result<PhaseEnd, OptimizerError> {
        loop {
            // Bland: lowest-index improving column enters
            let Some(c) = (0..self.cols).find(|&j| allowed(j) && self.d[j] < -opts.optimality_tol) else {
                return Ok(PhaseEnd::Optimal);
            };

            // min-ratio row; ties go to the lowest-index basic variable
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let aic = self.at(i, c);
                if aic <= opts.pivot_tol {
                    continue;
                }
                let ratio = self.rhs(i).max(0.0) / aic;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        let eps = 1e-12 * best.abs().max(1.0);
                        if ratio < best - eps || (ratio <= best + eps && self.basis[i] < self.basis[r]) {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else {
                return Ok(PhaseEnd::Unbounded);
            };

            if *iterations >= limit {
                return Err(OptimizerError::IterationLimit { limit });
            }
            *iterations += 1;
            self.pivot(r, c);
        }
    }
}

pub fn solve_simplex_with(p: &LpProblem, opts: &SimplexOptions) -> Result<LpSolution, OptimizerError> {
    p.check()?;
    let n = p.num_vars();
    let m = p.rows.len();
    let limit = opts.max_iterations.unwrap_or(10 * (m + n) * (m + n));

    // equilibrate and orient rows
    let mut scale = vec![1.0; m];
    let mut sign = vec![1.0; m];
    let mut ge = vec![false; m];
    for (i, row) in p.rows.iter().enumerate() {
        let s = row.coeffs.iter().fold(0.0f64, |acc, a| acc.max(a.abs()));
        if s > 0.0 {
            scale[i] = s;
        }
        if row.rhs < 0.0 {
            sign[i] = -1.0;
        }
        let relation = match (row.relation, sign[i] < 0.0) {
            (r, false) => r,
            (Relation::Ge, true) => Relation::Le,
            (Relation::Le, true) => Relation::Ge,
        };
        ge[i] = relation == Relation::Ge;
    }

    let art_rows: Vec<usize> = (0..m).filter(|&i| ge[i]).collect();
    let n_art = art_rows.len();
    let cols = n + m + n_art;
    let art_start = n + m;
    let w = cols + 1;

    let mut t = Tableau {
        m,
        cols,
        a: vec![0.0; m * w],
        d: vec![0.0; w],
        basis: vec![0; m],
    };
    let mut b_max = 0.0f64;
    for (i, row) in p.rows.iter().enumerate() {
        let f = sign[i] / scale[i];
        for (j, &aij) in row.coeffs.iter().enumerate() {
            t.a[i * w + j] = aij * f;
        }
        t.a[i * w + n + i] = if ge[i] { -1.0 } else { 1.0 };
        let b = row.rhs * f;
        t.a[i * w + cols] = b;
        b_max = b_max.max(b);
        t.basis[i] = n + i;
    }
    for (k, &i) in art_rows.iter().enumerate() {
        t.a[i * w + art_start + k] = 1.0;
        t.basis[i] = art_start + k;
    }

    let mut iterations = 0;
    let is_art = |j: usize| j >= art_start;

    if n_art > 0 {
        let phase1_cost: Vec<f64> = (0..cols).map(|j| if is_art(j) { 1.0 } else { 0.0 }).collect();
        t.price(&phase1_cost);
        // phase 1 is bounded below by zero, so it cannot be unbounded
        t.run(|_| true, opts, &mut iterations, limit)?;

        let residual: f64 = (0..m).filter(|&i| is_art(t.basis[i])).map(|i| t.rhs(i).max(0.0)).sum();
        if residual > opts.feasibility_tol * b_max.max(1.0) {
            let infeasible_rows = (0..m)
                .filter(|&i| is_art(t.basis[i]) && t.rhs(i) > opts.feasibility_tol * b_max.max(1.0) / m as f64)
                .map(|i| art_rows[t.basis[i] - art_start])
                .collect();
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                scale_factors: vec![0.0; n],
                objective_value: f64::NAN,
                dual_values: vec![0.0; m],
                iterations,
                infeasible_rows,
            });
        }

        // drive remaining zero-level artificials out of the basis
        for r in 0..m {
            if !is_art(t.basis[r]) {
                continue;
            }
            if let Some(j) = (0..art_start).find(|&j| t.at(r, j).abs() > opts.pivot_tol) {
                t.pivot(r, j);
            }
            // otherwise the row is redundant; its artificial stays basic at zero
        }
    }

    let phase2_cost: Vec<f64> = (0..cols).map(|j| if j < n { p.objective[j] } else { 0.0 }).collect();
    t.price(&phase2_cost);
    let end = t.run(|j| !is_art(j), opts, &mut iterations, limit)?;

    if let PhaseEnd::Unbounded = end {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            scale_factors: vec![0.0; n],
            objective_value: f64::NEG_INFINITY,
            dual_values: vec![0.0; m],
            iterations,
            infeasible_rows: Vec::new(),
        });
    }

    let mut x = vec![0.0; n];
    for i in 0..m {
        if t.basis[i] < n {
            x[t.basis[i]] = t.rhs(i).max(0.0);
        }
    }
    let dual_values = (0..m)
        .map(|i| {
            let kappa = if ge[i] { -1.0 } else { 1.0 };
            let y_scaled = -kappa * t.d[n + i];
            y_scaled * sign[i] / scale[i]
        })
        .collect();

    Ok(LpSolution {
        status: LpStatus::Optimal,
        objective_value: p.objective_value(&x),
        scale_factors: x,
        dual_values,
        iterations,
        infeasible_rows: Vec::new(),
    })
}
