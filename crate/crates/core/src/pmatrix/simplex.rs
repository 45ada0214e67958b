//! Dense two-phase simplex for small linear programs.
//!
//! Solves `minimize c^T x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0`.
//! Pivoting follows Bland's rule (smallest entering index, smallest leaving
//! basic index among ratio ties), so the method terminates on degenerate
//! problems, which the sign-reversal LPs always are (every `<=` row has rhs 0).

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimplexError {
    #[error("row {row} has {got} coefficients, expected {expected}")]
    RowLength { row: usize, got: usize, expected: usize },
    #[error("simplex exceeded {0} pivots")]
    IterationLimit(usize),
    #[error("phase-I objective became unbounded; tableau is numerically inconsistent")]
    Unbounded,
}

#[derive(Clone, Debug, Default)]
pub struct LinearProgram<T> {
    pub num_vars: usize,
    pub upper: Vec<(Vec<T>, T)>,
    pub equal: Vec<(Vec<T>, T)>,
    /// Minimized; `None` asks for feasibility only.
    pub objective: Option<Vec<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility<T> {
    Feasible(Vec<T>),
    Infeasible,
}

impl<T> Feasibility<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

pub type FeasibilityProblem<T> = LinearProgram<T>;

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    /// Reduced costs; `objective` holds minus the current objective value.
    cost: Vec<T>,
    objective: T,
    pivots: usize,
    limit: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = x.clone() / p.clone();
        }
        self.rhs[r] = self.rhs[r].clone() / p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            eliminate_row(&mut self.rows[i], &pivot_row, &f);
            self.rhs[i] = self.rhs[i].clone() - f * pivot_rhs.clone();
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            eliminate_row(&mut self.cost, &pivot_row, &f);
            self.objective = self.objective.clone() - f * pivot_rhs;
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Bland-rule pivoting over columns `< allowed` until no reduced cost is negative.
    fn run(&mut self, allowed: usize) -> Result<Phase, SimplexError> {
        loop {
            if self.pivots >= self.limit {
                return Err(SimplexError::IterationLimit(self.limit));
            }
            let Some(enter) = (0..allowed).find(|&j| self.cost[j].is_negative_at(1.0)) else {
                return Ok(Phase::Optimal);
            };
            let mut leave: Option<(usize, T)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][enter];
                if !a.is_positive_at(1.0) {
                    continue;
                }
                let ratio = self.rhs[r].clone() / a.clone();
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((best, best_ratio)) => {
                        let diff = ratio.clone() - best_ratio.clone();
                        let tie = diff.negligible(best_ratio.as_f64().abs());
                        if (!tie && ratio < best_ratio) || (tie && self.basis[r] < self.basis[best]) {
                            Some((r, ratio))
                        } else {
                            Some((best, best_ratio))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else {
                return Ok(Phase::Unbounded);
            };
            self.pivot(r, enter);
        }
    }

    fn point(&self, nv: usize) -> Vec<T> {
        let mut x = vec![T::zero(); nv];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < nv {
                x[b] = self.rhs[r].clone();
            }
        }
        x
    }
}

fn eliminate_row<T: Scalar>(row: &mut [T], pivot_row: &[T], f: &T) {
    for (x, p) in row.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *x = x.clone() - f.clone() * p.clone();
        }
    }
}

pub fn solve<T: Scalar>(lp: &LinearProgram<T>) -> Result<LpOutcome<T>, SimplexError> {
    let nv = lp.num_vars;
    let n_upper = lp.upper.len();
    let m = n_upper + lp.equal.len();
    for (row, (coeffs, _)) in lp.upper.iter().chain(lp.equal.iter()).enumerate() {
        if coeffs.len() != nv {
            return Err(SimplexError::RowLength { row, got: coeffs.len(), expected: nv });
        }
    }
    if let Some(c) = &lp.objective {
        if c.len() != nv {
            return Err(SimplexError::RowLength { row: m, got: c.len(), expected: nv });
        }
    }

    // rows needing an artificial: `<=` rows with negative rhs, and all `=` rows
    let needs_art: Vec<bool> = lp
        .upper
        .iter()
        .map(|(_, b)| b.is_negative())
        .chain(lp.equal.iter().map(|_| true))
        .collect();
    let n_art = needs_art.iter().filter(|&&b| b).count();
    let real = nv + n_upper;
    let width = real + n_art;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = real;
    for (i, (coeffs, b)) in lp.upper.iter().chain(lp.equal.iter()).enumerate() {
        let mut row = vec![T::zero(); width];
        let flip = b.is_negative();
        for (j, a) in coeffs.iter().enumerate() {
            row[j] = if flip { -a.clone() } else { a.clone() };
        }
        if i < n_upper {
            row[nv + i] = if flip { -T::one() } else { T::one() };
        }
        if needs_art[i] {
            row[next_art] = T::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(nv + i);
        }
        rows.push(row);
        rhs.push(if flip { -b.clone() } else { b.clone() });
    }

    let mut cost = vec![T::zero(); width];
    let mut objective = T::zero();
    for i in (0..m).filter(|&i| needs_art[i]) {
        for j in 0..real {
            cost[j] = cost[j].clone() - rows[i][j].clone();
        }
        objective = objective - rhs[i].clone();
    }

    let limit = 100 * (m + width) + 1000;
    let mut t = Tableau { rows, rhs, basis, cost, objective, pivots: 0, limit };
    if let Phase::Unbounded = t.run(width)? {
        return Err(SimplexError::Unbounded);
    }
    if !t.objective.negligible(1.0) {
        return Ok(LpOutcome::Infeasible);
    }

    let Some(c) = &lp.objective else {
        return Ok(LpOutcome::Optimal { x: t.point(nv), value: T::zero() });
    };

    // drive zero-level artificials out of the basis; rows with no usable pivot are redundant
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= real {
            match (0..real).find(|&j| !t.rows[r][j].negligible(1.0)) {
                Some(j) => t.pivot(r, j),
                None => {
                    t.rows.remove(r);
                    t.rhs.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let mut full_cost = vec![T::zero(); width];
    full_cost[..nv].clone_from_slice(c);
    t.cost = full_cost.clone();
    t.objective = T::zero();
    for (r, &b) in t.basis.clone().iter().enumerate() {
        let cb = full_cost[b].clone();
        if cb.is_zero() {
            continue;
        }
        for j in 0..width {
            t.cost[j] = t.cost[j].clone() - cb.clone() * t.rows[r][j].clone();
        }
        t.objective = t.objective.clone() - cb * t.rhs[r].clone();
    }
    match t.run(real)? {
        Phase::Unbounded => Ok(LpOutcome::Unbounded),
        Phase::Optimal => Ok(LpOutcome::Optimal { x: t.point(nv), value: -t.objective.clone() }),
    }
}

/// Phase I only: a feasible point or `Infeasible`.
pub fn phase_one<T: Scalar>(problem: &FeasibilityProblem<T>) -> Result<Feasibility<T>, SimplexError> {
    let lp = LinearProgram { objective: None, ..problem.clone() };
    Ok(match solve(&lp)? {
        LpOutcome::Optimal { x, .. } => Feasibility::Feasible(x),
        LpOutcome::Infeasible => Feasibility::Infeasible,
        LpOutcome::Unbounded => unreachable!("feasibility problems have no objective"),
    })
}
