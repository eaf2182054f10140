//! Dense two-phase primal simplex with Bland's rule.

use crate::model::{Assignment, Model, ObjectiveSense};
use crate::sets::SetType;

use super::load::{load, LinearForm, LoadedForm, RowSense};
use super::{builtin_capabilities, TargetError};

const PIVOT_TOL: f64 = 1e-9;
const MAX_ITERATIONS: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

impl SolveStatus {
    pub fn name(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "Optimal",
            SolveStatus::Infeasible => "Infeasible",
            SolveStatus::Unbounded => "Unbounded",
            SolveStatus::IterationLimit => "IterationLimit",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// Set when `status` is `Optimal`.
    pub objective_value: Option<f64>,
    /// Empty unless `status` is `Optimal`.
    pub primal: Assignment,
}

impl SolveResult {
    fn without_point(status: SolveStatus) -> Self {
        Self { status, objective_value: None, primal: Assignment::new() }
    }
}

/// Solve a continuous model in `lp-scalar` form.
pub fn solve_lp(model: &Model) -> Result<SolveResult, TargetError> {
    let caps = builtin_capabilities("lp-scalar")?;
    let loaded = load(&caps, model).map_err(|e| TargetError::UnsupportedForReferenceSolver(e.to_string()))?;
    if let Some(c) = model
        .constraints()
        .find(|c| matches!(c.set.set_type(), SetType::Integer | SetType::ZeroOne))
    {
        return Err(TargetError::UnsupportedForReferenceSolver(format!(
            "integrality constraint {}-in-{}",
            c.function.function_type(),
            c.set.set_type()
        )));
    }
    let LoadedForm::Linear(form) = loaded.form else {
        return Err(TargetError::UnsupportedForReferenceSolver("not a scalar linear model".into()));
    };
    Ok(solve_linear(&form))
}

/// How an original column is expressed in nonnegative working columns.
#[derive(Clone, Copy)]
enum ColumnMap {
    /// `x = offset + w`
    Shifted { w: usize, offset: f64 },
    /// `x = offset - w`
    Mirrored { w: usize, offset: f64 },
    /// `x = w⁺ - w⁻`
    Split { pos: usize, neg: usize },
}

fn solve_linear(form: &LinearForm) -> SolveResult {
    let n = form.columns.len();
    let mut maps = Vec::with_capacity(n);
    let mut nw = 0;
    // Extra rows `w ≤ u - l` for doubly bounded columns.
    let mut bound_rows: Vec<(usize, f64)> = Vec::new();
    for j in 0..n {
        let (l, u) = (form.lower[j], form.upper[j]);
        if l > u {
            return SolveResult::without_point(SolveStatus::Infeasible);
        }
        maps.push(if l.is_finite() {
            if u.is_finite() {
                bound_rows.push((nw, u - l));
            }
            nw += 1;
            ColumnMap::Shifted { w: nw - 1, offset: l }
        } else if u.is_finite() {
            nw += 1;
            ColumnMap::Mirrored { w: nw - 1, offset: u }
        } else {
            nw += 2;
            ColumnMap::Split { pos: nw - 2, neg: nw - 1 }
        });
    }

    // Rows over working columns: coefficients, sense, rhs.
    let mut rows: Vec<(Vec<f64>, RowSense, f64)> = form
        .senses
        .iter()
        .zip(&form.rhs)
        .map(|(s, b)| (vec![0.0; nw], *s, *b))
        .collect();
    for &(r, j, a) in &form.entries {
        match maps[j] {
            ColumnMap::Shifted { w, offset } => {
                rows[r].0[w] += a;
                rows[r].2 -= a * offset;
            }
            ColumnMap::Mirrored { w, offset } => {
                rows[r].0[w] -= a;
                rows[r].2 -= a * offset;
            }
            ColumnMap::Split { pos, neg } => {
                rows[r].0[pos] += a;
                rows[r].0[neg] -= a;
            }
        }
    }
    for (w, width) in bound_rows {
        let mut coef = vec![0.0; nw];
        coef[w] = 1.0;
        rows.push((coef, RowSense::LessEqual, width));
    }

    let minimize = !matches!(form.sense, Some(ObjectiveSense::Max));
    let sign = if minimize { 1.0 } else { -1.0 };
    let mut cost = vec![0.0; nw];
    for j in 0..n {
        let c = sign * form.objective[j];
        match maps[j] {
            ColumnMap::Shifted { w, .. } => cost[w] += c,
            ColumnMap::Mirrored { w, .. } => cost[w] -= c,
            ColumnMap::Split { pos, neg } => {
                cost[pos] += c;
                cost[neg] -= c;
            }
        }
    }

    let w_values = match Tableau::solve(rows, nw, &cost) {
        Ok(v) => v,
        Err(status) => return SolveResult::without_point(status),
    };
    let mut primal = Assignment::new();
    let mut objective = form.objective_constant;
    for j in 0..n {
        let x = match maps[j] {
            ColumnMap::Shifted { w, offset } => offset + w_values[w],
            ColumnMap::Mirrored { w, offset } => offset - w_values[w],
            ColumnMap::Split { pos, neg } => w_values[pos] - w_values[neg],
        };
        objective += form.objective[j] * x;
        primal.insert(form.columns[j], x);
    }
    SolveResult { status: SolveStatus::Optimal, objective_value: Some(objective), primal }
}

struct Tableau {
    /// Each row holds the coefficients of every column followed by the rhs.
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    /// Reduced costs followed by minus the objective value.
    obj: Vec<f64>,
    width: usize,
}

impl Tableau {
    /// Minimize `cost · w` subject to `rows`, `w ≥ 0`.
    fn solve(rows: Vec<(Vec<f64>, RowSense, f64)>, nw: usize, cost: &[f64]) -> Result<Vec<f64>, SolveStatus> {
        let m = rows.len();
        let n_slack = rows.iter().filter(|r| r.1 != RowSense::Equal).count();
        let n_struct = nw + n_slack;
        let width = n_struct + m;
        let mut t = Vec::with_capacity(m);
        let mut slack = nw;
        for (i, (coef, sense, rhs)) in rows.into_iter().enumerate() {
            let mut row = vec![0.0; width + 1];
            row[..nw].copy_from_slice(&coef);
            match sense {
                RowSense::LessEqual => {
                    row[slack] = 1.0;
                    slack += 1;
                }
                RowSense::GreaterEqual => {
                    row[slack] = -1.0;
                    slack += 1;
                }
                RowSense::Equal => {}
            }
            row[width] = rhs;
            if rhs < 0.0 {
                for v in row.iter_mut() {
                    *v = -*v;
                }
            }
            row[n_struct + i] = 1.0;
            t.push(row);
        }
        let mut tab = Tableau { rows: t, basis: (n_struct..n_struct + m).collect(), obj: vec![0.0; width + 1], width };

        // Phase 1: minimize the sum of artificials.
        let mut phase1 = vec![0.0; width];
        for c in phase1.iter_mut().skip(n_struct) {
            *c = 1.0;
        }
        tab.set_costs(&phase1);
        tab.iterate(width)?;
        let scale = 1.0 + tab.rows.iter().map(|r| r[width].abs()).sum::<f64>();
        if -tab.obj[width] > 1e-9 * scale {
            return Err(SolveStatus::Infeasible);
        }
        // Drive artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] >= n_struct {
                match (0..n_struct).find(|&j| tab.rows[r][j].abs() > PIVOT_TOL) {
                    Some(j) => tab.pivot(r, j),
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }

        // Phase 2 over structural columns only.
        let mut phase2 = vec![0.0; width];
        phase2[..nw].copy_from_slice(cost);
        tab.set_costs(&phase2);
        tab.iterate(n_struct)?;
        let mut w = vec![0.0; nw];
        for (row, &b) in tab.rows.iter().zip(&tab.basis) {
            if b < nw {
                w[b] = row[width];
            }
        }
        Ok(w)
    }

    fn set_costs(&mut self, cost: &[f64]) {
        let width = self.width;
        self.obj = cost.to_vec();
        self.obj.push(0.0);
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = cost[b];
            if cb != 0.0 {
                for (o, v) in self.obj.iter_mut().zip(row) {
                    *o -= cb * v;
                }
            }
        }
        debug_assert_eq!(self.obj.len(), width + 1);
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let width = self.width;
        let p = self.rows[r][j];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                let f = row[j];
                if f != 0.0 {
                    for k in 0..=width {
                        row[k] -= f * pivot_row[k];
                    }
                }
            }
        }
        let f = self.obj[j];
        if f != 0.0 {
            for k in 0..=width {
                self.obj[k] -= f * pivot_row[k];
            }
        }
        self.basis[r] = j;
    }

    /// Bland's rule over columns `0..allowed`.
    fn iterate(&mut self, allowed: usize) -> Result<(), SolveStatus> {
        let width = self.width;
        for _ in 0..MAX_ITERATIONS {
            let Some(j) = (0..allowed).find(|&j| self.obj[j] < -PIVOT_TOL) else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if row[j] > PIVOT_TOL {
                    let ratio = row[width] / row[j];
                    leave = match leave {
                        None => Some((r, ratio)),
                        Some((lr, lratio)) => {
                            if ratio < lratio - 1e-12 || (ratio <= lratio + 1e-12 && self.basis[r] < self.basis[lr]) {
                                Some((r, ratio))
                            } else {
                                Some((lr, lratio))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return Err(SolveStatus::Unbounded),
                Some((r, _)) => self.pivot(r, j),
            }
        }
        Err(SolveStatus::IterationLimit)
    }
}
