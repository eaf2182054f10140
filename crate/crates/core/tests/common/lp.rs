//! Random small LPs, their direct row form, and a vertex-enumeration oracle.

use mathopt::model::{Assignment, Function, Model, ObjectiveSense, ScalarAffineFunction, VariableIndex};
use mathopt::sets::SetSpec;
use nalgebra::{DMatrix, DVector};
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// `a·x (sense) b`.
#[derive(Clone, Debug)]
pub struct Row {
    pub a: Vec<f64>,
    pub sense: Sense,
    pub b: f64,
}

#[derive(Clone, Debug)]
pub struct DenseLp {
    pub n: usize,
    pub rows: Vec<Row>,
    pub c: Vec<f64>,
    pub constant: f64,
    pub maximize: bool,
}

fn round(v: f64) -> f64 {
    (v * 10.0).round() / 10.0
}

/// A bounded LP over at most four variables mixing `Interval`, `LessThan`,
/// and `GreaterThan` constraints on single variables and affine rows.
pub fn random_lp(rng: &mut impl Rng) -> Model {
    let mut m = Model::new();
    let n = rng.random_range(1..=4);
    let vars = m.add_variables(n);
    for (i, &v) in vars.iter().enumerate() {
        m.set_variable_name(v, &format!("x{}", i + 1)).unwrap();
    }
    let mut center = Vec::new();
    for &v in &vars {
        let lower = round(rng.random_range(-3.0..0.0));
        let upper = round(rng.random_range(0.5..4.0));
        center.push((lower + upper) / 2.0);
        match rng.random_range(0..3) {
            0 => {
                m.add_constraint(Function::SingleVariable(v), SetSpec::Interval { lower, upper }).unwrap();
            }
            1 => {
                m.add_constraint(Function::SingleVariable(v), SetSpec::GreaterThan { lower }).unwrap();
                m.add_constraint(Function::SingleVariable(v), SetSpec::LessThan { upper }).unwrap();
            }
            _ => {
                let f = ScalarAffineFunction::from_pairs([(1.0, v)], 0.0);
                m.add_constraint(Function::ScalarAffine(f), SetSpec::Interval { lower, upper }).unwrap();
            }
        }
    }
    for _ in 0..rng.random_range(1..=4) {
        let mut terms: Vec<(f64, VariableIndex)> = Vec::new();
        for &v in &vars {
            if rng.random_bool(0.7) {
                terms.push((round(rng.random_range(-3.0..3.0)), v));
            }
        }
        if terms.is_empty() {
            continue;
        }
        let f = ScalarAffineFunction::from_pairs(terms, round(rng.random_range(-1.0..1.0)));
        let at_center = f.terms.iter().map(|t| t.coefficient * center[t.variable.0]).sum::<f64>() + f.constant;
        // Mostly satisfiable near the box center; occasionally not.
        let shift = round(rng.random_range(-1.0..3.0));
        let set = match rng.random_range(0..3) {
            0 => SetSpec::LessThan { upper: round(at_center + shift) },
            1 => SetSpec::GreaterThan { lower: round(at_center - shift) },
            _ => {
                let lower = round(at_center - shift);
                SetSpec::Interval { lower, upper: lower + round(rng.random_range(0.0..2.0)) }
            }
        };
        m.add_constraint(Function::ScalarAffine(f), set).unwrap();
    }
    let pairs: Vec<(f64, VariableIndex)> = vars.iter().map(|&v| (round(rng.random_range(-3.0..3.0)), v)).collect();
    let objective = ScalarAffineFunction::from_pairs(pairs, round(rng.random_range(-2.0..2.0)));
    let sense = if rng.random_bool(0.5) { ObjectiveSense::Min } else { ObjectiveSense::Max };
    m.set_objective(sense, Some(Function::ScalarAffine(objective))).unwrap();
    m
}

/// Rows of a model whose constraints are scalar affine or single-variable
/// in `LessThan`, `GreaterThan`, `EqualTo`, or `Interval`. Variables are
/// numbered by position.
pub fn dense(model: &Model) -> DenseLp {
    let vars: Vec<VariableIndex> = model.variables().collect();
    let n = vars.len();
    let col = |v: VariableIndex| vars.iter().position(|&w| w == v).unwrap();
    let mut rows = Vec::new();
    for c in model.constraints() {
        let f = c.function.to_scalar_affine().expect("affine constraint");
        let mut a = vec![0.0; n];
        for t in &f.terms {
            a[col(t.variable)] += t.coefficient;
        }
        let mut push = |sense, b: f64| rows.push(Row { a: a.clone(), sense, b: b - f.constant });
        match c.set {
            SetSpec::LessThan { upper } => push(Sense::Le, upper),
            SetSpec::GreaterThan { lower } => push(Sense::Ge, lower),
            SetSpec::EqualTo { value } => push(Sense::Eq, value),
            SetSpec::Interval { lower, upper } => {
                push(Sense::Ge, lower);
                push(Sense::Le, upper);
            }
            ref other => panic!("not an LP set: {other:?}"),
        }
    }
    let obj = model.objective_function().and_then(Function::to_scalar_affine).unwrap_or_default();
    let mut c = vec![0.0; n];
    for t in &obj.terms {
        c[col(t.variable)] += t.coefficient;
    }
    DenseLp { n, rows, c, constant: obj.constant, maximize: model.objective_sense() == ObjectiveSense::Max }
}

/// The same LP written with only scalar affine rows the reference solver
/// takes directly.
pub fn direct_model(lp: &DenseLp) -> Model {
    let mut m = Model::new();
    let vars = m.add_variables(lp.n);
    for row in &lp.rows {
        let f = ScalarAffineFunction::from_pairs(row.a.iter().zip(&vars).map(|(&a, &v)| (a, v)), 0.0);
        let set = match row.sense {
            Sense::Le => SetSpec::LessThan { upper: row.b },
            Sense::Ge => SetSpec::GreaterThan { lower: row.b },
            Sense::Eq => SetSpec::EqualTo { value: row.b },
        };
        m.add_constraint(Function::ScalarAffine(f), set).unwrap();
    }
    let obj = ScalarAffineFunction::from_pairs(lp.c.iter().zip(&vars).map(|(&c, &v)| (c, v)), lp.constant);
    let sense = if lp.maximize { ObjectiveSense::Max } else { ObjectiveSense::Min };
    m.set_objective(sense, Some(Function::ScalarAffine(obj))).unwrap();
    m
}

fn row_feasible(row: &Row, x: &[f64], tol: f64) -> bool {
    let lhs: f64 = row.a.iter().zip(x).map(|(a, v)| a * v).sum();
    let slack = tol * (1.0 + row.b.abs());
    match row.sense {
        Sense::Le => lhs <= row.b + slack,
        Sense::Ge => lhs >= row.b - slack,
        Sense::Eq => (lhs - row.b).abs() <= slack,
    }
}

pub fn feasible(lp: &DenseLp, x: &[f64], tol: f64) -> bool {
    lp.rows.iter().all(|r| row_feasible(r, x, tol))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Optimal value and a vertex attaining it, or `None` when infeasible.
/// Assumes the feasible region is bounded.
pub fn vertex_optimum(lp: &DenseLp) -> Option<(f64, Vec<f64>)> {
    let mut best: Option<(f64, Vec<f64>)> = None;
    for active in combinations(lp.rows.len(), lp.n) {
        let a = DMatrix::from_fn(lp.n, lp.n, |i, j| lp.rows[active[i]].a[j]);
        let b = DVector::from_fn(lp.n, |i, _| lp.rows[active[i]].b);
        let lu = a.lu();
        if lu.determinant().abs() < 1e-10 {
            continue;
        }
        let Some(x) = lu.solve(&b) else { continue };
        let x: Vec<f64> = x.iter().copied().collect();
        if !feasible(lp, &x, 1e-9) {
            continue;
        }
        let value = lp.c.iter().zip(&x).map(|(c, v)| c * v).sum::<f64>() + lp.constant;
        let better = match &best {
            None => true,
            Some((b, _)) => (lp.maximize && value > *b) || (!lp.maximize && value < *b),
        };
        if better {
            best = Some((value, x));
        }
    }
    best
}

pub fn point(model: &Model, x: &Assignment) -> Vec<f64> {
    model.variables().map(|v| x[&v]).collect()
}
