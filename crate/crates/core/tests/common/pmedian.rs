//! The continuous P-median model: `d` facilities over `n` sites serving `m`
//! customers, in a scalar and a vector formulation.

use mathopt::model::{Function, Model, ObjectiveSense, ScalarAffineFunction, VariableIndex, VectorAffineFunction};
use mathopt::sets::SetSpec;

fn cost(i: usize, j: usize) -> f64 {
    ((i * 37 + j * 11) % 17) as f64 + 1.0
}

fn variables(model: &mut Model, m: usize, n: usize) -> (Vec<Vec<VariableIndex>>, Vec<VariableIndex>) {
    let x: Vec<Vec<VariableIndex>> = (0..m).map(|_| model.add_variables(n)).collect();
    let y = model.add_variables(n);
    for (i, row) in x.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            model.set_variable_name(v, &format!("x[{i},{j}]")).unwrap();
        }
    }
    for (j, &v) in y.iter().enumerate() {
        model.set_variable_name(v, &format!("y[{j}]")).unwrap();
    }
    let objective = ScalarAffineFunction::from_pairs(
        x.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (cost(i, j), v))),
        0.0,
    );
    model.set_objective(ObjectiveSense::Min, Some(Function::ScalarAffine(objective))).unwrap();
    (x, y)
}

fn sum(vars: &[VariableIndex], constant: f64) -> ScalarAffineFunction {
    ScalarAffineFunction::from_pairs(vars.iter().map(|&v| (1.0, v)), constant)
}

pub fn scalar(m: usize, n: usize, d: f64) -> Model {
    let mut model = Model::new();
    let (x, y) = variables(&mut model, m, n);
    for row in &x {
        model.add_constraint(Function::ScalarAffine(sum(row, 0.0)), SetSpec::EqualTo { value: 1.0 }).unwrap();
    }
    model.add_constraint(Function::ScalarAffine(sum(&y, 0.0)), SetSpec::EqualTo { value: d }).unwrap();
    for row in &x {
        for (j, &v) in row.iter().enumerate() {
            let f = ScalarAffineFunction::from_pairs([(1.0, v), (-1.0, y[j])], 0.0);
            model.add_constraint(Function::ScalarAffine(f), SetSpec::LessThan { upper: 0.0 }).unwrap();
        }
    }
    for &v in x.iter().flatten() {
        model.add_constraint(Function::SingleVariable(v), SetSpec::GreaterThan { lower: 0.0 }).unwrap();
    }
    for &v in &y {
        model.add_constraint(Function::SingleVariable(v), SetSpec::Interval { lower: 0.0, upper: 1.0 }).unwrap();
    }
    model
}

pub fn vector(m: usize, n: usize, d: f64) -> Model {
    let mut model = Model::new();
    let (x, y) = variables(&mut model, m, n);
    let mut add = |rows: Vec<ScalarAffineFunction>, set: SetSpec| {
        model.add_constraint(Function::VectorAffine(VectorAffineFunction::from_rows(&rows)), set).unwrap();
    };
    add(x.iter().map(|row| sum(row, -1.0)).collect(), SetSpec::Zeros { dimension: m });
    add(vec![sum(&y, -d)], SetSpec::Zeros { dimension: 1 });
    let linking = x
        .iter()
        .flat_map(|row| row.iter().enumerate().map(|(j, &v)| ScalarAffineFunction::from_pairs([(1.0, v), (-1.0, y[j])], 0.0)))
        .collect();
    add(linking, SetSpec::Nonpositives { dimension: m * n });
    add(x.iter().flatten().map(|&v| sum(&[v], 0.0)).collect(), SetSpec::Nonnegatives { dimension: m * n });
    add(y.iter().map(|&v| sum(&[v], 0.0)).collect(), SetSpec::Nonnegatives { dimension: n });
    add(y.iter().map(|&v| sum(&[v], -1.0)).collect(), SetSpec::Nonpositives { dimension: n });
    model
}
