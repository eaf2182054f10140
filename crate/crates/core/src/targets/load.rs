use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{Map, Value};

use crate::bridges::NodeKey;
use crate::model::{Function, FunctionType, Model, ObjectiveSense, ScalarAffineFunction, VariableIndex, VectorAffineFunction};
use crate::sets::{SetSpec, SetType};

use super::{Capabilities, TargetError};

#[derive(Clone, Debug, PartialEq)]
pub struct CountEntry {
    pub function: FunctionType,
    pub set: SetType,
    pub count: usize,
    /// Output dimension of each constraint of this type, in model order.
    pub dimensions: Vec<usize>,
}

impl CountEntry {
    pub fn label(&self) -> String {
        format!("{}-in-{}", self.function, self.set)
    }
}

/// Constraint counts per (function, set) pair, in order of first appearance.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CountReport {
    pub entries: Vec<CountEntry>,
}

impl CountReport {
    pub fn of(model: &Model) -> Self {
        let mut report = CountReport::default();
        for c in model.constraints() {
            let (f, s) = (c.function.function_type(), c.set.set_type());
            let dim = c.function.output_dimension();
            match report.entries.iter_mut().find(|e| e.function == f && e.set == s) {
                Some(e) => {
                    e.count += 1;
                    e.dimensions.push(dim);
                }
                None => report.entries.push(CountEntry { function: f, set: s, count: 1, dimensions: vec![dim] }),
            }
        }
        report
    }

    pub fn count(&self, f: FunctionType, s: SetType) -> usize {
        self.entries.iter().find(|e| e.function == f && e.set == s).map_or(0, |e| e.count)
    }

    pub fn dimensions(&self, f: FunctionType, s: SetType) -> Vec<usize> {
        self.entries
            .iter()
            .find(|e| e.function == f && e.set == s)
            .map_or_else(Vec::new, |e| e.dimensions.clone())
    }

    /// Aligned two-column table.
    pub fn render_text(&self) -> String {
        let width = self.entries.iter().map(|e| e.label().len()).max().unwrap_or(0);
        let mut out = String::new();
        for e in &self.entries {
            let _ = writeln!(out, "{:<width$}  {}", e.label(), e.count);
        }
        out
    }

    /// `{"F-in-S": count, ...}`
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for e in &self.entries {
            map.insert(e.label(), Value::from(e.count));
        }
        Value::Object(map)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowSense {
    LessEqual,
    GreaterEqual,
    Equal,
}

/// Row-wise scalar LP/MILP data.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearForm {
    pub columns: Vec<VariableIndex>,
    /// `(row, column, value)`.
    pub entries: Vec<(usize, usize, f64)>,
    pub senses: Vec<RowSense>,
    pub rhs: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub integer: Vec<bool>,
    pub objective: Vec<f64>,
    pub objective_constant: f64,
    pub sense: Option<ObjectiveSense>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VariableCone {
    pub columns: Vec<usize>,
    pub set: SetSpec,
}

/// Stacked conic data: rows `A x + b` in the listed cones, plus variables
/// constrained on creation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConicForm {
    pub columns: Vec<VariableIndex>,
    /// `(row, column, value)` of `A`.
    pub a: Vec<(usize, usize, f64)>,
    pub b: Vec<f64>,
    /// Consecutive row blocks and their cones.
    pub row_cones: Vec<SetSpec>,
    pub variable_cones: Vec<VariableCone>,
    pub objective: Vec<f64>,
    pub objective_constant: f64,
    pub sense: Option<ObjectiveSense>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LoadedForm {
    Linear(LinearForm),
    Conic(ConicForm),
    /// Supported, but neither purely linear-scalar nor purely conic.
    CountsOnly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Loaded {
    pub report: CountReport,
    pub form: LoadedForm,
}

fn check_supported(caps: &Capabilities, model: &Model) -> Result<(), TargetError> {
    let has_free = model.variables().any(|v| !model.is_constrained_on_creation(v));
    if has_free && !caps.supports_variables(SetType::Reals) {
        return Err(TargetError::Unsupported(NodeKey::Variable(SetType::Reals)));
    }
    if let Some(f) = model.objective_function() {
        if !caps.supports_objective(f.function_type()) {
            return Err(TargetError::Unsupported(NodeKey::Objective(f.function_type())));
        }
    }
    for c in model.constraints() {
        let (f, s) = (c.function.function_type(), c.set.set_type());
        if model.is_variable_block(c.index) {
            if !caps.supports_variables(s) {
                return Err(TargetError::Unsupported(NodeKey::Variable(s)));
            }
        } else if !caps.supports_constraint(f, s) {
            return Err(TargetError::Unsupported(NodeKey::Constraint(f, s)));
        }
    }
    Ok(())
}

fn objective_vector(model: &Model, col: &BTreeMap<VariableIndex, usize>) -> Option<(Vec<f64>, f64)> {
    let mut c = vec![0.0; col.len()];
    match model.objective_function() {
        None => Some((c, 0.0)),
        Some(f) => {
            let f = f.to_scalar_affine()?;
            for t in &f.terms {
                c[col[&t.variable]] += t.coefficient;
            }
            Some((c, f.constant))
        }
    }
}

fn sense_of(model: &Model) -> Option<ObjectiveSense> {
    model.objective_function().map(|_| model.objective_sense())
}

fn linear_form(model: &Model) -> Option<LinearForm> {
    let columns: Vec<VariableIndex> = model.variables().collect();
    let col: BTreeMap<VariableIndex, usize> = columns.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let n = columns.len();
    let (objective, objective_constant) = objective_vector(model, &col)?;
    let mut form = LinearForm {
        lower: vec![f64::NEG_INFINITY; n],
        upper: vec![f64::INFINITY; n],
        integer: vec![false; n],
        objective,
        objective_constant,
        sense: sense_of(model),
        columns,
        ..LinearForm::default()
    };
    for c in model.constraints() {
        match &c.function {
            Function::SingleVariable(v) => {
                let j = col[v];
                match c.set {
                    SetSpec::LessThan { upper } => form.upper[j] = form.upper[j].min(upper),
                    SetSpec::GreaterThan { lower } => form.lower[j] = form.lower[j].max(lower),
                    SetSpec::EqualTo { value } => {
                        form.lower[j] = form.lower[j].max(value);
                        form.upper[j] = form.upper[j].min(value);
                    }
                    SetSpec::Interval { lower, upper } => {
                        form.lower[j] = form.lower[j].max(lower);
                        form.upper[j] = form.upper[j].min(upper);
                    }
                    SetSpec::Integer => form.integer[j] = true,
                    SetSpec::ZeroOne => {
                        form.integer[j] = true;
                        form.lower[j] = form.lower[j].max(0.0);
                        form.upper[j] = form.upper[j].min(1.0);
                    }
                    _ => return None,
                }
            }
            Function::ScalarAffine(f) => {
                let (sense, bound) = match c.set {
                    SetSpec::LessThan { upper } => (RowSense::LessEqual, upper),
                    SetSpec::GreaterThan { lower } => (RowSense::GreaterEqual, lower),
                    SetSpec::EqualTo { value } => (RowSense::Equal, value),
                    _ => return None,
                };
                let row = form.rhs.len();
                for t in &f.terms {
                    form.entries.push((row, col[&t.variable], t.coefficient));
                }
                form.senses.push(sense);
                form.rhs.push(bound - f.constant);
            }
            _ => return None,
        }
    }
    Some(form)
}

fn conic_form(model: &Model) -> Option<ConicForm> {
    let columns: Vec<VariableIndex> = model.variables().collect();
    let col: BTreeMap<VariableIndex, usize> = columns.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let (objective, objective_constant) = objective_vector(model, &col)?;
    let mut form = ConicForm { objective, objective_constant, sense: sense_of(model), ..ConicForm::default() };
    for c in model.constraints() {
        if model.is_variable_block(c.index) {
            let columns = c.function.variables().iter().map(|v| col[v]).collect();
            form.variable_cones.push(VariableCone { columns, set: c.set.clone() });
            continue;
        }
        let (f, cone) = match (&c.function, &c.set) {
            (Function::VectorAffine(f), set) => (f.clone(), set.clone()),
            (Function::ScalarAffine(f), SetSpec::EqualTo { value }) => (
                VectorAffineFunction::from_rows([&f.add_scaled(-1.0, &ScalarAffineFunction::constant(*value))]),
                SetSpec::Zeros { dimension: 1 },
            ),
            _ => return None,
        };
        let offset = form.b.len();
        for t in &f.terms {
            form.a.push((offset + t.output_index, col[&t.term.variable], t.term.coefficient));
        }
        form.b.extend(&f.constants);
        form.row_cones.push(cone);
    }
    form.columns = columns;
    Some(form)
}

/// Check that `model` is fully supported by `caps` and convert it into the
/// target's matrix form, with a per-(function, set) count report.
pub fn load(caps: &Capabilities, model: &Model) -> Result<Loaded, TargetError> {
    check_supported(caps, model)?;
    let report = CountReport::of(model);
    let scalar_only = model.constraints().all(|c| c.function.is_scalar()) && model.variable_blocks().next().is_none();
    let form = if scalar_only {
        linear_form(model).map(LoadedForm::Linear)
    } else {
        None
    }
    .or_else(|| conic_form(model).map(LoadedForm::Conic))
    .unwrap_or(LoadedForm::CountsOnly);
    Ok(Loaded { report, form })
}
