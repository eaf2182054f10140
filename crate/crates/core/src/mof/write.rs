use std::collections::{BTreeMap, HashSet};

use serde_json::{json, Map, Value};

use crate::model::{AffineTerm, Function, Model, ObjectiveSense, QuadraticTerm, VariableIndex};
use crate::sets::SetSpec;

use super::{MofError, VERSION_MAJOR, VERSION_MINOR};

type Names = BTreeMap<VariableIndex, String>;

fn affine_term(t: &AffineTerm, names: &Names) -> Value {
    json!({"coefficient": t.coefficient, "variable": names[&t.variable]})
}

fn quadratic_term(t: &QuadraticTerm, names: &Names) -> Value {
    json!({"coefficient": t.coefficient, "variable_1": names[&t.variable1], "variable_2": names[&t.variable2]})
}

fn function_value(f: &Function, names: &Names) -> Value {
    match f {
        Function::SingleVariable(v) => json!({"type": "SingleVariable", "variable": names[v]}),
        Function::VectorOfVariables(vs) => {
            json!({"type": "VectorOfVariables", "variables": vs.iter().map(|v| names[v].clone()).collect::<Vec<_>>()})
        }
        Function::ScalarAffine(f) => json!({
            "type": "ScalarAffineFunction",
            "terms": f.terms.iter().map(|t| affine_term(t, names)).collect::<Vec<_>>(),
            "constant": f.constant,
        }),
        Function::ScalarQuadratic(f) => json!({
            "type": "ScalarQuadraticFunction",
            "affine_terms": f.affine_terms.iter().map(|t| affine_term(t, names)).collect::<Vec<_>>(),
            "quadratic_terms": f.quadratic_terms.iter().map(|t| quadratic_term(t, names)).collect::<Vec<_>>(),
            "constant": f.constant,
        }),
        Function::VectorAffine(f) => json!({
            "type": "VectorAffineFunction",
            "terms": f.terms.iter().map(|t| json!({
                "output_index": t.output_index + 1,
                "scalar_term": affine_term(&t.term, names),
            })).collect::<Vec<_>>(),
            "constants": f.constants,
        }),
        Function::VectorQuadratic(f) => json!({
            "type": "VectorQuadraticFunction",
            "affine_terms": f.affine_terms.iter().map(|t| json!({
                "output_index": t.output_index + 1,
                "scalar_term": affine_term(&t.term, names),
            })).collect::<Vec<_>>(),
            "quadratic_terms": f.quadratic_terms.iter().map(|t| json!({
                "output_index": t.output_index + 1,
                "scalar_term": quadratic_term(&t.term, names),
            })).collect::<Vec<_>>(),
            "constants": f.constants,
        }),
    }
}

pub(crate) fn set_value(s: &SetSpec) -> Value {
    let mut m = Map::new();
    m.insert("type".into(), Value::from(s.set_type().name()));
    let mut put = |k: &str, v: Value| {
        m.insert(k.into(), v);
    };
    match s {
        SetSpec::LessThan { upper } => put("upper", json!(upper)),
        SetSpec::GreaterThan { lower } => put("lower", json!(lower)),
        SetSpec::EqualTo { value } => put("value", json!(value)),
        SetSpec::Interval { lower, upper }
        | SetSpec::Semiinteger { lower, upper }
        | SetSpec::Semicontinuous { lower, upper } => {
            put("lower", json!(lower));
            put("upper", json!(upper));
        }
        SetSpec::Integer | SetSpec::ZeroOne | SetSpec::ExponentialCone | SetSpec::DualExponentialCone => {}
        SetSpec::Zeros { dimension }
        | SetSpec::Reals { dimension }
        | SetSpec::Nonpositives { dimension }
        | SetSpec::Nonnegatives { dimension }
        | SetSpec::SecondOrderCone { dimension }
        | SetSpec::RotatedSecondOrderCone { dimension }
        | SetSpec::GeometricMeanCone { dimension }
        | SetSpec::NormOneCone { dimension }
        | SetSpec::NormInfinityCone { dimension }
        | SetSpec::RelativeEntropyCone { dimension }
        | SetSpec::Complements { dimension } => put("dimension", json!(dimension)),
        SetSpec::PowerCone { exponent } | SetSpec::DualPowerCone { exponent } => put("exponent", json!(exponent)),
        SetSpec::PositiveSemidefiniteConeTriangle { side_dimension }
        | SetSpec::PositiveSemidefiniteConeSquare { side_dimension }
        | SetSpec::RootDetConeTriangle { side_dimension }
        | SetSpec::RootDetConeSquare { side_dimension }
        | SetSpec::LogDetConeTriangle { side_dimension }
        | SetSpec::LogDetConeSquare { side_dimension } => put("side_dimension", json!(side_dimension)),
        SetSpec::NormSpectralCone { row_dim, column_dim } | SetSpec::NormNuclearCone { row_dim, column_dim } => {
            put("row_dim", json!(row_dim));
            put("column_dim", json!(column_dim));
        }
        SetSpec::IndicatorSet { activate_on, set } => {
            put("activate_on", json!(activate_on.name()));
            put("set", set_value(set));
        }
        SetSpec::Sos1 { weights } | SetSpec::Sos2 { weights } => put("weights", json!(weights)),
    }
    Value::Object(m)
}

/// Variable names used on write: the model's names, with unnamed variables
/// called `x<id>` (suffixed `_1`, `_2`, ... if that is already taken).
fn variable_names(model: &Model) -> Result<Names, MofError> {
    let mut used = HashSet::new();
    for v in model.variables() {
        if let Some(name) = model.variable_name(v) {
            if !used.insert(name.to_string()) {
                return Err(MofError::DuplicateName(name.to_string()));
            }
        }
    }
    let mut names = Names::new();
    for v in model.variables() {
        let name = match model.variable_name(v) {
            Some(name) => name.to_string(),
            None => {
                let name = v.to_string();
                if used.contains(&name) {
                    return Err(MofError::DuplicateName(name));
                }
                name
            }
        };
        names.insert(v, name);
    }
    Ok(names)
}

/// The document as a JSON value, keys in the order
/// `version`, `variables`, `objective`, `constraints`.
pub fn write_value(model: &Model) -> Result<Value, MofError> {
    let names = variable_names(model)?;
    let mut objective = Map::new();
    objective.insert("sense".into(), json!(model.objective_sense().name()));
    if model.objective_sense() != ObjectiveSense::Feasibility {
        if let Some(f) = model.objective_function() {
            objective.insert("function".into(), function_value(f, &names));
        }
    }
    let constraints: Vec<Value> = model
        .constraints()
        .map(|c| {
            let mut m = Map::new();
            if let Some(name) = &c.name {
                m.insert("name".into(), json!(name));
            }
            m.insert("function".into(), function_value(&c.function, &names));
            m.insert("set".into(), set_value(&c.set));
            Value::Object(m)
        })
        .collect();
    Ok(json!({
        "version": {"major": VERSION_MAJOR, "minor": VERSION_MINOR},
        "variables": names.values().map(|n| json!({"name": n})).collect::<Vec<_>>(),
        "objective": objective,
        "constraints": constraints,
    }))
}

/// Serialize `model` as pretty-printed MathOptFormat text.
pub fn write_model(model: &Model) -> Result<String, MofError> {
    let mut text = serde_json::to_string_pretty(&write_value(model)?).expect("JSON values always serialize");
    text.push('\n');
    Ok(text)
}
