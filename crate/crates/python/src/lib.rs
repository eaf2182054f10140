//! Python module `pymathopt`. Models cross the boundary as MathOptFormat
//! text or as the opaque `Model` class.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use mathopt::bridges::{bridge_model, BridgeRegistry, NodeKey};
use mathopt::model::{Assignment, Model as CoreModel, VariableIndex};
use mathopt::mof;
use mathopt::targets::{builtin_capabilities, solve_lp as core_solve_lp, Capabilities, CountReport, SolveStatus};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `name` is a built-in target or the JSON text of a capabilities file.
fn capabilities_of(name: &str) -> PyResult<Capabilities> {
    if name.trim_start().starts_with('{') {
        Capabilities::from_json(name).map_err(value_error)
    } else {
        builtin_capabilities(name).map_err(value_error)
    }
}

fn variable_label(model: &CoreModel, v: VariableIndex) -> String {
    model.variable_name(v).map_or_else(|| v.to_string(), str::to_string)
}

#[pyclass(frozen, skip_from_py_object, module = "pymathopt")]
#[derive(Clone)]
struct Model {
    inner: CoreModel,
}

#[pymethods]
impl Model {
    #[staticmethod]
    fn from_mof(text: &str) -> PyResult<Self> {
        Ok(Model { inner: mof::read_model(text).map_err(value_error)? })
    }

    fn to_mof(&self) -> PyResult<String> {
        mof::write_model(&self.inner).map_err(value_error)
    }

    #[getter]
    fn num_variables(&self) -> usize {
        self.inner.num_variables()
    }

    #[getter]
    fn num_constraints(&self) -> usize {
        self.inner.num_constraints()
    }

    #[getter]
    fn sense(&self) -> &'static str {
        self.inner.objective_sense().name()
    }

    #[getter]
    fn variable_names(&self) -> Vec<String> {
        self.inner.variables().map(|v| variable_label(&self.inner, v)).collect()
    }

    /// Constraint counts keyed by `"F-in-S"`, in first-appearance order.
    fn constraint_counts(&self) -> Vec<(String, usize)> {
        CountReport::of(&self.inner).entries.iter().map(|e| (e.label(), e.count)).collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Model({} variables, {} constraints, {})",
            self.inner.num_variables(),
            self.inner.num_constraints(),
            self.inner.objective_sense().name()
        )
    }
}

#[pyclass(frozen, module = "pymathopt")]
struct Bridged {
    inner: mathopt::bridges::BridgedModel,
    original: CoreModel,
}

#[pymethods]
impl Bridged {
    #[getter]
    fn model(&self) -> Model {
        Model { inner: self.inner.model.clone() }
    }

    #[getter]
    fn total_cost(&self) -> f64 {
        self.inner.total_cost()
    }

    /// Map a bridged-model point (keyed by variable name) back to the
    /// original variables.
    fn map_primal(&self, values: BTreeMap<String, f64>) -> PyResult<BTreeMap<String, f64>> {
        let out = &self.inner.model;
        let mut point = Assignment::new();
        for (name, x) in values {
            let v = out
                .variables()
                .find(|&v| variable_label(out, v) == name)
                .ok_or_else(|| PyKeyError::new_err(name.clone()))?;
            point.insert(v, x);
        }
        let mapped = self.inner.map_primal(&point).map_err(value_error)?;
        Ok(mapped.into_iter().map(|(v, x)| (variable_label(&self.original, v), x)).collect())
    }
}

#[pyfunction]
fn read_mof(text: &str) -> PyResult<Model> {
    Model::from_mof(text)
}

#[pyfunction]
fn to_mof(model: &Model) -> PyResult<String> {
    model.to_mof()
}

/// `(path, message)` for each violation; raises on malformed JSON.
#[pyfunction]
fn validate(text: &str) -> PyResult<Vec<(String, String)>> {
    let violations = mof::validate(text).map_err(value_error)?;
    Ok(violations.into_iter().map(|v| (v.path, v.message)).collect())
}

/// Capabilities of a built-in target, as JSON text.
#[pyfunction]
fn capabilities(name: &str) -> PyResult<String> {
    Ok(builtin_capabilities(name).map_err(value_error)?.to_json().to_string())
}

/// Rendered plan tree for a node such as `"ScalarAffineFunction-in-Interval"`.
#[pyfunction]
fn plan(node: &str, target: &str) -> PyResult<String> {
    let caps = capabilities_of(target)?;
    let key: NodeKey = node.parse().map_err(value_error)?;
    Ok(BridgeRegistry::with_builtins().plan(key, &caps).render())
}

#[pyfunction]
fn bridge(model: &Model, target: &str) -> PyResult<Bridged> {
    let caps = capabilities_of(target)?;
    let inner = bridge_model(&BridgeRegistry::with_builtins(), &model.inner, &caps).map_err(value_error)?;
    Ok(Bridged { inner, original: model.inner.clone() })
}

/// Bridge to `lp-scalar` and solve. Returns `(status, objective, values)`;
/// `objective` is `None` and `values` empty unless the status is `"Optimal"`.
#[pyfunction]
fn solve_lp(model: &Model) -> PyResult<(String, Option<f64>, BTreeMap<String, f64>)> {
    let caps = builtin_capabilities("lp-scalar").map_err(value_error)?;
    let bridged = bridge_model(&BridgeRegistry::with_builtins(), &model.inner, &caps).map_err(value_error)?;
    let result = core_solve_lp(&bridged.model).map_err(value_error)?;
    if result.status != SolveStatus::Optimal {
        return Ok((result.status.name().to_string(), None, BTreeMap::new()));
    }
    let x = bridged.map_primal(&result.primal).map_err(value_error)?;
    let objective = match model.inner.objective_function() {
        Some(f) => f.evaluate(&x).map_err(value_error)?.as_scalar(),
        None => Some(0.0),
    };
    let values = x.iter().map(|(&v, &value)| (variable_label(&model.inner, v), value)).collect();
    Ok((result.status.name().to_string(), objective, values))
}

#[pymodule]
fn pymathopt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_class::<Bridged>()?;
    m.add_function(wrap_pyfunction!(read_mof, m)?)?;
    m.add_function(wrap_pyfunction!(to_mof, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(capabilities, m)?)?;
    m.add_function(wrap_pyfunction!(plan, m)?)?;
    m.add_function(wrap_pyfunction!(bridge, m)?)?;
    m.add_function(wrap_pyfunction!(solve_lp, m)?)?;
    Ok(())
}
