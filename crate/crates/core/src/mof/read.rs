use std::collections::{HashMap, HashSet};

use serde_json::{Map, Value};

use crate::model::{
    AffineTerm, Function, FunctionType, Model, ObjectiveSense, QuadraticTerm, ScalarAffineFunction,
    ScalarQuadraticFunction, VariableIndex, VectorAffineFunction, VectorAffineTerm, VectorQuadraticFunction,
    VectorQuadraticTerm,
};
use crate::sets::{ActivationValue, SetSpec, SetType};

use super::{MofError, Violation, VERSION_MAJOR, VERSION_MINOR};

fn set_fields(t: SetType) -> &'static [&'static str] {
    use SetType::*;
    match t {
        LessThan => &["upper"],
        GreaterThan => &["lower"],
        EqualTo => &["value"],
        Interval | Semiinteger | Semicontinuous => &["lower", "upper"],
        Integer | ZeroOne | ExponentialCone | DualExponentialCone => &[],
        Zeros | Reals | Nonpositives | Nonnegatives | SecondOrderCone | RotatedSecondOrderCone
        | GeometricMeanCone | NormOneCone | NormInfinityCone | RelativeEntropyCone | Complements => &["dimension"],
        PowerCone | DualPowerCone => &["exponent"],
        PositiveSemidefiniteConeTriangle | PositiveSemidefiniteConeSquare | RootDetConeTriangle
        | RootDetConeSquare | LogDetConeTriangle | LogDetConeSquare => &["side_dimension"],
        NormSpectralCone | NormNuclearCone => &["row_dim", "column_dim"],
        IndicatorSet => &["activate_on", "set"],
        Sos1 | Sos2 => &["weights"],
    }
}

fn function_fields(t: FunctionType) -> &'static [&'static str] {
    match t {
        FunctionType::SingleVariable => &["variable"],
        FunctionType::VectorOfVariables => &["variables"],
        FunctionType::ScalarAffine => &["terms", "constant"],
        FunctionType::ScalarQuadratic => &["affine_terms", "quadratic_terms", "constant"],
        FunctionType::VectorAffine => &["terms", "constants"],
        FunctionType::VectorQuadratic => &["affine_terms", "quadratic_terms", "constants"],
    }
}

fn describe(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

struct Reader {
    violations: Vec<Violation>,
    names: HashMap<String, VariableIndex>,
    model: Model,
}

impl Reader {
    fn report(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation { path: path.into(), message: message.into() });
    }

    /// Check `value` is an object with every `required` key and no keys
    /// outside `required` and `optional`.
    fn object<'v>(
        &mut self,
        value: &'v Value,
        path: &str,
        required: &[&str],
        optional: &[&str],
    ) -> Option<&'v Map<String, Value>> {
        let Some(map) = value.as_object() else {
            self.report(path, format!("expected an object, found {}", describe(value)));
            return None;
        };
        for key in required {
            if !map.contains_key(*key) {
                self.report(path, format!("missing field \"{key}\""));
            }
        }
        for key in map.keys() {
            if !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
                self.report(join(path, key), "unknown field");
            }
        }
        Some(map)
    }

    fn number(&mut self, map: &Map<String, Value>, key: &str, path: &str) -> Option<f64> {
        let v = map.get(key)?;
        let out = v.as_f64();
        if out.is_none() {
            self.report(join(path, key), format!("expected a number, found {}", describe(v)));
        }
        out
    }

    fn count(&mut self, map: &Map<String, Value>, key: &str, path: &str) -> Option<usize> {
        let v = map.get(key)?;
        let out = v.as_u64().and_then(|n| usize::try_from(n).ok());
        if out.is_none() {
            self.report(join(path, key), "expected a non-negative integer");
        }
        out
    }

    fn string<'v>(&mut self, map: &'v Map<String, Value>, key: &str, path: &str) -> Option<&'v str> {
        let v = map.get(key)?;
        let out = v.as_str();
        if out.is_none() {
            self.report(join(path, key), format!("expected a string, found {}", describe(v)));
        }
        out
    }

    fn array<'v>(&mut self, map: &'v Map<String, Value>, key: &str, path: &str) -> Option<&'v [Value]> {
        let v = map.get(key)?;
        let out = v.as_array().map(Vec::as_slice);
        if out.is_none() {
            self.report(join(path, key), format!("expected an array, found {}", describe(v)));
        }
        out
    }

    fn numbers(&mut self, map: &Map<String, Value>, key: &str, path: &str) -> Option<Vec<f64>> {
        let items = self.array(map, key, path)?;
        let mut out = Vec::with_capacity(items.len());
        let mut ok = true;
        for (i, v) in items.iter().enumerate() {
            match v.as_f64() {
                Some(x) => out.push(x),
                None => {
                    self.report(format!("{}[{i}]", join(path, key)), "expected a number");
                    ok = false;
                }
            }
        }
        ok.then_some(out)
    }

    fn lookup(&mut self, name: &Value, path: String) -> Option<VariableIndex> {
        let Some(s) = name.as_str() else {
            self.report(path, format!("expected a variable name, found {}", describe(name)));
            return None;
        };
        let v = self.names.get(s).copied();
        if v.is_none() {
            self.report(path, format!("unknown variable \"{s}\""));
        }
        v
    }

    fn variable(&mut self, map: &Map<String, Value>, key: &str, path: &str) -> Option<VariableIndex> {
        let v = map.get(key)?;
        self.lookup(v, join(path, key))
    }

    fn version(&mut self, value: &Value) {
        let Some(map) = self.object(value, "version", &["major", "minor"], &[]) else { return };
        let major = self.count(map, "major", "version");
        let minor = self.count(map, "minor", "version");
        if let (Some(major), Some(minor)) = (major, minor) {
            if !supported(major as u64, minor as u64) {
                self.report(
                    "version",
                    format!("unsupported version {major}.{minor}; supported up to {VERSION_MAJOR}.{VERSION_MINOR}"),
                );
            }
        }
    }

    fn variables(&mut self, value: &Value) {
        let Some(items) = value.as_array() else {
            self.report("variables", format!("expected an array, found {}", describe(value)));
            return;
        };
        for (i, item) in items.iter().enumerate() {
            let path = format!("variables[{i}]");
            let Some(map) = self.object(item, &path, &["name"], &["primal_start"]) else { continue };
            self.number(map, "primal_start", &path);
            let Some(name) = self.string(map, "name", &path) else { continue };
            if name.is_empty() {
                self.report(join(&path, "name"), "variable names must be non-empty");
            } else if self.names.contains_key(name) {
                self.report(path, format!("duplicate variable name \"{name}\""));
            } else {
                let v = self.model.add_named_variable(name).expect("name checked unique and non-empty");
                self.names.insert(name.to_string(), v);
            }
        }
    }

    fn affine_term(&mut self, value: &Value, path: &str) -> Option<AffineTerm> {
        let map = self.object(value, path, &["coefficient", "variable"], &[])?;
        let c = self.number(map, "coefficient", path);
        let v = self.variable(map, "variable", path);
        Some(AffineTerm::new(c?, v?))
    }

    fn quadratic_term(&mut self, value: &Value, path: &str) -> Option<QuadraticTerm> {
        let map = self.object(value, path, &["coefficient", "variable_1", "variable_2"], &[])?;
        let c = self.number(map, "coefficient", path);
        let v1 = self.variable(map, "variable_1", path);
        let v2 = self.variable(map, "variable_2", path);
        Some(QuadraticTerm::new(c?, v1?, v2?))
    }

    /// `{"output_index": k, "scalar_term": ...}` with `1 <= k <= dimension`.
    fn indexed<T>(
        &mut self,
        value: &Value,
        path: &str,
        dimension: Option<usize>,
        term: impl FnOnce(&mut Self, &Value, &str) -> Option<T>,
    ) -> Option<(usize, T)> {
        let map = self.object(value, path, &["output_index", "scalar_term"], &[])?;
        let index = self.count(map, "output_index", path);
        if let (Some(k), Some(d)) = (index, dimension) {
            if k == 0 || k > d {
                self.report(join(path, "output_index"), format!("output index {k} outside 1..={d}"));
            }
        }
        let t = term(self, map.get("scalar_term")?, &join(path, "scalar_term"));
        let k = index?;
        match dimension {
            Some(d) if k >= 1 && k <= d => Some((k - 1, t?)),
            _ => None,
        }
    }

    fn list<T>(
        &mut self,
        map: &Map<String, Value>,
        key: &str,
        path: &str,
        mut item: impl FnMut(&mut Self, &Value, &str) -> Option<T>,
    ) -> Option<Vec<T>> {
        let items = self.array(map, key, path)?;
        let mut out = Vec::with_capacity(items.len());
        let mut ok = true;
        for (i, v) in items.iter().enumerate() {
            match item(self, v, &format!("{}[{i}]", join(path, key))) {
                Some(t) => out.push(t),
                None => ok = false,
            }
        }
        ok.then_some(out)
    }

    fn function(&mut self, value: &Value, path: &str) -> Option<Function> {
        let ty = match value.get("type") {
            Some(Value::String(s)) => match FunctionType::from_name(s) {
                Some(t) => Some(t),
                None => {
                    self.report(join(path, "type"), format!("unknown function type \"{s}\""));
                    None
                }
            },
            Some(other) => {
                self.report(join(path, "type"), format!("expected a string, found {}", describe(other)));
                None
            }
            None => None,
        };
        let mut required = vec!["type"];
        required.extend_from_slice(ty.map_or(&[][..], function_fields));
        let map = self.object(value, path, &required, &[])?;
        let ty = ty?;
        match ty {
            FunctionType::SingleVariable => Some(Function::SingleVariable(self.variable(map, "variable", path)?)),
            FunctionType::VectorOfVariables => {
                let vars = self.list(map, "variables", path, |r, v, p| r.lookup(v, p.to_string()))?;
                Some(Function::VectorOfVariables(vars))
            }
            FunctionType::ScalarAffine => {
                let terms = self.list(map, "terms", path, Self::affine_term);
                let constant = self.number(map, "constant", path);
                Some(Function::ScalarAffine(ScalarAffineFunction::new(terms?, constant?)))
            }
            FunctionType::ScalarQuadratic => {
                let affine = self.list(map, "affine_terms", path, Self::affine_term);
                let quadratic = self.list(map, "quadratic_terms", path, Self::quadratic_term);
                let constant = self.number(map, "constant", path);
                Some(Function::ScalarQuadratic(ScalarQuadraticFunction::new(quadratic?, affine?, constant?)))
            }
            FunctionType::VectorAffine => {
                let constants = self.numbers(map, "constants", path);
                let d = constants.as_ref().map(Vec::len);
                let terms = self.list(map, "terms", path, |r, v, p| r.indexed(v, p, d, Self::affine_term));
                let terms = terms?
                    .into_iter()
                    .map(|(output_index, term)| VectorAffineTerm { output_index, term })
                    .collect();
                Some(Function::VectorAffine(VectorAffineFunction { terms, constants: constants? }))
            }
            FunctionType::VectorQuadratic => {
                let constants = self.numbers(map, "constants", path);
                let d = constants.as_ref().map(Vec::len);
                let affine = self.list(map, "affine_terms", path, |r, v, p| r.indexed(v, p, d, Self::affine_term));
                let quadratic =
                    self.list(map, "quadratic_terms", path, |r, v, p| r.indexed(v, p, d, Self::quadratic_term));
                Some(Function::VectorQuadratic(VectorQuadraticFunction {
                    affine_terms: affine?
                        .into_iter()
                        .map(|(output_index, term)| VectorAffineTerm { output_index, term })
                        .collect(),
                    quadratic_terms: quadratic?
                        .into_iter()
                        .map(|(output_index, term)| VectorQuadraticTerm { output_index, term })
                        .collect(),
                    constants: constants?,
                }))
            }
        }
    }

    fn set(&mut self, value: &Value, path: &str) -> Option<SetSpec> {
        let ty = match value.get("type") {
            Some(Value::String(s)) => match SetType::from_name(s) {
                Some(t) => Some(t),
                None => {
                    self.report(join(path, "type"), format!("unknown set type \"{s}\""));
                    None
                }
            },
            Some(other) => {
                self.report(join(path, "type"), format!("expected a string, found {}", describe(other)));
                None
            }
            None => None,
        };
        let mut required = vec!["type"];
        required.extend_from_slice(ty.map_or(&[][..], set_fields));
        let map = self.object(value, path, &required, &[])?;
        let ty = ty?;
        use SetType as T;
        let spec = match ty {
            T::LessThan => SetSpec::LessThan { upper: self.number(map, "upper", path)? },
            T::GreaterThan => SetSpec::GreaterThan { lower: self.number(map, "lower", path)? },
            T::EqualTo => SetSpec::EqualTo { value: self.number(map, "value", path)? },
            T::Interval | T::Semiinteger | T::Semicontinuous => {
                let lower = self.number(map, "lower", path);
                let upper = self.number(map, "upper", path);
                let (lower, upper) = (lower?, upper?);
                match ty {
                    T::Interval => SetSpec::Interval { lower, upper },
                    T::Semiinteger => SetSpec::Semiinteger { lower, upper },
                    _ => SetSpec::Semicontinuous { lower, upper },
                }
            }
            T::Integer => SetSpec::Integer,
            T::ZeroOne => SetSpec::ZeroOne,
            T::ExponentialCone => SetSpec::ExponentialCone,
            T::DualExponentialCone => SetSpec::DualExponentialCone,
            T::PowerCone => SetSpec::PowerCone { exponent: self.number(map, "exponent", path)? },
            T::DualPowerCone => SetSpec::DualPowerCone { exponent: self.number(map, "exponent", path)? },
            T::NormSpectralCone | T::NormNuclearCone => {
                let row_dim = self.count(map, "row_dim", path);
                let column_dim = self.count(map, "column_dim", path);
                let (row_dim, column_dim) = (row_dim?, column_dim?);
                if ty == T::NormSpectralCone {
                    SetSpec::NormSpectralCone { row_dim, column_dim }
                } else {
                    SetSpec::NormNuclearCone { row_dim, column_dim }
                }
            }
            T::IndicatorSet => {
                let activate_on = match self.string(map, "activate_on", path) {
                    Some("zero") => Some(ActivationValue::Zero),
                    Some("one") => Some(ActivationValue::One),
                    Some(other) => {
                        self.report(
                            join(path, "activate_on"),
                            format!("expected \"zero\" or \"one\", found \"{other}\""),
                        );
                        None
                    }
                    None => None,
                };
                let inner = self.set(map.get("set")?, &join(path, "set"));
                SetSpec::IndicatorSet { activate_on: activate_on?, set: Box::new(inner?) }
            }
            T::Sos1 => SetSpec::Sos1 { weights: self.numbers(map, "weights", path)? },
            T::Sos2 => SetSpec::Sos2 { weights: self.numbers(map, "weights", path)? },
            T::PositiveSemidefiniteConeTriangle
            | T::PositiveSemidefiniteConeSquare
            | T::RootDetConeTriangle
            | T::RootDetConeSquare
            | T::LogDetConeTriangle
            | T::LogDetConeSquare => {
                let side_dimension = self.count(map, "side_dimension", path)?;
                match ty {
                    T::PositiveSemidefiniteConeTriangle => SetSpec::PositiveSemidefiniteConeTriangle { side_dimension },
                    T::PositiveSemidefiniteConeSquare => SetSpec::PositiveSemidefiniteConeSquare { side_dimension },
                    T::RootDetConeTriangle => SetSpec::RootDetConeTriangle { side_dimension },
                    T::RootDetConeSquare => SetSpec::RootDetConeSquare { side_dimension },
                    T::LogDetConeTriangle => SetSpec::LogDetConeTriangle { side_dimension },
                    _ => SetSpec::LogDetConeSquare { side_dimension },
                }
            }
            _ => {
                let dimension = self.count(map, "dimension", path)?;
                match ty {
                    T::Zeros => SetSpec::Zeros { dimension },
                    T::Reals => SetSpec::Reals { dimension },
                    T::Nonpositives => SetSpec::Nonpositives { dimension },
                    T::Nonnegatives => SetSpec::Nonnegatives { dimension },
                    T::SecondOrderCone => SetSpec::SecondOrderCone { dimension },
                    T::RotatedSecondOrderCone => SetSpec::RotatedSecondOrderCone { dimension },
                    T::GeometricMeanCone => SetSpec::GeometricMeanCone { dimension },
                    T::NormOneCone => SetSpec::NormOneCone { dimension },
                    T::NormInfinityCone => SetSpec::NormInfinityCone { dimension },
                    T::RelativeEntropyCone => SetSpec::RelativeEntropyCone { dimension },
                    _ => SetSpec::Complements { dimension },
                }
            }
        };
        if let Err(e) = spec.validate() {
            self.report(path, e.to_string());
            return None;
        }
        Some(spec)
    }

    fn objective(&mut self, value: &Value) {
        let Some(map) = self.object(value, "objective", &["sense"], &["function"]) else { return };
        let sense = match self.string(map, "sense", "objective") {
            Some(s) => match ObjectiveSense::from_name(s) {
                Some(sense) => Some(sense),
                None => {
                    self.report("objective.sense", format!("unknown sense \"{s}\""));
                    None
                }
            },
            None => None,
        };
        let function = map.get("function").map(|f| self.function(f, "objective.function"));
        let Some(sense) = sense else { return };
        match (sense, function) {
            (ObjectiveSense::Feasibility, Some(_)) => {
                self.report("objective.function", "a feasibility objective must not have a function")
            }
            (ObjectiveSense::Min | ObjectiveSense::Max, None) => {
                self.report("objective", format!("a {} objective needs a function", sense.name()))
            }
            (_, Some(None)) => {}
            (sense, function) => {
                if let Err(e) = self.model.set_objective(sense, function.flatten()) {
                    self.report("objective", e.to_string());
                }
            }
        }
    }

    fn constraints(&mut self, value: &Value) {
        let Some(items) = value.as_array() else {
            self.report("constraints", format!("expected an array, found {}", describe(value)));
            return;
        };
        let mut names = HashSet::new();
        for (i, item) in items.iter().enumerate() {
            let path = format!("constraints[{i}]");
            let Some(map) = self.object(item, &path, &["function", "set"], &["name"]) else { continue };
            let mut name = self.string(map, "name", &path).map(str::to_string);
            if let Some(n) = &name {
                if n.is_empty() {
                    self.report(join(&path, "name"), "constraint names must be non-empty");
                    name = None;
                } else if !names.insert(n.clone()) {
                    self.report(join(&path, "name"), format!("duplicate constraint name \"{n}\""));
                    name = None;
                }
            }
            let function = map.get("function").and_then(|f| self.function(f, &join(&path, "function")));
            let set = map.get("set").and_then(|s| self.set(s, &join(&path, "set")));
            let (Some(function), Some(set)) = (function, set) else { continue };
            match self.model.add_constraint(function, set) {
                Ok(ci) => {
                    self.model.set_constraint_name(ci, name).expect("constraint just added");
                }
                Err(e) => self.report(path, e.to_string()),
            }
        }
    }
}

fn supported(major: u64, minor: u64) -> bool {
    major == VERSION_MAJOR && minor <= VERSION_MINOR
}

fn build(value: &Value) -> (Model, Vec<Violation>) {
    let mut r = Reader { violations: Vec::new(), names: HashMap::new(), model: Model::new() };
    let required = ["version", "variables", "objective", "constraints"];
    if let Some(map) = r.object(value, "", &required, &["name", "description"]) {
        r.string(map, "name", "");
        r.string(map, "description", "");
        if let Some(v) = map.get("version") {
            r.version(v);
        }
        if let Some(v) = map.get("variables") {
            r.variables(v);
        }
        if let Some(v) = map.get("objective") {
            r.objective(v);
        }
        if let Some(v) = map.get("constraints") {
            r.constraints(v);
        }
    }
    (r.model, r.violations)
}

fn parse(text: &str) -> Result<Value, MofError> {
    serde_json::from_str(text).map_err(|e| MofError::Parse(e.to_string()))
}

/// All violations in an already-parsed document. Empty means valid.
pub fn validate_value(value: &Value) -> Vec<Violation> {
    build(value).1
}

/// Parse `text` and list its violations. Only malformed JSON is an error.
pub fn validate(text: &str) -> Result<Vec<Violation>, MofError> {
    Ok(validate_value(&parse(text)?))
}

pub fn read_value(value: &Value) -> Result<Model, MofError> {
    let version = value.get("version");
    let major = version.and_then(|v| v.get("major")).and_then(Value::as_u64);
    let minor = version.and_then(|v| v.get("minor")).and_then(Value::as_u64);
    if let (Some(major), Some(minor)) = (major, minor) {
        if !supported(major, minor) {
            return Err(MofError::VersionUnsupported { major, minor });
        }
    }
    let (model, violations) = build(value);
    if violations.is_empty() {
        Ok(model)
    } else {
        Err(MofError::Validation(violations))
    }
}

/// Parse and validate MathOptFormat text into a [`Model`].
pub fn read_model(text: &str) -> Result<Model, MofError> {
    read_value(&parse(text)?)
}
