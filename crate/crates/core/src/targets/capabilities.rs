use std::collections::BTreeSet;

use serde_json::Value;

use crate::model::FunctionType;
use crate::sets::SetType;

use super::TargetError;

/// The zero-cost nodes of a target: constraint pairs, objective function
/// types, and the sets a variable may be constrained to when created.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Capabilities {
    pub constraints: BTreeSet<(FunctionType, SetType)>,
    /// Empty means feasibility problems only.
    pub objectives: BTreeSet<FunctionType>,
    pub variables: BTreeSet<SetType>,
}

impl Capabilities {
    pub fn supports_constraint(&self, f: FunctionType, s: SetType) -> bool {
        self.constraints.contains(&(f, s))
    }

    pub fn supports_objective(&self, f: FunctionType) -> bool {
        self.objectives.contains(&f)
    }

    pub fn supports_variables(&self, s: SetType) -> bool {
        self.variables.contains(&s)
    }

    /// Parse a capabilities file:
    ///
    /// ```json
    /// {"constraints": ["SingleVariable-in-GreaterThan"],
    ///  "objectives": ["ScalarAffineFunction"],
    ///  "variables": ["Reals"]}
    /// ```
    ///
    /// `objectives` defaults to empty and `variables` to `["Reals"]`.
    pub fn from_json(text: &str) -> Result<Self, TargetError> {
        let value: Value = serde_json::from_str(text).map_err(|e| TargetError::CapabilitiesFile(e.to_string()))?;
        let obj = value
            .as_object()
            .ok_or_else(|| TargetError::CapabilitiesFile("expected a JSON object".into()))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "constraints" | "objectives" | "variables") {
                return Err(TargetError::CapabilitiesFile(format!("unknown key \"{key}\"")));
            }
        }
        let strings = |key: &str| -> Result<Option<Vec<String>>, TargetError> {
            match obj.get(key) {
                None => Ok(None),
                Some(Value::Array(items)) => items
                    .iter()
                    .map(|v| {
                        v.as_str()
                            .map(str::to_string)
                            .ok_or_else(|| TargetError::CapabilitiesFile(format!("\"{key}\" must list strings")))
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(Some),
                Some(_) => Err(TargetError::CapabilitiesFile(format!("\"{key}\" must be a list"))),
            }
        };
        let mut caps = Capabilities::default();
        let constraints = strings("constraints")?
            .ok_or_else(|| TargetError::CapabilitiesFile("missing \"constraints\"".into()))?;
        for pair in constraints {
            caps.constraints.insert(parse_pair(&pair)?);
        }
        for name in strings("objectives")?.unwrap_or_default() {
            caps.objectives.insert(
                FunctionType::from_name(&name)
                    .ok_or_else(|| TargetError::CapabilitiesFile(format!("unknown function type \"{name}\"")))?,
            );
        }
        for name in strings("variables")?.unwrap_or_else(|| vec!["Reals".to_string()]) {
            caps.variables.insert(
                SetType::from_name(&name)
                    .ok_or_else(|| TargetError::CapabilitiesFile(format!("unknown set type \"{name}\"")))?,
            );
        }
        Ok(caps)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "constraints": self.constraints.iter().map(|(f, s)| format!("{f}-in-{s}")).collect::<Vec<_>>(),
            "objectives": self.objectives.iter().map(|f| f.name()).collect::<Vec<_>>(),
            "variables": self.variables.iter().map(|s| s.name()).collect::<Vec<_>>(),
        })
    }
}

/// Parse `"F-in-S"`.
pub fn parse_pair(text: &str) -> Result<(FunctionType, SetType), TargetError> {
    let bad = || TargetError::CapabilitiesFile(format!("expected \"Function-in-Set\", got \"{text}\""));
    let (f, s) = text.split_once("-in-").ok_or_else(bad)?;
    Ok((FunctionType::from_name(f).ok_or_else(bad)?, SetType::from_name(s).ok_or_else(bad)?))
}

/// The built-in targets: `lp-scalar`, `conic-geometric`, `conic-standard`.
pub fn builtin_capabilities(name: &str) -> Result<Capabilities, TargetError> {
    use FunctionType as F;
    use SetType as S;
    let mut caps = Capabilities::default();
    caps.objectives.insert(F::ScalarAffine);
    match name {
        "lp-scalar" => {
            for s in [S::LessThan, S::GreaterThan, S::EqualTo] {
                caps.constraints.insert((F::ScalarAffine, s));
            }
            for s in [S::LessThan, S::GreaterThan, S::EqualTo, S::Interval, S::Integer, S::ZeroOne] {
                caps.constraints.insert((F::SingleVariable, s));
            }
            caps.variables.insert(S::Reals);
        }
        "conic-geometric" => {
            for s in [
                S::Zeros,
                S::Nonnegatives,
                S::Nonpositives,
                S::SecondOrderCone,
                S::ExponentialCone,
                S::PositiveSemidefiniteConeTriangle,
            ] {
                caps.constraints.insert((F::VectorAffine, s));
            }
            caps.variables.insert(S::Reals);
        }
        "conic-standard" => {
            caps.constraints.insert((F::ScalarAffine, S::EqualTo));
            caps.constraints.insert((F::VectorAffine, S::Zeros));
            for s in [S::Nonnegatives, S::SecondOrderCone, S::PositiveSemidefiniteConeTriangle] {
                caps.variables.insert(s);
            }
        }
        _ => return Err(TargetError::UnknownTarget(name.to_string())),
    }
    Ok(caps)
}

pub const BUILTIN_TARGETS: [&str; 3] = ["lp-scalar", "conic-geometric", "conic-standard"];
