//! In-memory representation of `min f₀(x) s.t. fᵢ(x) ∈ Sᵢ`.
//!
//! A [`Model`] owns a set of live variables, an objective, and an ordered
//! list of function-in-set [`Constraint`]s. Indices are dense integers that
//! are never reused after deletion.

mod function;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::sets::{SetError, SetSpec, SetType};

pub use function::{
    AffineTerm, Function, FunctionType, FunctionValue, QuadraticTerm, ScalarAffineFunction,
    ScalarQuadraticFunction, Substitution, VectorAffineFunction, VectorAffineTerm, VectorQuadraticFunction,
    VectorQuadraticTerm,
};

/// Values for a set of variables.
pub type Assignment = BTreeMap<VariableIndex, f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VariableIndex(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstraintIndex(pub usize);

impl fmt::Display for VariableIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl fmt::Display for ConstraintIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjectiveSense {
    Min,
    Max,
    Feasibility,
}

impl ObjectiveSense {
    pub fn name(self) -> &'static str {
        match self {
            ObjectiveSense::Min => "min",
            ObjectiveSense::Max => "max",
            ObjectiveSense::Feasibility => "feasibility",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "min" => Some(ObjectiveSense::Min),
            "max" => Some(ObjectiveSense::Max),
            "feasibility" => Some(ObjectiveSense::Feasibility),
            _ => None,
        }
    }
}

impl fmt::Display for ObjectiveSense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("function has output dimension {function} but set has dimension {set}")]
    DimensionMismatch { function: usize, set: usize },
    #[error("variable {0} is not live in this model")]
    DeadVariable(VariableIndex),
    #[error("{function} cannot be paired with {set}")]
    IllegalPairing { function: FunctionType, set: SetType },
    #[error("variable {0} is still referenced")]
    StillReferenced(VariableIndex),
    #[error("unknown variable {0}")]
    UnknownVariable(VariableIndex),
    #[error("unknown constraint {0}")]
    UnknownConstraint(ConstraintIndex),
    #[error("duplicate variable name {0:?}")]
    DuplicateName(String),
    #[error("variable names must be non-empty")]
    EmptyName,
    #[error("non-finite coefficient")]
    NonFinite,
    #[error("output index {index} out of range for dimension {dimension}")]
    OutputIndexOutOfRange { index: usize, dimension: usize },
    #[error("no value assigned to variable {0}")]
    MissingAssignment(VariableIndex),
    #[error("objective sense {sense} is inconsistent with the supplied function")]
    ObjectiveMismatch { sense: ObjectiveSense },
    #[error("variable {0} is already constrained on creation")]
    AlreadyConstrained(VariableIndex),
    #[error("invalid set: {0}")]
    InvalidSet(#[from] SetError),
}

/// `function ∈ set`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub index: ConstraintIndex,
    pub function: Function,
    pub set: SetSpec,
    pub name: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Model {
    next_variable: usize,
    variables: BTreeMap<VariableIndex, Option<String>>,
    names: HashMap<String, VariableIndex>,
    sense: Option<ObjectiveSense>,
    objective: Option<Function>,
    next_constraint: usize,
    constraints: BTreeMap<ConstraintIndex, Constraint>,
    // Constraints that declare the domain of variables constrained on creation.
    blocks: BTreeSet<ConstraintIndex>,
    block_members: BTreeSet<VariableIndex>,
}

impl Model {
    pub fn new() -> Self {
        Self::default()
    }

    /// A model sharing the live variables, names, and index counters of
    /// `other`, with no constraints and a feasibility objective.
    pub fn with_variables_of(other: &Model) -> Self {
        Self {
            next_variable: other.next_variable,
            variables: other.variables.clone(),
            names: other.names.clone(),
            ..Self::default()
        }
    }

    pub fn add_variable(&mut self) -> VariableIndex {
        let v = VariableIndex(self.next_variable);
        self.next_variable += 1;
        self.variables.insert(v, None);
        v
    }

    pub fn add_variables(&mut self, n: usize) -> Vec<VariableIndex> {
        (0..n).map(|_| self.add_variable()).collect()
    }

    pub fn add_named_variable(&mut self, name: &str) -> Result<VariableIndex, ModelError> {
        if name.is_empty() {
            return Err(ModelError::EmptyName);
        }
        if self.names.contains_key(name) {
            return Err(ModelError::DuplicateName(name.to_string()));
        }
        let v = self.add_variable();
        self.set_variable_name(v, name)?;
        Ok(v)
    }

    /// Add variables whose domain `set` is declared at creation time.
    pub fn add_constrained_variables(
        &mut self,
        set: SetSpec,
    ) -> Result<(Vec<VariableIndex>, ConstraintIndex), ModelError> {
        set.validate()?;
        let vars = self.add_variables(set.dimension());
        let ci = self.constrain_on_creation(vars.clone(), set)?;
        Ok((vars, ci))
    }

    /// Declare existing, otherwise unconstrained variables as constrained on
    /// creation to `set`.
    pub fn constrain_on_creation(
        &mut self,
        variables: Vec<VariableIndex>,
        set: SetSpec,
    ) -> Result<ConstraintIndex, ModelError> {
        let mut seen = BTreeSet::new();
        for &v in &variables {
            if self.block_members.contains(&v) || !seen.insert(v) {
                return Err(ModelError::AlreadyConstrained(v));
            }
        }
        let function = if set.is_scalar() && variables.len() == 1 {
            Function::SingleVariable(variables[0])
        } else {
            Function::VectorOfVariables(variables.clone())
        };
        let ci = self.add_constraint(function, set)?;
        self.blocks.insert(ci);
        self.block_members.extend(variables);
        Ok(ci)
    }

    pub fn is_variable_block(&self, ci: ConstraintIndex) -> bool {
        self.blocks.contains(&ci)
    }

    pub fn is_constrained_on_creation(&self, v: VariableIndex) -> bool {
        self.block_members.contains(&v)
    }

    /// Constraints declaring variables constrained on creation.
    pub fn variable_blocks(&self) -> impl Iterator<Item = &Constraint> {
        self.blocks.iter().map(move |ci| &self.constraints[ci])
    }

    pub fn set_variable_name(&mut self, v: VariableIndex, name: &str) -> Result<(), ModelError> {
        if !self.variables.contains_key(&v) {
            return Err(ModelError::UnknownVariable(v));
        }
        if name.is_empty() {
            return Err(ModelError::EmptyName);
        }
        match self.names.get(name) {
            Some(&owner) if owner == v => return Ok(()),
            Some(_) => return Err(ModelError::DuplicateName(name.to_string())),
            None => {}
        }
        if let Some(Some(old)) = self.variables.get(&v) {
            self.names.remove(old);
        }
        self.names.insert(name.to_string(), v);
        self.variables.insert(v, Some(name.to_string()));
        Ok(())
    }

    pub fn variable_name(&self, v: VariableIndex) -> Option<&str> {
        self.variables.get(&v).and_then(|n| n.as_deref())
    }

    pub fn variable_by_name(&self, name: &str) -> Option<VariableIndex> {
        self.names.get(name).copied()
    }

    pub fn is_valid_variable(&self, v: VariableIndex) -> bool {
        self.variables.contains_key(&v)
    }

    /// Live variables in increasing index order.
    pub fn variables(&self) -> impl Iterator<Item = VariableIndex> + '_ {
        self.variables.keys().copied()
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    fn check_function(&self, f: &Function) -> Result<(), ModelError> {
        if f.coefficients().iter().any(|c| !c.is_finite()) {
            return Err(ModelError::NonFinite);
        }
        for v in f.variables() {
            if !self.variables.contains_key(&v) {
                return Err(ModelError::DeadVariable(v));
            }
        }
        let dimension = f.output_dimension();
        let out_of_range = match f {
            Function::VectorAffine(g) => g.terms.iter().map(|t| t.output_index).find(|&i| i >= dimension),
            Function::VectorQuadratic(g) => g
                .affine_terms
                .iter()
                .map(|t| t.output_index)
                .chain(g.quadratic_terms.iter().map(|t| t.output_index))
                .find(|&i| i >= dimension),
            _ => None,
        };
        if let Some(index) = out_of_range {
            return Err(ModelError::OutputIndexOutOfRange { index, dimension });
        }
        Ok(())
    }

    pub fn add_constraint(&mut self, function: Function, set: SetSpec) -> Result<ConstraintIndex, ModelError> {
        self.check_function(&function)?;
        set.validate()?;
        if function.is_scalar() != set.is_scalar() {
            return Err(ModelError::IllegalPairing { function: function.function_type(), set: set.set_type() });
        }
        if function.output_dimension() != set.dimension() {
            return Err(ModelError::DimensionMismatch { function: function.output_dimension(), set: set.dimension() });
        }
        let index = ConstraintIndex(self.next_constraint);
        self.next_constraint += 1;
        self.constraints
            .insert(index, Constraint { index, function: function.canonicalize(), set, name: None });
        Ok(index)
    }

    pub fn set_constraint_name(&mut self, ci: ConstraintIndex, name: Option<String>) -> Result<(), ModelError> {
        let c = self.constraints.get_mut(&ci).ok_or(ModelError::UnknownConstraint(ci))?;
        c.name = name;
        Ok(())
    }

    pub fn constraint(&self, ci: ConstraintIndex) -> Result<&Constraint, ModelError> {
        self.constraints.get(&ci).ok_or(ModelError::UnknownConstraint(ci))
    }

    /// Constraints in creation order.
    pub fn constraints(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.values()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Set the objective. `function` must be present iff `sense` is not
    /// [`ObjectiveSense::Feasibility`].
    pub fn set_objective(&mut self, sense: ObjectiveSense, function: Option<Function>) -> Result<(), ModelError> {
        match (&sense, &function) {
            (ObjectiveSense::Feasibility, None) => {
                self.sense = None;
                self.objective = None;
                Ok(())
            }
            (ObjectiveSense::Min | ObjectiveSense::Max, Some(f)) => {
                self.check_function(f)?;
                self.sense = Some(sense);
                self.objective = Some(f.canonicalize());
                Ok(())
            }
            _ => Err(ModelError::ObjectiveMismatch { sense }),
        }
    }

    pub fn objective_sense(&self) -> ObjectiveSense {
        self.sense.unwrap_or(ObjectiveSense::Feasibility)
    }

    pub fn objective_function(&self) -> Option<&Function> {
        self.objective.as_ref()
    }

    pub fn delete_constraint(&mut self, ci: ConstraintIndex) -> Result<(), ModelError> {
        let c = self.constraints.remove(&ci).ok_or(ModelError::UnknownConstraint(ci))?;
        if self.blocks.remove(&ci) {
            for v in c.function.variables() {
                self.block_members.remove(&v);
            }
        }
        Ok(())
    }

    /// Delete a variable; fails while any constraint or the objective still
    /// references it.
    pub fn delete_variable(&mut self, v: VariableIndex) -> Result<(), ModelError> {
        if !self.variables.contains_key(&v) {
            return Err(ModelError::UnknownVariable(v));
        }
        let referenced = self.objective.as_ref().is_some_and(|f| f.references(v))
            || self.constraints.values().any(|c| c.function.references(v));
        if referenced {
            return Err(ModelError::StillReferenced(v));
        }
        if let Some(Some(name)) = self.variables.remove(&v) {
            self.names.remove(&name);
        }
        Ok(())
    }
}
