use std::collections::BTreeMap;
use std::fmt;

use super::{Assignment, ModelError, VariableIndex};

/// Sparse linear term `coefficient * variable`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineTerm {
    pub coefficient: f64,
    pub variable: VariableIndex,
}

impl AffineTerm {
    pub fn new(coefficient: f64, variable: VariableIndex) -> Self {
        Self { coefficient, variable }
    }
}

/// Entry of the symmetric matrix `Q` in `½xᵀQx`.
///
/// An off-diagonal term contributes `coefficient * x1 * x2`; a diagonal term
/// (`variable1 == variable2`) contributes `coefficient / 2 * x1²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticTerm {
    pub coefficient: f64,
    pub variable1: VariableIndex,
    pub variable2: VariableIndex,
}

impl QuadraticTerm {
    pub fn new(coefficient: f64, variable1: VariableIndex, variable2: VariableIndex) -> Self {
        Self { coefficient, variable1, variable2 }
    }

    fn value(&self, x1: f64, x2: f64) -> f64 {
        if self.variable1 == self.variable2 {
            0.5 * self.coefficient * x1 * x2
        } else {
            self.coefficient * x1 * x2
        }
    }

    fn ordered(&self) -> (VariableIndex, VariableIndex) {
        if self.variable1 <= self.variable2 {
            (self.variable1, self.variable2)
        } else {
            (self.variable2, self.variable1)
        }
    }
}

/// Output row (0-based) paired with an affine term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VectorAffineTerm {
    pub output_index: usize,
    pub term: AffineTerm,
}

/// Output row (0-based) paired with a quadratic term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VectorQuadraticTerm {
    pub output_index: usize,
    pub term: QuadraticTerm,
}

/// `aᵀx + b`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ScalarAffineFunction {
    pub terms: Vec<AffineTerm>,
    pub constant: f64,
}

/// `Ax + b`; the output dimension is `constants.len()`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct VectorAffineFunction {
    pub terms: Vec<VectorAffineTerm>,
    pub constants: Vec<f64>,
}

/// `½xᵀQx + aᵀx + b`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ScalarQuadraticFunction {
    pub quadratic_terms: Vec<QuadraticTerm>,
    pub affine_terms: Vec<AffineTerm>,
    pub constant: f64,
}

/// Row-wise `½xᵀQᵢx + aᵢᵀx + bᵢ`; the output dimension is `constants.len()`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct VectorQuadraticFunction {
    pub quadratic_terms: Vec<VectorQuadraticTerm>,
    pub affine_terms: Vec<VectorAffineTerm>,
    pub constants: Vec<f64>,
}

/// Type tag of a [`Function`], without coefficient data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctionType {
    SingleVariable,
    VectorOfVariables,
    ScalarAffine,
    VectorAffine,
    ScalarQuadratic,
    VectorQuadratic,
}

impl FunctionType {
    pub const ALL: [FunctionType; 6] = [
        FunctionType::SingleVariable,
        FunctionType::VectorOfVariables,
        FunctionType::ScalarAffine,
        FunctionType::VectorAffine,
        FunctionType::ScalarQuadratic,
        FunctionType::VectorQuadratic,
    ];

    /// Name used in MathOptFormat files and reports.
    pub fn name(self) -> &'static str {
        match self {
            FunctionType::SingleVariable => "SingleVariable",
            FunctionType::VectorOfVariables => "VectorOfVariables",
            FunctionType::ScalarAffine => "ScalarAffineFunction",
            FunctionType::VectorAffine => "VectorAffineFunction",
            FunctionType::ScalarQuadratic => "ScalarQuadraticFunction",
            FunctionType::VectorQuadratic => "VectorQuadraticFunction",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }

    pub fn is_scalar(self) -> bool {
        matches!(
            self,
            FunctionType::SingleVariable | FunctionType::ScalarAffine | FunctionType::ScalarQuadratic
        )
    }
}

impl fmt::Display for FunctionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A member of the function catalog.
#[derive(Clone, Debug, PartialEq)]
pub enum Function {
    SingleVariable(VariableIndex),
    VectorOfVariables(Vec<VariableIndex>),
    ScalarAffine(ScalarAffineFunction),
    VectorAffine(VectorAffineFunction),
    ScalarQuadratic(ScalarQuadraticFunction),
    VectorQuadratic(VectorQuadraticFunction),
}

/// Value of a function: a scalar or a vector.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionValue {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl FunctionValue {
    /// The value as a list (scalars become a one-element list).
    pub fn into_vec(self) -> Vec<f64> {
        match self {
            FunctionValue::Scalar(v) => vec![v],
            FunctionValue::Vector(v) => v,
        }
    }

    pub fn as_scalar(&self) -> Option<f64> {
        match self {
            FunctionValue::Scalar(v) => Some(*v),
            FunctionValue::Vector(_) => None,
        }
    }
}

impl ScalarAffineFunction {
    pub fn new(terms: Vec<AffineTerm>, constant: f64) -> Self {
        Self { terms, constant }
    }

    pub fn constant(value: f64) -> Self {
        Self { terms: Vec::new(), constant: value }
    }

    /// `1 * variable + 0`.
    pub fn variable(variable: VariableIndex) -> Self {
        Self { terms: vec![AffineTerm::new(1.0, variable)], constant: 0.0 }
    }

    /// Build from `(coefficient, variable)` pairs.
    pub fn from_pairs<I: IntoIterator<Item = (f64, VariableIndex)>>(pairs: I, constant: f64) -> Self {
        Self {
            terms: pairs.into_iter().map(|(c, v)| AffineTerm::new(c, v)).collect(),
            constant,
        }
    }

    /// Returns `v` if this function is exactly `1 * v + 0`.
    pub fn as_single_variable(&self) -> Option<VariableIndex> {
        let canonical = self.canonical();
        match canonical.terms.as_slice() {
            [t] if t.coefficient == 1.0 && canonical.constant == 0.0 => Some(t.variable),
            _ => None,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| AffineTerm::new(factor * t.coefficient, t.variable))
                .collect(),
            constant: factor * self.constant,
        }
    }

    /// `self + factor * other`, canonicalized.
    pub fn add_scaled(&self, factor: f64, other: &ScalarAffineFunction) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|t| AffineTerm::new(factor * t.coefficient, t.variable)));
        Self { terms, constant: self.constant + factor * other.constant }.canonical()
    }

    pub fn canonical(&self) -> Self {
        Self { terms: merge_affine(self.terms.iter().copied()), constant: self.constant }
    }

    pub fn value(&self, x: &Assignment) -> Result<f64, ModelError> {
        let mut total = self.constant;
        for t in &self.terms {
            total += t.coefficient * lookup(x, t.variable)?;
        }
        Ok(total)
    }
}

impl VectorAffineFunction {
    pub fn output_dimension(&self) -> usize {
        self.constants.len()
    }

    /// Stack scalar affine rows into one vector function.
    pub fn from_rows<'a, I: IntoIterator<Item = &'a ScalarAffineFunction>>(rows: I) -> Self {
        let mut out = VectorAffineFunction::default();
        for (i, row) in rows.into_iter().enumerate() {
            out.terms.extend(row.terms.iter().map(|&term| VectorAffineTerm { output_index: i, term }));
            out.constants.push(row.constant);
        }
        out
    }

    /// Split into one scalar affine function per output row.
    pub fn rows(&self) -> Vec<ScalarAffineFunction> {
        let mut rows: Vec<ScalarAffineFunction> =
            self.constants.iter().map(|&c| ScalarAffineFunction::constant(c)).collect();
        for t in &self.terms {
            rows[t.output_index].terms.push(t.term);
        }
        rows
    }
}

impl ScalarQuadraticFunction {
    pub fn new(quadratic_terms: Vec<QuadraticTerm>, affine_terms: Vec<AffineTerm>, constant: f64) -> Self {
        Self { quadratic_terms, affine_terms, constant }
    }

    pub fn from_affine(f: &ScalarAffineFunction) -> Self {
        Self { quadratic_terms: Vec::new(), affine_terms: f.terms.clone(), constant: f.constant }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            quadratic_terms: self
                .quadratic_terms
                .iter()
                .map(|t| QuadraticTerm::new(factor * t.coefficient, t.variable1, t.variable2))
                .collect(),
            affine_terms: self
                .affine_terms
                .iter()
                .map(|t| AffineTerm::new(factor * t.coefficient, t.variable))
                .collect(),
            constant: factor * self.constant,
        }
    }

    /// `self + factor * other`, canonicalized.
    pub fn add_affine(&self, factor: f64, other: &ScalarAffineFunction) -> Self {
        let mut out = self.clone();
        out.affine_terms
            .extend(other.terms.iter().map(|t| AffineTerm::new(factor * t.coefficient, t.variable)));
        out.constant += factor * other.constant;
        out.canonical()
    }

    pub fn canonical(&self) -> Self {
        Self {
            quadratic_terms: merge_quadratic(self.quadratic_terms.iter().copied()),
            affine_terms: merge_affine(self.affine_terms.iter().copied()),
            constant: self.constant,
        }
    }

    pub fn value(&self, x: &Assignment) -> Result<f64, ModelError> {
        let mut total = self.constant;
        for t in &self.affine_terms {
            total += t.coefficient * lookup(x, t.variable)?;
        }
        for t in &self.quadratic_terms {
            total += t.value(lookup(x, t.variable1)?, lookup(x, t.variable2)?);
        }
        Ok(total)
    }
}

impl VectorQuadraticFunction {
    pub fn output_dimension(&self) -> usize {
        self.constants.len()
    }
}

fn lookup(x: &Assignment, v: VariableIndex) -> Result<f64, ModelError> {
    x.get(&v).copied().ok_or(ModelError::MissingAssignment(v))
}

fn merge_affine<I: Iterator<Item = AffineTerm>>(terms: I) -> Vec<AffineTerm> {
    let mut acc: BTreeMap<VariableIndex, f64> = BTreeMap::new();
    for t in terms {
        *acc.entry(t.variable).or_insert(0.0) += t.coefficient;
    }
    acc.into_iter()
        .filter(|&(_, c)| c != 0.0)
        .map(|(v, c)| AffineTerm::new(c, v))
        .collect()
}

fn merge_quadratic<I: Iterator<Item = QuadraticTerm>>(terms: I) -> Vec<QuadraticTerm> {
    let mut acc: BTreeMap<(VariableIndex, VariableIndex), f64> = BTreeMap::new();
    for t in terms {
        *acc.entry(t.ordered()).or_insert(0.0) += t.coefficient;
    }
    acc.into_iter()
        .filter(|&(_, c)| c != 0.0)
        .map(|((v1, v2), c)| QuadraticTerm::new(c, v1, v2))
        .collect()
}

fn merge_vector_affine<I: Iterator<Item = VectorAffineTerm>>(terms: I) -> Vec<VectorAffineTerm> {
    let mut acc: BTreeMap<(usize, VariableIndex), f64> = BTreeMap::new();
    for t in terms {
        *acc.entry((t.output_index, t.term.variable)).or_insert(0.0) += t.term.coefficient;
    }
    acc.into_iter()
        .filter(|&(_, c)| c != 0.0)
        .map(|((i, v), c)| VectorAffineTerm { output_index: i, term: AffineTerm::new(c, v) })
        .collect()
}

fn merge_vector_quadratic<I: Iterator<Item = VectorQuadraticTerm>>(terms: I) -> Vec<VectorQuadraticTerm> {
    let mut acc: BTreeMap<(usize, VariableIndex, VariableIndex), f64> = BTreeMap::new();
    for t in terms {
        let (v1, v2) = t.term.ordered();
        *acc.entry((t.output_index, v1, v2)).or_insert(0.0) += t.term.coefficient;
    }
    acc.into_iter()
        .filter(|&(_, c)| c != 0.0)
        .map(|((i, v1, v2), c)| VectorQuadraticTerm { output_index: i, term: QuadraticTerm::new(c, v1, v2) })
        .collect()
}

/// Accumulates `value_coefficient * x_k * x_l` products and emits them in
/// the stored (diagonal-doubled) convention.
#[derive(Default)]
struct QuadraticAccumulator {
    values: BTreeMap<(VariableIndex, VariableIndex), f64>,
    affine: Vec<AffineTerm>,
    constant: f64,
}

impl QuadraticAccumulator {
    /// Adds `scale * e1 * e2`.
    fn add_product(&mut self, scale: f64, e1: &ScalarAffineFunction, e2: &ScalarAffineFunction) {
        for t1 in &e1.terms {
            for t2 in &e2.terms {
                let key = if t1.variable <= t2.variable {
                    (t1.variable, t2.variable)
                } else {
                    (t2.variable, t1.variable)
                };
                *self.values.entry(key).or_insert(0.0) += scale * t1.coefficient * t2.coefficient;
            }
            self.affine.push(AffineTerm::new(scale * t1.coefficient * e2.constant, t1.variable));
        }
        for t2 in &e2.terms {
            self.affine.push(AffineTerm::new(scale * e1.constant * t2.coefficient, t2.variable));
        }
        self.constant += scale * e1.constant * e2.constant;
    }

    fn add_affine(&mut self, scale: f64, e: &ScalarAffineFunction) {
        self.affine.extend(e.terms.iter().map(|t| AffineTerm::new(scale * t.coefficient, t.variable)));
        self.constant += scale * e.constant;
    }

    fn finish(self, constant: f64) -> ScalarQuadraticFunction {
        let quadratic_terms = self
            .values
            .into_iter()
            .map(|((v1, v2), c)| QuadraticTerm::new(if v1 == v2 { 2.0 * c } else { c }, v1, v2))
            .collect::<Vec<_>>();
        ScalarQuadraticFunction {
            quadratic_terms,
            affine_terms: self.affine,
            constant: constant + self.constant,
        }
        .canonical()
    }
}

/// Mapping from variables to the affine expressions that replace them.
pub type Substitution = BTreeMap<VariableIndex, ScalarAffineFunction>;

fn image(map: &Substitution, v: VariableIndex) -> ScalarAffineFunction {
    map.get(&v).cloned().unwrap_or_else(|| ScalarAffineFunction::variable(v))
}

fn substitute_affine(terms: &[AffineTerm], constant: f64, map: &Substitution) -> ScalarAffineFunction {
    let mut out = ScalarAffineFunction::constant(constant);
    for t in terms {
        match map.get(&t.variable) {
            Some(e) => {
                out.terms.extend(e.terms.iter().map(|s| AffineTerm::new(t.coefficient * s.coefficient, s.variable)));
                out.constant += t.coefficient * e.constant;
            }
            None => out.terms.push(*t),
        }
    }
    out.canonical()
}

fn substitute_quadratic(f: &ScalarQuadraticFunction, map: &Substitution) -> ScalarQuadraticFunction {
    let mut acc = QuadraticAccumulator::default();
    for t in &f.quadratic_terms {
        let e1 = image(map, t.variable1);
        let e2 = image(map, t.variable2);
        let scale = if t.variable1 == t.variable2 { 0.5 * t.coefficient } else { t.coefficient };
        acc.add_product(scale, &e1, &e2);
    }
    for t in &f.affine_terms {
        acc.add_affine(t.coefficient, &image(map, t.variable));
    }
    acc.finish(f.constant)
}

impl Function {
    pub fn function_type(&self) -> FunctionType {
        match self {
            Function::SingleVariable(_) => FunctionType::SingleVariable,
            Function::VectorOfVariables(_) => FunctionType::VectorOfVariables,
            Function::ScalarAffine(_) => FunctionType::ScalarAffine,
            Function::VectorAffine(_) => FunctionType::VectorAffine,
            Function::ScalarQuadratic(_) => FunctionType::ScalarQuadratic,
            Function::VectorQuadratic(_) => FunctionType::VectorQuadratic,
        }
    }

    pub fn output_dimension(&self) -> usize {
        match self {
            Function::SingleVariable(_) | Function::ScalarAffine(_) | Function::ScalarQuadratic(_) => 1,
            Function::VectorOfVariables(vars) => vars.len(),
            Function::VectorAffine(f) => f.output_dimension(),
            Function::VectorQuadratic(f) => f.output_dimension(),
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.function_type().is_scalar()
    }

    /// Every variable referenced by the function, with repetition.
    pub fn variables(&self) -> Vec<VariableIndex> {
        match self {
            Function::SingleVariable(v) => vec![*v],
            Function::VectorOfVariables(vars) => vars.clone(),
            Function::ScalarAffine(f) => f.terms.iter().map(|t| t.variable).collect(),
            Function::VectorAffine(f) => f.terms.iter().map(|t| t.term.variable).collect(),
            Function::ScalarQuadratic(f) => f
                .quadratic_terms
                .iter()
                .flat_map(|t| [t.variable1, t.variable2])
                .chain(f.affine_terms.iter().map(|t| t.variable))
                .collect(),
            Function::VectorQuadratic(f) => f
                .quadratic_terms
                .iter()
                .flat_map(|t| [t.term.variable1, t.term.variable2])
                .chain(f.affine_terms.iter().map(|t| t.term.variable))
                .collect(),
        }
    }

    pub fn references(&self, v: VariableIndex) -> bool {
        self.variables().contains(&v)
    }

    /// Iterator over every coefficient and constant stored in the function.
    pub fn coefficients(&self) -> Vec<f64> {
        match self {
            Function::SingleVariable(_) | Function::VectorOfVariables(_) => Vec::new(),
            Function::ScalarAffine(f) => f.terms.iter().map(|t| t.coefficient).chain([f.constant]).collect(),
            Function::VectorAffine(f) => f
                .terms
                .iter()
                .map(|t| t.term.coefficient)
                .chain(f.constants.iter().copied())
                .collect(),
            Function::ScalarQuadratic(f) => f
                .quadratic_terms
                .iter()
                .map(|t| t.coefficient)
                .chain(f.affine_terms.iter().map(|t| t.coefficient))
                .chain([f.constant])
                .collect(),
            Function::VectorQuadratic(f) => f
                .quadratic_terms
                .iter()
                .map(|t| t.term.coefficient)
                .chain(f.affine_terms.iter().map(|t| t.term.coefficient))
                .chain(f.constants.iter().copied())
                .collect(),
        }
    }

    /// Merge duplicate terms, order quadratic pairs, sort, and drop zeros.
    pub fn canonicalize(&self) -> Function {
        match self {
            Function::SingleVariable(_) | Function::VectorOfVariables(_) => self.clone(),
            Function::ScalarAffine(f) => Function::ScalarAffine(f.canonical()),
            Function::VectorAffine(f) => Function::VectorAffine(VectorAffineFunction {
                terms: merge_vector_affine(f.terms.iter().copied()),
                constants: f.constants.clone(),
            }),
            Function::ScalarQuadratic(f) => Function::ScalarQuadratic(f.canonical()),
            Function::VectorQuadratic(f) => Function::VectorQuadratic(VectorQuadraticFunction {
                quadratic_terms: merge_vector_quadratic(f.quadratic_terms.iter().copied()),
                affine_terms: merge_vector_affine(f.affine_terms.iter().copied()),
                constants: f.constants.clone(),
            }),
        }
    }

    pub fn evaluate(&self, x: &Assignment) -> Result<FunctionValue, ModelError> {
        Ok(match self {
            Function::SingleVariable(v) => FunctionValue::Scalar(lookup(x, *v)?),
            Function::VectorOfVariables(vars) => {
                FunctionValue::Vector(vars.iter().map(|&v| lookup(x, v)).collect::<Result<_, _>>()?)
            }
            Function::ScalarAffine(f) => FunctionValue::Scalar(f.value(x)?),
            Function::VectorAffine(f) => {
                let mut out = f.constants.clone();
                for t in &f.terms {
                    out[t.output_index] += t.term.coefficient * lookup(x, t.term.variable)?;
                }
                FunctionValue::Vector(out)
            }
            Function::ScalarQuadratic(f) => FunctionValue::Scalar(f.value(x)?),
            Function::VectorQuadratic(f) => {
                let mut out = f.constants.clone();
                for t in &f.affine_terms {
                    out[t.output_index] += t.term.coefficient * lookup(x, t.term.variable)?;
                }
                for t in &f.quadratic_terms {
                    out[t.output_index] += t.term.value(lookup(x, t.term.variable1)?, lookup(x, t.term.variable2)?);
                }
                FunctionValue::Vector(out)
            }
        })
    }

    /// Replace every mapped variable with its affine image.
    ///
    /// Variable-only functions stay variable-only when every image is a bare
    /// variable; otherwise they become affine.
    pub fn substitute(&self, map: &Substitution) -> Function {
        if map.is_empty() {
            return self.canonicalize();
        }
        match self {
            Function::SingleVariable(v) => match map.get(v) {
                None => self.clone(),
                Some(e) => match e.as_single_variable() {
                    Some(w) => Function::SingleVariable(w),
                    None => Function::ScalarAffine(e.canonical()),
                },
            },
            Function::VectorOfVariables(vars) => {
                let images: Vec<ScalarAffineFunction> = vars.iter().map(|&v| image(map, v)).collect();
                let singles: Option<Vec<VariableIndex>> = images.iter().map(|e| e.as_single_variable()).collect();
                match singles {
                    Some(vars) => Function::VectorOfVariables(vars),
                    None => Function::VectorAffine(VectorAffineFunction::from_rows(&images)).canonicalize(),
                }
            }
            Function::ScalarAffine(f) => Function::ScalarAffine(substitute_affine(&f.terms, f.constant, map)),
            Function::VectorAffine(f) => {
                let rows: Vec<ScalarAffineFunction> = f
                    .rows()
                    .iter()
                    .map(|row| substitute_affine(&row.terms, row.constant, map))
                    .collect();
                Function::VectorAffine(VectorAffineFunction::from_rows(&rows))
            }
            Function::ScalarQuadratic(f) => Function::ScalarQuadratic(substitute_quadratic(f, map)),
            Function::VectorQuadratic(f) => {
                let m = f.output_dimension();
                let mut rows = vec![ScalarQuadraticFunction::default(); m];
                for (i, row) in rows.iter_mut().enumerate() {
                    row.constant = f.constants[i];
                }
                for t in &f.quadratic_terms {
                    rows[t.output_index].quadratic_terms.push(t.term);
                }
                for t in &f.affine_terms {
                    rows[t.output_index].affine_terms.push(t.term);
                }
                let mut out = VectorQuadraticFunction { constants: Vec::with_capacity(m), ..Default::default() };
                for (i, row) in rows.iter().enumerate() {
                    let s = substitute_quadratic(row, map);
                    out.quadratic_terms
                        .extend(s.quadratic_terms.iter().map(|&term| VectorQuadraticTerm { output_index: i, term }));
                    out.affine_terms
                        .extend(s.affine_terms.iter().map(|&term| VectorAffineTerm { output_index: i, term }));
                    out.constants.push(s.constant);
                }
                Function::VectorQuadratic(out)
            }
        }
    }

    /// Scalar affine view of a `SingleVariable` or `ScalarAffine` function.
    pub fn to_scalar_affine(&self) -> Option<ScalarAffineFunction> {
        match self {
            Function::SingleVariable(v) => Some(ScalarAffineFunction::variable(*v)),
            Function::ScalarAffine(f) => Some(f.clone()),
            _ => None,
        }
    }

    /// Vector affine view of a `VectorOfVariables` or `VectorAffine` function.
    pub fn to_vector_affine(&self) -> Option<VectorAffineFunction> {
        match self {
            Function::VectorOfVariables(vars) => {
                let rows: Vec<ScalarAffineFunction> = vars.iter().map(|&v| ScalarAffineFunction::variable(v)).collect();
                Some(VectorAffineFunction::from_rows(&rows))
            }
            Function::VectorAffine(f) => Some(f.clone()),
            _ => None,
        }
    }

    /// `-f` for scalar affine or quadratic functions (single variables become affine).
    pub fn negated_scalar(&self) -> Option<Function> {
        match self {
            Function::SingleVariable(v) => Some(Function::ScalarAffine(ScalarAffineFunction::new(
                vec![AffineTerm::new(-1.0, *v)],
                0.0,
            ))),
            Function::ScalarAffine(f) => Some(Function::ScalarAffine(f.scaled(-1.0))),
            Function::ScalarQuadratic(f) => Some(Function::ScalarQuadratic(f.scaled(-1.0))),
            _ => None,
        }
    }

    /// `f + factor * g` for a scalar function `f` and affine `g`.
    pub fn plus_affine(&self, factor: f64, g: &ScalarAffineFunction) -> Option<Function> {
        match self {
            Function::ScalarQuadratic(f) => Some(Function::ScalarQuadratic(f.add_affine(factor, g))),
            _ => self.to_scalar_affine().map(|f| Function::ScalarAffine(f.add_scaled(factor, g))),
        }
    }
}

impl From<ScalarAffineFunction> for Function {
    fn from(f: ScalarAffineFunction) -> Self {
        Function::ScalarAffine(f)
    }
}

impl From<VectorAffineFunction> for Function {
    fn from(f: VectorAffineFunction) -> Self {
        Function::VectorAffine(f)
    }
}

impl From<ScalarQuadraticFunction> for Function {
    fn from(f: ScalarQuadraticFunction) -> Self {
        Function::ScalarQuadratic(f)
    }
}

impl From<VectorQuadraticFunction> for Function {
    fn from(f: VectorQuadraticFunction) -> Self {
        Function::VectorQuadratic(f)
    }
}
