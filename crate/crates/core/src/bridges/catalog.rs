//! The built-in bridges.

use std::f64::consts::SQRT_2;
use std::sync::Arc;

use crate::model::{
    AffineTerm, Function, FunctionType as F, ObjectiveSense, ScalarAffineFunction, ScalarQuadraticFunction,
    VectorAffineFunction, VariableIndex,
};
use crate::sets::{SetSpec, SetType as S};

use super::{Bridge, BridgeContext, BridgeError, BridgeSource, Emission, NodeKey, Witness};

/// The built-in catalog in registration order (which breaks cost ties).
pub fn builtin_bridges() -> Vec<Arc<dyn Bridge>> {
    vec![
        Arc::new(SplitInterval),
        Arc::new(SlackGe),
        Arc::new(SlackLe),
        Arc::new(FlipSign),
        Arc::new(Vectorize),
        Arc::new(Scalarize),
        Arc::new(VariableFunctionize),
        Arc::new(QuadToRsoc),
        Arc::new(RsocToSoc),
        Arc::new(SocToRsoc),
        Arc::new(ObjectiveSlack),
        Arc::new(ObjectiveFunctionize),
        Arc::new(FreeVariable),
        Arc::new(PsdSquareToTriangle),
    ]
}

fn not_applicable(b: &dyn Bridge, source: &BridgeSource) -> BridgeError {
    BridgeError::NotApplicable { bridge: b.name().to_string(), node: source.key() }
}

fn var(v: VariableIndex) -> ScalarAffineFunction {
    ScalarAffineFunction::variable(v)
}

fn constant(c: f64) -> ScalarAffineFunction {
    ScalarAffineFunction::constant(c)
}

fn constraint(function: impl Into<Function>, set: SetSpec) -> (Function, SetSpec) {
    (function.into().canonicalize(), set)
}

/// `l ≤ f ≤ u` into `f ≥ l` and `f ≤ u`.
pub struct SplitInterval;

impl Bridge for SplitInterval {
    fn name(&self) -> &str {
        "split-interval"
    }

    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>> {
        match source {
            NodeKey::Constraint(F::ScalarAffine, S::Interval) => Some(vec![
                NodeKey::Constraint(F::ScalarAffine, S::GreaterThan),
                NodeKey::Constraint(F::ScalarAffine, S::LessThan),
            ]),
            _ => None,
        }
    }

    fn apply(&self, _ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError> {
        match source {
            BridgeSource::Constraint { function: f @ Function::ScalarAffine(_), set: SetSpec::Interval { lower, upper } } => {
                Ok(Emission {
                    constraints: vec![
                        (f.clone(), SetSpec::GreaterThan { lower: *lower }),
                        (f.clone(), SetSpec::LessThan { upper: *upper }),
                    ],
                    ..Emission::default()
                })
            }
            _ => Err(not_applicable(self, source)),
        }
    }
}

fn affine_or_quadratic(f: F) -> bool {
    matches!(f, F::ScalarAffine | F::ScalarQuadratic)
}

/// `f ≥ b` into `f - y = b` with a new `y ≥ 0`.
pub struct SlackGe;

impl Bridge for SlackGe {
    fn name(&self) -> &str {
        "slack-ge"
    }

    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>> {
        match *source {
            NodeKey::Constraint(f, S::GreaterThan) if affine_or_quadratic(f) => {
                Some(vec![NodeKey::Constraint(f, S::EqualTo), NodeKey::Variable(S::GreaterThan)])
            }
            _ => None,
        }
    }

    fn apply(&self, ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError> {
        let BridgeSource::Constraint { function, set: SetSpec::GreaterThan { lower } } = source else {
            return Err(not_applicable(self, source));
        };
        if !affine_or_quadratic(function.function_type()) {
            return Err(not_applicable(self, source));
        }
        let y = ctx.add_constrained_variables(SetSpec::GreaterThan { lower: 0.0 })[0];
        let equality = function.plus_affine(-1.0, &var(y)).expect("scalar function");
        let slack = function.plus_affine(1.0, &constant(-lower)).expect("scalar function");
        Ok(Emission {
            constraints: vec![constraint(equality, SetSpec::EqualTo { value: *lower })],
            witnesses: vec![(y, Witness::Value(slack.canonicalize()))],
            ..Emission::default()
        })
    }
}

/// `f ≤ u` into `f + y = u` with a new `y ≥ 0`.
pub struct SlackLe;

impl Bridge for SlackLe {
    fn name(&self) -> &str {
        "slack-le"
    }

    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>> {
        match *source {
            NodeKey::Constraint(f, S::LessThan) if affine_or_quadratic(f) => {
                Some(vec![NodeKey::Constraint(f, S::EqualTo), NodeKey::Variable(S::GreaterThan)])
            }
            _ => None,
        }
    }

    fn apply(&self, ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError> {
        let BridgeSource::Constraint { function, set: SetSpec::LessThan { upper } } = source else {
            return Err(not_applicable(self, source));
        };
        if !affine_or_quadratic(function.function_type()) {
            return Err(not_applicable(self, source));
        }
        let y = ctx.add_constrained_variables(SetSpec::GreaterThan { lower: 0.0 })[0];
        let equality = function.plus_affine(1.0, &var(y)).expect("scalar function");
        let slack = function
            .negated_scalar()
            .and_then(|g| g.plus_affine(1.0, &constant(*upper)))
            .expect("scalar function");
        Ok(Emission {
            constraints: vec![constraint(equality, SetSpec::EqualTo { value: *upper })],
            witnesses: vec![(y, Witness::Value(slack.canonicalize()))],
            ..Emission::default()
        })
    }
}

/// `f ≤ u` into `-f ≥ -u`.
pub struct FlipSign;

impl Bridge for FlipSign {
    fn name(&self) -> &str {
        "flip-sign"
    }

    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>> {
        match *source {
            NodeKey::Constraint(f, S::LessThan) if affine_or_quadratic(f) => {
                Some(vec![NodeKey::Constraint(f, S::GreaterThan)])
            }
            _ => None,
        }
    }

    fn apply(&self, _ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError> {
        let BridgeSource::Constraint { function, set: SetSpec::LessThan { upper } } = source else {
            return Err(not_applicable(self, source));
        };
        if !affine_or_quadratic(function.function_type()) {
            return Err(not_applicable(self, source));
        }
        let negated = function.negated_scalar().expect("scalar function");
        Ok(Emission {
            constraints: vec![constraint(negated, SetSpec::GreaterThan { lower: -upper })],
            ..Emission::default()
        })
    }
}

/// Scalar affine bound into a one-row vector affine cone constraint.
pub struct Vectorize;

fn vector_cone_for(s: S) -> Option<S> {
    match s {
        S::LessThan => Some(S::Nonpositives),
        S::GreaterThan => Some(S::Nonnegatives),
        S::EqualTo => Some(S::Zeros),
        _ => None,
    }
}

impl Bridge for Vectorize {
    fn name(&self) -> &str {
        "vectorize"
    }

    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>> {
        match *source {
            NodeKey::Constraint(F::ScalarAffine, s) => {
                vector_cone_for(s).map(|cone| vec![NodeKey::Constraint(F::VectorAffine, cone)])
            }
            _ => None,
        }
    }

    fn apply(&self, _ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError> {
        let BridgeSource::Constraint { function: Function::ScalarAffine(f), set } = source else {
            return Err(not_applicable(self, source));
        };
        let (bound, cone) = match set {
            SetSpec::LessThan { upper } => (*upper, SetSpec::Nonpositives { dimension: 1 }),
            SetSpec::GreaterThan { lower } => (*lower, SetSpec::Nonnegatives { dimension: 1 }),
            SetSpec::EqualTo { value } => (*value, SetSpec::Zeros { dimension: 1 }),
            _ => return Err(not_applicable(self, source)),
        };
        let row = f.add_scaled(-1.0, &constant(bound));
        Ok(Emission {
            constraints: vec![constraint(VectorAffineFunction::from_rows([&row]), cone)],
            ..Emission::default()
        })
    }
}

/// Vector affine in `Zeros`/`Nonnegatives`/`Nonpositives` into one scalar
/// constraint per row, with each row's constant moved into the set.
pub struct Scalarize;

impl Bridge for Scalarize {
    fn name(&self) -> &str {
        "scalarize"
    }

    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>> {
        let scalar = match source {
            NodeKey::Constraint(F::VectorAffine, S::Zeros) => S::EqualTo,
            NodeKey::Constraint(F::VectorAffine, S::Nonnegatives) => S::GreaterThan,
            NodeKey::Constraint(F::VectorAffine, S::Nonpositives) => S::LessThan,
            _ => return None,
        };
        Some(vec![NodeKey::Constraint(F::ScalarAffine, scalar)])
    }

    fn apply(&self, _ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError> {
        let BridgeSource::Constraint { function: Function::VectorAffine(f), set } = source else {
            return Err(not_applicable(self, source));
        };
        let make: fn(f64) -> SetSpec = match set {
            SetSpec::Zeros { .. } => |b| SetSpec::EqualTo { value: b },
            SetSpec::Nonnegatives { .. } => |b| SetSpec::GreaterThan { lower: b },
            SetSpec::Nonpositives { .. } => |b| SetSpec::LessThan { upper: b },
            _ => return Err(not_applicable(self, source)),
        };
        let constraints = f
            .rows()
            .into_iter()
            .map(|row| {
                let bound = -row.constant;
                constraint(ScalarAffineFunction::new(row.terms, 0.0), make(bound))
            })
            .collect();
        Ok(Emission { constraints, ..Emission::default() })
    }
}

/// `x ∈ S` as a constraint on the affine function `1x + 0` (scalar or
/// vector).
pub struct VariableFunctionize;

impl Bridge for VariableFunctionize {
    fn name(&self) -> &str {
        "variable-functionize"
    }

    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>> {
        match *source {
            NodeKey::Constraint(F::SingleVariable, s) => Some(vec![NodeKey::Constraint(F::ScalarAffine, s)]),
            NodeKey::Constraint(F::VectorOfVariables, s) => Some(vec![NodeKey::Constraint(F::VectorAffine, s)]),
            _ => None,
        }
    }

    fn apply(&self, _ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError> {
        let BridgeSource::Constraint { function, set } = source else {
            return Err(not_applicable(self, source));
        };
        let lifted: Function = match function {
            Function::SingleVariable(v) => var(*v).into(),
            Function::VectorOfVariables(_) => function.to_vector_affine().expect("vector of variables").into(),
            _ => return Err(not_applicable(self, source)),
        };
        Ok(Emission { constraints: vec![(lifted, set.clone())], ..Emission::default() })
    }
}

/// `½xᵀQx + aᵀx + b ≤ 0` into `[1, -aᵀx - b, Ux] ∈ RotatedSecondOrderCone`
/// with `Q = UᵀU`. A bound `f ≤ u` is first shifted to `f - u ≤ 0`.
pub struct QuadToRsoc;

const CHOLESKY_TOL: f64 = 1e-10;

/// Rows `U` with `Q = UᵀU` for a symmetric positive semidefinite `Q`, by
/// Cholesky with diagonal pivoting. Rank-deficient `Q` yields fewer rows.
pub fn pivoted_cholesky(q: &[Vec<f64>]) -> Result<Vec<Vec<f64>>, BridgeError> {
    let n = q.len();
    let mut a: Vec<Vec<f64>> = q.to_vec();
    let max_diag = (0..n).map(|i| a[i][i].abs()).fold(0.0, f64::max);
    let tol = CHOLESKY_TOL * max_diag.max(1.0);
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut rows = Vec::new();
    while !remaining.is_empty() {
        let (pos, &p) = remaining
            .iter()
            .enumerate()
            .max_by(|x, y| a[*x.1][*x.1].total_cmp(&a[*y.1][*y.1]).then(y.0.cmp(&x.0)))
            .expect("non-empty");
        if a[p][p] <= tol {
            for &i in &remaining {
                for &j in &remaining {
                    if a[i][j].abs() > tol {
                        return Err(BridgeError::NotPositiveSemidefinite);
                    }
                }
            }
            break;
        }
        remaining.remove(pos);
        let pivot = a[p][p].sqrt();
        let mut l = vec![0.0; n];
        l[p] = pivot;
        for &i in &remaining {
            l[i] = a[i][p] / pivot;
        }
        for &i in &remaining {
            for &j in &remaining {
                a[i][j] -= l[i] * l[j];
            }
        }
        rows.push(l);
    }
    Ok(rows)
}

impl Bridge for QuadToRsoc {
    fn name(&self) -> &str {
        "quad-to-rsoc"
    }

    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>> {
        match source {
            NodeKey::Constraint(F::ScalarQuadratic, S::LessThan) => {
                Some(vec![NodeKey::Constraint(F::VectorAffine, S::RotatedSecondOrderCone)])
            }
            _ => None,
        }
    }

    fn apply(&self, _ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError> {
        let BridgeSource::Constraint { function: Function::ScalarQuadratic(f), set: SetSpec::LessThan { upper } } =
            source
        else {
            return Err(not_applicable(self, source));
        };
        let f: ScalarQuadraticFunction = f.canonical();
        let mut qvars: Vec<VariableIndex> =
            f.quadratic_terms.iter().flat_map(|t| [t.variable1, t.variable2]).collect();
        qvars.sort();
        qvars.dedup();
        let pos = |v: VariableIndex| qvars.binary_search(&v).expect("collected above");
        let n = qvars.len();
        let mut q = vec![vec![0.0; n]; n];
        for t in &f.quadratic_terms {
            let (i, j) = (pos(t.variable1), pos(t.variable2));
            q[i][j] += t.coefficient;
            if i != j {
                q[j][i] += t.coefficient;
            }
        }
        let u = pivoted_cholesky(&q)?;
        let linear = ScalarAffineFunction::new(f.affine_terms.clone(), f.constant - upper);
        let mut rows = vec![constant(1.0), linear.scaled(-1.0)];
        for r in &u {
            rows.push(ScalarAffineFunction::from_pairs(
                r.iter().zip(&qvars).filter(|(c, _)| **c != 0.0).map(|(c, v)| (*c, *v)),
                0.0,
            ));
        }
        let dimension = rows.len();
        Ok(Emission {
            constraints: vec![constraint(
                VectorAffineFunction::from_rows(&rows),
                SetSpec::RotatedSecondOrderCone { dimension },
            )],
            ..Emission::default()
        })
    }
}

/// `(a, b, x) ↦ ((a + b)/√2, (a - b)/√2, x)`. The map is its own inverse.
pub fn rotate_leading_pair(f: &VectorAffineFunction) -> VectorAffineFunction {
    let mut rows = f.rows();
    let a = rows[0].clone();
    let b = rows[1].clone();
    rows[0] = a.scaled(1.0 / SQRT_2).add_scaled(1.0 / SQRT_2, &b);
    rows[1] = a.scaled(1.0 / SQRT_2).add_scaled(-1.0 / SQRT_2, &b);
    VectorAffineFunction::from_rows(&rows)
}

fn is_vector_affine_like(f: F) -> bool {
    matches!(f, F::VectorOfVariables | F::VectorAffine)
}

/// Rotated second-order cone into second-order cone.
pub struct RsocToSoc;

impl Bridge for RsocToSoc {
    fn name(&self) -> &str {
        "rsoc-to-soc"
    }

    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>> {
        match *source {
            NodeKey::Constraint(f, S::RotatedSecondOrderCone) if is_vector_affine_like(f) => {
                Some(vec![NodeKey::Constraint(F::VectorAffine, S::SecondOrderCone)])
            }
            _ => None,
        }
    }

    fn apply(&self, _ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError> {
        let BridgeSource::Constraint { function, set: SetSpec::RotatedSecondOrderCone { dimension } } = source else {
            return Err(not_applicable(self, source));
        };
        let f = function.to_vector_affine().ok_or_else(|| not_applicable(self, source))?;
        Ok(Emission {
            constraints: vec![constraint(
                rotate_leading_pair(&f),
                SetSpec::SecondOrderCone { dimension: *dimension },
            )],
            ..Emission::default()
        })
    }
}

/// Second-order cone (dimension ≥ 2) into rotated second-order cone.
pub struct SocToRsoc;

impl Bridge for SocToRsoc {
    fn name(&self) -> &str {
        "soc-to-rsoc"
    }

    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>> {
        match *source {
            NodeKey::Constraint(f, S::SecondOrderCone) if is_vector_affine_like(f) => {
                Some(vec![NodeKey::Constraint(F::VectorAffine, S::RotatedSecondOrderCone)])
            }
            _ => None,
        }
    }

    fn applicable(&self, source: &BridgeSource) -> bool {
        matches!(source, BridgeSource::Constraint { function, set: SetSpec::SecondOrderCone { dimension } }
            if *dimension >= 2 && is_vector_affine_like(function.function_type()))
    }

    fn apply(&self, _ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError> {
        if !self.applicable(source) {
            return Err(not_applicable(self, source));
        }
        let BridgeSource::Constraint { function, set } = source else { unreachable!() };
        let f = function.to_vector_affine().expect("checked");
        Ok(Emission {
            constraints: vec![constraint(
                rotate_leading_pair(&f),
                SetSpec::RotatedSecondOrderCone { dimension: set.dimension() },
            )],
            ..Emission::default()
        })
    }
}

/// `min f(x)` into `min y` subject to `f(x) - y ≤ 0` (for `max`,
/// `max y` subject to `y - f(x) ≤ 0`), with a new free `y`.
pub struct ObjectiveSlack;

impl Bridge for ObjectiveSlack {
    fn name(&self) -> &str {
        "objective-slack"
    }

    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>> {
        match source {
            NodeKey::Objective(F::ScalarQuadratic) => Some(vec![
                NodeKey::Objective(F::SingleVariable),
                NodeKey::Variable(S::Reals),
                NodeKey::Constraint(F::ScalarQuadratic, S::LessThan),
            ]),
            _ => None,
        }
    }

    fn apply(&self, ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError> {
        let BridgeSource::Objective { sense, function: function @ Function::ScalarQuadratic(_) } = source else {
            return Err(not_applicable(self, source));
        };
        let y = ctx.add_variable();
        let gap = match sense {
            ObjectiveSense::Min => function.plus_affine(-1.0, &var(y)),
            ObjectiveSense::Max => function.negated_scalar().and_then(|g| g.plus_affine(1.0, &var(y))),
            ObjectiveSense::Feasibility => return Err(not_applicable(self, source)),
        }
        .expect("scalar function");
        Ok(Emission {
            constraints: vec![constraint(gap, SetSpec::LessThan { upper: 0.0 })],
            objective: Some((*sense, Function::SingleVariable(y))),
            witnesses: vec![(y, Witness::Value(function.clone()))],
            ..Emission::default()
        })
    }
}

/// Single-variable objective into a scalar affine one.
pub struct ObjectiveFunctionize;

impl Bridge for ObjectiveFunctionize {
    fn name(&self) -> &str {
        "objective-functionize"
    }

    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>> {
        match source {
            NodeKey::Objective(F::SingleVariable) => Some(vec![NodeKey::Objective(F::ScalarAffine)]),
            _ => None,
        }
    }

    fn apply(&self, _ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError> {
        let BridgeSource::Objective { sense, function: Function::SingleVariable(v) } = source else {
            return Err(not_applicable(self, source));
        };
        Ok(Emission { objective: Some((*sense, var(*v).into())), ..Emission::default() })
    }
}

/// Free `x` into `x⁺ - x⁻` with `[x⁺; x⁻] ∈ Nonnegatives`.
pub struct FreeVariable;

impl Bridge for FreeVariable {
    fn name(&self) -> &str {
        "free-variable"
    }

    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>> {
        match source {
            NodeKey::Variable(S::Reals) => Some(vec![NodeKey::Variable(S::Nonnegatives)]),
            _ => None,
        }
    }

    fn apply(&self, ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError> {
        let BridgeSource::Variables { variables, set: SetSpec::Reals { .. } } = source else {
            return Err(not_applicable(self, source));
        };
        let n = variables.len();
        let parts = ctx.add_constrained_variables(SetSpec::Nonnegatives { dimension: 2 * n });
        let mut em = Emission::default();
        for (i, &x) in variables.iter().enumerate() {
            let (pos, neg) = (parts[i], parts[n + i]);
            em.substitutions
                .push((x, ScalarAffineFunction::new(vec![AffineTerm::new(1.0, pos), AffineTerm::new(-1.0, neg)], 0.0)));
            em.witnesses.push((pos, Witness::PositivePart(x)));
            em.witnesses.push((neg, Witness::NegativePart(x)));
        }
        Ok(em)
    }
}

/// Square PSD form into triangle form plus `X_ij = X_ji` equalities.
pub struct PsdSquareToTriangle;

impl Bridge for PsdSquareToTriangle {
    fn name(&self) -> &str {
        "psd-square-to-triangle"
    }

    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>> {
        match *source {
            NodeKey::Constraint(f, S::PositiveSemidefiniteConeSquare) if is_vector_affine_like(f) => Some(vec![
                NodeKey::Constraint(f, S::PositiveSemidefiniteConeTriangle),
                NodeKey::Constraint(F::ScalarAffine, S::EqualTo),
            ]),
            _ => None,
        }
    }

    fn apply(&self, _ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError> {
        let BridgeSource::Constraint { function, set: SetSpec::PositiveSemidefiniteConeSquare { side_dimension: d } } =
            source
        else {
            return Err(not_applicable(self, source));
        };
        let d = *d;
        let triangle_set = SetSpec::PositiveSemidefiniteConeTriangle { side_dimension: d };
        let upper: Vec<usize> = (0..d).flat_map(|j| (0..=j).map(move |i| i + j * d)).collect();
        let pairs: Vec<(usize, usize)> =
            (0..d).flat_map(|j| (0..j).map(move |i| (i + j * d, j + i * d))).collect();
        let mut em = Emission::default();
        match function {
            Function::VectorOfVariables(vars) => {
                em.constraints.push((Function::VectorOfVariables(upper.iter().map(|&k| vars[k]).collect()), triangle_set));
                for (a, b) in pairs {
                    let diff = var(vars[a]).add_scaled(-1.0, &var(vars[b]));
                    em.constraints.push(constraint(diff, SetSpec::EqualTo { value: 0.0 }));
                }
            }
            Function::VectorAffine(f) => {
                let rows = f.rows();
                let tri: Vec<&ScalarAffineFunction> = upper.iter().map(|&k| &rows[k]).collect();
                em.constraints.push(constraint(VectorAffineFunction::from_rows(tri), triangle_set));
                for (a, b) in pairs {
                    let diff = rows[a].add_scaled(-1.0, &rows[b]);
                    let value = -diff.constant;
                    em.constraints.push(constraint(ScalarAffineFunction::new(diff.terms, 0.0), SetSpec::EqualTo { value }));
                }
            }
            _ => return Err(not_applicable(self, source)),
        }
        Ok(em)
    }
}
