//! Random sets, points, functions, and models.

use mathopt::model::{
    AffineTerm, Assignment, Function, FunctionType, Model, ObjectiveSense, QuadraticTerm, ScalarAffineFunction,
    ScalarQuadraticFunction, VariableIndex, VectorAffineFunction, VectorAffineTerm, VectorQuadraticFunction,
    VectorQuadraticTerm,
};
use mathopt::sets::{membership, ActivationValue, SetSpec, SetType};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

fn uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

/// A valid set of type `t` with small dimensions.
pub fn random_set(t: SetType, rng: &mut impl Rng) -> SetSpec {
    use SetType as T;
    let dim = |rng: &mut dyn rand::RngCore, lo: usize, hi: usize| rng.random_range(lo..=hi);
    match t {
        T::LessThan => SetSpec::LessThan { upper: uniform(rng, -2.0, 2.0) },
        T::GreaterThan => SetSpec::GreaterThan { lower: uniform(rng, -2.0, 2.0) },
        T::EqualTo => SetSpec::EqualTo { value: uniform(rng, -2.0, 2.0) },
        T::Interval => {
            let lower = uniform(rng, -2.0, 1.0);
            SetSpec::Interval { lower, upper: lower + uniform(rng, 0.5, 3.0) }
        }
        T::Integer => SetSpec::Integer,
        T::ZeroOne => SetSpec::ZeroOne,
        T::Semiinteger => {
            let lower = rng.random_range(1..=2) as f64;
            SetSpec::Semiinteger { lower, upper: lower + rng.random_range(1..=3) as f64 }
        }
        T::Semicontinuous => {
            let lower = uniform(rng, 0.5, 1.5);
            SetSpec::Semicontinuous { lower, upper: lower + uniform(rng, 0.5, 2.0) }
        }
        T::Zeros => SetSpec::Zeros { dimension: dim(rng, 1, 4) },
        T::Reals => SetSpec::Reals { dimension: dim(rng, 1, 4) },
        T::Nonpositives => SetSpec::Nonpositives { dimension: dim(rng, 1, 4) },
        T::Nonnegatives => SetSpec::Nonnegatives { dimension: dim(rng, 1, 4) },
        T::SecondOrderCone => SetSpec::SecondOrderCone { dimension: dim(rng, 1, 5) },
        T::RotatedSecondOrderCone => SetSpec::RotatedSecondOrderCone { dimension: dim(rng, 2, 5) },
        T::GeometricMeanCone => SetSpec::GeometricMeanCone { dimension: dim(rng, 2, 4) },
        T::ExponentialCone => SetSpec::ExponentialCone,
        T::DualExponentialCone => SetSpec::DualExponentialCone,
        T::PowerCone => SetSpec::PowerCone { exponent: uniform(rng, 0.1, 0.9) },
        T::DualPowerCone => SetSpec::DualPowerCone { exponent: uniform(rng, 0.1, 0.9) },
        T::NormOneCone => SetSpec::NormOneCone { dimension: dim(rng, 1, 4) },
        T::NormInfinityCone => SetSpec::NormInfinityCone { dimension: dim(rng, 1, 4) },
        T::RelativeEntropyCone => SetSpec::RelativeEntropyCone { dimension: 2 * dim(rng, 1, 2) + 1 },
        T::PositiveSemidefiniteConeTriangle => SetSpec::PositiveSemidefiniteConeTriangle { side_dimension: dim(rng, 1, 3) },
        T::PositiveSemidefiniteConeSquare => SetSpec::PositiveSemidefiniteConeSquare { side_dimension: dim(rng, 1, 3) },
        T::RootDetConeTriangle => SetSpec::RootDetConeTriangle { side_dimension: dim(rng, 1, 3) },
        T::RootDetConeSquare => SetSpec::RootDetConeSquare { side_dimension: dim(rng, 1, 3) },
        T::LogDetConeTriangle => SetSpec::LogDetConeTriangle { side_dimension: dim(rng, 1, 3) },
        T::LogDetConeSquare => SetSpec::LogDetConeSquare { side_dimension: dim(rng, 1, 3) },
        T::NormSpectralCone => SetSpec::NormSpectralCone { row_dim: dim(rng, 1, 3), column_dim: dim(rng, 1, 3) },
        T::NormNuclearCone => SetSpec::NormNuclearCone { row_dim: dim(rng, 1, 3), column_dim: dim(rng, 1, 3) },
        T::Complements => SetSpec::Complements { dimension: 2 * dim(rng, 1, 2) },
        T::IndicatorSet => {
            let inner = [T::LessThan, T::GreaterThan, T::EqualTo, T::Interval][rng.random_range(0..4)];
            let activate_on = if rng.random_bool(0.5) { ActivationValue::One } else { ActivationValue::Zero };
            SetSpec::IndicatorSet { activate_on, set: Box::new(random_set(inner, rng)) }
        }
        T::Sos1 | T::Sos2 => {
            let n = dim(rng, 2, 4);
            let mut weights: Vec<f64> = (1..=n).map(|w| w as f64).collect();
            weights.shuffle(rng);
            if t == T::Sos1 {
                SetSpec::Sos1 { weights }
            } else {
                SetSpec::Sos2 { weights }
            }
        }
    }
}

pub fn random_vector(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..n).map(|_| uniform(rng, -3.0, 3.0)).collect()
}

/// Random `d x d` positive semidefinite matrix `B Bᵀ`, sometimes rank deficient.
pub fn random_psd(d: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    let rank = if rng.random_bool(0.2) && d > 1 { d - 1 } else { d };
    let b: Vec<Vec<f64>> = (0..d).map(|_| (0..rank).map(|_| uniform(rng, -1.5, 1.5)).collect()).collect();
    (0..d).map(|i| (0..d).map(|j| (0..rank).map(|k| b[i][k] * b[j][k]).sum()).collect()).collect()
}

fn determinant(m: &[Vec<f64>]) -> f64 {
    let d = m.len();
    nalgebra::DMatrix::from_fn(d, d, |i, j| m[i][j]).determinant()
}

pub fn pack_triangle(m: &[Vec<f64>]) -> Vec<f64> {
    let d = m.len();
    (0..d).flat_map(|j| (0..=j).map(move |i| (i, j))).map(|(i, j)| m[i][j]).collect()
}

pub fn pack_square(m: &[Vec<f64>]) -> Vec<f64> {
    let d = m.len();
    (0..d).flat_map(|j| (0..d).map(move |i| (i, j))).map(|(i, j)| m[i][j]).collect()
}

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn singular_values(x: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    nalgebra::DMatrix::from_column_slice(rows, cols, x).singular_values().iter().copied().collect()
}

/// A point inside `set`, built from the set's defining inequality.
pub fn feasible_point(set: &SetSpec, rng: &mut impl Rng) -> Vec<f64> {
    let slack = |rng: &mut dyn rand::RngCore| rng.random_range(0.0..1.0);
    match set {
        SetSpec::LessThan { upper } => vec![upper - slack(rng)],
        SetSpec::GreaterThan { lower } => vec![lower + slack(rng)],
        SetSpec::EqualTo { value } => vec![*value],
        SetSpec::Interval { lower, upper } => vec![uniform(rng, *lower, *upper)],
        SetSpec::Integer => vec![rng.random_range(-3..=3) as f64],
        SetSpec::ZeroOne => vec![rng.random_range(0..=1) as f64],
        SetSpec::Semiinteger { lower, upper } => {
            if rng.random_bool(0.3) {
                vec![0.0]
            } else {
                vec![rng.random_range(*lower as i64..=*upper as i64) as f64]
            }
        }
        SetSpec::Semicontinuous { lower, upper } => {
            if rng.random_bool(0.3) {
                vec![0.0]
            } else {
                vec![uniform(rng, *lower, *upper)]
            }
        }
        SetSpec::Zeros { dimension } => vec![0.0; *dimension],
        SetSpec::Reals { dimension } => random_vector(*dimension, rng),
        SetSpec::Nonpositives { dimension } => random_vector(*dimension, rng).iter().map(|v| -v.abs()).collect(),
        SetSpec::Nonnegatives { dimension } => random_vector(*dimension, rng).iter().map(|v| v.abs()).collect(),
        SetSpec::SecondOrderCone { dimension } => {
            let x = random_vector(dimension - 1, rng);
            let mut p = vec![norm2(&x) + slack(rng)];
            p.extend(x);
            p
        }
        SetSpec::RotatedSecondOrderCone { dimension } => {
            let x = random_vector(dimension - 2, rng);
            let t = uniform(rng, 0.1, 2.0);
            let u = x.iter().map(|v| v * v).sum::<f64>() / (2.0 * t) + slack(rng);
            let mut p = vec![t, u];
            p.extend(x);
            p
        }
        SetSpec::GeometricMeanCone { dimension } => {
            let x: Vec<f64> = (1..*dimension).map(|_| uniform(rng, 0.0, 3.0)).collect();
            let mean = (x.iter().map(|v| v.ln()).sum::<f64>() / x.len() as f64).exp();
            let mut p = vec![mean - slack(rng)];
            p.extend(x);
            p
        }
        SetSpec::ExponentialCone => {
            let (x, y) = (uniform(rng, -2.0, 2.0), uniform(rng, 0.1, 2.0));
            vec![x, y, y * (x / y).exp() + slack(rng)]
        }
        SetSpec::DualExponentialCone => {
            let (u, v) = (uniform(rng, -2.0, -0.1), uniform(rng, -2.0, 2.0));
            vec![u, v, -u * (v / u).exp() / std::f64::consts::E + slack(rng)]
        }
        SetSpec::PowerCone { exponent: a } => {
            let (x, y) = (uniform(rng, 0.0, 3.0), uniform(rng, 0.0, 3.0));
            let bound = x.powf(*a) * y.powf(1.0 - a);
            vec![x, y, bound * uniform(rng, -0.99, 0.99)]
        }
        SetSpec::DualPowerCone { exponent: a } => {
            let (u, v) = (uniform(rng, 0.0, 3.0), uniform(rng, 0.0, 3.0));
            let bound = (u / a).powf(*a) * (v / (1.0 - a)).powf(1.0 - a);
            vec![u, v, bound * uniform(rng, -0.99, 0.99)]
        }
        SetSpec::NormOneCone { dimension } => {
            let x = random_vector(dimension - 1, rng);
            let mut p = vec![x.iter().map(|v| v.abs()).sum::<f64>() + slack(rng)];
            p.extend(x);
            p
        }
        SetSpec::NormInfinityCone { dimension } => {
            let x = random_vector(dimension - 1, rng);
            let mut p = vec![x.iter().fold(0.0_f64, |m, v| m.max(v.abs())) + slack(rng)];
            p.extend(x);
            p
        }
        SetSpec::RelativeEntropyCone { dimension } => {
            let n = (dimension - 1) / 2;
            let v: Vec<f64> = (0..n).map(|_| uniform(rng, 0.1, 3.0)).collect();
            let w: Vec<f64> = (0..n).map(|_| uniform(rng, 0.1, 3.0)).collect();
            let total: f64 = v.iter().zip(&w).map(|(vi, wi)| wi * (wi / vi).ln()).sum();
            let mut p = vec![total + slack(rng)];
            p.extend(v);
            p.extend(w);
            p
        }
        SetSpec::PositiveSemidefiniteConeTriangle { side_dimension } => pack_triangle(&random_psd(*side_dimension, rng)),
        SetSpec::PositiveSemidefiniteConeSquare { side_dimension } => pack_square(&random_psd(*side_dimension, rng)),
        SetSpec::RootDetConeTriangle { side_dimension: d } | SetSpec::RootDetConeSquare { side_dimension: d } => {
            let m = random_psd(*d, rng);
            let mut p = vec![determinant(&m).max(0.0).powf(1.0 / *d as f64) - slack(rng)];
            if matches!(set, SetSpec::RootDetConeTriangle { .. }) {
                p.extend(pack_triangle(&m));
            } else {
                p.extend(pack_square(&m));
            }
            p
        }
        SetSpec::LogDetConeTriangle { side_dimension: d } | SetSpec::LogDetConeSquare { side_dimension: d } => {
            let mut m = random_psd(*d, rng);
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += 0.5;
            }
            let u = uniform(rng, 0.2, 2.0);
            let scaled: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|v| v / u).collect()).collect();
            let mut p = vec![u * determinant(&scaled).ln() - slack(rng), u];
            if matches!(set, SetSpec::LogDetConeTriangle { .. }) {
                p.extend(pack_triangle(&m));
            } else {
                p.extend(pack_square(&m));
            }
            p
        }
        SetSpec::NormSpectralCone { row_dim, column_dim } | SetSpec::NormNuclearCone { row_dim, column_dim } => {
            let x = random_vector(row_dim * column_dim, rng);
            let s = singular_values(&x, *row_dim, *column_dim);
            let norm = if matches!(set, SetSpec::NormSpectralCone { .. }) {
                s.iter().fold(0.0_f64, |m, v| m.max(*v))
            } else {
                s.iter().sum()
            };
            let mut p = vec![norm + slack(rng)];
            p.extend(x);
            p
        }
        SetSpec::Complements { dimension } => {
            let n = dimension / 2;
            let mut p = vec![0.0; n];
            p.extend(random_vector(n, rng));
            p
        }
        SetSpec::IndicatorSet { activate_on, set } => {
            if rng.random_bool(0.5) {
                let mut p = vec![activate_on.value()];
                p.extend(feasible_point(set, rng));
                p
            } else {
                let mut p = vec![1.0 - activate_on.value()];
                p.extend(random_vector(set.dimension(), rng));
                p
            }
        }
        SetSpec::Sos1 { weights } => {
            let mut p = vec![0.0; weights.len()];
            p[rng.random_range(0..weights.len())] = uniform(rng, -3.0, 3.0);
            p
        }
        SetSpec::Sos2 { weights } => {
            let mut order: Vec<usize> = (0..weights.len()).collect();
            order.sort_by(|a, b| weights[*a].total_cmp(&weights[*b]));
            let k = rng.random_range(0..weights.len() - 1);
            let mut p = vec![0.0; weights.len()];
            p[order[k]] = uniform(rng, -3.0, 3.0);
            p[order[k + 1]] = uniform(rng, -3.0, 3.0);
            p
        }
    }
}

/// Either a feasible point or a random one (usually infeasible).
pub fn sample_point(set: &SetSpec, rng: &mut impl Rng) -> Vec<f64> {
    if rng.random_bool(0.5) {
        feasible_point(set, rng)
    } else {
        let mut p = feasible_point(set, rng);
        let k = rng.random_range(0..p.len());
        p[k] += uniform(rng, -2.0, 2.0);
        if rng.random_bool(0.5) {
            p = random_vector(p.len(), rng);
        }
        p
    }
}

fn lower_dimensional(set: &SetSpec) -> bool {
    matches!(
        set.set_type(),
        SetType::EqualTo
            | SetType::Integer
            | SetType::ZeroOne
            | SetType::Semiinteger
            | SetType::Semicontinuous
            | SetType::Zeros
            | SetType::Complements
            | SetType::IndicatorSet
            | SetType::Sos1
            | SetType::Sos2
            | SetType::PositiveSemidefiniteConeSquare
            | SetType::RootDetConeSquare
            | SetType::LogDetConeSquare
    )
}

/// True when `y` is within about 1e-6 of the boundary of `set`: loosening
/// the tolerance changes the answer, or (for full-dimensional sets) a small
/// perturbation does.
pub fn near_boundary(set: &SetSpec, y: &[f64], rng: &mut impl Rng) -> bool {
    let inside = membership(set, y, 0.0).unwrap();
    if membership(set, y, 1e-6).unwrap() != inside {
        return true;
    }
    if lower_dimensional(set) {
        return false;
    }
    for k in 0..2 * y.len() + 8 {
        let mut z = y.to_vec();
        if k < 2 * y.len() {
            z[k / 2] += if k % 2 == 0 { 1e-6 } else { -1e-6 };
        } else {
            for v in &mut z {
                *v += uniform(rng, -1e-6, 1e-6);
            }
        }
        if membership(set, &z, 0.0).unwrap() != inside {
            return true;
        }
    }
    false
}

pub fn random_affine(vars: &[VariableIndex], rng: &mut impl Rng) -> ScalarAffineFunction {
    let k = rng.random_range(1..=vars.len().min(3));
    let chosen: Vec<VariableIndex> = vars.choose_multiple(rng, k).copied().collect();
    let pairs: Vec<(f64, VariableIndex)> = chosen.into_iter().map(|v| (uniform(rng, -2.0, 2.0), v)).collect();
    ScalarAffineFunction::from_pairs(pairs, uniform(rng, -1.0, 1.0))
}

/// `½ xᵀQx` with `Q` positive semidefinite over up to two of `vars`.
pub fn random_convex_quadratic(vars: &[VariableIndex], rng: &mut impl Rng) -> Vec<QuadraticTerm> {
    let k = vars.len().min(2);
    let chosen: Vec<VariableIndex> = vars.choose_multiple(rng, k).copied().collect();
    let q = random_psd(k, rng);
    let mut terms = Vec::new();
    for i in 0..k {
        for j in i..k {
            terms.push(QuadraticTerm::new(q[i][j], chosen[i], chosen[j]));
        }
    }
    terms
}

/// A random function of type `ft` with `dim` outputs over `vars`
/// (`vars.len() >= dim` for variable-only types).
pub fn random_function(ft: FunctionType, dim: usize, vars: &[VariableIndex], rng: &mut impl Rng) -> Function {
    match ft {
        FunctionType::SingleVariable => Function::SingleVariable(vars[0]),
        FunctionType::VectorOfVariables => Function::VectorOfVariables(vars[..dim].to_vec()),
        FunctionType::ScalarAffine => Function::ScalarAffine(random_affine(vars, rng)),
        FunctionType::ScalarQuadratic => {
            let a = random_affine(vars, rng);
            Function::ScalarQuadratic(ScalarQuadraticFunction::new(
                random_convex_quadratic(vars, rng),
                a.terms,
                a.constant,
            ))
        }
        FunctionType::VectorAffine => {
            let rows: Vec<ScalarAffineFunction> = (0..dim).map(|_| random_affine(vars, rng)).collect();
            Function::VectorAffine(VectorAffineFunction::from_rows(&rows))
        }
        FunctionType::VectorQuadratic => {
            let mut f = VectorQuadraticFunction { quadratic_terms: vec![], affine_terms: vec![], constants: vec![] };
            for i in 0..dim {
                let a = random_affine(vars, rng);
                f.affine_terms.extend(a.terms.into_iter().map(|term| VectorAffineTerm { output_index: i, term }));
                f.quadratic_terms.extend(
                    random_convex_quadratic(vars, rng)
                        .into_iter()
                        .map(|term| VectorQuadraticTerm { output_index: i, term }),
                );
                f.constants.push(a.constant);
            }
            Function::VectorQuadratic(f)
        }
    }
}

/// Adjust `f` (or `x` for variable-only functions) so that `f(x) = target`.
pub fn realize(f: Function, x: &mut Assignment, target: &[f64]) -> Function {
    let value = f.evaluate(x).unwrap().into_vec();
    match f {
        Function::SingleVariable(v) => {
            x.insert(v, target[0]);
            f
        }
        Function::VectorOfVariables(ref vs) => {
            for (v, t) in vs.iter().zip(target) {
                x.insert(*v, *t);
            }
            f
        }
        Function::ScalarAffine(mut g) => {
            g.constant += target[0] - value[0];
            Function::ScalarAffine(g)
        }
        Function::ScalarQuadratic(mut g) => {
            g.constant += target[0] - value[0];
            Function::ScalarQuadratic(g)
        }
        Function::VectorAffine(mut g) => {
            for (i, c) in g.constants.iter_mut().enumerate() {
                *c += target[i] - value[i];
            }
            Function::VectorAffine(g)
        }
        Function::VectorQuadratic(mut g) => {
            for (i, c) in g.constants.iter_mut().enumerate() {
                *c += target[i] - value[i];
            }
            Function::VectorQuadratic(g)
        }
    }
}

pub fn random_assignment(vars: &[VariableIndex], rng: &mut impl Rng) -> Assignment {
    vars.iter().map(|&v| (v, uniform(rng, -2.0, 2.0))).collect()
}

fn function_types_for(set: &SetSpec) -> &'static [FunctionType] {
    if set.is_scalar() {
        &[FunctionType::SingleVariable, FunctionType::ScalarAffine, FunctionType::ScalarQuadratic]
    } else {
        &[FunctionType::VectorOfVariables, FunctionType::VectorAffine, FunctionType::VectorQuadratic]
    }
}

/// A random model drawing constraints from every set type and every
/// function type the set can pair with.
pub fn random_model(rng: &mut impl Rng) -> Model {
    let mut m = Model::new();
    let n = rng.random_range(1..=12);
    let vars = m.add_variables(n);
    for (i, &v) in vars.iter().enumerate() {
        if rng.random_bool(0.7) {
            m.set_variable_name(v, &format!("v{i}")).unwrap();
        }
    }
    for k in 0..rng.random_range(0..=8) {
        let set = random_set(SetType::ALL[rng.random_range(0..SetType::ALL.len())], rng);
        let types = function_types_for(&set);
        let ft = types[rng.random_range(0..types.len())];
        let ft = if ft == FunctionType::VectorOfVariables && set.dimension() > n { FunctionType::VectorAffine } else { ft };
        let mut pool = vars.clone();
        pool.shuffle(rng);
        let f = random_function(ft, set.dimension(), &pool, rng);
        let ci = m.add_constraint(f, set).unwrap();
        if rng.random_bool(0.3) {
            m.set_constraint_name(ci, Some(format!("c{k}"))).unwrap();
        }
    }
    match rng.random_range(0..3) {
        0 => m.set_objective(ObjectiveSense::Feasibility, None).unwrap(),
        r => {
            let sense = if r == 1 { ObjectiveSense::Min } else { ObjectiveSense::Max };
            let ft = [FunctionType::SingleVariable, FunctionType::ScalarAffine, FunctionType::ScalarQuadratic]
                [rng.random_range(0..3)];
            m.set_objective(sense, Some(random_function(ft, 1, &vars, rng))).unwrap();
        }
    }
    m
}

pub fn affine_term(c: f64, v: VariableIndex) -> AffineTerm {
    AffineTerm::new(c, v)
}
