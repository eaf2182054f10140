//! Feasibility preservation of single bridges: the original point is
//! feasible exactly when its witness extension satisfies everything the
//! bridge emits.

use mathopt::bridges::{apply_bridge, evaluate_witness, Bridge, BridgeSource, NodeKey};
use mathopt::model::{Assignment, Function, FunctionType, Model, ObjectiveSense, VariableIndex};
use mathopt::sets::{membership, SetSpec, SetType};
use rand::Rng;

use super::random::{near_boundary, random_assignment, random_function, random_set, realize, sample_point};

pub const TOL: f64 = 1e-8;

#[derive(Debug, Default)]
pub struct BridgeReport {
    pub name: String,
    pub instances: usize,
    pub feasible: usize,
    pub infeasible: usize,
    pub skipped: usize,
    pub counterexamples: Vec<String>,
}

/// Every node the bridge accepts.
pub fn source_nodes(bridge: &dyn Bridge) -> Vec<NodeKey> {
    let functions = [
        FunctionType::SingleVariable,
        FunctionType::VectorOfVariables,
        FunctionType::ScalarAffine,
        FunctionType::VectorAffine,
        FunctionType::ScalarQuadratic,
        FunctionType::VectorQuadratic,
    ];
    let mut nodes = Vec::new();
    for f in functions {
        for s in SetType::ALL {
            if f.is_scalar() == s.is_scalar() {
                nodes.push(NodeKey::Constraint(f, s));
            }
        }
        nodes.push(NodeKey::Objective(f));
    }
    nodes.extend(SetType::ALL.iter().map(|&s| NodeKey::Variable(s)));
    nodes.retain(|n| bridge.targets(n).is_some());
    nodes
}

struct Instance {
    model: Model,
    source: BridgeSource,
    x: Assignment,
    /// Original feasibility; `None` when too close to the boundary.
    feasible: Option<bool>,
}

/// A random source object; `draw` evaluates it at fresh points.
enum Template {
    Constraint { model: Model, function: Function, set: SetSpec },
    Objective { model: Model, sense: ObjectiveSense, function: Function },
    Variables { model: Model, variables: Vec<VariableIndex>, set: SetSpec },
}

fn template(node: NodeKey, rng: &mut impl Rng) -> Template {
    let mut model = Model::new();
    match node {
        NodeKey::Constraint(ft, st) => {
            let set = random_set(st, rng);
            let vars = model.add_variables(set.dimension().max(3) + 1);
            let function = random_function(ft, set.dimension(), &vars, rng);
            Template::Constraint { model, function, set }
        }
        NodeKey::Objective(ft) => {
            let vars = model.add_variables(3);
            let sense = if rng.random_bool(0.5) { ObjectiveSense::Min } else { ObjectiveSense::Max };
            let function = random_function(ft, 1, &vars, rng);
            Template::Objective { model, sense, function }
        }
        NodeKey::Variable(st) => {
            let set = random_set(st, rng);
            let variables = model.add_variables(set.dimension());
            Template::Variables { model, variables, set }
        }
    }
}

fn draw(t: &Template, rng: &mut impl Rng) -> Instance {
    match t {
        Template::Constraint { model, function, set } => {
            let vars: Vec<VariableIndex> = model.variables().collect();
            let mut x = random_assignment(&vars, rng);
            let target = sample_point(set, rng);
            let f = realize(function.clone(), &mut x, &target);
            let value = f.evaluate(&x).unwrap().into_vec();
            let feasible = (!near_boundary(set, &value, rng)).then(|| membership(set, &value, TOL).unwrap());
            Instance {
                model: model.clone(),
                source: BridgeSource::Constraint { function: f, set: set.clone() },
                x,
                feasible,
            }
        }
        Template::Objective { model, sense, function } => {
            let vars: Vec<VariableIndex> = model.variables().collect();
            Instance {
                model: model.clone(),
                source: BridgeSource::Objective { sense: *sense, function: function.clone() },
                x: random_assignment(&vars, rng),
                feasible: Some(true),
            }
        }
        Template::Variables { model, variables, set } => {
            let point = sample_point(set, rng);
            let x: Assignment = variables.iter().copied().zip(point.iter().copied()).collect();
            let feasible = (!near_boundary(set, &point, rng)).then(|| membership(set, &point, TOL).unwrap());
            Instance {
                model: model.clone(),
                source: BridgeSource::Variables { variables: variables.clone(), set: set.clone() },
                x,
                feasible,
            }
        }
    }
}

/// Feasibility of the bridged side at the witness extension of `x`, or a
/// description of why it could not be evaluated.
fn bridged_feasible(bridge: &dyn Bridge, inst: &mut Instance) -> Result<bool, String> {
    let applied = apply_bridge(bridge, &mut inst.model, &inst.source).map_err(|e| format!("apply failed: {e}"))?;
    let mut ext = inst.x.clone();
    for (v, w) in &applied.emission.witnesses {
        let value = evaluate_witness(w, &ext).map_err(|e| format!("witness failed: {e}"))?;
        ext.insert(*v, value);
    }
    let created = applied.new_variables.iter().chain(applied.new_blocks.iter().flat_map(|(vs, _)| vs));
    if let Some(v) = created.clone().find(|v| !ext.contains_key(v)) {
        return Err(format!("no witness for new variable {v}"));
    }
    let mut ok = true;
    for (f, s) in &applied.emission.constraints {
        let value = f.evaluate(&ext).map_err(|e| e.to_string())?.into_vec();
        ok &= membership(s, &value, TOL).map_err(|e| e.to_string())?;
    }
    for (vars, s) in &applied.new_blocks {
        let value: Vec<f64> = vars.iter().map(|v| ext[v]).collect();
        ok &= membership(s, &value, TOL).map_err(|e| e.to_string())?;
    }
    for (v, e) in &applied.emission.substitutions {
        let image = e.value(&ext).map_err(|e| e.to_string())?;
        ok &= (ext[v] - image).abs() <= TOL * (1.0 + image.abs());
    }
    if let (BridgeSource::Objective { sense, function }, Some((new_sense, g))) =
        (&inst.source, &applied.emission.objective)
    {
        let before = function.evaluate(&inst.x).unwrap().as_scalar().unwrap();
        let after = g.evaluate(&ext).map_err(|e| e.to_string())?.as_scalar().unwrap();
        if sense != new_sense || (before - after).abs() > TOL * (1.0 + before.abs()) {
            return Err(format!("objective changed: {sense:?} {before} became {new_sense:?} {after}"));
        }
    }
    Ok(ok)
}

/// `instances` random source objects, each checked at `points` sampled points.
pub fn check_bridge(bridge: &dyn Bridge, instances: usize, points: usize, rng: &mut impl Rng) -> BridgeReport {
    let nodes = source_nodes(bridge);
    let mut report = BridgeReport { name: bridge.name().to_string(), ..BridgeReport::default() };
    assert!(!nodes.is_empty(), "{} accepts no node", bridge.name());
    let mut k = 0;
    while report.instances < instances {
        let node = nodes[k % nodes.len()];
        k += 1;
        let t = template(node, rng);
        // Applicability depends on the source's shape, not on the point.
        if !bridge.applicable(&draw(&t, rng).source) {
            continue;
        }
        report.instances += 1;
        for _ in 0..points {
            let mut inst = draw(&t, rng);
            let Some(expected) = inst.feasible else {
                report.skipped += 1;
                continue;
            };
            match bridged_feasible(bridge, &mut inst) {
                Ok(got) if got == expected => {
                    if expected {
                        report.feasible += 1;
                    } else {
                        report.infeasible += 1;
                    }
                }
                Ok(got) => report.counterexamples.push(format!(
                    "{}: original {expected}, bridged {got}: {:?} at {:?}",
                    bridge.name(),
                    inst.source,
                    inst.x
                )),
                Err(e) => report.counterexamples.push(format!("{}: {e}: {:?}", bridge.name(), inst.source)),
            }
        }
    }
    report
}
