//! Applying chosen bridges to a whole model, and mapping points between the
//! original and the rewritten model.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{
    Assignment, ConstraintIndex, Function, Model, ModelError, ObjectiveSense, ScalarAffineFunction, Substitution,
    VariableIndex,
};
use crate::sets::{SetSpec, SetType};
use crate::targets::Capabilities;

use super::planner::{is_supported, Edge};
use super::{Bridge, BridgeContext, BridgeError, BridgeRegistry, BridgeSource, Emission, NodeKey, Witness};

/// A model rewritten into a target's supported form.
#[derive(Clone, Debug)]
pub struct BridgedModel {
    pub model: Model,
    /// Every substituted-away variable as an affine expression in variables
    /// of the rewritten model.
    pub recovery: BTreeMap<VariableIndex, ScalarAffineFunction>,
    /// For each original constraint, the rewritten-model constraints it
    /// became (including variable blocks created on its behalf).
    pub constraint_map: BTreeMap<ConstraintIndex, Vec<ConstraintIndex>>,
    /// Auxiliary-variable rules in creation order.
    pub witnesses: Vec<(VariableIndex, Witness)>,
    pub original_variables: Vec<VariableIndex>,
    /// Plan cost of each root node of the original model, in processing order.
    pub root_costs: Vec<(NodeKey, f64)>,
}

impl BridgedModel {
    pub fn total_cost(&self) -> f64 {
        self.root_costs.iter().map(|(_, c)| c).sum()
    }

    /// Values of the original variables from values of the rewritten ones.
    pub fn map_primal(&self, bridged: &Assignment) -> Result<Assignment, BridgeError> {
        let mut out = Assignment::new();
        for &v in &self.original_variables {
            let value = match self.recovery.get(&v) {
                Some(e) => e.value(bridged).map_err(missing)?,
                None => *bridged.get(&v).ok_or(BridgeError::MissingAssignment(v))?,
            };
            out.insert(v, value);
        }
        Ok(out)
    }

    /// Values of every rewritten-model variable from values of the original
    /// variables, by evaluating the witnesses in order.
    pub fn extend_primal(&self, original: &Assignment) -> Result<Assignment, BridgeError> {
        let mut values = Assignment::new();
        for &v in &self.original_variables {
            values.insert(v, *original.get(&v).ok_or(BridgeError::MissingAssignment(v))?);
        }
        for (v, w) in &self.witnesses {
            let value = evaluate_witness(w, &values)?;
            values.insert(*v, value);
        }
        let mut out = Assignment::new();
        for v in self.model.variables() {
            out.insert(v, *values.get(&v).ok_or(BridgeError::MissingAssignment(v))?);
        }
        Ok(out)
    }
}

fn missing(e: ModelError) -> BridgeError {
    match e {
        ModelError::MissingAssignment(v) => BridgeError::MissingAssignment(v),
        other => BridgeError::Model(other),
    }
}

pub fn evaluate_witness(w: &Witness, values: &Assignment) -> Result<f64, BridgeError> {
    let get = |v: &VariableIndex| values.get(v).copied().ok_or(BridgeError::MissingAssignment(*v));
    Ok(match w {
        Witness::Value(f) => f
            .evaluate(values)
            .map_err(missing)?
            .as_scalar()
            .expect("witness functions are scalar"),
        Witness::PositivePart(v) => get(v)?.max(0.0),
        Witness::NegativePart(v) => (-get(v)?).max(0.0),
    })
}

/// Records variable requests during a bridge's `apply`.
struct Requests<'m> {
    model: &'m mut Model,
    free: Vec<VariableIndex>,
    blocks: Vec<(Vec<VariableIndex>, SetSpec)>,
}

impl BridgeContext for Requests<'_> {
    fn add_variable(&mut self) -> VariableIndex {
        let v = self.model.add_variable();
        self.free.push(v);
        v
    }

    fn add_constrained_variables(&mut self, set: SetSpec) -> Vec<VariableIndex> {
        let vars = self.model.add_variables(set.dimension());
        self.blocks.push((vars.clone(), set));
        vars
    }
}

struct Rewriter<'a> {
    registry: &'a BridgeRegistry,
    caps: &'a Capabilities,
    out: Model,
    subst: Substitution,
    witnesses: Vec<(VariableIndex, Witness)>,
}

fn substitute_affine(e: &ScalarAffineFunction, map: &Substitution) -> ScalarAffineFunction {
    Function::ScalarAffine(e.clone())
        .substitute(map)
        .to_scalar_affine()
        .expect("affine stays affine")
}

impl Rewriter<'_> {
    fn plan_edge(&self, key: NodeKey) -> Result<Edge, BridgeError> {
        let plan = self.registry.plan(key, self.caps);
        match plan.node(&key).and_then(|p| p.edge) {
            Some(e) => Ok(e),
            None => Err(self.registry.unsupported(key, self.caps)),
        }
    }

    fn add_substitution(&mut self, v: VariableIndex, e: ScalarAffineFunction) {
        let e = substitute_affine(&e, &self.subst);
        let single = Substitution::from([(v, e.clone())]);
        for image in self.subst.values_mut() {
            if image.terms.iter().any(|t| t.variable == v) {
                *image = substitute_affine(image, &single);
            }
        }
        self.subst.insert(v, e);
    }

    fn apply(&mut self, index: usize, source: BridgeSource) -> Result<Vec<ConstraintIndex>, BridgeError> {
        let bridge = self.registry.bridges()[index].clone();
        if !bridge.applicable(&source) {
            return Err(BridgeError::NotApplicable { bridge: bridge.name().to_string(), node: source.key() });
        }
        let mut req = Requests { model: &mut self.out, free: Vec::new(), blocks: Vec::new() };
        let emission: Emission = bridge.apply(&mut req, &source)?;
        let Requests { free, blocks, .. } = req;
        self.witnesses.extend(emission.witnesses);
        let mut emitted = Vec::new();
        for v in free {
            emitted.extend(self.resolve_variables(vec![v], SetSpec::Reals { dimension: 1 })?);
        }
        for (vars, set) in blocks {
            emitted.extend(self.resolve_variables(vars, set)?);
        }
        for (v, e) in emission.substitutions {
            self.add_substitution(v, e);
        }
        if let Some((sense, f)) = emission.objective {
            emitted.extend(self.process_objective(sense, f)?);
        }
        for (f, s) in emission.constraints {
            emitted.extend(self.process_constraint(f, s)?);
        }
        Ok(emitted)
    }

    /// Give existing free variables of the output model the domain `set`.
    fn resolve_variables(&mut self, vars: Vec<VariableIndex>, set: SetSpec) -> Result<Vec<ConstraintIndex>, BridgeError> {
        let key = NodeKey::Variable(set.set_type());
        if set.set_type() == SetType::Reals {
            if self.caps.supports_variables(SetType::Reals) {
                return Ok(Vec::new());
            }
        } else if is_supported(self.caps, &key) {
            return Ok(vec![self.out.constrain_on_creation(vars, set)?]);
        }
        match self.plan_edge(key)? {
            Edge::ConstrainOnCreation => {
                let mut emitted = Vec::new();
                for &v in &vars {
                    emitted.extend(self.resolve_variables(vec![v], SetSpec::Reals { dimension: 1 })?);
                }
                let f = if set.is_scalar() { Function::SingleVariable(vars[0]) } else { Function::VectorOfVariables(vars) };
                emitted.extend(self.process_constraint(f, set)?);
                Ok(emitted)
            }
            Edge::Bridge(i) => self.apply(i, BridgeSource::Variables { variables: vars, set }),
        }
    }

    fn process_constraint(&mut self, f: Function, set: SetSpec) -> Result<Vec<ConstraintIndex>, BridgeError> {
        let f = f.substitute(&self.subst);
        let key = NodeKey::Constraint(f.function_type(), set.set_type());
        if is_supported(self.caps, &key) {
            return Ok(vec![self.out.add_constraint(f, set)?]);
        }
        match self.plan_edge(key)? {
            Edge::Bridge(i) => self.apply(i, BridgeSource::Constraint { function: f, set }),
            Edge::ConstrainOnCreation => unreachable!("constraint nodes have no creation edge"),
        }
    }

    fn process_objective(&mut self, sense: ObjectiveSense, f: Function) -> Result<Vec<ConstraintIndex>, BridgeError> {
        let f = f.substitute(&self.subst);
        let key = NodeKey::Objective(f.function_type());
        if is_supported(self.caps, &key) {
            self.out.set_objective(sense, Some(f))?;
            return Ok(Vec::new());
        }
        match self.plan_edge(key)? {
            Edge::Bridge(i) => self.apply(i, BridgeSource::Objective { sense, function: f }),
            Edge::ConstrainOnCreation => unreachable!("objective nodes have no creation edge"),
        }
    }
}

fn block_variables(f: &Function) -> Option<Vec<VariableIndex>> {
    match f {
        Function::SingleVariable(v) => Some(vec![*v]),
        Function::VectorOfVariables(vs) => Some(vs.clone()),
        _ => None,
    }
}

struct Roots {
    free: Vec<VariableIndex>,
    blocks: Vec<ConstraintIndex>,
    block_set: BTreeSet<ConstraintIndex>,
    keys: Vec<NodeKey>,
}

/// Variables constrained on creation become variable roots. A
/// `SingleVariable`/`VectorOfVariables` constraint on otherwise free,
/// distinct variables is also treated as a variable root when creating the
/// variables in its set is strictly cheaper than creating them free and
/// bridging the constraint.
fn select_roots(registry: &BridgeRegistry, model: &Model, caps: &Capabilities) -> Result<Roots, BridgeError> {
    let reals = NodeKey::Variable(SetType::Reals);
    let mut claimed: BTreeSet<VariableIndex> = model.variable_blocks().flat_map(|c| c.function.variables()).collect();
    let mut blocks: Vec<ConstraintIndex> = Vec::new();
    for c in model.constraints() {
        if model.is_variable_block(c.index) {
            blocks.push(c.index);
            continue;
        }
        let Some(vars) = block_variables(&c.function) else { continue };
        if c.set.set_type() == SetType::Reals {
            continue;
        }
        let distinct: BTreeSet<VariableIndex> = vars.iter().copied().collect();
        if distinct.len() != vars.len() || vars.iter().any(|v| claimed.contains(v)) {
            continue;
        }
        let as_variables = registry.cost(NodeKey::Variable(c.set.set_type()), caps);
        let as_constraint = registry.cost(NodeKey::Constraint(c.function.function_type(), c.set.set_type()), caps)
            + registry.cost(reals, caps);
        if as_variables.is_finite() && as_variables < as_constraint - 1e-9 {
            claimed.extend(vars);
            blocks.push(c.index);
        }
    }
    let block_set: BTreeSet<ConstraintIndex> = blocks.iter().copied().collect();

    let mut keys: Vec<NodeKey> = Vec::new();
    let free: Vec<VariableIndex> = model.variables().filter(|v| !claimed.contains(v)).collect();
    keys.extend(free.iter().map(|_| reals));
    for &ci in &blocks {
        keys.push(NodeKey::Variable(model.constraint(ci)?.set.set_type()));
    }
    if let Some(f) = model.objective_function() {
        keys.push(NodeKey::Objective(f.function_type()));
    }
    for c in model.constraints().filter(|c| !block_set.contains(&c.index)) {
        keys.push(NodeKey::Constraint(c.function.function_type(), c.set.set_type()));
    }
    Ok(Roots { free, blocks, block_set, keys })
}

/// The root nodes `bridge_model` would plan for, one per free variable,
/// variable block, objective, and remaining constraint, in processing order.
pub fn model_roots(registry: &BridgeRegistry, model: &Model, caps: &Capabilities) -> Result<Vec<NodeKey>, BridgeError> {
    Ok(select_roots(registry, model, caps)?.keys)
}

/// Rewrite `model` so that every node is supported by `caps`.
///
/// Roots are chosen as described on [`model_roots`]. Every root is checked
/// before anything is rewritten.
pub fn bridge_model(registry: &BridgeRegistry, model: &Model, caps: &Capabilities) -> Result<BridgedModel, BridgeError> {
    let reals = NodeKey::Variable(SetType::Reals);
    let Roots { free, blocks, block_set, keys } = select_roots(registry, model, caps)?;
    for &r in &keys {
        if registry.cost(r, caps).is_infinite() {
            return Err(registry.unsupported(r, caps));
        }
    }

    let mut rw = Rewriter {
        registry,
        caps,
        out: Model::with_variables_of(model),
        subst: Substitution::new(),
        witnesses: Vec::new(),
    };
    let mut root_costs = Vec::new();
    let mut constraint_map = BTreeMap::new();
    for &v in &free {
        root_costs.push((reals, registry.cost(reals, caps)));
        rw.resolve_variables(vec![v], SetSpec::Reals { dimension: 1 })?;
    }
    for &ci in &blocks {
        let c = model.constraint(ci)?;
        let vars = block_variables(&c.function).expect("blocks are variable-only");
        let key = NodeKey::Variable(c.set.set_type());
        root_costs.push((key, registry.cost(key, caps)));
        let emitted = rw.resolve_variables(vars, c.set.clone())?;
        copy_name(&mut rw.out, &emitted, &c.name)?;
        constraint_map.insert(ci, emitted);
    }
    if let Some(f) = model.objective_function() {
        let key = NodeKey::Objective(f.function_type());
        root_costs.push((key, registry.cost(key, caps)));
        rw.process_objective(model.objective_sense(), f.clone())?;
    } else {
        rw.out.set_objective(model.objective_sense(), None)?;
    }
    for c in model.constraints().filter(|c| !block_set.contains(&c.index)) {
        let key = NodeKey::Constraint(c.function.function_type(), c.set.set_type());
        root_costs.push((key, registry.cost(key, caps)));
        let emitted = rw.process_constraint(c.function.clone(), c.set.clone())?;
        copy_name(&mut rw.out, &emitted, &c.name)?;
        constraint_map.insert(c.index, emitted);
    }
    for &v in rw.subst.keys() {
        rw.out.delete_variable(v)?;
    }
    Ok(BridgedModel {
        model: rw.out,
        recovery: rw.subst,
        constraint_map,
        witnesses: rw.witnesses,
        original_variables: model.variables().collect(),
        root_costs,
    })
}

fn copy_name(out: &mut Model, emitted: &[ConstraintIndex], name: &Option<String>) -> Result<(), ModelError> {
    if let (Some(name), [ci]) = (name, emitted) {
        out.set_constraint_name(*ci, Some(name.clone()))?;
    }
    Ok(())
}

/// The result of applying one bridge outside [`bridge_model`].
#[derive(Clone, Debug, PartialEq)]
pub struct Applied {
    pub emission: Emission,
    /// Free variables the bridge created.
    pub new_variables: Vec<VariableIndex>,
    /// Variables the bridge created in a set, with that set.
    pub new_blocks: Vec<(Vec<VariableIndex>, SetSpec)>,
}

/// Apply a single bridge to `source`, creating any requested variables in
/// `model` (blocks are declared as constrained on creation). Emitted
/// constraints, objectives, and substitutions are returned, not applied.
pub fn apply_bridge(bridge: &dyn Bridge, model: &mut Model, source: &BridgeSource) -> Result<Applied, BridgeError> {
    if !bridge.applicable(source) {
        return Err(BridgeError::NotApplicable { bridge: bridge.name().to_string(), node: source.key() });
    }
    let mut req = Requests { model, free: Vec::new(), blocks: Vec::new() };
    let emission = bridge.apply(&mut req, source)?;
    let Requests { model, free, blocks } = req;
    for (vars, set) in &blocks {
        model.constrain_on_creation(vars.clone(), set.clone())?;
    }
    Ok(Applied { emission, new_variables: free, new_blocks: blocks })
}
