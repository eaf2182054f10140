//! Bridges rewrite a constraint, objective, or variable node into nodes a
//! target supports. A planner picks the cheapest chain of bridges per node
//! and [`bridge_model`] applies it to a whole model.

mod catalog;
mod planner;
mod rewrite;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::model::{Function, FunctionType, ModelError, ObjectiveSense, ScalarAffineFunction, VariableIndex};
use crate::sets::{SetSpec, SetType};
use crate::targets::Capabilities;

pub use catalog::{
    builtin_bridges, FlipSign, FreeVariable, ObjectiveFunctionize, ObjectiveSlack, PsdSquareToTriangle, QuadToRsoc,
    RsocToSoc, Scalarize, SlackGe, SlackLe, SocToRsoc, SplitInterval, VariableFunctionize, Vectorize,
};
pub use planner::{Edge, NodePlan, Plan};
pub use rewrite::{apply_bridge, bridge_model, evaluate_witness, model_roots, Applied, BridgedModel};

/// A type-level vertex of the bridging hyper-graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKey {
    Constraint(FunctionType, SetType),
    Objective(FunctionType),
    Variable(SetType),
}

impl fmt::Display for NodeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeKey::Constraint(func, set) => write!(f, "ConstraintNode({func}-in-{set})"),
            NodeKey::Objective(func) => write!(f, "ObjectiveNode({func})"),
            NodeKey::Variable(set) => write!(f, "VariableNode({set})"),
        }
    }
}

impl NodeKey {
    /// The capability that would make this node free, e.g.
    /// `ScalarAffineFunction-in-EqualTo`.
    pub fn capability_name(&self) -> String {
        match self {
            NodeKey::Constraint(func, set) => format!("{func}-in-{set}"),
            NodeKey::Objective(func) => format!("objective {func}"),
            NodeKey::Variable(set) => format!("variables in {set}"),
        }
    }
}

/// Parses the [`NodeKey::capability_name`] spellings.
impl std::str::FromStr for NodeKey {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let bad = || format!("expected \"F-in-S\", \"objective F\", or \"variables in S\", got \"{text}\"");
        if let Some(f) = text.strip_prefix("objective ") {
            return FunctionType::from_name(f).map(NodeKey::Objective).ok_or_else(bad);
        }
        if let Some(s) = text.strip_prefix("variables in ") {
            return SetType::from_name(s).map(NodeKey::Variable).ok_or_else(bad);
        }
        let (f, s) = text.split_once("-in-").ok_or_else(bad)?;
        match (FunctionType::from_name(f), SetType::from_name(s)) {
            (Some(f), Some(s)) => Ok(NodeKey::Constraint(f, s)),
            _ => Err(bad()),
        }
    }
}

/// The concrete object handed to a bridge.
#[derive(Clone, Debug, PartialEq)]
pub enum BridgeSource {
    Constraint { function: Function, set: SetSpec },
    Objective { sense: ObjectiveSense, function: Function },
    /// Variables being created with (or declared to have) domain `set`.
    Variables { variables: Vec<VariableIndex>, set: SetSpec },
}

impl BridgeSource {
    pub fn key(&self) -> NodeKey {
        match self {
            BridgeSource::Constraint { function, set } => NodeKey::Constraint(function.function_type(), set.set_type()),
            BridgeSource::Objective { function, .. } => NodeKey::Objective(function.function_type()),
            BridgeSource::Variables { set, .. } => NodeKey::Variable(set.set_type()),
        }
    }
}

/// How to compute an auxiliary variable from values of existing variables.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// The value of a scalar function.
    Value(Function),
    PositivePart(VariableIndex),
    NegativePart(VariableIndex),
}

/// What a bridge produces. Variables are requested through the
/// [`BridgeContext`] during `apply`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Emission {
    pub constraints: Vec<(Function, SetSpec)>,
    pub objective: Option<(ObjectiveSense, Function)>,
    /// Replace a variable by an affine expression throughout the model.
    pub substitutions: Vec<(VariableIndex, ScalarAffineFunction)>,
    pub witnesses: Vec<(VariableIndex, Witness)>,
}

pub trait BridgeContext {
    /// A new free variable (a `VariableNode(Reals)`).
    fn add_variable(&mut self) -> VariableIndex;
    /// New variables constrained on creation to `set` (a `VariableNode(S)`).
    fn add_constrained_variables(&mut self, set: SetSpec) -> Vec<VariableIndex>;
}

pub trait Bridge: Send + Sync {
    fn name(&self) -> &str;

    fn weight(&self) -> f64 {
        1.0
    }

    /// The nodes `apply` may emit for a source node, or `None` if the bridge
    /// does not handle that node.
    fn targets(&self, source: &NodeKey) -> Option<Vec<NodeKey>>;

    /// Whether the bridge accepts this concrete source.
    fn applicable(&self, source: &BridgeSource) -> bool {
        self.targets(&source.key()).is_some()
    }

    fn apply(&self, ctx: &mut dyn BridgeContext, source: &BridgeSource) -> Result<Emission, BridgeError>;
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BridgeError {
    #[error("a bridge named \"{0}\" is already registered")]
    DuplicateName(String),
    #[error("bridge {bridge} does not apply to {node}")]
    NotApplicable { bridge: String, node: NodeKey },
    #[error("quadratic form is not positive semidefinite")]
    NotPositiveSemidefinite,
    #[error("{}", unsupported_message(.node, .missing, .frontier))]
    Unsupported { node: NodeKey, missing: Option<NodeKey>, frontier: Vec<NodeKey> },
    #[error("no value for variable {0}")]
    MissingAssignment(VariableIndex),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn unsupported_message(node: &NodeKey, missing: &Option<NodeKey>, frontier: &[NodeKey]) -> String {
    let mut msg = format!("unsupported: {node}");
    if let Some(m) = missing {
        msg.push_str(&format!("; cheapest missing capability: {}", m.capability_name()));
    }
    if !frontier.is_empty() {
        let names: Vec<String> = frontier.iter().map(|n| n.to_string()).collect();
        msg.push_str(&format!("; unsupported frontier: {}", names.join(", ")));
    }
    msg
}

/// Registered bridges, in registration order, plus a plan cache.
pub struct BridgeRegistry {
    bridges: Vec<Arc<dyn Bridge>>,
    cache: Mutex<HashMap<(Capabilities, NodeKey), Arc<Plan>>>,
}

impl Default for BridgeRegistry {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Debug for BridgeRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.bridges.iter().map(|b| b.name())).finish()
    }
}

impl BridgeRegistry {
    pub fn new() -> Self {
        Self { bridges: Vec::new(), cache: Mutex::new(HashMap::new()) }
    }

    /// A registry holding the built-in catalog.
    pub fn with_builtins() -> Self {
        let mut reg = Self::new();
        for b in builtin_bridges() {
            reg.register(b).expect("built-in names are distinct");
        }
        reg
    }

    pub fn register(&mut self, bridge: Arc<dyn Bridge>) -> Result<(), BridgeError> {
        if self.bridges.iter().any(|b| b.name() == bridge.name()) {
            return Err(BridgeError::DuplicateName(bridge.name().to_string()));
        }
        self.bridges.push(bridge);
        self.cache.lock().expect("plan cache poisoned").clear();
        Ok(())
    }

    pub fn bridges(&self) -> &[Arc<dyn Bridge>] {
        &self.bridges
    }

    pub fn get(&self, name: &str) -> Option<&Arc<dyn Bridge>> {
        self.bridges.iter().find(|b| b.name() == name)
    }

    pub fn len(&self) -> usize {
        self.bridges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bridges.is_empty()
    }

    /// Minimum-cost plan for `root`, memoized per `(caps, root)`.
    pub fn plan(&self, root: NodeKey, caps: &Capabilities) -> Arc<Plan> {
        let key = (caps.clone(), root);
        if let Some(p) = self.cache.lock().expect("plan cache poisoned").get(&key) {
            return p.clone();
        }
        let plan = Arc::new(planner::compute(self, root, caps));
        self.cache.lock().expect("plan cache poisoned").entry(key).or_insert(plan).clone()
    }

    pub fn cost(&self, root: NodeKey, caps: &Capabilities) -> f64 {
        self.plan(root, caps).cost()
    }

    /// The `Unsupported` error for an infinite-cost node: lists every
    /// reachable infinite-cost node and the single one whose addition to
    /// `caps` gives the cheapest plan.
    pub fn unsupported(&self, root: NodeKey, caps: &Capabilities) -> BridgeError {
        let plan = self.plan(root, caps);
        let frontier: Vec<NodeKey> = plan.unsupported_nodes();
        let mut best: Option<(f64, NodeKey)> = None;
        for &n in &frontier {
            let mut extended = caps.clone();
            match n {
                NodeKey::Constraint(f, s) => {
                    extended.constraints.insert((f, s));
                }
                NodeKey::Objective(f) => {
                    extended.objectives.insert(f);
                }
                NodeKey::Variable(s) => {
                    extended.variables.insert(s);
                }
            }
            let c = planner::compute(self, root, &extended).cost();
            if c.is_finite() && best.is_none_or(|(b, _)| c < b) {
                best = Some((c, n));
            }
        }
        BridgeError::Unsupported { node: root, missing: best.map(|(_, n)| n), frontier }
    }
}
