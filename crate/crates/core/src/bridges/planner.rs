//! Shortest hyper-path costs by fixed-point iteration of
//! `C(n) = min_e { w(e) + Σ_{t ∈ T(e)} C(t) }`, with `C(n) = 0` on supported nodes.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write;

use crate::model::FunctionType;
use crate::sets::SetType;
use crate::targets::Capabilities;

use super::{BridgeRegistry, NodeKey};

const TIE_TOL: f64 = 1e-9;

/// An edge leaving a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edge {
    /// A registered bridge, by registration position.
    Bridge(usize),
    /// Create free variables, then constrain them with a `SingleVariable` or
    /// `VectorOfVariables` constraint. Weight 0.
    ConstrainOnCreation,
}

pub const CONSTRAIN_ON_CREATION: &str = "constrain-on-creation";

#[derive(Clone, Debug, PartialEq)]
pub struct NodePlan {
    pub cost: f64,
    pub supported: bool,
    pub edge: Option<Edge>,
    pub via: Option<String>,
    pub targets: Vec<NodeKey>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Plan {
    pub root: NodeKey,
    /// Reachable nodes in discovery order (root first).
    pub order: Vec<NodeKey>,
    pub nodes: BTreeMap<NodeKey, NodePlan>,
}

pub(crate) fn is_supported(caps: &Capabilities, node: &NodeKey) -> bool {
    match *node {
        NodeKey::Constraint(f, s) => caps.supports_constraint(f, s),
        NodeKey::Objective(f) => caps.supports_objective(f),
        NodeKey::Variable(s) => caps.supports_variables(s),
    }
}

pub(crate) fn constrain_on_creation_targets(set: SetType) -> Vec<NodeKey> {
    let f = if set.is_scalar() { FunctionType::SingleVariable } else { FunctionType::VectorOfVariables };
    vec![NodeKey::Variable(SetType::Reals), NodeKey::Constraint(f, set)]
}

struct EdgeData {
    edge: Edge,
    weight: f64,
    targets: Vec<NodeKey>,
}

fn edges(reg: &BridgeRegistry, node: &NodeKey) -> Vec<EdgeData> {
    let mut out: Vec<EdgeData> = reg
        .bridges
        .iter()
        .enumerate()
        .filter_map(|(i, b)| {
            b.targets(node).map(|targets| EdgeData { edge: Edge::Bridge(i), weight: b.weight(), targets })
        })
        .collect();
    if let NodeKey::Variable(s) = *node {
        if s != SetType::Reals {
            out.push(EdgeData { edge: Edge::ConstrainOnCreation, weight: 0.0, targets: constrain_on_creation_targets(s) });
        }
    }
    out
}

pub(crate) fn compute(reg: &BridgeRegistry, root: NodeKey, caps: &Capabilities) -> Plan {
    let mut order = vec![root];
    let mut index: BTreeMap<NodeKey, usize> = BTreeMap::from([(root, 0)]);
    let mut out_edges: Vec<Vec<EdgeData>> = Vec::new();
    let mut queue = VecDeque::from([root]);
    while let Some(n) = queue.pop_front() {
        // Supported nodes are terminal.
        let es = if is_supported(caps, &n) { Vec::new() } else { edges(reg, &n) };
        for e in &es {
            for t in &e.targets {
                if !index.contains_key(t) {
                    index.insert(*t, order.len());
                    order.push(*t);
                    queue.push_back(*t);
                }
            }
        }
        debug_assert_eq!(out_edges.len(), index[&n]);
        out_edges.push(es);
    }

    let supported: Vec<bool> = order.iter().map(|n| is_supported(caps, n)).collect();
    let mut cost: Vec<f64> = supported.iter().map(|&s| if s { 0.0 } else { f64::INFINITY }).collect();
    let edge_cost = |cost: &[f64], e: &EdgeData| e.weight + e.targets.iter().map(|t| cost[index[t]]).sum::<f64>();
    loop {
        let mut changed = false;
        for i in 0..order.len() {
            if supported[i] {
                continue;
            }
            for e in &out_edges[i] {
                let c = edge_cost(&cost, e);
                if c < cost[i] - 1e-12 {
                    cost[i] = c;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut nodes = BTreeMap::new();
    for (i, n) in order.iter().enumerate() {
        let mut plan = NodePlan { cost: cost[i], supported: supported[i], edge: None, via: None, targets: Vec::new() };
        if !supported[i] && cost[i].is_finite() {
            // Earliest-registered edge attaining the minimum.
            if let Some(e) = out_edges[i].iter().find(|e| edge_cost(&cost, e) <= cost[i] + TIE_TOL) {
                plan.edge = Some(e.edge);
                plan.via = Some(match e.edge {
                    Edge::Bridge(k) => reg.bridges[k].name().to_string(),
                    Edge::ConstrainOnCreation => CONSTRAIN_ON_CREATION.to_string(),
                });
                plan.targets = e.targets.clone();
            }
        }
        nodes.insert(*n, plan);
    }
    Plan { root, order, nodes }
}

fn format_cost(c: f64) -> String {
    if c.is_infinite() {
        "inf".to_string()
    } else if c.fract() == 0.0 {
        format!("{}", c as i64)
    } else {
        format!("{c}")
    }
}

impl Plan {
    pub fn cost(&self) -> f64 {
        self.nodes[&self.root].cost
    }

    pub fn node(&self, key: &NodeKey) -> Option<&NodePlan> {
        self.nodes.get(key)
    }

    /// Reachable nodes with infinite cost, in discovery order.
    pub fn unsupported_nodes(&self) -> Vec<NodeKey> {
        self.order.iter().filter(|n| self.nodes[n].cost.is_infinite()).copied().collect()
    }

    /// Names of the bridges on the chosen hyper-path, depth first.
    pub fn bridges_used(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&self.root, 0, &mut |_, _, p| {
            if let Some(v) = &p.via {
                out.push(v.clone());
            }
        });
        out
    }

    fn walk(&self, key: &NodeKey, depth: usize, visit: &mut dyn FnMut(&NodeKey, usize, &NodePlan)) {
        let p = &self.nodes[key];
        visit(key, depth, p);
        // Chosen edges are acyclic because every cycle has positive weight;
        // the depth bound is a guard only.
        if depth < 64 {
            for t in &p.targets {
                self.walk(t, depth + 1, visit);
            }
        }
    }

    /// Indented text tree, one node per line:
    /// `ConstraintNode(F-in-S) cost N via bridge`, `... cost 0 supported`,
    /// or `... cost inf unsupported`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.walk(&self.root, 0, &mut |key, depth, p| {
            let how = if p.supported {
                "supported".to_string()
            } else if let Some(v) = &p.via {
                format!("via {v}")
            } else {
                "unsupported".to_string()
            };
            let _ = writeln!(out, "{}{} cost {} {}", "  ".repeat(depth), key, format_cost(p.cost), how);
        });
        out
    }
}
