//! Exhaustive search over bridge trees, independent of the planner.

use mathopt::bridges::{BridgeRegistry, NodeKey};
use mathopt::model::FunctionType;
use mathopt::sets::SetType;
use mathopt::targets::Capabilities;

fn supported(caps: &Capabilities, node: NodeKey) -> bool {
    match node {
        NodeKey::Constraint(f, s) => caps.constraints.contains(&(f, s)),
        NodeKey::Objective(f) => caps.objectives.contains(&f),
        NodeKey::Variable(s) => caps.variables.contains(&s),
    }
}

/// Every way of expanding `node` with at most `depth` nested edges: a
/// registered bridge, or for a variable node in a set other than `Reals`,
/// creating free variables and constraining them. Returns the cheapest tree
/// cost, or infinity when no tree of that depth bottoms out in supported
/// nodes.
pub fn cheapest_tree(registry: &BridgeRegistry, caps: &Capabilities, node: NodeKey, depth: usize) -> f64 {
    let mut costs = Vec::new();
    enumerate(registry, caps, node, depth, &mut costs);
    costs.into_iter().fold(f64::INFINITY, f64::min)
}

/// All finite tree costs for `node` up to `depth`.
pub fn enumerate(registry: &BridgeRegistry, caps: &Capabilities, node: NodeKey, depth: usize, out: &mut Vec<f64>) {
    if supported(caps, node) {
        out.push(0.0);
        return;
    }
    if depth == 0 {
        return;
    }
    let mut edges: Vec<(f64, Vec<NodeKey>)> = registry
        .bridges()
        .iter()
        .filter_map(|b| b.targets(&node).map(|t| (b.weight(), t)))
        .collect();
    if let NodeKey::Variable(s) = node {
        if s != SetType::Reals {
            let f = if s.is_scalar() { FunctionType::SingleVariable } else { FunctionType::VectorOfVariables };
            edges.push((0.0, vec![NodeKey::Variable(SetType::Reals), NodeKey::Constraint(f, s)]));
        }
    }
    for (weight, targets) in edges {
        // Cartesian product of the children's tree costs.
        let mut partial = vec![weight];
        for t in targets {
            let mut child = Vec::new();
            enumerate(registry, caps, t, depth - 1, &mut child);
            child.sort_by(f64::total_cmp);
            child.dedup();
            partial = partial.iter().flat_map(|p| child.iter().map(move |c| p + c)).collect();
            partial.sort_by(f64::total_cmp);
            partial.dedup();
        }
        out.extend(partial);
    }
}
