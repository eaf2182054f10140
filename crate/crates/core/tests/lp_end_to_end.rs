mod common;

use mathopt::bridges::{bridge_model, BridgeRegistry};
use mathopt::model::Model;
use mathopt::sets::membership;
use mathopt::targets::{builtin_capabilities, load, solve_lp, SolveStatus};

fn bridged_optimum(model: &Model) -> Option<f64> {
    let registry = BridgeRegistry::with_builtins();
    let caps = builtin_capabilities("lp-scalar").unwrap();
    let bridged = bridge_model(&registry, model, &caps).unwrap();
    let result = solve_lp(&bridged.model).unwrap();
    if result.status != SolveStatus::Optimal {
        return None;
    }
    let x = bridged.map_primal(&result.primal).unwrap();
    for c in model.constraints() {
        let value = c.function.evaluate(&x).unwrap().into_vec();
        assert!(membership(&c.set, &value, 1e-6).unwrap(), "{:?} violated at {value:?}", c.set);
    }
    Some(model.objective_function().unwrap().evaluate(&x).unwrap().as_scalar().unwrap())
}

#[test]
fn random_lps_match_the_vertex_oracle() {
    let mut rng = common::rng(301);
    for k in 0..100 {
        let model = common::lp::random_lp(&mut rng);
        let oracle = common::lp::vertex_optimum(&common::lp::dense(&model)).map(|(v, _)| v);
        let got = bridged_optimum(&model);
        match (oracle, got) {
            (None, None) => {}
            (Some(a), Some(b)) => assert!((a - b).abs() <= 1e-6, "LP {k}: oracle {a}, bridged {b}"),
            _ => panic!("LP {k}: oracle {oracle:?}, bridged {got:?}"),
        }
    }
}

#[test]
fn vertex_oracle_points_are_feasible() {
    let mut rng = common::rng(302);
    for _ in 0..50 {
        let lp = common::lp::dense(&common::lp::random_lp(&mut rng));
        if let Some((value, x)) = common::lp::vertex_optimum(&lp) {
            assert!(common::lp::feasible(&lp, &x, 1e-9));
            let objective: f64 = lp.c.iter().zip(&x).map(|(c, v)| c * v).sum::<f64>() + lp.constant;
            assert!((objective - value).abs() <= 1e-9);
        }
    }
}

#[test]
fn p_median_formulations_agree() {
    let scalar = bridged_optimum(&common::pmedian::scalar(8, 4, 2.0)).unwrap();
    let vector = bridged_optimum(&common::pmedian::vector(8, 4, 2.0)).unwrap();
    assert!((scalar - vector).abs() <= 1e-6, "scalar {scalar}, vector {vector}");
    // Every customer pays at least its cheapest site.
    let floor: f64 = (0..8).map(|i| (0..4).map(|j| ((i * 37 + j * 11) % 17) as f64 + 1.0).fold(f64::INFINITY, f64::min)).sum();
    assert!(scalar >= floor - 1e-9);
}

#[test]
fn p_median_loads_after_bridging() {
    for name in ["lp-scalar", "conic-geometric"] {
        let caps = builtin_capabilities(name).unwrap();
        for model in [common::pmedian::scalar(5, 3, 2.0), common::pmedian::vector(5, 3, 2.0)] {
            let bridged = bridge_model(&BridgeRegistry::with_builtins(), &model, &caps).unwrap();
            let loaded = load(&caps, &bridged.model).unwrap();
            for e in &loaded.report.entries {
                let supported = caps.supports_constraint(e.function, e.set) || caps.supports_variables(e.set);
                assert!(supported, "{name}: {}", e.label());
                assert_eq!(e.count, e.dimensions.len());
            }
        }
    }
}

#[test]
fn scalar_inequalities_are_unreachable_on_conic_standard() {
    // No bridge turns a GreaterThan-constrained slack into a Nonnegatives one.
    let caps = builtin_capabilities("conic-standard").unwrap();
    let err = bridge_model(&BridgeRegistry::with_builtins(), &common::pmedian::scalar(3, 2, 1.0), &caps).unwrap_err();
    assert!(matches!(err, mathopt::bridges::BridgeError::Unsupported { .. }), "{err}");
}
