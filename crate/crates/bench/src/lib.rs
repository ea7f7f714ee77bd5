//! Shared workloads for the criterion benchmarks.

use newton_holo::{builtin, parse_function, AnnulusSpec, ComplexValue, Contour, HolomorphicFn, NodeSequence};

pub fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

/// exp on the disc of radius 2 with nodes 0.5·(0.6+0.3i)ᵏ.
pub fn disc_workload() -> (HolomorphicFn, Contour, NodeSequence) {
    let f = builtin("exp").expect("builtin exp");
    let disc = Contour::circle(c(0.0, 0.0), 2.0).expect("valid disc");
    let nodes = NodeSequence::geometric(c(0.0, 0.0), c(0.5, 0.0), c(0.6, 0.3)).expect("valid nodes");
    (f, disc, nodes)
}

/// exp(z)/(z(z−3)) on 0.5 < |z| < 2 with c-nodes tending to 1 and d-nodes to 0.
pub fn annulus_workload() -> (HolomorphicFn, AnnulusSpec, NodeSequence, NodeSequence) {
    let f = parse_function("exp(z)/(z*(z-3))").expect("valid expression");
    let spec = AnnulusSpec::concentric(c(0.0, 0.0), 0.5, 2.0).expect("valid annulus");
    let c_nodes = NodeSequence::geometric(c(1.0, 0.0), c(0.5, 0.0), c(0.5, 0.0)).expect("valid nodes");
    let d_nodes = NodeSequence::geometric(c(0.0, 0.0), c(0.2, 0.1), c(0.5, 0.0)).expect("valid nodes");
    (f, spec, c_nodes, d_nodes)
}

/// `count` distinct nodes on a small spiral around the origin.
pub fn spiral_nodes(count: usize) -> Vec<ComplexValue> {
    (0..count)
        .map(|k| ComplexValue::from_polar(0.1 + 0.02 * k as f64, 2.4 * k as f64))
        .collect()
}
