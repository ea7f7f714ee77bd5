#![allow(dead_code)]

use newton_holo::ComplexValue;
use proptest::prelude::*;

pub fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

pub fn r(x: f64) -> ComplexValue {
    c(x, 0.0)
}

/// |a − b| relative to the larger magnitude, never dividing by less than `floor`.
pub fn rel_diff(a: ComplexValue, b: ComplexValue, floor: f64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(floor)
}

/// Max-norm distance between coefficient vectors relative to the larger max-norm.
pub fn vec_rel_diff(a: &[ComplexValue], b: &[ComplexValue]) -> f64 {
    assert_eq!(a.len(), b.len());
    let scale = a.iter().chain(b).map(|z| z.norm()).fold(0.0, f64::max);
    let diff = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// A point with |z| < radius.
pub fn in_disc(radius: f64) -> impl Strategy<Value = ComplexValue> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(m, a)| ComplexValue::from_polar(m, a))
}

/// A point with lo < |z| < hi.
pub fn in_annulus(lo: f64, hi: f64) -> impl Strategy<Value = ComplexValue> {
    (lo..hi, 0.0..std::f64::consts::TAU).prop_map(|(m, a)| ComplexValue::from_polar(m, a))
}

pub fn complex(scale: f64) -> impl Strategy<Value = ComplexValue> {
    (-scale..scale, -scale..scale).prop_map(|(re, im)| ComplexValue::new(re, im))
}

pub fn min_separation(nodes: &[ComplexValue]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            best = best.min((nodes[i] - nodes[j]).norm());
        }
    }
    best
}

/// `count` nodes in the disc of radius `radius`, pairwise at least `sep` apart.
pub fn separated_nodes(count: usize, radius: f64, sep: f64) -> impl Strategy<Value = Vec<ComplexValue>> {
    prop::collection::vec(in_disc(radius), count).prop_filter("nodes too close", move |v| min_separation(v) >= sep)
}
