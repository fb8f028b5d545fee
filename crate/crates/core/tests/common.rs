#![allow(dead_code)]

use proptest::prelude::*;
use ratcrit::{Complex64, RationalFunction};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn min_gap(points: &[(f64, f64, i32)]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.min(c(a.0 - b.0, a.1 - b.1).norm());
        }
    }
    best
}

fn multiplicity() -> impl Strategy<Value = i32> {
    prop_oneof![1i32..=3, -3i32..=-1]
}

/// 1 to `max` points in the square of half-width 2, pairwise at least 0.1
/// apart.
pub fn function(max: usize) -> impl Strategy<Value = RationalFunction> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0, multiplicity()), 1..=max)
        .prop_filter("points too close", |p| min_gap(p) >= 0.1)
        .prop_map(|p| RationalFunction::from_triples(&p).unwrap())
}

pub fn point() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| c(re, im))
}
