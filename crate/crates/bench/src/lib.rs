//! Fixtures shared by the criterion benches.

use ratcrit::{Complex64, RationalFunction, WeightedPoint};

/// Points on a slightly perturbed circle with alternating zeros and poles of
/// multiplicity 1..=3.
pub fn ring(k: usize) -> RationalFunction {
    let points = (0..k)
        .map(|i| {
            let t = i as f64 / k as f64 * std::f64::consts::TAU;
            let r = 1.0 + 0.1 * (3.0 * t).sin();
            let m = (i % 3) as i32 + 1;
            let m = if i % 2 == 0 { m } else { -m };
            WeightedPoint::new(Complex64::from_polar(r, t + 0.1), m).unwrap()
        })
        .collect();
    RationalFunction::new(points).unwrap()
}
