//! Exclusion radii, localization constants and certified circle extrema of
//! `|f'/f|`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::rational::{ModelError, RationalFunction};
use crate::roots::{critical_points, RootError, DEFAULT_TOL};

/// Sample count per circle the adaptive minimum starts from.
pub const DEFAULT_SAMPLES: usize = 4096;
/// Adaptive minima stop doubling at this many samples per circle.
pub const MAX_SAMPLES: usize = 1 << 20;
/// Relative shrink keeping the capped constant strictly below `1/(2R)`.
const CAP_SHRINK: f64 = 1e-9;
/// Largest power threshold reported before giving up.
const MAX_POWER: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Oracle(#[from] RootError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("a circle of radius {radius} about {center} passes through a zero or pole")]
    CircleTouchesPole { center: Complex64, radius: f64 },
    #[error("empty circle family")]
    EmptyFamily,
    #[error(
        "minimum not certified positive with {samples} samples per circle (lower bound {value:e})"
    )]
    Uncertifiable { value: f64, samples: usize },
    #[error("eps = {eps} fails the separation conditions")]
    ValidationFailed { eps: f64 },
    #[error("eps = {eps} is not below the minimum pairwise distance {min_distance}")]
    EpsTooLarge { eps: f64, min_distance: f64 },
    #[error("h must have at least one zero or pole")]
    ConstantH,
    #[error("power threshold {0} exceeds the supported range")]
    ThresholdTooLarge(f64),
}

/// Exclusion radius `d |m| / (d rho + |m|)` about a zero or pole
/// `z0`: the punctured disk of this radius holds no critical points. It is
/// `+inf` for `c (z - z0)^k`.
pub fn exclusion_radius(f: &RationalFunction, z0: Complex64) -> Result<f64, BoundsError> {
    let m = f.multiplicity_at(z0);
    if m == 0 {
        return Err(ModelError::NotAZeroOrPole(z0).into());
    }
    let d = f.min_distance(z0);
    if d.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let m = f64::from(m.unsigned_abs());
    Ok(d * m / (d * f.rho(z0) + m))
}

/// The classical radius `d |m| / deg(f)`.
pub fn alexander_walsh_radius(f: &RationalFunction, z0: Complex64) -> Result<f64, BoundsError> {
    let m = f.multiplicity_at(z0);
    if m == 0 {
        return Err(ModelError::NotAZeroOrPole(z0).into());
    }
    let d = f.min_distance(z0);
    if d.is_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok(d * f64::from(m.unsigned_abs()) / f.degree() as f64)
}

fn positive(name: &str, x: f64) -> Result<(), BoundsError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(BoundsError::InvalidParameter(format!(
            "{name} must be positive, got {x}"
        )))
    }
}

/// Largest `rho_h(z0)` for which `(z - z0)^k h` has no critical points in
/// the punctured disk of radius `r`: `|k| / ((|k| + 1) r)`.
pub fn corollary1_max_rho(k: i32, r: f64) -> Result<f64, BoundsError> {
    if k == 0 {
        return Err(BoundsError::InvalidParameter("k must be nonzero".into()));
    }
    positive("R", r)?;
    let k = f64::from(k.unsigned_abs());
    Ok(k / ((k + 1.0) * r))
}

/// `|m| (1/r - 1/d)`: the `rho` budget that makes the exclusion radius reach
/// `r` at a point with multiplicity `m` and nearest neighbour at distance `d`.
pub fn inequality1_rho_bound(m: i32, r: f64, d: f64) -> Result<f64, BoundsError> {
    if m == 0 {
        return Err(BoundsError::InvalidParameter("m must be nonzero".into()));
    }
    positive("R", r)?;
    positive("d", d)?;
    Ok(f64::from(m.unsigned_abs()) * (1.0 / r - 1.0 / d))
}

/// Circles of a common radius about a list of centers: `C(X; radius)` when
/// the circles are disjoint.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleFamily {
    pub centers: Vec<Complex64>,
    pub radius: f64,
}

impl CircleFamily {
    pub fn new(centers: Vec<Complex64>, radius: f64) -> Self {
        Self { centers, radius }
    }

    pub fn single(center: Complex64, radius: f64) -> Self {
        Self::new(vec![center], radius)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Min,
    Max,
}

/// A sampled extremum of `|f'/f|` turned into a rigorous one-sided bound.
///
/// For `Min`, the true minimum is at least `value`; for `Max`, the true
/// maximum is at most `value`. `certified` is false only for a minimum whose
/// bound is not positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedExtremum {
    pub value: f64,
    pub sampled: f64,
    pub kind: ExtremumKind,
    pub lipschitz_bound: f64,
    pub sample_count: usize,
    pub certified: bool,
}

struct CircleBound {
    sampled: f64,
    bound: f64,
    lipschitz: f64,
}

/// Samples `|F|` with `F = f'/f` on one circle and widens the sampled
/// extremum by the larger of two rigorous margins, taking the tighter one:
///
/// * first order: `|dF/ds| <= S/g^2 =: L` along the arc, so every point is
///   within `L delta / 2` of a sample value;
/// * second order on `psi = |F|^2`: at an interior extremum `psi' = 0`, so
///   the nearest sample differs by at most `sup|psi''| delta^2 / 8`, with
///   `|psi''| <= 2 (2S/g^3 + S/(g^2 r)) S/g + 2 S^2/g^4`.
///
/// `S = sum |m_i|`, `g` the clearance between the circle and the nearest
/// zero or pole, `delta` the arc spacing.
fn circle_bound(
    f: &RationalFunction,
    center: Complex64,
    radius: f64,
    kind: ExtremumKind,
    samples: usize,
) -> Result<CircleBound, BoundsError> {
    let gap = f
        .locations()
        .map(|w| ((w - center).norm() - radius).abs())
        .fold(f64::INFINITY, f64::min);
    if !(gap > 0.0) {
        return Err(BoundsError::CircleTouchesPole { center, radius });
    }
    let s = f.degree() as f64;
    let step = TAU / samples as f64;
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for t in 0..samples {
        let z = center + Complex64::from_polar(radius, step * t as f64);
        let v = f.log_derivative_unchecked(z).norm();
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let delta = radius * step;
    let (s1, s2, s3) = (s / gap, s / (gap * gap), 2.0 * s / (gap * gap * gap));
    let lipschitz = s2;
    let first = lipschitz * delta / 2.0;
    let curvature = 2.0 * (s3 + s2 / radius) * s1 + 2.0 * s2 * s2;
    let second = curvature * delta * delta / 8.0;
    let rounding = 16.0 * (f.distinct_count() as f64 + 1.0) * f64::EPSILON * s1;
    Ok(match kind {
        ExtremumKind::Min => {
            let lower = (lo - first).max((lo * lo - second).max(0.0).sqrt()) - rounding;
            CircleBound {
                sampled: lo,
                bound: lower.max(0.0),
                lipschitz,
            }
        }
        ExtremumKind::Max => {
            let upper = (hi + first).min((hi * hi + second).sqrt()) + rounding;
            CircleBound {
                sampled: hi,
                bound: upper,
                lipschitz,
            }
        }
    })
}

/// Certified minimum or maximum of `|f'/f|` over every circle of a family.
pub fn circle_extremum(
    f: &RationalFunction,
    circles: &CircleFamily,
    kind: ExtremumKind,
    samples_per_circle: usize,
) -> Result<CertifiedExtremum, BoundsError> {
    extremum_over(f, std::slice::from_ref(circles), kind, samples_per_circle)
}

fn extremum_over(
    f: &RationalFunction,
    families: &[CircleFamily],
    kind: ExtremumKind,
    samples: usize,
) -> Result<CertifiedExtremum, BoundsError> {
    if samples == 0 {
        return Err(BoundsError::InvalidParameter(
            "samples must be positive".into(),
        ));
    }
    let circles: Vec<(Complex64, f64)> = families
        .iter()
        .flat_map(|fam| fam.centers.iter().map(move |&c| (c, fam.radius)))
        .collect();
    if circles.is_empty() {
        return Err(BoundsError::EmptyFamily);
    }
    for &(_, r) in &circles {
        positive("circle radius", r)?;
    }
    let per_circle = circles
        .par_iter()
        .map(|&(c, r)| circle_bound(f, c, r, kind, samples))
        .collect::<Result<Vec<_>, _>>()?;
    let lipschitz_bound = per_circle.iter().map(|b| b.lipschitz).fold(0.0, f64::max);
    let (value, sampled) = match kind {
        ExtremumKind::Min => per_circle
            .iter()
            .fold((f64::INFINITY, f64::INFINITY), |acc, b| {
                (acc.0.min(b.bound), acc.1.min(b.sampled))
            }),
        ExtremumKind::Max => per_circle.iter().fold((0.0f64, 0.0f64), |acc, b| {
            (acc.0.max(b.bound), acc.1.max(b.sampled))
        }),
    };
    let certified = match kind {
        ExtremumKind::Min => value > 0.0,
        ExtremumKind::Max => value.is_finite(),
    };
    Ok(CertifiedExtremum {
        value,
        sampled,
        kind,
        lipschitz_bound,
        sample_count: samples,
        certified,
    })
}

/// Certified minimum, doubling the sample count from `samples` up to
/// [`MAX_SAMPLES`] until the lower bound is positive.
pub fn certified_min(
    f: &RationalFunction,
    families: &[CircleFamily],
    samples: usize,
) -> Result<CertifiedExtremum, BoundsError> {
    let mut n = samples.max(1);
    loop {
        let ext = extremum_over(f, families, ExtremumKind::Min, n)?;
        if ext.certified {
            return Ok(ext);
        }
        if n >= MAX_SAMPLES {
            return Err(BoundsError::Uncertifiable {
                value: ext.value,
                samples: n,
            });
        }
        n = (n * 2).min(MAX_SAMPLES);
    }
}

fn min_pairwise_distance(points: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.min((a - b).norm());
        }
    }
    best
}

fn push_unique(set: &mut Vec<Complex64>, z: Complex64) {
    if !set.contains(&z) {
        set.push(z);
    }
}

/// Zeros, poles and finite non-trivial critical points of `f`, each once.
pub fn special_points(f: &RationalFunction) -> Result<Vec<Complex64>, BoundsError> {
    let mut set: Vec<Complex64> = f.locations().collect();
    if !f.is_empty() {
        for c in critical_points(f, DEFAULT_TOL)?.locations() {
            push_unique(&mut set, c);
        }
    }
    Ok(set)
}

/// Checks the conditions on `(R, eps)` under which the distant-perturbation
/// constant applies to `g`, with `X` the zeros, poles and critical points
/// of `g`: `eps < min_{x != y} |x - y| / 2`, `eps < R`, and `|x| < R - eps`
/// for every `x` in `X`.
pub fn theorem2_validate(g: &RationalFunction, r: f64, eps: f64) -> Result<bool, BoundsError> {
    if g.is_empty() {
        return Err(ModelError::NotAZeroOrPole(Complex64::new(0.0, 0.0)).into());
    }
    positive("R", r)?;
    positive("eps", eps)?;
    let x = special_points(g)?;
    Ok(eps < 0.5 * min_pairwise_distance(&x) && eps < r && x.iter().all(|p| p.norm() < r - eps))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem2Constant {
    /// The constant `K`: any `h` with `rho_h(0) < K` and `h(0)` finite and
    /// nonzero keeps the critical points of `g` within `eps` and adds none
    /// elsewhere in the disk of radius `R`.
    pub k: f64,
    /// Certified minimum of `|g'/g|` over `C(X; eps)` and `C(0; R)`.
    pub circle_min: CertifiedExtremum,
    /// `1/(2R)`.
    pub cap: f64,
    pub centers: Vec<Complex64>,
}

/// `K = min(min |g'/g| / 2, 1/(2R))` with the circle minimum certified from
/// below and the cap shrunk by a relative `1e-9` so the inequality stays
/// strict.
pub fn theorem2_k(
    g: &RationalFunction,
    r: f64,
    eps: f64,
    samples: usize,
) -> Result<Theorem2Constant, BoundsError> {
    if !theorem2_validate(g, r, eps)? {
        return Err(BoundsError::ValidationFailed { eps });
    }
    let centers = special_points(g)?;
    let families = [
        CircleFamily::new(centers.clone(), eps),
        CircleFamily::single(Complex64::new(0.0, 0.0), r),
    ];
    let circle_min = certified_min(g, &families, samples)?;
    let cap = 1.0 / (2.0 * r);
    let k = (circle_min.value / 2.0).min(cap * (1.0 - CAP_SHRINK));
    Ok(Theorem2Constant {
        k,
        circle_min,
        cap,
        centers,
    })
}

/// The three quantities whose minimum is the polynomial-case constant `L`:
/// with `a = eps / (2(2n - 1))`,
/// `[n a^(n-1) / (2 (2 + a)^n), 1/(2 + a), n (R - 1) / (2 ((R + 1)^2 + 1))]`.
pub fn theorem3_terms(n: u32, r: f64, eps: f64) -> Result<[f64; 3], BoundsError> {
    if n == 0 {
        return Err(BoundsError::InvalidParameter("n must be at least 1".into()));
    }
    if !(r > 1.0 && r.is_finite()) {
        return Err(BoundsError::InvalidParameter(format!(
            "R must exceed 1, got {r}"
        )));
    }
    positive("eps", eps)?;
    let nf = f64::from(n);
    let a = eps / (2.0 * (2.0 * nf - 1.0));
    let base = 0.5 * nf * a.powi(n as i32 - 1) / (2.0 + a).powi(n as i32);
    let pole_cap = 1.0 / (2.0 + a);
    let circle_cap = 0.5 * nf * (r - 1.0) / ((r + 1.0).powi(2) + 1.0);
    Ok([base, pole_cap, circle_cap])
}

/// The constant `L` for monic degree-`n` polynomials with all zeros in the
/// unit disk. Depends only on `(n, R, eps)`.
pub fn theorem3_l(n: u32, r: f64, eps: f64) -> Result<f64, BoundsError> {
    Ok(theorem3_terms(n, r, eps)?
        .into_iter()
        .fold(f64::INFINITY, f64::min))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem4Threshold {
    /// Least `n` with `n m > M`.
    pub n: u32,
    /// `M`: certified maximum of `|g'/g|` over the circles.
    pub max_g: CertifiedExtremum,
    /// `m`: certified minimum of `|h'/h|` over the circles.
    pub min_h: CertifiedExtremum,
    /// The set `A` of zeros, poles and critical points of `g` and `h`.
    pub centers: Vec<Complex64>,
}

/// Smallest power `n` for which `|g'/g| < n |h'/h|` holds on every circle
/// `C(w; eps)`, `w` in `A`, using certified `M` (from above) and `m` (from
/// below): `n = floor(M/m) + 1`.
pub fn theorem4_threshold(
    g: &RationalFunction,
    h: &RationalFunction,
    eps: f64,
    samples: usize,
) -> Result<Theorem4Threshold, BoundsError> {
    if h.is_empty() {
        return Err(BoundsError::ConstantH);
    }
    positive("eps", eps)?;
    let mut centers = special_points(g)?;
    for w in special_points(h)? {
        push_unique(&mut centers, w);
    }
    let min_distance = min_pairwise_distance(&centers);
    if !(eps < min_distance) {
        return Err(BoundsError::EpsTooLarge { eps, min_distance });
    }
    let family = [CircleFamily::new(centers.clone(), eps)];
    // g and h zeros/poles are all centers, so each circle clears them.
    let max_g = extremum_over(g, &family, ExtremumKind::Max, samples.max(1))?;
    let min_h = certified_min(h, &family, samples)?;
    let ratio = max_g.value / min_h.value;
    if !(ratio.is_finite() && ratio < MAX_POWER) {
        return Err(BoundsError::ThresholdTooLarge(ratio));
    }
    let n = ratio.floor() as u32 + 1;
    Ok(Theorem4Threshold {
        n,
        max_g,
        min_h,
        centers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn f(triples: &[(f64, f64, i32)]) -> RationalFunction {
        RationalFunction::from_triples(triples).unwrap()
    }

    #[test]
    fn exclusion_examples() {
        let z2m1 = f(&[(1.0, 0.0, 1), (-1.0, 0.0, 1)]);
        assert_eq!(exclusion_radius(&z2m1, c(1.0, 0.0)).unwrap(), 1.0);
        let tight = f(&[(0.0, 0.0, 2), (1.0, 0.0, 1)]);
        assert_relative_eq!(exclusion_radius(&tight, c(0.0, 0.0)).unwrap(), 2.0 / 3.0);
        let cubic = f(&[(0.0, 0.0, 1), (1.0, 0.0, 1), (3.0, 0.0, 1)]);
        assert_relative_eq!(
            exclusion_radius(&cubic, c(0.0, 0.0)).unwrap(),
            3.0 / 7.0,
            max_relative = 1e-15
        );
        let single = f(&[(2.0, 1.0, -3)]);
        assert_eq!(
            exclusion_radius(&single, c(2.0, 1.0)).unwrap(),
            f64::INFINITY
        );
        assert!(matches!(
            exclusion_radius(&z2m1, c(0.0, 0.0)),
            Err(BoundsError::Model(ModelError::NotAZeroOrPole(_)))
        ));
    }

    #[test]
    fn alexander_walsh_examples() {
        let cubic = f(&[(0.0, 0.0, 1), (1.0, 0.0, 1), (3.0, 0.0, 1)]);
        assert_relative_eq!(
            alexander_walsh_radius(&cubic, c(0.0, 0.0)).unwrap(),
            1.0 / 3.0
        );
        let z2m1 = f(&[(1.0, 0.0, 1), (-1.0, 0.0, 1)]);
        assert_eq!(alexander_walsh_radius(&z2m1, c(1.0, 0.0)).unwrap(), 1.0);
        let s3 = 3f64.sqrt();
        let g = f(&[(0.0, 0.0, 1), (s3, 0.0, 1), (-s3, 0.0, 1)]);
        let aw = alexander_walsh_radius(&g, c(0.0, 0.0)).unwrap();
        assert_relative_eq!(aw, s3 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(
            exclusion_radius(&g, c(0.0, 0.0)).unwrap(),
            aw,
            max_relative = 1e-15
        );
        assert!(alexander_walsh_radius(&g, c(0.5, 0.0)).is_err());
    }

    #[test]
    fn factor_threshold_and_rho_budget() {
        assert_eq!(corollary1_max_rho(1, 1.0).unwrap(), 0.5);
        assert_relative_eq!(corollary1_max_rho(2, 3.0).unwrap(), 2.0 / 9.0);
        assert_eq!(corollary1_max_rho(-1, 1.0).unwrap(), 0.5);
        assert!(corollary1_max_rho(0, 1.0).is_err());
        assert!(corollary1_max_rho(1, 0.0).is_err());

        assert_eq!(inequality1_rho_bound(1, 1.0, 2.0).unwrap(), 0.5);
        assert_eq!(inequality1_rho_bound(2, 1.5, 1.5).unwrap(), 0.0);
        assert_eq!(inequality1_rho_bound(1, 2.0, 1.0).unwrap(), -0.5);
    }

    #[test]
    fn circle_extremum_examples() {
        let z = f(&[(0.0, 0.0, 1)]);
        let max = circle_extremum(
            &z,
            &CircleFamily::single(c(0.0, 0.0), 0.5),
            ExtremumKind::Max,
            4096,
        )
        .unwrap();
        assert!(max.certified);
        assert!(max.value >= 2.0 && max.value - 2.0 < 1e-5, "{max:?}");
        assert_relative_eq!(max.sampled, 2.0, max_relative = 1e-14);

        let zm1 = f(&[(1.0, 0.0, 1)]);
        let min = circle_extremum(
            &zm1,
            &CircleFamily::single(c(0.0, 0.0), 0.5),
            ExtremumKind::Min,
            4096,
        )
        .unwrap();
        assert!(min.certified);
        assert!(
            min.value <= 2.0 / 3.0 && 2.0 / 3.0 - min.value < 1e-5,
            "{min:?}"
        );

        let min = circle_extremum(
            &z,
            &CircleFamily::single(c(1.0, 0.0), 0.5),
            ExtremumKind::Min,
            4096,
        )
        .unwrap();
        assert!(min.value <= 2.0 / 3.0 && 2.0 / 3.0 - min.value < 1e-5);

        assert!(matches!(
            circle_extremum(
                &z,
                &CircleFamily::single(c(1.0, 0.0), 1.0),
                ExtremumKind::Min,
                64
            ),
            Err(BoundsError::CircleTouchesPole { .. })
        ));
        assert_eq!(
            circle_extremum(&z, &CircleFamily::new(vec![], 1.0), ExtremumKind::Min, 64),
            Err(BoundsError::EmptyFamily)
        );
    }

    #[test]
    fn circle_through_critical_point_is_uncertifiable() {
        // critical point of z^2 - 1 is 0, which lies on C(i/2; 1/2)
        let g = f(&[(1.0, 0.0, 1), (-1.0, 0.0, 1)]);
        let fam = [CircleFamily::single(c(0.0, 0.5), 0.5)];
        let once = circle_extremum(&g, &fam[0], ExtremumKind::Min, 4096).unwrap();
        assert!(!once.certified);
        assert!(matches!(
            certified_min(&g, &fam, 1 << 18),
            Err(BoundsError::Uncertifiable {
                samples: MAX_SAMPLES,
                ..
            })
        ));
    }

    #[test]
    fn separation_conditions() {
        let g = f(&[(1.0, 0.0, 1), (-1.0, 0.0, 1)]);
        assert!(theorem2_validate(&g, 3.0, 0.3).unwrap());
        assert!(!theorem2_validate(&g, 3.0, 0.6).unwrap());
        assert!(!theorem2_validate(&g, 0.2, 0.1).unwrap());
        assert!(matches!(
            theorem2_k(&g, 3.0, 0.6, 4096),
            Err(BoundsError::ValidationFailed { .. })
        ));
    }

    #[test]
    fn distant_constant_single_zero() {
        let g = f(&[(0.0, 0.0, 1)]);
        let k = theorem2_k(&g, 2.0, 0.5, 4096).unwrap();
        assert!(k.k < 0.25 && k.k > 0.25 * (1.0 - 1e-5), "{k:?}");
        assert_eq!(k.cap, 0.25);
    }

    #[test]
    fn polynomial_case_constants() {
        let l = theorem3_l(2, 2.0, 1.0).unwrap();
        assert_relative_eq!(l, 6.0 / 169.0, max_relative = 1e-12);
        let [base, pole, circle] = theorem3_terms(2, 2.0, 1.0).unwrap();
        assert_relative_eq!(base, 6.0 / 169.0, max_relative = 1e-12);
        assert_relative_eq!(pole, 6.0 / 13.0, max_relative = 1e-12);
        assert_relative_eq!(circle, 0.1, max_relative = 1e-12);
        assert_relative_eq!(theorem3_l(1, 2.0, 1.0).unwrap(), 0.05, max_relative = 1e-12);
        assert_relative_eq!(
            theorem3_terms(1, 2.0, 1.0).unwrap()[0],
            0.2,
            max_relative = 1e-12
        );
        assert!(theorem3_l(3, 2.0, 1.0).unwrap() < l);
        assert!(theorem3_l(2, 1.0, 1.0).is_err());
        assert!(theorem3_l(0, 2.0, 1.0).is_err());
    }

    #[test]
    fn power_threshold_examples() {
        let g = f(&[(0.0, 0.0, 1)]);
        let h = f(&[(1.0, 0.0, 1)]);
        let t = theorem4_threshold(&g, &h, 0.5, 1 << 14).unwrap();
        assert_eq!(t.n, 4);
        assert!((t.max_g.value - 2.0).abs() < 1e-6, "{t:?}");
        assert!((t.min_h.value - 2.0 / 3.0).abs() < 1e-6);

        let t = theorem4_threshold(&RationalFunction::constant(), &h, 0.5, 4096).unwrap();
        assert_eq!(t.max_g.value, 0.0);
        assert_eq!(t.n, 1);

        let t = theorem4_threshold(&g, &g, 0.5, 4096).unwrap();
        assert_eq!(t.n, 2);

        assert!(matches!(
            theorem4_threshold(&g, &h, 1.0, 4096),
            Err(BoundsError::EpsTooLarge { .. })
        ));
        assert_eq!(
            theorem4_threshold(&g, &RationalFunction::constant(), 0.5, 64),
            Err(BoundsError::ConstantH)
        );
    }
}
