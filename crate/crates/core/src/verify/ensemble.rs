use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{TheoremId, VerifyError};
use crate::rational::{RationalFunction, WeightedPoint};

/// Redraws allowed per generated function before giving up on separation.
const MAX_REDRAWS: usize = 10_000;

/// Parameters of a seeded random ensemble of rational functions.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleConfig {
    pub seed: u64,
    pub trials: usize,
    pub points_min: usize,
    pub points_max: usize,
    /// Locations are area-uniform in `annulus_inner <= |z| <= annulus_outer`.
    /// An inner radius of 0 gives a disk.
    pub annulus_inner: f64,
    pub annulus_outer: f64,
    pub mult_max: u32,
    pub allow_poles: bool,
    pub min_separation: f64,
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            trials: 1000,
            points_min: 2,
            points_max: 8,
            annulus_inner: 0.1,
            annulus_outer: 2.0,
            mult_max: 3,
            allow_poles: true,
            min_separation: 0.05,
        }
    }
}

impl EnsembleConfig {
    /// The default ensemble for one statement's suite: `g` in the unit disk
    /// for the distant-perturbation check, zeros only in the 0.9-disk for
    /// the polynomial case, and 200 trials for both and for the power
    /// threshold.
    pub fn for_suite(theorem: TheoremId) -> Self {
        let base = Self::default();
        match theorem {
            TheoremId::Thm2 => Self {
                trials: 200,
                annulus_outer: 1.0,
                ..base
            },
            TheoremId::Thm3 => Self {
                trials: 200,
                annulus_inner: 0.0,
                annulus_outer: 0.9,
                allow_poles: false,
                ..base
            },
            TheoremId::Thm4 => Self {
                trials: 200,
                ..base
            },
            _ => base,
        }
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        let bad = |m: &str| Err(VerifyError::InvalidConfig(m.to_string()));
        if self.points_min == 0 || self.points_min > self.points_max {
            return bad("need 1 <= points_min <= points_max");
        }
        if !(self.annulus_inner >= 0.0 && self.annulus_inner < self.annulus_outer)
            || !self.annulus_outer.is_finite()
        {
            return bad("need 0 <= annulus_inner < annulus_outer < inf");
        }
        if self.mult_max == 0 || self.mult_max > 1 << 20 {
            return bad("mult_max must be in 1..=2^20");
        }
        if !(self.min_separation > 0.0) {
            return bad("min_separation must be positive");
        }
        Ok(())
    }
}

pub(crate) fn annulus_point(rng: &mut impl Rng, inner: f64, outer: f64) -> Complex64 {
    let u: f64 = rng.random();
    let r = (inner * inner + u * (outer * outer - inner * inner)).sqrt();
    let theta = rng.random::<f64>() * std::f64::consts::TAU;
    Complex64::from_polar(r, theta)
}

/// `count` locations drawn from the annulus, each redrawn until it keeps
/// `min_separation` from those already placed and from `avoid`.
pub(crate) fn separated_points(
    rng: &mut impl Rng,
    count: usize,
    inner: f64,
    outer: f64,
    min_separation: f64,
    avoid: &[Complex64],
) -> Result<Vec<Complex64>, VerifyError> {
    let mut out: Vec<Complex64> = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        if attempts == MAX_REDRAWS {
            return Err(VerifyError::SeparationUnachievable {
                min_separation,
                attempts,
            });
        }
        attempts += 1;
        let z = annulus_point(rng, inner, outer);
        if out
            .iter()
            .chain(avoid)
            .all(|w| (z - w).norm() >= min_separation)
        {
            out.push(z);
        }
    }
    Ok(out)
}

pub(crate) fn random_multiplicity(rng: &mut impl Rng, mult_max: u32, allow_poles: bool) -> i32 {
    let m = rng.random_range(1..=mult_max) as i32;
    if allow_poles && rng.random_bool(0.5) {
        -m
    } else {
        m
    }
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn random_function(
    rng: &mut impl Rng,
    count: usize,
    inner: f64,
    outer: f64,
    min_separation: f64,
    mult_max: u32,
    allow_poles: bool,
    avoid: &[Complex64],
) -> Result<RationalFunction, VerifyError> {
    let locations = separated_points(rng, count, inner, outer, min_separation, avoid)?;
    let points = locations
        .into_iter()
        .map(|z| WeightedPoint::new(z, random_multiplicity(rng, mult_max, allow_poles)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RationalFunction::new(points)?)
}

/// Deterministic ensemble: the same configuration always yields the same
/// functions.
pub fn generate_ensemble(cfg: &EnsembleConfig) -> Result<Vec<RationalFunction>, VerifyError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.trials)
        .map(|_| {
            let count = rng.random_range(cfg.points_min..=cfg.points_max);
            random_function(
                &mut rng,
                count,
                cfg.annulus_inner,
                cfg.annulus_outer,
                cfg.min_separation,
                cfg.mult_max,
                cfg.allow_poles,
                &[],
            )
        })
        .collect()
}
