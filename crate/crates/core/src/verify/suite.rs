use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::checks::{
    check_corollary1, check_lemma1, check_lemma2, check_remark_count, check_theorem1,
    check_theorem3, check_theorem4, min_pairwise, theorem2_trial, theorem4_centers,
};
use super::ensemble::{generate_ensemble, random_function, separated_points, EnsembleConfig};
use super::{InputDigest, TheoremId, TrialRecord, VerificationReport, VerifyError};
use crate::bounds::{
    special_points, theorem2_k, theorem2_validate, theorem3_l, BoundsError, Theorem2Constant,
    DEFAULT_SAMPLES,
};
use crate::rational::RationalFunction;

/// Points and multiplicity cap for the far function `h`; with at most 3
/// points of multiplicity at most 3 placed at modulus `>= 10 / K`, the sum
/// `rho_h(0) <= 9 K / 10` stays below `K`.
const FAR_POINTS_MAX: usize = 3;
const FAR_MULT_MAX: u32 = 3;

/// A `g` whose zeros, poles or critical points reach past `R - eps` is
/// outside the statement's hypotheses; it is replaced by a fresh draw from
/// the trial's stream at most this many times before the trial is skipped.
const THM2_REDRAWS: usize = 50;

/// Per-suite knobs. `None` selects the suite's default.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteParams {
    /// Relative tolerance at ball boundaries.
    pub tol: f64,
    /// Disk radius `R` (thm2 default 3, thm3 default 2).
    pub r: Option<f64>,
    /// Absolute `eps` (thm3 default 0.5). Overrides `eps_factor`.
    pub eps: Option<f64>,
    /// `eps` as a fraction of the minimum gap (thm2 default 0.1, thm4 0.4).
    pub eps_factor: Option<f64>,
    pub samples: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            r: None,
            eps: None,
            eps_factor: None,
            samples: DEFAULT_SAMPLES,
        }
    }
}

impl SuiteParams {
    pub fn validate(&self) -> Result<(), VerifyError> {
        let bad = |what: String| Err(VerifyError::InvalidConfig(what));
        if !(self.tol >= 0.0 && self.tol < 1.0) {
            return bad(format!("tol must lie in [0, 1), got {}", self.tol));
        }
        for (name, v) in [
            ("R", self.r),
            ("eps", self.eps),
            ("eps_factor", self.eps_factor),
        ] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return bad(format!("{name} must be positive, got {v}"));
                }
            }
        }
        if self.samples == 0 {
            return bad("samples must be positive".into());
        }
        Ok(())
    }
}

fn trial_rng(seed: u64, theorem: TheoremId, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tag = TheoremId::ALL
        .iter()
        .position(|&t| t == theorem)
        .unwrap_or(0) as u64;
    rng.set_stream((tag << 40) | index as u64);
    rng
}

fn skipped_for(
    theorem: TheoremId,
    f: &RationalFunction,
    why: impl std::fmt::Display,
) -> TrialRecord {
    TrialRecord::new(InputDigest::new(theorem.as_str()).function(f).finish())
        .skipped(why.to_string())
}

type Theorem2Setup = (f64, Result<Theorem2Constant, BoundsError>);

/// `(eps, K)` when `g` meets the separation conditions at radius `R`,
/// `None` when it does not.
fn theorem2_setup(
    g: &RationalFunction,
    r: f64,
    params: &SuiteParams,
) -> Result<Option<Theorem2Setup>, VerifyError> {
    let centers = match special_points(g) {
        Ok(c) => c,
        Err(_) => return Ok(None),
    };
    let eps = params
        .eps
        .unwrap_or_else(|| params.eps_factor.unwrap_or(0.1) * min_pairwise(&centers));
    if !eps.is_finite() || !theorem2_validate(g, r, eps).unwrap_or(false) {
        return Ok(None);
    }
    Ok(Some((eps, theorem2_k(g, r, eps, params.samples))))
}

fn far_function(
    rng: &mut impl Rng,
    constant: f64,
    allow_poles: bool,
) -> Result<RationalFunction, VerifyError> {
    let inner = 10.0 / constant;
    let count = rng.random_range(1..=FAR_POINTS_MAX);
    random_function(
        rng,
        count,
        inner,
        2.0 * inner,
        inner * 1e-3,
        FAR_MULT_MAX,
        allow_poles,
        &[],
    )
}

/// Runs one statement's check over a seeded ensemble. Records come back in
/// trial order regardless of how trials were scheduled.
pub fn run_suite(
    theorem: TheoremId,
    cfg: &EnsembleConfig,
    params: &SuiteParams,
) -> Result<VerificationReport, VerifyError> {
    cfg.validate()?;
    params.validate()?;
    let ensemble = match theorem {
        TheoremId::Thm3 => generate_ensemble(&EnsembleConfig {
            allow_poles: false,
            ..cfg.clone()
        })?,
        TheoremId::Thm4 => Vec::new(),
        _ => generate_ensemble(cfg)?,
    };
    let records = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(cfg.seed, theorem, i);
            let f = ensemble.get(i);
            let mut rec = run_trial(theorem, cfg, params, f, &mut rng)?;
            rec.trial_index = i;
            Ok(rec)
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;
    Ok(VerificationReport::new(theorem, records))
}

fn run_trial(
    theorem: TheoremId,
    cfg: &EnsembleConfig,
    params: &SuiteParams,
    f: Option<&RationalFunction>,
    rng: &mut ChaCha8Rng,
) -> Result<TrialRecord, VerifyError> {
    let tol = params.tol;
    let empty = RationalFunction::constant();
    let f = f.unwrap_or(&empty);
    match theorem {
        TheoremId::Thm1 => {
            let z0 = f.points()[rng.random_range(0..f.distinct_count())].location;
            check_theorem1(f, z0, tol)
        }
        TheoremId::Cor1 => {
            let z0 = Complex64::new(0.0, 0.0);
            if f.is_location(z0) {
                return Ok(skipped_for(theorem, f, "origin is a location"));
            }
            let k = rng.random_range(1..=cfg.mult_max as i32)
                * if rng.random_bool(0.5) { 1 } else { -1 };
            let kf = f64::from(k.unsigned_abs());
            let r_max = kf / ((kf + 1.0) * f.rho(z0));
            let r = r_max * rng.random_range(0.5..=1.0);
            check_corollary1(z0, k, r, f, tol)
        }
        TheoremId::Thm2 => {
            let r = params.r.unwrap_or(3.0);
            let mut g = f.clone();
            let mut redraws = 0;
            let (eps, constant) = loop {
                if let Some(found) = theorem2_setup(&g, r, params)? {
                    break found;
                }
                if redraws == THM2_REDRAWS {
                    return Ok(skipped_for(
                        theorem,
                        f,
                        "(R, eps) fail the separation conditions",
                    ));
                }
                redraws += 1;
                let count = rng.random_range(cfg.points_min..=cfg.points_max);
                g = random_function(
                    rng,
                    count,
                    cfg.annulus_inner,
                    cfg.annulus_outer,
                    cfg.min_separation,
                    cfg.mult_max,
                    cfg.allow_poles,
                    &[],
                )?;
            };
            let constant = match constant {
                Ok(k) => k,
                Err(e) => return Ok(skipped_for(theorem, &g, "").inconclusive(e)),
            };
            let h = far_function(rng, constant.k, cfg.allow_poles)?;
            let mut rec = theorem2_trial(&g, r, eps, &h, tol, Some(constant))?;
            if redraws > 0 && rec.note.is_empty() {
                rec.note = format!("g redrawn {redraws} times");
            }
            Ok(rec)
        }
        TheoremId::Thm3 => {
            let r = params.r.unwrap_or(2.0);
            let eps = params.eps.unwrap_or(0.5);
            let zeros: Vec<(Complex64, u32)> = f
                .points()
                .iter()
                .map(|p| (p.location, p.multiplicity as u32))
                .collect();
            let n = zeros.iter().map(|&(_, m)| m).sum();
            let l = theorem3_l(n, r, eps)?;
            let h = far_function(rng, l, true)?;
            check_theorem3(&zeros, r, eps, &h, tol)
        }
        TheoremId::Thm4 => {
            let g_count = rng.random_range(1..=3);
            let h_count = rng.random_range(1..=3);
            let locations = separated_points(
                rng,
                g_count + h_count,
                cfg.annulus_inner,
                cfg.annulus_outer,
                cfg.min_separation,
                &[],
            )?;
            let g = random_function(rng, 0, 0.0, 1.0, 1.0, 1, false, &[])?;
            let mut g = g;
            for &z in &locations[..g_count] {
                let m = super::ensemble::random_multiplicity(rng, cfg.mult_max, cfg.allow_poles);
                g = g.with_point(z, m)?;
            }
            let mut h = RationalFunction::constant();
            for &z in &locations[g_count..] {
                let m = super::ensemble::random_multiplicity(rng, cfg.mult_max, cfg.allow_poles);
                h = h.with_point(z, m)?;
            }
            let eps = match params.eps {
                Some(eps) => eps,
                None => match theorem4_centers(&g, &h) {
                    Ok(a) => params.eps_factor.unwrap_or(0.4) * min_pairwise(&a),
                    Err(e) => return Ok(skipped_for(theorem, &g, "").inconclusive(e)),
                },
            };
            check_theorem4(&g, &h, eps, tol)
        }
        TheoremId::Lemma1 => {
            let reach = cfg.annulus_outer * 1.2;
            let z1 = loop {
                let z = super::ensemble::annulus_point(rng, 0.0, reach);
                if !f.is_location(z) {
                    break z;
                }
            };
            let d = f.min_distance(z1);
            let step = if d.is_finite() { d } else { 1.0 };
            let z2 = z1
                + Complex64::from_polar(
                    step * 0.9 * rng.random::<f64>(),
                    rng.random::<f64>() * std::f64::consts::TAU,
                );
            check_lemma1(f, z1, z2)
        }
        TheoremId::Lemma2 => check_lemma2(f),
        TheoremId::RemarkCount => check_remark_count(f),
    }
}
