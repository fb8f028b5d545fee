//! One function per statement: compute the bound, ask the oracle, compare.

use num_complex::Complex64;

use super::{InputDigest, TrialRecord, VerifyError};
use crate::bounds::{
    corollary1_max_rho, exclusion_radius, special_points, theorem2_k, theorem2_validate,
    theorem3_l, theorem4_threshold, BoundsError, Theorem2Constant, DEFAULT_SAMPLES,
};
use crate::poly::log_derivative;
use crate::rational::{RationalFunction, WeightedPoint};
use crate::roots::{critical_points, RootResult, DEFAULT_TOL};

/// Oracle roots must have partial-fraction residual at most this to count:
/// in absolute terms for the count checks, relative to `rho_f` elsewhere.
pub const RESIDUAL_CEILING: f64 = 1e-10;

fn oracle(f: &RationalFunction) -> Result<RootResult, String> {
    let found = critical_points(f, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let worst = found
        .locations()
        .zip(&found.residuals)
        .map(|(r, &res)| res / f.rho(r))
        .fold(0.0, f64::max);
    if worst > RESIDUAL_CEILING {
        return Err(format!(
            "oracle relative residual {worst:e} above {RESIDUAL_CEILING:e}"
        ));
    }
    Ok(found)
}

fn bounds_failure(rec: TrialRecord, e: BoundsError) -> TrialRecord {
    match e {
        BoundsError::Oracle(_)
        | BoundsError::Uncertifiable { .. }
        | BoundsError::ThresholdTooLarge(_) => rec.inconclusive(e),
        other => rec.skipped(other.to_string()),
    }
}

/// Critical points of `f` including the trivial ones: every zero of
/// multiplicity `m >= 2` is a critical point of multiplicity `m - 1`.
pub fn all_critical_points(f: &RationalFunction, nontrivial: &RootResult) -> Vec<(Complex64, u32)> {
    let mut out = nontrivial.roots.clone();
    out.extend(
        f.points()
            .iter()
            .filter(|p| p.multiplicity >= 2)
            .map(|p| (p.location, p.multiplicity as u32 - 1)),
    );
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    /// Each center must receive exactly its predicted multiplicity.
    Exact,
    /// Each center must receive at least its predicted multiplicity.
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchReport {
    /// Found multiplicity within `eps` of each predicted center.
    pub counts: Vec<u32>,
    /// Found roots within `eps` of no center.
    pub unassigned: Vec<(Complex64, u32)>,
    /// Largest distance from a counted root to its center.
    pub max_offset: f64,
    pub pass: bool,
}

/// Counts found roots (with multiplicity) in the open disk of radius `eps`
/// about each predicted center.
///
/// In exact mode the open disks must be disjoint (centers at least `2 eps`
/// apart), so each root is assigned to at most one center. In at-least mode
/// disks may overlap and a root counts toward every center it is near.
pub fn match_clusters(
    predicted: &[(Complex64, u32)],
    found: &[(Complex64, u32)],
    eps: f64,
    mode: MatchMode,
) -> Result<MatchReport, VerifyError> {
    if mode == MatchMode::Exact {
        for (i, &(a, _)) in predicted.iter().enumerate() {
            for &(b, _) in &predicted[i + 1..] {
                if (a - b).norm() < 2.0 * eps {
                    return Err(VerifyError::OverlappingCenters { a, b, eps });
                }
            }
        }
    }
    let mut counts = vec![0u32; predicted.len()];
    let mut unassigned = Vec::new();
    let mut max_offset = 0.0f64;
    for &(r, m) in found {
        let mut hit = false;
        for (count, &(c, _)) in counts.iter_mut().zip(predicted) {
            let dist = (r - c).norm();
            if dist < eps {
                *count += m;
                hit = true;
                max_offset = max_offset.max(dist);
            }
        }
        if !hit {
            unassigned.push((r, m));
        }
    }
    let pass = counts
        .iter()
        .zip(predicted)
        .all(|(&got, &(_, want))| match mode {
            MatchMode::Exact => got == want,
            MatchMode::AtLeast => got >= want,
        });
    Ok(MatchReport {
        counts,
        unassigned,
        max_offset,
        pass,
    })
}

/// No critical point of `f` lies in the punctured disk about the zero or
/// pole `z0` whose radius is the exclusion radius (shrunk by `1 - tol`).
pub fn check_theorem1(
    f: &RationalFunction,
    z0: Complex64,
    tol: f64,
) -> Result<TrialRecord, VerifyError> {
    let mut rec = TrialRecord::new(
        InputDigest::new("thm1")
            .function(f)
            .point(z0)
            .real(tol)
            .finish(),
    );
    let radius = exclusion_radius(f, z0)?;
    rec.computed_constant = radius;
    let found = match oracle(f) {
        Ok(found) => found,
        Err(e) => return Ok(rec.inconclusive(e)),
    };
    rec.oracle_count = found.total_multiplicity();
    let nearest = found
        .locations()
        .map(|c| (c - z0).norm())
        .fold(f64::INFINITY, f64::min);
    if radius.is_infinite() {
        let pass = nearest.is_infinite();
        return Ok(rec.judged(
            pass,
            if pass { f64::INFINITY } else { -1.0 },
            "critical point of a monomial",
        ));
    }
    let pass = !(nearest < radius * (1.0 - tol));
    Ok(rec.judged(
        pass,
        nearest / radius - 1.0,
        format!("critical point at distance {nearest}"),
    ))
}

/// `(z - z0)^k h` has no critical points in the punctured disk of radius
/// `r` once `rho_h(z0)` is at most `|k| / ((|k| + 1) r)`.
pub fn check_corollary1(
    z0: Complex64,
    k: i32,
    r: f64,
    h: &RationalFunction,
    tol: f64,
) -> Result<TrialRecord, VerifyError> {
    let mut rec = TrialRecord::new(
        InputDigest::new("cor1")
            .point(z0)
            .int(i64::from(k))
            .real(r)
            .function(h)
            .real(tol)
            .finish(),
    );
    let threshold = corollary1_max_rho(k, r)?;
    rec.computed_constant = threshold;
    if h.is_location(z0) {
        return Ok(rec.skipped("h has a zero or pole at z0"));
    }
    let rho = h.rho(z0);
    if rho > threshold {
        return Ok(rec.skipped(format!("rho_h(z0) = {rho} above {threshold}")));
    }
    let f = h.with_point(z0, k)?;
    let found = match oracle(&f) {
        Ok(found) => found,
        Err(e) => return Ok(rec.inconclusive(e)),
    };
    rec.oracle_count = found.total_multiplicity();
    let nearest = found
        .locations()
        .map(|c| (c - z0).norm())
        .fold(f64::INFINITY, f64::min);
    let pass = !(nearest < r * (1.0 - tol));
    Ok(rec.judged(
        pass,
        nearest / r - 1.0,
        format!("critical point at distance {nearest}"),
    ))
}

/// Distant perturbation: with `rho_h(0) < K`, the critical points of `g h`
/// in the disk of radius `R` are those of `g`, each moved by less than
/// `eps` with multiplicity preserved, and none appear near zeros or poles
/// of `g`.
pub fn check_theorem2(
    g: &RationalFunction,
    r: f64,
    eps: f64,
    h: &RationalFunction,
    tol: f64,
) -> Result<TrialRecord, VerifyError> {
    theorem2_trial(g, r, eps, h, tol, None)
}

pub(crate) fn theorem2_trial(
    g: &RationalFunction,
    r: f64,
    eps: f64,
    h: &RationalFunction,
    tol: f64,
    known: Option<Theorem2Constant>,
) -> Result<TrialRecord, VerifyError> {
    let rec = TrialRecord::new(
        InputDigest::new("thm2")
            .function(g)
            .real(r)
            .real(eps)
            .function(h)
            .real(tol)
            .finish(),
    );
    if g.is_empty() {
        return Ok(rec.skipped("g is constant"));
    }
    let constant = match known {
        Some(k) => k,
        None => match theorem2_validate(g, r, eps) {
            Ok(true) => match theorem2_k(g, r, eps, DEFAULT_SAMPLES) {
                Ok(k) => k,
                Err(e) => return Ok(bounds_failure(rec, e)),
            },
            Ok(false) => return Ok(rec.skipped("(R, eps) fail the separation conditions")),
            Err(e) => return Ok(bounds_failure(rec, e)),
        },
    };
    let mut rec = rec;
    rec.computed_constant = constant.k;
    if h.is_location(Complex64::new(0.0, 0.0)) {
        return Ok(rec.skipped("h has a zero or pole at the origin"));
    }
    let rho = h.rho(Complex64::new(0.0, 0.0));
    if !(rho < constant.k) {
        return Ok(rec.skipped(format!("rho_h(0) = {rho} not below K")));
    }
    if h.locations().any(|w| g.is_location(w)) {
        return Ok(rec.skipped("g and h share a location"));
    }
    let gh = g.product(h)?;
    let (crit_g, crit_gh) = match (oracle(g), oracle(&gh)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Ok(rec.inconclusive(e)),
    };
    rec.oracle_count = crit_gh.total_multiplicity();
    let matched = match match_clusters(&crit_g.roots, &crit_gh.roots, eps, MatchMode::Exact) {
        Ok(m) => m,
        Err(e) => return Ok(rec.skipped(e.to_string())),
    };
    let mut margin = if crit_g.roots.is_empty() {
        f64::INFINITY
    } else {
        1.0 - matched.max_offset / eps
    };
    let mut why = String::new();
    if !matched.pass {
        why = format!("cluster counts {:?} vs predicted", matched.counts);
    }
    let mut ok = matched.pass;
    for &(c, _) in &matched.unassigned {
        let near_g = g
            .locations()
            .map(|w| (c - w).norm())
            .fold(f64::INFINITY, f64::min);
        if near_g < eps * (1.0 - tol) {
            ok = false;
            why = format!("critical point {c} within eps of a zero or pole of g");
        }
        margin = margin.min(near_g / eps - 1.0);
        if c.norm() < r * (1.0 - tol) {
            ok = false;
            why = format!("extra critical point {c} inside the disk of radius R");
        }
        margin = margin.min(c.norm() / r - 1.0);
    }
    Ok(rec.judged(ok, margin, why))
}

/// Polynomial case: for a monic degree-`n` polynomial `p` with zeros in the
/// unit disk and `rho_h(0) < L(n, R, eps)`, every critical point of `p` of
/// multiplicity `m` has at least `m` critical points of `p h` within `eps`,
/// and `p h` has exactly `n - 1` critical points in the disk of radius `R`.
pub fn check_theorem3(
    p_zeros: &[(Complex64, u32)],
    r: f64,
    eps: f64,
    h: &RationalFunction,
    tol: f64,
) -> Result<TrialRecord, VerifyError> {
    let mut digest = InputDigest::new("thm3");
    for &(z, m) in p_zeros {
        digest = digest.point(z).int(i64::from(m));
    }
    let mut rec = TrialRecord::new(digest.real(r).real(eps).function(h).real(tol).finish());
    if let Some(&(z, _)) = p_zeros.iter().find(|(z, _)| !(z.norm() < 1.0)) {
        return Err(VerifyError::ZeroOutsideUnitDisk(z));
    }
    let points = p_zeros
        .iter()
        .map(|&(z, m)| {
            let m =
                i32::try_from(m).map_err(|_| crate::rational::ModelError::MultiplicityOverflow)?;
            WeightedPoint::new(z, m)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let p = RationalFunction::new(points)?;
    let n: u32 = p_zeros.iter().map(|&(_, m)| m).sum();
    if n == 0 {
        return Err(VerifyError::Precondition(
            "p must have positive degree".into(),
        ));
    }
    let l = theorem3_l(n, r, eps)?;
    rec.computed_constant = l;
    if h.is_location(Complex64::new(0.0, 0.0)) {
        return Ok(rec.skipped("h has a zero or pole at the origin"));
    }
    let rho = h.rho(Complex64::new(0.0, 0.0));
    if !(rho < l) {
        return Ok(rec.skipped(format!("rho_h(0) = {rho} not below L")));
    }
    if h.locations().any(|w| p.is_location(w)) {
        return Ok(rec.skipped("p and h share a location"));
    }
    let ph = p.product(h)?;
    let (crit_p, crit_ph) = match (oracle(&p), oracle(&ph)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Ok(rec.inconclusive(e)),
    };
    let predicted = all_critical_points(&p, &crit_p);
    let found = all_critical_points(&ph, &crit_ph);
    rec.oracle_count = crit_ph.total_multiplicity();
    let matched = match_clusters(&predicted, &found, eps, MatchMode::AtLeast)?;
    let inside: u32 = found
        .iter()
        .filter(|(c, _)| c.norm() < r)
        .map(|&(_, m)| m)
        .sum();
    let mut margin = if predicted.is_empty() {
        f64::INFINITY
    } else {
        1.0 - matched.max_offset / eps
    };
    for &(c, _) in &found {
        margin = margin.min((c.norm() - r).abs() / r);
    }
    let count_ok = inside == n - 1;
    let why = if !matched.pass {
        format!("cluster counts {:?} below predicted", matched.counts)
    } else if !count_ok {
        format!(
            "{inside} critical points inside the disk of radius R, expected {}",
            n - 1
        )
    } else {
        String::new()
    };
    Ok(rec.judged(
        matched.pass && count_ok,
        if matched.pass && count_ok {
            margin
        } else {
            -margin.abs()
        },
        why,
    ))
}

/// Critical points of `g h^n` at the threshold power `n`: each non-trivial
/// critical point of `h` of multiplicity `m` attracts exactly `m`, each zero
/// or pole of `g` exactly one, and the finite count plus the deficiency at
/// infinity is `k - 1`.
pub fn check_theorem4(
    g: &RationalFunction,
    h: &RationalFunction,
    eps: f64,
    tol: f64,
) -> Result<TrialRecord, VerifyError> {
    let rec = TrialRecord::new(
        InputDigest::new("thm4")
            .function(g)
            .function(h)
            .real(eps)
            .real(tol)
            .finish(),
    );
    if h.is_empty() {
        return Ok(rec.skipped("h is constant"));
    }
    if h.locations().any(|w| g.is_location(w)) {
        return Ok(rec.skipped("g and h share a location"));
    }
    let threshold = match theorem4_threshold(g, h, eps, DEFAULT_SAMPLES) {
        Ok(t) => t,
        Err(e) => return Ok(bounds_failure(rec, e)),
    };
    let mut rec = rec;
    rec.computed_constant = f64::from(threshold.n);
    let f = g.product(&h.power(threshold.n)?)?;
    let (crit_h, crit_f) = match (oracle(h), oracle(&f)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Ok(rec.inconclusive(e)),
    };
    rec.oracle_count = crit_f.total_multiplicity();
    let mut predicted = crit_h.roots.clone();
    predicted.extend(g.locations().map(|w| (w, 1)));
    let matched = match match_clusters(&predicted, &crit_f.roots, eps, MatchMode::Exact) {
        Ok(m) => m,
        Err(e) => return Ok(rec.skipped(e.to_string())),
    };
    let expected = f.distinct_count() - 1;
    let total = crit_f.total_multiplicity() + crit_f.deficiency_at_infinity;
    let pass = matched.pass && total == expected;
    let why = if !matched.pass {
        format!("cluster counts {:?} vs predicted", matched.counts)
    } else {
        format!("{total} critical points, expected {expected}")
    };
    let margin = if predicted.is_empty() {
        f64::INFINITY
    } else {
        1.0 - matched.max_offset / eps
    };
    Ok(rec.judged(pass, if pass { margin } else { -1.0 }, why))
}

/// `rho_f(z2)` never exceeds the continuity bound taken at `z1`.
pub fn check_lemma1(
    f: &RationalFunction,
    z1: Complex64,
    z2: Complex64,
) -> Result<TrialRecord, VerifyError> {
    let mut rec = TrialRecord::new(
        InputDigest::new("lemma1")
            .function(f)
            .point(z1)
            .point(z2)
            .finish(),
    );
    let bound = f.rho_continuity_bound(z1, z2)?;
    rec.computed_constant = bound;
    let actual = f.rho(z2);
    let margin = if actual == 0.0 {
        f64::INFINITY
    } else {
        bound / actual - 1.0
    };
    Ok(rec.judged(
        actual <= bound,
        margin,
        format!("rho = {actual} above bound {bound}"),
    ))
}

/// The zeros of `f'/f` are the oracle roots of `N` (small partial-fraction
/// residual, never at a zero or pole) and `N` vanishes at no location.
pub fn check_lemma2(f: &RationalFunction) -> Result<TrialRecord, VerifyError> {
    let mut rec = TrialRecord::new(InputDigest::new("lemma2").function(f).finish());
    let ld = log_derivative(f).map_err(crate::roots::RootError::from)?;
    let n_at_locations = f
        .locations()
        .map(|w| ld.numerator.eval(w).norm())
        .fold(f64::INFINITY, f64::min);
    rec.computed_constant = n_at_locations;
    let found = match critical_points(f, DEFAULT_TOL) {
        Ok(found) => found,
        Err(e) => return Ok(rec.inconclusive(e)),
    };
    rec.oracle_count = found.total_multiplicity();
    let worst = found.max_residual();
    let on_location = found.locations().any(|c| f.is_location(c));
    let pass = n_at_locations > 0.0 && worst <= RESIDUAL_CEILING && !on_location;
    Ok(rec.judged(
        pass,
        1.0 - worst / RESIDUAL_CEILING,
        format!("min |N(w)| = {n_at_locations}, worst residual {worst:e}"),
    ))
}

/// Finite critical points plus the deficiency at infinity number `k - 1`,
/// and the oracle returns `deg N` roots.
pub fn check_remark_count(f: &RationalFunction) -> Result<TrialRecord, VerifyError> {
    let mut rec = TrialRecord::new(InputDigest::new("remark_count").function(f).finish());
    let ld = log_derivative(f).map_err(crate::roots::RootError::from)?;
    let expected = ld.expected_critical_count();
    rec.computed_constant = expected as f64;
    let found = match critical_points(f, DEFAULT_TOL) {
        Ok(found) => found,
        Err(e) => return Ok(rec.inconclusive(e)),
    };
    rec.oracle_count = found.total_multiplicity();
    let pass = found.total_multiplicity() == ld.numerator.degree()
        && found.total_multiplicity() + found.deficiency_at_infinity == expected;
    Ok(rec.judged(
        pass,
        0.0,
        format!(
            "{} finite + {} at infinity, expected {expected}",
            found.total_multiplicity(),
            found.deficiency_at_infinity
        ),
    ))
}

pub(crate) fn min_pairwise(points: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.min((a - b).norm());
        }
    }
    best
}

/// `A` for the power-threshold check: zeros, poles and critical points of
/// both functions.
pub(crate) fn theorem4_centers(
    g: &RationalFunction,
    h: &RationalFunction,
) -> Result<Vec<Complex64>, BoundsError> {
    let mut a = special_points(g)?;
    for w in special_points(h)? {
        if !a.contains(&w) {
            a.push(w);
        }
    }
    Ok(a)
}
