//! Simultaneous polynomial root finding (Aberth-Ehrlich) with residual
//! certificates and cluster-based multiplicity recovery.
//!
//! This is the oracle every bound in [`crate::bounds`] is checked against, so
//! it is deliberately independent of them: it only sees polynomial
//! coefficients and the partial-fraction form of `f'/f`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::{log_derivative, PolyError, Polynomial};
use crate::rational::RationalFunction;

/// Default residual tolerance for [`find_roots`] and [`critical_points`].
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITERS: usize = 500;

/// Fixed angular offset of the starting points; keeps them off any symmetry
/// axis of real or symmetric inputs.
const START_ANGLE: f64 = 0.7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("no convergence after {iterations} iterations (worst residual {worst:e})")]
    NonConvergence {
        best: Vec<Complex64>,
        residuals: Vec<f64>,
        iterations: usize,
        worst: f64,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Roots with multiplicities, their residuals, and (for critical points) the
/// number of critical points at infinity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RootResult {
    pub roots: Vec<(Complex64, u32)>,
    pub residuals: Vec<f64>,
    pub deficiency_at_infinity: usize,
    pub iterations: usize,
}

impl RootResult {
    /// Number of finite roots counted with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|&(_, m)| m as usize).sum()
    }

    pub fn locations(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.roots.iter().map(|&(z, _)| z)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Value, logarithmic derivative and rounding-error scale of a polynomial at
/// one point, computed in whichever of `p(z)` or `z^n p(1/z)` keeps the
/// powers of `z` bounded.
struct Evaluation {
    /// `p'(z) / p(z)`, or `None` when `p(z)` is exactly zero.
    log_derivative: Option<Complex64>,
    /// `|p(z)| / max(1, |z|)^n` for coefficients scaled to unit maximum.
    residual: f64,
    /// Same scale as `residual`: the modulus a backward-stable evaluation
    /// cannot resolve.
    noise: f64,
}

fn evaluate(a: &[Complex64], z: Complex64) -> Evaluation {
    let n = a.len() - 1;
    let zero = Complex64::new(0.0, 0.0);
    let gamma = 2.0 * (n as f64 + 1.0) * f64::EPSILON;
    if z.norm() <= 1.0 {
        let (mut p, mut dp, mut s) = (zero, zero, 0.0);
        let r = z.norm();
        for &c in a.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
            s = s * r + c.norm();
        }
        Evaluation {
            log_derivative: (p != zero).then(|| dp / p),
            residual: p.norm(),
            noise: gamma * s,
        }
    } else {
        // q(y) = sum a_{n-j} y^j with y = 1/z, p(z) = z^n q(y),
        // p'/p = y (n - y q'(y)/q(y)).
        let y = z.inv();
        let (mut q, mut dq, mut s) = (zero, zero, 0.0);
        let r = y.norm();
        for &c in a.iter() {
            dq = dq * y + q;
            q = q * y + c;
            s = s * r + c.norm();
        }
        Evaluation {
            log_derivative: (q != zero).then(|| y * (n as f64 - y * dq / q)),
            residual: q.norm(),
            noise: gamma * s,
        }
    }
}

/// Starting points from the Newton polygon: the upper convex hull of
/// `(j, ln|a_j|)` splits the roots into groups of comparable modulus, and
/// each group is spread on a circle of the matching radius.
fn initial_guesses(a: &[Complex64]) -> Vec<Complex64> {
    let n = a.len() - 1;
    let pts: Vec<(usize, f64)> = a
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(j, c)| (j, c.norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while hull.len() >= 2 {
            let (i1, y1) = hull[hull.len() - 2];
            let (i2, y2) = hull[hull.len() - 1];
            // drop i2 unless it lies strictly above the chord i1 -> p
            let cross = (i2 as f64 - i1 as f64) * (p.1 - y1) - (y2 - y1) * (p.0 as f64 - i1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut guesses = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let (i, yi) = w[0];
        let (k, yk) = w[1];
        let count = k - i;
        let radius = ((yi - yk) / count as f64).exp();
        for t in 0..count {
            let angle = TAU * t as f64 / count as f64 + TAU * i as f64 / n as f64 + START_ANGLE;
            guesses.push(Complex64::from_polar(radius, angle));
        }
    }
    guesses
}

fn validate_tol(tol: f64) -> Result<(), RootError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(RootError::InvalidTolerance(tol))
    }
}

/// All roots of `p`, counted with multiplicity.
///
/// Approximations start on the Newton-polygon circles and are updated in
/// place by the Aberth correction `1 / (p'/p - sum_j 1/(z_i - z_j))` until
/// each one is either at the rounding-noise floor of `p` or stationary.
/// Every approximation must then satisfy the residual certificate
/// `|p(r)| / (max|a_j| max(1,|r|)^deg) <= tol`; otherwise the call fails
/// with [`RootError::NonConvergence`]. Approximations closer than
/// `sqrt(tol) max(1, |r|)` are merged into one root whose multiplicity is
/// the cluster size.
pub fn find_roots(p: &Polynomial, tol: f64, max_iters: usize) -> Result<RootResult, RootError> {
    validate_tol(tol)?;
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let scaled = p.normalized();
    let coeffs = scaled.coeffs();
    let zero_roots = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let a = &coeffs[zero_roots..];
    let n = a.len() - 1;

    let mut z = if n > 0 {
        initial_guesses(a)
    } else {
        Vec::new()
    };
    let mut done = vec![false; n];
    let mut iterations = 0;
    while iterations < max_iters && done.iter().any(|d| !d) {
        iterations += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let ev = evaluate(a, z[i]);
            let Some(ld) = ev.log_derivative else {
                done[i] = true;
                continue;
            };
            if ev.residual <= ev.noise {
                done[i] = true;
                continue;
            }
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let corr = (ld - repulsion).inv();
            if !corr.re.is_finite() || !corr.im.is_finite() {
                continue;
            }
            z[i] -= corr;
            if corr.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                done[i] = true;
            }
        }
    }

    let residuals: Vec<f64> = z.iter().map(|&r| evaluate(a, r).residual).collect();
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    if !(worst <= tol) {
        return Err(RootError::NonConvergence {
            best: z,
            residuals,
            iterations,
            worst,
        });
    }

    // n |p/p'| bounds the distance to the nearest root; approximations
    // whose inclusion disks overlap cannot be told apart.
    let inclusion: Vec<f64> = z
        .iter()
        .map(|&r| match evaluate(a, r).log_derivative {
            Some(ld) if ld.norm() > 0.0 => n as f64 / ld.norm(),
            _ => 0.0,
        })
        .collect();
    let radius = tol.sqrt();
    let groups = cluster_groups(n, |i, j| {
        let (u, v) = (z[i], z[j]);
        let d = (u - v).norm();
        d <= radius * u.norm().max(v.norm()).max(1.0) || d <= inclusion[i] + inclusion[j]
    });
    let reduced = Polynomial::new(a.to_vec());
    let mut roots: Vec<(Complex64, u32)> = groups
        .iter()
        .map(|g| {
            let centroid = g.iter().map(|&i| z[i]).sum::<Complex64>() / g.len() as f64;
            if g.len() == 1 {
                return (centroid, 1);
            }
            let spread = g
                .iter()
                .map(|&i| (z[i] - centroid).norm())
                .fold(0.0, f64::max);
            (
                refine_multiple(&reduced, centroid, g.len(), 2.0 * spread),
                g.len() as u32,
            )
        })
        .collect();
    sort_roots(&mut roots);
    if zero_roots > 0 {
        roots.push((Complex64::new(0.0, 0.0), zero_roots as u32));
        sort_roots(&mut roots);
    }
    let full = scaled.coeffs();
    let residuals: Vec<f64> = roots
        .iter()
        .map(|&(r, _)| evaluate(full, r).residual)
        .collect();
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    if !(worst <= tol) {
        return Err(RootError::NonConvergence {
            best: roots.iter().map(|&(r, _)| r).collect(),
            residuals,
            iterations,
            worst,
        });
    }
    Ok(RootResult {
        roots,
        residuals,
        deficiency_at_infinity: 0,
        iterations,
    })
}

/// Single-linkage clustering at a fixed linkage distance. Each cluster is
/// reported as `(centroid, size)`, sorted by real then imaginary part.
pub fn cluster_roots(raw: &[Complex64], radius: f64) -> Vec<(Complex64, u32)> {
    cluster_indexed(raw, |i, j| (raw[i] - raw[j]).norm() <= radius)
}

fn cluster_indexed(
    raw: &[Complex64],
    linked: impl Fn(usize, usize) -> bool,
) -> Vec<(Complex64, u32)> {
    let mut out: Vec<(Complex64, u32)> = cluster_groups(raw.len(), linked)
        .into_iter()
        .map(|g| {
            let m = g.len() as u32;
            (
                g.iter().map(|&i| raw[i]).sum::<Complex64>() / f64::from(m),
                m,
            )
        })
        .collect();
    sort_roots(&mut out);
    out
}

fn cluster_groups(n: usize, linked: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if linked(i, j) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[rj.max(ri)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let r = find(&mut parent, i);
        groups[r].push(i);
    }
    groups.retain(|g| !g.is_empty());
    groups
}

/// An `m`-fold root of `p` is a simple root of `p^(m-1)`; Newton on that
/// derivative sharpens the cluster centroid. Falls back to the centroid if
/// the iteration leaves the cluster.
fn refine_multiple(p: &Polynomial, centroid: Complex64, m: usize, reach: f64) -> Complex64 {
    let mut q = p.clone();
    for _ in 1..m {
        q = q.derivative();
    }
    let q = q.normalized();
    if q.degree() < 1 {
        return centroid;
    }
    let mut z = centroid;
    for _ in 0..32 {
        let Some(ld) = evaluate(q.coeffs(), z).log_derivative else {
            break;
        };
        let step = ld.inv();
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    if (z - centroid).norm() <= reach {
        z
    } else {
        centroid
    }
}

fn sort_roots(roots: &mut [(Complex64, u32)]) {
    roots.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
}

/// Non-trivial critical points of `f`: the roots of the numerator of `f'/f`.
///
/// Simple roots are polished by Newton steps on the partial-fraction sum
/// `F(z) = sum m_i/(z - w_i)`. Residuals are `|F(r)|`, and each must satisfy
/// `|F(r)| <= tol * rho_f(r)`, i.e. be small against the terms it sums.
pub fn critical_points(f: &RationalFunction, tol: f64) -> Result<RootResult, RootError> {
    validate_tol(tol)?;
    let ld = log_derivative(f)?;
    let deficiency = ld.deficiency_at_infinity();
    let mut found = find_roots(&ld.numerator, tol, DEFAULT_MAX_ITERS)?;
    for (r, m) in found.roots.iter_mut() {
        if *m == 1 {
            *r = polish(f, *r);
        }
    }
    let mut residuals = Vec::with_capacity(found.roots.len());
    let mut ok = true;
    for &(r, _) in &found.roots {
        let value = f
            .log_derivative_at(r)
            .map_err(|_| PolyError::EvaluationAtPole(r))?;
        let res = value.norm();
        ok &= res <= tol * f.rho(r);
        residuals.push(res);
    }
    if !ok {
        let worst = residuals.iter().copied().fold(0.0, f64::max);
        return Err(RootError::NonConvergence {
            best: found.roots.iter().map(|&(r, _)| r).collect(),
            residuals,
            iterations: found.iterations,
            worst,
        });
    }
    sort_roots(&mut found.roots);
    // re-derive residual order after sorting
    let residuals = found
        .roots
        .iter()
        .map(|&(r, _)| f.log_derivative_unchecked(r).norm())
        .collect();
    Ok(RootResult {
        roots: found.roots,
        residuals,
        deficiency_at_infinity: deficiency,
        iterations: found.iterations,
    })
}

/// Newton on the partial-fraction form, accepted only while `|F|` decreases
/// and the point stays well away from every zero and pole.
fn polish(f: &RationalFunction, start: Complex64) -> Complex64 {
    let mut z = start;
    let mut best = f.log_derivative_unchecked(z).norm();
    for _ in 0..6 {
        if best == 0.0 {
            break;
        }
        let slope = f.log_derivative_slope(z);
        let step = f.log_derivative_unchecked(z) / slope;
        if !step.re.is_finite() || !step.im.is_finite() || step.norm() > 0.25 * f.min_distance(z) {
            break;
        }
        let next = z - step;
        let value = f.log_derivative_unchecked(next).norm();
        if !(value < best) {
            break;
        }
        z = next;
        best = value;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_pairs() {
        let r = find_roots(&Polynomial::from_real(&[1.0, 0.0, 1.0]), DEFAULT_TOL, 100).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!((r.roots[0].0 - c(0.0, -1.0)).norm() < 1e-12);
        assert!((r.roots[1].0 - c(0.0, 1.0)).norm() < 1e-12);
        assert!(r.roots.iter().all(|&(_, m)| m == 1));

        let r = find_roots(&Polynomial::from_real(&[3.0, -8.0, 3.0]), DEFAULT_TOL, 100).unwrap();
        let lo = (8.0 - 28f64.sqrt()) / 6.0;
        let hi = (8.0 + 28f64.sqrt()) / 6.0;
        assert!((r.roots[0].0 - c(lo, 0.0)).norm() < 1e-12);
        assert!((r.roots[1].0 - c(hi, 0.0)).norm() < 1e-12);
        assert!((lo - 0.4514162).abs() < 1e-7 && (hi - 2.2152504).abs() < 1e-7);
    }

    #[test]
    fn triple_root_is_one_cluster() {
        let p = Polynomial::from_real(&[-1.0, 3.0, -3.0, 1.0]);
        let r = find_roots(&p, DEFAULT_TOL, DEFAULT_MAX_ITERS).unwrap();
        assert_eq!(r.roots.len(), 1, "{r:?}");
        assert_eq!(r.roots[0].1, 3);
        assert!((r.roots[0].0 - c(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn exact_zero_roots_split_off() {
        let p = Polynomial::from_real(&[0.0, 0.0, -1.0, 1.0]);
        let r = find_roots(&p, DEFAULT_TOL, 100).unwrap();
        assert_eq!(r.roots, vec![(c(0.0, 0.0), 2), (c(1.0, 0.0), 1)]);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(
            find_roots(&Polynomial::zero(), DEFAULT_TOL, 10),
            Err(RootError::ZeroPolynomial)
        );
        let r = find_roots(&Polynomial::from_real(&[5.0]), DEFAULT_TOL, 10).unwrap();
        assert!(r.roots.is_empty());
        assert!(matches!(
            find_roots(&Polynomial::from_real(&[1.0, 1.0]), -1.0, 10),
            Err(RootError::InvalidTolerance(_))
        ));
    }

    #[test]
    fn iteration_cap_reports_best_iterate() {
        let p = Polynomial::from_roots(&[(c(0.3, 0.1), 1), (c(-2.0, 1.0), 1), (c(5.0, 0.0), 1)]);
        match find_roots(&p, 1e-14, 1) {
            Err(RootError::NonConvergence {
                best, residuals, ..
            }) => {
                assert_eq!(best.len(), 3);
                assert_eq!(residuals.len(), 3);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn wide_dynamic_range() {
        let roots = [
            (c(0.5, 0.0), 1),
            (c(-0.25, 0.5), 1),
            (c(3e12, 1e12), 1),
            (c(-4e12, 0.0), 1),
        ];
        let p = Polynomial::from_roots(&roots);
        let r = find_roots(&p, DEFAULT_TOL, DEFAULT_MAX_ITERS).unwrap();
        assert_eq!(r.total_multiplicity(), 4);
        for (w, _) in roots {
            let nearest = r
                .locations()
                .map(|x| (x - w).norm() / w.norm())
                .fold(f64::MAX, f64::min);
            assert!(nearest < 1e-10, "{w} missing from {r:?}");
        }
    }

    #[test]
    fn clustering() {
        let out = cluster_roots(&[c(1.0000001, 0.0), c(0.9999999, 0.0)], 1e-5);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].1, 2);
        assert!((out[0].0 - c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(
            cluster_roots(&[c(0.0, 0.0), c(1.0, 0.0)], 1e-5),
            vec![(c(0.0, 0.0), 1), (c(1.0, 0.0), 1)]
        );
        assert!(cluster_roots(&[], 1e-5).is_empty());
        // chains link transitively
        let chain = cluster_roots(&[c(0.0, 0.0), c(0.8, 0.0), c(1.6, 0.0)], 1.0);
        assert_eq!(chain.len(), 1);
        assert_eq!(chain[0].1, 3);
        assert!((chain[0].0 - c(0.8, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn critical_point_examples() {
        let f = RationalFunction::from_triples(&[(1.0, 0.0, 1), (-1.0, 0.0, 1)]).unwrap();
        let r = critical_points(&f, DEFAULT_TOL).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert!(r.roots[0].0.norm() < 1e-15);
        assert_eq!(r.deficiency_at_infinity, 0);

        let f = RationalFunction::from_triples(&[(0.0, 0.0, 2), (1.0, 0.0, 1)]).unwrap();
        let r = critical_points(&f, DEFAULT_TOL).unwrap();
        assert!((r.roots[0].0 - c(2.0 / 3.0, 0.0)).norm() < 1e-15);

        let f = RationalFunction::from_triples(&[(0.0, 0.0, 1), (1.0, 0.0, -1)]).unwrap();
        let r = critical_points(&f, DEFAULT_TOL).unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.deficiency_at_infinity, 1);

        assert!(matches!(
            critical_points(&RationalFunction::constant(), DEFAULT_TOL),
            Err(RootError::Poly(PolyError::EmptyFunction))
        ));
    }
}
