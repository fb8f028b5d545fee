//! Rational functions as weighted point sets.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("duplicate location ({re}, {im})")]
    DuplicateLocation { re: f64, im: f64 },
    #[error("zero multiplicity at ({re}, {im})")]
    ZeroMultiplicity { re: f64, im: f64 },
    #[error("non-finite coordinate ({re}, {im})")]
    NonFinite { re: f64, im: f64 },
    #[error("{0} is neither a zero nor a pole")]
    NotAZeroOrPole(Complex64),
    #[error("{0} is a zero or pole")]
    IsAZeroOrPole(Complex64),
    #[error("displacement {displacement} is not below d_f(z1) = {distance}")]
    DisplacementTooLarge { displacement: f64, distance: f64 },
    #[error("multiplicity overflow")]
    MultiplicityOverflow,
}

/// A zero (`multiplicity > 0`) or pole (`multiplicity < 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedPoint {
    pub location: Complex64,
    pub multiplicity: i32,
}

impl WeightedPoint {
    pub fn new(location: Complex64, multiplicity: i32) -> Result<Self, ModelError> {
        if !location.re.is_finite() || !location.im.is_finite() {
            return Err(ModelError::NonFinite {
                re: location.re,
                im: location.im,
            });
        }
        if multiplicity == 0 {
            return Err(ModelError::ZeroMultiplicity {
                re: location.re,
                im: location.im,
            });
        }
        Ok(Self {
            location,
            multiplicity,
        })
    }

    pub fn zero(re: f64, im: f64, multiplicity: u32) -> Result<Self, ModelError> {
        let m = i32::try_from(multiplicity).map_err(|_| ModelError::MultiplicityOverflow)?;
        Self::new(Complex64::new(re, im), m)
    }

    pub fn pole(re: f64, im: f64, order: u32) -> Result<Self, ModelError> {
        let m = i32::try_from(order).map_err(|_| ModelError::MultiplicityOverflow)?;
        Self::new(Complex64::new(re, im), -m)
    }

    pub fn is_zero(&self) -> bool {
        self.multiplicity > 0
    }
}

/// A rational function up to a constant factor, given by its distinct finite
/// zeros and poles.
///
/// Locations are pairwise distinct under exact floating-point equality. The
/// point list may be empty, which represents a nonzero constant.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RationalFunction {
    points: Vec<WeightedPoint>,
}

impl RationalFunction {
    /// Validates and wraps a point list. Duplicate locations are rejected,
    /// never merged.
    pub fn new(points: Vec<WeightedPoint>) -> Result<Self, ModelError> {
        for (i, p) in points.iter().enumerate() {
            // Re-run the per-point checks: fields are public.
            WeightedPoint::new(p.location, p.multiplicity)?;
            if points[..i].iter().any(|q| q.location == p.location) {
                return Err(ModelError::DuplicateLocation {
                    re: p.location.re,
                    im: p.location.im,
                });
            }
        }
        Ok(Self { points })
    }

    /// Builds from `(re, im, multiplicity)` triples.
    pub fn from_triples(triples: &[(f64, f64, i32)]) -> Result<Self, ModelError> {
        let points = triples
            .iter()
            .map(|&(re, im, m)| WeightedPoint::new(Complex64::new(re, im), m))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(points)
    }

    /// The constant function.
    pub fn constant() -> Self {
        Self::default()
    }

    /// `c * (z - z0)^k` up to the constant.
    pub fn monomial(z0: Complex64, k: i32) -> Result<Self, ModelError> {
        Self::new(vec![WeightedPoint::new(z0, k)?])
    }

    pub fn points(&self) -> &[WeightedPoint] {
        &self.points
    }

    pub fn locations(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.points.iter().map(|p| p.location)
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of distinct zeros and poles.
    pub fn distinct_count(&self) -> usize {
        self.points.len()
    }

    /// Sum of the signed multiplicities (number of zeros minus number of
    /// poles, with multiplicity).
    pub fn multiplicity_sum(&self) -> i64 {
        self.points.iter().map(|p| i64::from(p.multiplicity)).sum()
    }

    /// Multiplicity of `z` as a zero (positive) or pole (negative); 0 when
    /// `z` is not a stored location.
    pub fn multiplicity_at(&self, z: Complex64) -> i32 {
        self.points
            .iter()
            .find(|p| p.location == z)
            .map_or(0, |p| p.multiplicity)
    }

    pub fn is_location(&self, z: Complex64) -> bool {
        self.points.iter().any(|p| p.location == z)
    }

    /// Number of finite zeros and poles counted with multiplicity.
    pub fn degree(&self) -> u64 {
        self.points
            .iter()
            .map(|p| u64::from(p.multiplicity.unsigned_abs()))
            .sum()
    }

    /// `d_f(z)`: smallest nonzero distance from `z` to a zero or pole, or
    /// `+inf` when there is none.
    pub fn min_distance(&self, z: Complex64) -> f64 {
        self.points
            .iter()
            .filter(|p| p.location != z)
            .map(|p| (z - p.location).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// `rho_f(z) = sum |mult(w)| / |z - w|` over locations `w != z`.
    pub fn rho(&self, z: Complex64) -> f64 {
        self.points
            .iter()
            .filter(|p| p.location != z)
            .map(|p| f64::from(p.multiplicity.unsigned_abs()) / (z - p.location).norm())
            .sum()
    }

    /// Upper bound for `rho_f(z2)` from the value at a nearby regular point:
    /// `rho_f(z1) d_f(z1) / (d_f(z1) - |z2 - z1|)`.
    pub fn rho_continuity_bound(&self, z1: Complex64, z2: Complex64) -> Result<f64, ModelError> {
        if self.is_location(z1) {
            return Err(ModelError::IsAZeroOrPole(z1));
        }
        let d = self.min_distance(z1);
        let shift = (z2 - z1).norm();
        if !(shift < d) {
            return Err(ModelError::DisplacementTooLarge {
                displacement: shift,
                distance: d,
            });
        }
        let rho = self.rho(z1);
        if d.is_infinite() {
            // empty function: rho vanishes identically
            return Ok(rho);
        }
        Ok(rho * d / (d - shift))
    }

    /// Returns a copy with one more point. Fails if `z0` is already a location.
    pub fn with_point(&self, z0: Complex64, multiplicity: i32) -> Result<Self, ModelError> {
        let mut points = self.points.clone();
        points.push(WeightedPoint::new(z0, multiplicity)?);
        Self::new(points)
    }

    /// The product of two functions. Shared locations add their
    /// multiplicities; locations that cancel are dropped.
    pub fn product(&self, other: &Self) -> Result<Self, ModelError> {
        let mut points = self.points.clone();
        for q in &other.points {
            match points.iter().position(|p| p.location == q.location) {
                Some(i) => {
                    let m = points[i]
                        .multiplicity
                        .checked_add(q.multiplicity)
                        .ok_or(ModelError::MultiplicityOverflow)?;
                    if m == 0 {
                        points.remove(i);
                    } else {
                        points[i].multiplicity = m;
                    }
                }
                None => points.push(*q),
            }
        }
        Ok(Self { points })
    }

    /// `f^n` for `n >= 1`.
    pub fn power(&self, n: u32) -> Result<Self, ModelError> {
        let n = i32::try_from(n).map_err(|_| ModelError::MultiplicityOverflow)?;
        let points = self
            .points
            .iter()
            .map(|p| {
                p.multiplicity
                    .checked_mul(n)
                    .ok_or(ModelError::MultiplicityOverflow)
                    .and_then(|m| WeightedPoint::new(p.location, m))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { points })
    }

    /// The logarithmic derivative `f'(z)/f(z) = sum m_i / (z - w_i)` in
    /// partial-fraction form. Fails at a stored location.
    pub fn log_derivative_at(&self, z: Complex64) -> Result<Complex64, ModelError> {
        if self.is_location(z) {
            return Err(ModelError::IsAZeroOrPole(z));
        }
        Ok(self.log_derivative_unchecked(z))
    }

    pub(crate) fn log_derivative_unchecked(&self, z: Complex64) -> Complex64 {
        self.points
            .iter()
            .map(|p| f64::from(p.multiplicity) / (z - p.location))
            .sum()
    }

    /// Derivative of the partial-fraction sum: `-sum m_i / (z - w_i)^2`.
    pub(crate) fn log_derivative_slope(&self, z: Complex64) -> Complex64 {
        self.points
            .iter()
            .map(|p| {
                let u = z - p.location;
                -f64::from(p.multiplicity) / (u * u)
            })
            .sum()
    }
}
