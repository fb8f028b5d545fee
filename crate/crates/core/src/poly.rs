//! Dense complex polynomials and the logarithmic derivative of a rational
//! function as a ratio `N/D`.

use num_complex::Complex64;
use thiserror::Error;

use crate::rational::RationalFunction;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("the constant function has no logarithmic derivative to factor")]
    EmptyFunction,
    #[error("evaluation at the zero or pole {0}")]
    EvaluationAtPole(Complex64),
}

/// Coefficients in ascending degree order. The trailing coefficient is
/// nonzero; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs
            .last()
            .is_some_and(|c| *c == Complex64::new(0.0, 0.0))
        {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![Complex64::new(1.0, 0.0)],
        }
    }

    /// Monic polynomial with the given roots, each repeated by its
    /// multiplicity.
    pub fn from_roots(roots: &[(Complex64, u32)]) -> Self {
        let mut p = Self::one();
        for &(r, m) in roots {
            for _ in 0..m {
                p.mul_linear(r);
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Multiplies in place by `(z - r)`.
    pub fn mul_linear(&mut self, r: Complex64) {
        let n = self.coeffs.len();
        if n == 0 {
            return;
        }
        self.coeffs.push(Complex64::new(0.0, 0.0));
        for i in (0..=n).rev() {
            let shifted = if i > 0 {
                self.coeffs[i - 1]
            } else {
                Complex64::new(0.0, 0.0)
            };
            self.coeffs[i] = shifted - r * self.coeffs[i];
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    /// Divides every coefficient by the largest coefficient modulus.
    pub fn normalized(&self) -> Self {
        let s = self.max_coeff_norm();
        if s == 0.0 {
            return self.clone();
        }
        Self {
            coeffs: self.coeffs.iter().map(|&c| c / s).collect(),
        }
    }
}

/// `f'/f = N/D` for a nonconstant rational function.
///
/// `D = prod (z - w_j)` over the `k` distinct locations, and
/// `N = sum m_i prod_{j != i} (z - w_j)`. The roots of `N` are exactly the
/// non-trivial critical points of `f`, and `N(w_i) != 0` at every location.
#[derive(Debug, Clone, PartialEq)]
pub struct LogDerivative {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
    pub source: RationalFunction,
}

/// Builds `N` and `D` by the sum-of-products formula.
///
/// The leading coefficient of `N` (degree `k - 1`) is set to the exact
/// integer `sum m_i`. When that sum vanishes, further top coefficients are
/// dropped while they are indistinguishable from rounding noise, judged
/// against the same expansion carried out on `|w_j|` and `|m_i|`.
pub fn log_derivative(f: &RationalFunction) -> Result<LogDerivative, PolyError> {
    if f.is_empty() {
        return Err(PolyError::EmptyFunction);
    }
    let pts = f.points();
    let k = pts.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut num = vec![zero; k];
    let mut bound = vec![0.0f64; k];
    for (i, pi) in pts.iter().enumerate() {
        let mut prod = Polynomial::one();
        let mut abs_prod = Polynomial::one();
        for (j, pj) in pts.iter().enumerate() {
            if j != i {
                prod.mul_linear(pj.location);
                abs_prod.mul_linear(Complex64::new(-pj.location.norm(), 0.0));
            }
        }
        let m = f64::from(pi.multiplicity);
        for (d, (c, a)) in prod.coeffs.iter().zip(&abs_prod.coeffs).enumerate() {
            num[d] += *c * m;
            bound[d] += a.re * m.abs();
        }
    }
    num[k - 1] = Complex64::new(f.multiplicity_sum() as f64, 0.0);
    let noise = 4.0 * (k as f64 + 1.0) * f64::EPSILON;
    let mut top = k;
    if f.multiplicity_sum() == 0 {
        top -= 1;
        while top > 1 && num[top - 1].norm() <= noise * bound[top - 1] {
            top -= 1;
        }
    }
    num.truncate(top);
    let denominator =
        Polynomial::from_roots(&pts.iter().map(|p| (p.location, 1)).collect::<Vec<_>>());
    Ok(LogDerivative {
        numerator: Polynomial::new(num),
        denominator,
        source: f.clone(),
    })
}

impl LogDerivative {
    /// `sum m_i / (z - w_i)`, evaluated in partial-fraction form.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, PolyError> {
        self.source
            .log_derivative_at(z)
            .map_err(|_| PolyError::EvaluationAtPole(z))
    }

    /// `N(z)/D(z)`; only used to cross-check the partial-fraction form.
    pub fn eval_ratio(&self, z: Complex64) -> Complex64 {
        self.numerator.eval(z) / self.denominator.eval(z)
    }

    /// Number of non-trivial critical points on the Riemann sphere: `k - 1`.
    pub fn expected_critical_count(&self) -> usize {
        self.source.distinct_count() - 1
    }

    /// Critical points at infinity: `(k - 1) - deg N`.
    pub fn deficiency_at_infinity(&self) -> usize {
        self.expected_critical_count() - self.numerator.degree()
    }
}

/// `k - 1` for a function with `k` distinct zeros and poles.
pub fn expected_critical_count(f: &RationalFunction) -> Result<usize, PolyError> {
    if f.is_empty() {
        return Err(PolyError::EmptyFunction);
    }
    Ok(f.distinct_count() - 1)
}
