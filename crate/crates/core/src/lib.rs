//! Geometry of the zeros, poles and critical points of rational functions.
//!
//! A rational function is stored as the finite multiset of its distinct zeros
//! and poles ([`RationalFunction`]), with signed multiplicities: positive for a
//! zero, negative for a pole. The constant factor never matters for any of the
//! quantities computed here, so it is not stored.
//!
//! The crate is layered bottom-up:
//!
//! * [`rational`]: the point model and the functionals `d_f`, `rho_f`,
//!   multiplicity and degree.
//! * [`poly`]: dense complex polynomials and the logarithmic derivative
//!   `f'/f = N/D` as a ratio of polynomials.
//! * [`roots`]: a simultaneous (Aberth-Ehrlich) polynomial root finder with
//!   residual certificates; the independent oracle for critical points.
//! * [`bounds`]: exclusion radii, the localization constants and certified
//!   extrema of `|f'/f|` over families of circles.
//! * [`verify`]: seeded ensembles and per-statement checks that compare every
//!   bound against the oracle.

// Comparisons that must reject NaN are written `!(a < b)`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod verify;

pub use num_complex::Complex64;

pub use bounds::{
    alexander_walsh_radius, circle_extremum, corollary1_max_rho, exclusion_radius,
    inequality1_rho_bound, theorem2_k, theorem2_validate, theorem3_l, theorem4_threshold,
    BoundsError, CertifiedExtremum, CircleFamily, ExtremumKind, Theorem2Constant,
    Theorem4Threshold,
};
pub use poly::{log_derivative, LogDerivative, PolyError, Polynomial};
pub use rational::{ModelError, RationalFunction, WeightedPoint};
pub use roots::{
    cluster_roots, critical_points, find_roots, RootError, RootResult, DEFAULT_MAX_ITERS,
    DEFAULT_TOL,
};
pub use verify::{
    run_suite, EnsembleConfig, SuiteParams, TheoremId, TrialRecord, TrialStatus, VerificationReport,
};

/// A point of the complex plane. Both coordinates are finite wherever a
/// value of this type is stored in a [`RationalFunction`].
pub type ComplexPoint = Complex64;
