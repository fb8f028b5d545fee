//! Seeded experiments that check each localization statement against the
//! root-finding oracle.
//!
//! Every check produces a [`TrialRecord`]. Oracle failures are recorded as
//! [`TrialStatus::Inconclusive`] and unmet preconditions as
//! [`TrialStatus::Skipped`]; neither counts as a failure.

mod checks;
mod ensemble;
mod suite;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bounds::BoundsError;
use crate::rational::{ModelError, RationalFunction};
use crate::roots::RootError;

pub use checks::{
    all_critical_points, check_corollary1, check_lemma1, check_lemma2, check_remark_count,
    check_theorem1, check_theorem2, check_theorem3, check_theorem4, match_clusters, MatchMode,
    MatchReport, RESIDUAL_CEILING,
};
pub use ensemble::{generate_ensemble, EnsembleConfig};
pub use suite::{run_suite, SuiteParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("invalid ensemble configuration: {0}")]
    InvalidConfig(String),
    #[error("pairwise separation {min_separation} not reached after {attempts} draws")]
    SeparationUnachievable {
        min_separation: f64,
        attempts: usize,
    },
    #[error("predicted centers {a} and {b} are closer than 2 eps = {}", 2.0 * .eps)]
    OverlappingCenters {
        a: Complex64,
        b: Complex64,
        eps: f64,
    },
    #[error("zero {0} is not strictly inside the unit disk")]
    ZeroOutsideUnitDisk(Complex64),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Oracle(#[from] RootError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    Thm1,
    Cor1,
    Thm2,
    Thm3,
    Thm4,
    Lemma1,
    Lemma2,
    RemarkCount,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::Thm1,
        TheoremId::Cor1,
        TheoremId::Thm2,
        TheoremId::Thm3,
        TheoremId::Thm4,
        TheoremId::Lemma1,
        TheoremId::Lemma2,
        TheoremId::RemarkCount,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Thm1 => "thm1",
            TheoremId::Cor1 => "cor1",
            TheoremId::Thm2 => "thm2",
            TheoremId::Thm3 => "thm3",
            TheoremId::Thm4 => "thm4",
            TheoremId::Lemma1 => "lemma1",
            TheoremId::Lemma2 => "lemma2",
            TheoremId::RemarkCount => "remark_count",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s || (s == "remark-count" && *t == TheoremId::RemarkCount))
            .ok_or_else(|| format!("unknown theorem id `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialStatus {
    Pass,
    Fail,
    Skipped,
    Inconclusive,
}

impl TrialStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            TrialStatus::Pass => "pass",
            TrialStatus::Fail => "fail",
            TrialStatus::Skipped => "skipped",
            TrialStatus::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial_index: usize,
    /// First 16 hex digits of a SHA-256 over the exact input bits.
    pub inputs_digest: String,
    /// The bound or constant under test (radius, `K`, `L`, power `n`, ...).
    pub computed_constant: f64,
    /// Finite critical points found by the oracle, with multiplicity.
    pub oracle_count: usize,
    /// Relative slack of the conclusion; negative on failure, `+inf` when
    /// there is nothing the bound could have excluded.
    pub margin: f64,
    pub status: TrialStatus,
    /// Short human-readable reason for skipped, inconclusive or failed
    /// trials. Not part of the serialized reports.
    pub note: String,
}

impl TrialRecord {
    pub(crate) fn new(digest: String) -> Self {
        Self {
            trial_index: 0,
            inputs_digest: digest,
            computed_constant: f64::NAN,
            oracle_count: 0,
            margin: f64::NAN,
            status: TrialStatus::Skipped,
            note: String::new(),
        }
    }

    pub(crate) fn skipped(mut self, why: impl Into<String>) -> Self {
        self.status = TrialStatus::Skipped;
        self.note = why.into();
        self
    }

    pub(crate) fn inconclusive(mut self, why: impl fmt::Display) -> Self {
        self.status = TrialStatus::Inconclusive;
        self.note = why.to_string();
        self
    }

    pub(crate) fn judged(mut self, pass: bool, margin: f64, why: impl Into<String>) -> Self {
        self.status = if pass {
            TrialStatus::Pass
        } else {
            TrialStatus::Fail
        };
        self.margin = margin;
        if !pass {
            self.note = why.into();
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub trials: usize,
    pub passed: usize,
    pub failures: usize,
    pub skipped: usize,
    pub inconclusive: usize,
    /// Smallest margin over judged (pass or fail) trials.
    pub min_margin: f64,
}

impl Summary {
    pub fn from_records(records: &[TrialRecord]) -> Self {
        let count = |s| records.iter().filter(|r| r.status == s).count();
        let min_margin = records
            .iter()
            .filter(|r| matches!(r.status, TrialStatus::Pass | TrialStatus::Fail))
            .map(|r| r.margin)
            .fold(f64::INFINITY, f64::min);
        Self {
            trials: records.len(),
            passed: count(TrialStatus::Pass),
            failures: count(TrialStatus::Fail),
            skipped: count(TrialStatus::Skipped),
            inconclusive: count(TrialStatus::Inconclusive),
            min_margin,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(theorem: TheoremId, records: Vec<TrialRecord>) -> Self {
        let summary = Summary::from_records(&records);
        Self {
            theorem,
            records,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failures == 0
    }
}

/// Hashes check inputs bit-exactly.
#[derive(Default)]
pub(crate) struct InputDigest(Sha256);

impl InputDigest {
    pub fn new(tag: &str) -> Self {
        let mut d = Self(Sha256::new());
        d.0.update(tag.as_bytes());
        d
    }

    pub fn real(mut self, x: f64) -> Self {
        self.0.update(x.to_bits().to_le_bytes());
        self
    }

    pub fn point(self, z: Complex64) -> Self {
        self.real(z.re).real(z.im)
    }

    pub fn int(mut self, k: i64) -> Self {
        self.0.update(k.to_le_bytes());
        self
    }

    pub fn function(mut self, f: &RationalFunction) -> Self {
        self.0.update((f.distinct_count() as u64).to_le_bytes());
        for p in f.points() {
            self = self.point(p.location).int(i64::from(p.multiplicity));
        }
        self
    }

    pub fn finish(self) -> String {
        let out = self.0.finalize();
        hex::encode(&out[..8])
    }
}
