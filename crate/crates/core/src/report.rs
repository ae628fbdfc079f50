//! Plain-data reports shared by the verification layers.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::numerics::{Interval, Verdict};

/// Which inequality a report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InequalityId {
    /// `sigma(n)/n < e^gamma log log n`.
    Robin,
    /// `sigma(n) < H_n + exp(H_n) log H_n`.
    Lagarias,
    /// `sigma(n) < exp(H_n) log H_n`.
    KanekoLagarias,
}

impl InequalityId {
    pub fn as_str(self) -> &'static str {
        match self {
            InequalityId::Robin => "robin",
            InequalityId::Lagarias => "lagarias",
            InequalityId::KanekoLagarias => "kaneko-lagarias",
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Annotations on an [`InequalityReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    /// The right-hand side is undefined or non-positive (`n <= 2` for Robin, `n = 1` for
    /// Kaneko-Lagarias).
    DegenerateRhs,
    /// Both sides are equal, so the strict inequality fails (`n = 1` for Lagarias).
    StrictnessEdge,
    /// The harmonic number was enclosed rather than summed exactly.
    HarmonicEnclosed,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::DegenerateRhs => "degenerate-rhs",
            Flag::StrictnessEdge => "strictness-edge",
            Flag::HarmonicEnclosed => "harmonic-enclosed",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One inequality evaluated at one `n`.
#[derive(Debug, Clone)]
pub struct InequalityReport {
    pub n: BigUint,
    pub inequality: InequalityId,
    /// Exact left-hand side: `sigma(n)/n` for Robin, `sigma(n)` otherwise.
    pub lhs: BigRational,
    /// `None` when the right-hand side is undefined.
    pub rhs: Option<Interval>,
    pub verdict: Verdict,
    /// `rhs - lhs`.
    pub margin: Option<Interval>,
    pub prec_used: u32,
    pub flags: Vec<Flag>,
}

impl InequalityReport {
    pub(crate) fn new(
        n: BigUint,
        inequality: InequalityId,
        lhs: BigRational,
        rhs: Option<Interval>,
        verdict: Verdict,
        prec_used: u32,
        flags: Vec<Flag>,
    ) -> Self {
        let margin = rhs
            .as_ref()
            .map(|r| r.sub(&Interval::from_ratio(&lhs, r.prec())));
        InequalityReport {
            n,
            inequality,
            lhs,
            rhs,
            verdict,
            margin,
            prec_used,
            flags,
        }
    }

    pub fn has_flag(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }
}

/// Outcome of a checkpoint: a named claim re-derived numerically.
#[derive(Debug, Clone, Default)]
pub struct CheckpointReport {
    pub id: String,
    pub parameters: Vec<(String, String)>,
    pub certified: bool,
    /// Human-readable descriptions of the decisive comparisons.
    pub witness: Vec<String>,
    /// Discovered quantities recorded alongside (thresholds, alternative readings).
    pub findings: Vec<(String, String)>,
    /// Inputs whose comparison stayed undecided at maximum precision.
    pub undecidable: Vec<String>,
}

impl CheckpointReport {
    pub(crate) fn new(id: &str) -> Self {
        CheckpointReport {
            id: id.to_string(),
            certified: true,
            ..CheckpointReport::default()
        }
    }

    pub(crate) fn param(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub(crate) fn witness(&mut self, line: impl Into<String>) -> &mut Self {
        self.witness.push(line.into());
        self
    }

    pub(crate) fn finding(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.findings.push((key.to_string(), value.to_string()));
        self
    }

    /// Fold a constituent verdict into `certified`.
    pub(crate) fn require(&mut self, what: impl fmt::Display, v: Verdict) -> bool {
        match v {
            Verdict::Holds => true,
            Verdict::Fails => {
                self.certified = false;
                self.witness.push(format!("FAILED: {what}"));
                false
            }
            Verdict::Undecidable { bits_reached } => {
                self.certified = false;
                self.undecidable.push(format!("{what} (at {bits_reached} bits)"));
                false
            }
        }
    }

    pub fn finding_value(&self, key: &str) -> Option<&str> {
        self.findings
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// `lo..hi` endpoints at `digits` significant digits.
pub fn show(x: &Interval, digits: u32) -> String {
    format!("[{}, {}]", x.lo_string(digits), x.hi_string(digits))
}
