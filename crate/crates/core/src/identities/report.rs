use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::volumes::SampleConfig;

/// Float-evaluated closed forms are compared at this relative precision.
pub const EXACT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

/// One compared quantity. `std_error` is `None` for exact comparisons, in
/// which case `residual_or_z` holds `lhs - rhs`; otherwise it holds the
/// z-score `|lhs - rhs| / se`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub std_error: Option<f64>,
    pub residual_or_z: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_name: String,
    pub target: String,
    pub status: Status,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub residual_or_z: Vec<f64>,
    pub checks: Vec<Check>,
    pub n_samples: u64,
    pub n_trials: u64,
    pub seed: u64,
    pub tolerance_sigmas: f64,
    pub notes: String,
}

/// Accumulates checks and turns them into a report.
#[derive(Clone, Debug)]
pub struct ReportBuilder {
    name: String,
    target: String,
    checks: Vec<Check>,
    tolerance: f64,
    n_samples: u64,
    n_trials: u64,
    seed: u64,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn new(name: &str, target: impl Into<String>, cfg: &SampleConfig) -> ReportBuilder {
        ReportBuilder {
            name: name.to_string(),
            target: target.into(),
            checks: Vec::new(),
            tolerance: cfg.tolerance_sigmas,
            n_samples: cfg.n_samples,
            n_trials: 0,
            seed: cfg.seed,
            notes: Vec::new(),
        }
    }

    pub fn trials(mut self, n: u64) -> Self {
        self.n_trials = n;
        self
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Exact comparison of integers or rationals: residual must vanish.
    pub fn exact(&mut self, label: impl Into<String>, lhs: f64, rhs: f64, equal: bool) {
        self.checks.push(Check {
            label: label.into(),
            lhs,
            rhs,
            std_error: None,
            residual_or_z: lhs - rhs,
            pass: equal,
        });
    }

    /// Comparison of two closed forms evaluated in floating point.
    pub fn closed_form(&mut self, label: impl Into<String>, lhs: f64, rhs: f64) {
        let ok = (lhs - rhs).abs() <= EXACT_TOL * lhs.abs().max(rhs.abs()).max(1.0);
        self.exact(label, lhs, rhs, ok);
    }

    pub fn statistical(&mut self, label: impl Into<String>, lhs: f64, rhs: f64, se: f64) {
        let diff = (lhs - rhs).abs();
        let z = if se > 0.0 {
            diff / se
        } else if diff <= EXACT_TOL {
            0.0
        } else {
            f64::INFINITY
        };
        self.checks.push(Check {
            label: label.into(),
            lhs,
            rhs,
            std_error: Some(se),
            residual_or_z: z,
            pass: z <= self.tolerance,
        });
    }

    pub fn finish(self) -> VerificationReport {
        let status = if self.checks.iter().all(|c| c.pass) { Status::Pass } else { Status::Fail };
        self.build(status)
    }

    pub fn skip(mut self, reason: impl Into<String>) -> VerificationReport {
        self.notes.insert(0, format!("skipped: {}", reason.into()));
        self.build(Status::Skip)
    }

    fn build(self, status: Status) -> VerificationReport {
        VerificationReport {
            identity_name: self.name,
            target: self.target,
            status,
            lhs: self.checks.iter().map(|c| c.lhs).collect(),
            rhs: self.checks.iter().map(|c| c.rhs).collect(),
            residual_or_z: self.checks.iter().map(|c| c.residual_or_z).collect(),
            checks: self.checks,
            n_samples: self.n_samples,
            n_trials: self.n_trials,
            seed: self.seed,
            tolerance_sigmas: self.tolerance,
            notes: self.notes.join("; "),
        }
    }
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }

    /// Re-evaluates every statistical check against a new threshold.
    pub fn regrade(&mut self, tolerance_sigmas: f64) {
        self.tolerance_sigmas = tolerance_sigmas;
        if self.status == Status::Skip {
            return;
        }
        for c in self.checks.iter_mut().filter(|c| c.std_error.is_some()) {
            c.pass = c.residual_or_z <= tolerance_sigmas;
        }
        self.status = if self.checks.iter().all(|c| c.pass) { Status::Pass } else { Status::Fail };
    }

    pub fn n_statistical(&self) -> usize {
        self.checks.iter().filter(|c| c.std_error.is_some()).count()
    }

    /// Largest z-score among the statistical checks.
    pub fn max_z(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.std_error.is_some())
            .map(|c| c.residual_or_z)
            .fold(0.0, f64::max)
    }

    /// Fixed-width rendering: a header line per report, one line per check.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<28} {:<6} {} (seed {}, n {}, trials {})",
            self.identity_name,
            self.status.as_str(),
            self.target,
            self.seed,
            self.n_samples,
            self.n_trials
        );
        for c in &self.checks {
            let (se, tag) = match c.std_error {
                Some(se) => (format!("{se:>12.3e}"), "z"),
                None => (format!("{:>12}", "exact"), "r"),
            };
            let _ = writeln!(
                s,
                "  {:<30} {:>14.8} {:>14.8} {} {}={:<10.4} {}",
                c.label,
                c.lhs,
                c.rhs,
                se,
                tag,
                c.residual_or_z,
                if c.pass { "ok" } else { "FAIL" }
            );
        }
        if !self.notes.is_empty() {
            let _ = writeln!(s, "  note: {}", self.notes);
        }
        s
    }
}

pub fn reports_to_table(reports: &[VerificationReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&r.to_table());
    }
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    let skipped = reports.iter().filter(|r| r.status == Status::Skip).count();
    let _ = writeln!(s, "{passed} passed, {} failed, {skipped} skipped", reports.len() - passed - skipped);
    s
}
