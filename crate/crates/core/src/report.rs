//! Pass/fail records produced by every checker.

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One failing instance: where it happened and the two sides that disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

impl Violation {
    pub fn new(location: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Violation {
            location: location.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }
}

/// Result of one named check. `status` is `Fail` exactly when
/// `violations` is nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Check {
    pub fn new(name: impl Into<String>, violations: Vec<Violation>) -> Self {
        let status = if violations.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            name: name.into(),
            status,
            violations,
            notes: Vec::new(),
            elapsed: None,
        }
    }

    pub fn with_notes(mut self, notes: Vec<String>) -> Self {
        self.notes = notes;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Runs `f` and records its wall time on the returned check.
    pub fn timed<E>(f: impl FnOnce() -> Result<Check, E>) -> Result<Check, E> {
        let start = Instant::now();
        let mut c = f()?;
        c.elapsed = Some(start.elapsed());
        Ok(c)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "[{status}] {}", self.name)?;
        if let Some(t) = self.elapsed {
            write!(f, " ({:.1} ms)", t.as_secs_f64() * 1e3)?;
        }
        for v in self.violations.iter().take(10) {
            write!(f, "\n    at {}: {} != {}", v.location, v.lhs, v.rhs)?;
        }
        if self.violations.len() > 10 {
            write!(f, "\n    ... {} more", self.violations.len() - 10)?;
        }
        for n in &self.notes {
            write!(f, "\n    note: {n}")?;
        }
        Ok(())
    }
}

/// A command's full set of checks, as serialized by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Report {
            command: command.into(),
            seed,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}
