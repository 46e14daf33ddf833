//! Pass/fail records shared by the verification routines.

use std::fmt;

use serde::Serialize;

/// Failures kept per check; the total is still counted.
const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The claim does not apply to these parameters.
    NotApplicable,
    /// A stated rule disagrees with its stated consequence; reported, not fatal.
    Discrepancy,
    /// Observation with no expected value.
    Info,
}

impl Status {
    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N/A",
            Status::Discrepancy => "DISCREPANCY",
            Status::Info => "INFO",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    /// Stable identifier, e.g. `degree-formula`.
    pub claim: String,
    /// The statement being checked, in words or as a formula.
    pub statement: String,
    pub status: Status,
    /// Number of individual cases examined.
    pub cases: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClaimCheck {
    pub fn new(claim: &str, statement: &str) -> Self {
        ClaimCheck {
            claim: claim.to_string(),
            statement: statement.to_string(),
            status: Status::Pass,
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
            note: None,
        }
    }

    pub fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(describe());
        }
    }

    pub fn fail(&mut self, what: String) {
        self.status = Status::Fail;
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(what);
        }
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        !self.status.is_failure()
    }
}
