//! Verification reports: one record per check, serialisable to JSON.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
}

/// `{check, params, status, witness?}`
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    pub params: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn ok(check: impl Into<String>, params: Value) -> Self {
        Self {
            check: check.into(),
            params,
            status: Status::Ok,
            witness: None,
        }
    }

    /// A passing check that still carries an informative value.
    pub fn ok_with(check: impl Into<String>, params: Value, witness: impl Into<String>) -> Self {
        Self {
            witness: Some(witness.into()),
            ..Self::ok(check, params)
        }
    }

    pub fn fail(check: impl Into<String>, params: Value, witness: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            params,
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    /// `ok` when `passed`, otherwise `fail` with the lazily built witness.
    pub fn expect(check: impl Into<String>, params: Value, passed: bool, witness: impl FnOnce() -> String) -> Self {
        if passed {
            Self::ok(check, params)
        } else {
            Self::fail(check, params, witness())
        }
    }

    /// Turns an error into a failed check.
    pub fn from_result<T>(
        check: impl Into<String>,
        params: Value,
        r: crate::Result<T>,
        on_ok: impl FnOnce(T) -> Check,
    ) -> Check {
        match r {
            Ok(v) => on_ok(v),
            Err(e) => Self::fail(check, params, e.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Ok
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl FromIterator<Check> for Report {
    fn from_iter<I: IntoIterator<Item = Check>>(iter: I) -> Self {
        Self {
            checks: iter.into_iter().collect(),
        }
    }
}
