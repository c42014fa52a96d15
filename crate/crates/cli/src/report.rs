//! The JSON report shared by every subcommand.

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One named check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Record {
    /// Passes iff `residual <= tolerance` (a NaN residual fails).
    pub fn check(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            status: if residual <= tolerance {
                Status::Pass
            } else {
                Status::Fail
            },
            residual,
            tolerance,
            detail: None,
        }
    }

    /// A count of violations, which must be zero.
    pub fn count(name: impl Into<String>, violations: usize) -> Self {
        Self::check(name, violations as f64, 0.0)
    }

    pub fn with_detail(mut self, detail: impl Serialize) -> Self {
        self.detail = serde_json::to_value(detail).ok();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub timestamp: String,
    pub config: RunConfig,
    pub records: Vec<Record>,
    pub overall: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub results: Option<Value>,
}

impl Report {
    pub fn new(config: RunConfig, records: Vec<Record>, results: Option<Value>) -> Self {
        let overall = if records.iter().all(Record::passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            schema_version: SCHEMA_VERSION,
            tool: "qlandau",
            tool_version: env!("CARGO_PKG_VERSION"),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            config,
            records,
            overall,
            results,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
