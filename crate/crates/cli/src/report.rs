//! JSON reports. Field names are frozen in `docs/report-schema.md`.

use maxdim_core::harness::{CheckResult, CheckStatus, WitnessItem};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub config_seed: u64,
    pub budget: u64,
    /// Arguments after the program name, without `--json`.
    pub command: Vec<String>,
    pub inputs: Vec<InputRecord>,
    pub results: Vec<ResultRecord>,
    pub exit_code: i32,
    /// Filled only with `--timings`, so default reports are reproducible.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<TimingRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct InputRecord {
    /// Canonical one-line group description.
    pub spec: String,
    pub order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ResultRecord {
    pub check_id: String,
    pub instance: String,
    pub status: String,
    pub numbers: BTreeMap<String, i64>,
    #[serde(default)]
    pub witness: Vec<WitnessRecord>,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct WitnessRecord {
    pub label: String,
    pub order: usize,
    /// 1-based cycle notation.
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TimingRecord {
    pub check_id: String,
    pub instance: String,
    pub millis: u64,
}

pub const STATUSES: [CheckStatus; 5] = [
    CheckStatus::Pass,
    CheckStatus::Fail,
    CheckStatus::Discrepancy,
    CheckStatus::CapExceeded,
    CheckStatus::Skipped,
];

pub fn parse_status(label: &str) -> Option<CheckStatus> {
    STATUSES.into_iter().find(|s| s.label() == label)
}

impl From<&WitnessItem> for WitnessRecord {
    fn from(w: &WitnessItem) -> Self {
        WitnessRecord {
            label: w.label.clone(),
            order: w.order,
            generators: w.generators.clone(),
        }
    }
}

impl From<&CheckResult> for ResultRecord {
    fn from(r: &CheckResult) -> Self {
        ResultRecord {
            check_id: r.check_id.clone(),
            instance: r.instance.clone(),
            status: r.status.label().into(),
            numbers: r.numbers.iter().cloned().collect(),
            witness: r.witness.iter().map(WitnessRecord::from).collect(),
            notes: r.notes.clone(),
        }
    }
}

impl ResultRecord {
    pub fn status(&self) -> CheckStatus {
        parse_status(&self.status).expect("validated status")
    }
}

/// Exit code for a set of outcomes: failures beat cap overruns.
pub fn exit_code_for<'a>(statuses: impl IntoIterator<Item = &'a CheckStatus>) -> i32 {
    let mut code = 0;
    for s in statuses {
        match s {
            CheckStatus::Fail => return 1,
            CheckStatus::CapExceeded => code = 2,
            _ => {}
        }
    }
    code
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("unknown status `{0}`")]
    Status(String),
}

pub fn encode_report(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("reports serialize") + "\n"
}

pub fn decode_report(bytes: &[u8]) -> Result<Report, ReportError> {
    let r: Report = serde_json::from_slice(bytes)?;
    if r.schema_version != SCHEMA_VERSION {
        return Err(ReportError::Schema(r.schema_version));
    }
    if let Some(bad) = r.results.iter().find(|x| parse_status(&x.status).is_none()) {
        return Err(ReportError::Status(bad.status.clone()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut c = CheckResult::new("sandwich", "S4");
        c.number("m", 3);
        c.note("ok");
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.into(),
            config_seed: 1,
            budget: 10,
            command: vec!["invariants".into(), "family: symmetric 4".into()],
            inputs: vec![InputRecord {
                spec: "family: symmetric 4".into(),
                order: Some(24),
            }],
            results: vec![ResultRecord::from(&c)],
            exit_code: 0,
            timings: vec![],
        }
    }

    #[test]
    fn round_trip() {
        let r = sample();
        let text = encode_report(&r);
        assert!(!text.contains("timings"));
        assert_eq!(decode_report(text.as_bytes()).unwrap(), r);
    }

    #[test]
    fn rejects_bad_reports() {
        let mut r = sample();
        r.results[0].status = "maybe".into();
        assert!(matches!(decode_report(encode_report(&r).as_bytes()), Err(ReportError::Status(_))));
        let mut r = sample();
        r.schema_version = 9;
        assert!(matches!(decode_report(encode_report(&r).as_bytes()), Err(ReportError::Schema(9))));
        assert!(decode_report(b"{").is_err());
    }

    #[test]
    fn exit_codes() {
        use CheckStatus::*;
        assert_eq!(exit_code_for(&[Pass, Skipped, Discrepancy]), 0);
        assert_eq!(exit_code_for(&[Pass, CapExceeded]), 2);
        assert_eq!(exit_code_for(&[CapExceeded, Fail]), 1);
    }
}
