//! Machine-readable check reports. Field order is fixed by the struct
//! definitions and every map is a `BTreeMap`, so serialization is
//! deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Bumped on any incompatible change to [`CheckReport`] or [`SuiteReport`].
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }

    /// Fail dominates, then pass; all-skipped stays skipped.
    pub fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
        let mut out = Status::Skipped;
        for s in statuses {
            match s {
                Status::Fail => return Status::Fail,
                Status::Pass => out = Status::Pass,
                Status::Skipped => {}
            }
        }
        out
    }
}

/// Parameters of one check run. Absent fields mean "use the check's default".
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub cartan_type: Option<String>,
    /// Restricts the default types to this rank when no type is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, String>,
}

impl Params {
    pub fn flag(&self, key: &str) -> Option<&str> {
        self.flags.get(key).map(String::as_str)
    }

    pub fn with_flag(mut self, key: &str, value: impl Into<String>) -> Self {
        self.flags.insert(key.to_string(), value.into());
        self
    }
}

/// Result of one check on one Cartan type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeResult {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub status: Status,
    pub summary: String,
    /// Full computed data; on failure this is the witness.
    pub witness: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: u32,
    pub check: String,
    pub params: Params,
    /// Order actually used, after defaults.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<i64>,
    pub status: Status,
    pub results: Vec<TypeResult>,
    /// Milliseconds; only recorded on request since it breaks byte-identical output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}", self.status.label(), self.check);
        if let Some(n) = self.order {
            out.push_str(&format!(" (order {n})"));
        }
        if let Some(ms) = self.wall_ms {
            out.push_str(&format!(" [{ms} ms]"));
        }
        out.push('\n');
        for r in &self.results {
            out.push_str(&format!("  {} {:<3} {}\n", r.status.label(), r.cartan_type, r.summary));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub status: Status,
    pub reports: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(reports: Vec<CheckReport>) -> Self {
        SuiteReport {
            schema: SCHEMA_VERSION,
            status: Status::combine(reports.iter().map(|r| r.status)),
            reports,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        self.reports.iter().map(CheckReport::to_text).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combine_statuses() {
        use Status::*;
        assert_eq!(Status::combine([Pass, Skipped]), Pass);
        assert_eq!(Status::combine([Pass, Fail, Pass]), Fail);
        assert_eq!(Status::combine([Skipped]), Skipped);
        assert_eq!(Status::combine([]), Skipped);
    }

    #[test]
    fn params_round_trip() {
        let p = Params {
            cartan_type: Some("B2".into()),
            rank: None,
            order: Some(4),
            flags: BTreeMap::new(),
        }
        .with_flag("mode", "flag");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"type":"B2","order":4,"flags":{"mode":"flag"}}"#);
        assert_eq!(serde_json::from_str::<Params>(&s).unwrap(), p);
    }
}
