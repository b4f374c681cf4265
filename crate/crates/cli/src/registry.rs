//! Checks behind a common trait, registered by name and selected at runtime.

use std::collections::BTreeMap;
use std::time::Instant;

use springer_core::roots::CartanType;

use crate::report::{CheckReport, Params, Status, TypeResult, SCHEMA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum CheckError {
    #[error("unknown check {0}")]
    UnknownCheck(String),
    #[error("invalid parameter: {0}")]
    Usage(String),
    #[error("{0}")]
    Internal(String),
}

/// Outcome of a check on one Cartan type.
pub struct Outcome {
    pub status: Status,
    pub summary: String,
    pub witness: serde_json::Value,
}

impl Outcome {
    pub fn new(passed: bool, summary: impl Into<String>, witness: impl serde::Serialize) -> Self {
        Outcome {
            status: if passed { Status::Pass } else { Status::Fail },
            summary: summary.into(),
            witness: serde_json::to_value(witness).expect("witness serializes"),
        }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Outcome {
            status: Status::Skipped,
            summary: reason.into(),
            witness: serde_json::Value::Null,
        }
    }
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;

    fn about(&self) -> &'static str;

    /// Types run when none is requested.
    fn default_types(&self) -> Vec<CartanType>;

    /// `None` for checks without a height or degree parameter.
    fn default_order(&self) -> Option<i64> {
        None
    }

    /// Reject flag values before any computation.
    fn validate(&self, _params: &Params) -> Result<(), CheckError> {
        Ok(())
    }

    fn run(&self, kind: CartanType, order: Option<i64>, params: &Params) -> Result<Outcome, CheckError>;
}

pub fn parse_type(s: &str) -> Result<CartanType, CheckError> {
    s.parse().map_err(|e: springer_core::roots::RootsError| CheckError::Usage(e.to_string()))
}

#[derive(Default)]
pub struct Registry {
    checks: BTreeMap<&'static str, Box<dyn Check>>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, check: Box<dyn Check>) {
        let name = check.name();
        assert!(self.checks.insert(name, check).is_none(), "duplicate check {name}");
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks.get(name).map(Box::as_ref)
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.checks.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Check> {
        self.checks.values().map(Box::as_ref)
    }

    /// Run a check by name. Usage errors are returned; internal errors become
    /// a failed result carrying the error text as its witness.
    pub fn run(&self, name: &str, params: &Params, timings: bool) -> Result<CheckReport, CheckError> {
        let check = self.get(name).ok_or_else(|| CheckError::UnknownCheck(name.to_string()))?;
        check.validate(params)?;
        let kinds = match &params.cartan_type {
            Some(t) => vec![parse_type(t)?],
            None => check
                .default_types()
                .into_iter()
                .filter(|k| params.rank.is_none_or(|r| k.rank == r))
                .collect(),
        };
        let order = params.order.or(check.default_order());
        if let Some(n) = order {
            if n < 0 {
                return Err(CheckError::Usage(format!("order must be nonnegative, got {n}")));
            }
        }
        let start = Instant::now();
        let mut results = Vec::with_capacity(kinds.len());
        for kind in kinds {
            let outcome = match check.run(kind, order, params) {
                Ok(o) => o,
                Err(CheckError::Internal(msg)) => Outcome {
                    status: Status::Fail,
                    summary: format!("error: {msg}"),
                    witness: serde_json::json!({ "error": msg }),
                },
                Err(e) => return Err(e),
            };
            results.push(TypeResult {
                cartan_type: kind.to_string(),
                status: outcome.status,
                summary: outcome.summary,
                witness: outcome.witness,
            });
        }
        Ok(CheckReport {
            schema: SCHEMA_VERSION,
            check: name.to_string(),
            params: params.clone(),
            order,
            status: Status::combine(results.iter().map(|r| r.status)),
            results,
            wall_ms: timings.then(|| start.elapsed().as_millis() as u64),
        })
    }
}
