//! The table of named checks and the suite runner.

mod apolarity;
mod degen;
mod heisenberg;
mod moore;
mod septimics;
mod theta;
mod vsp;

use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

pub const SUITES: [&str; 7] = ["heisenberg", "septimics", "apolarity", "vsp", "moore", "degen", "theta"];

/// What a check function reports. Numeric checks also state whether the
/// structural part (counts, types) held; if not, the residual is dropped.
pub enum Outcome {
    Exact { ok: bool, witness: String },
    Numeric { residual: f64, structural: bool, witness: String },
}

impl Outcome {
    pub fn exact(ok: bool, witness: impl Into<String>) -> Self {
        Outcome::Exact { ok, witness: witness.into() }
    }

    pub fn numeric(residual: f64, witness: impl Into<String>) -> Self {
        Outcome::Numeric { residual, structural: true, witness: witness.into() }
    }

    pub fn numeric_with(residual: f64, structural: bool, witness: impl Into<String>) -> Self {
        Outcome::Numeric { residual, structural, witness: witness.into() }
    }
}

pub struct Ctx {
    pub seed: u64,
    pub tol: f64,
}

pub type CheckFn = fn(&Ctx) -> Result<Outcome, String>;

pub struct Check {
    pub id: &'static str,
    pub suite: &'static str,
    pub description: &'static str,
    pub paper_ref: &'static str,
    pub kind: Kind,
    /// Default tolerance for numeric checks.
    pub tolerance: Option<f64>,
    pub run: CheckFn,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub check_id: String,
    pub description: String,
    pub paper_ref: String,
    pub kind: Kind,
    pub status: Status,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub witness: String,
    pub seed: u64,
    pub elapsed_ms: u64,
}

pub(crate) fn exact(id: &'static str, suite: &'static str, description: &'static str, paper_ref: &'static str, run: CheckFn) -> Check {
    Check { id, suite, description, paper_ref, kind: Kind::Exact, tolerance: None, run }
}

pub(crate) fn numeric(id: &'static str, suite: &'static str, description: &'static str, paper_ref: &'static str, tol: f64, run: CheckFn) -> Check {
    Check { id, suite, description, paper_ref, kind: Kind::Numeric, tolerance: Some(tol), run }
}

/// All checks, sorted by id.
pub fn checks() -> Vec<Check> {
    let mut all = Vec::new();
    all.extend(heisenberg::checks());
    all.extend(septimics::checks());
    all.extend(apolarity::checks());
    all.extend(vsp::checks());
    all.extend(moore::checks());
    all.extend(degen::checks());
    all.extend(theta::checks());
    all.sort_by_key(|c| c.id);
    all
}

#[derive(thiserror::Error, Debug, PartialEq)]
pub enum RunError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("unknown check id '{0}' in tolerance override")]
    UnknownCheck(String),
    #[error("check '{0}' is exact and takes no tolerance")]
    ExactTolerance(String),
}

/// Expands "all" and validates suite names.
pub fn resolve_suites(names: &[String]) -> Result<Vec<&'static str>, RunError> {
    let mut out = Vec::new();
    for n in names {
        if n == "all" {
            out.extend(SUITES);
        } else if let Some(s) = SUITES.iter().find(|s| **s == n) {
            out.push(*s);
        } else {
            return Err(RunError::UnknownSuite(n.clone()));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn run_one(c: &Check, seed: u64, tol: Option<f64>) -> CheckResult {
    let start = Instant::now();
    let ctx = Ctx { seed, tol: tol.unwrap_or(0.0) };
    let outcome = catch_unwind(AssertUnwindSafe(|| (c.run)(&ctx)))
        .unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
    let (status, residual, witness) = match outcome {
        Err(e) => (Status::Fail, None, e),
        Ok(Outcome::Exact { ok, witness }) => (if ok { Status::Pass } else { Status::Fail }, None, witness),
        Ok(Outcome::Numeric { residual, structural, witness }) => {
            let t = tol.unwrap_or(0.0);
            if structural && residual.is_finite() {
                (if residual <= t { Status::Pass } else { Status::Fail }, Some(residual), witness)
            } else {
                (Status::Fail, None, witness)
            }
        }
    };
    CheckResult {
        suite: c.suite.to_string(),
        check_id: c.id.to_string(),
        description: c.description.to_string(),
        paper_ref: c.paper_ref.to_string(),
        kind: c.kind,
        status,
        residual,
        tolerance: tol,
        witness,
        seed,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs every check of the given suites in parallel; results are ordered by id.
pub fn run_suites(suites: &[&str], seed: u64, overrides: &BTreeMap<String, f64>) -> Result<Vec<CheckResult>, RunError> {
    let all = checks();
    for (k, _) in overrides {
        match all.iter().find(|c| c.id == k) {
            None => return Err(RunError::UnknownCheck(k.clone())),
            Some(c) if c.kind == Kind::Exact => return Err(RunError::ExactTolerance(k.clone())),
            _ => {}
        }
    }
    let selected: Vec<&Check> = all.iter().filter(|c| suites.contains(&c.suite)).collect();
    let mut results: Vec<CheckResult> = selected
        .par_iter()
        .map(|c| run_one(c, seed, overrides.get(c.id).copied().or(c.tolerance)))
        .collect();
    results.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(results)
}

#[derive(Serialize)]
pub struct Report<'a> {
    pub schema: u32,
    pub seed: u64,
    pub suites: Vec<&'a str>,
    pub results: &'a [CheckResult],
}

pub fn report_json(suites: &[&str], seed: u64, results: &[CheckResult]) -> String {
    let r = Report { schema: 1, seed, suites: suites.to_vec(), results };
    serde_json::to_string_pretty(&r).expect("serializable report")
}

/// Parses "KEY=VAL" tolerance overrides.
pub fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VAL, got '{s}'"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("bad tolerance '{v}': {e}"))?;
    if !(v >= 0.0) {
        return Err(format!("tolerance must be nonnegative, got {v}"));
    }
    Ok((k.trim().to_string(), v))
}
