//! Registry of named checks over the h7kit modules, with a parallel runner
//! and a versioned JSON report.

pub mod registry;

pub use registry::{checks, report_json, resolve_suites, run_suites, Check, CheckResult, Kind, Status, SUITES};
