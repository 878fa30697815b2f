use h7kit_cli::registry::{parse_override, RunError};
use h7kit_cli::{checks, resolve_suites, run_suites, Kind, Status};
use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_h7kit"))
}

#[test]
fn registry_is_large_unique_and_sorted() {
    let all = checks();
    assert!(all.len() >= 40, "{} checks", all.len());
    let ids: Vec<&str> = all.iter().map(|c| c.id).collect();
    let set: BTreeSet<&str> = ids.iter().cloned().collect();
    assert_eq!(set.len(), ids.len());
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
    assert!(ids.contains(&"lemma.septimic.vanish_p3minus"));
}

#[test]
fn numeric_checks_carry_tolerances() {
    for c in checks() {
        assert_eq!(c.kind == Kind::Numeric, c.tolerance.is_some(), "{}", c.id);
        assert!(!c.paper_ref.is_empty() && !c.description.is_empty());
    }
}

#[test]
fn every_suite_has_checks() {
    let all = checks();
    for s in h7kit_cli::SUITES {
        assert!(all.iter().any(|c| c.suite == s), "{s}");
    }
}

#[test]
fn suite_resolution() {
    assert_eq!(resolve_suites(&["all".into()]).unwrap().len(), 7);
    assert_eq!(resolve_suites(&["degen".into(), "degen".into()]).unwrap(), vec!["degen"]);
    assert_eq!(resolve_suites(&["bogus".into()]), Err(RunError::UnknownSuite("bogus".into())));
}

#[test]
fn overrides_are_validated() {
    assert_eq!(parse_override("a.b=1e-3").unwrap(), ("a.b".to_string(), 1e-3));
    assert!(parse_override("nonsense").is_err());
    assert!(parse_override("a=-1").is_err());
    let mut o = BTreeMap::new();
    o.insert("no.such.check".to_string(), 1.0);
    assert!(matches!(run_suites(&["degen"], 0, &o), Err(RunError::UnknownCheck(_))));
    let mut o = BTreeMap::new();
    o.insert("degen.epsilon.identity".to_string(), 1.0);
    assert!(matches!(run_suites(&["degen"], 0, &o), Err(RunError::ExactTolerance(_))));
}

#[test]
fn degen_suite_passes_exactly() {
    let r = run_suites(&["degen"], 0, &BTreeMap::new()).unwrap();
    assert!(!r.is_empty());
    for c in &r {
        assert_eq!(c.status, Status::Pass, "{}: {}", c.check_id, c.witness);
        if c.kind == Kind::Exact {
            assert!(c.residual.is_none());
        }
    }
}

#[test]
fn tightened_tolerance_fails_numeric_check() {
    let mut o = BTreeMap::new();
    o.insert("theta.model.equivariance".to_string(), 0.0);
    let r = run_suites(&["theta"], 0, &o).unwrap();
    let c = r.iter().find(|c| c.check_id == "theta.model.equivariance").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert!(c.residual.unwrap() > c.tolerance.unwrap());
}

#[test]
fn unknown_suite_exits_2() {
    let out = bin().args(["verify", "--suite", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_tolerance_key_exits_2() {
    let out = bin().args(["verify", "--suite", "degen", "--tol", "x.y=1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

fn strip_elapsed(s: &str) -> String {
    s.lines().filter(|l| !l.contains("elapsed_ms")).collect::<Vec<_>>().join("\n")
}

#[test]
fn json_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for k in 0..2 {
        let p = dir.path().join(format!("r{k}.json"));
        let out = bin()
            .args(["verify", "--suite", "degen", "--suite", "heisenberg", "--seed", "1", "--quiet", "--json"])
            .arg(&p)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        texts.push(std::fs::read_to_string(&p).unwrap());
    }
    assert_eq!(strip_elapsed(&texts[0]), strip_elapsed(&texts[1]));
    let v: serde_json::Value = serde_json::from_str(&texts[0]).unwrap();
    assert_eq!(v["schema"], 1);
    let results = v["results"].as_array().unwrap();
    assert!(results.iter().all(|r| r["status"] == "pass" && r["seed"] == 1));
    let ids: Vec<&str> = results.iter().map(|r| r["check_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn list_prints_every_check() {
    let out = bin().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), checks().len());
    assert!(text.contains("lemma.septimic.vanish_p3minus"));
}

#[test]
fn dump_klein_quartic_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("k.txt");
    let out = bin().args(["dump", "--object", "klein-quartic", "--out"]).arg(&p).output().unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&p).unwrap();
    let parsed = h7kit::exactcore::text::parse::<h7kit::exactcore::CycNum>(text.trim(), 3).unwrap();
    assert_eq!(parsed, h7kit::apolarity::klein().k4p.form);
}

#[test]
fn dump_septimic_basis_has_eight_lines() {
    let out = bin().args(["dump", "--object", "septimic-basis"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 8);
    for (line, b) in text.lines().zip(&h7kit::septimics::system().basis) {
        assert_eq!(&h7kit::exactcore::text::parse::<h7kit::exactcore::CycNum>(line, 7).unwrap(), b);
    }
}

#[test]
fn residual_status_invariant() {
    let r = run_suites(&["apolarity", "moore", "theta"], 3, &BTreeMap::new()).unwrap();
    for c in &r {
        match c.kind {
            Kind::Exact => assert!(c.residual.is_none() && c.tolerance.is_none(), "{}", c.check_id),
            Kind::Numeric => {
                let within = matches!((c.residual, c.tolerance), (Some(x), Some(t)) if x <= t);
                assert_eq!(c.status == Status::Pass, within, "{}", c.check_id);
            }
        }
    }
}
