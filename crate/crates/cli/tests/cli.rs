use std::process::Command;

use serde_json::json;

use gradhom_cli::corpus::{self, corpus_run};
use gradhom_cli::ops::TaskResult;
use gradhom_cli::{parse_problem, run_tasks, Filter, ProblemError, ReportDocument, RunOptions, Status};

const MINIMAL: &str = include_str!("fixtures/minimal.json");
const BROKEN: &str = include_str!("fixtures/broken.json");

fn opts() -> RunOptions {
    RunOptions::default()
}

#[test]
fn minimal_file_parses() {
    let pf = parse_problem(MINIMAL).unwrap();
    assert_eq!(pf.tasks.len(), 1);
    assert_eq!(pf.tasks[0].bound, Some(6));
    let rep = run_tasks(&pf, &opts()).unwrap();
    let TaskResult::Table(t) = &rep.entries[0].result else { panic!("{:?}", rep.entries[0]) };
    let v: Vec<u64> = t.values.values().copied().collect();
    assert_eq!(v, vec![1, 2, 4, 8, 16, 32]);
}

#[test]
fn undefined_name_is_reported() {
    let text = r#"{
  "ring": { "vars": ["x", "y"], "relations": ["x*y"] },
  "tasks": [ { "op": "betti", "args": ["W"] } ]
}"#;
    let err = parse_problem(text).unwrap_err();
    match &err {
        ProblemError::Undefined { name, location, .. } => {
            assert_eq!(name, "W");
            assert_eq!(*location, Some((3, 40)));
        }
        other => panic!("{other:?}"),
    }
    assert!(err.to_string().contains("\"W\""));
}

#[test]
fn inhomogeneous_relation_is_reported() {
    let text = r#"{ "ring": { "vars": ["x", "y"], "weights": [1, 1], "relations": ["x^2+y"] } }"#;
    let err = parse_problem(text).unwrap_err();
    assert!(matches!(err, ProblemError::Inhomogeneous { .. }), "{err:?}");
    assert!(err.to_string().contains("x^2+y"));
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let text = "{\n  \"ring\": { \"vars\": [\"x\"], }\n}";
    match parse_problem(text).unwrap_err() {
        ProblemError::Syntax { line, column, .. } => assert_eq!((line, column), (2, 28)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn forward_references_are_rejected() {
    let text = r#"{
  "ring": { "vars": ["x"], "relations": ["x^3"] },
  "modules": { "A": { "twist": { "of": "B", "by": 1 } }, "B": { "cyclic": ["x"] } }
}"#;
    let err = parse_problem(text).unwrap_err();
    assert!(err.to_string().contains("before its definition"), "{err}");
}

#[test]
fn unknown_keys_and_operations_are_rejected() {
    let text = r#"{ "ring": { "vars": ["x"] }, "task": [] }"#;
    assert!(matches!(parse_problem(text), Err(ProblemError::Syntax { .. })));
    let text = r#"{ "ring": { "vars": ["x"] }, "tasks": [ { "op": "bettti", "args": ["k"] } ] }"#;
    assert!(parse_problem(text).unwrap_err().to_string().contains("bettti"));
}

#[test]
fn empty_task_list_gives_empty_report() {
    let pf = parse_problem(r#"{ "ring": { "vars": ["x"], "relations": ["x^2"] } }"#).unwrap();
    let rep = run_tasks(&pf, &opts()).unwrap();
    assert!(rep.entries.is_empty());
    assert_eq!(rep.exit_code(), 0);
}

#[test]
fn bass_of_dual_numbers() {
    let text = r#"{
  "ring": { "vars": ["x"], "relations": ["x^2"] },
  "tasks": [ { "op": "bass", "args": ["R"], "bound": 6 } ]
}"#;
    let rep = run_tasks(&parse_problem(text).unwrap(), &opts()).unwrap();
    let TaskResult::Table(t) = &rep.entries[0].result else { panic!() };
    let v: Vec<u64> = t.values.values().take(6).copied().collect();
    assert_eq!(v, vec![1, 0, 0, 0, 0, 0]);
}

#[test]
fn type_formula_on_complete_intersection() {
    let text = r#"{
  "ring": { "vars": ["x", "y"], "relations": ["x^2", "y^2"] },
  "modules": { "M": { "cyclic": ["x"] } },
  "tasks": [ { "op": "verify_type_formula", "args": { "z": "M", "c": "R" } } ]
}"#;
    let rep = run_tasks(&parse_problem(text).unwrap(), &opts()).unwrap();
    let e = &rep.entries[0];
    assert_eq!(e.status, Status::Pass);
    assert_eq!(e.theorem.as_deref(), Some("type-formula"));
    let TaskResult::Report(r) = &e.result else { panic!() };
    let sides = serde_json::to_value((&r.left, &r.right)).unwrap();
    assert_eq!(sides, json!([{ "kind": "int", "value": 1 }, { "kind": "int", "value": 1 }]));
    let third = serde_json::to_value(&r.evidence["μ^{depth C}(C)"]).unwrap();
    assert_eq!(third, json!({ "kind": "int", "value": 1 }));
}

#[test]
fn report_round_trips_and_is_deterministic() {
    let pf = parse_problem(include_str!("../corpus/complete_intersection.json")).unwrap();
    let a = run_tasks(&pf, &opts()).unwrap();
    let b = run_tasks(&pf, &opts()).unwrap();
    assert_eq!(a.without_timing().to_json(), b.without_timing().to_json());
    let back = ReportDocument::from_json(&a.to_json()).unwrap();
    assert_eq!(back, a);
}

#[test]
fn seeds_change_only_property_shifts() {
    let pf = parse_problem(include_str!("../corpus/fat_line.json")).unwrap();
    for seed in 0..4 {
        let rep = run_tasks(&pf, &RunOptions { seed, filter: Filter::parse("op=properties").unwrap(), ..opts() }).unwrap();
        assert_eq!(rep.summary.count(Status::Fail), 0, "seed {seed}");
    }
}

#[test]
fn filters_select_by_theorem() {
    let rep = corpus_run(&RunOptions {
        filter: Filter::parse("theorem=type-formula").unwrap(),
        ..opts()
    })
    .unwrap();
    assert!(!rep.entries.is_empty());
    assert!(rep.entries.iter().all(|e| e.op == "verify_type_formula"));
    assert!(Filter::parse("colour=red").is_err());
}

#[test]
fn corpus_parses() {
    let ps = corpus::problems().unwrap();
    assert!(ps.len() >= 10);
}

#[test]
fn unmet_expectation_fails_the_run() {
    let pf = parse_problem(BROKEN).unwrap();
    let rep = run_tasks(&pf, &opts()).unwrap();
    assert_eq!(rep.entries[0].status, Status::Fail);
    assert_eq!(rep.entries[0].expectation_met, Some(false));
    assert_eq!(rep.entries[1].status, Status::Pass);
    assert_eq!(rep.exit_code(), 1);
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gradhom"))
}

#[test]
fn binary_exit_codes() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let out = binary()
        .args(["--input", &format!("{dir}/tests/fixtures/broken.json"), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let rep = ReportDocument::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(rep.summary.count(Status::Fail), 1);

    let out = binary()
        .args(["--input", &format!("{dir}/tests/fixtures/minimal.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("betti(x=k)"));

    let out = binary().args(["--input", "/nonexistent/problem.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let bad = std::env::temp_dir().join("gradhom-inhomogeneous.json");
    std::fs::write(&bad, r#"{ "ring": { "vars": ["x", "y"], "relations": ["x^2+y"] } }"#).unwrap();
    let out = binary().args(["--input", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("homogeneous"));
}

#[test]
fn field_override() {
    let dir = env!("CARGO_MANIFEST_DIR");
    for field in ["rational", "F_101"] {
        let out = binary()
            .args(["--input", &format!("{dir}/tests/fixtures/minimal.json"), "--field", field, "--format", "json"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let rep = ReportDocument::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
        assert_eq!(rep.problems[0].field, if field == "rational" { "Q" } else { "F_101" });
    }
}
