//! The CLI must print exactly what the library produces for the same
//! inputs, with the documented exit codes.

use std::path::PathBuf;
use std::process::Command;

use ctxprob::json;
use ctxprob::{
    birkhoff_decompose, born_cond_prob_matrix, canonical_partition_labels, classical_cond_prob_matrix,
    classify_partial, enumerate_two_valued_states, exotic_cond_prob_matrix, exotic_half_state, parse_logic,
    row_polytope_decompose, simulate_cond_prob_sharded, validate_logic, Measure, OrthogonalRep, UrnSpec,
};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn read(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("ctxprob").chain(args.iter().copied());
    let code = ctxprob_cli::run(argv, &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn run_json(args: &[&str]) -> Value {
    let outcome = run(args);
    assert_eq!(outcome.code, 0, "stderr: {}", outcome.stderr);
    serde_json::from_str(&outcome.stdout).unwrap()
}

#[test]
fn states_match_library() {
    let logic = parse_logic(&read("firefly.json")).unwrap();
    let value = run_json(&["states", "--logic", &data("firefly.json")]);
    assert_eq!(value, json::states_json(&enumerate_two_valued_states(&logic)));
    assert_eq!(value["states"].as_array().unwrap().len(), 5);
}

#[test]
fn labels_match_library() {
    let logic = parse_logic(&read("pentagon.json")).unwrap();
    let labels = canonical_partition_labels(&enumerate_two_valued_states(&logic)).unwrap();
    assert_eq!(run_json(&["labels", "--logic", &data("pentagon.json")]), json::labels_json(&labels));
}

#[test]
fn validate_reports_shape() {
    let logic = parse_logic(&read("firefly.json")).unwrap();
    let value = run_json(&["validate", "--logic", &data("firefly.json"), "--rep", &data("firefly_rep.json")]);
    assert_eq!(value, json::logic_report_json(&logic, &validate_logic(&logic)));
    assert_eq!(value["valid"], true);
    assert_eq!(value["intertwines"], serde_json::json!(["h"]));
}

#[test]
fn validate_reports_overlap_as_data() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"contexts":[{"name":"A","atoms":["x","y"]},{"name":"B","atoms":["x","y"]}]}"#).unwrap();
    let value = run_json(&["validate", "--logic", path.to_str().unwrap()]);
    assert_eq!(value["valid"], false);
    assert_eq!(value["violations"][0]["code"], "overlap>1");
    // other commands refuse the same file
    let outcome = run(&["states", "--logic", path.to_str().unwrap()]);
    assert_eq!(outcome.code, 1);
    assert!(outcome.stderr.starts_with("error: "));
}

#[test]
fn classical_matches_library() {
    let logic = parse_logic(&read("firefly.json")).unwrap();
    let labels = canonical_partition_labels(&enumerate_two_valued_states(&logic)).unwrap();
    let measure = Measure::parse(&read("singular1.json")).unwrap();
    let expected = json::cond_matrix_json(&classical_cond_prob_matrix(&labels, &measure, "C2", "C1").unwrap());
    let args = ["condprob", "classical", "--logic", &data("firefly.json"), "--measure", &data("singular1.json")];
    let value = run_json(&[&args[..], &["--rows", "C2", "--cols", "C1"]].concat());
    assert_eq!(value, expected);
}

#[test]
fn classical_table_shows_undefined_entries() {
    let outcome = run(&[
        "condprob",
        "classical",
        "--logic",
        &data("firefly.json"),
        "--measure",
        &data("singular1.json"),
        "--rows",
        "C2",
        "--cols",
        "C1",
        "--format",
        "table",
    ]);
    assert_eq!(outcome.code, 0);
    assert!(outcome.stdout.contains("0/0"), "{}", outcome.stdout);
}

#[test]
fn quantum_matches_library() {
    let logic = parse_logic(&read("firefly.json")).unwrap();
    let rep = OrthogonalRep::parse(&read("firefly_rep.json")).unwrap();
    let m = born_cond_prob_matrix(&rep.basis(&logic, "C1").unwrap(), &rep.basis(&logic, "C2").unwrap(), 1e-10).unwrap();
    let value = run_json(&[
        "condprob",
        "quantum",
        "--logic",
        &data("firefly.json"),
        "--rep",
        &data("firefly_rep.json"),
        "--rows",
        "C1",
        "--cols",
        "C2",
    ]);
    assert_eq!(value, json::born_json("C1", "C2", &m, None));
}

#[test]
fn quantum_state_probabilities() {
    let value = run_json(&[
        "condprob",
        "quantum",
        "--logic",
        &data("firefly.json"),
        "--rep",
        &data("firefly_rep.json"),
        "--rows",
        "C1",
        "--cols",
        "C2",
        "--state",
        "e1",
    ]);
    let probs: Vec<f64> = serde_json::from_value(value["probabilities"].clone()).unwrap();
    for (p, q) in probs.iter().zip([0.5, 0.5, 0.0]) {
        assert!((p - q).abs() <= 1e-12);
    }
}

#[test]
fn exotic_matches_library() {
    let logic = parse_logic(&read("pentagon.json")).unwrap();
    let state = exotic_half_state(&logic).unwrap();
    let expected = json::cond_matrix_json(&exotic_cond_prob_matrix(&state, "C2", "C4").unwrap());
    let value = run_json(&["condprob", "exotic", "--logic", &data("pentagon.json"), "--rows", "C2", "--cols", "C4"]);
    assert_eq!(value, expected);
    let outcome = run(&["condprob", "exotic", "--logic", &data("firefly.json"), "--rows", "C1", "--cols", "C2"]);
    assert_eq!(outcome.code, 1);
}

#[test]
fn check_classifies_matrices() {
    let value = run_json(&["check", "--matrix", &data("firefly_born.json")]);
    assert_eq!(value["doubly_stochastic"], true);
    let value = run_json(&["check", "--matrix", &data("notdouble.json")]);
    assert_eq!(value["row_stochastic"], true);
    assert_eq!(value["doubly_stochastic"], false);
    let parsed = match json::parse_matrix(&read("notdouble.json")).unwrap() {
        json::ParsedMatrix::Rational(m) => m,
        json::ParsedMatrix::Real(_) => unreachable!(),
    };
    assert_eq!(value, json::verdict_json(&classify_partial(&parsed, 1e-10).unwrap()));
}

#[test]
fn check_representation() {
    let value = run_json(&["check", "--logic", &data("firefly.json"), "--rep", &data("firefly_rep.json")]);
    assert_eq!(value["valid"], true);
    assert_eq!(run(&["check", "--logic", &data("firefly.json")]).code, 2);
}

#[test]
fn birkhoff_matches_library() {
    let m = match json::parse_matrix(&read("firefly_born.json")).unwrap() {
        json::ParsedMatrix::Real(m) => m,
        json::ParsedMatrix::Rational(_) => unreachable!(),
    };
    let expected = json::decomposition_json(&birkhoff_decompose(&m, 1e-10).unwrap());
    assert_eq!(run_json(&["birkhoff", "--matrix", &data("firefly_born.json")]), expected);
}

#[test]
fn birkhoff_rejects_non_doubly_stochastic() {
    let outcome = run(&["birkhoff", "--matrix", &data("notdouble.json")]);
    assert_eq!(outcome.code, 1);
    assert_eq!(outcome.stderr, "error: not doubly stochastic\n");
    assert!(outcome.stdout.is_empty());
}

#[test]
fn rowdecomp_matches_library() {
    let m = match json::parse_matrix(&read("notdouble.json")).unwrap() {
        json::ParsedMatrix::Rational(m) => m.map(|x| x.clone().unwrap()),
        json::ParsedMatrix::Real(_) => unreachable!(),
    };
    let expected = json::decomposition_json(&row_polytope_decompose(&m).unwrap());
    let value = run_json(&["rowdecomp", "--matrix", &data("notdouble.json")]);
    assert_eq!(value, expected);
    assert_eq!(value["kind"], "row-vertex");
}

#[test]
fn simulate_matches_library() {
    let logic = parse_logic(&read("firefly.json")).unwrap();
    let labels = canonical_partition_labels(&enumerate_two_valued_states(&logic)).unwrap();
    let measure = Measure::uniform(5);
    let spec = UrnSpec::new(labels.clone(), measure.clone(), 42).unwrap();
    let e = simulate_cond_prob_sharded(&spec, "C1", "C2", 20_000, 2).unwrap();
    let exact = classical_cond_prob_matrix(&labels, &measure, "C1", "C2").unwrap();
    let value = run_json(&[
        "simulate",
        "--logic",
        &data("firefly.json"),
        "--measure",
        &data("uniform5.json"),
        "--row-context",
        "C1",
        "--col-context",
        "C2",
        "-N",
        "20000",
        "--seed",
        "42",
        "--shards",
        "2",
    ]);
    assert_eq!(value, json::simulation_json(&e, &exact, &measure));
}

#[test]
fn simulate_with_preparation() {
    let value = run_json(&[
        "simulate",
        "--logic",
        &data("firefly.json"),
        "--measure",
        &data("uniform5.json"),
        "--row-context",
        "C1",
        "--col-context",
        "C2",
        "-N",
        "1000",
        "--prepare",
        "h",
        "--prepare-context",
        "C2",
    ]);
    assert_eq!(value["measure"], serde_json::json!(["0", "0", "0", "0", "1"]));
    assert_eq!(value["counts"][2][2], 1000);
}

#[test]
fn json_output_is_stable() {
    let args = ["labels", "--logic", &data("pentagon.json")];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["states"]).code, 2);
    assert_eq!(run(&["states", "--logic", &data("firefly.json"), "--bogus"]).code, 2);
    assert_eq!(run(&["birkhoff", "--matrix", &data("notdouble.json"), "--tol", "-1"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn domain_errors_exit_1_with_one_line() {
    let missing = run(&["states", "--logic", "/nonexistent/logic.json"]);
    assert_eq!(missing.code, 1);
    assert!(missing.stderr.starts_with("error: cannot read"));
    assert_eq!(missing.stderr.lines().count(), 1);

    let unknown = run(&[
        "condprob",
        "classical",
        "--logic",
        &data("firefly.json"),
        "--measure",
        &data("uniform5.json"),
        "--rows",
        "C9",
        "--cols",
        "C1",
    ]);
    assert_eq!(unknown.code, 1);
    assert_eq!(unknown.stderr, "error: unknown context `C9`\n");

    let misaligned = run(&[
        "condprob",
        "classical",
        "--logic",
        &data("pentagon.json"),
        "--measure",
        &data("uniform5.json"),
        "--rows",
        "C1",
        "--cols",
        "C2",
    ]);
    assert_eq!(misaligned.code, 1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ctxprob");
    let ok = Command::new(bin).args(["states", "--logic", &data("firefly.json")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["birkhoff", "--matrix", &data("notdouble.json")]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&bad.stderr), "error: not doubly stochastic\n");
    let usage = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
