use std::process::{Command, Output};

use cyclohedra::equivariant::theorem_series;
use cyclohedra::InducedDecomposition;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclohedra")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn faces_examples() {
    let csv = stdout(&["faces", "--n", "4", "--format", "csv"]);
    let enumerated: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(enumerated, ["1", "12", "30", "20"]);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
    let csv = stdout(&["faces", "--n", "3", "--format", "csv"]);
    let enumerated: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(enumerated, ["1", "6", "6"]);
}

#[test]
fn invalid_and_over_budget_input_exit_2() {
    for args in [
        &["faces", "--n", "2"][..],
        &["faces", "--n", "13"],
        &["faces", "--n", "9", "--max-enum", "8"],
        &["character", "--n", "5"],
        &["character", "--n", "5", "--element", "r2"],
        &["character", "--n", "5", "--element", "s1", "--degree", "40"],
        &["matchings", "--n", "7", "--kind", "2"],
        &["series", "--n", "5", "--degree", "0"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn census_csv_has_antipodal_row() {
    let csv = stdout(&["census", "--n", "6", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("n_plus_1,d,k,alpha,beta,gamma"));
    assert!(csv.lines().any(|l| l == "6,3,3,0,2,2"), "{csv}");
}

#[test]
fn verify_reproduces_c4_face_series() {
    let text = stdout(&["verify", "--n", "4"]);
    assert!(text.contains("1 + 12t/(1-t) + 30t^2/(1-t)^2 + 20t^3/(1-t)^3"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn character_matches_scan() {
    let text = stdout(&["character", "--n", "6", "--element", "s3", "--degree", "6"]);
    assert!(text.contains("match : yes"), "{text}");
    let json: Value = serde_json::from_str(&stdout(&["character", "--n", "6", "--element", "s3", "--degree", "6", "--format", "json"])).unwrap();
    assert_eq!(json["bruteforce"], serde_json::json!([1, 0, 6, 0, 12, 0, 18]));
}

#[test]
fn series_json_round_trips() {
    let text = stdout(&["series", "--n", "5", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let dec: InducedDecomposition = serde_json::from_value(v["decomposition"].clone()).unwrap();
    assert_eq!(dec, theorem_series(5, 12).unwrap());
    assert_eq!(serde_json::to_value(&dec).unwrap(), v["decomposition"]);
}

#[test]
fn json_reports_parse() {
    for args in [
        &["faces", "--n", "5"][..],
        &["census", "--n", "6"],
        &["series", "--n", "6", "--cyclic"],
        &["matchings", "--n", "6", "--k", "3"],
        &["verify", "--n", "5"],
    ] {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let text = stdout(&full);
        let v: Value = serde_json::from_str(&text).unwrap();
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(v, again, "{args:?}");
    }
}

#[test]
fn matchings_list_figure_words() {
    let text = stdout(&["matchings", "--n", "6", "--k", "3", "--kind", "2"]);
    assert!(text.lines().any(|l| l.contains("B1 B1 W2") && l.contains("(()())") && l.ends_with("{{2},{5},{2,3,4,5}}")), "{text}");
    let csv = stdout(&["matchings", "--n", "7", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("n_plus_1,k,b,kind,count"));
    assert!(csv.lines().any(|l| l == "7,1,0,type1,6"));
}

#[test]
fn output_is_repeatable() {
    assert_eq!(stdout(&["census", "--n", "8"]), stdout(&["census", "--n", "8", "--threads", "3"]));
}
