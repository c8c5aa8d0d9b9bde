use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use hkfun::density::PairDensity;
use hkfun::exactnum::rational::{int, rat};
use hkfun::volume::parameter_density;
use serde_json::Value;

fn hkfun(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkfun")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hkfun(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn parameter_tent_round_trips() {
    let v = json(&["density", "--param", "--mult", "1", "--degrees", "1,1", "--format", "json"]);
    let pair: PairDensity = serde_json::from_value(v).unwrap();
    assert_eq!(pair, parameter_density(1, &[1, 1]).unwrap());
    assert_eq!(pair.density().eval(&rat(1, 2)), rat(1, 2));
    assert_eq!(pair.alpha(), int(2));
}

#[test]
fn fermat_quartic_threshold() {
    let v = json(&["trinomial", "--fermat", "4", "--n", "1", "--prime", "29", "--format", "json"]);
    assert_eq!(v, Value::String("349/232".into()));
}

#[test]
fn full_index_numerator_changes_the_correction() {
    let reduced = json(&["trinomial", "--fermat", "4", "--prime", "29"]);
    let full = json(&["trinomial", "--fermat", "4", "--prime", "29", "--numerator", "full"]);
    assert_ne!(reduced, full);
}

#[test]
fn verify_case_passes() {
    let out = hkfun(&["verify", "--case", "fermat4-p17-q17"]);
    assert!(out.status.success());
    let reports: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports[0]["passed"], Value::Bool(true));
}

#[test]
fn verify_lists_the_suite() {
    let names = json(&["verify", "--list"]);
    assert_eq!(names.as_array().unwrap().len(), 11);
    assert_eq!(names[0], "parameter-exactness");
}

#[test]
fn samples_are_rounded_to_precision() {
    let csv = stdout(&["volume", "--degrees", "1,1,1", "--format", "samples", "--samples", "3", "--precision", "2"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "x,f,x_decimal,f_decimal");
    assert_eq!(lines[2], "3/2,3/4,1.50,0.75");
    assert_eq!(lines.len(), 4);
}

#[test]
fn summary_as_csv() {
    let csv = stdout(&["density", "--param", "--mult", "1", "--degrees", "1,1", "--summary", "--format", "csv"]);
    assert_eq!(csv.lines().nth(1), Some("2,2,1,symmetric-at-half-d,regular-certified"));
}

#[test]
fn config_file_fills_unset_flags() {
    let config = scratch("tent.json", r#"{"param": true, "mult": 1, "degrees": [1, 1]}"#);
    let v = json(&["density", "--config", config.to_str().unwrap(), "--mult", "2"]);
    let pair: PairDensity = serde_json::from_value(v).unwrap();
    assert_eq!(pair, parameter_density(2, &[1, 1]).unwrap());
}

#[test]
fn pair_file_input() {
    let tent = serde_json::to_string(&parameter_density(1, &[1, 1]).unwrap()).unwrap();
    let path = scratch("pair.json", &tent);
    let v = json(&["density", "--input", path.to_str().unwrap(), "--scale", "2", "--summary"]);
    assert_eq!(v["alpha"], "4");
    assert_eq!(v["ehk"], "4");
}

#[test]
fn malformed_json_reports_location() {
    let path = scratch("broken.json", "{\"mult\": 1,\n \"degrees\": [1\n");
    let out = hkfun(&["density", "--param", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("hkfun: malformed JSON"), "{err}");
    assert!(err.contains("line 3"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn unknown_config_key_is_rejected() {
    let path = scratch("typo.json", r#"{"mutl": 1}"#);
    let out = hkfun(&["density", "--param", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_and_bad_values_fail() {
    assert!(!hkfun(&["density", "--bogus"]).status.success());
    assert!(!hkfun(&["trinomial", "--fermat", "4", "--prime", "28"]).status.success());
    assert!(!hkfun(&["trinomial", "--fermat", "4", "--cyclic", "4"]).status.success());
    assert!(!hkfun(&["volume", "--degrees", "1,1", "--format", "xml"]).status.success());
}

#[test]
fn sampling_needs_a_density() {
    let out = hkfun(&["trinomial", "--fermat", "4", "--prime", "29", "--format", "samples"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn negative_slopes_parse() {
    let v = json(&["bundle", "--slopes", "-1", "--ranks", "2", "--poldeg", "2", "--twist", "3"]);
    assert_eq!(v["alpha"], "3/2");
    assert_eq!(v["h1"]["regime"], "exact");
}

#[test]
fn oracle_matches_the_quadric_cone() {
    let v = json(&["oracle", "--hypersurface", "x*y - z^2", "--prime", "5", "--q", "5"]);
    assert_eq!(v["profile"]["top_nonzero"], 6);
    assert_eq!(v["ehk_estimate"], "37/25");
    let alpha = json(&["oracle", "--vars", "2", "--generators", "x^2,x*y,y^3", "--monomial-alpha"]);
    assert_eq!(alpha, "4");
}

#[test]
fn output_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("segre.csv");
    stdout(&["segre", "--pair", "1:1,1", "--pair", "1:1,1", "--format", "csv", "--out", path.to_str().unwrap()]);
    let csv = fs::read_to_string(path).unwrap();
    assert!(csv.starts_with("start,end,coefficients"));
}
