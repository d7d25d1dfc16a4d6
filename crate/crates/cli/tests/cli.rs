use std::fs;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use rademacher_cli::{dispatch, RunConfig, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use rademacher_core::canon::is_isomorphic;
use rademacher_core::constructions::k_plus;
use rademacher_core::graph6;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(argv: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = dispatch(argv, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn schema() -> jsonschema::Validator {
    let text = fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid_report(text: &str) -> Value {
    let v: Value = serde_json::from_str(text).unwrap();
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema errors: {errors:?}");
    v
}

#[test]
fn verify_spectral_er_prints_a_passing_report() {
    let r = run(&["verify", "spectral-er", "--n", "6"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let v = assert_valid_report(&r.out);
    assert_eq!(v["verdict"], "pass");
    assert!(v["violations"].as_array().unwrap().is_empty());
    let extremal = graph6::decode(v["extremal"][0].as_str().unwrap()).unwrap();
    assert!(is_isomorphic(&extremal, &k_plus(6).unwrap()));
}

#[test]
fn every_check_matches_the_schema() {
    let cases: &[&[&str]] = &[
        &["verify", "spectral-er", "--n", "5"],
        &["verify", "edge-er", "--n", "5"],
        &["verify", "nz", "--n", "5"],
        &["verify", "lovasz-simonovits", "--n", "5", "--q", "2"],
        &["verify", "conjecture", "--n", "6", "--q", "2", "--f", "Dhc"],
        &["verify", "sqrt-m", "--n", "5"],
        &["verify", "signless", "--n", "5"],
        &["verify", "bn", "--n", "5"],
        &["search", "near-misses", "--n", "6"],
    ];
    for argv in cases {
        let r = run(argv);
        assert_eq!(r.code, EXIT_OK, "{argv:?}: {}", r.err);
        assert_valid_report(&r.out);
    }
}

#[test]
fn construct_k_plus() {
    let r = run(&["construct", "k-plus", "--n", "8"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.out.lines().count(), 1);
    let g = graph6::decode(r.out.trim()).unwrap();
    assert!(is_isomorphic(&g, &k_plus(8).unwrap()));
}

#[test]
fn constructions_by_name() {
    for argv in [
        &["construct", "turan", "--n", "7", "--r", "3"][..],
        &["construct", "turan-star", "--n", "8", "--q", "2"],
        &["construct", "remark", "--kind", "odd-plus-minus", "--n", "7"],
        &["construct", "case", "--id", "G2", "--n", "10"],
        &["construct", "case", "--id", "G8", "--n", "12", "--a", "2", "--b", "2", "--c", "1"],
        &["construct", "apex-star", "--kind", "even", "--n", "10"],
    ] {
        let r = run(argv);
        assert_eq!(r.code, EXIT_OK, "{argv:?}: {}", r.err);
        graph6::decode(r.out.trim()).unwrap();
    }
    assert_eq!(run(&["construct", "case", "--id", "G9", "--n", "10"]).code, EXIT_USAGE);
    assert_eq!(run(&["construct", "k-plus", "--n", "65"]).code, EXIT_USAGE);
}

#[test]
fn lovasz_simonovits_rejects_large_q() {
    let r = run(&["verify", "lovasz-simonovits", "--n", "6", "--q", "3"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.out.is_empty());
    assert!(r.err.contains("q"));
}

#[test]
fn unknown_flags_print_usage_and_exit_2() {
    let r = run(&["verify", "spectral-er", "--n", "6", "--bogus"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.out.is_empty());
    assert!(r.err.contains("Usage"));
    assert_eq!(run(&[]).code, EXIT_USAGE);
    assert_eq!(run(&["verify", "spectral-er", "--n", "11"]).code, EXIT_USAGE);
    assert_eq!(run(&["spectral", "--graph6", "B", "--tol", "0"]).code, EXIT_USAGE);
}

#[test]
fn help_goes_to_stdout() {
    let r = run(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("reproduce"));
}

#[test]
fn spectral_poly_and_count() {
    let kp = graph6::encode(&k_plus(8).unwrap());
    let r = run(&["spectral", "--graph6", &kp]);
    assert_eq!(r.code, EXIT_OK);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    let lambda = v["lambda"].as_f64().unwrap();

    let r = run(&["poly", "--kind", "f", "--n", "8", "--root"]);
    assert_eq!(r.code, EXIT_OK);
    let mut lines = r.out.lines();
    assert_eq!(lines.next(), Some("x^3 - x^2 - 16x + 8"));
    let root: f64 = lines.next().unwrap().parse().unwrap();
    assert!((root - lambda).abs() < 1e-9);

    assert_eq!(run(&["count", "--n", "6", "--f", "Dhc"]).out.trim(), "6");
    assert_eq!(run(&["count", "--graph6", &kp]).out.trim(), "4");
    assert_eq!(run(&["count", "--n", "30"]).code, EXIT_USAGE);
    assert_eq!(run(&["poly", "--kind", "f", "--n", "7"]).code, EXIT_USAGE);
    assert_eq!(run(&["poly", "--kind", "g8", "--n", "12", "--a", "2"]).code, EXIT_USAGE);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let r = run(&["verify", "edge-er", "--n", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.is_empty());
    assert_valid_report(&fs::read_to_string(&path).unwrap());

    let bad = dir.path().join("missing").join("report.json");
    assert_eq!(run(&["verify", "edge-er", "--n", "5", "--out", bad.to_str().unwrap()]).code, EXIT_USAGE);
}

#[test]
fn reproduce_rejects_a_broken_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain-file");
    fs::write(&file, "x").unwrap();
    let target = file.join("artifacts");
    let r = run(&["reproduce", "--out", target.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("cannot write"));
}

#[test]
fn reproduce_writes_one_file_per_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let r = run(&["reproduce", "--n-max", "7", "--companion-n-max", "6", "--out", dir.path().to_str().unwrap()]);
    assert!(r.code == EXIT_OK || r.code == EXIT_FAIL, "{}", r.err);
    for id in 1..=11 {
        let text = fs::read_to_string(dir.path().join(format!("criterion_{id:02}.json"))).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["id"], id);
    }
    let summary = fs::read_to_string(dir.path().join("summary.txt")).unwrap();
    assert_eq!(summary, r.out);
    assert_eq!(summary.lines().filter(|l| l.starts_with("criterion")).count(), 11);
    // exit status follows the summary
    assert_eq!(r.code == EXIT_OK, summary.contains("all criteria passed"));
}

#[test]
fn run_config_validation() {
    assert!(RunConfig::default().validate().is_ok());
    assert!(RunConfig { tolerance: -1.0, ..RunConfig::default() }.validate().is_err());
    assert!(RunConfig { n_range: (5, 4), ..RunConfig::default() }.validate().is_err());
    assert!(RunConfig { n_range: (3, 11), ..RunConfig::default() }.validate().is_err());
}

/// Random argument lists drawn from real and junk tokens never panic.
#[test]
fn fuzzed_argv_never_panics() {
    // `reproduce` only appears with a bad flag: a well-formed call runs the
    // whole suite, which the dedicated tests above already cover. Numeric
    // values stop at 6, so exhaustive scans stay small.
    let commands = ["construct", "spectral", "poly", "count", "verify", "search", "help", "", "--help", "-V", "reproduce --bad"];
    let words = [
        "k-plus", "turan", "turan-star", "remark", "case", "apex-star", "spectral-er", "edge-er", "nz", "lovasz-simonovits",
        "conjecture", "sqrt-m", "signless", "bn", "near-misses", "reproduce", "unbalanced-plus", "even", "odd", "G1", "G7", "G8",
        "f", "g", "g8", "p2", "--n", "--r", "--q", "--f", "--kind", "--id", "--a", "--b", "--c", "--s1", "--tol", "--workers",
        "--seed", "--format", "--graph6", "--signless", "--root", "--bogus", "json", "text", "-", "--", "=", "\u{0}", "é",
    ];
    let values = [
        "0", "1", "2", "3", "4", "5", "6", "-1", "65", "99999999999999999999", "1e-10", "0.0", "NaN", "inf", "-0", "x", "",
        "Bw", "Dhc", "~", "?", "@@@", "~~~~", "G_~vf_", "\u{7f}",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let mut argv: Vec<String> = Vec::new();
        let first = commands.choose(&mut rng).unwrap();
        argv.extend(first.split(' ').map(String::from));
        for _ in 0..rng.gen_range(0..8) {
            let tok = if rng.gen_bool(0.5) { words.choose(&mut rng) } else { values.choose(&mut rng) };
            argv.push(tok.unwrap().to_string());
        }
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = dispatch(&argv, &mut out, &mut err);
        assert!([EXIT_OK, EXIT_FAIL, EXIT_USAGE].contains(&code), "{argv:?} -> {code}");
    }
}
