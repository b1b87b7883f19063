//! End-to-end tests of the `genlogic` binary over the shipped example files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn examples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn genlogic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genlogic"))
        .current_dir(examples())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&output.stdout);
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad json: {e}\n{text}"))
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn strict_query_on_rain_wet_data() {
    let out = genlogic(&[
        "query",
        "--vocab",
        "rain_wet.vocab.json",
        "--data",
        "rain_wet.csv",
        "--sem",
        "strict",
        "--given",
        "wet",
        "rain",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["p"], "3/5");
    assert_eq!(json["decimal"], 0.6);
    assert_eq!(json["K"], 10);
    assert_eq!(json["N_supported"], 4);
    assert_eq!(json["semantics"], "strict");
}

#[test]
fn quantified_query_reads_quoted_csv_headers() {
    let out = genlogic(&[
        "query",
        "--vocab",
        "blames.vocab.json",
        "--data",
        "blames.csv",
        "--given",
        "exists x. blames(x,a)",
        "forall x. blames(x,a)",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["p"], "3/5");
}

#[test]
fn counterfactual_football_query() {
    let out = genlogic(&[
        "query",
        "--vocab",
        "football.vocab.json",
        "--prior",
        "football.prior.json",
        "--sem",
        "limit",
        "--given",
        "goal",
        "--given",
        "home",
        "--given",
        "!opponent",
        "win",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["p"], "2/3");
    assert_eq!(json["decimal"], 0.666667);
}

#[test]
fn limit_recovers_from_inconsistency_under_uniform_prior() {
    let out = genlogic(&[
        "query",
        "--vocab",
        "rain_wet.vocab.json",
        "--prior",
        "uniform",
        "--sem",
        "limit",
        "--given",
        "rain",
        "--given",
        "wet",
        "--given",
        "rain -> wet",
        "--given",
        "!wet",
        "rain",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["p"], "1");
}

#[test]
fn inconsistent_strict_query_is_undefined_with_exit_2() {
    let out = genlogic(&[
        "query",
        "--vocab",
        "rain_wet.vocab.json",
        "--data",
        "rain_wet.csv",
        "--sem",
        "strict",
        "--given",
        "rain",
        "--given",
        "!rain",
        "wet",
    ]);
    assert_eq!(code(&out), 2);
    let json = stdout_json(&out);
    assert_eq!(json["p"], "undefined");
    assert_eq!(json["reason"], "empty conditioning support");
}

#[test]
fn skewed_prior_reaches_one_where_entailment_fails() {
    let query = genlogic(&[
        "query",
        "--vocab",
        "rain_wet.vocab.json",
        "--prior",
        "skewed.prior.json",
        "--sem",
        "strict",
        "--given",
        "wet",
        "rain",
    ]);
    assert_eq!(code(&query), 0, "{}", String::from_utf8_lossy(&query.stderr));
    assert_eq!(stdout_json(&query)["p"], "1");

    let entail = genlogic(&[
        "entail",
        "--vocab",
        "rain_wet.vocab.json",
        "--given",
        "wet",
        "rain",
    ]);
    assert_eq!(code(&entail), 0);
    assert_eq!(stdout_json(&entail)["entails"], false);
}

#[test]
fn update_reports_both_marginals_and_writes_when_asked() {
    let out = genlogic(&[
        "update",
        "--vocab",
        "bird_fly.vocab.json",
        "--data",
        "bird_fly.csv",
        "--row",
        "bird=1",
        "--row",
        "fly=0",
        "bird -> fly",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["p_before"], "1");
    assert_eq!(json["p_after"], "10/11");
    assert_eq!(json["K"], 10);
    assert_eq!(json["K_new"], 11);
    assert_eq!(json["written"], false);

    // --write appends; run against a scratch copy
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("bird_fly.csv");
    std::fs::copy(examples().join("bird_fly.csv"), &data).unwrap();
    let vocab = examples().join("bird_fly.vocab.json");
    let out = Command::new(env!("CARGO_BIN_EXE_genlogic"))
        .args([
            "update",
            "--vocab",
            vocab.to_str().unwrap(),
            "--data",
            data.to_str().unwrap(),
            "--row",
            "bird=1",
            "--row",
            "fly=0",
            "--write",
            "bird -> fly",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&data).unwrap();
    assert!(text.ends_with("1,0\n"));
    assert_eq!(text.lines().count(), 12, "header plus eleven rows");

    // the written file now yields the updated marginal
    let out = Command::new(env!("CARGO_BIN_EXE_genlogic"))
        .args([
            "marginal",
            "--vocab",
            vocab.to_str().unwrap(),
            "--data",
            data.to_str().unwrap(),
            "bird -> fly",
        ])
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out)["p"], "10/11");
}

#[test]
fn update_rejects_hand_set_priors() {
    let out = genlogic(&[
        "update",
        "--vocab",
        "bird_fly.vocab.json",
        "--data",
        "bird_fly.csv",
        "--prior",
        "uniform",
        "--row",
        "bird=1",
        "--row",
        "fly=0",
        "bird -> fly",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn mcs_lists_the_unique_best_subset() {
    let out = genlogic(&[
        "mcs",
        "--vocab",
        "rain_wet.vocab.json",
        "--given",
        "rain",
        "--given",
        "wet",
        "--given",
        "rain -> wet",
        "--given",
        "!wet",
    ]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["cardinality"], 3);
    assert_eq!(json["mcs"].as_array().unwrap().len(), 1);
}

#[test]
fn check_passes_and_rejects_zero_trials() {
    let out = genlogic(&["check", "--trials", "50", "--seed", "7"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["trials"], 50);
    assert!(json["theorems"]["T5"]["counterexamples"]
        .as_array()
        .unwrap()
        .is_empty());

    let out = genlogic(&["check", "--trials", "0", "--seed", "7"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn input_errors_exit_1() {
    // unknown symbol in the query
    let out = genlogic(&[
        "query",
        "--vocab",
        "rain_wet.vocab.json",
        "--data",
        "rain_wet.csv",
        "snow",
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("snow"));

    // missing data for an MLE prior
    let out = genlogic(&["query", "--vocab", "rain_wet.vocab.json", "rain"]);
    assert_eq!(code(&out), 1);

    // nonexistent file
    let out = genlogic(&[
        "query",
        "--vocab",
        "no_such_file.json",
        "--data",
        "rain_wet.csv",
        "rain",
    ]);
    assert_eq!(code(&out), 1);

    // malformed semantics
    let out = genlogic(&[
        "query",
        "--vocab",
        "rain_wet.vocab.json",
        "--data",
        "rain_wet.csv",
        "--sem",
        "mu=0.9",
        "rain",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn identical_invocations_are_bit_identical() {
    let args = [
        "query",
        "--vocab",
        "rain_wet.vocab.json",
        "--data",
        "rain_wet.csv",
        "--sem",
        "mu=9/10",
        "--given",
        "wet",
        "rain",
    ];
    let first = genlogic(&args);
    let second = genlogic(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(stdout_json(&first)["p"], "137/250");
}

#[test]
fn json_flag_prints_one_compact_line() {
    let out = genlogic(&[
        "marginal",
        "--json",
        "--vocab",
        "rain_wet.vocab.json",
        "--data",
        "rain_wet.csv",
        "rain",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.trim().lines().count(), 1);
    assert_eq!(stdout_json(&out)["p"], "2/5");
}
