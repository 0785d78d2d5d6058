use std::process::{Command, Output};

use serde_json::Value;
use wallsun_core::lucas::LucasParams;
use wallsun_core::wss::{search_wss, WssCertificate};

fn wallsun(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallsun"))
        .args(args)
        .env_remove("WALLSUN_JOBS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = wallsun(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn reference_table_all_rows_pass() {
    let out = wallsun(&["table1"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("PASS").count(), 8);
    assert!(text.contains("passed: 8/8"));
    let v = json(&["table1"]);
    assert_eq!(v["results"]["passed"], 8);
    let row = v["results"]["rows"].as_array().unwrap().iter().find(|r| r["a"] == 27).unwrap();
    assert_eq!(row["computed"], "[13,84]");
    let row = v["results"]["rows"].as_array().unwrap().iter().find(|r| r["a"] == 25).unwrap();
    assert_eq!(row["computed"], "[5,8]");
}

#[test]
fn wss_search_rows() {
    let v = json(&["wss", "search", "--a", "2", "--b", "1", "--pmax", "100"]);
    let hits: Vec<(u64, u64)> = v["results"]["hits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| (h["p"].as_u64().unwrap(), h["pi_p2"].as_u64().unwrap()))
        .collect();
    assert_eq!(hits, vec![(13, 28), (31, 30)]);

    let v = json(&["wss", "search", "--a", "1", "--b", "1", "--pmax", "100000"]);
    assert_eq!(v["results"]["count"], 0);
}

#[test]
fn period_example() {
    let v = json(&["period", "--a", "5", "--b", "2", "--m", "49"]);
    assert_eq!(v["results"]["pi"], 336);
    // composite modulus goes through the general path
    let v = json(&["period", "--a", "1", "--b", "1", "--m", "10"]);
    assert_eq!(v["results"]["pi"], 60);
}

#[test]
fn mono_check_examples() {
    let v = json(&["mono", "check", "--a", "2", "--b", "1", "--s", "13", "--n", "1"]);
    let r = &v["results"];
    assert_eq!(r["monogenic"], false);
    assert_eq!(r["agreement"], true);
    let failing: Vec<u64> = r["prime_verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["index_coprime"] == false)
        .map(|p| p["p"].as_u64().unwrap())
        .collect();
    assert_eq!(failing, vec![13]);

    let v = json(&["mono", "check", "--a", "1", "--b", "1", "--s", "2", "--n", "2"]);
    assert_eq!(v["results"]["monogenic"], true);
    assert_eq!(v["results"]["agreement"], true);
    assert_eq!(v["results"]["degree"], 8);
}

#[test]
fn trinomial_accepts_negative_coefficients() {
    let v = json(&["mono", "trinomial", "--N", "4", "--M", "2", "--A", "-1", "--B", "-1"]);
    assert_eq!(v["results"]["discriminant"], "-400");
    assert_eq!(v["results"]["monogenic"], true);
    assert_eq!(v["results"]["polynomial"], "x^4 - x^2 - 1");
    // x^2 - 5 is not monogenic: the index is divisible by 2
    let v = json(&["mono", "trinomial", "--N", "2", "--M", "1", "--A", "0", "--B", "-5"]);
    assert_eq!(v["results"]["monogenic"], false);
}

#[test]
fn cross_validate_agrees() {
    let v = json(&["cross-validate", "--a", "1", "--b", "1", "--s", "3", "--n-max", "2"]);
    assert_eq!(v["results"]["agree"], true);
    assert_eq!(v["results"]["n_independent"], true);
    let v = json(&["cross-validate", "--a", "2", "--b", "1", "--s", "31", "--n-max", "1"]);
    assert_eq!(v["results"]["outside_hypotheses"], true);
    assert_eq!(v["results"]["agree"], Value::Null);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&wallsun(&["wss", "search", "--a", "2", "--b", "0", "--pmax", "10"])), 2);
    assert_eq!(code(&wallsun(&["period", "--a", "1", "--b", "1"])), 2);
    assert_eq!(code(&wallsun(&["period", "--a", "1", "--b", "2", "--m", "4"])), 2);
    assert_eq!(code(&wallsun(&["table1", "--format", "yaml"])), 2);
    assert_eq!(code(&wallsun(&["frobnicate"])), 2);
    assert_eq!(code(&wallsun(&["mono", "check", "--a", "4", "--b", "1", "--s", "2", "--n", "1"])), 2);
    assert_eq!(code(&wallsun(&["mono", "check", "--a", "1", "--b", "1", "--s", "2", "--n", "13"])), 2);
    assert_eq!(code(&wallsun(&["mono", "trinomial", "--N", "3", "--M", "3", "--A", "1", "--B", "1"])), 2);
    // discriminant with a composite cofactor far beyond the factoring budget
    let big = wallsun(&["mono", "trinomial", "--N", "49", "--M", "1", "--A", "999999999999999989", "--B", "999999999999999967"]);
    assert_eq!(code(&big), 3);
    assert!(String::from_utf8_lossy(&big.stderr).contains("incomplete"));
    assert_eq!(code(&wallsun(&["table1"])), 0);
}

#[test]
fn json_is_byte_identical() {
    let args = ["wss", "search", "--a", "23", "--b", "11", "--pmax", "5000", "--format", "json"];
    let first = wallsun(&args).stdout;
    assert_eq!(wallsun(&args).stdout, first);
    for jobs in ["1", "3", "8"] {
        let mut with_jobs = args.to_vec();
        with_jobs.extend(["--jobs", jobs]);
        assert_eq!(wallsun(&with_jobs).stdout, first, "jobs = {jobs}");
    }
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["wss", "search", "--a", "2", "--b", "1", "--pmax", "100"],
        vec!["mono", "check", "--a", "3", "--b", "3", "--s", "2", "--n", "1"],
        vec!["cross-validate", "--a", "1", "--b", "1", "--s", "2", "--n-max", "2"],
        vec!["period", "--a", "3", "--b", "7", "--m", "121"],
        vec!["table1"],
    ] {
        let mut full = args.clone();
        full.extend(["--format", "json"]);
        let text = String::from_utf8(wallsun(&full).stdout).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["timing_ms"], 0.0);
        assert_eq!(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), text, "{args:?}");
    }
    // typed payloads survive the trip
    let v = json(&["wss", "search", "--a", "23", "--b", "11", "--pmax", "100"]);
    let hits: Vec<WssCertificate> = serde_json::from_value(v["results"]["hits"].clone()).unwrap();
    assert_eq!(hits, search_wss(&LucasParams::new(23, 11).unwrap(), 100).unwrap());
}

#[test]
fn csv_header_matches_json_fields() {
    let out = wallsun(&["wss", "search", "--a", "2", "--b", "1", "--pmax", "100", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let v = json(&["wss", "search", "--a", "2", "--b", "1", "--pmax", "100"]);
    let first = v["results"]["hits"][0].as_object().unwrap();
    for h in &header {
        assert!(first.contains_key(*h), "column {h}");
    }
    assert_eq!(lines.next().unwrap().split(',').next(), Some("13"));
    assert_eq!(lines.count(), 1);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = std::env::temp_dir().join(format!("wallsun-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.toml");
    std::fs::write(&path, "a = 2\nb = 1\npmax = 100\nformat = \"json\"\n").unwrap();
    let p = path.to_str().unwrap();

    let out = wallsun(&["wss", "search", "--config", p]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["count"], 2);

    // flags override the file
    let out = wallsun(&["wss", "search", "--config", p, "--pmax", "12", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["inputs"]["pmax"], 12);
    assert_eq!(v["results"]["count"], 0);

    std::fs::write(&path, "a = \"two\"\n").unwrap();
    assert_eq!(code(&wallsun(&["wss", "search", "--config", p, "--b", "1", "--pmax", "10"])), 2);
    assert_eq!(code(&wallsun(&["table1", "--config", "/nonexistent/run.toml"])), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn timing_only_on_request() {
    let v = json(&["period", "--a", "1", "--b", "1", "--m", "1000", "--timing"]);
    assert!(v["timing_ms"].as_f64().unwrap() > 0.0);
}
