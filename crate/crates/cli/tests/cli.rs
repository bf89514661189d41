use std::fs;
use std::process::{Command, Output};

fn sheafcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sheafcalc"))
        .args(args)
        .env_remove("SHEAFCALC_DEPTH")
        .env_remove("SHEAFCALC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    sheafcalc(args).status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(code(&["classify", "3,2"]), 2);
    assert_eq!(code(&["classify", "0,1,0"]), 2);
    assert_eq!(code(&["curve", "--from", "0", "--to", "1", "--step", "0"]), 2);
    assert_eq!(code(&["curve", "--from", "1", "--to", "0", "--step", "1/2"]), 2);
    assert_eq!(code(&["verify", "--suite", "nope"]), 2);
    assert_eq!(code(&["extremal", "3,2,-2", "--variant", "other"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
}

#[test]
fn math_preconditions_exit_4() {
    assert_eq!(code(&["bn", "2,1,1/2", "--sections", "1"]), 4);
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("curve.csv");
    assert_eq!(
        code(&[
            "curve",
            "--from",
            "0",
            "--to",
            "1",
            "--step",
            "1/2",
            "--out",
            out.to_str().unwrap()
        ]),
        3
    );
}

#[test]
fn shallow_regions_run_fails_with_1() {
    let out = sheafcalc(&["verify", "--suite", "regions", "--depth", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("# overall depth=2: FAIL"));
}

#[test]
fn classify_reports_invariants() {
    let out = sheafcalc(&["classify", "3,2,-1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# classify depth=10"));
    assert!(text.contains("kind=stable"));
    assert!(text.contains("mu=2/3") && text.contains("delta=5/9") && text.contains("dim_m=2"));
}

#[test]
fn depth_is_read_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_sheafcalc"))
        .args(["classify", "3,2,-1"])
        .env("SHEAFCALC_DEPTH", "7")
        .output()
        .unwrap();
    assert!(stdout(&out).starts_with("# classify depth=7"));
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = sheafcalc(&["--cache-dir", d, "classify", "3,2,-1"]);
    assert!(first.status.success());
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let second = sheafcalc(&["--cache-dir", d, "classify", "3,2,-1"]);
    assert_eq!(first.stdout, second.stdout);

    let mut text = fs::read_to_string(&files[0]).unwrap();
    text.push_str("garbage\n");
    fs::write(&files[0], text).unwrap();
    assert_eq!(code(&["--cache-dir", d, "classify", "3,2,-1"]), 3);
}

#[test]
fn curve_to_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let args = ["curve", "--from", "-1", "--to", "1", "--step", "1/8"];
    let direct = sheafcalc(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert!(sheafcalc(&with_out).status.success());
    assert_eq!(fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn extremal_prints_growth_comparison() {
    for variant in ["paper", "ch"] {
        let out = sheafcalc(&["extremal", "3,2,-2", "--variant", variant]);
        assert!(out.status.success());
        assert!(stdout(&out).contains("z2_k_coeff=4 > z1_k_coeff=3"), "{variant}");
    }
}

#[test]
fn verify_json_is_well_formed() {
    let out = sheafcalc(&["verify", "--suite", "rank2", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v[0]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "PASS"));
}
