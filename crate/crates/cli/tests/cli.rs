use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use triple_defect_cli::{run, JobSpec, Mode, Report, RunConfig};
use triple_defect_core::catalog::ten_point_sextic_f67;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triple-defect"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(cmd: &str, job: &str, extra: &[&str]) -> (i32, Value) {
    let path = fixture(job);
    let mut args = vec![cmd, "--input", path.to_str().unwrap(), "--json", "-"];
    args.extend_from_slice(extra);
    let out = bin(&args);
    let code = out.status.code().unwrap();
    let value = if code == 0 {
        serde_json::from_slice(&out.stdout).expect("json on stdout")
    } else {
        Value::Null
    };
    (code, value)
}

#[test]
fn sextic_fixture_matches_the_construction() {
    let job =
        JobSpec::parse(&std::fs::read_to_string(fixture("ten_point_sextic.job")).unwrap()).unwrap();
    let (_, g) = job.build(4).unwrap();
    assert_eq!(g, ten_point_sextic_f67());
}

#[test]
fn report_has_exactly_the_documented_fields() {
    let (code, v) = json_of("analyze", "quartic_triple.job", &[]);
    assert_eq!(code, 0);
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    keys.sort();
    let mut expected = vec![
        "degree",
        "weights",
        "field",
        "mu",
        "points",
        "certificates_ok",
        "defect_degree",
        "dim_S_D",
        "dim_Ieq",
        "delta",
        "h11",
        "h12",
        "h03",
        "h12_smooth",
        "euler",
        "q_factorial",
        "completeness_certified",
        "method",
    ];
    expected.sort();
    assert_eq!(keys, expected);
    assert_eq!(v["points"], serde_json::json!([[1, 0, 0, 0, 0]]));
    assert_eq!(v["field"], "Fp:7");
    assert_eq!(v["completeness_certified"], false);
}

#[test]
fn report_round_trips() {
    for (cmd, job) in [
        ("analyze", "quartic_scan.job"),
        ("triple-cover", "ten_point_sextic.job"),
    ] {
        let (code, v) = json_of(cmd, job, &[]);
        assert_eq!(code, 0, "{cmd} {job}");
        let r: Report = serde_json::from_value(v.clone()).unwrap();
        let mu = r.mu as i64;
        assert_eq!(r.h11, 1 + mu + r.delta);
        assert_eq!(r.h12, r.h12_smooth - 11 * mu + r.delta);
        assert_eq!(serde_json::to_value(&r).unwrap(), v);
    }
}

#[test]
fn table_and_json_agree() {
    let path = fixture("quartic_scan.job");
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("r.json");
    let out = bin(&[
        "analyze",
        "--input",
        path.to_str().unwrap(),
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let table = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    for key in [
        "mu",
        "delta",
        "h11",
        "h12",
        "h03",
        "euler",
        "dim_Ieq",
        "dim_S_D",
        "q_factorial",
    ] {
        let line = table
            .lines()
            .find(|l| l.split_whitespace().next() == Some(key))
            .unwrap();
        assert_eq!(
            line.split_whitespace().nth(1).unwrap(),
            v[key].to_string(),
            "{key}"
        );
    }
}

#[test]
fn fermat_quintic() {
    let (code, v) = json_of("analyze", "fermat_quintic.job", &[]);
    assert_eq!(code, 0);
    assert_eq!(
        (v["mu"].as_i64(), v["h11"].as_i64(), v["h12"].as_i64()),
        (Some(0), Some(1), Some(101))
    );
    assert_eq!(v["euler"], -200);
    assert_eq!(v["q_factorial"], true);
    assert_eq!(v["completeness_certified"], true);
    let (code, v) = json_of("find-singular", "fermat_quintic.job", &[]);
    assert_eq!((code, v), (0, serde_json::json!([])));
}

#[test]
fn find_singular_on_the_quartic() {
    let (code, v) = json_of("find-singular", "quartic_scan.job", &["--threads", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!([[1, 0, 0, 0, 0]]));
}

#[test]
fn verify_and_defect() {
    let (code, v) = json_of("verify", "quartic_triple.job", &["--kmax", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v[0]["cone_saturation_degree"], 5);
    assert_eq!(v[0]["partials_rank"], 4);
    let (code, v) = json_of("defect", "quartic_triple.job", &["--cross-validate"]);
    assert_eq!(code, 0);
    assert_eq!(
        (
            v["dim_S_D"].as_i64(),
            v["dim_Ieq"].as_i64(),
            v["delta"].as_i64()
        ),
        (Some(35), Some(24), Some(0))
    );
    assert_eq!(v["method"], "both_agree");
}

#[test]
fn fermat_sextic_cover() {
    let (code, v) = json_of("triple-cover", "fermat_sextic_cover.job", &[]);
    assert_eq!(code, 0);
    assert_eq!(
        (v["mu"].as_i64(), v["h12"].as_i64(), v["h11"].as_i64()),
        (Some(0), Some(103), Some(1))
    );
    assert_eq!(v["weights"], serde_json::json!([1, 1, 1, 1, 2]));
}

#[test]
fn rational_quartic_with_listed_point() {
    let (code, v) = json_of("analyze", "quartic_q.job", &["--cross-validate"]);
    assert_eq!(code, 0);
    assert_eq!(
        (v["delta"].as_i64(), v["h12"].as_i64()),
        (Some(0), Some(19))
    );
    assert_eq!(v["field"], "Q");
    assert_eq!(v["completeness_certified"], false);
    assert_eq!(json_of("find-singular", "quartic_q.job", &[]).0, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(json_of("verify", "node.job", &[]).0, 1);
    assert_eq!(json_of("analyze", "cone_singular.job", &[]).0, 1);
    assert_eq!(json_of("analyze", "bad_syntax.job", &[]).0, 2);
    assert_eq!(json_of("triple-cover", "quartic_cover.job", &[]).0, 2);
    assert_eq!(json_of("analyze", "missing.job", &[]).0, 2);
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    let out = bin(&["verify", "--input", fixture("node.job").to_str().unwrap()]);
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("(1:0:0:0:0)"));
}

#[test]
fn dims_command() {
    for (w, k, expected) in [
        ("1,1,1,1,1", "7", "330"),
        ("1,1,1,1,2", "6", "130"),
        ("1,1,1,1,1", "-1", "0"),
    ] {
        let out = bin(&["dims", "--weights", w, "--degree", k]);
        assert!(out.status.success());
        assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), expected);
    }
    assert_eq!(
        bin(&["dims", "--weights", "1,0", "--degree", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn library_and_binary_agree_on_the_quartic() {
    let job =
        JobSpec::parse(&std::fs::read_to_string(fixture("quartic_scan.job")).unwrap()).unwrap();
    let lib = run(Mode::Analyze, job, &RunConfig::default())
        .unwrap()
        .to_json();
    let (_, bin) = json_of("analyze", "quartic_scan.job", &[]);
    assert_eq!(lib, bin);
}
