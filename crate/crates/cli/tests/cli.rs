use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn aperiodic(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aperiodic"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("APERIODIC_OUT_DIR")
        .output()
        .unwrap()
}

fn manifest(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

fn read_all(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn generate_fibonacci_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let out = aperiodic(dir.path(), &["generate", "--system", "fibonacci", "--N", "5"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "abaab");
    let csv = std::fs::read_to_string(dir.path().join("window.csv")).unwrap();
    assert!(csv.starts_with("index,symbol,spin\n0,a,1\n1,b,-1\n"));
}

#[test]
fn unknown_system_lists_valid_names() {
    let dir = tempfile::tempdir().unwrap();
    let out = aperiodic(dir.path(), &["generate", "--system", "penrose"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("thue-morse") && err.contains("paperfolding"), "{err}");
}

#[test]
fn unknown_observable_lists_valid_names() {
    let dir = tempfile::tempdir().unwrap();
    let out = aperiodic(
        dir.path(),
        &["eigenvalue", "--system", "thue-morse", "--N", "4096", "--observable", "energy"],
    );
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("dimer-start"), "{err}");
}

#[test]
fn stochastic_runs_need_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["generate", "--system", "iid", "--N", "8"][..],
        &["overlap", "--system", "fibonacci", "--N", "64", "--M", "10"][..],
        &["gibbs", "--L", "4", "--sweeps", "20", "--burn-in", "0", "--distances", "1"][..],
    ] {
        let out = aperiodic(dir.path(), args);
        assert!(!out.status.success(), "{args:?}");
        assert!(String::from_utf8(out.stderr).unwrap().contains("--seed"));
    }
}

#[test]
fn identical_configs_give_identical_bytes() {
    let runs: [&[&str]; 4] = [
        &["overlap", "--system", "dimer", "--N", "256", "--M", "200", "--triples", "50", "--seed", "7"],
        &["gibbs", "--dimension", "1", "--L", "32", "--beta", "0.5", "--boundary", "free", "--sweeps", "400",
          "--burn-in", "50", "--distances", "1,2,3", "--seed", "3"],
        &["diffract", "--system", "rudin-shapiro", "--N", "16384", "--top", "4"],
        &["complexity", "--system", "iid", "--N", "20000", "--n-max", "6", "--seed", "1"],
    ];
    for args in runs {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        assert!(aperiodic(a.path(), args).status.success(), "{args:?}");
        assert!(aperiodic(b.path(), args).status.success());
        assert_eq!(read_all(a.path()), read_all(b.path()), "{args:?}");
    }
}

#[test]
fn replay_reproduces_outputs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["autocorr", "--system", "dimer", "--N", "4096", "--max-lag", "8", "--seed", "5", "--parity", "odd"];
    assert!(aperiodic(a.path(), &args).status.success());
    let m = a.path().join("manifest.json");
    assert!(aperiodic(b.path(), &["replay", m.to_str().unwrap()]).status.success());
    assert_eq!(read_all(a.path()), read_all(b.path()));
}

#[test]
fn manifests_validate_and_reference_every_output() {
    let schema: Value = serde_json::from_str(include_str!("../schema/manifest.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let runs: [&[&str]; 3] = [
        &["eigenvalue", "--system", "thue-morse", "--N", "65536", "--observable", "period-doubling-factor"],
        &["gibbs", "--L", "8", "--sweeps", "200", "--burn-in", "20", "--distances", "2,4", "--seed", "9"],
        &["generate", "--system", "sturmian", "--alpha", "0,1,2,2", "--N", "32"],
    ];
    for args in runs {
        let dir = tempfile::tempdir().unwrap();
        assert!(aperiodic(dir.path(), args).status.success(), "{args:?}");
        let m = manifest(dir.path());
        let errors: Vec<String> = validator.iter_errors(&m).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{errors:?}");
        let mut listed: Vec<String> = m["outputs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|o| o["file"].as_str().unwrap().to_string())
            .collect();
        listed.sort();
        let mut present: Vec<String> = read_all(dir.path())
            .into_iter()
            .map(|(n, _)| n)
            .filter(|n| n != "manifest.json")
            .collect();
        present.sort();
        assert_eq!(listed, present);
    }
}

#[test]
fn schema_rejects_malformed_manifests() {
    let schema: Value = serde_json::from_str(include_str!("../schema/manifest.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let bad = serde_json::json!({
        "schema_version": 1, "tool": "aperiodic", "tool_version": "0.1.0",
        "config": {"command": "generate"}, "resolved": {},
        "outputs": [{"file": "a.csv", "sha256": "xyz", "bytes": 3}]
    });
    assert!(!validator.is_valid(&bad));
}

#[test]
fn thue_morse_period_doubling_factor_keeps_its_eigenvalue() {
    let dir = tempfile::tempdir().unwrap();
    let out = aperiodic(
        dir.path(),
        &["eigenvalue", "--system", "thue-morse", "--N", "262144", "--observable", "period-doubling-factor"],
    );
    assert!(out.status.success());
    let rows: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("eigenvalue.json")).unwrap()).unwrap();
    for r in rows.as_array().unwrap() {
        assert!(r["modulus"].as_f64().unwrap() >= 0.1, "{r}");
    }
}
