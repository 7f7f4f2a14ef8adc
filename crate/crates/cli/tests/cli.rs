use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cvgauss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvgauss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn sigma(v: &Value) -> Vec<Vec<f64>> {
    serde_json::from_value(v["sigma"].clone()).unwrap()
}

fn write_state(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut full = vec!["state"];
    full.extend_from_slice(args);
    let p = path.to_str().unwrap().to_string();
    full.extend_from_slice(&["--out", &p]);
    assert!(cvgauss(&full).status.success());
    p
}

fn value(o: &Output) -> f64 {
    json(o)["value_nats"].as_f64().unwrap()
}

#[test]
fn tmss_document_has_cosh_sinh_entries() {
    let v = json(&cvgauss(&["state", "--tmss", "1.0"]));
    let s = sigma(&v);
    assert_eq!(v["n_modes"], 2);
    assert_eq!(v["ordering"], "qpqp");
    assert!((s[0][0] - 2f64.cosh()).abs() < 1e-12);
    assert!((s[0][2] - 2f64.sinh()).abs() < 1e-12);
    assert!((s[1][3] + 2f64.sinh()).abs() < 1e-12);
}

#[test]
fn vacuum_is_identity() {
    let s = sigma(&json(&cvgauss(&["state", "--vacuum", "1"])));
    assert_eq!(s, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
}

#[test]
fn threemode_check_reports_pure() {
    let o = cvgauss(&["state", "--threemode", "2", "2", "2", "--check"]);
    assert!(o.status.success());
    let rep: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(rep["physical"], true);
    assert_eq!(rep["pure"], true);
}

#[test]
fn db_flag_converts_squeezing() {
    let a = sigma(&json(&cvgauss(&["state", "--tmss", "10", "--db"])));
    let r = 10f64.ln() / 2.0;
    assert!((a[0][0] - (2.0 * r).cosh()).abs() < 1e-12);
}

#[test]
fn circuit_builds_tmsv() {
    let dir = tempfile::tempdir().unwrap();
    let vac = write_state(dir.path(), "vac.json", &["--vacuum", "2"]);
    let circ = dir.path().join("c.json");
    let r = 0.8;
    fs::write(
        &circ,
        format!(
            r#"[{{"gate": "squeeze", "targets": [0], "params": {{"s": {r}, "theta": 0}}}},
               {{"gate": "squeeze", "targets": [1], "params": {{"s": {r}, "theta": {pi}}}}},
               {{"gate": "beamsplitter", "targets": [0, 1], "params": {{"tau": 0.5}}}}]"#,
            pi = std::f64::consts::PI
        ),
    )
    .unwrap();
    let got = sigma(&json(&cvgauss(&["circuit", &vac, circ.to_str().unwrap()])));
    let want = sigma(&json(&cvgauss(&["state", "--tmss", "0.8"])));
    for i in 0..4 {
        for j in 0..4 {
            assert!((got[i][j] - want[i][j]).abs() < 1e-9, "({i},{j})");
        }
    }
}

#[test]
fn empty_circuit_echoes_input() {
    let dir = tempfile::tempdir().unwrap();
    let st = write_state(dir.path(), "t.json", &["--tmss", "0.3"]);
    let circ = dir.path().join("c.json");
    fs::write(&circ, "[]").unwrap();
    let o = cvgauss(&["circuit", &st, circ.to_str().unwrap()]);
    assert_eq!(json(&o), serde_json::from_str::<Value>(&fs::read_to_string(&st).unwrap()).unwrap());
}

#[test]
fn heterodyne_on_tmsv_leaves_vacuum() {
    let dir = tempfile::tempdir().unwrap();
    let st = write_state(dir.path(), "t.json", &["--tmss", "1.2"]);
    let circ = dir.path().join("c.json");
    fs::write(&circ, r#"[{"measure": {"modes": [1], "seed": {"tag": "heterodyne"}}}]"#).unwrap();
    let v = json(&cvgauss(&["circuit", &st, circ.to_str().unwrap()]));
    assert_eq!(v["n_modes"], 1);
    let s = sigma(&v);
    assert!((s[0][0] - 1.0).abs() < 1e-12 && (s[1][1] - 1.0).abs() < 1e-12 && s[0][1].abs() < 1e-12);
}

#[test]
fn measures_on_tmsv() {
    let dir = tempfile::tempdir().unwrap();
    let st = write_state(dir.path(), "t.json", &["--tmss", "1.1513"]);
    let epr = value(&cvgauss(&["measure", &st, "--epr"]));
    assert!((0.0995..0.1005).contains(&epr));
    let e2 = value(&cvgauss(&["measure", &st, "--e2"]));
    let i2 = value(&cvgauss(&["measure", &st, "--mutual"]));
    assert!((e2 / i2 - 0.5).abs() < 1e-7);
    let rep = json(&cvgauss(&["measure", &st, "--j2", "--direction", "B|A"]));
    assert_eq!(rep["direction"], "B|A");
    assert!((rep["value_nats"].as_f64().unwrap() - e2).abs() < 1e-7);
    let bits = rep["value_bits"].as_f64().unwrap();
    assert!((bits - rep["value_nats"].as_f64().unwrap() / 2f64.ln()).abs() < 1e-12);
}

#[test]
fn discord_of_product_state_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let st = write_state(dir.path(), "p.json", &["--thermal", "0.5", "1.5"]);
    let d2 = value(&cvgauss(&["measure", &st, "--d2", "--direction", "A|B"]));
    assert!(d2.abs() < 1e-12);
}

#[test]
fn renyi_needs_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let st = write_state(dir.path(), "th.json", &["--thermal", "1"]);
    assert_eq!(cvgauss(&["measure", &st, "--renyi"]).status.code(), Some(2));
    let s2 = value(&cvgauss(&["measure", &st, "--renyi", "--alpha", "2"]));
    assert!((s2 - 3f64.ln()).abs() < 1e-12);
}

#[test]
fn arity_mismatch_fails() {
    let dir = tempfile::tempdir().unwrap();
    let st = write_state(dir.path(), "v.json", &["--vacuum", "1"]);
    let o = cvgauss(&["measure", &st, "--e2"]);
    assert!(!o.status.success());
    assert!(!o.stderr.is_empty());
}

#[test]
fn exit_codes() {
    assert_eq!(cvgauss(&["state"]).status.code(), Some(2));
    assert_eq!(cvgauss(&["state", "--vacuum", "1", "--tmss", "1"]).status.code(), Some(2));
    assert_eq!(cvgauss(&["state", "--threemode", "1", "1", "3"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"n_modes": 1, "ordering": "qpqp", "hbar_convention": "doubled", "d": [0, 0], "sigma": [[0.5, 0], [0, 0.5]]}"#,
    )
    .unwrap();
    assert_eq!(cvgauss(&["measure", bad.to_str().unwrap(), "--purity"]).status.code(), Some(3));
    let ok = cvgauss(&["measure", bad.to_str().unwrap(), "--renyi2", "--allow-unphysical"]);
    assert!(ok.status.success());
    assert_eq!(cvgauss(&["measure", "/nonexistent/state.json", "--purity"]).status.code(), Some(2));
}

#[test]
fn sweep_epr_column_is_exponential() {
    let o = cvgauss(&["sweep", "--param", "r", "--start", "0", "--stop", "2", "--steps", "21", "--measures", "epr"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,epr"));
    let mut n = 0;
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((v[1] - (-2.0 * v[0]).exp()).abs() < 1e-9);
        n += 1;
    }
    assert_eq!(n, 21);
}

#[test]
fn sweep_renyi_ordering() {
    let o = cvgauss(&[
        "sweep", "--param", "nbar", "--start", "0", "--stop", "5", "--steps", "11", "--measures",
        "renyi:0.5,renyi:1,renyi:2,renyi:50",
    ]);
    let text = stdout(&o);
    for line in text.lines().skip(2) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(v[1] > v[2] && v[2] > v[3] && v[3] > v[4], "{line}");
    }
}

#[test]
fn sweep_three_mode_grid_skips_unphysical_points() {
    let o = cvgauss(&[
        "sweep", "--param", "a1", "--param2", "a2", "--start", "1", "--stop", "5", "--steps", "9",
        "--start2", "1", "--stop2", "5", "--steps2", "9", "--fixed", "a3=3", "--measures", "residual",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert!(!rows.is_empty() && rows.len() < 81);
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped"));
    for line in rows {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(v[2] >= -1e-8);
    }
}

#[test]
fn sweep_rejects_bad_spec() {
    let o = cvgauss(&["sweep", "--param", "r", "--start", "1", "--stop", "0", "--steps", "5", "--measures", "epr"]);
    assert_eq!(o.status.code(), Some(2));
    let o = cvgauss(&["sweep", "--param", "r", "--start", "0", "--stop", "1", "--steps", "1", "--measures", "epr"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn wigner_csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let st = write_state(dir.path(), "v.json", &["--vacuum", "1"]);
    let out = dir.path().join("w.csv");
    let o = cvgauss(&["wigner", &st, "--points", "5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    let text = fs::read_to_string(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,p,w"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 25);
    let centre = &rows[12];
    assert!(centre[0] == 0.0 && centre[1] == 0.0);
    assert!((centre[2] - 1.0 / std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn check_suites_pass_and_print_seed() {
    let o = cvgauss(&["check", "ssa", "--draws", "200"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS ssa"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("seed 20240917 (default)"));
    let o = cvgauss(&["check", "pure-equalities", "--draws", "100", "--seed", "7", "--quiet"]);
    assert!(o.status.success() && o.stderr.is_empty());
    assert!(cvgauss(&["check", "closed-forms", "--draws", "50"]).status.success());
    assert_eq!(cvgauss(&["check", "nope"]).status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let a = cvgauss(&["check", "monogamy", "--draws", "30"]);
    let b = cvgauss(&["check", "monogamy", "--draws", "30"]);
    assert_eq!(a.stdout, b.stdout);
    let a = cvgauss(&["state", "--threemode", "2", "3", "4"]);
    let b = cvgauss(&["state", "--threemode", "2", "3", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn emitted_states_reparse_as_physical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["--squeezed", "0.5", "-1", "0.9", "0.3"],
        vec!["--coherent", "1", "2", "-0.5", "0"],
        vec!["--thermal", "0", "2"],
        vec!["--threemode", "2", "3", "4"],
    ] {
        let st = write_state(dir.path(), "s.json", &args);
        assert!(cvgauss(&["measure", &st, "--purity"]).status.success(), "{args:?}");
    }
}
