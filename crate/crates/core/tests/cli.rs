use qchan::channel::{catalog, CATALOG};
use qchan::cli::{load_spec, ChannelSpec, Rep};
use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};

fn qchan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qchan")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn spec_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid JSON")
}

fn h(r: f64) -> f64 {
    let (p, q) = ((1.0 + r) / 2.0, (1.0 - r) / 2.0);
    -(p * p.ln() + q * q.ln())
}

#[test]
fn cp_check_transpose_names_inequality() {
    let f = spec_file(r#"{"name": "transpose", "rep": {"diagonal": {"lambda": [1, -1, 1], "t": [0, 0, 0]}}}"#);
    let o = qchan(&["cp-check", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("violated: l1-l2<=1-l3"));
}

#[test]
fn cp_check_fuchs_is_boundary() {
    let o = qchan(&["cp-check", "@fuchs"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("boundary: true"));
    let o = qchan(&["cp-check", "--json", "@fuchs"]);
    let v = json(&o);
    assert_eq!(v["cp"], true);
    assert_eq!(v["boundary"], true);
    assert_eq!(v["test"], "nonunital-special");
}

#[test]
fn cp_check_kraus_and_affine_specs() {
    let s = 0.5f64.sqrt();
    let kraus = format!(
        r#"{{"name": "k", "rep": {{"kraus": [[[[1, 0], [0, 0]], [[0, 0], [{s}, 0]]], [[[0, 0], [0, 0]], [[{s}, 0], [0, 0]]]]}}}}"#
    );
    let f = spec_file(&kraus);
    let o = qchan(&["cp-check", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let f = spec_file(r#"{"name": "a", "rep": {"affine": {"t": [0, 0, 0], "T": [[0, -1, 0], [1, 0, 0], [0, 0, 1]]}}}"#);
    let o = qchan(&["cp-check", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("test: choi"));
}

#[test]
fn malformed_input_exits_one() {
    let f = spec_file("this is not a channel");
    let o = qchan(&["cp-check", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let f = spec_file(r#"{"name": "x", "rep": {"diagonal": {"lambda": [1, 1, 1]}}}"#);
    let o = qchan(&["cp-check", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("`t`"), "{}", stderr(&o));
    let f = spec_file(r#"{"name": "x", "rep": {"diagonal": {"lambda": [1, 1, 1], "t": [0, 0, 0]}, "affine": {"t": [0, 0, 0], "T": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}}}"#);
    assert_eq!(qchan(&["cp-check", f.path().to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(qchan(&["cp-check", "/nonexistent/spec.json"]).status.code(), Some(1));
    assert_eq!(qchan(&["cp-check", "@no-such-channel"]).status.code(), Some(1));
    assert_eq!(qchan(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn analyze_depolarizing_quarter() {
    let o = qchan(&["analyze", "--json", "@depolarizing:0.25"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    for l in v["lambda"].as_array().unwrap() {
        assert!((l.as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);
    }
    let hm = h(2.0 / 3.0);
    assert!((v["min_output_entropy"].as_f64().unwrap() - hm).abs() < 1e-12);
    assert!((v["holevo_capacity"].as_f64().unwrap() - (std::f64::consts::LN_2 - hm)).abs() < 1e-12);
    assert_eq!(v["min_entropy_set"]["kind"], "sphere");

    let b = json(&qchan(&["analyze", "--json", "--bits", "@depolarizing:0.25"]));
    let ratio = b["min_output_entropy"].as_f64().unwrap() / v["min_output_entropy"].as_f64().unwrap();
    assert!((ratio - 1.0 / std::f64::consts::LN_2).abs() < 1e-12);
    assert_eq!(b["max_norm"], v["max_norm"]);
}

#[test]
fn analyze_fuchs_and_identity() {
    let v = json(&qchan(&["analyze", "--json", "@fuchs"]));
    assert!((v["min_output_entropy"].as_f64().unwrap() - h(0.5f64.sqrt())).abs() < 1e-9);
    let fp: Vec<f64> = v["fixed_point"]["point"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!(fp[0].abs() < 1e-12 && fp[1].abs() < 1e-12 && (fp[2] - 0.5).abs() < 1e-12);
    assert!(v["min_entropy_set"].is_null());

    let f = spec_file(r#"{"name": "id", "rep": {"diagonal": {"lambda": [1, 1, 1], "t": [0, 0, 0]}}}"#);
    let o = qchan(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("min output entropy: 0 nats"), "{text}");
    assert!(text.contains(&format!("holevo capacity: {} nats", std::f64::consts::LN_2)), "{text}");
}

#[test]
fn analyze_rejects_non_cp() {
    let f = spec_file(r#"{"name": "transpose", "rep": {"diagonal": {"lambda": [1, -1, 1], "t": [0, 0, 0]}}}"#);
    let path = f.path().to_str().unwrap();
    assert_eq!(qchan(&["analyze", path]).status.code(), Some(2));
    assert_eq!(qchan(&["analyze", "@two-pauli:1.5"]).status.code(), Some(2));
}

#[test]
fn curve_csv_format() {
    let o = qchan(&["curve", "--family", "phi-eq-omega", "--case", "uv=+mu2", "--mu-min", "0", "--mu-max", "0.3333333333333333", "--steps", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("mu,delta"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 100);
    for r in &rows {
        let cols: Vec<&str> = r.split(',').collect();
        assert_eq!(cols.len(), 2);
        for c in cols {
            let mantissa = c.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{c}");
            assert!(c.parse::<f64>().is_ok());
        }
        assert!(r.split(',').nth(1).unwrap().parse::<f64>().unwrap() >= -1e-9);
    }
    assert!(text.ends_with('\n'));
}

#[test]
fn curve_branch_mismatch_and_outputs() {
    let o = qchan(&["curve", "--family", "phi-eq-omega", "--case", "uv=-mu2", "--mu-min", "0.5", "--mu-max", "0.9"]);
    assert_eq!(o.status.code(), Some(1));
    let o = qchan(&["curve", "--family", "phi-eq-omega", "--case", "bogus"]);
    assert_eq!(o.status.code(), Some(1));

    let a = qchan(&["curve", "--family", "phi-eq-omega", "--case", "uv=(2mu-1)2", "--steps", "20"]);
    let b = qchan(&["curve", "--family", "phi-neq-omega", "--case", "2mu-1:2mu-1", "--steps", "20"]);
    assert_eq!(stdout(&a), stdout(&b));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let o = qchan(&[
        "curve", "--family", "phi-neq-omega", "--case", "2mu-1", "--nu-min", "0.3333333333333333", "--steps", "5",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("mu,nu,delta\n"));
    assert_eq!(csv.lines().count(), 26);
}

#[test]
fn scan_exit_codes() {
    let o = qchan(&["scan", "additivity", "@two-pauli:0.5", "@two-pauli:0.5", "--samples", "10000", "--seed", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert!(v["gap"].as_f64().unwrap() >= -1e-7);
    assert_eq!(v["best_state"].as_array().unwrap().len(), 4);

    let o = qchan(&["scan", "norm", "@depolarizing:0.3", "@phase-damping:0.6", "--samples", "2000", "--workers", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("violation: false"));

    let o = qchan(&["scan", "additivity", "@fuchs", "@fuchs", "--samples", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["samples"], 0);
    let (best, base) = (v["best_value"].as_f64().unwrap(), v["product_baseline"].as_f64().unwrap());
    assert!((best - base).abs() < 1e-12 && v["gap"].as_f64().unwrap().abs() < 1e-12);

    assert_eq!(qchan(&["scan", "norm", "@two-pauli:1.5", "@fuchs"]).status.code(), Some(2));
    assert_eq!(qchan(&["scan", "norm", "@fuchs", "missing.json"]).status.code(), Some(1));
}

#[test]
fn scan_tolerance_override() {
    let run = |tol: &str| {
        Command::new(env!("CARGO_BIN_EXE_qchan"))
            .args(["scan", "additivity", "@depolarizing:0.1", "@depolarizing:0.1", "--samples", "500", "--json"])
            .env("QCHAN_TOL", tol)
            .output()
            .unwrap()
    };
    let o = run("1e-7");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["tolerance"], 1e-7);
    // A negative tolerance demands a margin no result can meet.
    let o = run("-1");
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["violation"], true);
    assert_eq!(run("abc").status.code(), Some(1));
}

#[test]
fn scans_are_reproducible() {
    let args = ["scan", "additivity", "@two-pauli:0.3", "@amplitude-damping:0.2", "--samples", "3000", "--seed", "42", "--workers", "3", "--json"];
    assert_eq!(stdout(&qchan(&args)), stdout(&qchan(&args)));
}

#[test]
fn catalog_listing() {
    let o = qchan(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("two-pauli"));
    assert!(text.contains("\u{3a6}[x, x, 2x\u{2212}1]"));
    assert!(text.contains("equality in (\u{3bb}\u{2081}\u{b1}\u{3bb}\u{2082})\u{b2} \u{2264} (1\u{b1}\u{3bb}\u{2083})\u{b2} \u{2212} t\u{b2}"));
    let v = json(&qchan(&["catalog", "--json"]));
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(stdout(&qchan(&["catalog"])), text);
}

#[test]
fn spec_round_trip_is_exact() {
    let params: &[(&str, &[f64])] = &[
        ("amplitude-damping", &[0.37]),
        ("depolarizing", &[0.1]),
        ("fuchs", &[]),
        ("phase-damping", &[0.3]),
        ("rotation", &[0.7, 1.0, 2.0, 3.0]),
        ("splaying-family", &[0.2, 0.1, 0.3]),
        ("two-pauli", &[0.6]),
    ];
    assert_eq!(params.len(), CATALOG.len());
    for (name, p) in params {
        let spec = ChannelSpec::from_catalog(name, p).unwrap();
        let back: ChannelSpec = serde_json::from_str(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
        let phi = back.to_channel(false).unwrap();
        let orig = catalog(name, p).unwrap();
        assert_eq!(phi.t(), orig.t());
        assert_eq!(phi.matrix(), orig.matrix());
    }
    let spec = load_spec("@rotation:0.7,1,2,3").unwrap();
    assert!(matches!(spec.rep, Rep::Affine { .. }));
}
