use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tropmirror"))
}

fn fan(name: &str) -> String {
    format!("{}/fans/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str], out: &Path) -> Output {
    bin().args(args).arg("--out").arg(out).output().unwrap()
}

#[test]
fn missing_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--input", "/nonexistent/fan.json"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot read"));
}

#[test]
fn malformed_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"rays": [[1, 0]], "max_cones": "#).unwrap();
    let o = run(&["subdivide", "--input", bad.to_str().unwrap()], &dir.path().join("o"));
    assert_eq!(o.status.code(), Some(1));
    // Rational that does not parse.
    std::fs::write(&bad, r#"{"rays": [[1], [-1]], "max_cones": [[0], [1]], "phi": ["1/0", "1"]}"#).unwrap();
    let o = run(&["subdivide", "--input", bad.to_str().unwrap()], &dir.path().join("o"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn incomplete_fan_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("half.json");
    std::fs::write(&bad, r#"{"rays": [[1, 0], [0, 1]], "max_cones": [[0, 1]], "phi": ["1", "1"]}"#).unwrap();
    for cmd in ["subdivide", "tropical", "verify"] {
        let o = run(&[cmd, "--input", bad.to_str().unwrap()], &dir.path().join("o"));
        assert_eq!(o.status.code(), Some(2), "{cmd}");
    }
}

#[test]
fn bad_parameters_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    for extra in [["--eps", "-1"], ["--s", "2"], ["--t", "0.5"], ["--window", "1,0,0,1"], ["--J", "0"]] {
        let mut args = vec!["amoeba", "--input"];
        let f = fan("p2.json");
        args.push(&f);
        args.extend(extra);
        let o = run(&args, dir.path());
        assert_eq!(o.status.code(), Some(1), "{extra:?}");
    }
    let o = bin().args(["verify", "--bogus"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn nonconvex_exits_2_naming_cones() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in ["subdivide", "tropical", "verify", "hilbert"] {
        let o = run(&[cmd, "--input", &fan("nonconvex.json")], dir.path());
        assert_eq!(o.status.code(), Some(2), "{cmd}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("cones"));
    }
}

#[test]
fn amoeba_needs_dimension_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["amoeba", "--input", &fan("p3.json")], dir.path());
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["amoeba", "--input", &fan("p1.json")], dir.path());
    assert_eq!(o.status.code(), Some(3));
    // The other commands accept n = 3.
    let o = run(&["hilbert", "--input", &fan("p3.json"), "--J", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("hilbert.csv")).unwrap();
    assert_eq!(csv, "j,count,interior\n0,1,0\n1,35,1\n2,165,35\n3,455,165\n");
}

#[test]
fn subdivide_p2() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["subdivide", "--input", &fan("p2.json")], dir.path());
    assert!(o.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("subdivision.json")).unwrap()).unwrap();
    assert_eq!(v["maximal"], true);
    assert_eq!(v["triangulation"], true);
    assert_eq!(v["convexity"], "strict");
    assert_eq!(v["subdivision"]["cells"].as_array().unwrap().len(), 3);
}

#[test]
fn tropical_writes_constants() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["tropical", "--input", &fan("p2.json")], dir.path());
    assert!(o.status.success());
    let k: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("constants.json")).unwrap()).unwrap();
    assert_eq!(k["constants"]["n"], 3);
    let log_t = k["log_t_min"].as_f64().unwrap();
    assert!((log_t - 377.06).abs() < 0.01, "{log_t}");
    assert!(dir.path().join("tropical.json").exists());
}

#[test]
fn hilbert_p1() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["hilbert", "--input", &fan("p1.json"), "--J", "3"], dir.path());
    assert!(o.status.success());
    let csv = std::fs::read_to_string(dir.path().join("hilbert.csv")).unwrap();
    assert_eq!(csv, "j,count,interior\n0,1,0\n1,3,1\n2,5,3\n3,7,5\n");
}

#[test]
fn verify_reports_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--input", &fan("p1xp1.json"), "--J", "3"], dir.path());
    assert!(o.status.success());
    for f in ["tables.json", "bases.json", "isomorphism.json", "serre.json", "verify.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["dims"], serde_json::json!([1, 9, 25, 49]));
    let bases: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("bases.json")).unwrap()).unwrap();
    // Rationals travel as strings.
    assert_eq!(bases[2]["points"][0], serde_json::json!(["-1", "-1"]));
    assert!(bases[2]["points"].as_array().unwrap().iter().any(|p| p[0] == "-1/2"));
}

fn amoeba_args(out: &Path) -> Output {
    bin()
        .args(["amoeba", "--input", &fan("p2.json"), "--t", "e^4", "--grid", "40", "--args", "8", "--seed", "3"])
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

#[test]
fn amoeba_outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(amoeba_args(a.path()).status.success());
    let o = bin()
        .env("TROPMIRROR_THREADS", "1")
        .args(["amoeba", "--input", &fan("p2.json"), "--t", "e^4", "--grid", "40", "--args", "8", "--seed", "3"])
        .arg("--out")
        .arg(b.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    let mut names: Vec<String> = std::fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    for f in [
        "amoeba.json",
        "amoeba.svg",
        "cloud.csv",
        "cloud.json",
        "hausdorff.json",
        "margins.csv",
        "witnesses.json",
    ] {
        assert!(names.iter().any(|n| n == f), "missing {f}");
    }
    for n in &names {
        assert_eq!(
            std::fs::read(a.path().join(n)).unwrap(),
            std::fs::read(b.path().join(n)).unwrap(),
            "{n} differs between runs"
        );
    }
    let cloud = std::fs::read_to_string(a.path().join("cloud.csv")).unwrap();
    assert!(cloud.starts_with("u1,u2,residual,t,s,log_t\n"));
}

#[test]
fn verify_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        assert!(run(&["verify", "--input", &fan("f1.json"), "--J", "3"], d.path()).status.success());
    }
    for n in ["tables.json", "bases.json", "isomorphism.json", "serre.json", "verify.json"] {
        assert_eq!(std::fs::read(a.path().join(n)).unwrap(), std::fs::read(b.path().join(n)).unwrap());
    }
}

#[test]
fn svg_overlay() {
    let dir = tempfile::tempdir().unwrap();
    assert!(amoeba_args(dir.path()).status.success());
    let svg = std::fs::read_to_string(dir.path().join("amoeba.svg")).unwrap();
    assert!(svg.contains(r#"width="800" height="800""#));
    let start = svg.find("<metadata>").unwrap() + "<metadata>".len();
    let end = svg.find("</metadata>").unwrap();
    let meta: serde_json::Value = serde_json::from_str(&svg[start..end]).unwrap();
    let x = meta["world_to_viewport"]["x"].as_array().unwrap();
    let y = meta["world_to_viewport"]["y"].as_array().unwrap();
    // [-3,3]^2 onto 800x800 with y flipped.
    assert!((x[0].as_f64().unwrap() - 800.0 / 6.0).abs() < 1e-9);
    assert!((x[1].as_f64().unwrap() - 400.0).abs() < 1e-9);
    assert!((y[0].as_f64().unwrap() + 800.0 / 6.0).abs() < 1e-9);
    assert!(svg.contains("<polygon"));
    assert!(svg.contains(r##"fill="#999999""##));
    assert!(svg.matches("<line").count() >= 3);
}

#[test]
fn amoeba_default_scale_margins() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["amoeba", "--input", &fan("p2.json"), "--grid", "30", "--args", "8", "--s", "1"])
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("amoeba.json")).unwrap()).unwrap();
    assert!((v["log_t"].as_f64().unwrap() - 377.06).abs() < 0.01);
    assert_eq!(v["margins"]["positive"], v["margins"]["witnesses"]);
    assert_eq!(v["lopsided_contradictions"], 0);
}
