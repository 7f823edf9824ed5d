use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_capgraph"));
    cmd.env_remove("CAPGRAPH_OUTPUT_DIR");
    cmd
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn table1() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/table1.csv")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_measure(dir: &Path, name: &str, values: &[f64]) -> PathBuf {
    let n = values.len().trailing_zeros();
    let path = dir.join(name);
    let body = serde_json::json!({ "n": n, "values": values });
    std::fs::write(&path, body.to_string()).unwrap();
    path
}

#[test]
fn validate_reports_violations_with_exit_code() {
    let tmp = tempfile::tempdir().unwrap();
    let good = write_measure(tmp.path(), "good.json", &[0.0, 0.3, 0.5, 1.0]);
    let bad = write_measure(tmp.path(), "bad.json", &[0.0, 0.6, 0.5, 0.4]);
    let ok = run(tmp.path(), &["validate", good.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    let fail = run(tmp.path(), &["validate", bad.to_str().unwrap()]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(!stdout(&fail).is_empty());
    let lenient = run(tmp.path(), &["index", "--no-validate", "--kind", "mobius", bad.to_str().unwrap()]);
    assert_eq!(lenient.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(run(tmp.path(), &["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(tmp.path(), &["random", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn missing_files_are_domain_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(tmp.path(), &["props", "absent.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn index_and_integrate() {
    let tmp = tempfile::tempdir().unwrap();
    let m = write_measure(tmp.path(), "m.json", &[0.0, 0.3, 0.5, 1.0]);
    let out = run(tmp.path(), &["index", m.to_str().unwrap(), "--kind", "nonadditivity"]);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("id,mu,nonadditivity"));
    assert!(text.lines().any(|l| l == "\"{1,2}\",1,0.2"), "{text}");

    let out = run(tmp.path(), &["integrate", m.to_str().unwrap(), "--x", "0.4,0.8"]);
    let text = stdout(&out);
    // 0.4 + (0.8 - 0.4) * 0.5
    assert!(text.contains("choquet: 0.6\n"), "{text}");
    assert!(text.contains("sugeno: 0.5\n"), "{text}");
}

#[test]
fn paper_labels_in_exports() {
    let tmp = tempfile::tempdir().unwrap();
    let m = write_measure(tmp.path(), "m.json", &[0.0, 0.3, 0.5, 1.0]);
    let out = run(tmp.path(), &["index", m.to_str().unwrap(), "--labels", "paper", "--kind", "mobius"]);
    assert!(stdout(&out).contains("\"c(1, 2)\""));
}

#[test]
fn random_is_reproducible_and_valid() {
    let tmp = tempfile::tempdir().unwrap();
    let a = run(tmp.path(), &["random", "--n", "4", "--seed", "11", "--full-precision"]);
    let b = run(tmp.path(), &["random", "--n", "4", "--seed", "11", "--full-precision"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    std::fs::write(tmp.path().join("r.json"), &a.stdout).unwrap();
    assert_eq!(run(tmp.path(), &["validate", "--tol", "0", "r.json"]).status.code(), Some(0));

    let batch = run(tmp.path(), &["random", "--n", "3", "--seed", "2", "--count", "5", "--out-dir", "batch"]);
    assert_eq!(batch.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(tmp.path().join("batch")).unwrap().count(), 5);
    let no_dir = run(tmp.path(), &["random", "--n", "3", "--seed", "2", "--count", "5"]);
    assert_eq!(no_dir.status.code(), Some(1));
}

#[test]
fn output_directory_variable_resolves_relative_paths() {
    let tmp = tempfile::tempdir().unwrap();
    let base = tmp.path().join("base");
    let out = bin()
        .current_dir(tmp.path())
        .env("CAPGRAPH_OUTPUT_DIR", &base)
        .args(["random", "--n", "3", "--seed", "1", "-o", "m.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(base.join("m.json").exists());
}

#[test]
fn fit_table1_incremental_frames() {
    let tmp = tempfile::tempdir().unwrap();
    let data = table1();
    let out = run(
        tmp.path(),
        &["fit", data.to_str().unwrap(), "--incremental", "--out-dir", "frames", "-o", "fit.json"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let frames = tmp.path().join("frames");
    for t in 1..=7 {
        assert!(frames.join(format!("round_{t:02}.json")).exists());
        let svg = std::fs::read_to_string(frames.join(format!("round_{t:02}.svg"))).unwrap();
        assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(frames.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["rounds"].as_array().unwrap().len(), 7);
    assert_eq!(manifest["normalization"]["offset"], 11.0);
    assert_eq!(manifest["normalization"]["scale"], 7.0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("(v - 11) / 7"));

    let fitted = tmp.path().join("fit.json");
    let check = run(tmp.path(), &["integrate", fitted.to_str().unwrap(), "--x", "1,0,0,0,1", "--integral", "choquet"]);
    let value: f64 = stdout(&check).trim().trim_start_matches("choquet: ").parse().unwrap();
    assert!((value - 4.0 / 7.0).abs() < 1e-5);
}

#[test]
fn render_formats() {
    let tmp = tempfile::tempdir().unwrap();
    let m = write_measure(tmp.path(), "m.json", &[0.0, 0.3, 0.5, 0.6, 0.2, 0.5, 0.7, 1.0]);
    let svg = run(tmp.path(), &["render", m.to_str().unwrap(), "--style", "height", "--overlay", "mobius"]);
    assert_eq!(svg.status.code(), Some(0));
    assert!(stdout(&svg).contains("class=\"overlay\""));
    let dot = run(tmp.path(), &["render", m.to_str().unwrap(), "-o", "g.dot"]);
    assert_eq!(dot.status.code(), Some(0));
    assert!(std::fs::read_to_string(tmp.path().join("g.dot")).unwrap().starts_with("digraph"));
}

#[test]
fn analytics_commands_write_csv_and_svg() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let cmp = run(d, &["compare-integrals", "--x", "0.2,0.5,0.9", "--samples", "30", "--seed", "3", "-o", "c.csv", "--svg", "c.svg"]);
    assert_eq!(cmp.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(d.join("c.csv")).unwrap().lines().count(), 31);
    assert!(d.join("c.svg").exists());

    let data = table1();
    let prof = run(d, &["profile-alternatives", data.to_str().unwrap(), "--samples", "20", "--seed", "3", "-o", "p.csv", "--svg", "p.svg"]);
    assert_eq!(prof.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(d.join("p.csv")).unwrap().lines().count(), 1 + 7 * 20);

    run(d, &["random", "--n", "4", "--seed", "9", "-o", "m.json"]);
    let cl = run(d, &["cluster", "m.json", "-o", "merges.csv", "--matrix", "x.csv", "--svg", "h.svg"]);
    assert_eq!(cl.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(d.join("merges.csv")).unwrap().lines().count(), 16);

    run(d, &["random", "--n", "4", "--seed", "9", "--count", "3", "--out-dir", "b"]);
    let many = run(d, &["cluster", "b/sample_0001.json", "b/sample_0002.json", "b/sample_0003.json", "--features", "entropy,orness"]);
    assert_eq!(many.status.code(), Some(0));
    let mixed = run(d, &["cluster", "m.json", "--features", "mu,entropy"]);
    assert_eq!(mixed.status.code(), Some(1));

    let sum = run(d, &["summarize", "m.json", "--random", "4", "--k-interactive", "3", "--seed", "5", "--svg", "s.svg"]);
    assert_eq!(sum.status.code(), Some(0), "{}", String::from_utf8_lossy(&sum.stderr));
    assert_eq!(stdout(&sum).lines().count(), 1 + 1 + 4 + 3);
    assert!(d.join("s.svg").exists());
}
