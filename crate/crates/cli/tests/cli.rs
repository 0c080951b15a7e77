use std::path::Path;
use std::process::{Command, Output};

fn wavekin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavekin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn png_size(path: &Path) -> (u32, u32) {
    let bytes = std::fs::read(path).unwrap();
    assert_eq!(&bytes[1..4], b"PNG");
    let be = |i: usize| u32::from_be_bytes(bytes[i..i + 4].try_into().unwrap());
    (be(16), be(20))
}

#[test]
fn sample_is_reproducible() {
    let args = ["sample", "--x", "-2:2:9", "--y", "-1:1:5", "--t", "0.5", "--no-timestamp", "--beta", "0.3"];
    let (a, b) = (wavekin(&args), wavekin(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 45);
    assert!(text.contains("# beta = 2.9999999999999999e-1"));
}

#[test]
fn json_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/grid.json");
    let out = wavekin(&[
        "sample", "--scenario", "ray", "--ray-speed", "2", "--x", "-1:1:3", "--y", "0", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["metadata"]["provenance"], "ray-constructed");
    assert_eq!(json["metadata"]["ray_speed"], 2.0);
    assert_eq!(json["values"].as_array().unwrap().len(), 3);
    assert!(json["metadata"]["generated_unix"].is_u64());
}

#[test]
fn config_file_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "beta = 0.2\nomega0 = 2.0\nx = \"0:1:2\"\ny = 0\ntimestamp = false\n").unwrap();
    let out = wavekin(&["sample", "--config", config.to_str().unwrap(), "--beta", "0.5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# beta = 5.0000000000000000e-1"));
    assert!(text.contains("# omega0 = 2.0000000000000000e0"));
    assert!(text.contains("# generated_unix = none"));
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        &["sample", "--beta", "1.0"][..],
        &["sample", "--ray-speed", "2"],
        &["sample", "--scenario", "ray", "--ray-speed", "0.5"],
        &["sample", "--format", "xml"],
        &["sample", "--x", "1:0:5"],
        &["sample", "--config", "/nonexistent/wavekin.toml"],
        &["verify", "nonsense"],
        &["track", "--beta", "0"],
    ] {
        let out = wavekin(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"), "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    std::fs::write(&config, "speed = 3\n").unwrap();
    assert_eq!(wavekin(&["sample", "--config", config.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_reports_json_and_succeeds() {
    let out = wavekin(&["verify", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], true);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 20);
    for c in checks {
        assert!(c["measured"].is_number() && c["tolerance"].is_number() && c["name"].is_string());
    }
    let suites: Vec<&str> = checks.iter().map(|c| c["suite"].as_str().unwrap()).collect();
    let mut sorted = suites.clone();
    sorted.sort();
    assert_eq!(suites, sorted);
}

#[test]
fn render_default_resolution() {
    let dir = tempfile::tempdir().unwrap();
    let heat = dir.path().join("heat.png");
    let out = wavekin(&["render", "--x", "-5:5:41", "--y", "-4:4:33", "--out", heat.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(png_size(&heat), (1024, 768));

    let snaps = dir.path().join("snaps.png");
    let out = wavekin(&[
        "render", "--style", "line-snapshots", "--width", "320", "--height", "200", "--out", snaps.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(png_size(&snaps), (320, 200));
}

#[test]
fn render_rejects_a_cube_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cube.png");
    let out = wavekin(&["render", "--z", "-1:1:3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists());
}

#[test]
fn render_an_exported_grid() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("g.csv");
    let png = dir.path().join("g.png");
    assert!(wavekin(&["sample", "--scenario", "rest", "--x", "-3:3:31", "--y", "-3:3:31", "--out", grid.to_str().unwrap()])
        .status
        .success());
    let out = wavekin(&["render", "--input", grid.to_str().unwrap(), "--out", png.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(png.exists());
}

#[test]
fn sweep_and_track() {
    let out = wavekin(&["sweep", "--exponents", "0,1", "--betas", "0.2,0.6", "--format", "json"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[2]["exponent_a"], 1.0);
    assert_eq!(rows[2]["anisotropy_flag"], false);
    assert_eq!(rows[0]["anisotropy_flag"], true);

    let out = wavekin(&["track", "--beta", "0.6", "--format", "json"]);
    assert!(out.status.success());
    let traces: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let carrier = traces[0]["fitted_speed"].as_f64().unwrap();
    let crest = traces[1]["fitted_speed"].as_f64().unwrap();
    assert!((carrier - 0.6).abs() < 1e-6);
    assert!((crest - 1.0 / 0.6).abs() < 1e-6);
}
