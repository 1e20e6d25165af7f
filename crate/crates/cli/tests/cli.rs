use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn qworkstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qworkstat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn example_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/example.toml")
}

fn write_config(dir: &Path, extra: &str) -> PathBuf {
    let path = dir.join("cfg.toml");
    let text = format!(
        "scenario = \"cli-test\"\n[system]\nenergy_uev = 20.04\n\
         preparation = {{ kind = \"ground\" }}\n[sweep]\npoints = 60\n{extra}"
    );
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn lists_all_scenarios() {
    let out = qworkstat(&["list-scenarios"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "fig2a-closed-ideal",
        "fig2a-inset-coherent",
        "fig2b-open-bath",
        "fig3-jarzynski-sweep",
        "fig4-noisy-emulation",
    ] {
        assert!(text.contains(name), "{name} missing from\n{text}");
    }
}

#[test]
fn run_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let out = qworkstat(&[
        "run",
        "--scenario",
        "fig2a-closed-ideal",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for f in [
        "report.json",
        "char_fn.csv",
        "work_pdf.csv",
        "tpm_reference.csv",
        "config.toml",
    ] {
        assert!(out_dir.join(f).exists(), "{f} missing");
    }
    let csv = fs::read_to_string(out_dir.join("char_fn.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("u,re_g,im_g,shots"));
    let first: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(first[0], 0.0);
    assert!(
        (first[1] - 1.0).abs() < 1e-12 && first[2].abs() < 1e-12,
        "{first:?}"
    );
}

#[test]
fn annotated_example_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = qworkstat(&[
        "run",
        "--config",
        example_config().to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(dir.path().join("j_curve.csv").exists());
}

#[test]
fn shot_runs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "");
    let out_dir = dir.path().join("o");
    let args = [
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
        "--shots",
        "64",
        "--seed",
        "5",
    ];
    assert!(qworkstat(&args).status.success());
    let first = fs::read(out_dir.join("char_fn.csv")).unwrap();
    assert!(qworkstat(&args).status.success());
    assert_eq!(first, fs::read(out_dir.join("char_fn.csv")).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert!(text.lines().nth(1).unwrap().ends_with(",64"));
}

#[test]
fn export_circuits_writes_one_file_per_delay() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "").to_str().unwrap().to_owned();
    fs::write(
        &cfg,
        fs::read_to_string(&cfg)
            .unwrap()
            .replace("points = 60", "points = 3"),
    )
    .unwrap();
    let out_dir = dir.path().join("qasm");
    let out = qworkstat(&[
        "export-circuits",
        "--config",
        &cfg,
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read_dir(&out_dir).unwrap().count(), 3);
}

#[test]
fn config_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), "[ancilla]\nexcited_population = 2.0\n");
    let cases: Vec<Vec<String>> = vec![
        vec![
            "run".into(),
            "--config".into(),
            bad.to_str().unwrap().into(),
        ],
        vec![
            "run".into(),
            "--config".into(),
            dir.path().join("missing.toml").to_str().unwrap().into(),
        ],
        vec!["run".into(), "--scenario".into(), "no-such-scenario".into()],
        vec!["run".into()],
        vec!["run".into(), "--mode".into(), "sometimes".into()],
    ];
    for args in cases {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = qworkstat(&a);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{a:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn diagnostic_errors_exit_with_3() {
    // A closed qubit obeys J(T) = 1 at every T, so no clean root exists.
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "[jarzynski]\nt0_mk = 83.0\nt1_mk = -87.0\nsearch_lo_mk = 90.0\nsearch_hi_mk = 250.0\n",
    );
    let out = qworkstat(&[
        "jarzynski",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().join("j").to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("jarzynski"));
}

#[test]
fn jarzynski_subcommand_reports_root() {
    let dir = tempfile::tempdir().unwrap();
    let out = qworkstat(&[
        "jarzynski",
        "--scenario",
        "fig3-jarzynski-sweep",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let root: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("root_mK="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((root - 150.0).abs() < 15.0, "{root}");
    let report = fs::read_to_string(dir.path().join("jarzynski_root.txt")).unwrap();
    assert!(report.contains("curve_file=j_curve.csv"));
}
