use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(rel)
}

fn focusray(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_focusray"))
        .args(args)
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn run_golden(out: &Path, extra: &[&str]) -> Output {
    let (scene, traj, cfg) = (
        fixture("golden/scene.txt"),
        fixture("golden/trajectory.txt"),
        fixture("golden/config.txt"),
    );
    let mut args = vec![
        "run",
        "--scene",
        s(&scene),
        "--trajectory",
        s(&traj),
        "--config",
        s(&cfg),
        "--out",
        s(out),
    ];
    args.extend_from_slice(extra);
    focusray(&args)
}

#[test]
fn run_writes_the_golden_document() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.txt");
    let o = run_golden(&out, &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("wrote "));
    let expected = std::fs::read(fixture("golden/expected_output.txt")).unwrap();
    assert_eq!(std::fs::read(&out).unwrap(), expected);
}

#[test]
fn no_focus_flag_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.txt");
    assert!(run_golden(&out, &["--no-focus"]).status.success());
    let doc = std::fs::read_to_string(&out).unwrap();
    assert!(doc.contains("focus_enabled = false"));
    assert!(doc.contains("\n0.000000,none,-,-,-,-,1.000000,false\n"));
}

#[test]
fn ssq_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ssq.txt");
    let (z, a, p) = (
        fixture("ssq/zeros.txt"),
        fixture("ssq/all3.txt"),
        fixture("ssq/profile.txt"),
    );
    let o = focusray(&[
        "ssq",
        "--q1",
        s(&z),
        "--q2",
        s(&a),
        "--q3",
        s(&z),
        "--profile",
        s(&p),
        "--out",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = std::fs::read_to_string(&out).unwrap();
    assert!(doc.contains("q2,200.34,159.18,292.32,235.62"));
}

#[test]
fn level_prints_the_level() {
    for (score, level) in [("499", "1"), ("500", "2"), ("5001", "6")] {
        let o = focusray(&["level", score]);
        assert!(o.status.success());
        assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), level);
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(focusray(&[]).status.code(), Some(2));
    assert_eq!(focusray(&["level", "-5"]).status.code(), Some(2));
    assert_eq!(focusray(&["run", "--scene", "x"]).status.code(), Some(2));
}

#[test]
fn parse_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ssq.txt");
    let (z, f, p) = (
        fixture("ssq/zeros.txt"),
        fixture("ssq/fifteen.txt"),
        fixture("ssq/profile.txt"),
    );
    let o = focusray(&[
        "ssq",
        "--q1",
        s(&z),
        "--q2",
        s(&f),
        "--q3",
        s(&z),
        "--profile",
        s(&p),
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing symptom 16"));
    assert!(!out.exists());

    let missing = dir.path().join("missing.txt");
    let (traj, cfg) = (fixture("golden/trajectory.txt"), fixture("golden/config.txt"));
    let o = focusray(&[
        "run",
        "--scene",
        s(&missing),
        "--trajectory",
        s(&traj),
        "--config",
        s(&cfg),
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn validation_errors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.txt");
    std::fs::write(&cfg, "p_rm = 0.9\np_d = 0.3\np_v = 0.2\n").unwrap();
    let (scene, traj) = (fixture("golden/scene.txt"), fixture("golden/trajectory.txt"));
    let out = dir.path().join("out.txt");
    let o = focusray(&[
        "run",
        "--scene",
        s(&scene),
        "--trajectory",
        s(&traj),
        "--config",
        s(&cfg),
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p_rm + p_d + p_v"));
}
