use std::path::Path;
use std::process::{Command, Output};

fn ymlab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ymlab")).current_dir(dir).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, text: &str) {
    std::fs::write(dir.join("run.cfg"), text).unwrap();
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = ymlab(dir.path(), &["verify", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_config_value_names_key_and_line() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "seed = 3\ndt = abc\n");
    let out = ymlab(dir.path(), &["--config", "run.cfg", "verify"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("dt") && err.contains('2'), "{err}");
}

#[test]
fn invalid_lattice_is_rejected_before_running() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "lattice.n = 1\n");
    let out = ymlab(dir.path(), &["--config", "run.cfg", "evolve-r"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lattice.n"));
}

#[test]
fn evolve_r_writes_log_and_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "steps = 20\nrecord.every = 5\nout = run\n");
    let out = ymlab(dir.path(), &["--config", "run.cfg", "evolve-r"]);
    assert!(out.status.success(), "{out:?}");
    let csv = std::fs::read_to_string(dir.path().join("run/evolve_r.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("step,time,energy,gauss_e,gauss_b,charge_norm,bianchi_defect"));
    let steps: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(steps, ["0", "5", "10", "15", "20"]);
    assert!(dir.path().join("run/final_a.yms").exists());
    assert!(dir.path().join("run/final_p.yms").exists());
}

#[test]
fn outputs_are_reproducible_for_a_fixed_seed() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "steps = 10\n");
    let mut runs = Vec::new();
    for name in ["one", "two"] {
        let out = ymlab(dir.path(), &["--config", "run.cfg", "--seed", "11", "--out", name, "evolve-t"]);
        assert!(out.status.success(), "{out:?}");
        let p = dir.path().join(name);
        runs.push((
            std::fs::read(p.join("evolve_t.csv")).unwrap(),
            std::fs::read(p.join("final_e.yms")).unwrap(),
            std::fs::read(p.join("final_b.yms")).unwrap(),
        ));
    }
    assert_eq!(runs[0], runs[1]);
    let other = ymlab(dir.path(), &["--config", "run.cfg", "--seed", "12", "--out", "three", "evolve-t"]);
    assert!(other.status.success());
    assert_ne!(std::fs::read(dir.path().join("three/final_e.yms")).unwrap(), runs[0].1);
}

#[test]
fn decompose_splits_an_evolved_momentum() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "steps = 2\n");
    assert!(ymlab(dir.path(), &["--config", "run.cfg", "evolve-r"]).status.success());
    let out = ymlab(dir.path(), &["--config", "run.cfg", "decompose", "out/final_p.yms", "--a", "out/final_a.yms"]);
    assert!(out.status.success(), "{out:?}");
    assert!(dir.path().join("out/gradient.yms").exists());
    assert!(dir.path().join("out/transverse.yms").exists());
}

#[test]
fn bracket_rejects_unknown_observable() {
    let dir = tempfile::tempdir().unwrap();
    let ok = ymlab(dir.path(), &["bracket", "vortex", "probe_e0"]);
    assert!(ok.status.success(), "{ok:?}");
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("{vortex, probe_e0} = "));
    let bad = ymlab(dir.path(), &["bracket", "vortex", "nonsense"]);
    assert_eq!(bad.status.code(), Some(1));
}
