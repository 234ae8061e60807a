use std::fs;
use std::process::{Command, Output};

fn mubsdp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mubsdp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

#[test]
fn stats_bases_only_row() {
    let o = mubsdp(&["stats", "--d", "2", "--k", "4", "--t", "4.5", "--mode", "bases_only"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(value(&s, "size"), Some("256"));
    assert_eq!(value(&s, "vars"), Some("5"));
    assert_eq!(value(&s, "linear"), Some("0"));
    assert_eq!(value(&s, "status"), Some("undetermined"));
}

#[test]
fn check_exit_codes() {
    let o = mubsdp(&["check", "--d", "2", "--k", "2", "--t", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "verdict"), Some("undetermined"));

    let o = mubsdp(&["check", "--d", "2", "--k", "4", "--t", "4.5"]);
    assert_eq!(o.status.code(), Some(10));
    let s = stdout(&o);
    assert_eq!(value(&s, "vars"), Some("7"));
    assert_eq!(value(&s, "linear"), Some("8"));
    assert!(s.lines().any(|l| l.starts_with("witness.0=")));
}

#[test]
fn generate_is_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let o = mubsdp(&[
            "generate",
            "--d",
            "2",
            "--k",
            "3",
            "--t",
            "2.5",
            "--mode",
            "bases_only",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for name in ["mub_d2_k3_t2.5_bases_only.dat-s", "mub_d2_k3_t2.5_bases_only.meta"] {
        let x = fs::read(a.path().join(name)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, fs::read(b.path().join(name)).unwrap(), "{name}");
    }
}

#[test]
fn infeasible_generate_writes_only_the_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let o = mubsdp(&[
        "generate",
        "--d",
        "2",
        "--k",
        "4",
        "--t",
        "4.5",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(10));
    assert!(!dir.path().join("mub_d2_k4_t4.5_full.dat-s").exists());
    let meta = fs::read_to_string(dir.path().join("mub_d2_k4_t4.5_full.meta")).unwrap();
    assert_eq!(value(&meta, "verdict"), Some("infeasible(linear)"));
    assert!(meta.contains("witness.0="));
}

#[test]
fn parses_solver_phases() {
    let dir = tempfile::tempdir().unwrap();
    for (phase, status, code) in [
        ("pdOPT", "feasible", 0),
        ("pINF", "infeasible", 11),
        ("noINFO", "unknown", 0),
    ] {
        let f = dir.path().join(format!("{phase}.out"));
        fs::write(&f, format!("SDPA start\nphase.value  = {phase}\n")).unwrap();
        let o = mubsdp(&["parse-solver-output", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(code));
        assert_eq!(value(&stdout(&o), "status"), Some(status));
    }
    let f = dir.path().join("empty.out");
    fs::write(&f, "nothing here\n").unwrap();
    assert_eq!(
        mubsdp(&["parse-solver-output", f.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn selftest_and_corrupted_nu() {
    let o = mubsdp(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = mubsdp(&["selftest", "--corrupt-nu"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL phi-oracle")));
}

#[test]
fn rejects_bad_arguments() {
    assert_ne!(
        mubsdp(&["stats", "--d", "1", "--k", "4", "--t", "2"]).status.code(),
        Some(0)
    );
    assert_ne!(
        mubsdp(&["stats", "--d", "2", "--k", "4", "--t", "2.25"]).status.code(),
        Some(0)
    );
    let o = mubsdp(&["solve", "--d", "2", "--k", "2", "--t", "1"]);
    if std::env::var_os("MUBSDP_SOLVER").is_none() {
        assert_eq!(o.status.code(), Some(1));
    }
}
