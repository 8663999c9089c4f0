use std::path::PathBuf;
use std::process::{Command, Output};

fn wbsdp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wbsdp")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

#[test]
fn verify_passes() {
    let o = wbsdp(&["verify", "--p", "2", "--q", "2", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn validation_failures_exit_with_two() {
    assert_eq!(wbsdp(&["convert", "--spec", "missing.json"]).status.code(), Some(2));
    assert_eq!(wbsdp(&["verify", "--p", "2"]).status.code(), Some(2));
    assert_eq!(wbsdp(&["cloning", "--q", "2", "--d", "2"]).status.code(), Some(2));
    assert_eq!(wbsdp(&["idempotents", "--p", "2", "--q", "2", "--d", "4", "--symmetry", "spsq"]).status.code(), Some(2));
}

#[test]
fn gt_table() {
    let o = wbsdp(&["tables", "--which", "gt", "--max-n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text, wbsdp::multiplicity::total_degree_csv(wbsdp::multiplicity::Count::GelfandTsetlin, 6).unwrap());
    assert!(text.starts_with("d,2,3,4,5,6\n"));
}

#[test]
fn solve_and_convert_fixture() {
    let spec = fixture("majority_d3.spec.json");
    let o = wbsdp(&["solve", "--spec", &spec]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("optimum: 8/9"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("majority.lp");
    let o = wbsdp(&["convert", "--spec", &spec, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let lp = std::fs::read_to_string(&out).unwrap();
    assert!(lp.contains("Maximize") && lp.contains("Bounds"));
    assert!(out.with_extension("json").exists());
}

#[test]
fn applications() {
    let o = wbsdp(&["majority", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("8/9"));

    let o = wbsdp(&["eigmax", "--n", "3", "--grid", "0.6,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "c,probability,exact\n3/5,0.992,124/125\n1,1,1\n");

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("clone.dat-s");
    let o = wbsdp(&["cloning", "--d", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("block sizes: [1, 2, 3]"));
    assert!(out.exists() && out.with_extension("json").exists());
}

#[test]
fn idempotent_cache() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_wbsdp"))
        .args(["idempotents", "--p", "1", "--q", "2", "--d", "2"])
        .env("WBSDP_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() == 1);
}
