use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frontcalc")).args(args).env_remove("FRONTCALC_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("frontcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn invariants_and_rulings() {
    let o = run(&["invariants", "catalog:unknot"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "tb=-1 rot=0\n");
    let o = run(&["rulings", "catalog:trefoil"]);
    assert_eq!(stdout(&o), "count: 3\n");
    let o = run(&["--format", "tsv", "rulings", "--list", "catalog:trefoil"]);
    assert!(stdout(&o).starts_with("ruling\tswitches\n"));
    assert!(stdout(&o).ends_with("count\t3\n"));
}

#[test]
fn shuffle_is_seeded() {
    let a = run(&["shuffle", "--steps", "50", "--seed", "7", "catalog:trefoil"]);
    let b = Command::new(env!("CARGO_BIN_EXE_frontcalc"))
        .args(["shuffle", "--steps", "50", "catalog:trefoil"])
        .env("FRONTCALC_SEED", "7")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let f = tmp("shuffled.front");
    std::fs::write(&f, &a.stdout).unwrap();
    assert_eq!(stdout(&run(&["rulings", f.to_str().unwrap()])), "count: 3\n");
}

#[test]
fn search_and_check_trace() {
    let o = run(&["search-filling", "--max-pinches", "3", "catalog:m9_46"]);
    assert!(o.status.success());
    let f = tmp("m946.trace");
    std::fs::write(&f, &o.stdout).unwrap();
    let c = run(&["check-trace", f.to_str().unwrap()]);
    assert!(c.status.success());
    assert_eq!(stdout(&c), "valid\n");

    let svg = tmp("m946.svg");
    let r = run(&["render", "--svg", svg.to_str().unwrap(), "--trace", f.to_str().unwrap()]);
    assert!(r.status.success());
    let doc = std::fs::read_to_string(&svg).unwrap();
    assert!(doc.starts_with("<?xml"));
    assert_eq!(doc.matches("<text").count(), 6);
}

#[test]
fn tampered_trace_is_rejected() {
    let o = run(&["search-filling", "catalog:unknot"]);
    let text = stdout(&o).replace("chi: 1", "chi: 3");
    let f = tmp("bad.trace");
    std::fs::write(&f, text).unwrap();
    let c = run(&["check-trace", f.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&c.stderr).contains("invalid"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["invariants", "/nonexistent/front"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "catalog:nope"]).status.code(), Some(2));
    assert_eq!(run(&["search-filling", "catalog:unknot_stab_pos"]).status.code(), Some(1));
    assert_eq!(run(&["pinch", "--site", "0@1", "catalog:unknot"]).status.code(), Some(1));
    assert_eq!(run(&["ruling-fillable", "--ruling", "9", "catalog:trefoil"]).status.code(), Some(1));
}

#[test]
fn pinch_and_ruling_fillability() {
    let o = run(&["pinch", "--site", "1@1", "catalog:unknot"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("L1 R1 L1 R1"));
    assert!(run(&["ruling-fillable", "--ruling", "2", "catalog:trefoil"]).status.success());
}

#[test]
fn satellites() {
    let o = run(&["satellite", "--pattern", "half_twist(3)", "catalog:unknot"]);
    assert!(o.status.success());
    let f = tmp("sat.front");
    std::fs::write(&f, &o.stdout).unwrap();
    assert_eq!(stdout(&run(&["invariants", f.to_str().unwrap()])), "tb=-1 rot=0\n");
    assert_eq!(run(&["satellite", "--pattern", "nonsense", "catalog:unknot"]).status.code(), Some(2));
    assert_eq!(run(&["satellite", "--pattern", "whitehead", "catalog:unlink2"]).status.code(), Some(1));
}

#[test]
fn catalog_commands() {
    let o = run(&["catalog", "selftest"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
    let list = stdout(&run(&["--format", "tsv", "catalog", "list"]));
    assert!(list.lines().any(|l| l.starts_with("trefoil\t1\t0\t3\t")));
}

#[test]
fn render_ruling_overlay() {
    let svg = tmp("trefoil.svg");
    let o = run(&["render", "--svg", svg.to_str().unwrap(), "--ruling", "2", "catalog:trefoil"]);
    assert!(o.status.success());
    let doc = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(doc.matches("<circle").count(), 3);
}
