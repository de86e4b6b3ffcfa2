use std::path::Path;
use std::process::{Command, Output};

fn pi1lab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pi1lab"))
        .args(args)
        .current_dir(dir)
        .env_remove("PI1LAB_DIGITS")
        .output()
        .expect("binary runs")
}

fn script(dir: &Path, text: &str) -> String {
    let p = dir.join("s.pi1");
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn word_literal() {
    let d = tempfile::tempdir().unwrap();
    let o = pi1lab(&["word", "C(4).once"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "word: g4\n");
    let o = pi1lab(&["word", "concat(C(3).inv, alpha.updown, C(5).once)"], d.path());
    assert_eq!(stdout(&o), "word: g3^-1 g5\n");
}

#[test]
fn parse_error_has_location_and_exit_2() {
    let d = tempfile::tempdir().unwrap();
    let s = script(d.path(), "space S = Y(4) width=pow10\nloop a = C(1).once\n");
    let o = pi1lab(&["run", &s], d.path());
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(":2:12: error: circle index must be ≥ 2"), "{err}");
}

#[test]
fn unbound_name_is_rejected() {
    let d = tempfile::tempdir().unwrap();
    let s = script(d.path(), "space S = X(3) width=pow10\nprobe classify nope\n");
    let o = pi1lab(&["run", &s], d.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn constant_width_fails_disjointness() {
    let d = tempfile::tempdir().unwrap();
    let s = script(d.path(), "space S = X(5) width=const(1/2)\nprobe disjointness\n");
    let o = pi1lab(&["run", &s], d.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn classify_in_script() {
    let d = tempfile::tempdir().unwrap();
    let s = script(
        d.path(),
        "space S = Y(6) width=pow10\nloop a = concat(C(2).once, C(2).once, reverse(C(6).once))\nprobe classify a\n",
    );
    let o = pi1lab(&["run", &s], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("word: g2^2 g6^-1"), "{}", stdout(&o));
}

#[test]
fn render_counts_lines() {
    let d = tempfile::tempdir().unwrap();
    let s = script(d.path(), "space S = Y(8) width=pow10\nrender S -> pics/y.svg\n");
    let o = pi1lab(&["render", &s], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(d.path().join("pics/y.svg")).unwrap();
    assert_eq!(svg.matches("<line").count(), 25);
    assert!(svg.contains("class=\"alpha\""));
}

#[test]
fn render_without_objects() {
    let d = tempfile::tempdir().unwrap();
    let s = script(d.path(), "space S = Y(3) width=pow10\nrender -> empty.svg\n");
    let o = pi1lab(&["render", &s], d.path());
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(d.path().join("empty.svg")).unwrap();
    assert!(svg.contains("<svg"));
    assert_eq!(svg.matches("<line").count(), 0);
}

#[test]
fn run_is_deterministic() {
    let d = tempfile::tempdir().unwrap();
    let s = script(
        d.path(),
        "space S = X(4) width=pow10\nloop a = word g2 g3^-1\nprobe discreteness a trials=10 seed=3\nprobe decompose a\n",
    );
    let a = pi1lab(&["run", &s], d.path());
    let b = pi1lab(&["run", &s], d.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn hausdorff_table() {
    let d = tempfile::tempdir().unwrap();
    let o = pi1lab(&["hausdorff", "--upto", "5"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    assert_eq!(pi1lab(&["hausdorff", "--upto", "1"], d.path()).status.code(), Some(2));
}

#[test]
fn distance_between_literals() {
    let d = tempfile::tempdir().unwrap();
    let o = pi1lab(&["dist", "C(2).once", "C(2).once"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sup distance squared: 0"));
}

#[test]
fn bad_digits_variable() {
    let o = Command::new(env!("CARGO_BIN_EXE_pi1lab"))
        .args(["hausdorff", "--upto", "3"])
        .env("PI1LAB_DIGITS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
