//! End-to-end tests of the mcg2 binary: exit codes, report stability, and
//! the file-format surface.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mcg2"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn data(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(file)
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("mcg2-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("write temp file");
    path
}

#[test]
fn verify_identity_word() {
    let out = run(&["verify", "@alpha @D @sigma @E @gamma @F @G"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("result: identity in Mod_2"));
}

#[test]
fn verify_four_chain_tenth_power() {
    let out = run(&["verify", "(t1 t2 t3 t4)^10"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_nontrivial_word() {
    let out = run(&["verify", "(t1 t2 t3 t4 t5)^3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("result: not the identity"));
}

#[test]
fn verify_detects_hyperelliptic_involution() {
    let out = run(&["verify", "t1 t2 t3 t4 t5 t5 t4 t3 t2 t1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("hyperelliptic involution (trivial downstairs, -I upstairs)"));
}

#[test]
fn verify_parse_error_exits_2() {
    let out = run(&["verify", "t9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "@no_such_curve"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        &["classify", "hamada"][..],
        &["--machine", "classify", "hamada"][..],
        &["verify", "@e @x1 @x2 @x3 @d @B2 @C"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "unstable report for {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn classify_builtins() {
    for name in ["bk", "hamada", "xiao"] {
        let out = run(&["classify", name]);
        assert_eq!(out.status.code(), Some(0), "classify {name}");
        let text = stdout(&out);
        assert!(text.contains("type: (4,3)"));
        assert!(text.contains("product: identity in Mod_2"));
    }
}

#[test]
fn classify_machine_output() {
    let out = run(&["--machine", "classify", "hamada"]);
    let text = stdout(&out);
    assert!(text.contains("type=(4,3)"));
    assert!(text.contains("product_identity=true"));
}

#[test]
fn classify_file_with_trivial_type() {
    let path = temp_file("triv.fact", "t1\nt2\nt3\n");
    let out = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("type: (3,0)"));
}

#[test]
fn equiv_shipped_certificates() {
    for (src, dst, cert) in [
        ("bk", "hamada", "bk_to_hamada.cert"),
        ("xiao", "hamada", "xiao_to_hamada.cert"),
    ] {
        let out = run(&["equiv", src, dst, "--certificate", data(cert).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{src} -> {dst}");
        assert!(stdout(&out).contains("result: certificate verified"));
    }
}

#[test]
fn equiv_type_mismatch_short_circuits() {
    let path = temp_file("seven.fact", "t1\nt1\nt1\nt1\nt1\nt1\nt1\n");
    let out = run(&["equiv", "hamada", path.to_str().unwrap(), "--search"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not equivalent"));
}

#[test]
fn equiv_search_finds_certificate() {
    let out = run(&["equiv", "xiao", "hamada", "--search", "--depth", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("result: certificate found"));
    assert!(text.contains("shift"));
}

#[test]
fn equiv_search_state_cap_exits_3() {
    let out = bin()
        .args(["equiv", "xiao", "hamada", "--search", "--depth", "8"])
        .env("MCG2_STATE_CAP", "10")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn equiv_requires_certificate_or_search() {
    let out = run(&["equiv", "bk", "hamada"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn derive_section5_passes() {
    let out = run(&["derive", "section5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("lines pass"));
}

#[test]
fn derive_corrupted_script_names_line() {
    let path = temp_file("bad.deriv", "t1 t1' = 1\nt1 t2 = 1\n");
    let out = run(&["derive", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("first failure at line 2"));
}

#[test]
fn derive_empty_script_passes() {
    let path = temp_file("empty.deriv", "# nothing to check\n");
    let out = run(&["derive", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn curves_catalog_extends_library() {
    let path = temp_file("extra.cat", "myalpha = alias alpha\n");
    let out = bin()
        .args([
            "--curves",
            path.to_str().unwrap(),
            "verify",
            "@myalpha @D @sigma @E @gamma @F @G",
        ])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bad_curves_catalog_exits_2() {
    let path = temp_file("bad.cat", "oops = spiral t1 separating\n");
    let out = bin()
        .args(["--curves", path.to_str().unwrap(), "verify", "t1"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mirrored_convention_flag_accepted() {
    let out = run(&["--convention", "mirrored", "classify", "hamada"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("type: (4,3)"));
}
