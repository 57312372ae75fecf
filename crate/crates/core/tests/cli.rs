use std::path::PathBuf;
use std::process::{Command, Output};

fn charp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charp"))
        .args(args)
        .output()
        .unwrap()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    path.to_str().unwrap().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn temp_spec(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("charp-cli-{}-{name}.spec", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn help_and_version_exit_zero() {
    let out = charp(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("classify"));
    assert_eq!(charp(&["--version"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(charp(&[]).status.code(), Some(2));
    assert_eq!(charp(&["classify"]).status.code(), Some(2));
    assert_eq!(charp(&["fuzz", "--suite", "nope"]).status.code(), Some(2));
    let missing = charp(&["classify", "-f", "/nonexistent/d.spec"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(!missing.stderr.is_empty());
    // classification is only defined for two variables
    let three = temp_spec(
        "three",
        "p = 2\nvars = x, y, z\nd(x) = y\nd(y) = z\nd(z) = x\n",
    );
    assert_eq!(charp(&["classify", "-f", &three]).status.code(), Some(2));
    assert_eq!(
        charp(&["hunt", "--p", "4", "--deg", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn parse_errors_exit_three() {
    let bad = temp_spec("bad", "p = 3\nvars = x, y\nd(x) = y^\nd(y) = x\n");
    let out = charp(&["divergence", "-f", &bad]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(
        msg.contains("3"),
        "diagnostic should point at the line: {msg}"
    );
    let spec = golden("squares_p3.spec");
    assert_eq!(
        charp(&["apply", "-f", &spec, "x +* y"]).status.code(),
        Some(3)
    );
    assert_eq!(charp(&["apply", "-f", &spec, "w"]).status.code(), Some(3));
}

#[test]
fn bound_exceeded_exits_four() {
    let spec = golden("euler_p2.spec");
    assert_eq!(
        charp(&["kernel", "-f", &spec, "-D", "99999"]).status.code(),
        Some(4)
    );
    // d = (2, x^3) is Jacobian over F_3 (d = d_f for f = x^4 + y) but
    // its generator has degree 4
    let late = temp_spec("late", "p = 3\nvars = x, y\nd(x) = 2\nd(y) = x^3\n");
    assert_eq!(
        charp(&["generator", "-f", &late, "--max-degree", "2"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn text_reports() {
    let spec = golden("euler_p2.spec");
    let out = charp(&["generator", "-f", &spec]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "f = x*y, c = 1");
    let out = charp(&["apply", "-f", &golden("squares_p3.spec"), "x^3 + x*y"]);
    assert_eq!(stdout(&out).trim(), "image = x^3 + y^3");
    let out = charp(&["divergence", "-f", &golden("squares_p3.spec")]);
    assert_eq!(stdout(&out).trim(), "divergence = 0");
}

#[test]
fn dgcd_command() {
    let out = charp(&["dgcd", "--p", "3", "--vars", "x,y", "x^2*y"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "dgcd = x");
    let out = charp(&[
        "--format", "json", "dgcd", "--p", "2", "--vars", "x,y,z", "x^2", "y^2",
    ]);
    assert_eq!(stdout(&out).trim(), "{\n  \"dgcd\": \"0\"\n}");
}

#[test]
fn certify_outcomes() {
    let spec = golden("rotation_p3.spec");
    let ok = charp(&["--format", "json", "certify", "-f", &spec, "x^2 + y^2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("\"certified\""));
    let rejected = charp(&["--format", "json", "certify", "-f", &spec, "x*y"]);
    assert_eq!(rejected.status.code(), Some(0));
    assert!(stdout(&rejected).contains("\"rejected\""));
    // wrong number of entries is a usage error
    assert_eq!(
        charp(&["certify", "-f", &spec, "x", "y"]).status.code(),
        Some(2)
    );
}

#[test]
fn seeded_commands_are_reproducible() {
    for args in [
        &[
            "--format", "json", "fuzz", "--suite", "cor1", "--trials", "5", "--seed", "9",
        ][..],
        &[
            "--format", "json", "hunt", "--p", "2", "--deg", "2", "--trials", "4", "--seed", "3",
        ][..],
    ] {
        let a = charp(args);
        let b = charp(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn fuzz_text_summary() {
    let out = charp(&["fuzz", "--suite", "divzero", "--trials", "3", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("suite divzero: 3 trials, seed 1,"));
}
