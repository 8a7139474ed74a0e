use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn hkdiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkdiag")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("hkdiag-{}-{name}", std::process::id()));
    fs::write(&path, contents).unwrap();
    path
}

fn fibonacci_file(n: usize) -> PathBuf {
    let mut a = vec![1u64, 1];
    while a.len() < n {
        a.push(a[a.len() - 1] + a[a.len() - 2]);
    }
    let text: String = a.iter().map(|v| format!("{v}\n")).collect();
    temp_file(&format!("fib{n}.txt"), &format!("# Fibonacci\n{text}"))
}

#[test]
fn diag_trivial_and_central_binomial() {
    let o = hkdiag(&["diag", "--num", "1", "--den", "1-y", "--prec", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("g(z) = 1 + O(z^4)"), "{}", stdout(&o));

    let o = hkdiag(&["diag", "--num", "1", "--den", "1-x-y", "--prec", "4", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "exponent,numerator,denominator\n0,1,1\n1,2,1\n2,6,1\n3,20,1\n");
}

#[test]
fn diag_json_is_deterministic() {
    let args = ["diag", "--paper-a348410", "--prec", "6", "--format", "json"];
    let a = hkdiag(&args);
    let b = hkdiag(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["oracle"]["match"], true);
    assert_eq!(v["series"]["coeffs"][5], serde_json::json!(["376", "1"]));
    assert_eq!(v["bounded"].as_array().unwrap().len(), 1);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("hkdiag-{}-out.csv", std::process::id()));
    let o = hkdiag(&["gbs", "--m", "2", "--prec", "5", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap(), "exponent,numerator,denominator\n0,1,1\n1,1,1\n2,2,1\n3,5,1\n4,14,1\n");
}

#[test]
fn fibonacci_recurrence_is_guessed() {
    let path = fibonacci_file(20);
    let o = hkdiag(&["guess-rec", "--input", path.to_str().unwrap(), "--order", "2", "--deg", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("-a(m) - a(m+1) + a(m+2) = 0\n"), "{}", stdout(&o));
}

#[test]
fn quartic_is_guessed() {
    let o = hkdiag(&["guess-algeq", "--paper-a348410", "--count", "40", "--deg-g", "4", "--deg-z", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with(
        "(256*z^2 + 107*z - 32)*g^4 + (-256*z^2 - 107*z + 32)*g^3 + (96*z^2 + 36*z)*g^2 + (-16*z^2 - 4*z)*g + z^2 = 0\n"
    ));
}

#[test]
fn known_recurrence_windows() {
    let o = hkdiag(&["verify-rec", "--paper-a348410", "--known-recurrence"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fails first at m = 0 (residual 2010)"));

    let o = hkdiag(&["verify-rec", "--paper-a348410", "--known-recurrence", "--from", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("holds for every window m = 1..55"));
}

#[test]
fn user_recurrence_with_rational_coefficients() {
    let path = fibonacci_file(12);
    let o = hkdiag(&["verify-rec", "--input", path.to_str().unwrap(), "--rec", "1/2;1/2;-1/2"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn harmonic_grid_and_gkp() {
    let o = hkdiag(&["harmonic", "--m", "1..4", "--n", "1..20", "--format", "csv"]);
    assert!(o.status.success());
    let csv = stdout(&o);
    assert_eq!(csv.lines().count(), 81);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
    assert!(csv.contains("\n1,1,1,1,true\n"));

    let o = hkdiag(&["harmonic", "--gkp", "--m", "2", "--prec", "15"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("equal"));
}

#[test]
fn exit_codes() {
    // parse error
    assert_eq!(hkdiag(&["diag", "--den", "1-x-"]).status.code(), Some(2));
    // denominator vanishing at the origin
    assert_eq!(hkdiag(&["diag", "--den", "x-y"]).status.code(), Some(2));
    // no csv for branches
    assert_eq!(hkdiag(&["branches", "--paper-a348410", "--format", "csv"]).status.code(), Some(2));
    // not enough data, then no relation
    let short = fibonacci_file(14);
    assert_eq!(
        hkdiag(&["guess-rec", "--input", short.to_str().unwrap(), "--order", "2", "--deg", "0"]).status.code(),
        Some(4)
    );
    assert_eq!(hkdiag(&["guess-rec", "--paper-a348410", "--order", "4", "--deg", "3"]).status.code(), Some(4));
    let missing = hkdiag(&["guess-rec", "--input", "/nonexistent/file", "--order", "1", "--deg", "0"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8(missing.stderr).unwrap().starts_with("error: cannot read"));
}

#[test]
fn check_all_table() {
    let o = hkdiag(&["check-all"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}
