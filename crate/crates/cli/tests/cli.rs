use std::io::Write;
use std::process::{Command, Output, Stdio};

fn expoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expoly")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn factor_reports_two_nonsimple_factors() {
    let o = expoly(&["factor", "E(4*x)+2*E(2*x)+1-E(2*x+2*y)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("ambient order: 1"));
    assert!(out.contains("  E(2*x) - E(x + y) + 1\n"));
    assert!(out.contains("  E(2*x) + E(x + y) + 1\n"));
    assert!(out.contains("t* = [2, 2], q = 2"));
}

#[test]
fn json_schema_is_stable() {
    let o = expoly(&["factor", "--json", "(x^2-1)*(E(x)+E(y)+1)"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    keys.sort();
    assert_eq!(keys, ["ambient_order", "classical", "input", "nonsimple", "simple_blocks", "timings", "unit"]);
    assert_eq!(v["classical"].as_array().unwrap().len(), 2);
    assert_eq!(v["nonsimple"][0]["factor"], "E(x) + E(y) + 1");
}

#[test]
fn support_and_associate() {
    let out = stdout(&expoly(&["support", "E(2*x)-1"]));
    assert!(out.contains("dimension: 1"));
    let out = stdout(&expoly(&["associate", "E(x)+E(y)+1"]));
    assert!(out.contains("Q = y1 + y2 + 1"));
    assert!(out.contains("  x: [1, 0]\n  y: [0, 1]"));
    let out = stdout(&expoly(&["associate", "--basis", "lattice", "E(4*x)+2*E(2*x)+1-E(2*x+2*y)"]));
    assert!(out.contains("Q = y1^2 - y1*y2 + 2*y1 + 1"));
}

#[test]
fn verify_reads_stdin() {
    let art = expoly(&["factor", "--json", "E(3*x)-E(2*x)-E(x)+1"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_expoly"))
        .args(["verify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&art.stdout).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));

    let tampered = stdout(&art).replace("E(3*x) - E(2*x) - E(x) + 1\"", "E(3*x) - E(2*x) + 1\"");
    let path = std::env::temp_dir().join(format!("expoly-tampered-{}.json", std::process::id()));
    std::fs::write(&path, tampered).unwrap();
    let o = expoly(&["verify", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let o = expoly(&["factor", "E(x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 4"));
    let o = expoly(&["--degree-cap", "2", "factor", "E(4*x)+2*E(2*x)+1-E(2*x+2*y)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = expoly(&["--height-cap", "1", "factor", "E(E(x))"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn raising_the_order_refines_factors() {
    let out = stdout(&expoly(&["factor", "--json", "E(2*x) + E(x) + 1"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let parts = |v: &serde_json::Value| v["simple_blocks"][0]["parts"].as_array().unwrap().len();
    assert_eq!(parts(&v), 1);
    let out = stdout(&expoly(&["--cyclotomic-order", "3", "factor", "--json", "E(2*x) + E(x) + 1"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ambient_order"], 3);
    assert_eq!(parts(&v), 2);
}
