use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quatsplit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn quatsplit")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn quatsplit");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn cubic_quaternion() -> Value {
    json!({
        "field": [{"label": "a", "minpoly": ["-1", "-2", "1", "1"]}],
        "presentation": "standard",
        "u": ["0", "1", "0"],
        "v": ["2", "0", "0"],
    })
}

#[test]
fn split_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("cubic_quat.json");
    let cert = dir.path().join("cert.json");
    std::fs::write(&input, cubic_quaternion().to_string()).unwrap();
    let o = run(&[
        "split-quaternion",
        "--input",
        input.to_str().unwrap(),
        "--output",
        cert.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let c: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert!(c["degree_over_F"].as_u64().unwrap() <= 8);

    let o = run(&["verify", "--input", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));

    // Tamper with the witness: add 1 to its first rational coefficient.
    let mut bad = c.clone();
    fn bump(v: &mut Value) {
        match v {
            Value::Array(xs) => bump(&mut xs[0]),
            Value::String(s) => {
                let x = quatsplit::rational::parse_q(s).unwrap() + quatsplit::rational::q(1);
                *s = quatsplit::rational::format_q(&x);
            }
            _ => unreachable!(),
        }
    }
    bump(&mut bad["witness"][0]);
    let tampered = dir.path().join("bad.json");
    std::fs::write(&tampered, bad.to_string()).unwrap();
    let o = run(&["verify", "--input", tampered.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn isotropy_batches_pipe_into_verify() {
    let o = run(&["isotropy", "--preset", "r2", "--count", "5", "--seed", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5);
    let o = run_stdin(&["verify", "--input", "-"], &text);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 5);
}

#[test]
fn deterministic_for_a_seed() {
    let a = run(&["isotropy", "--preset", "r3", "--count", "3", "--seed", "42"]);
    let b = run(&["isotropy", "--preset", "r3", "--count", "3", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["isotropy", "--preset", "r3", "--count", "3", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn exit_codes() {
    // Malformed JSON.
    let o = run_stdin(&["isotropy", "--input", "-"], "{nope");
    assert_eq!(o.status.code(), Some(2));
    // Unknown preset.
    assert_eq!(
        run(&["split-quaternion", "--preset", "nonic"]).status.code(),
        Some(2)
    );
    // Two forms in three variables: below the required dimension.
    let sys = json!({"forms": [[["1","0","0"],["0","1","0"],["0","0","1"]],
                               [["1","0","0"],["0","2","0"],["0","0","3"]]]});
    let o = run_stdin(&["isotropy", "--input", "-"], &sys.to_string());
    assert_eq!(o.status.code(), Some(3));
    // Even-degree field without a declared 2-part.
    let q = json!({
        "field": [{"label": "s", "minpoly": ["-2", "0", "1"]}],
        "presentation": "standard", "u": ["-1", "0"], "v": ["-1", "0"],
    });
    let o = run_stdin(&["split-quaternion", "--input", "-"], &q.to_string());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn demo_isotropy_r1() {
    let o = run(&["demo", "--preset", "isotropy-r1"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], json!(true));
    assert!(v["summary"].as_str().unwrap().contains("degree-2 extension"));
}

#[test]
fn corestrict_preset_reports_structure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cor.json");
    let o = run(&[
        "corestrict",
        "--preset",
        "m2-sqrt2",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["dimension"], json!(16));
    assert_eq!(v["center_dimension"], json!(1));
    assert_eq!(v["idempotent_verified"], json!(true));
    assert_eq!(v["corestriction"]["dim"], json!(16));
}
