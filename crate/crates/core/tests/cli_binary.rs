use std::io::Write;
use std::process::{Command, Output, Stdio};

fn novelty(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_novelty"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn novelty");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn simulate_writes_to_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hist.csv");
    let out = novelty(
        &["simulate", "--nu", "0", "--steps", "5", "--seed", "3", "--out", path.to_str().unwrap()],
        b"",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "n,count\n5,1\n");
}

#[test]
fn trace_composes_with_fit() {
    let sim = ["simulate", "--nu", "0.1", "--steps", "20000", "--seed", "8"];
    let hist = novelty(&[&sim[..], &["--emit", "histogram"]].concat(), b"");
    let trace = novelty(&[&sim[..], &["--emit", "trace"]].concat(), b"");
    assert_eq!(trace.status.code(), Some(0));
    let reduced = novelty(&["trace"], &trace.stdout);
    assert_eq!(reduced.status.code(), Some(0));
    assert_eq!(reduced.stdout, hist.stdout);
    assert!(String::from_utf8_lossy(&reduced.stderr).starts_with("users=20000 "));

    let fit_a = novelty(&["fit", "--method", "mle"], &reduced.stdout);
    let fit_b = novelty(&["fit", "--method", "mle"], &hist.stdout);
    assert_eq!(fit_a.status.code(), Some(0));
    assert_eq!(fit_a.stdout, fit_b.stdout);
    let text = String::from_utf8(fit_a.stdout).unwrap();
    assert!(text.starts_with("mle_yule,"));
}

#[test]
fn exit_codes() {
    assert_eq!(novelty(&["simulate", "--nu", "0.1", "--steps", "5"], b"").status.code(), Some(2));
    assert_eq!(novelty(&["bogus"], b"").status.code(), Some(2));
    assert_eq!(novelty(&["theory", "--alpha", "2", "--max-n", "0"], b"").status.code(), Some(2));
    assert_eq!(novelty(&["fit"], b"n,count\n5,10\n").status.code(), Some(3));
    assert_eq!(novelty(&["trace", "--window", "1:9"], b"u1,a\nu2,b\n").status.code(), Some(2));
    let io = novelty(&["theory", "--alpha", "2", "--out", "/nonexistent-dir/x.csv"], b"");
    assert_eq!(io.status.code(), Some(1));
    assert_eq!(novelty(&["--help"], b"").status.code(), Some(0));
}
