use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use bracket_core::metrics::parse_csv;
use bracket_core::syntax::parse_cl;

fn bracket(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bracket"))
        .args(args)
        .output()
        .expect("running bracket")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Exit status and stdout; success must leave stderr empty.
fn run(args: &[&str]) -> (i32, String) {
    let out = bracket(args);
    let code = out.status.code().expect("exit status");
    if code == 0 {
        assert!(
            out.stderr.is_empty(),
            "stderr on success: {:?}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    (code, stdout(&out))
}

fn field<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|rest| rest.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{report}"))
}

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus/counterexamples.txt")
}

#[test]
fn translate_examples() {
    assert_eq!(
        run(&["translate", "--alg", "s", r"\y. (\z. x) y y"]),
        (0, "S (K x) I\n".into())
    );
    assert_eq!(
        run(&["translate", "--alg", "s1", r"\y. (\z. x) y y"]),
        (0, "x\n".into())
    );
    assert_eq!(
        run(&["translate", "--alg", "t", r"\x. x"]),
        (0, "I\n".into())
    );
}

#[test]
fn translate_output_reparses() {
    let (code, out) = run(&["translate", "--alg", "tstar2", r"\x y. x (x (x y)) x"]);
    assert_eq!(code, 0);
    let t = parse_cl(out.trim()).unwrap();
    assert_eq!(t.to_string(), out.trim());
}

#[test]
fn translate_trace() {
    let (code, out) = run(&["translate", "--alg", "t", "--trace", r"\x y. y x"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("C I"));
    assert!(lines.count() >= 2, "{out}");
}

#[test]
fn translate_from_stdin_and_file() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bracket"))
        .args(["translate", "--alg", "s1", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br"\y. (\z. x) y y")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "x\n");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("term.txt");
    std::fs::write(&path, "\\x y. x\n").unwrap();
    assert_eq!(
        run(&[
            "translate",
            "--alg",
            "s",
            "--in-file",
            path.to_str().unwrap()
        ]),
        (0, "K\n".into())
    );
}

#[test]
fn translate_errors_exit_2() {
    assert_eq!(
        bracket(&["translate", "--alg", "nope", "x"]).status.code(),
        Some(2)
    );
    let out = bracket(&["translate", "--alg", "t", r"\x. "]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(bracket(&["translate", "--alg", "t"]).status.code(), Some(2));
}

#[test]
fn compare_corpus_distinguishes() {
    let (code, out) = run(&[
        "compare",
        "--alg-a",
        "s",
        "--alg-b",
        "s1",
        "--corpus",
        corpus().to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert_eq!(field(&out, "verdict"), "distinguished");
    assert_eq!(field(&out, "output-a"), "S (K x) I");
    assert_eq!(field(&out, "output-b"), "x");
}

#[test]
fn compare_theorems_hold() {
    let (code, out) = run(&[
        "compare",
        "--alg-a",
        "t",
        "--alg-b",
        "t1",
        "--normal-forms",
        "--trials",
        "10000",
        "--seed",
        "7",
    ]);
    assert_eq!((code, field(&out, "verdict")), (0, "equal"));
    let (code, out) = run(&[
        "compare",
        "--alg-a",
        "t-noeta",
        "--alg-b",
        "t1-noeta",
        "--all-terms",
        "--trials",
        "10000",
        "--seed",
        "7",
    ]);
    assert_eq!((code, field(&out, "verdict")), (0, "equal"));
}

#[test]
fn compare_shrinks_witness() {
    let (code, out) = run(&[
        "compare",
        "--alg-a",
        "t1",
        "--alg-b",
        "t2",
        "--normal-forms",
        "--shrink",
    ]);
    assert_eq!(code, 1);
    assert!(field(&out, "shrunk-witness").len() <= field(&out, "witness").len());
}

#[test]
fn compare_needs_a_source() {
    assert_eq!(
        bracket(&["compare", "--alg-a", "t", "--alg-b", "t1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bracket(&[
            "compare",
            "--alg-a",
            "t",
            "--alg-b",
            "t1",
            "--normal-forms",
            "--all-terms"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn check_correctness() {
    for alg in ["fab", "tstar"] {
        let (code, out) = run(&["check", "--alg", alg, "--trials", "500", "--max-size", "25"]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(field(&out, "fv-pass"), "500");
        assert_eq!(field(&out, "not-equal"), "0");
    }
    let (code, out) = run(&["check", "--alg", "t", "--trials", "1", "--max-size", "1"]);
    assert_eq!((code, field(&out, "equal")), (0, "1"));
}

#[test]
fn check_reports_unknowns() {
    // A single fuel unit cannot normalize most terms.
    let (code, out) = run(&[
        "check",
        "--alg",
        "t",
        "--trials",
        "50",
        "--max-size",
        "10",
        "--fuel",
        "1",
    ]);
    assert_eq!(code, 3, "{out}");
    assert_eq!(field(&out, "not-equal"), "0");
}

#[test]
fn bench_rows() {
    let (code, out) = run(&["bench", "--alg", "abf", "--family", "fan", "--max-n", "10"]);
    assert_eq!(code, 0);
    let (rows, slope) = parse_csv(&out).unwrap();
    assert_eq!(rows.len(), 10);
    assert!(slope.is_some());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let (code, out) = run(&[
        "bench",
        "--alg",
        "t",
        "--family",
        "nested",
        "--max-n",
        "40",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let slope: f64 = out.trim().strip_prefix("slope=").unwrap().parse().unwrap();
    assert!(slope < 1.5, "{slope}");
    let (rows, written) = parse_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rows.len(), 40);
    assert!((written.unwrap() - slope).abs() < 1e-3);
    assert_eq!((rows[39].n, rows[39].output_size), (40, 41));
}

#[test]
fn bench_errors_exit_2() {
    assert_eq!(bracket(&["bench", "--alg", "t"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("t.csv");
    assert_eq!(
        bracket(&[
            "bench",
            "--alg",
            "t",
            "--family",
            "fan",
            "--max-n",
            "8",
            "--out",
            path.to_str().unwrap()
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn help_lists_algorithms() {
    let (code, out) = run(&["--help"]);
    assert_eq!(code, 0);
    for name in ["fab", "abcf1", "s1-noeta", "absdash1", "tstar2"] {
        assert!(
            out.lines().any(|l| l.trim_start().starts_with(name)),
            "{name} missing from\n{out}"
        );
    }
}
