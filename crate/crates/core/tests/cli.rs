use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn jssec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jssec")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn run_trace_prints_values_and_leaks() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "a.js", "function f() { leak = 1; }\nf();\n1 + 1;\n");
    let o = jssec(&["run", "--trace", &file]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "undefined\n2\n");
    assert!(stderr(&o).contains("R001 global 'leak' was created at run time"));
}

#[test]
fn run_without_trace_is_quiet() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "a.js", "1;\n");
    let o = jssec(&["run", &file]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
}

#[test]
fn run_error_exit_codes() {
    let dir = TempDir::new().unwrap();
    let runtime = write(&dir, "r.js", "var p;\np.age;\n");
    let o = jssec(&["run", &runtime]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains(":2:1: TypeError"), "{}", stderr(&o));

    let syntax = write(&dir, "s.js", "var = ;");
    assert_eq!(jssec(&["run", &syntax]).status.code(), Some(2));
    assert_eq!(jssec(&["run", "/nonexistent/x.js"]).status.code(), Some(2));
}

#[test]
fn lint_text_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let clean = write(&dir, "clean.js", "var a = 1;\na === 1;\n");
    let o = jssec(&["lint", &clean]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());

    let dirty = write(&dir, "dirty.js", "with (o) { x = 1; }\n");
    let o = jssec(&["lint", &dirty]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("dirty.js:1:1: W002"), "{}", stdout(&o));

    assert_eq!(jssec(&["lint", "--rules", "W999", &dirty]).status.code(), Some(2));
    let bad = write(&dir, "bad.js", "var = ;");
    assert_eq!(jssec(&["lint", &bad]).status.code(), Some(2));
}

#[test]
fn lint_rule_selection() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "a.js", "x = 1;\nx == 1;\n");
    let o = jssec(&["lint", "--rules", "W005", &file]);
    let text = stdout(&o);
    assert!(text.contains("W005") && !text.contains("W001"), "{text}");
}

#[test]
fn lint_json_has_fixed_keys() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "a.js", "x = 1;\nx == 1;\n");
    let o = jssec(&["lint", "--format", "json", &file]);
    assert_eq!(o.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let items = json.as_array().unwrap();
    assert_eq!(items.len(), 2);
    for item in items {
        let mut keys: Vec<&str> = item.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["col", "endCol", "endLine", "file", "line", "message", "rule", "severity"]);
    }
    assert_eq!(items[0]["rule"], "W001");
    assert_eq!(items[0]["line"], 1);
    assert_eq!(items[1]["rule"], "W005");
}

#[test]
fn test_command_summarises() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let o = jssec(&["test", corpus.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().last().unwrap().ends_with("0 files failed"));

    let dir = TempDir::new().unwrap();
    write(&dir, "wrong.js", "1 + 1; // answers 3\n");
    let o = jssec(&["test", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("expected 3, got 2"));
}

#[test]
fn test_filter() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let o = jssec(&["test", "--filter", "with_over", corpus.to_str().unwrap()]);
    assert!(stdout(&o).lines().last().unwrap().starts_with("1 files"), "{}", stdout(&o));
}
