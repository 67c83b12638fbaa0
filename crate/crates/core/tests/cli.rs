use std::path::PathBuf;

use hermite_telescope::frontend::cli::{run, EXIT_INCOMPLETE, EXIT_INPUT, EXIT_OK};

fn problem(name: &str) -> String {
    format!("{}/problems/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("hermtel-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["hermtel"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn reduce_prints_one_form_per_statement() {
    let f = problem("sample-reduce.ct");
    let (code, out, _) = call(&["reduce", &f]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 4, "{out}");
    let (code, out, _) = call(&["reduce", &f, "--certificate"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().filter(|l| l.starts_with("certificate: ")).count(), 4);
}

#[test]
fn telescope_json_report() {
    let (code, out, _) = call(&["telescope", &problem("chebyshev-bessel.ct"), "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "complete");
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
    assert!(v["diagnostics"].as_array().unwrap().iter().any(|d| d.as_str().unwrap().starts_with("standard monomials")));
}

#[test]
fn degree_cap_exits_with_two() {
    let f = problem("pathological.ct");
    let (code, _, err) = call(&["telescope", &f, "--max-degree", "2"]);
    assert_eq!(code, EXIT_INCOMPLETE);
    assert!(err.contains("status: degree-capped"), "{err}");
    let (code, out, _) = call(&["telescope", &f]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 1, "{out}");
}

#[test]
fn parse_errors_report_line_and_column() {
    let f = scratch("bad.ct", "params p\nvar x\nreduce q by Dx\n");
    let (code, out, err) = call(&["reduce", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.is_empty());
    assert!(err.contains("line 3, column 8"), "{err}");
    let (code, out, _) = call(&["reduce", f.to_str().unwrap(), "--json"]);
    assert_eq!(code, EXIT_INPUT);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "error");
    std::fs::remove_file(f).unwrap();
}

#[test]
fn missing_file_and_bad_arguments() {
    let (code, _, err) = call(&["reduce", "/nonexistent/none.ct"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("none.ct"), "{err}");
    let (code, _, _) = call(&["telescope", &problem("hermite.ct"), "--order", "lex"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("telescope"));
}

#[test]
fn exceptional_and_localdata() {
    let f = scratch("x10.ct", "var x\nreduce 1 by x^10*Dx\n");
    let f = f.to_str().unwrap();
    let (code, out, _) = call(&["exceptional", f]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("dimension: 9"));
    let (code, out, _) = call(&["localdata", f, "--place", "x"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("sigma: 9"), "{out}");
    let (code, out, _) = call(&["localdata", f, "--place", "inf"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("place: inf"), "{out}");
    let (code, _, err) = call(&["localdata", f, "--place", "x^2"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("squarefree"), "{err}");
    std::fs::remove_file(f).unwrap();
}

#[test]
fn reduce_without_statements_is_an_input_error() {
    let (code, _, err) = call(&["reduce", &problem("hermite.ct")]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("no `reduce` statement"), "{err}");
}
