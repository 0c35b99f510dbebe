use std::path::{Path, PathBuf};
use std::process::Command;

use modulus_cli::ast::Script;
use modulus_cli::{parse, run, Options};
use modulus_core::MonomialOrder;

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn docs_script() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/aisoc.mod")
}

fn scripts() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "mod"))
        .collect();
    out.sort();
    out.push(docs_script());
    out
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn without_positions(mut s: Script) -> Script {
    for item in &mut s.items {
        item.pos = Default::default();
    }
    s
}

#[test]
fn print_after_parse_is_the_identity() {
    for path in scripts() {
        let text = read(&path);
        let script = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(script.to_string(), text, "{}", path.display());
    }
}

#[test]
fn parse_after_print_ignores_layout() {
    for path in scripts() {
        let text = read(&path);
        let squeezed = text.split_whitespace().collect::<Vec<_>>().join(" ");
        let a = without_positions(parse(&text).unwrap());
        let b = without_positions(parse(&squeezed).unwrap());
        assert_eq!(a, b, "{}", path.display());
        assert_eq!(without_positions(parse(&a.to_string()).unwrap()), a);
    }
}

/// Compares the canonical report of every script with its `.out` file; set
/// `UPDATE_GOLDEN=1` to rewrite them.
#[test]
fn reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for path in scripts() {
        let report = run(&parse(&read(&path)).unwrap(), &Options::default());
        let out = path.with_extension("out");
        let got = report.canonical_text();
        if update {
            std::fs::write(&out, &got).unwrap();
            continue;
        }
        assert_eq!(got, read(&out), "{}", path.display());
    }
}

#[test]
fn reports_are_byte_stable() {
    for path in scripts() {
        let script = parse(&read(&path)).unwrap();
        let a = run(&script, &Options::default());
        let b = run(&script, &Options::default());
        assert_eq!(a.canonical_text(), b.canonical_text());
        assert_eq!(a.canonical_json().to_string(), b.canonical_json().to_string());
    }
}

#[test]
fn verdicts_do_not_depend_on_the_order() {
    for path in scripts() {
        let script = parse(&read(&path)).unwrap();
        let a = run(&script, &Options::default());
        let b = run(&script, &Options { order: MonomialOrder::Lex, max_degree: None });
        let verdicts = |r: &modulus_cli::Report| r.entries.iter().map(|e| e.verdict).collect::<Vec<_>>();
        assert_eq!(verdicts(&a), verdicts(&b), "{}", path.display());
        assert_eq!(a.exit_code(), b.exit_code());
    }
}

fn modulus(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_modulus")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn fixture(name: &str) -> String {
    fixture_dir().join(name).display().to_string()
}

#[test]
fn aisoc_script_passes() {
    let (code, stdout, stderr) = modulus(&[&docs_script().display().to_string()]);
    assert_eq!(code, 0, "{stderr}");
    assert!(stdout.contains("[pass] verify aisoc Q[x] x;"));
    assert!(stdout.contains("divisor triple: (x, x, s); expected (f, f, 1/t = s): yes"));
    assert!(stdout.contains("\n---\ntiming: "));
}

#[test]
fn false_divisor_inequality_exits_one() {
    let (code, stdout, _) = modulus(&[&fixture("failing.mod")]);
    assert_eq!(code, 1);
    assert!(stdout.contains("[FAIL] divisor geq Q[x] : x >= x^2;"));
}

#[test]
fn hard_error_exits_two_and_names_the_command() {
    let (code, stdout, stderr) = modulus(&[&fixture("error.mod")]);
    assert_eq!(code, 2);
    assert!(stderr.contains("4:1: `morphism f : P -> S`: `S` is not defined"), "{stderr}");
    assert!(!stdout.contains("verify minimal"));
}

#[test]
fn parse_error_exits_two_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.mod");
    std::fs::write(&p, "ring R = Q[x];\npair P { chart { ring R; ideal 0; divisor ; } }\n").unwrap();
    let (code, stdout, stderr) = modulus(&[&p.display().to_string()]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("bad.mod:2:43: expected expression"), "{stderr}");
}

#[test]
fn json_mirror_and_flags() {
    let (code, stdout, _) = modulus(&["--json", "--order", "lex", &fixture("cycles.mod")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["report"]["passed"], serde_json::json!(true));
    assert_eq!(v["report"]["entries"][0]["verdict"], serde_json::json!("pass"));
    assert!(v["timing"]["total_ms"].is_number());

    let (_, stdout, _) = modulus(&["--max-degree", "3", &fixture("cycles.mod")]);
    assert!(stdout.contains("macaulay oracle at degree 3: no certificate (disagrees)"));
}
