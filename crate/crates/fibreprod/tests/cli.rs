use std::path::Path;
use std::process::Command;

use fibreprod::run::CertificateJson;

fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_fibreprod")).args(args).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

/// Output without the version line.
fn body(text: &str) -> String {
    let (first, rest) = text.split_once('\n').unwrap();
    assert!(first.starts_with("# fibreprod ") || first == "{", "no version header in {first:?}");
    rest.lines().filter(|l| !l.trim_start().starts_with("\"version\"")).collect::<Vec<_>>().join("\n")
}

/// Columns `variety p points trU` of a `traces` report, dropping the source.
fn table_rows(text: &str) -> Vec<String> {
    text.lines()
        .skip(2)
        .map(|l| {
            let c: Vec<&str> = l.split('\t').collect();
            [c[0], c[1], c[2], c[5]].join("\t")
        })
        .collect()
}

#[test]
fn traces_reproduce_the_fixture_in_row_order() {
    let fixture = include_str!("fixtures/tables.tsv");
    for variety in ["W1", "W2", "W3", "Hesse"] {
        let expected: Vec<String> =
            fixture.lines().filter(|l| l.starts_with(&format!("{variety}\t"))).map(str::to_string).collect();
        let (out, code) = run(&["traces", "--variety", variety]);
        assert_eq!(code, 0);
        assert_eq!(table_rows(&out), expected, "{variety}");
    }
}

#[test]
fn exit_codes_follow_verdicts() {
    for (variety, code) in [("W1", 0), ("W2", 2), ("W3", 0), ("Hesse", 0)] {
        let (out, c) = run(&["certify", "--variety", variety]);
        assert_eq!(c, code, "{variety}\n{out}");
    }
    let (out, _) = run(&["certify", "--variety", "W2"]);
    assert!(out.contains("conjectural") && !out.contains("witness"));
    assert_eq!(run(&["count", "--variety", "W9"]).1, 4);
    assert_eq!(run(&["count", "--variety", "W1", "--primes", "9"]).1, 4);
    assert_eq!(run(&["group-check"]).1, 0);
}

#[test]
fn bad_primes_are_refused_per_row() {
    let (out, code) = run(&["count", "--variety", "W2", "--primes", "3,11"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(2).collect();
    assert!(rows[0].starts_with("W2\t3\t550\t"));
    assert!(rows[1].starts_with("W2\t11\t-\trefused: bad reduction at 11"), "{}", rows[1]);
}

#[test]
fn warm_cache_equals_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("counts.tsv");
    let cache = cache.to_str().unwrap();
    let args = |format| ["traces", "--variety", "Hesse", "--primes", "5-37", "--format", format, "--cache", cache];

    let (cold, _) = run(&args("tsv"));
    assert!(Path::new(cache).exists());
    let (warm, _) = run(&args("tsv"));
    assert!(cold.lines().skip(2).all(|l| l.ends_with("\tcounted")));
    assert!(warm.lines().skip(2).all(|l| l.ends_with("\tcache")));
    assert_eq!(table_rows(&cold), table_rows(&warm));

    let (plain, _) = run(&["traces", "--variety", "Hesse", "--primes", "5-37"]);
    assert_eq!(body(&plain), body(&cold));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["traces", "--variety", "W3", "--format", "json"][..],
        &["certify", "--variety", "W1"],
        &["zeta", "--variety", "Hesse", "--format", "json"],
        &["group-check", "--format", "json"],
    ] {
        let (a, _) = run(args);
        let (b, _) = run(args);
        assert_eq!(body(&a), body(&b), "{args:?}");
        assert_eq!(a, b);
    }
}

#[test]
fn json_certificate_verifies_after_reading_back() {
    let (out, code) = run(&["certify", "--variety", "W3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    let cert: CertificateJson = serde_json::from_value(v["certificate"].clone()).unwrap();
    cert.to_certificate().unwrap().verify().unwrap();

    let mut forged = cert.clone();
    let w = forged.witnesses.iter_mut().find(|w| w.kind == "quartic").unwrap();
    w.p = 3;
    assert!(forged.to_certificate().unwrap().verify().is_err());
}

#[test]
fn data_dir_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let tsv =
        include_str!("../data/newforms.tsv").replace("f22\t4\t22\t3\t-7\texpansion", "f22\t4\t22\t3\t-6\texpansion");
    std::fs::write(dir.path().join("newforms.tsv"), tsv).unwrap();
    let dir = dir.path().to_str().unwrap();
    // a_3 = -6 also breaks a_9 = a_3^2 - 27, so the file is rejected.
    assert_eq!(run(&["certify", "--variety", "W3", "--data-dir", dir]).1, 4);

    // A well-formed but wrong trace-table coefficient is a mismatch.
    let other = tempfile::tempdir().unwrap();
    let tsv = include_str!("../data/newforms.tsv").replace("f55\t4\t55\t41\t-478", "f55\t4\t55\t41\t-476");
    std::fs::write(other.path().join("newforms.tsv"), tsv).unwrap();
    let (out, code) = run(&["certify", "--variety", "W1", "--data-dir", other.path().to_str().unwrap()]);
    assert_eq!(code, 3, "{out}");
    assert!(out.contains("41\t-478\t-476\tfalse"));
}
