use std::fs;
use std::process::{Command, Output};

fn tensordeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensordeg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn degree_of_order_two_subgroup_in_c4() {
    let o = tensordeg(&["degree", "C4", "--subgroup", "a^2", "--n", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(
        text.lines().last().unwrap().ends_with("= 1/1 (1.000)"),
        "{text}"
    );
}

#[test]
fn degree_of_c2() {
    let o = tensordeg(&["degree", "C2", "--n", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o)
        .lines()
        .last()
        .unwrap()
        .ends_with("= 3/4 (0.750)"));
}

#[test]
fn degree_of_d8_example_subgroup() {
    let o = tensordeg(&["degree", "D8", "--subgroup", "a^2, a*b", "--n", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("d4⊗(H,G) = 1/1 (1.000)"));
}

#[test]
fn info_and_tensor() {
    let o = tensordeg(&["info", "S3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(
        text.contains("order: 6")
            && text.contains("subgroups: 6")
            && text.contains("nilpotency class: none")
    );

    let o = tensordeg(&["tensor", "Q8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("tensor square order: 64"), "{text}");
    assert!(text.contains("J2 order: 32"), "{text}");

    let o = tensordeg(&["tensor", "C2", "--dump-table"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("0:"));
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        &["degree", "D9"][..],
        &["info", "Z4"],
        &["info", "C20"],
        &["degree", "C4", "--subgroup", "q"],
        &["degree", "C4", "--n", "0"],
        &["tensor", "D8", "--max-cosets", "10"],
        &["verify", "--theorems", "thm-9.9"],
        &["verify", "--jobs", "0"],
        &["verify", "--corpus", "/nonexistent/corpus.txt"],
        &["frobnicate"],
    ] {
        let o = tensordeg(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn example_discrepancy_is_flagged_not_failed() {
    let o = tensordeg(&["verify", "--corpus", "builtin", "--theorems", "ex-3.3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(
        text.matches("\"note\": \"paper-example-discrepancy\"")
            .count(),
        1
    );
    assert!(text.contains("\"rhs\": \"3/32\""));
}

#[test]
fn full_suite_reports_violations_with_exit_one() {
    let o = tensordeg(&["verify", "--format", "table"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL thm-2.6")));
}

#[test]
fn reports_are_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("one.json");
    let b = dir.path().join("eight.json");
    tensordeg(&["verify", "--jobs", "1", "--out", a.to_str().unwrap()]);
    tensordeg(&["verify", "--jobs", "8", "--out", b.to_str().unwrap()]);
    let (a, b) = (fs::read(a).unwrap(), fs::read(b).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn corpus_file_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.txt");
    fs::write(&corpus, "# small groups\nC1\nS3   # symmetric\n\nC2 x C2\n").unwrap();
    let o = tensordeg(&[
        "verify",
        "--corpus",
        corpus.to_str().unwrap(),
        "--theorems",
        "thm-2.2,thm-quot",
        "--format",
        "csv",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = stdout(&o);
    assert!(text.starts_with("id,group,subgroup,normal,n,relation,lhs,lhs_decimal,rhs,rhs_decimal,holds,skipped,note,witness\n"));
    assert!(text.contains("thm-2.2,S3,"));
    assert!(text.contains("thm-quot,C2xC2,"));
}

#[test]
fn coset_limit_skips_instead_of_crashing() {
    let o = tensordeg(&["verify", "--max-cosets", "10", "--format", "table"]);
    assert!(matches!(o.status.code(), Some(0 | 1)));
    assert!(stdout(&o).lines().any(|l| l.starts_with("SKIP")));
}
