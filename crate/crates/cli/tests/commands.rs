use std::path::PathBuf;

use cakecut_cli::run_with;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cakecut").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn solve_diagonal_four() {
    let (code, out, _) = run(&["solve", "--input", &data("diagonal4.pts"), "--exact"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("value 5/8 (0.625)"));
    assert!(out.contains("optimal true"));
}

#[test]
fn greedy_report_names_policy() {
    let (code, out, _) = run(&["solve", "--input", &data("diagonal4.pts"), "--greedy", "--policy", "increasing-x"]);
    assert_eq!(code, 0);
    assert!(out.contains("method heuristic\npolicy increasing-x\noptimal false"));
}

#[test]
fn table_rows() {
    let (code, out, _) = run(&["table", "--rmin", "2", "--rmax", "10", "--step", "1"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 9);
    for (row, r) in rows.iter().zip(2..) {
        let cols: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cols[0], r.to_string());
        assert_eq!(cols[3].parse::<f64>().unwrap(), (r as f64 / 2.0).exp2().ceil());
    }
}

#[test]
fn render_packing_is_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let pk = dir.path().join("best.pk");
    let svg = dir.path().join("fig.svg");
    let (code, report, _) = run(&["solve", "--input", &data("diagonal4.pts"), "--exact"]);
    assert_eq!(code, 0);
    std::fs::write(&pk, report).unwrap();
    let (code, _, err) = run(&[
        "render",
        "--input",
        &data("diagonal4.pts"),
        "--packing",
        pk.to_str().unwrap(),
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.attribute("version"), Some("1.1"));
    assert_eq!(root.attribute("viewBox"), Some("0 0 1000 1000"));
    let count = |tag: &str| root.descendants().filter(|n| n.has_tag_name(tag)).count();
    assert_eq!(count("rect"), 4);
    assert_eq!(count("circle"), 4);
}

#[test]
fn render_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("dec.svg");
    let (code, _, _) = run(&[
        "render",
        "--input",
        &data("diagonal4.pts"),
        "--decomposition",
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let strips = doc.descendants().filter(|n| n.attribute("class") == Some("strip")).count();
    assert_eq!(strips, 1);
    assert_eq!(doc.descendants().filter(|n| n.attribute("class") == Some("staircase")).count(), 1);
}

#[test]
fn render_rejects_foreign_anchor() {
    let dir = tempfile::tempdir().unwrap();
    let pk = dir.path().join("bad.pk");
    std::fs::write(&pk, "1/3 1/3 1 1\n").unwrap();
    let (code, _, err) = run(&[
        "render",
        "--input",
        &data("diagonal4.pts"),
        "--packing",
        pk.to_str().unwrap(),
        "--out",
        dir.path().join("x.svg").to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("1/3"), "{err}");
    assert!(!dir.path().join("x.svg").exists());
}

#[test]
fn diagnostics_name_the_token() {
    let (code, _, err) = run(&["solve", "--input", &data("diagonal4.pts"), "--frobnicate"]);
    assert_eq!(code, 1);
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("--frobnicate"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pts");
    std::fs::write(&bad, "0 0\n1/2 0.5x\n").unwrap();
    let (code, _, err) = run(&["decompose", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("0.5x") && err.contains("line 2"), "{err}");

    let missing = dir.path().join("nope.pts");
    let (code, _, err) = run(&["decompose", "--input", missing.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("nope.pts"));
}

#[test]
fn size_errors_exit_two() {
    let (code, _, err) = run(&["gridcase", "--n", "9"]);
    assert_eq!(code, 2);
    assert!(err.contains("too large"));

    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.pts");
    let text: String = (0..10).map(|i| format!("{i}/10 {i}/10\n")).collect();
    std::fs::write(&big, text).unwrap();
    let (code, _, _) = run(&["solve", "--input", big.to_str().unwrap(), "--exact"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["solve", "--input", big.to_str().unwrap(), "--greedy"]);
    assert_eq!(code, 2);
}

#[test]
fn exhausted_budget_exits_two() {
    let (code, _, err) = run(&["solve", "--input", &data("diagonal4.pts"), "--exact", "--budget", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"));
}

#[test]
fn checks_report_status() {
    let (code, out, _) = run(&["check", "--input", &data("diagonal4.pts"), "--hyperbola"]);
    assert_eq!(code, 0);
    assert!(out.contains("hyperbola holds"));
    let (code, out, _) = run(&["check", "--input", &data("diagonal4.pts"), "--lemma"]);
    assert_eq!(code, 0);
    assert!(out.contains("area_bound non-binding"));
    let (code, out, _) = run(&["check", "--input", &data("diagonal4.pts"), "--superadd"]);
    assert_eq!(code, 0);
    assert!(out.contains("superadditivity holds"));
    let (code, out, _) = run(&["check", "--input", &data("diagonal4.pts"), "--gains", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("gains "));
    let (code, _, _) = run(&["check", "--input", &data("diagonal4.pts"), "--hyperbola", "--lemma"]);
    assert_eq!(code, 1);
}

#[test]
fn gridcase_and_decompose() {
    let (code, out, _) = run(&["gridcase", "--n", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("permutations 2"));
    let (code, out, _) = run(&["decompose", "--input", &data("diagonal4.pts")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("k 1\n"));
}
