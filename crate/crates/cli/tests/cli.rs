use std::process::{Command, Output};

fn facering(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_facering")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn skips_prints_the_worked_table() {
    let out = facering(&["skips", "2 3 4 6 7 11 13 16 17 18", "--n", "19"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split_whitespace().collect()).collect();
    assert!(rows.contains(&vec!["m'_i", "0", "0", "0", "1", "1", "4", "5", "7", "7", "7"]));
    let expected = [
        ["0", "0", "1", "19"],
        ["1", "3", "5", "15"],
        ["2", "5", "8", "12"],
        ["3", "5", "9", "11"],
        ["4", "5", "10", "10"],
        ["5", "6", "12", "8"],
        ["6", "7", "14", "6"],
        ["7", "7", "15", "5"],
        ["8", "10", "19", "1"],
    ];
    for row in expected {
        assert!(rows.contains(&row.to_vec()), "missing {row:?} in\n{text}");
    }
}

#[test]
fn skips_rejects_malformed_sequences() {
    let out = facering(&["skips", "3", "2", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));
}

#[test]
fn analyze_pentagon() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.txt");
    std::fs::write(&path, "1 2\n2 3\n3 4\n4 5\n5 1\n").unwrap();
    let out = facering(&["analyze", path.to_str().unwrap(), "--format", "doc"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["e"], 5);
    for report in doc["reports"].as_array().unwrap() {
        assert_eq!(report["shifts"]["m"], serde_json::json!([2, 3, 5]));
        assert_eq!(report["shifts"]["M"], serde_json::json!([2, 3, 5]));
        assert_eq!(report["connectivity"]["q"], serde_json::json!([5, 2]));
        assert!(report["verdicts"].as_array().unwrap().iter().all(|v| v["applicable"] == false || v["holds"] == true));
    }
}

#[test]
fn analyze_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let out = facering(&["analyze", "--family", "cross_polytope_boundary 3", "--format", "doc", "--out", first.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let again = facering(&["analyze", first.to_str().unwrap(), "--format", "doc"]);
    assert_eq!(stdout(&again), std::fs::read_to_string(&first).unwrap());
}

#[test]
fn full_simplex_is_a_notice() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("simplex.txt");
    std::fs::write(&path, "a b c d\n").unwrap();
    let out = facering(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("degenerate"));
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "1 2\n2, 3\n").unwrap();
    let out = facering(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(facering(&["analyze", "--field", "4", "--family", "cycle 5"]).status.code(), Some(2));
    assert_eq!(facering(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let octa = facering(&["verify", "--family", "cross_polytope_boundary 3"]);
    assert_eq!(octa.status.code(), Some(0));
    let text = stdout(&octa);
    assert!(text.contains("[PASS] self_dual_shifts") && text.contains("[PASS] max_shift_skips"));
    assert!(!text.contains("FAIL"));

    let rp2 = facering(&["verify", "--family", "rp2_six_vertex", "--field", "0", "--field", "2", "--field", "3"]);
    assert_eq!(rp2.status.code(), Some(0));
    let cm_lines: Vec<String> = stdout(&rp2).lines().filter(|l| l.starts_with("pure:")).map(String::from).collect();
    assert_eq!(cm_lines.len(), 3);
    assert!(cm_lines[0].contains("CM: true") && cm_lines[1].contains("CM: false") && cm_lines[2].contains("CM: true"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("edges.txt");
    std::fs::write(&path, "1 2\n3 4\n").unwrap();
    let edges = facering(&["verify", path.to_str().unwrap()]);
    assert_eq!(edges.status.code(), Some(0));
    assert!(stdout(&edges).contains("[n/a ] lower_bound"));
}

#[test]
fn generate_writes_facets() {
    let out = facering(&["generate", "cross_polytope_boundary", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let facets: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    assert_eq!(facets.len(), 8, "{text}");
    assert!(facets.contains(&"1 2 3") && facets.contains(&"4 5 6"));
}

#[test]
fn search_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for path in [&a, &b] {
        let out = facering(&["search", "random_pure", "n=8", "d=2", "--trials", "50", "--seed", "1", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (a, b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 51);
}
