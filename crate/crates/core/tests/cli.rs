//! End-to-end runs of the command-line front end.

use iso_trees::cli::{run, EXIT_EXCEPTION, EXIT_INVALID, EXIT_OK};
use iso_trees::{parse_edge_list, Tree};

fn invoke(args: &[&str], input: &str) -> (i32, String, String) {
    let mut argv = vec!["iso-trees"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn p7() -> String {
    Tree::path(7).to_edge_list()
}

const O7: &str = "0 1\n1 2\n0 3\n3 4\n0 5\n5 6\n";

#[test]
fn solve_on_p7() {
    let (code, out, _) = invoke(&["solve", "--k", "3"], &p7());
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), r#"{"value":1,"witness":[3]}"#);
    let (code, out, _) = invoke(
        &["solve", "--k", "3", "--engine", "both", "--independent"],
        &p7(),
    );
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), r#"{"value":1,"witness":[3]}"#);
}

#[test]
fn o7_is_excluded_for_six_colors() {
    let (code, out, _) = invoke(&["color", "--k", "5"], O7);
    assert_eq!(code, EXIT_EXCEPTION);
    assert_eq!(out.trim(), r#"{"exception":"O_7"}"#);
}

#[test]
fn verify_set_on_p7() {
    let (code, out, _) = invoke(&["verify", "--k", "2", "--set", "1,5"], &p7());
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), r#"{"valid":true}"#);
    let (_, out, _) = invoke(&["verify", "--k", "2", "--set", "1"], &p7());
    assert!(out.starts_with(r#"{"valid":false"#), "{out}");
    let (_, out, _) = invoke(
        &["verify", "--k", "1", "--set", "1,2,5", "--independent"],
        &p7(),
    );
    assert!(out.contains("adjacent_pair"), "{out}");
}

#[test]
fn verify_coloring() {
    let (code, out, _) = invoke(
        &["verify", "--k", "2", "--coloring", "1,2,3,1,2,3,1"],
        &p7(),
    );
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), r#"{"valid":true}"#);
    let (_, out, _) = invoke(
        &["verify", "--k", "2", "--coloring", "1,1,2,1,2,1,2"],
        &p7(),
    );
    assert!(out.contains("adjacent_pair"), "{out}");
}

#[test]
fn color_certifies() {
    for k in ["2", "3", "4", "5"] {
        let (code, out, _) = invoke(&["color", "--k", k], &p7());
        assert_eq!(code, EXIT_OK, "k={k}");
        assert!(out.contains(r#""certificate":{"valid":true}"#), "{out}");
    }
    let (code, out, _) = invoke(&["color", "--k", "3"], "0 1\n1 2\n");
    assert_eq!(
        (code, out.trim()),
        (EXIT_EXCEPTION, r#"{"exception":"P_3"}"#)
    );
    let (code, out, _) = invoke(&["color", "--k", "5", "--search", "--l", "6"], O7);
    assert_eq!(
        (code, out.trim()),
        (
            EXIT_OK,
            r#"{"found":false,"num_colors":6,"spec":{"all_k":5}}"#
        )
    );
    let (code, out, _) = invoke(&["--dot", "color", "--k", "4"], &p7());
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("graph T {"));
}

#[test]
fn bound_reports_trace() {
    let (code, out, _) = invoke(&["bound", "--k", "2"], &p7());
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["bound"], 2);
    assert!(v["size"].as_u64().unwrap() <= 2);
    assert!(!v["trace"].as_array().unwrap().is_empty());
    let (code, out, _) = invoke(&["bound", "--k", "7"], &p7());
    assert_eq!(code, EXIT_EXCEPTION);
    assert!(out.contains("ORDER_EQUALS_K"));
}

#[test]
fn invalid_input_exits_one() {
    assert_eq!(
        invoke(&["solve", "--k", "2"], "0 1\n1 2\n2 0\n").0,
        EXIT_INVALID
    );
    assert_eq!(invoke(&["solve", "--k", "2"], "zero one\n").0, EXIT_INVALID);
    assert_eq!(invoke(&["solve"], &p7()).0, EXIT_INVALID);
    assert_eq!(invoke(&["frobnicate"], "").0, EXIT_INVALID);
    assert_eq!(
        invoke(&["verify", "--k", "2", "--set", "9"], &p7()).0,
        EXIT_INVALID
    );
    assert_eq!(invoke(&["gen", "hk", "--k", "6"], "").0, EXIT_INVALID);
    // Above the brute-force cap.
    let big = Tree::path(40).to_edge_list();
    assert_eq!(
        invoke(&["solve", "--k", "2", "--engine", "oracle"], &big).0,
        EXIT_INVALID
    );
    assert_eq!(invoke(&["solve", "--k", "2"], &big).0, EXIT_OK);
}

#[test]
fn gen_round_trips() {
    for args in [
        vec!["gen", "hk", "--k", "8"],
        vec!["gen", "gap", "--b", "3"],
        vec!["gen", "random", "--n", "30", "--seed", "4"],
        vec!["gen", "extremal", "--k", "3", "--n", "4"],
        vec!["gen", "path", "--n", "1"],
    ] {
        let (code, out, _) = invoke(&args, "");
        assert_eq!(code, EXIT_OK);
        assert_eq!(
            parse_edge_list(&out).unwrap().to_edge_list(),
            out,
            "{args:?}"
        );
    }
    let (_, out, _) = invoke(&["gen", "hk", "--k", "7"], "");
    assert_eq!(parse_edge_list(&out).unwrap().n(), 10);
}

#[test]
fn enum_streams_parseable_trees() {
    let (code, out, _) = invoke(&["enum", "--n", "6"], "");
    assert_eq!(code, EXIT_OK);
    let chunks: Vec<&str> = out.split("# tree").skip(1).collect();
    assert_eq!(chunks.len(), 6);
    for chunk in chunks {
        let body = chunk.split_once('\n').unwrap().1;
        assert_eq!(parse_edge_list(body).unwrap().n(), 6);
    }
    assert_eq!(invoke(&["enum", "--n", "30"], "").0, EXIT_INVALID);
}

#[test]
fn suite_is_deterministic() {
    let first = invoke(&["suite", "--only", "6"], "");
    let second = invoke(&["suite", "--only", "6"], "");
    assert_eq!(first.0, EXIT_OK);
    assert_eq!(first.1, second.1);
    assert!(first.1.starts_with("criterion 6 PASS"));
    assert_eq!(invoke(&["suite", "--only", "9"], "").0, EXIT_INVALID);
}
