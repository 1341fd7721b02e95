//! End-to-end runs of the compiled binary: every subcommand and exit code.

use std::path::PathBuf;
use std::process::{Command, Output};

use etcensus::graph::CubicGraph;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_etcensus"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn census_of_k4_exits_zero_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.g6");
    std::fs::write(&corpus, "# K4\nC~\n").unwrap();
    let out1 = dir.path().join("a.jsonl");
    let out2 = dir.path().join("b.jsonl");
    for out in [&out1, &out2] {
        let o = run(&[
            "census",
            corpus.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{o:?}");
    }
    let a = std::fs::read(&out1).unwrap();
    assert_eq!(a, std::fs::read(&out2).unwrap(), "census output not byte-identical");

    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    let header: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(header["tool"], "etcensus");
    assert!(header["corpus_sha256"].as_str().unwrap().len() == 64);
    let record: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(record["graph"], "K4");
    assert_eq!(record["counts"], serde_json::json!([4, 6, 4]));
    assert_eq!(record["fe"]["edge_stab_order"], 4);
    assert!(lines.next().is_none());
}

#[test]
fn census_missing_corpus_is_input_error() {
    let o = run(&["census", "/nonexistent/corpus.g6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn census_with_bad_types_flag_is_input_error() {
    let o = run(&["census", "--types", "bogus", "x.g6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn census_continues_past_a_failing_graph() {
    // Triangular prism: cubic and connected but not edge-transitive.
    let prism = CubicGraph::from_edges(
        6,
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.g6");
    std::fs::write(
        &corpus,
        format!("# prism\n{}\n# K4\nC~\n", prism.to_graph6()),
    )
    .unwrap();
    let out = dir.path().join("out.jsonl");
    let o = run(&[
        "census",
        corpus.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2), "{o:?}");
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"graph\":\"K4\""), "surviving graph missing");
}

#[test]
fn census_ceiling_is_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.g6");
    std::fs::write(&corpus, "C~\n").unwrap();
    let o = run(&["census", "--max-aut-order", "5", corpus.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{o:?}");
}

#[test]
fn verify_fixture_reports_published_values() {
    let o = run(&["verify-fixture", data("x22.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let s = stdout(&o);
    assert!(s.contains("counts: (36, 216, 144)"), "{s}");
    assert!(s.contains("euler_characteristic: -36"));
    assert!(s.contains("orientable: true"));
    assert!(s.contains("vertex_degrees: 12"));
    assert!(s.contains("aut_order: 432"));
    assert!(s.contains("fe: (2,2)"));

    let o = run(&["verify-fixture", data("tetrahedron.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("euler_characteristic: 2"));
    assert!(s.contains("fe: (1,4)"));
}

#[test]
fn verify_fixture_rejects_open_surface() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"faces": [[1,2,3],[1,2,4]]}"#).unwrap();
    let o = run(&["verify-fixture", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{o:?}");
    assert!(String::from_utf8_lossy(&o.stderr).contains("edge"));
}

#[test]
fn verify_fixture_rejects_malformed_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("garbage.json");
    std::fs::write(&path, "{ not json").unwrap();
    let o = run(&["verify-fixture", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_check_passes_on_k4_and_cube() {
    for g6 in ["C~", "Gr`HOk"] {
        let o = run(&["oracle-check", g6]);
        assert_eq!(o.status.code(), Some(0), "{g6}: {o:?}");
        assert!(stdout(&o).contains("matched: true"));
    }
}

#[test]
fn oracle_check_beyond_bound_is_exit_three() {
    let o = run(&["oracle-check", "--oracle-bound", "3", "C~"]);
    assert_eq!(o.status.code(), Some(3), "{o:?}");
}

#[test]
fn oracle_check_bad_graph_is_input_error() {
    let o = run(&["oracle-check", "%%%"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn relabel_check_passes_on_k4() {
    let o = run(&["relabel-check", "C~", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    assert!(stdout(&o).contains("matched: true"));
}
