use std::path::PathBuf;
use std::process::{Command, Output};

fn instance(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "instances", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn inlim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inlim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(out: &'a str, key: &str) -> Option<&'a str> {
    out.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

fn temp_file(name: &str, contents: &str) -> String {
    let p = std::env::temp_dir().join(format!("inlim-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn path_example_is_nonempty_with_lowest_witness() {
    let o = inlim(&["solve", &instance("path_example.json"), "--witness"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert_eq!(out.lines().last(), Some("NONEMPTY"));
    assert_eq!(
        value(&out, "witness"),
        Some(r#"{"vertex":["c","β","r"],"edge":["y","v"]}"#)
    );
    for key in ["n", "w", "k", "section_tests", "wall_ms"] {
        assert!(value(&out, key).is_some(), "missing {key}");
    }
}

#[test]
fn cycle_example_is_empty_after_two_tests() {
    let o = inlim(&["solve", &instance("cycle_example.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "k"), Some("1"));
    assert_eq!(value(&out, "section_tests"), Some("2"));
    assert_eq!(out.lines().last(), Some("EMPTY"));
}

#[test]
fn supplied_fvs_is_used_and_checked() {
    let o = inlim(&["solve", &instance("cycle_example.json"), "--fvs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "fvs"), Some("2"));
    let o = inlim(&["solve", &instance("cycle_example.json"), "--fvs", ""]);
    assert_eq!(o.status.code(), Some(2));
    let o = inlim(&["solve", &instance("cycle_example.json"), "--fvs", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fvs_budget_errors() {
    let o = inlim(&["solve", &instance("cycle_example.json"), "--fvs-max", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("feedback vertex set"));
}

#[test]
fn cospan_is_empty() {
    let o = inlim(&["solve", &instance("cospan.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("EMPTY"));
}

#[test]
fn malformed_legs_exit_2_with_violations() {
    let o = inlim(&["solve", &instance("malformed_legs.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing leg from vertex 1"));
    let bad_entry = temp_file(
        "entry.json",
        r#"{"shape": {"n": 2, "edges": [[0, 1]]}, "vertex_sets": [{"size": 2}, {"size": 2}], "edge_sets": [{"size": 2}],
            "legs": [{"edge": 0, "endpoint": 0, "map": [0, 5]}, {"edge": 0, "endpoint": 1, "map": [0]}]}"#,
    );
    let o = inlim(&["solve", &bad_entry]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("maps to 5"), "{err}");
    assert!(err.contains("source size 1"), "{err}");
}

#[test]
fn unparseable_input_exits_2() {
    let f = temp_file("garbage.json", "{not json");
    assert_eq!(inlim(&["solve", &f]).status.code(), Some(2));
    assert_eq!(
        inlim(&["solve", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
    let loops = temp_file(
        "loop.json",
        r#"{"shape": {"n": 1, "edges": [[0, 0]]}, "vertex_sets": [{"size": 1}], "edge_sets": [{"size": 1}], "legs": []}"#,
    );
    assert_eq!(inlim(&["solve", &loops]).status.code(), Some(2));
}

#[test]
fn deterministic_output_is_byte_identical() {
    let args = [
        "solve",
        &instance("cycle_example_nonempty.json"),
        "--witness",
        "--deterministic",
    ];
    let a = inlim(&args);
    let b = inlim(&args);
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn jobs_do_not_change_the_verdict() {
    for name in ["cycle_example.json", "cycle_example_nonempty.json"] {
        let one = inlim(&["solve", &instance(name)]);
        let four = inlim(&["solve", &instance(name), "--jobs", "4"]);
        assert_eq!(one.status.code(), four.status.code());
    }
}

#[test]
fn all_tests_counts_every_section() {
    let o = inlim(&[
        "solve",
        &instance("cycle_example_nonempty.json"),
        "--all-tests",
    ]);
    assert_eq!(value(&stdout(&o), "section_tests"), Some("2"));
}

#[test]
fn oracle_counts_families() {
    let o = inlim(&["oracle", &instance("path_example.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(value(&stdout(&o), "families"), Some("2"));
    let o = inlim(&["oracle", &instance("cycle_example.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = inlim(&["oracle", &instance("path_example.json"), "--cap", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn image_of_path_example() {
    let o = inlim(&["image", &instance("path_example.json")]);
    assert_eq!(o.status.code(), Some(0));
    let got: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let want: serde_json::Value = serde_json::from_str(
        r#"{"shape": {"n": 3, "edges": [[0, 1], [1, 2]]},
            "vertex_sets": [{"elements": ["c"]}, {"elements": ["β"]}, {"elements": ["r", "s"]}],
            "edge_sets": [{"elements": ["y"]}, {"elements": ["v"]}],
            "legs": [{"edge": 0, "endpoint": 0, "map": {"c": "y"}},
                     {"edge": 0, "endpoint": 1, "map": {"β": "y"}},
                     {"edge": 1, "endpoint": 1, "map": {"β": "v"}},
                     {"edge": 1, "endpoint": 2, "map": {"r": "v", "s": "v"}}]}"#,
    )
    .unwrap();
    assert_eq!(got, want);
}

#[test]
fn image_of_edgeless_diagram_echoes_input() {
    let text = r#"{"shape": {"n": 2, "edges": []}, "vertex_sets": [{"size": 2}, {"elements": ["p", "q"]}], "edge_sets": [], "legs": []}"#;
    let f = temp_file("edgeless.json", text);
    let o = inlim(&["image", &f]);
    let got: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        got,
        serde_json::from_str::<serde_json::Value>(text).unwrap()
    );
}

#[test]
fn image_rejects_cyclic_shapes() {
    assert_eq!(
        inlim(&["image", &instance("cycle_example.json")])
            .status
            .code(),
        Some(2)
    );
}

fn check_coloring(out: &str, edges: &[(usize, usize)], colors: usize) {
    let map: Vec<usize> = serde_json::from_str(value(out, "map").expect("map line")).unwrap();
    for &(u, v) in edges {
        assert_ne!(map[u], map[v]);
    }
    assert!(map.iter().all(|&c| c < colors));
}

#[test]
fn hom_examples() {
    let o = inlim(&["hom", &instance("k4_decomposition.json")]);
    assert_eq!(stdout(&o).lines().last(), Some("NO-HOM"));
    assert_eq!(o.status.code(), Some(0));

    let o = inlim(&["hom", &instance("c5_decomposition.json"), "--witness"]);
    let out = stdout(&o);
    assert_eq!(out.lines().last(), Some("HOM"));
    assert_eq!(o.status.code(), Some(1));
    check_coloring(&out, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 3);

    let o = inlim(&[
        "hom",
        &instance("c5_decomposition.json"),
        "--template",
        "k2",
    ]);
    assert_eq!(stdout(&o).lines().last(), Some("NO-HOM"));

    let o = inlim(&[
        "hom",
        &instance("petersen_decomposition.json"),
        "--witness",
        "--template",
        "K3",
    ]);
    assert_eq!(stdout(&o).lines().last(), Some("HOM"));
    assert_eq!(value(&stdout(&o), "max_bag"), Some("5"));
}

#[test]
fn hom_single_vertex_and_file_template() {
    let single = temp_file(
        "single.json",
        r#"{"X": {"n": 1, "edges": []}, "shape": {"n": 1, "edges": []}, "bags": [[0]]}"#,
    );
    let triangle = temp_file(
        "triangle.json",
        r#"{"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}"#,
    );
    let o = inlim(&["hom", &single, "--template", &format!("file:{triangle}")]);
    assert_eq!(stdout(&o).lines().last(), Some("HOM"));
    assert_eq!(
        inlim(&["hom", &single, "--template", "petersen"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn hom_rejects_bad_decompositions() {
    let bad = temp_file(
        "baddecomp.json",
        r#"{"X": {"n": 3, "edges": [[0, 1], [1, 2]]}, "shape": {"n": 2, "edges": [[0, 1]]}, "bags": [[0, 1], [2]]}"#,
    );
    let o = inlim(&["hom", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("inside no bag"));
}

#[test]
fn cset_solve_reports_both_widths() {
    let o = inlim(&[
        "cset-solve",
        &instance("walking_arrow.json"),
        &instance("arrow_cycle.json"),
    ]);
    let out = stdout(&o);
    assert!(matches!(o.status.code(), Some(0 | 1)));
    assert!(value(&out, "w_summed").is_some());
    assert!(value(&out, "w_slices").is_some());
}

#[test]
fn fvs_command() {
    let g = temp_file(
        "c5.json",
        r#"{"n": 5, "edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]]}"#,
    );
    let out = stdout(&inlim(&["fvs", &g]));
    assert_eq!(value(&out, "k"), Some("1"));
    assert_eq!(value(&out, "fvs"), Some("0"));
    assert_eq!(inlim(&["fvs", &g, "--max", "0"]).status.code(), Some(2));
}

#[test]
fn gen_is_seed_stable() {
    let a = inlim(&["gen", "random", "8", "3", "--seed", "11"]);
    let b = inlim(&["gen", "random", "8", "3", "--seed", "11"]);
    let c = inlim(&["gen", "random", "8", "3", "--seed", "12"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert!(String::from_utf8_lossy(&a.stderr).contains("seed=11"));
}

#[test]
fn generated_cycles_need_one_fvs_vertex() {
    for seed in ["1", "2", "3"] {
        let o = inlim(&["gen", "cycle", "12", "4", "--seed", seed]);
        let f = temp_file(&format!("cycle{seed}.json"), &stdout(&o));
        assert_eq!(value(&stdout(&inlim(&["solve", &f])), "k"), Some("1"));
    }
}

#[test]
fn generated_trees_validate_and_agree_with_oracle() {
    for seed in ["1", "2", "3", "4"] {
        let o = inlim(&["gen", "tree", "8", "3", "--seed", seed]);
        let f = temp_file(&format!("tree{seed}.json"), &stdout(&o));
        let solved = inlim(&["solve", &f]);
        let oracle = inlim(&["oracle", &f]);
        assert!(matches!(solved.status.code(), Some(0 | 1)));
        assert_eq!(solved.status.code(), oracle.status.code());
    }
}

#[test]
fn bench_csv() {
    let o = inlim(&[
        "bench",
        "--mode",
        "path",
        "--sizes",
        "5,30",
        "--w",
        "5",
        "--repeats",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "mode,n,w,k,section_tests,verdict,solver_ms,oracle_ms"
    );
    assert!(!lines[1].ends_with("SKIPPED"));
    assert!(lines[2].starts_with("path,30,5,0,"));
    assert!(lines[2].ends_with(",SKIPPED"));
}
