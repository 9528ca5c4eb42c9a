use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn arboreal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arboreal"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classify_p4_racg_picks_a_d() {
    let out = arboreal(&["classify", &fixture("p4_racg.json"), "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["arboreality"], "AcylArboreal");
    assert_eq!(v["certificate"]["kind"], "SeparatedPair");
    assert_eq!(v["certificate"]["a"], "a");
    assert_eq!(v["certificate"]["b"], "d");
    assert_eq!(v["certificate"]["splitting"]["acyl_k"], 3);
    assert_eq!(v["certificate"]["splitting"]["acyl_c"], 1);
}

#[test]
fn classify_irreducible_diameter_two_raag_is_hyperbolic_but_not_arboreal() {
    let out = arboreal(&["classify", &fixture("irreducible_diam2_raag.json"), "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["arboreality"], "NotAcylArboreal");
    assert_eq!(v["ah_criterion"], "AHByIrreducibility");
    assert_eq!(v["certificate"]["kind"], "NoSeparatedPair");
}

#[test]
fn human_report_names_the_deciding_condition() {
    let cases = [
        ("p4_racg.json", "separated pair found"),
        ("irreducible_diam2_raag.json", "no separated pair"),
        ("o2_racg.json", "virtually cyclic"),
        ("k3_racg.json", "complete graph"),
    ];
    for (file, phrase) in cases {
        let out = arboreal(&["classify", &fixture(file)]);
        assert_eq!(code(&out), 0, "{file}");
        assert!(stdout(&out).contains(phrase), "{file}: {}", stdout(&out));
    }
}

#[test]
fn order_one_vertex_exits_3() {
    let out = arboreal(&["classify", &fixture("degenerate_order_one.json")]);
    assert_eq!(code(&out), 3);
}

#[test]
fn malformed_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"vertices\": [").unwrap();
    let out = arboreal(&["classify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    let out = arboreal(&["classify", "/nonexistent/file.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn nf_examples() {
    let out = arboreal(&["nf", &fixture("p3_raag.json"), "a a^-1"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "1\n"));
    let out = arboreal(&["nf", &fixture("p3_raag.json"), "b a"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "a b\n"));
    let out = arboreal(&["nf", &fixture("p4_racg.json"), "b b"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "1\n"));
    let out = arboreal(&["nf", &fixture("p4_racg.json"), "@hyperbolic"]);
    assert_eq!(stdout(&out), "a d\n");
}

#[test]
fn nf_rejects_unknown_vertex_and_zero_exponent() {
    assert_eq!(code(&arboreal(&["nf", &fixture("p3_raag.json"), "a z"])), 2);
    assert_eq!(code(&arboreal(&["nf", &fixture("p3_raag.json"), "a^0"])), 2);
    assert_eq!(code(&arboreal(&["nf", &fixture("p3_raag.json"), "a^x"])), 2);
    assert_eq!(code(&arboreal(&["nf", &fixture("p3_raag.json"), "@missing"])), 2);
}

#[test]
fn mul_multiplies_in_order() {
    let out = arboreal(&["mul", &fixture("p3_raag.json"), "c", "b a", "a^-1"]);
    // b and c commute, so the canonical form lists b first.
    assert_eq!(stdout(&out), "b c\n");
    let out = arboreal(&["mul", &fixture("p4_racg.json"), "a d", "d a", "--json"]);
    assert_eq!(json(&out)["normal_form"], "1");
}

#[test]
fn tree_dist_reports_translation() {
    let out = arboreal(&["tree-dist", &fixture("p4_racg.json"), "A:1", "A:a d"]);
    assert_eq!(stdout(&out), "2\n");
    let out = arboreal(&["tree-dist", &fixture("p4_racg.json"), "A:1", "B:1"]);
    assert_eq!(stdout(&out), "1\n");
    let out = arboreal(&["tree-dist", &fixture("irreducible_diam2_raag.json"), "A:1", "B:1"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn tree_audit_p4_passes_with_bound_one() {
    let out = arboreal(&[
        "tree-audit",
        &fixture("p4_racg.json"),
        "--k",
        "3",
        "--tree-radius",
        "5",
        "--element-radius",
        "6",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["max_stabilizer_size"], 1);
    assert_eq!(v["bound"], 1);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn tree_audit_exit_codes() {
    assert_eq!(
        code(&arboreal(&[
            "tree-audit",
            &fixture("irreducible_diam2_raag.json")
        ])),
        4
    );
    assert_eq!(
        code(&arboreal(&[
            "tree-audit",
            &fixture("p4_racg.json"),
            "--ball-cap",
            "10"
        ])),
        5
    );
    assert_eq!(
        code(&arboreal(&[
            "tree-audit",
            &fixture("p4_racg.json"),
            "--tree-radius",
            "0"
        ])),
        2
    );
    // (a, c) in P4 has link {b}, which is finite; (a, c) in P3 has an infinite link.
    assert_eq!(
        code(&arboreal(&[
            "tree-audit",
            &fixture("p3_raag.json"),
            "--pair",
            "a,c"
        ])),
        4
    );
}

#[test]
fn tree_audit_short_paths_can_violate() {
    // With k = 1 the single-edge stabilisers are conjugates of G_C = <b, c>,
    // which is bigger than |G_N| = 1; the bound only claims k >= 3.
    let out = arboreal(&[
        "tree-audit",
        &fixture("p4_racg.json"),
        "--k",
        "1",
        "--tree-radius",
        "2",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["bound_applies"], false);
    assert!(v["max_stabilizer_size"].as_u64().unwrap() > 1);
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "ball_cap = 10\n").unwrap();
    let p4 = fixture("p4_racg.json");
    let with_cfg = ["--config", cfg.to_str().unwrap(), "tree-audit", p4.as_str()];
    assert_eq!(code(&arboreal(&with_cfg)), 5);
    let mut overridden = with_cfg.to_vec();
    overridden.extend(["--ball-cap", "100000"]);
    assert_eq!(code(&arboreal(&overridden)), 0);
    std::fs::write(&cfg, "unknown_key = 1\n").unwrap();
    assert_eq!(code(&arboreal(&with_cfg)), 2);
}

#[test]
fn out_flag_persists_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("audit.json");
    let out = arboreal(&[
        "tree-audit",
        &fixture("p4_racg.json"),
        "--tree-radius",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let saved: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(saved["tree_radius"], 3);
}

fn dot_counts(dot: &str) -> (usize, usize) {
    let edges = dot.lines().filter(|l| l.contains(" -- ")).count();
    let nodes = dot
        .lines()
        .filter(|l| {
            l.trim_end().ends_with(';') && !l.contains(" -- ") && !l.trim_start().starts_with("label=")
        })
        .count();
    (nodes, edges)
}

#[test]
fn export_dot_examples() {
    let out = arboreal(&["export-dot", &fixture("irreducible_diam2_raag.json"), "graph"]);
    assert_eq!(dot_counts(&stdout(&out)), (6, 9));
    let out = arboreal(&["export-dot", &fixture("k3_racg.json"), "complement"]);
    assert_eq!(dot_counts(&stdout(&out)), (3, 0));
    let out = arboreal(&[
        "export-dot",
        &fixture("p4_racg.json"),
        "tree-ball",
        "--radius",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    let dot = stdout(&out);
    assert!(dot.contains("label=\"A:1\""));
    assert!(dot.contains("label=\"B:1\""));
    let (nodes, edges) = dot_counts(&dot);
    assert!(nodes >= 2 && edges >= 1);
    let out = arboreal(&["export-dot", &fixture("irreducible_diam2_raag.json"), "tree-ball"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn json_reports_are_deterministic() {
    for args in [
        vec!["classify", "p4_racg.json", "--json"],
        vec!["classify", "irreducible_diam2_raag.json", "--json"],
        vec!["tree-audit", "z2_z5.json", "--json", "--tree-radius", "4"],
        vec!["nf", "c5_raag.json", "e d c b a", "--json"],
    ] {
        let mut args: Vec<String> = args.into_iter().map(String::from).collect();
        args[1] = fixture(&args[1]);
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = arboreal(&args);
        let second = arboreal(&args);
        assert_eq!(first.stdout, second.stdout);
        assert!(!first.stdout.is_empty());
    }
}
