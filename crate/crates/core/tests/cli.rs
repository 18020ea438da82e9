use hgring::cli::{run_args, EXIT_CLAIM_FAILED, EXIT_PASS, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_args(std::iter::once("hgring").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn check_reports_holds() {
    let (code, out, _) = run(&["check", "builtin:sc_abc", "eq3.1"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("holds"), "{out}");
}

#[test]
fn failing_identity_exits_one() {
    let (code, out, _) = run(&["check", "family:beam:1", "eq3.1"]);
    assert_eq!(code, EXIT_CLAIM_FAILED);
    assert!(out.contains("x1=a·u1"), "{out}");
}

#[test]
fn witness_triangle_in_abcd() {
    let (code, out, _) = run(&["witness", "triangle_in_abcd"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("generator map extends to an isomorphism"), "{out}");
    assert!(out.ends_with("result: verified\n"));
}

#[test]
fn nested_one_is_not_robust() {
    let (code, out, _) = run(&["color", "family:nested:1", "--robust"]);
    assert_eq!(code, EXIT_CLAIM_FAILED);
    assert!(out.contains("not 2-robust: {u1,u4}"), "{out}");
}

#[test]
fn distinct_errors_exit_two() {
    let (code, _, unknown) = run(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, missing) = run(&["validate", "/definitely/missing.json"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, budget) = run(&["check", "s7", "eq4.2", "--brute-force", "--budget-evals", "10"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(unknown.contains("frobnicate"));
    assert!(missing.contains("cannot read"));
    assert!(budget.contains("budget exceeded"));
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let hg = dir.path().join("c4.json");
    let hg = hg.to_str().unwrap();
    assert_eq!(run(&["family", "n_cycle", "4", "--export", hg]).0, EXIT_PASS);
    let (code, out, _) = run(&["validate", hg]);
    assert_eq!((code, out.trim_end()), (EXIT_PASS, format!("{hg}: valid").as_str()));

    let table = dir.path().join("c4-semiring.json");
    let table = table.to_str().unwrap();
    assert_eq!(run(&["semiring", hg, "--export", table]).0, EXIT_PASS);
    let (code, from_hg, _) = run(&["check", hg, "eq4.4", "--format", "structured"]);
    let (code2, from_table, _) = run(&["check", table, "eq4.4", "--format", "structured"]);
    assert_eq!(code, code2);
    let verdict = |s: &str| serde_json::from_str::<serde_json::Value>(s.lines().next().unwrap()).unwrap()["verdict"].clone();
    assert_eq!(verdict(&from_hg), verdict(&from_table));

    let ids = dir.path().join("ids.txt");
    std::fs::write(&ids, "# two identities\nx*y = y*x\n\nx + x = x\n").unwrap();
    let (code, out, _) = run(&["check", "sc:ab,bc", ids.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.lines().count(), 2);

    let dot = dir.path().join("tri.dot");
    assert_eq!(run(&["color", "family:beam:1", "--export", dot.to_str().unwrap()]).0, EXIT_PASS);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph"));
}

#[test]
fn invalid_hypergraph_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"vertices":["a","b","c","d"],"edges":[["a","b","c"],["a","b","d"]]}"#).unwrap();
    let (code, out, _) = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_CLAIM_FAILED);
    assert!(out.contains("linear"), "{out}");
}

#[test]
fn extend_partial_coloring() {
    let (code, out, _) = run(&["color", "family:beam:1", "--extend", "u1=0,u4=1"]);
    assert_eq!(code, EXIT_CLAIM_FAILED);
    assert!(out.contains("no strong 3-coloring extends"));
    let (code, _, _) = run(&["color", "family:beam:1", "--extend", "u1=0,u4=0"]);
    assert_eq!(code, EXIT_PASS);
}

#[test]
fn suite_reports_are_byte_identical() {
    let (c1, a, _) = run(&["suite", "--format", "structured"]);
    let (c2, b, _) = run(&["suite", "--format", "structured"]);
    assert_eq!((c1, c2), (EXIT_PASS, EXIT_PASS));
    assert_eq!(a, b);
    for line in a.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
}
