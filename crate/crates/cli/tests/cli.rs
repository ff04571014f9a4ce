use std::path::PathBuf;
use std::process::{Command, Output};

use opgame_core::expr::parse_expr;
use opgame_core::format::game_from_json;
use opgame_core::fixpoint::normalize_game;
use opgame_core::{Guards, NormalForm, RewriteTrace};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn opgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opgame")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_example_pgsolver() {
    let o = opgame(&["solve", path(&data("example.pg"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "entry 1 (tl): Player 0 (even)\nentry 2 (tr): Player 0 (even)\n\
         entry 3 (bl): Player 1 (odd)\nentry 4 (br): Player 1 (odd)\n"
    );
    let json = opgame(&["solve", "--format", "json", path(&data("example.pg"))]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let winners: Vec<u64> = v["winners"].as_array().unwrap().iter().map(|w| w["winner"].as_u64().unwrap()).collect();
    assert_eq!(winners, [0, 0, 1, 1]);
}

#[test]
fn solve_positional_agrees() {
    let o = opgame(&["solve", "--experimental-positional", path(&data("example.pg"))]);
    assert_eq!(stdout(&o), stdout(&opgame(&["solve", path(&data("example.pg"))])));
}

#[test]
fn solve_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("empty.pg");
    std::fs::write(&f, "").unwrap();
    let o = opgame(&["solve", path(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
}

#[test]
fn composed_halves_solve_like_the_whole() {
    let dir = tempfile::tempdir().unwrap();
    let whole = dir.path().join("whole.json");
    let o = opgame(&["compose", path(&data("top_half.json")), path(&data("bottom_half.json"))]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::write(&whole, &o.stdout).unwrap();
    assert_eq!(stdout(&opgame(&["solve", path(&whole)])), stdout(&opgame(&["solve", path(&data("example.pg"))])));
}

#[test]
fn tensor_with_empty_game() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(
        &empty,
        r#"{"max_priority": 2, "domain": {"in": 0, "out": 0}, "codomain": {"out": 0, "in": 0}, "positions": [], "edges": []}"#,
    )
    .unwrap();
    let o = opgame(&["tensor", path(&data("b20_lhs.json")), path(&empty)]);
    let again = game_from_json(&stdout(&o)).unwrap();
    let orig = game_from_json(&std::fs::read_to_string(data("b20_lhs.json")).unwrap()).unwrap();
    assert_eq!(again, orig);
}

#[test]
fn normalize_terms() {
    let o = opgame(&["normalize", path(&data("worked.mu"))]);
    assert_eq!(stdout(&o), "{\"clauses\":[[]]}\n");
    let o = opgame(&["normalize", path(&data("parity_even.mu"))]);
    assert_eq!(stdout(&o), "{\"clauses\":[[[\"x0\",0]],[[\"x1\",0]]]}\n");
}

#[test]
fn normalize_identity_game() {
    let dir = tempfile::tempdir().unwrap();
    let id = dir.path().join("id.json");
    std::fs::write(
        &id,
        r#"{"max_priority": 2, "domain": {"in": 1, "out": 0}, "codomain": {"out": 1, "in": 0}, "positions": [],
            "edges": [[{"entry": 1}, {"exit": 1}]]}"#,
    )
    .unwrap();
    assert_eq!(stdout(&opgame(&["normalize", path(&id)])), "{\"clauses\":[[[\"x1\",0]]]}\n");
}

#[test]
fn normalize_trace_replays() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.jsonl");
    let term = data("worked.mu");
    let o = opgame(&["normalize", "--trace", path(&trace), path(&term)]);
    assert_eq!(o.status.code(), Some(0));
    let nf = NormalForm::from_json(stdout(&o).trim()).unwrap();
    let steps = RewriteTrace::from_jsonl(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    let initial = parse_expr(&std::fs::read_to_string(&term).unwrap()).unwrap();
    steps.verify(&[initial], &[nf]).unwrap();

    let game = data("example.pg");
    let o = opgame(&["normalize", "--trace", path(&trace), path(&game)]);
    let steps = RewriteTrace::from_jsonl(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    let g = opgame_core::format::parse_pgsolver(&std::fs::read_to_string(&game).unwrap(), 12).unwrap();
    let reference = normalize_game(g.game(), &Guards::default()).unwrap();
    let nfs: Vec<NormalForm> = stdout(&o).lines().map(|l| NormalForm::from_json(l).unwrap()).collect();
    steps.verify(&reference.initial, &nfs).unwrap();
}

#[test]
fn equiv_verdicts_and_exit_codes() {
    let o = opgame(&["equiv", path(&data("b20_lhs.json")), path(&data("b20_rhs.json"))]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "equivalent\n"));
    let o = opgame(&["equiv", path(&data("dead_1.json")), path(&data("dead_0.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "inequivalent at entry 1: {\"clauses\":[[]]} vs {\"clauses\":[]}\n");
    let o = opgame(&["equiv", path(&data("b20_lhs.json")), path(&data("dead_0.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn random_is_deterministic_and_solvable() {
    let dir = tempfile::tempdir().unwrap();
    for seed in ["1", "2", "3"] {
        let a = opgame(&["random", "--closed", "--nodes", "7", "--seed", seed]);
        let b = opgame(&["random", "--closed", "--nodes", "7", "--seed", seed]);
        assert_eq!(a.stdout, b.stdout);
        let f = dir.path().join("g.pg");
        std::fs::write(&f, &a.stdout).unwrap();
        let first = opgame(&["solve", path(&f)]);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, opgame(&["solve", path(&f)]).stdout);
    }
    let open = opgame(&["random", "--acyclic", "--exits", "2", "--seed", "5"]);
    assert!(game_from_json(&stdout(&open)).unwrap().is_acyclic());
}

#[test]
fn input_and_resource_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pg");
    std::fs::write(&bad, "0 1 0 7;").unwrap();
    assert_eq!(opgame(&["solve", path(&bad)]).status.code(), Some(2));
    assert_eq!(opgame(&["solve", "/nonexistent/file.pg"]).status.code(), Some(2));
    assert_eq!(opgame(&["solve", "--max-priority", "1", path(&data("example.pg"))]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_opgame"))
        .args(["solve", path(&data("example.pg"))])
        .env("OPG_GUARD_BYTES", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_opgame"))
        .args(["solve", path(&data("example.pg"))])
        .env("OPG_GUARD_BYTES", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_small_run_passes() {
    let o = opgame(&["selftest", "--samples", "3", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["axioms"].as_array().unwrap().len(), 36);
}
