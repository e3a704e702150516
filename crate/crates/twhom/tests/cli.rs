use std::fs;
use std::process::{Command, Output};

fn twhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twhom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn line<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

#[test]
fn solve_examples() {
    let o = twhom(&["solve", "cycle:5", "clique:3"]);
    assert!(o.status.success());
    assert_eq!(line(&stdout(&o), "verdict"), Some("yes"));
    let o = twhom(&["solve", "grotzsch", "clique:3"]);
    assert!(o.status.success());
    assert_eq!(line(&stdout(&o), "verdict"), Some("no"));
    let o = twhom(&["solve", "cycle:7", "product:clique:3,cycle:5", "--mode", "decide"]);
    let text = stdout(&o);
    assert_eq!(line(&text, "verdict"), Some("yes"));
    assert!(text.contains("provenance: factor 0 (3 vertices): yes"));
    assert!(text.contains("provenance: factor 1 (5 vertices): yes"));
}

#[test]
fn count_and_find() {
    let text = stdout(&twhom(&["solve", "cycle:5", "clique:3", "--mode", "count"]));
    assert_eq!(line(&text, "count"), Some("30"));
    let text = stdout(&twhom(&["solve", "cycle:5", "clique:3", "--mode", "find"]));
    assert!(line(&text, "witness.homomorphism").is_some());
}

#[test]
fn core_projective_factor_examples() {
    let text = stdout(&twhom(&["core", "bowtie"]));
    assert_eq!(line(&text, "verdict"), Some("not-core"));
    assert_eq!(line(&text, "core.graph"), Some("clique:3"));
    let text = stdout(&twhom(&["projective", "product:clique:3,cycle:5"]));
    assert_eq!(line(&text, "verdict"), Some("not-projective"));
    assert!(line(&text, "witness.idempotent_nonprojection").is_some());
    let text = stdout(&twhom(&["factor", "product:clique:3,cycle:5"]));
    assert_eq!(line(&text, "factor_sizes"), Some("3 5"));
    assert_eq!(line(&text, "verified"), Some("true"));
}

#[test]
fn budget_exhaustion_is_inconclusive_and_nonzero() {
    let o = twhom(&["core", "product:clique:3,grotzsch", "--budget", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(line(&stdout(&o), "verdict"), Some("inconclusive"));
    let o = twhom(&["core", "product:clique:3,grotzsch", "--time-limit", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn errors_exit_nonzero() {
    let o = twhom(&["solve", "nosuchgraph", "clique:3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown graph"));
}

#[test]
fn reports_are_byte_stable() {
    for args in [
        &["experiment", "oracle-suite", "--seed", "3", "--random-pairs", "40", "--threads", "1"][..],
        &["solve", "cycle:7", "product:clique:3,cycle:5", "--json"][..],
        &["gadget", "cycle:5", "--seed", "9"][..],
    ] {
        let a = twhom(args);
        let b = twhom(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!stdout(&a).contains("wall_ms"));
    }
    assert!(stdout(&twhom(&["solve", "cycle:5", "clique:3", "--timing"])).contains("stats.wall_ms"));
}

#[test]
fn thread_count_does_not_change_verdicts() {
    let one = stdout(&twhom(&["core", "product:clique:3,grotzsch", "--threads", "1"]));
    let four = stdout(&twhom(&["core", "product:clique:3,grotzsch", "--threads", "4"]));
    assert_eq!(line(&one, "verdict"), Some("is-core"));
    assert_eq!(line(&one, "verdict"), line(&four, "verdict"));
}

#[test]
fn decomposition_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("c5.td");
    fs::write(&good, "s td 3 3 5\nb 1 1 2 5\nb 2 2 3 5\nb 3 3 4 5\n1 2\n2 3\n").unwrap();
    let o = twhom(&["solve", "cycle:5", "clique:3", "--td", good.to_str().unwrap()]);
    assert_eq!(line(&stdout(&o), "verdict"), Some("yes"));

    let bad = dir.path().join("bad.td");
    fs::write(&bad, "s td 2 2 5\nb 1 1 2\nb 2 3 4\n1 2\n").unwrap();
    let o = twhom(&["solve", "cycle:5", "clique:3", "--td", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("vertex coverage"));

    let (gstar, tdout, map) = (dir.path().join("g.gr"), dir.path().join("out.td"), dir.path().join("g.map"));
    let o = twhom(&[
        "reduce", "cycle:5", "clique:3",
        "--td-in", good.to_str().unwrap(),
        "--td-out", tdout.to_str().unwrap(),
        "--out", gstar.to_str().unwrap(),
        "--map", map.to_str().unwrap(),
    ]);
    let text = stdout(&o);
    assert_eq!(line(&text, "vertices"), Some("3640"));
    assert_eq!(line(&text, "decomposition.valid"), Some("true"));
    let g = twhom::formats::parse_graph(&fs::read_to_string(&gstar).unwrap()).unwrap();
    let d = twhom::formats::parse_td(&fs::read_to_string(&tdout).unwrap()).unwrap();
    assert_eq!(twhom_core::decomp::validate(&g, &d), Ok(()));
    assert_eq!(twhom::formats::parse_map(&fs::read_to_string(&map).unwrap()).unwrap(), [0, 1, 2, 3, 4]);

    let small = dir.path().join("c5.col");
    fs::write(&small, "c five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n").unwrap();
    let file_spec = format!("@{}", small.display());
    let text = stdout(&twhom(&["solve", &file_spec, "clique:3", "--mode", "count"]));
    assert_eq!(line(&text, "count"), Some("30"));
}

#[test]
fn gadget_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.gr");
    let text = stdout(&twhom(&["gadget", "clique:3", "--out", out.to_str().unwrap()]));
    assert_eq!(line(&text, "verdict"), Some("unconditional"));
    assert_eq!(line(&text, "pairs"), Some("6/6"));
    let f = twhom::formats::parse_graph(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(f.n(), 729);
    let text = stdout(&twhom(&["gadget", "cycle:5"]));
    assert_eq!(line(&text, "verdict"), Some("conditional"));
    assert_eq!(line(&text, "materialized"), Some("false"));
}

#[test]
fn conjecture_experiment() {
    let o = twhom(&["experiment", "conjecture-18", "--pair", "clique:3", "grotzsch", "--pair", "clique:3", "clique:4"]);
    let text = stdout(&o);
    assert_eq!(line(&text, "item.0.verdict"), Some("is-core"));
    assert_eq!(line(&text, "item.1.verdict"), Some("skipped"));
    assert_eq!(line(&text, "item.1.reason"), Some("graphs are comparable"));
}
