use std::path::{Path, PathBuf};

use firstsplit_cli::output::render_text;
use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("firstsplit").chain(args.iter().copied());
    let code = firstsplit_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, _) = run(&full);
    (code, serde_json::from_str(&out).unwrap())
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("firstsplit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn approx_on_two_cherries() {
    let (code, doc) = json(&["approx", &data("cherries.nwk")]);
    assert_eq!(code, 0);
    let r = &doc["result"];
    assert_eq!(r["bipartition"]["left"], serde_json::json!(["a", "b"]));
    assert_eq!(r["bipartition"]["right"], serde_json::json!(["c", "d"]));
    assert_eq!(
        (r["relaxed_value"].as_u64(), r["realized_cost"].as_u64()),
        (Some(1), Some(0))
    );
    assert_eq!(doc["input"]["k"], 4);
}

#[test]
fn certify_reports_the_stated_bound_but_asserts_the_forest_bound() {
    let (code, doc) = json(&["approx", "--certify", &data("twice.nwk")]);
    assert_eq!(code, 0);
    let c = &doc["result"]["certificate"];
    assert_eq!(c["exact_cost"], 0);
    assert_eq!(c["relaxed_within_2d_plus_1"], false);
    assert_eq!(c["relaxed_within_2d_plus_trees"], true);
}

#[test]
fn trivial_and_malformed_inputs() {
    let path = scratch("pair.nwk", "(a,b);\n");
    let (code, doc) = json(&["approx", path.to_str().unwrap()]);
    assert_eq!((code, doc["result"]["realized_cost"].as_u64()), (0, Some(0)));

    let path = scratch("bad.nwk", "((a,b);\n");
    let (code, _, err) = run(&["approx", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column 7"), "{err}");

    let (code, doc) = json(&["approx", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["exit_code"], 2);
}

#[test]
fn exact_mdpp_partition_and_decide() {
    let (_, doc) = json(&["exact", &data("shared.nwk")]);
    assert_eq!(doc["result"]["cost"], 1);

    let (_, doc) = json(&["mdpp", &data("shared.nwk")]);
    assert_eq!(doc["result"]["size"], 1);
    assert_eq!(doc["result"]["prefix"], serde_json::json!([1]));

    let (code, doc) = json(&["partition", &data("hand.nwk")]);
    assert_eq!(code, 0);
    assert_eq!(
        doc["result"]["bipartition_meet"],
        serde_json::json!([["a"], ["b"], ["c"]])
    );
    assert_eq!(doc["result"]["equal"], true);

    let (_, doc) = json(&["decide", &data("shared.nwk"), "--edge", "a", "b", "1"]);
    assert_eq!(doc["result"]["answer"], true);
    let (_, doc) = json(&["decide", &data("cherries.nwk"), "--edge", "a", "b", "1"]);
    assert_eq!(doc["result"]["answer"], false);
    let (_, doc) = json(&["decide", &data("shared.nwk"), "--vertex", "1"]);
    assert_eq!(doc["result"]["answer"], true);

    assert_eq!(run(&["decide", &data("shared.nwk"), "--edge", "b", "c", "1"]).0, 6);
    assert_eq!(run(&["decide", &data("shared.nwk"), "--edge", "a", "z", "1"]).0, 4);
    assert_eq!(run(&["decide", &data("shared.nwk"), "--vertex", "9"]).0, 6);
    assert_eq!(run(&["decide", &data("shared.nwk")]).0, 6);
}

#[test]
fn dupcost_examples() {
    let (_, doc) = json(&["dupcost", &data("shared.nwk"), &data("species.nwk")]);
    assert_eq!(doc["result"]["duplications"], 1);
    let ab = scratch("ab.nwk", "(a,b);");
    let aa = scratch("aa.nwk", "(a,a);");
    let ab = ab.to_str().unwrap();
    assert_eq!(json(&["dupcost", ab, ab]).1["result"]["duplications"], 0);
    assert_eq!(
        json(&["dupcost", aa.to_str().unwrap(), ab]).1["result"]["duplications"],
        1
    );
    let (code, _, _) = run(&["dupcost", &data("cherries.nwk"), ab]);
    assert_eq!(code, 4);
}

#[test]
fn greedy_examples() {
    let (_, doc) = json(&["greedy", &data("cherries.nwk")]);
    assert_eq!(doc["result"]["species_tree"], "((a,b),(c,d));");
    assert_eq!(doc["result"]["total_duplications"], 0);
    let (_, doc) = json(&["greedy", &data("two_trees.nwk")]);
    assert_eq!(doc["result"]["species_tree"], "((a,b),(c,d));");
    let pair = scratch("pair2.nwk", "(a,b);");
    assert_eq!(
        json(&["greedy", pair.to_str().unwrap()]).1["result"]["species_tree"],
        "(a,b);"
    );
}

#[test]
fn graph_counts_and_dot_files() {
    let (_, doc) = json(&["graph", &data("cherries.nwk"), "--which", "H"]);
    assert_eq!(
        (doc["result"]["edges"].as_u64(), doc["result"]["labels"].as_u64()),
        (Some(2), Some(1))
    );
    let (_, doc) = json(&["graph", &data("cherries.nwk"), "--which", "I"]);
    let r = &doc["result"];
    assert_eq!(
        (r["edges"].as_u64(), r["adjacent_pairs"].as_u64(), r["labels"].as_u64()),
        (Some(8), Some(6), Some(3))
    );
    let pair = scratch("pair3.nwk", "(a,b);");
    assert_eq!(
        json(&["graph", pair.to_str().unwrap(), "--which", "H"]).1["result"]["edges"],
        0
    );

    let out = pair.with_file_name("h.dot");
    let (code, _) = json(&[
        "graph",
        &data("cherries.nwk"),
        "--which",
        "H",
        "--dot",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("graph H {"));
    let (code, _, _) = run(&[
        "graph",
        &data("cherries.nwk"),
        "--which",
        "H",
        "--dot",
        "/nonexistent/dir/h.dot",
    ]);
    assert_eq!(code, 5);
}

#[test]
fn gen_is_seeded_and_validated() {
    let args = ["gen", "sim", "--k", "5", "--families", "6", "--seed", "9"];
    assert_eq!(json(&args).1, json(&args).1);
    let out = scratch("unused", "");
    let forest = out.with_file_name("sim.nwk");
    let species = out.with_file_name("species_out.nwk");
    let (code, doc) = json(&[
        "gen",
        "sim",
        "--k",
        "5",
        "--seed",
        "9",
        "--out",
        forest.to_str().unwrap(),
        "--species-out",
        species.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let written = std::fs::read_to_string(&forest).unwrap();
    assert_eq!(
        doc["result"]["forest_sha256"],
        firstsplit_cli::commands::sha256_hex(written.as_bytes())
    );
    assert!(firstsplit::trees::parse_species_tree(&std::fs::read_to_string(&species).unwrap()).is_ok());

    assert_eq!(run(&["gen", "sim", "--k", "5", "--p-dup", "1.5"]).0, 6);
    assert_eq!(run(&["gen", "uniform", "--k", "5", "--p-dup", "0.1"]).0, 6);
    let (_, doc) = json(&["gen", "sim", "--k", "4", "--p-dup", "0.6", "--p-loss", "0.5"]);
    assert_eq!(doc["result"]["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn check_suites() {
    let (code, doc) = json(&["check", "--random", "50", "--seed", "7", "--samples", "300"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["f_h_witness"]["violation_reproduced"], true);
    assert!(doc["result"]["suites"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["passed"] == true));
    assert_eq!(run(&["check"]).0, 6);
    assert_eq!(run(&["check", &data("cherries.nwk"), "--random", "3"]).0, 6);
    let (code, _) = json(&["check", &data("mixed.nwk")]);
    assert_eq!(code, 0);
}

#[test]
fn bench_is_deterministic_and_within_budget() {
    let args = ["bench", "--sizes", "6,8,10", "--seed", "4", "--instances", "2"];
    let (code, a) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(a, json(&args).1);
    for size in a["result"]["sizes"].as_array().unwrap() {
        for i in size["instances"].as_array().unwrap() {
            assert!(i["evaluations"].as_u64() <= i["evaluation_budget"].as_u64());
            assert!(i.get("approx_ms").is_none());
        }
    }
    let (_, timed) = json(&["--timing", "bench", "--sizes", "4", "--instances", "1"]);
    assert!(timed["result"]["sizes"][0]["instances"][0]["exact_ms"].is_number());
    assert!(timed["timing_ms"].is_number());
    assert_eq!(run(&["bench", "--sizes", "21"]).0, 3);
    assert_eq!(run(&["bench", "--sizes", "1"]).0, 6);
}

#[test]
fn limits_exit_three() {
    let f = firstsplit::simgen::random_forest_uniform(21, 40, 10, 1).unwrap();
    assert_eq!(f.ground().len(), 21);
    let path = scratch("big.nwk", &f.to_newick().unwrap());
    assert_eq!(run(&["exact", path.to_str().unwrap()]).0, 3);
    assert_eq!(run(&["approx", "--certify", path.to_str().unwrap()]).0, 3);
    assert_eq!(run(&["approx", path.to_str().unwrap()]).0, 0);
}

#[test]
fn text_and_json_carry_the_same_values() {
    for args in [
        vec!["approx", "--certify"],
        vec!["greedy", "--method", "exact"],
        vec!["partition"],
        vec!["graph", "--which", "I"],
    ] {
        let mut full = args.clone();
        let input = data("mixed.nwk");
        full.push(&input);
        let (_, text, _) = run(&full);
        let (_, doc) = json(&full);
        let mut doc = doc;
        // The argv echo includes the format flag.
        doc["command"]["argv"] = serde_json::json!(full);
        assert_eq!(text, render_text(&doc));
    }
}

#[test]
fn usage_and_help() {
    assert_eq!(run(&[]).0, 6);
    assert_eq!(run(&["frobnicate"]).0, 6);
    assert_eq!(run(&["--threads", "0", "exact", &data("shared.nwk")]).0, 6);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("approx"));
    assert_eq!(run(&["exact", "/nonexistent/forest.nwk"]).0, 5);
    let empty = scratch("empty.nwk", "  \n");
    assert_eq!(run(&["exact", empty.to_str().unwrap()]).0, 2);
}

#[test]
fn threads_do_not_change_results() {
    let one = json(&["exact", "--all", &data("mixed.nwk")]).1["result"].clone();
    let four = json(&["--threads", "4", "exact", "--all", &data("mixed.nwk")]).1["result"].clone();
    assert_eq!(one, four);
}
