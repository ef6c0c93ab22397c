use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn sample(name: &str) -> String {
    format!("{}/../../samples/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str, content: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, content).unwrap();
    path.display().to_string()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn arglab(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_arglab")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn fraction(value: &Value) -> (String, String) {
    (
        value["num"].as_str().unwrap().to_string(),
        value["den"].as_str().unwrap().to_string(),
    )
}

fn frac(num: &str, den: &str) -> (String, String) {
    (num.to_string(), den.to_string())
}

fn statement<'a>(doc: &'a Value, literal: &str) -> &'a Value {
    doc["result"]["statements"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["literal"] == literal)
        .unwrap_or_else(|| panic!("no statement {literal}"))
}

#[test]
fn running_example_graph() {
    let run = arglab(&["graph", &sample("running.dl")]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = run.json();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"][0], "graph");
    assert_eq!(doc["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(doc["result"]["arguments"].as_array().unwrap().len(), 5);
    let attacks: Vec<(String, String)> = doc["result"]["attacks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e[0].as_str().unwrap().into(), e[1].as_str().unwrap().into()))
        .collect();
    assert_eq!(
        attacks,
        vec![
            ("rb(rb1(),rb2())".into(), "rc()".into()),
            ("rc()".into(), "rnc()".into()),
            ("rnc()".into(), "rc()".into()),
        ]
    );
}

#[test]
fn dot_output_marks_both_relations() {
    let run = arglab(&["graph", &sample("running.dl"), "--format", "dot"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.starts_with("digraph"));
    assert!(run.stdout.contains("style=solid"));
    assert!(run.stdout.contains("label=\"sub\""));
}

#[test]
fn empty_theory_lists_nothing() {
    let run = arglab(&["args", &scratch("empty.dl", "")]);
    assert_eq!(run.code, 0);
    assert_eq!(run.json()["result"]["arguments"], Value::Array(Vec::new()));
}

#[test]
fn malformed_rule_reports_position() {
    let run = arglab(&["args", &sample("bad.dl")]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("bad.dl:2:10"), "{}", run.stderr);
    assert!(run.stdout.is_empty());
}

#[test]
fn missing_file_is_an_io_error() {
    let run = arglab(&["args", &sample("no-such-file.dl")]);
    assert_eq!(run.code, 1);
}

#[test]
fn grounded_labelling_of_running_example() {
    let run = arglab(&["label", &sample("running.dl"), "--semantics", "grounded"]);
    assert_eq!(run.code, 0);
    let doc = run.json();
    let labellings = doc["result"]["labellings"].as_array().unwrap();
    assert_eq!(labellings.len(), 1);
    let labels = &labellings[0]["labels"];
    assert_eq!(labels["rb(rb1(),rb2())"], "IN");
    assert_eq!(labels["rc()"], "OUT");
    assert_eq!(labels["rnc()"], "IN");
}

#[test]
fn mutual_attack_has_two_preferred_labellings() {
    let run = arglab(&["label", &sample("bc.dl"), "--semantics", "preferred"]);
    assert_eq!(run.json()["result"]["count"], 2);
}

#[test]
fn odd_cycle_has_no_stable_labelling() {
    let run = arglab(&["label", &sample("cycle3.dl"), "--semantics", "stable"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.json()["result"]["count"], 0);
}

#[test]
fn off_labellings_come_in_subgraph_blocks() {
    let run = arglab(&["label", &sample("bc.dl"), "--semantics", "preferred", "--labels", "inoutunoff"]);
    let doc = run.json();
    let blocks = doc["result"]["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 4);
    assert_eq!(blocks[0]["subgraph"].as_array().unwrap().len(), 2);
    assert_eq!(blocks[0]["labellings"].as_array().unwrap().len(), 2);
    assert_eq!(doc["result"]["count"], 5);
}

#[test]
fn weights_annotate_labellings() {
    let run = arglab(&[
        "label",
        &sample("running.dl"),
        "--semantics",
        "preferred",
        "--labels",
        "inoutunoff",
        "--legal-only",
        "--weights",
        &sample("running.weights"),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = run.json();
    let full = &doc["result"]["blocks"][0];
    assert_eq!(full["labellings"].as_array().unwrap().len(), 1);
    assert_eq!(doc["inputs"][1]["role"], "weights");
}

#[test]
fn grounded_statement_marginals() {
    let run = arglab(&[
        "marginal",
        &sample("running.dl"),
        "--semantics",
        "grounded",
        "--scheme",
        "worstcase",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = run.json();
    assert_eq!(fraction(&statement(&doc, "-b")["marginals"]["in"]), frac("1", "10"));
    assert_eq!(fraction(&statement(&doc, "-b")["marginals"]["off"]), frac("9", "10"));
    assert_eq!(fraction(&statement(&doc, "c")["marginals"]["un"]), frac("9", "10"));
    assert_eq!(statement(&doc, "c")["marginals"]["un"]["decimal"], "0.900000");
    assert_eq!(doc["result"]["frame"]["distribution"].as_array().unwrap().len(), 4);
}

#[test]
fn weighted_preferred_marginal() {
    let run = arglab(&[
        "marginal",
        &sample("running.dl"),
        "--semantics",
        "preferred",
        "--weights",
        &sample("running.weights"),
        "--target",
        "stmt:c",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = run.json();
    assert_eq!(fraction(&statement(&doc, "c")["marginals"]["in"]), frac("3", "5"));
    assert_eq!(doc["result"]["frame"]["distribution"].as_array().unwrap().len(), 7);
}

#[test]
fn point_mass_frame_gives_certain_marginals() {
    let pgf = scratch("bc-point.pgf", "{rb(), rc()} : 1.\n");
    let run = arglab(&["marginal", &sample("bc.dl"), "--frame", &format!("pgf:{pgf}"), "--semantics", "grounded"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = run.json();
    for argument in doc["result"]["arguments"].as_array().unwrap() {
        for (_, value) in argument["marginals"].as_object().unwrap() {
            let (num, den) = fraction(value);
            assert!(den == "1" && (num == "0" || num == "1"), "{value}");
        }
    }
}

#[test]
fn plf_file_marginals_and_justification() {
    let frame = format!("plf:{}", sample("bc.plf"));
    let run = arglab(&["check", &sample("bc.dl"), "--frame", &frame, "--semantics", "preferred"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = run.json();
    assert_eq!(doc["result"]["justification"]["rb()"], "CRJ");
    assert_eq!(doc["result"]["justification"]["rc()"], "CRJ");

    let run = arglab(&["marginal", &sample("bc.dl"), "--frame", &frame, "--target", "arg:rb()"]);
    let doc = run.json();
    assert_eq!(fraction(&doc["result"]["arguments"][0]["marginals"]["IN"]), frac("3", "5"));
}

#[test]
fn check_running_example_grounded() {
    let run = arglab(&["check", &sample("running.dl"), "--semantics", "grounded"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = run.json();
    assert_eq!(doc["result"]["mandatory_violations"], 0);
    assert_eq!(doc["result"]["justification"]["rnc()"], "CRJ");
}

#[test]
fn coherence_of_belief_frames() {
    let good = arglab(&["check", &sample("bc.dl"), "--frame", &format!("pef:{}", sample("bc.pef"))]);
    assert_eq!(good.code, 0, "{}", good.stdout);
    let bad = arglab(&["check", &sample("bc.dl"), "--frame", &format!("pef:{}", sample("bc_incoherent.pef"))]);
    assert_eq!(bad.code, 4);
    let doc = bad.json();
    let coherence = doc["result"]["properties"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["name"] == "coherence")
        .unwrap()
        .clone();
    assert_eq!(coherence["status"], "violated");
}

#[test]
fn explicit_ptf_frame() {
    let frame = format!("ptf:{}", sample("abstract.ptf"));
    let run = arglab(&["marginal", &sample("abstract.dl"), "--frame", &frame, "--target", "arg:r4(r3(r1()))"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = run.json();
    assert_eq!(fraction(&doc["result"]["arguments"][0]["marginals"]["ON"]), frac("1", "8"));
}

#[test]
fn caps_exit_with_three() {
    let run = arglab(&["--max-enum-args", "1", "label", &sample("bc.dl"), "--semantics", "preferred"]);
    assert_eq!(run.code, 3);
    let run = arglab(&["--max-args", "2", "args", &sample("running.dl")]);
    assert_eq!(run.code, 3);
    let run = arglab(&["--max-rules", "1", "marginal", &sample("running.dl")]);
    assert_eq!(run.code, 3);
}

#[test]
fn invalid_distribution_exits_with_two() {
    let pgf = scratch("bc-short.pgf", "{rb()} : 1/2.\n");
    let run = arglab(&["marginal", &sample("bc.dl"), "--frame", &format!("pgf:{pgf}")]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("sum"), "{}", run.stderr);
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "marginal",
        &sample("running.dl"),
        "--semantics",
        "preferred",
        "--weights",
        &sample("running.weights"),
    ];
    let first = arglab(&args);
    let second = arglab(&args);
    assert_eq!(first.code, 0);
    assert_eq!(first.stdout, second.stdout);
}
