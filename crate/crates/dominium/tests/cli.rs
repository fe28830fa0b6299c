//! End-to-end exercises of the binary: flag surface, exit codes, and the
//! stability of both report formats.

use std::process::{Command, Output};

use serde_json::Value;

fn dominium(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dominium"))
        .args(args)
        .env_remove("DOMINIUM_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn dominium_env(args: &[&str], max_order: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dominium"))
        .args(args)
        .env("DOMINIUM_MAX_ORDER", max_order)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "command failed: {out:?}");
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn solve_reports_value_witness_and_method() {
    let doc = json(&dominium(&[
        "solve", "--family", "h:4,2", "--param", "gamma-xk", "--k", "4",
    ]));
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["command"], "solve");
    assert_eq!(doc["source"], "h:4,2");
    let r = &doc["results"][0];
    assert_eq!(r["parameter"], "gamma_xk");
    assert_eq!(r["k"], 4);
    assert_eq!(r["value"], 8);
    assert_eq!(r["witness"], serde_json::json!([0, 1, 2, 3, 4, 5, 6, 7]));
    assert_eq!(r["method"], "branch_and_bound");
    assert!(r["nodes_explored"].as_u64().unwrap() > 0);
}

#[test]
fn solve_oracle_backend_matches() {
    let fast = json(&dominium(&[
        "solve", "--family", "cycle:6", "--param", "gamma-k", "--k", "2",
    ]));
    let slow = json(&dominium(&[
        "solve", "--family", "cycle:6", "--param", "gamma-k", "--k", "2", "--method", "oracle",
    ]));
    assert_eq!(fast["results"][0]["value"], 3);
    assert_eq!(slow["results"][0]["value"], 3);
    assert_eq!(slow["results"][0]["method"], "oracle");
    assert_eq!(
        fast["results"][0]["witness"], slow["results"][0]["witness"],
        "both backends return the lexicographically least witness"
    );
}

#[test]
fn solve_k_range_and_repeated_params() {
    let doc = json(&dominium(&[
        "solve",
        "--family",
        "complete:6",
        "--param",
        "gamma-k",
        "--param",
        "rho",
        "--k",
        "2..4",
    ]));
    let results = doc["results"].as_array().unwrap();
    // gamma-k at k=2,3,4 plus one rho row.
    assert_eq!(results.len(), 4);
    assert_eq!(results[0]["k"], 2);
    assert_eq!(results[2]["k"], 4);
    assert_eq!(results[3]["parameter"], "rho");
    assert!(results[3].get("k").is_none(), "rho rows carry no k");
}

#[test]
fn solve_csv_shape() {
    let out = dominium(&[
        "solve",
        "--family",
        "bipartite:3,5",
        "--param",
        "gamma-k",
        "--k",
        "3",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "graph_id,parameter,k,value,witness,nodes_explored,method"
    );
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[1], "gamma_k");
    assert_eq!(fields[2], "3");
    assert_eq!(fields[3], "3");
    assert_eq!(fields[4], "0 1 2");
    assert_eq!(fields[6], "branch_and_bound");
}

#[test]
fn verify_marks_tightness_and_exits_zero() {
    let out = dominium(&["verify", "--family", "bipartite:3,5", "--k", "3"]);
    assert_eq!(exit_code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["command"], "verify");
    let report = &doc["reports"][0];
    assert_eq!(report["exact"]["gamma_k"], 3);
    assert_eq!(report["exact"]["gamma_xk"], 5);
    let thm22 = &report["bounds"][0];
    assert_eq!(thm22["name"], "thm22_upper");
    assert_eq!(thm22["verdict"], "tight");
    assert_eq!(thm22["value"]["num"], 5);
    assert_eq!(thm22["value"]["den"], 1);
    assert_eq!(doc["summary"]["violated"], 0);
}

#[test]
fn verify_undefined_parameter_is_not_applicable_not_an_error() {
    let out = dominium(&["verify", "--family", "cycle:4", "--k", "4"]);
    assert_eq!(
        exit_code(&out),
        0,
        "undefined gamma_xk is reported, not fatal"
    );
    let doc = json(&out);
    let report = &doc["reports"][0];
    assert_eq!(report["exact"]["gamma_xk"], Value::Null);
    for bound in report["bounds"].as_array().unwrap() {
        assert_eq!(bound["verdict"], "not_applicable");
        assert_eq!(bound["value"], Value::Null);
    }
    assert_eq!(doc["summary"]["not_applicable"], 6);
}

#[test]
fn verify_csv_has_the_documented_columns() {
    let out = dominium(&[
        "verify",
        "--family",
        "complete:5",
        "--k",
        "2..3",
        "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "graph_id,n,m,delta,k,gamma_k,gamma_xk,rho,bound_name,bound_num,bound_den,verdict"
    );
    // two k values x six bounds
    assert_eq!(lines.len(), 13);
    assert!(lines[1].starts_with("D~{,5,10,4,2,"));
}

#[test]
fn verify_reads_graph6_files_with_comments() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.g6");
    std::fs::write(&path, "# two graphs\n\nD~{\nDqK\n").unwrap();
    let out = dominium(&["verify", "--input", path.to_str().unwrap(), "--k", "2"]);
    assert_eq!(exit_code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["summary"]["graphs"], 2);
    assert_eq!(doc["reports"][0]["graph_id"], "D~{");
    assert_eq!(doc["reports"][1]["graph_id"], "DqK");
}

#[test]
fn malformed_input_file_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.g6");
    std::fs::write(&path, "D~{\nnot graph6 at all\n").unwrap();
    let out = dominium(&["verify", "--input", path.to_str().unwrap(), "--k", "2"]);
    assert_eq!(exit_code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains(":2:"), "error should cite line 2: {err}");
}

#[test]
fn generate_writes_one_canonical_line() {
    let out = dominium(&["generate", "--family", "join:complete:3,cycle:3"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "E~~w\n");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h42.g6");
    let out = dominium(&[
        "generate",
        "--family",
        "h:4,2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1);
    let g = dominium::graph6::from_graph6(text.trim()).unwrap();
    assert_eq!(g.n(), 10);
}

#[test]
fn generate_gnp_is_reproducible() {
    let a = dominium(&["generate", "--family", "gnp:12,0.5,42"]);
    let b = dominium(&["generate", "--family", "gnp:12,0.5,42"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = dominium(&["generate", "--family", "gnp:12,0.5,43"]);
    assert_ne!(a.stdout, c.stdout, "different seed should change the graph");
}

#[test]
fn generate_accepts_large_orders_without_the_solve_guard() {
    let out = dominium(&["generate", "--family", "complete:64"]);
    assert!(out.status.success());
    let line = String::from_utf8(out.stdout).unwrap();
    assert!(
        line.starts_with('~'),
        "order 64 uses the long graph6 header"
    );
}

#[test]
fn construct_thm22_trace_matches_the_worked_example() {
    let doc = json(&dominium(&[
        "construct",
        "--method",
        "thm22",
        "--family",
        "bipartite:2,3",
        "--k",
        "2",
    ]));
    assert_eq!(doc["command"], "construct");
    assert_eq!(doc["method"], "thm22");
    let t = &doc["traces"][0];
    assert_eq!(t["d"], serde_json::json!([0, 1]));
    assert_eq!(t["u"], serde_json::json!([2]));
    assert_eq!(t["d_double_prime"], serde_json::json!([0, 1, 2]));
    assert_eq!(t["output_size"], 3);
    assert_eq!(t["size_bound"], 3);
    assert_eq!(t["fallback"], false);
    assert_eq!(t["counting_inequality_ok"], true);
    assert_eq!(t["valid"], true);
}

#[test]
fn construct_accepts_an_explicit_starting_set() {
    let doc = json(&dominium(&[
        "construct",
        "--method",
        "thm23",
        "--family",
        "h:4,2",
        "--k",
        "4",
        "--set",
        "8,9",
    ]));
    let t = &doc["traces"][0];
    assert_eq!(t["packing"], serde_json::json!([8, 9]));
    assert_eq!(t["output_size"], 8);
    assert_eq!(t["bound"], 8);
    assert_eq!(t["valid"], true);
}

#[test]
fn construct_infeasible_set_names_the_precondition() {
    let out = dominium(&[
        "construct",
        "--method",
        "thm23",
        "--family",
        "cycle:6",
        "--k",
        "2",
        "--set",
        "0,1",
    ]);
    assert_eq!(exit_code(&out), 3);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("2-packing"), "unexpected message: {err}");

    let out = dominium(&[
        "construct",
        "--method",
        "thm22",
        "--family",
        "cycle:5",
        "--k",
        "1",
    ]);
    assert_eq!(exit_code(&out), 3);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("at least 2"), "unexpected message: {err}");
}

#[test]
fn construct_csv_shape() {
    let out = dominium(&[
        "construct",
        "--method",
        "thm22",
        "--family",
        "complete:6",
        "--k",
        "3",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "graph_id,method,k,input_size,output_size,bound,valid,fallback"
    );
    assert_eq!(lines[1], "E~~w,thm22,3,3,5,5,true,false");
}

#[test]
fn sweep_exhaustive_counts_no_violations() {
    let out = dominium(&["sweep", "--exhaustive", "5", "--k", "2"]);
    assert_eq!(exit_code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["command"], "sweep");
    assert_eq!(doc["corpus"], "exhaustive:5");
    assert_eq!(doc["aggregate"]["graphs"], 1024);
    assert_eq!(doc["aggregate"]["totals"]["violated"], 0);
    let per_bound = doc["aggregate"]["per_bound"].as_array().unwrap();
    assert_eq!(per_bound.len(), 6);
    for b in per_bound {
        assert_eq!(b["violated"], 0);
    }
}

#[test]
fn sweep_gap_zero_exactly_on_tight_rows() {
    let out = dominium(&[
        "sweep",
        "--gnp",
        "8,0.6",
        "--samples",
        "40",
        "--seed",
        "3",
        "--k",
        "2",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc = json(&out);
    for b in doc["aggregate"]["per_bound"].as_array().unwrap() {
        let tight = b["tight_instances"].as_array().unwrap().len();
        assert_eq!(b["tight"], tight, "tight count matches instance list");
        if tight > 0 {
            // a zero gap must be attainable
            assert!(b["name"] != Value::Null);
            let min = &b["gap_min"];
            let max = &b["gap_max"];
            // tight rows exist, so the gap range must straddle or touch zero
            let min_num = min["num"].as_i64().unwrap();
            let max_num = max["num"].as_i64().unwrap();
            assert!(min_num <= 0 && max_num >= 0);
        }
    }
}

#[test]
fn sweep_exhaustive_above_cap_is_a_config_error() {
    let out = dominium(&["sweep", "--exhaustive", "7", "--k", "2"]);
    assert_eq!(exit_code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("capped"), "unexpected message: {err}");
}

#[test]
fn exit_codes_for_config_and_infeasible_requests() {
    // unknown family kind
    assert_eq!(
        exit_code(&dominium(&[
            "solve",
            "--family",
            "petersen:10",
            "--param",
            "rho"
        ])),
        2
    );
    // malformed k range
    assert_eq!(
        exit_code(&dominium(&[
            "solve", "--family", "cycle:5", "--param", "gamma-k", "--k", "4..2"
        ])),
        2
    );
    // gamma-k without --k
    assert_eq!(
        exit_code(&dominium(&[
            "solve", "--family", "cycle:5", "--param", "gamma-k"
        ])),
        2
    );
    // clap-level: missing required source
    assert_eq!(exit_code(&dominium(&["solve", "--param", "rho"])), 2);
    // clap-level: both sources at once
    assert_eq!(
        exit_code(&dominium(&[
            "solve", "--family", "cycle:5", "--input", "x.g6", "--param", "rho"
        ])),
        2
    );
    // undefined parameter requested directly
    assert_eq!(
        exit_code(&dominium(&[
            "solve", "--family", "cycle:4", "--param", "gamma-xk", "--k", "4"
        ])),
        3
    );
}

#[test]
fn order_guard_respects_the_environment_override() {
    let args = ["solve", "--family", "gnp:25,0.3,1", "--param", "rho"];
    assert_eq!(exit_code(&dominium(&args)), 2, "default solve guard is 20");
    let out = dominium_env(&args, "30");
    assert_eq!(exit_code(&out), 0, "override lifts the guard: {out:?}");
    assert_eq!(exit_code(&dominium_env(&args, "0")), 2);
    assert_eq!(exit_code(&dominium_env(&args, "65")), 2);
    assert_eq!(exit_code(&dominium_env(&args, "many")), 2);
    // the same env lowers the generation guard too
    let gen = ["generate", "--family", "complete:40"];
    assert_eq!(exit_code(&dominium(&gen)), 0);
    assert_eq!(exit_code(&dominium_env(&gen, "30")), 2);
}

#[test]
fn reports_can_be_written_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = dominium(&[
        "verify",
        "--family",
        "h:4,2",
        "--k",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema_version"], 1);
    let bounds = doc["reports"][0]["bounds"].as_array().unwrap();
    let tight: Vec<&str> = bounds
        .iter()
        .filter(|b| b["verdict"] == "tight")
        .map(|b| b["name"].as_str().unwrap())
        .collect();
    assert!(tight.contains(&"thm23_lower"));
    assert!(tight.contains(&"thm23_upper"));
}
