use std::path::PathBuf;
use std::process::{Command, Output};

use cluster_core::{Laurent, Vars};
use serde_json::Value;

fn cluster(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cluster")).args(args).output().expect("binary runs")
}

fn cluster_threads(threads: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cluster"))
        .env("CLUSTER_THREADS", threads)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "failed: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&stdout(&cluster(&a))).expect("valid JSON")
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("cluster-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, body).expect("writable temp dir");
    p
}

#[test]
fn f_poly_a2() {
    let out = stdout(&cluster(&["f-poly", "--type", "A2", "--path", "2,1"]));
    assert_eq!(out, "F[1] = y1*y2 + y1 + 1\nF[2] = y2 + 1\n");
}

#[test]
fn graph_a2_principal_is_five_cycle() {
    let out = stdout(&cluster(&["graph", "--type", "A2", "--coeffs", "principal"]));
    assert_eq!(out.trim(), "vertices=5 edges=5 finite=true");
}

#[test]
fn ysystem_rank2_first_value() {
    let out = stdout(&cluster(&["ysystem", "--rank2", "2,2", "--steps", "3", "--initial", "u"]));
    assert!(out.contains("y[1;1] = (u2^2 + 2*u2 + 1) / u1\n"), "{out}");
    assert!(out.contains("y[1;3] = "), "{out}");
}

#[test]
fn g_and_d_vectors_a2() {
    let g = stdout(&cluster(&["g-vector", "--type", "A2", "--path", "2,1"]));
    assert_eq!(g, "g[1] = [-1, 0]\ng[2] = [0, -1]\n");
    let d = stdout(&cluster(&["d-vector", "--type", "A2", "--path", "2,1"]));
    assert_eq!(d, "d[1] = [1, 1]\nd[2] = [0, 1]\n");
}

#[test]
fn belt_accepts_negative_range() {
    let out = stdout(&cluster(&["belt", "--type", "B2", "--range", "-2:6"]));
    assert!(out.contains("violations=0"), "{out}");
}

#[test]
fn check_report_is_written() {
    let report = std::env::temp_dir().join(format!("cluster-cli-{}-report.json", std::process::id()));
    let out = stdout(&cluster(&["check", "--type", "A3", "--max-seeds", "50", "--report", report.to_str().unwrap()]));
    assert!(out.contains("vertices=14"), "{out}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let checks = v["checks"].as_array().expect("checks array");
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c["name"].is_string() && c["instances"].as_u64().unwrap() > 0);
        assert_eq!(c["violations"].as_array().unwrap().len(), 0);
    }
    std::fs::remove_file(report).ok();
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["walk", "--path", "1"],
        vec!["walk", "--type", "A2", "--rank2", "1,1", "--path", "1"],
        vec!["walk", "--type", "A2", "--path", "3"],
        vec!["graph", "--type", "A2", "--cap", "0"],
        vec!["belt", "--type", "A2", "--range", "2:1"],
        vec!["walk", "--type", "Q7", "--path", "1"],
        vec!["bogus"],
    ] {
        let o = cluster(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn usage_error_names_the_flag() {
    let o = cluster(&["graph", "--type", "A2", "--cap", "0"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--cap"));
}

#[test]
fn computation_failure_exits_1_with_error_name() {
    let o = cluster(&["universal", "--rank2", "2,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotFiniteType"));
}

#[test]
fn bad_thread_count_is_usage_error() {
    let o = cluster_threads("0", &["graph", "--type", "A2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn f_poly_json_round_trips() {
    let v = json(&["f-poly", "--type", "A3", "--path", "1,2,3,1"]);
    let yv = Vars::indexed("y", 3);
    let texts = v["F"].as_array().unwrap();
    let terms = v["F_terms"].as_array().unwrap();
    assert_eq!(texts.len(), 3);
    for (t, j) in texts.iter().zip(terms) {
        let from_json = Laurent::from_json(j, 3).unwrap();
        let from_text = Laurent::parse(t.as_str().unwrap(), &yv).unwrap();
        assert_eq!(from_json, from_text);
        assert_eq!(from_json.to_json(), *j);
    }
}

#[test]
fn mutate_json_feeds_back_as_matrix_input() {
    let v = json(&["mutate", "--type", "B3", "--path", "1,2,3"]);
    let last = v["matrices"].as_array().unwrap().last().unwrap().clone();
    let file = temp_file("mutated.json", &serde_json::json!({ "B": last }).to_string());
    let back = json(&["mutate", "--matrix", file.to_str().unwrap(), "--path", "3,2,1"]);
    let first = &v["matrices"][0];
    assert_eq!(back["matrices"].as_array().unwrap().last().unwrap(), first);
    std::fs::remove_file(file).ok();
}

#[test]
fn btilde_input_matches_principal_walk() {
    let file = temp_file("btilde.json", r#"{"Btilde": [[0, 1], [-1, 0], [1, 0], [0, 1]], "n": 2}"#);
    let from_file = stdout(&cluster(&["f-poly", "--btilde", file.to_str().unwrap(), "--path", "2,1"]));
    let named = stdout(&cluster(&["f-poly", "--type", "A2", "--path", "2,1"]));
    assert_eq!(from_file, named);
    std::fs::remove_file(file).ok();
}

#[test]
fn output_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("cluster-cli-{}-out.txt", std::process::id()));
    let direct = stdout(&cluster(&["belt", "--type", "A3", "--range", "-1:3"]));
    stdout(&cluster(&["belt", "--type", "A3", "--range", "-1:3", "--out", path.to_str().unwrap()]));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
    std::fs::remove_file(path).ok();
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        vec!["graph", "--type", "D4", "--coeffs", "principal", "--json"],
        vec!["graph", "--type", "B3", "--json"],
        vec!["check", "--type", "A3", "--max-seeds", "100", "--json"],
    ] {
        let one = stdout(&cluster_threads("1", &args));
        let four = stdout(&cluster_threads("4", &args));
        assert_eq!(one, four, "{args:?}");
    }
}

#[test]
fn graph_json_is_deterministic_and_sorted() {
    let a = stdout(&cluster(&["graph", "--type", "A3", "--json"]));
    let b = stdout(&cluster(&["graph", "--type", "A3", "--json"]));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["finite"], Value::Bool(true));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 14);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn universal_a2_relations() {
    let out = stdout(&cluster(&["universal", "--type", "A2"]));
    assert!(out.starts_with("generators = p[-α1], p[-α2], p[α1], p[α1+α2], p[α2]\n"), "{out}");
    assert!(out.contains("x[α1] x[-α1] = p[-α1] x[-α2] + p[α1] p[α1+α2]\n"), "{out}");
}

#[test]
fn specialize_a2_principal() {
    let out = stdout(&cluster(&["specialize", "--type", "A2", "--target", "principal"]));
    assert!(out.contains("p[-α2] -> y2\n") && out.contains("p[α1] -> y1\n"), "{out}");
    assert!(out.contains("relations_checked="), "{out}");
}

#[test]
fn affine_ones_give_fibonacci_squares() {
    let out = stdout(&cluster(&["ysystem", "--type", "A3(1)", "--steps", "8", "--initial", "u=1,1,1,1"]));
    let fib_squares: Vec<u64> = {
        let (mut a, mut b) = (0u64, 1u64);
        (0..40)
            .map(|_| {
                let s = a * a;
                (a, b) = (b, a + b);
                s
            })
            .collect()
    };
    for line in out.lines() {
        let v: u64 = line.rsplit(" = ").next().unwrap().parse().expect("integer value");
        assert!(fib_squares.contains(&v), "{line}");
    }
}

#[test]
fn fibonacci_sizes_a2() {
    let out = stdout(&cluster(&["fibonacci", "--type", "A2", "--sizes"]));
    assert!(out.contains("F[α1+α2] terms=3 value=3\n"), "{out}");
    assert!(out.ends_with("max_terms=3\n"), "{out}");
}
