//! End-to-end runs of the binary: exit codes, schema conformance, golden
//! reports and batch mode.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use oddcycle::cli::{batch_rows, rows_to_csv};
use oddcycle::gen::connected_graphs;
use oddcycle::io::write_graph6;
use oddcycle::recognize::gstar_oracle;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_oddcycle"))
}

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out: Output = bin().args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8");
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), json, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn assert_schema(name: &str, report: &Value) {
    let path = manifest().join("schemas").join(format!("{name}.json"));
    let schema: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name} schema violations: {errors:?}");
}

/// Compares against a pinned report; `UPDATE_GOLDEN=1` rewrites it.
fn assert_golden(name: &str, report: &Value) {
    let path = manifest().join("tests/golden").join(format!("{name}.json"));
    let rendered = serde_json::to_string_pretty(report).unwrap() + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &rendered).unwrap();
    }
    let pinned = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(rendered, pinned, "report differs from {}", path.display());
}

const THETA_124: &str = "0 1\n0 2\n2 1\n0 3\n3 4\n4 5\n5 1\n";
const K4: &str = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const BOWTIE: &str = "0 1\n1 2\n0 2\n0 3\n3 4\n0 4\n";
const K5_G6: &str = "D~{\n";

#[test]
fn classify_theta_golden() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "theta.txt", THETA_124);
    let (code, report, _) = run(&["classify", &f]);
    assert_eq!(code, 0);
    assert_eq!(report["in_gstar"], true);
    assert_eq!(report["blocks"][0]["verdict"], "ThetaOneEven");
    assert_schema("classify", &report);
    assert_golden("theta_124_classify", &report);
}

#[test]
fn k4_orientation_golden() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "k4.txt", K4);
    let (code, report, _) = run(&["orient", &f, "--k", "4", "--v", "0"]);
    assert_eq!(code, 0);
    assert_eq!(report["max_outdegree"], 3);
    assert_eq!(report["bidirected_pairs"].as_array().unwrap().len(), 1);
    assert_schema("orientation", &report);
    assert_golden("k4_orientation", &report);
}

#[test]
fn windmill_proof_log_golden() {
    let (code, report, _) = run(&["verify", "--lemma", "windmill"]);
    assert_eq!(code, 0);
    assert_eq!(report["certified"], true);
    assert_schema("proof_log", &report);
    assert_golden("windmill_proof_log", &report);
}

#[test]
fn orient_then_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bowtie.txt", BOWTIE);
    let out = dir.path().join("o.json");
    let (code, _, _) = run(&["orient", &f, "--t", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let stored: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_schema("orientation", &stored);
    let (code, report, _) = run(&["verify", "--check", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["kernel_perfect"], true);
    assert_eq!(report["every_clique_has_sink"], true);
    assert_schema("check", &report);

    // a directed triangle on one triangle's edges is not kernel-perfect
    let mut tampered = stored.clone();
    let edges: Vec<(u64, u64)> = stored["graph"]["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e[0].as_u64().unwrap(), e[1].as_u64().unwrap()))
        .collect();
    let id = |a, b| edges.iter().position(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a)).unwrap();
    let cyc = [id(0, 1), id(1, 2), id(0, 2)];
    let mut arcs = vec![(cyc[0], cyc[1]), (cyc[1], cyc[2]), (cyc[2], cyc[0])];
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
            let touch = a == c || a == d || b == c || b == d;
            if touch && !(cyc.contains(&i) && cyc.contains(&j)) {
                arcs.push((i, j));
            }
        }
    }
    tampered["arcs"] = serde_json::json!(arcs);
    tampered["certificate"] = Value::Null;
    let bad = write(dir.path(), "bad.json", &tampered.to_string());
    let (code, report, _) = run(&["verify", "--check", &bad]);
    assert_eq!(code, 1);
    assert_eq!(report["kernel_perfect"], false);
    assert_schema("check", &report);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write(dir.path(), "k5.g6", K5_G6);
    let bowtie = write(dir.path(), "bowtie.txt", BOWTIE);

    let (code, report, stderr) = run(&["orient", &k5]);
    assert_eq!(code, 1);
    assert_eq!(report["error"]["kind"], "not_in_class");
    assert!(!stderr.contains("panicked"));
    assert_schema("error", &report);

    let (code, report, _) = run(&["orient", &bowtie, "--t", "3"]);
    assert_eq!(code, 2);
    assert_schema("error", &report);

    let (code, _, _) = run(&["orient"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["classify", "/nonexistent/graph.txt"]);
    assert_eq!(code, 2);

    let (code, report, _) = run(&["verify", "--lemma", "diamond", "--universe", "7", "--budget", "1000"]);
    assert_eq!(code, 3);
    assert_schema("error", &report);

    let (code, report, _) = run(&["classify", &k5]);
    assert_eq!(code, 1);
    assert_eq!(report["in_gstar"], false);
    assert_schema("classify", &report);
}

#[test]
fn reports_match_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", K4);
    let diamond = write(dir.path(), "diamond.txt", "0 1\n0 2\n1 2\n1 3\n2 3\n");
    let lists =
        write(dir.path(), "lists.json", r#"{"0":[1,2,3],"1":[1,2,3],"2":[1,2,3],"3":[1,2,3],"4":[1,2,3],"5":[1,2,3]}"#);

    let (code, report, _) = run(&["color", &k4, "--lists", &lists]);
    assert_eq!(code, 0);
    assert_eq!(report["proper"], true);
    assert_schema("color", &report);
    let (code, report, _) = run(&["color", &k4, "--t", "4", "--m", "2", "--universe", "12"]);
    assert_eq!(code, 0);
    assert_schema("color", &report);

    let (code, report, _) = run(&["paint", &k4, "--games", "5", "--exact"]);
    assert_eq!(code, 0);
    assert_eq!(report["painter_wins"], 5);
    assert_schema("paint", &report);
    let (code, report, _) = run(&["paint", &diamond, "--k", "3", "--v", "0"]);
    assert_eq!(code, 0);
    assert_eq!(report["kernel_strategy"], false);
    assert_eq!(report["paintable"], true);
    assert_schema("paint", &report);

    let (code, report, _) = run(&["verify", "--lemma", "nok4minus"]);
    assert_eq!(code, 0);
    assert_eq!(report["orientations_scanned"], 6561);
    assert_eq!(report["found"], 0);
    assert_schema("nok4minus", &report);
    let (code, report, _) = run(&["verify", "--lemma", "maffray", "--trials", "200"]);
    assert_eq!(code, 0);
    assert_schema("maffray", &report);
    let (code, report, _) = run(&["verify", "--lemma", "diamond", "--universe", "4"]);
    assert_eq!(code, 0);
    assert_eq!(report["failures"], 0);
    assert_schema("diamond", &report);
}

#[test]
fn seeded_runs_repeat() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bowtie.txt", BOWTIE);
    let a = run(&["color", &f, "--seed", "9"]).1;
    let b = run(&["color", &f, "--seed", "9"]).1;
    assert_eq!(a, b);
}

#[test]
fn batch_empty_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("summary.json");
    let empty = dir.path().join("empty");
    fs::create_dir(&empty).unwrap();
    let (code, _, _) = run(&["batch", empty.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["summary"]["graphs"], 0);
    assert_schema("batch", &report);
    let csv = fs::read_to_string(out.with_extension("csv")).unwrap();
    assert!(csv.starts_with("name,status"));
    assert_eq!(csv.lines().count(), 1);
}

#[test]
fn batch_flags_corrupt_file() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a_k4.txt", K4);
    write(dir.path(), "b_broken.txt", "0 1\n1 x\n");
    write(dir.path(), "c_k5.g6", K5_G6);
    write(dir.path(), "d_bowtie.txt", BOWTIE);
    let (code, report, _) = run(&["batch", dir.path().to_str().unwrap(), "--oracle"]);
    assert_eq!(code, 0);
    assert_schema("batch", &report);
    let rows = report["rows"].as_array().unwrap();
    let names: Vec<&str> = rows.iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["a_k4.txt", "b_broken.txt", "c_k5.g6", "d_bowtie.txt"]);
    assert_eq!(rows[1]["status"], "error");
    assert!(rows[1]["error"].as_str().unwrap().contains("parse"));
    for i in [0, 2, 3] {
        assert_eq!(rows[i]["status"], "ok");
        assert_eq!(rows[i]["oracle_agrees"], true);
    }
    assert_eq!(rows[2]["in_gstar"], false);
    assert_eq!(report["summary"]["errors"], 1);
}

#[test]
fn batch_corpus_matches_oracle_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut expected = 0;
    let mut total = 0;
    for n in 1..=6 {
        let mut text = String::new();
        for g in connected_graphs(n) {
            total += 1;
            expected += usize::from(gstar_oracle(&g, usize::MAX).unwrap().is_none());
            text.push_str(&write_graph6(&g));
            text.push('\n');
        }
        fs::write(dir.path().join(format!("connected_{n}.g6")), text).unwrap();
    }
    let rows = batch_rows(dir.path(), None, false, 1).unwrap();
    assert_eq!(rows.len(), total);
    let members = rows.iter().filter(|r| r.in_gstar == Some(true)).count();
    assert_eq!(members, expected);
    assert!(rows.iter().all(|r| r.status == "ok"), "{:?}", rows.iter().find(|r| r.status != "ok"));
    assert_eq!(rows[0].name, "connected_1.g6");
    assert!(rows_to_csv(&rows).lines().count() == total + 1);
}
