//! End-to-end checks of the `satcube` binary: exit codes, file formats,
//! and round trips through the documented interfaces.

mod common;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use satcube::dimacs;

fn satcube_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_satcube"))
}

fn run(args: &[&str]) -> Output {
    satcube_bin().args(args).output().expect("spawn satcube")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = satcube_bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn satcube");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_str(out)).expect("stdout is JSON")
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("satcube-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

const SHATTERING: &str = "p cnf 3 3\n-1 2 3 0\n1 -2 3 0\n1 2 -3 0\n";
const FACE_REMOVAL: &str = "p cnf 3 4\n1 2 3 0\n1 2 -3 0\n1 -2 3 0\n1 -2 -3 0\n";
const FULL_CORE: &str =
    "p cnf 3 8\n1 2 3 0\n-1 2 3 0\n1 -2 3 0\n-1 -2 3 0\n1 2 -3 0\n-1 2 -3 0\n1 -2 -3 0\n-1 -2 -3 0\n";

#[test]
fn gen_roundtrips_through_dimacs() {
    let dir = tmp_dir("gen");
    let path = dir.join("inst.cnf");
    let out = run(&[
        "gen",
        "--vars",
        "12",
        "--clauses",
        "40",
        "--seed",
        "9",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("p cnf 12 40"));
    assert!(text.starts_with("c satcube "), "provenance comment present");
    let f = dimacs::parse_str(&text).unwrap();
    assert_eq!((f.n_vars(), f.n_clauses()), (12, 40));

    // same invocation, same bytes below the comments
    let again = run(&["gen", "--vars", "12", "--clauses", "40", "--seed", "9"]);
    let body: String = stdout_str(&again)
        .lines()
        .filter(|l| !l.starts_with('c'))
        .collect::<Vec<_>>()
        .join("\n");
    let file_body: String = text
        .lines()
        .filter(|l| !l.starts_with('c'))
        .collect::<Vec<_>>()
        .join("\n");
    assert_eq!(body, file_body);
}

#[test]
fn gen_supports_alpha_and_unique_mode() {
    let out = run(&["gen", "--vars", "12", "--alpha", "4.267", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout_str(&out).contains("p cnf 12 51"),
        "M = round(51.204)"
    );

    let out = run(&[
        "gen",
        "--vars",
        "3",
        "--clauses",
        "8",
        "--mode",
        "unique",
        "--seed",
        "7",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout_str(&out).contains("p cnf 3 8"));
}

#[test]
fn gen_flag_errors_exit_2() {
    // too few variables
    assert_eq!(code(&run(&["gen", "--vars", "2", "--clauses", "1"])), 2);
    // unique-mode capacity
    assert_eq!(
        code(&run(&[
            "gen",
            "--vars",
            "3",
            "--clauses",
            "9",
            "--mode",
            "unique"
        ])),
        2
    );
    // neither --clauses nor --alpha
    assert_eq!(code(&run(&["gen", "--vars", "5"])), 2);
    // both
    assert_eq!(
        code(&run(&[
            "gen",
            "--vars",
            "5",
            "--clauses",
            "3",
            "--alpha",
            "1.0"
        ])),
        2
    );
}

#[test]
fn enumerate_counts_and_dumps() {
    let dir = tmp_dir("enum");
    let dump = dir.join("bits.bin");
    let out = run_with_stdin(&["enumerate", "--dump", dump.to_str().unwrap()], SHATTERING);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["n_solutions"], 5);
    assert_eq!(v["is_empty"], false);
    assert_eq!(fs::read(&dump).unwrap(), vec![3, 0, 0, 0, 0, 0, 0, 0, 0xE9]);
}

#[test]
fn topology_reports_the_fixtures() {
    let v = stdout_json(&run_with_stdin(&["topology"], SHATTERING));
    assert_eq!(v["n_clusters"], 2);
    assert_eq!(v["cluster_sizes"], serde_json::json!([4, 1]));
    assert_eq!(v["n_locally_frozen_per_cluster"], serde_json::json!([0, 3]));

    let v = stdout_json(&run_with_stdin(&["topology"], FACE_REMOVAL));
    assert_eq!(v["global_frozen"], serde_json::json!([1]));
    assert_eq!(v["n_solutions"], 4);

    let v = stdout_json(&run_with_stdin(&["topology"], "p cnf 3 0\n"));
    assert_eq!(v["n_clusters"], 1);
    assert_eq!(v["n_solutions"], 8);
}

#[test]
fn topology_exit_codes() {
    // parse error -> 4
    let out = run_with_stdin(&["topology"], "p cnf 3 1\n1 2 0\n");
    assert_eq!(code(&out), 4);
    // cap exceeded -> 3 (fake a 23-var header with no clauses)
    let out = run_with_stdin(&["topology", "--cap", "22"], "p cnf 23 0\n");
    assert_eq!(code(&out), 3);
}

#[test]
fn replay_emits_one_json_line_per_prefix() {
    let out = run_with_stdin(&["replay"], SHATTERING);
    assert_eq!(code(&out), 0);
    let lines: Vec<serde_json::Value> = stdout_str(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["n_solutions"], 7);
    assert_eq!(lines[2]["n_clusters"], 2);
    assert_eq!(lines[2]["n_global_frozen"], 0);

    // --replay flag on topology behaves identically
    let out2 = run_with_stdin(&["topology", "--replay"], SHATTERING);
    assert_eq!(stdout_str(&out), stdout_str(&out2));

    // the UNSAT tail reports null frozen count
    let out = run_with_stdin(&["replay"], FULL_CORE);
    let last: serde_json::Value =
        serde_json::from_str(stdout_str(&out).lines().last().unwrap()).unwrap();
    assert_eq!(last["n_solutions"], 0);
    assert_eq!(last["n_global_frozen"], serde_json::Value::Null);
}

#[test]
fn solve_exit_codes_and_model() {
    let out = run_with_stdin(&["solve"], FACE_REMOVAL);
    assert_eq!(code(&out), 10, "SAT exits 10");
    let v = stdout_json(&out);
    assert_eq!(v["status"], "sat");
    let model: Vec<i64> = v["model"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_i64().unwrap())
        .collect();
    assert_eq!(model[0], 1, "x1 forced true");
    assert_eq!(v["stats"]["branches_to_first_solution"], 5);

    let out = run_with_stdin(&["solve"], FULL_CORE);
    assert_eq!(code(&out), 20, "UNSAT exits 20");
    let v = stdout_json(&out);
    assert_eq!(v["status"], "unsat");
    assert_eq!(v["model"], serde_json::Value::Null);
    assert_eq!(v["stats"]["conflicts"], 8);

    let out = run_with_stdin(&["solve", "--budget", "3"], FULL_CORE);
    assert_eq!(code(&out), 0, "budget exhaustion exits 0");
    let v = stdout_json(&out);
    assert_eq!(v["status"], "budget_exhausted");
    assert_eq!(v["stats"]["nodes_visited"], 3);
}

#[test]
fn extremal_constructions_verify() {
    let dir = tmp_dir("extremal");

    let maxsat = dir.join("maxsat.cnf");
    let out = run(&[
        "extremal",
        "make-maxsat",
        "--vars",
        "4",
        "--target",
        "0",
        "--out",
        maxsat.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let sidecar: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("maxsat.cnf.json")).unwrap()).unwrap();
    assert_eq!(sidecar["kind"], "max_sat");
    assert_eq!(sidecar["target"], 0);
    assert_eq!(sidecar["excluded_clauses"].as_array().unwrap().len(), 4);

    let out = run(&[
        "verify",
        "--in",
        maxsat.to_str().unwrap(),
        "--expect",
        "unique:0",
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&[
        "verify",
        "--in",
        maxsat.to_str().unwrap(),
        "--expect",
        "unique:3",
    ]);
    assert_eq!(code(&out), 5);

    let core = dir.join("core.cnf");
    let out = run(&[
        "extremal",
        "make-core",
        "--vars",
        "10",
        "--triple",
        "2,5,9",
        "--out",
        core.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&core).unwrap();
    assert!(text.contains("p cnf 10 8"));
    assert_eq!(
        code(&run(&[
            "verify",
            "--in",
            core.to_str().unwrap(),
            "--expect",
            "unsat"
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "verify",
            "--in",
            core.to_str().unwrap(),
            "--expect",
            "sat"
        ])),
        5
    );
}

#[test]
fn verify_rejects_the_full_core_as_sat() {
    let dir = tmp_dir("verify");
    let path = dir.join("core3.cnf");
    fs::write(&path, FULL_CORE).unwrap();
    let out = run(&["verify", "--in", path.to_str().unwrap(), "--expect", "sat"]);
    assert_eq!(code(&out), 5);
    assert!(stdout_str(&out).contains("mismatch"));
}

#[test]
fn bounds_emits_decimal_strings() {
    let v = stdout_json(&run(&["bounds", "--vars", "10"]));
    assert_eq!(v["m_max"], "960");
    assert_eq!(v["m_maxsat"], "840");
    assert_eq!(v["n_min_cores"], "120");
    assert_eq!(v["n_maximal_sat_instances"], "1024");
    assert_eq!(v["alpha_min_unsat"]["num"], 8);
    assert_eq!(v["alpha_min_unsat"]["den"], 10);
    assert_eq!(code(&run(&["bounds", "--vars", "2"])), 2);
}

#[test]
fn sweep_minimal_config() {
    let dir = tmp_dir("sweep");
    let config = dir.join("sweep.json");
    fs::write(&config, r#"{ "N": 12, "alphas": [0], "K": 10, "seed": 4 }"#).unwrap();
    let csv_path = dir.join("rows.csv");
    let out = run(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let csv = fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), satcube::experiments::CSV_HEADER);
    let row = lines.next().unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    assert_eq!(cells[0], "0");
    assert_eq!(cells[3], "1", "p_sat = 1.0 at alpha 0");
    assert_eq!(cells[6], "4096", "mean solutions exact at alpha 0");

    let sidecar: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("rows.csv.json")).unwrap()).unwrap();
    assert_eq!(sidecar["reference"]["alpha_s"], 4.267);
    assert_eq!(sidecar["reference"]["alpha_d"], 3.86);
    assert_eq!(sidecar["config"]["master_seed"], 4);

    // identical rerun, byte-identical CSV
    let second = dir.join("rows2.csv");
    run(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--out",
        second.to_str().unwrap(),
    ]);
    assert_eq!(fs::read(&csv_path).unwrap(), fs::read(&second).unwrap());
}

#[test]
fn sweep_config_errors_exit_2() {
    let dir = tmp_dir("sweep-bad");
    let bad = dir.join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&run(&["sweep", "--config", bad.to_str().unwrap()])), 2);

    let empty_grid = dir.join("empty.json");
    fs::write(
        &empty_grid,
        r#"{ "N": 8, "alphas": [], "K": 5, "seed": 1 }"#,
    )
    .unwrap();
    assert_eq!(
        code(&run(&["sweep", "--config", empty_grid.to_str().unwrap()])),
        2
    );
}

#[test]
fn outputs_embed_provenance() {
    let v = stdout_json(&run_with_stdin(&["topology"], SHATTERING));
    assert_eq!(v["tool_version"], env!("CARGO_PKG_VERSION"));
    assert!(v["invocation"].as_str().unwrap().contains("topology"));

    let v = stdout_json(&run_with_stdin(&["solve"], FACE_REMOVAL));
    assert!(v["invocation"].as_str().unwrap().contains("solve"));
}

#[test]
fn binary_dump_golden_file_roundtrip() {
    // golden bytes for the shattering instance, then read back via the API
    let dir = tmp_dir("golden");
    let dump = dir.join("shatter.bin");
    let out = run_with_stdin(&["enumerate", "--dump", dump.to_str().unwrap()], SHATTERING);
    assert_eq!(code(&out), 0);
    let bytes = fs::read(&dump).unwrap();
    let s = satcube::SolutionSet::read_binary(bytes.as_slice()).unwrap();
    assert_eq!(s.count(), 5);
    assert_eq!(s.indices().collect::<Vec<_>>(), vec![0, 3, 5, 6, 7]);
}
