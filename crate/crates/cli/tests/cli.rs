use std::fs;
use std::path::Path;
use std::process::Command;

use proptest::prelude::*;
use qsuperpose::encoding::AddressMap;
use qsuperpose::{lower, synthesize, GateKind};
use qsuperpose_cli::document::parse_document;
use qsuperpose_cli::{qasm, run, EXIT_INVALID, EXIT_OK, EXIT_VERIFY_FAILED};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qsuperpose").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn synth_qasm_for_seven_has_three_entanglers() {
    let (code, out, _) = invoke(&["synth", "7", "--lower", "--format", "qasm"]);
    assert_eq!(code, EXIT_OK);
    let entanglers = out
        .lines()
        .filter(|l| l.starts_with("cx ") || l.starts_with("cz "))
        .count();
    assert_eq!(entanglers, 3);
    assert_eq!(qasm::parse(&out).unwrap().entangler_count(), 3);
}

#[test]
fn synth_doc_for_sixteen_lists_hadamards() {
    let (code, out, _) = invoke(&["synth", "16", "--format", "doc"]);
    assert_eq!(code, EXIT_OK);
    let c = parse_document(&out).unwrap();
    assert_eq!(c.gate_histogram().into_iter().collect::<Vec<_>>(), vec![(GateKind::H, 4)]);
}

#[test]
fn synth_errors() {
    let (code, _, err) = invoke(&["synth", "0"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("N must be at least 1"));
    let (code, _, err) = invoke(&["synth", "7", "--format", "qasm"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("requires --lower"));
    let (code, _, _) = invoke(&["synth", "seven"]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn synth_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.qasm");
    let (code, out, _) = invoke(&["synth", "29", "--lower", "--format", "qasm", "-o", path_str(&path)]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(qasm::parse(&text).unwrap(), lower(&synthesize(29).unwrap()).0);
}

#[test]
fn verify_outcomes() {
    let (code, out, _) = invoke(&["verify", "7"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("PASS"));

    let (code, out, _) = invoke(&["verify", "1048576"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("entanglers = 0"));

    let (code, out, _) = invoke(&["verify", "29", "--tolerance", "1e-30"]);
    assert_eq!(code, EXIT_VERIFY_FAILED);
    assert!(out.contains("FAIL"));

    let (code, _, err) = invoke(&["verify", &((1u64 << 24) + 1).to_string()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("qubit cap exceeded"));
}

#[test]
fn count_reports_case() {
    let (code, out, _) = invoke(&["count", "29"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("cnot   6"));
    assert!(out.contains("case   IV"));
}

#[test]
fn scan_writes_both_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let rows = dir.path().join("rows.csv");
    let summary = dir.path().join("summary.csv");
    let (code, _, _) = invoke(&[
        "scan",
        "--n-max",
        "5",
        "--csv",
        path_str(&rows),
        "--summary",
        path_str(&summary),
    ]);
    assert_eq!(code, EXIT_OK);
    let summary = fs::read_to_string(summary).unwrap();
    assert!(summary.lines().any(|l| l.starts_with("5,7,")), "{summary}");

    let rows = fs::read_to_string(rows).unwrap();
    assert_eq!(rows.lines().next(), Some("N,n,xi,M,g,m,cnot,case"));
    assert_eq!(rows.lines().count(), 1 + 30);
}

#[test]
fn scan_width_three_rows() {
    let dir = tempfile::tempdir().unwrap();
    let rows = dir.path().join("rows.csv");
    let (code, _, _) = invoke(&["scan", "--n-max", "3", "--csv", path_str(&rows)]);
    assert_eq!(code, EXIT_OK);
    let text = fs::read_to_string(rows).unwrap();
    let cnots: Vec<&str> = text
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(1) == Some("3"))
        .map(|l| l.split(',').nth(6).unwrap())
        .collect();
    assert_eq!(cnots, ["2", "1", "3", "0"]);
}

#[test]
fn scan_rejects_small_width() {
    assert_eq!(invoke(&["scan", "--n-max", "1"]).0, EXIT_INVALID);
}

#[test]
fn encode_quantum_example() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.txt");
    fs::write(&data, "Q\nU\nA\nN\nT\nU\nM\n").unwrap();
    let map_a = dir.path().join("a.json");
    let map_b = dir.path().join("b.json");
    let circ = dir.path().join("c.qasm");
    let args = |map: &Path| {
        vec![
            "encode".to_string(),
            path_str(&data).to_string(),
            "--seed".into(),
            "17".into(),
            "--mapping-out".into(),
            path_str(map).to_string(),
            "--circuit-out".into(),
            path_str(&circ).to_string(),
        ]
    };
    let a: Vec<String> = args(&map_a);
    let (code, out, _) = invoke(&a.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("N = 7") && out.contains("n = 3") && out.contains("cnot = 3"));

    let b: Vec<String> = args(&map_b);
    assert_eq!(invoke(&b.iter().map(String::as_str).collect::<Vec<_>>()).0, EXIT_OK);
    assert_eq!(fs::read(&map_a).unwrap(), fs::read(&map_b).unwrap());

    let map = AddressMap::from_document(&fs::read_to_string(&map_a).unwrap()).unwrap();
    assert_eq!(map.len(), 7);
    assert_eq!(qasm::parse(&fs::read_to_string(&circ).unwrap()).unwrap().entangler_count(), 3);

    let (code, out, _) = invoke(&["resolve", path_str(&map_a), "101"]);
    assert_eq!(code, EXIT_OK);
    let addr: usize = out.trim().parse().unwrap();
    let (_, back, _) = invoke(&["resolve", path_str(&map_a), "--address", &addr.to_string()]);
    assert_eq!(back.trim(), "101");
    let (code, _, err) = invoke(&["resolve", path_str(&map_a), "111"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("not in B"));
}

#[test]
fn encode_single_record() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("one.txt");
    fs::write(&data, "solo\n").unwrap();
    let map = dir.path().join("m.json");
    let circ = dir.path().join("c.json");
    let (code, out, _) = invoke(&[
        "encode",
        path_str(&data),
        "--mapping-out",
        path_str(&map),
        "--circuit-out",
        path_str(&circ),
        "--circuit-format",
        "doc",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("n = 1") && out.contains("cnot = 0"));
    let c = parse_document(&fs::read_to_string(circ).unwrap()).unwrap();
    assert!(c.is_empty());
    let m = AddressMap::from_document(&fs::read_to_string(map).unwrap()).unwrap();
    assert_eq!(m.pairs().collect::<Vec<_>>(), vec![("0".to_string(), 0)]);
}

#[test]
fn encode_rejects_empty_and_unwritable() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    let m = dir.path().join("m.json");
    let c = dir.path().join("c.qasm");
    let (code, _, err) = invoke(&[
        "encode",
        path_str(&empty),
        "--mapping-out",
        path_str(&m),
        "--circuit-out",
        path_str(&c),
    ]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("empty"));

    let data = dir.path().join("d.txt");
    fs::write(&data, "a\nb\n").unwrap();
    let bad = dir.path().join("missing-dir").join("m.json");
    let (code, _, _) = invoke(&[
        "encode",
        path_str(&data),
        "--mapping-out",
        path_str(&bad),
        "--circuit-out",
        path_str(&c),
    ]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn inspect_reads_qasm_and_checks_state() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.qasm");
    fs::write(&path, qasm::emit(&lower(&synthesize(11).unwrap()).0).unwrap()).unwrap();
    let (code, out, _) = invoke(&["inspect", path_str(&path), "--expect", "11"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("entanglers  4") && out.contains("PASS"));
    let (code, _, _) = invoke(&["inspect", path_str(&path), "--expect", "12"]);
    assert_eq!(code, EXIT_VERIFY_FAILED);

    let bad = dir.path().join("bad.qasm");
    fs::write(&bad, "OPENQASM 2.0;\nqreg q[3];\nccx q[0],q[1],q[2];\n").unwrap();
    let (code, _, err) = invoke(&["inspect", path_str(&bad)]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("line 3, column 1") && err.contains("gate outside subset"), "{err}");
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("synth") && out.contains("verify") && out.contains("scan"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qsuperpose");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["verify", "5"]), Some(0));
    assert_eq!(status(&["verify", "5", "--tolerance", "1e-30"]), Some(2));
    assert_eq!(status(&["synth", "0"]), Some(1));
    assert_eq!(status(&["nope"]), Some(1));
}

proptest! {
    #[test]
    fn document_round_trip(n_states in 1u64..5000, lowered in any::<bool>()) {
        let mut c = synthesize(n_states).unwrap();
        if lowered {
            c = lower(&c).0;
        }
        let text = qsuperpose_cli::document::emit_document(&c);
        prop_assert_eq!(parse_document(&text).unwrap(), c);
    }
}
