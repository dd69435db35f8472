//! End-to-end tests of the command-line interface: output formats, file
//! round trips, exit codes, and re-readability of everything it writes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_setcover-reopt"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const TRIANGLE: &str = "universe: 1 2 3\nset s12: 1 2\nset s23: 2 3\nset s13: 1 3\n";

#[test]
fn solve_greedy_and_exact() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("inst.txt"), TRIANGLE).unwrap();

    let out = run_in(dir.path(), &["solve", "inst.txt", "--exact"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "solution: s12 s13\nvalue: 2\n");

    let out = run_in(dir.path(), &["solve", "inst.txt", "--greedy"]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("value: 2\n"));

    let out = run_in(dir.path(), &["solve", "inst.txt", "--bounded", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "exceeds: 1\n");
}

#[test]
fn modify_roundtrip_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("inst.txt"), TRIANGLE).unwrap();
    fs::write(dir.path().join("mod.txt"), "add-elem x into: s12 s23\n").unwrap();
    fs::write(dir.path().join("inv.txt"), "rm-elem x\n").unwrap();

    let out = run_in(dir.path(), &["modify", "inst.txt", "mod.txt", "-o", "out.txt"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let modified = fs::read_to_string(dir.path().join("out.txt")).unwrap();
    assert!(modified.contains("universe: 1 2 3 x"));

    let out = run_in(dir.path(), &["modify", "out.txt", "inv.txt", "-o", "back.txt"]);
    assert!(out.status.success());
    // byte-for-byte modulo canonical ordering
    let canonical = setcover_reopt::format::print_instance(
        &setcover_reopt::format::parse_instance(TRIANGLE).unwrap(),
    );
    let back = fs::read_to_string(dir.path().join("back.txt")).unwrap();
    assert_eq!(back, canonical);
}

#[test]
fn reopt_repair_and_exact() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("inst.txt"), TRIANGLE).unwrap();
    fs::write(dir.path().join("sol.txt"), "solution: s12 s13\n").unwrap();
    fs::write(dir.path().join("mod.txt"), "add-elem x into: s23\n").unwrap();

    let out = run_in(dir.path(), &["reopt", "inst.txt", "sol.txt", "mod.txt", "--alg", "repair"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "solution: s12 s13 s23\nvalue: 3\n");

    // exactly resolving the modified instance beats the repair: s23 now
    // covers x, so {s12, s23} suffices
    let out = run_in(dir.path(), &["reopt", "inst.txt", "sol.txt", "mod.txt", "--alg", "exact"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "solution: s12 s23\nvalue: 2\n");

    let out = run_in(dir.path(), &["reopt", "inst.txt", "sol.txt", "mod.txt", "--alg", "ptas:1/2"]);
    assert!(out.status.success());

    // a non-optimal solution refutes rho = 1
    fs::write(dir.path().join("bad.txt"), "solution: s12 s13 s23\n").unwrap();
    let out = run_in(dir.path(), &["reopt", "inst.txt", "bad.txt", "mod.txt", "--alg", "repair"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("quality-refuted"));
}

#[test]
fn gadget_files_are_rereadable() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("inst.txt"), TRIANGLE).unwrap();

    for kind in ["add-set-unweighted", "add-set-weighted", "rm-set"] {
        let out = run_in(dir.path(), &["gadget", kind, "inst.txt", "-o", kind]);
        assert!(out.status.success(), "{kind}: {}", String::from_utf8_lossy(&out.stderr));
        let gdir = dir.path().join(kind);
        for file in ["old.txt", "new.txt"] {
            let text = fs::read_to_string(gdir.join(file)).unwrap();
            setcover_reopt::format::parse_instance(&text).expect("re-readable instance");
        }
        let m = fs::read_to_string(gdir.join("mod.txt")).unwrap();
        setcover_reopt::format::parse_modification(&m).expect("re-readable modification");
        let s = fs::read_to_string(gdir.join("old_solution.txt")).unwrap();
        setcover_reopt::format::parse_solution(&s).expect("re-readable solution");
        assert!(fs::read_to_string(gdir.join("metadata.txt")).unwrap().contains("relation:"));
    }

    let out = run_in(dir.path(), &["gadget", "add-elem-weighted", "inst.txt", "--guess", "2", "-o", "g4"]);
    assert!(out.status.success());
    let meta = fs::read_to_string(dir.path().join("g4/metadata.txt")).unwrap();
    assert!(meta.contains("guess: 2"));

    // ratio function flag on the heavy-set gadget
    fs::write(
        dir.path().join("winst.txt"),
        "universe: a b\nset s1 w=2: a\nset s2 w=3: b\n",
    )
    .unwrap();
    let out = run_in(
        dir.path(),
        &["gadget", "rm-elem-weighted", "winst.txt", "--f", "logln:1/3", "-o", "g5"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let old = fs::read_to_string(dir.path().join("g5/old.txt")).unwrap();
    // f(2) clamps to 1, so the heavy set weighs (1 + 1) * 5 = 10
    assert!(old.contains("w=10"), "{old}");

    // applying mod.txt to old.txt reproduces new.txt byte for byte
    let gdir = dir.path().join("g4");
    let out = run_in(&gdir, &["modify", "old.txt", "mod.txt", "-o", "derived.txt"]);
    assert!(out.status.success());
    assert_eq!(
        fs::read_to_string(gdir.join("derived.txt")).unwrap(),
        fs::read_to_string(gdir.join("new.txt")).unwrap()
    );
}

#[test]
fn gadget_chain_files() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("inst.txt"), TRIANGLE).unwrap();
    let out = run_in(dir.path(), &["gadget", "chain-add-elem", "inst.txt", "-o", "chain"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let cdir = dir.path().join("chain");
    let mods: Vec<_> = fs::read_dir(&cdir)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().starts_with("mod_"))
        .collect();
    assert_eq!(mods.len(), 3); // one per source element

    // the emitted chain drives end to end
    let outcome = setcover_reopt::cli::drive_chain_dir(&cdir, 2).unwrap();
    assert!(matches!(outcome, setcover_reopt::reopt::DriverOutcome::Solved(_)));

    fs::write(dir.path().join("graph.txt"), "vertices: a b c\nedge a b\nedge b c\n").unwrap();
    let out = run_in(dir.path(), &["gadget", "chain-rm-elem", "graph.txt", "-o", "gchain"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("gchain/old_solution.txt").exists());
}

#[test]
fn verify_emits_tsv_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["verify", "add-set-unweighted", "--seed", "7", "--trials", "5", "--scale", "6,8,0.45"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let tsv = stdout(&out);
    let mut lines = tsv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "kind\ttrial\tseed\tn\tm\trelation\tobserved\twrapper\tresult\tnote"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.contains("\tpass\t") || r.ends_with("\tpass")));

    // identical invocation gives identical bytes
    let again = run_in(
        dir.path(),
        &["verify", "add-set-unweighted", "--seed", "7", "--trials", "5", "--scale", "6,8,0.45"],
    );
    assert_eq!(tsv, stdout(&again));
}

#[test]
fn usage_and_domain_error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // unknown flag: usage error, exit 2
    let out = run_in(dir.path(), &["solve", "missing.txt", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // missing mode flag: usage error
    fs::write(dir.path().join("inst.txt"), TRIANGLE).unwrap();
    let out = run_in(dir.path(), &["solve", "inst.txt"]);
    assert_eq!(out.status.code(), Some(2));
    // infeasible instance file: domain error, exit 1
    fs::write(dir.path().join("bad.txt"), "universe: a b\nset s1: a\n").unwrap();
    let out = run_in(dir.path(), &["solve", "bad.txt", "--exact"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid-instance"));
    // strict mode rejects duplicate extents that are otherwise warnings
    fs::write(dir.path().join("dup.txt"), "universe: a\nset s1: a\nset s2: a\n").unwrap();
    let ok = run_in(dir.path(), &["solve", "dup.txt", "--exact"]);
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stderr).contains("warning"));
    let strict = run_in(dir.path(), &["solve", "dup.txt", "--exact", "--strict"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn version_names_formats() {
    let out = bin().arg("--version").output().unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("instance v1"));
}
