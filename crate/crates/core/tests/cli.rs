use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ljreduce::cli::Report;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ljreduce"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name).with_extension("toml")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn machine(sub: &str, name: &str) -> (i32, Report) {
    let path = scenario(name);
    let out = run(&[sub, "--scenario", path.to_str().unwrap(), "--format", "machine"]);
    let report = Report::from_machine(&String::from_utf8(out.stdout).unwrap()).unwrap();
    (out.status.code().unwrap(), report)
}

#[test]
fn failing_jacobi_exits_one_with_witness() {
    let (code, report) = machine("run", "transverse_lambda_x3");
    assert_eq!(code, 1);
    let w = report.condition("Jacobi").unwrap().witness.as_ref().unwrap();
    assert_eq!(w.inputs, ["y1", "y2", "y3"]);
    assert_eq!(w.residual, "-1");
}

#[test]
fn constant_extension_certifies() {
    let (code, report) = machine("run", "certificate_lambda_const");
    assert_eq!(code, 0);
    assert!(report.conditions.iter().filter(|c| c.name.starts_with("certificate")).all(|c| c.passed));
    let (code, report) = machine("certify", "certificate_lambda_const");
    assert_eq!(code, 0);
    assert!(report.condition("certificate: {B-,B-} ⊂ B+").unwrap().passed);
}

#[test]
fn block_diagonal_quotient_passes_all_axioms() {
    let (code, report) = machine("run", "quantum_block_diag");
    assert_eq!(code, 0);
    for axiom in ["Jacobi", "Leibniz", "associator"] {
        assert!(report.condition(&format!("quotient {}", axiom)).unwrap().passed);
    }
}

#[test]
fn subcommands_dispatch_to_their_pipelines() {
    let (code, report) = machine("check-jacobi", "transverse_lambda_x3");
    assert_eq!((code, report.pipeline.as_str()), (0, "check-jacobi"));
    let (code, report) = machine("reduce-symmetry", "symmetry_rotation");
    assert_eq!((code, report.pipeline.as_str()), (0, "reduce-symmetry"));
    let (code, _) = machine("reduce-constraint", "dirac_second_class");
    assert_eq!(code, 0);
    let (code, report) = machine("dirac", "dirac_first_class");
    assert_eq!(code, 1);
    assert_eq!(report.condition("N + I = all").unwrap().witness.as_ref().unwrap().residual, "y1");
    let (code, _) = machine("reduce-general", "transverse_lambda_y1y2");
    assert_eq!(code, 0);
    let (code, report) = machine("quantum-reduce", "quantum_sigma_xy");
    assert_eq!(code, 1);
    assert_eq!(report.pipeline, "quantum-reduce");
}

#[test]
fn invalid_input_exits_two() {
    let dir = std::env::temp_dir().join(format!("ljreduce-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.toml");
    std::fs::write(&empty, "").unwrap();
    let out = run(&["run", "--scenario", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "mode = \"generalized\"\nvariables = [\"x\", \"y\"]\nbivector = [{ i = \"x\", j = \"y\", coeff = \"z\" }]\n").unwrap();
    let out = run(&["run", "--scenario", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") && err.contains("undeclared variable `z`"), "{}", err);

    let out = run(&["run", "--scenario", dir.join("missing.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let path = scenario("quantum_full");
    let out = run(&["reduce-general", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn report_file_and_degree_override() {
    let dir = std::env::temp_dir().join(format!("ljreduce-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("r.json");
    let path = scenario("transverse_lambda_y1y2");
    let out = run(&[
        "reduce-general",
        "--scenario",
        path.to_str().unwrap(),
        "--degree",
        "1",
        "--format",
        "machine",
        "--report",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&target).unwrap();
    assert_eq!(written, String::from_utf8(out.stdout).unwrap());
    let report = Report::from_machine(&written).unwrap();
    let dim = report.dimensions.iter().find(|d| d.space == "B/(B∩I)").unwrap().dim;
    // 1, x3, y2, y3; y1 needs the degree-3 lift y1 + x2 y1 y2
    assert_eq!(dim, 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn search_is_seeded() {
    let a = run(&["search", "--seed", "3", "--trials", "3", "--format", "machine"]);
    let b = run(&["search", "--seed", "3", "--trials", "3", "--format", "machine"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}
