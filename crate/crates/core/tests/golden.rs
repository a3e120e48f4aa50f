//! Every bundled scenario's machine report is stored under `tests/golden`
//! and compared byte for byte. Set `UPDATE_GOLDEN=1` to regenerate.

use std::fs;
use std::path::{Path, PathBuf};

use ljreduce::cli::{parse_scenario, run, Report};

fn scenarios() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "toml"))
        .collect();
    paths.sort();
    paths
}

fn golden_path(scenario: &Path) -> PathBuf {
    let stem = scenario.file_stem().unwrap();
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(stem).with_extension("json")
}

#[test]
fn reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatched = Vec::new();
    for path in scenarios() {
        let file = parse_scenario(&path).unwrap();
        let text = run(&file).unwrap().to_machine();
        let golden = golden_path(&path);
        if update {
            fs::write(&golden, &text).unwrap();
            continue;
        }
        let expected = fs::read_to_string(&golden)
            .unwrap_or_else(|_| panic!("missing golden file {}", golden.display()));
        if expected != text {
            mismatched.push(path.file_name().unwrap().to_string_lossy().into_owned());
        }
    }
    assert!(mismatched.is_empty(), "reports differ from golden files: {:?}", mismatched);
}

#[test]
fn golden_files_round_trip() {
    for path in scenarios() {
        let text = fs::read_to_string(golden_path(&path)).unwrap();
        let report = Report::from_machine(&text).unwrap();
        assert_eq!(report.to_machine(), text, "{}", path.display());
    }
}

#[test]
fn expected_verdicts() {
    let expect = [
        ("coisotropic_two_stage", true),
        ("dirac_first_class", false),
        ("dirac_second_class", true),
        ("transverse_lambda_x3", false),
        ("transverse_lambda_y1y2", true),
        ("certificate_lambda_const", true),
        ("certificate_lambda_x3", false),
        ("quantum_block_3x3", true),
        ("quantum_block_diag", true),
        ("quantum_full", true),
        ("quantum_sigma_xy", false),
        ("symmetry_rotation", true),
    ];
    let paths = scenarios();
    assert_eq!(paths.len(), expect.len());
    for path in &paths {
        let stem = path.file_stem().unwrap().to_str().unwrap();
        let (name, passed) = *expect.iter().find(|(n, _)| *n == stem).unwrap_or_else(|| panic!("no verdict for {}", stem));
        let report = run(&parse_scenario(path).unwrap()).unwrap();
        assert_eq!(report.passed, passed, "{}", name);
    }
}

#[test]
fn transverse_scenario_file_parses_to_the_transverse_data() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/transverse_lambda_x3.toml");
    let file = parse_scenario(&path).unwrap();
    let lambda = ljreduce::exactalg::parse_polynomial("x3", &file.header.variables).unwrap();
    let expected = ljreduce::cli::transverse_scenario(&lambda, 2);
    assert_eq!(file.classical().unwrap().scenario, expected);
}
