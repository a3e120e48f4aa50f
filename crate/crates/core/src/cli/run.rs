use std::time::Instant;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::classical_reduce::{
    audit_induced_operation, certify_strong, generalized_reduce, reduce_by_constraints, reduce_by_symmetries,
    two_stage_reduce, Certificate, DiracBracket, ReduceError, ReducedBivector, ReductionScenario,
};
use crate::exactalg::{monomials_up_to, CoordinateSet, Polynomial, Rational};
use crate::liejordan::{quantum_reduce, HermitianElement, LJAlgebra, LJQuotient, LieJordanError, QuantumCertificate};
use crate::poisson::{check_jacobi, sweep_monomials, PoissonBivector, PolyVectorField};
use crate::subspaces::StructuredSpace;

use super::report::{BivectorEntry, ConditionEntry, Report, Structure, TableEntry, WitnessEntry};
use super::scenario::{ClassicalBody, Mode, QuantumBody, ScenarioFile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    LieJordan(#[from] LieJordanError),
    #[error("pipeline `{pipeline}` does not apply to a {mode} scenario")]
    WrongMode { pipeline: &'static str, mode: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pipeline {
    CheckJacobi,
    Symmetry,
    Constraint,
    Dirac,
    General,
    Certify,
    Quantum,
}

impl Pipeline {
    pub fn name(self) -> &'static str {
        match self {
            Pipeline::CheckJacobi => "check-jacobi",
            Pipeline::Symmetry => "reduce-symmetry",
            Pipeline::Constraint => "reduce-constraint",
            Pipeline::Dirac => "dirac",
            Pipeline::General => "reduce-general",
            Pipeline::Certify => "certify",
            Pipeline::Quantum => "quantum-reduce",
        }
    }

    pub fn for_mode(mode: Mode) -> Pipeline {
        match mode {
            Mode::Symmetry => Pipeline::Symmetry,
            Mode::Constraint => Pipeline::Constraint,
            Mode::Dirac => Pipeline::Dirac,
            Mode::Generalized => Pipeline::General,
            Mode::Quantum => Pipeline::Quantum,
        }
    }
}

/// Runs the pipeline named by the scenario's mode. A generalized scenario
/// with a certificate also runs the strong-condition check.
pub fn run(file: &ScenarioFile) -> Result<Report, RunError> {
    run_pipeline(file, Pipeline::for_mode(file.mode))
}

pub fn run_pipeline(file: &ScenarioFile, pipeline: Pipeline) -> Result<Report, RunError> {
    let start = Instant::now();
    let mut report = Report::new(&file.header.name, pipeline.name());
    let wrong = || RunError::WrongMode { pipeline: pipeline.name(), mode: file.mode.name() };
    match pipeline {
        Pipeline::Quantum => quantum(&mut report, file.quantum().ok_or_else(wrong)?)?,
        _ => {
            let body = file.classical().ok_or_else(wrong)?;
            match pipeline {
                Pipeline::CheckJacobi => jacobi(&mut report, &body.scenario, file.header.jacobi_degree),
                Pipeline::Symmetry => symmetry(&mut report, &body.scenario)?,
                Pipeline::Constraint => constraint(&mut report, &body.scenario)?,
                Pipeline::Dirac => dirac(&mut report, &body.scenario)?,
                Pipeline::General => general(&mut report, body)?,
                Pipeline::Certify => certify(&mut report, &body.scenario)?,
                Pipeline::Quantum => unreachable!(),
            }
        }
    }
    report.elapsed = Some(start.elapsed());
    Ok(report)
}

/// 0 when every check passes, 1 on any FAIL, 2 on invalid input.
pub fn exit_code(result: &Result<Report, RunError>) -> i32 {
    match result {
        Ok(r) => r.exit_code(),
        Err(_) => 2,
    }
}

fn show(names: &[String]) -> impl Fn(&Polynomial) -> String + '_ {
    move |p| p.display(names).to_string()
}

fn entry(name: &str, passed: bool, checked: usize, detail: Option<String>, witness: Option<WitnessEntry>) -> ConditionEntry {
    ConditionEntry { name: name.to_string(), passed, checked, detail, witness }
}

fn jacobi(report: &mut Report, sc: &ReductionScenario, degree: u32) {
    let names = &sc.names;
    let jr = check_jacobi(&sc.bivector, degree);
    let detail = jr.schouten_components.first().map(|((i, j, k), p)| {
        format!("component ({}, {}, {}) = {}", names[*i], names[*j], names[*k], p.display(names))
    });
    report.push(entry("[P,P] = 0", jr.schouten_vanishes, jr.schouten_components.len().max(1), detail, None));
    let witness = jr.witness.as_ref().map(|w| WitnessEntry {
        inputs: w.triple.iter().map(show(names)).collect(),
        residual: show(names)(&w.residual),
    });
    report.push(entry(
        "Jacobiator sweep",
        witness.is_none(),
        jr.triples_checked,
        Some(format!("degree <= {}", jr.sweep_degree)),
        witness,
    ));
    report.push(entry("[P,P] = 0 ⟺ sweep clean", jr.consistent(), 1, None, None));
}

fn bracket_structure(names: &[String], basis: &[Polynomial], table: &[((usize, usize), Polynomial)]) -> Structure {
    Structure::Bracket {
        basis: basis.iter().map(show(names)).collect(),
        entries: table
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((i, j), v)| TableEntry { i: *i, j: *j, value: show(names)(v) })
            .collect(),
    }
}

fn bivector_structure(b: &ReducedBivector) -> Structure {
    Structure::Bivector {
        variables: b.names.clone(),
        entries: b
            .bivector
            .components()
            .filter(|(_, v)| !v.is_zero())
            .map(|((i, j), v)| BivectorEntry {
                i: b.names[*i].clone(),
                j: b.names[*j].clone(),
                coeff: v.display(&b.names).to_string(),
            })
            .collect(),
    }
}

fn symmetry(report: &mut Report, sc: &ReductionScenario) -> Result<(), RunError> {
    let out = reduce_by_symmetries(&sc.bivector, &sc.e_fields, sc.check_degree)?;
    report.absorb("", &out.report, show(&sc.names));
    if let Some(table) = &out.structure {
        report.structures.push(bracket_structure(&sc.names, &out.basis, table));
    }
    Ok(())
}

fn constraint(report: &mut Report, sc: &ReductionScenario) -> Result<(), RunError> {
    let out = reduce_by_constraints(sc)?;
    report.absorb("", &out.report, show(&sc.names));
    if let Some(r) = &out.reduced {
        if let Some(b) = &r.bivector {
            report.structures.push(bivector_structure(b));
        }
        report.structures.push(bracket_structure(&sc.names, &r.restricted, &r.structure));
    }
    Ok(())
}

fn constraints_of(sc: &ReductionScenario) -> Vec<Polynomial> {
    if sc.constraints.is_empty() {
        sc.submanifold.indices().iter().map(|&k| Polynomial::var(sc.nvars(), k)).collect()
    } else {
        sc.constraints.clone()
    }
}

/// Constraint reduction plus the first-class check of the Dirac bracket:
/// `{φ_a, g}_D` vanishes on `N` for every monomial `g` up to the check
/// degree.
fn dirac(report: &mut Report, sc: &ReductionScenario) -> Result<(), RunError> {
    constraint(report, sc)?;
    let phis = constraints_of(sc);
    let db = match DiracBracket::new(&sc.bivector, &phis, sc.work_degree) {
        Ok(db) => db,
        Err(ReduceError::SingularConstraintMatrix) => return Ok(()),
        Err(e) => return Err(e.into()),
    };
    let n = sc.nvars();
    let coords = &sc.submanifold;
    let mut checked = 0;
    let mut witness = None;
    'outer: for phi in &phis {
        for m in sweep_monomials(n, sc.check_degree) {
            checked += 1;
            let g = Polynomial::term(m, Rational::from_integer(1.into()));
            let mut v = db.bracket(phi, &g).restrict_zero(coords);
            if !db.is_exact() {
                v = v.truncate(sc.check_degree);
            }
            if !v.is_zero() {
                witness = Some(WitnessEntry { inputs: vec![show(&sc.names)(phi), show(&sc.names)(&g)], residual: show(&sc.names)(&v) });
                break 'outer;
            }
        }
    }
    let detail = (!db.is_exact()).then(|| format!("series inverse, compared up to degree {}", sc.check_degree));
    report.push(entry("{φ,g}_D|_N = 0", witness.is_none(), checked, detail, witness));
    Ok(())
}

fn general(report: &mut Report, body: &ClassicalBody) -> Result<(), RunError> {
    let sc = &body.scenario;
    let out = generalized_reduce(sc)?;
    report.absorb("", &out.report, show(&sc.names));
    if let Some(r) = &out.reduced {
        let audit = audit_induced_operation(sc, r);
        report.absorb("induced", &audit, show(&sc.names));
        if let Some(b) = &r.bivector {
            report.structures.push(bivector_structure(b));
        }
        report.structures.push(bracket_structure(&sc.names, &r.restricted, &r.structure));
    }
    if sc.certificate.is_some() {
        certify(report, sc)?;
    }
    if body.two_stage {
        let staged = two_stage_reduce(sc)?;
        report.absorb("two-stage", &staged.report, show(&sc.names));
    }
    Ok(())
}

fn certify(report: &mut Report, sc: &ReductionScenario) -> Result<(), RunError> {
    let out = certify_strong(sc)?;
    report.absorb("certificate", &out, show(&sc.names));
    Ok(())
}

fn quantum(report: &mut Report, body: &QuantumBody) -> Result<(), RunError> {
    let out = quantum_reduce(&body.b, &body.s, &body.algebra, body.certificate.as_ref())?;
    report.absorb("", &out.report, HermitianElement::to_string);
    if let Some(q) = &out.quotient {
        report.structures.push(lie_jordan_structure(q));
    }
    Ok(())
}

fn lie_jordan_structure(q: &LJQuotient) -> Structure {
    let table = |sc: &[Vec<Vec<Rational>>]| -> Vec<TableEntry> {
        let mut out = Vec::new();
        for (i, row) in sc.iter().enumerate() {
            for (j, v) in row.iter().enumerate().skip(i) {
                if v.iter().any(|x| !x.is_zero()) {
                    out.push(TableEntry { i, j, value: q.element(v).to_string() });
                }
            }
        }
        out
    };
    Structure::LieJordan {
        basis: q.representatives().iter().map(HermitianElement::to_string).collect(),
        jordan: table(&q.jordan_sc),
        lie: table(&q.lie_sc),
    }
}

fn names6() -> Vec<String> {
    ["x1", "x2", "x3", "y1", "y2", "y3"].iter().map(|s| s.to_string()).collect()
}

/// The transverse subbundle family on canonical `ℝ⁶`: `N = {x1 = x2 = 0}`
/// and `B` spanned by `∂x1` and `∂x2 - λ ∂y1`.
pub fn transverse_scenario(lambda: &Polynomial, degree: u32) -> ReductionScenario {
    let mut sc = ReductionScenario::new(names6(), PoissonBivector::canonical(3), degree);
    sc.submanifold = CoordinateSet::new(6, [0, 1]).expect("in range");
    let mut second = vec![Polynomial::zero(6); 6];
    second[1] = Polynomial::one(6);
    second[3] = -lambda.clone();
    sc.b_fields = vec![PolyVectorField::coordinate(6, 0), PolyVectorField::new(second)];
    sc
}

fn random_rational(rng: &mut StdRng) -> Rational {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-3i64..=3);
    }
    Rational::new(num.into(), rng.gen_range(1i64..=2).into())
}

fn random_lambda(rng: &mut StdRng) -> Polynomial {
    let monomials = monomials_up_to(6, 2, None);
    let terms = rng.gen_range(1..=2);
    let mut out = Polynomial::zero(6);
    for _ in 0..terms {
        let m = monomials[rng.gen_range(0..monomials.len())].clone();
        out = out + Polynomial::term(m, random_rational(rng));
    }
    out
}

fn random_hermitian(rng: &mut StdRng, d: usize) -> HermitianElement {
    let coords: Vec<Rational> = (0..d * d)
        .map(|_| if rng.gen_bool(0.5) { Rational::zero() } else { random_rational(rng) })
        .collect();
    HermitianElement::from_coords(d, &coords).expect("d*d coordinates")
}

/// Random-scenario harness for the open questions: for random extensions
/// `λ` in the transverse family, compares the natural certificate
/// `B₋ = {f : Xf = 0, X in E}`, `B₊ = B` with the Jacobi audit; for random
/// pairs `B, S` in `Herm(2)`, records how often the weak conditions hold
/// and how often the quotient axioms hold.
///
/// A passing certificate without Jacobi (or without the quotient axioms)
/// would be a counterexample and is a FAIL. Jacobi without the natural
/// certificate is only counted: it does not rule out another certificate.
pub fn search(seed: u64, trials: usize) -> Result<Report, RunError> {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = Report::new(format!("seed {}", seed), "search");
    let names = names6();

    let (mut jacobi_only, mut both, mut certified) = (0, 0, 0);
    let mut first_gap = None;
    let mut violation = None;
    for _ in 0..trials {
        let lambda = random_lambda(&mut rng);
        let mut sc = transverse_scenario(&lambda, 2);
        let out = generalized_reduce(&sc)?;
        let jacobi = out.reduced.as_ref().and_then(|r| r.jacobi.as_ref()).is_some_and(|j| j.passed());
        let e_fields = sc.b_fields.clone();
        sc.certificate = Some(Certificate { b_minus: StructuredSpace::invariant(6, e_fields), b_plus: None });
        let cert = certify_strong(&sc)?;
        let cert_ok = [
            "B- ⊂ B",
            "B ⊂ B+",
            "B- + I = B + I",
            "B+ + I = B + I",
            "{B-,B-} ⊂ B+",
            "{B-,B+∩I} ⊂ I",
        ]
        .iter()
        .all(|name| cert.get(name).is_some_and(|c| c.passed));
        certified += cert_ok as usize;
        if !cert.get("certificate ⟹ Jacobi").is_some_and(|c| c.passed) {
            violation.get_or_insert_with(|| lambda.display(&names).to_string());
        }
        match (cert_ok, jacobi) {
            (true, true) => both += 1,
            (true, false) => {}
            (false, true) => {
                jacobi_only += 1;
                first_gap.get_or_insert_with(|| lambda.display(&names).to_string());
            }
            (false, false) => {}
        }
    }
    report.dimension_free(trials);
    report.push(entry(
        "transverse: certificate ⟹ Jacobi",
        violation.is_none(),
        trials,
        Some(format!(
            "{} certified, {} certified with Jacobi, {} Jacobi without the natural certificate{}",
            certified,
            both,
            jacobi_only,
            first_gap.map_or(String::new(), |l| format!(" (first: λ = {})", l))
        )),
        violation.map(|l| WitnessEntry { inputs: vec![l], residual: "Jacobi FAIL".into() }),
    ));

    let alg = LJAlgebra::new(2, Rational::from_integer(1.into()))?;
    let (mut weak, mut axioms, mut certified) = (0, 0, 0);
    let mut violation = None;
    for _ in 0..trials {
        let b: Vec<HermitianElement> = (0..rng.gen_range(1..=3)).map(|_| random_hermitian(&mut rng, 2)).collect();
        let s: Vec<HermitianElement> = (0..rng.gen_range(0..=2)).map(|_| random_hermitian(&mut rng, 2)).collect();
        let bs = HermitianElement::span(2, &b)?;
        let ss = HermitianElement::span(2, &s)?;
        let cert = QuantumCertificate { b_minus: bs.clone(), b_plus: bs.clone() };
        let out = quantum_reduce(&bs, &ss, &alg, Some(&cert))?;
        if out.quotient.is_none() {
            continue;
        }
        weak += 1;
        let cross = out.report.get("certificate ⟹ axioms").expect("certificate supplied");
        let detail = cross.detail.as_deref().unwrap_or_default();
        certified += detail.starts_with("certificate PASS") as usize;
        axioms += detail.ends_with("axioms PASS") as usize;
        if !cross.passed && violation.is_none() {
            let list = |v: &[HermitianElement]| v.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" ");
            violation = Some(WitnessEntry { inputs: vec![list(&b), list(&s)], residual: "axiom FAIL".into() });
        }
    }
    report.push(entry(
        "Herm(2): certificate B- = B+ = B ⟹ quotient axioms",
        violation.is_none(),
        trials,
        Some(format!(
            "{} of {} pairs satisfy the weak conditions, {} of those the axioms, {} the certificate",
            weak, trials, axioms, certified
        )),
        violation,
    ));
    report.elapsed = Some(start.elapsed());
    Ok(report)
}

impl Report {
    fn dimension_free(&mut self, trials: usize) {
        self.dimensions.push(super::report::Dimension { space: "trials".into(), dim: trials });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::scenario::parse_scenario_str;

    const EXAMPLE: &str = r#"
mode = "generalized"
variables = ["x1", "x2", "x3", "y1", "y2", "y3"]
bivector = [
  { i = "x1", j = "y1", coeff = "1" },
  { i = "x2", j = "y2", coeff = "1" },
  { i = "x3", j = "y3", coeff = "1" },
]
submanifold = ["x1", "x2"]
b_fields = [{ x1 = "1" }, { x2 = "1", y1 = "-x3" }]
"#;

    #[test]
    fn generalized_run_reports_jacobi_witness() {
        let file = parse_scenario_str(EXAMPLE, "ex").unwrap();
        let result = run(&file);
        assert_eq!(exit_code(&result), 1);
        let report = result.unwrap();
        let c = report.condition("Jacobi").unwrap();
        let w = c.witness.as_ref().unwrap();
        assert_eq!(w.inputs, ["y1", "y2", "y3"]);
        assert_eq!(w.residual, "-1");
    }

    #[test]
    fn machine_reports_are_deterministic() {
        let file = parse_scenario_str(EXAMPLE, "ex").unwrap();
        let a = run(&file).unwrap().to_machine();
        let b = run(&file).unwrap().to_machine();
        assert_eq!(a, b);
    }

    #[test]
    fn pipeline_mode_mismatch_is_invalid_input() {
        let file = parse_scenario_str(EXAMPLE, "ex").unwrap();
        let result = run_pipeline(&file, Pipeline::Quantum);
        assert!(matches!(result, Err(RunError::WrongMode { .. })));
        assert_eq!(exit_code(&result), 2);
    }

    #[test]
    fn check_jacobi_agrees_with_schouten() {
        let file = parse_scenario_str(EXAMPLE, "ex").unwrap();
        let report = run_pipeline(&file, Pipeline::CheckJacobi).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn search_is_reproducible() {
        let a = search(7, 2).unwrap();
        let b = search(7, 2).unwrap();
        assert_eq!(a.to_machine(), b.to_machine());
        assert!(a.passed, "{}", a.to_human());
    }
}
