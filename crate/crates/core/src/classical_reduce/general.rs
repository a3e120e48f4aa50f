use crate::exactalg::{rat, CoordinateSet, Polynomial};
use crate::poisson::{check_jacobi, PolyVectorField};
use crate::subspaces::{quotient, AmbientBasis, ExplicitSpan, SpaceRule, StructuredSpace};

use super::{
    bivector_from_lifts, lift_through_restriction, search_pairs, Condition, ConditionReport, ReduceError,
    ReducedBivector, ReducedBracket, ReductionScenario, RestrictedLifter, Witness,
};

pub const WEAK_A: &str = "{B,B} ⊂ B+I";
pub const WEAK_B: &str = "{B,B∩I} ⊂ I";
pub const LIFT_INDEPENDENCE: &str = "lift independence";
pub const BIVECTOR_LIFT_INDEPENDENCE: &str = "P_N lift independence";
pub const STRUCTURE_MATCHES_BIVECTOR: &str = "structure = P_N";
pub const JACOBI: &str = "Jacobi";
pub const STRONG_A: &str = "{B-,B-} ⊂ B+";
pub const STRONG_B: &str = "{B-,B+∩I} ⊂ I";

/// Degree of the Jacobiator sweep on the reduced bivector.
pub const JACOBI_SWEEP_DEGREE: u32 = 3;

/// Outcome of the generalized reduction: condition verdicts and, when the
/// weak conditions hold, the induced bracket.
#[derive(Debug, Clone)]
pub struct GeneralizedOutcome {
    pub report: ConditionReport<Polynomial>,
    pub reduced: Option<ReducedBracket>,
}

impl GeneralizedOutcome {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    /// Whether the weak conditions held, so an induced bracket exists.
    pub fn induced(&self) -> bool {
        self.reduced.is_some()
    }
}

fn lifter_for(sc: &ReductionScenario) -> RestrictedLifter {
    RestrictedLifter::new(&sc.b_fields, &sc.submanifold, sc.work_degree - sc.check_degree)
}

/// Element of `B ∩ I` used to perturb lifts: `x_k x_l` for the first and
/// last submanifold coordinates. Every field maps it into `I`.
fn ideal_perturbation(coords: &CoordinateSet) -> Option<Polynomial> {
    let n = coords.nvars();
    let first = *coords.indices().first()?;
    let last = *coords.indices().last()?;
    Some(Polynomial::var(n, first) * Polynomial::var(n, last))
}

fn coordinate_lifts(sc: &ReductionScenario, lifter: &mut RestrictedLifter) -> Result<Vec<Polynomial>, ReduceError> {
    let n = sc.nvars();
    sc.n_coordinates()
        .into_iter()
        .map(|u| {
            let target = Polynomial::var(n, u);
            lifter.lift(&target).ok_or_else(|| ReduceError::LiftInfeasible {
                coordinate: sc.names[u].clone(),
                degree: lifter.bound_for(1).map_or(1, |b| b + 1),
            })
        })
        .collect()
}

/// The reduced bivector `P_N^{uv} = {lift u, lift v}|_N` on the coordinates
/// of `N`, using the least graded-lex lifts into `B`.
pub fn reduced_bivector(sc: &ReductionScenario) -> Result<ReducedBivector, ReduceError> {
    sc.validate()?;
    let mut lifter = lifter_for(sc);
    let lifts = coordinate_lifts(sc, &mut lifter)?;
    Ok(bivector_from_lifts(&sc.bivector, &sc.names, &sc.submanifold, lifts))
}

/// Checks the weak conditions on basis pairs of the truncated `B`, builds
/// `B/(B ∩ I)` with its induced bracket, and audits lift independence and
/// the Jacobi identity. A Jacobi failure is a reported result.
pub fn generalized_reduce(sc: &ReductionScenario) -> Result<GeneralizedOutcome, ReduceError> {
    sc.validate()?;
    let pi = &sc.bivector;
    let coords = &sc.submanifold;
    let d = sc.check_degree;

    let bspan = sc.b_space().truncate(d);
    let inter = bspan.intersect(&sc.ideal().truncate(d))?;
    let mut report = ConditionReport::new();
    report.dimension("B", bspan.dim());
    report.dimension("B ∩ I", inter.dim());
    let bbasis = bspan.basis_polynomials();
    let ibasis = inter.basis_polynomials();
    let mut lifter = lifter_for(sc);

    let (checked, witness) = search_pairs(&bbasis, &bbasis, true, |f, g| {
        let b = pi.bracket(f, g);
        (!lifter.contains_restriction(&b.restrict_zero(coords))).then_some(b)
    });
    let a_ok = report.push(Condition::from_search(WEAK_A, checked, witness));

    let (checked, witness) = search_pairs(&bbasis, &ibasis, false, |f, g| {
        let r = pi.bracket(f, g).restrict_zero(coords);
        (!r.is_zero()).then_some(r)
    });
    let mut cond = Condition::from_search(WEAK_B, checked, witness);
    if sc.b_fields.is_empty() {
        cond = cond.with_detail("B = 0: requires I to be a Lie ideal");
    }
    let b_ok = report.push(cond);
    if !(a_ok && b_ok) {
        return Ok(GeneralizedOutcome { report, reduced: None });
    }

    let q = quotient(&bspan, &inter)?;
    let lifts = q.representative_polynomials();
    report.dimension("B/(B∩I)", lifts.len());
    let restricted: Vec<Polynomial> = lifts.iter().map(|f| f.restrict_zero(coords)).collect();
    let mut structure = Vec::new();
    for i in 0..lifts.len() {
        for j in i + 1..lifts.len() {
            structure.push(((i, j), pi.bracket(&lifts[i], &lifts[j]).restrict_zero(coords)));
        }
    }
    let mut reduced = ReducedBracket { quotient: q, lifts, restricted, structure, bivector: None, jacobi: None };

    // second lifts r_i + z_i with z_i in B ∩ I
    let mut checked = 0;
    let mut witness = None;
    if !ibasis.is_empty() {
        let alt: Vec<Polynomial> =
            reduced.lifts.iter().enumerate().map(|(i, r)| r + &ibasis[i % ibasis.len()]).collect();
        'outer: for i in 0..alt.len() {
            for j in i + 1..alt.len() {
                checked += 1;
                let v = pi.bracket(&alt[i], &alt[j]).restrict_zero(coords);
                let expected = reduced.value(i, j);
                if v != expected {
                    witness = Some(Witness { inputs: vec![alt[i].clone(), alt[j].clone()], residual: v - expected });
                    break 'outer;
                }
            }
        }
    }
    report.push(Condition::from_search(LIFT_INDEPENDENCE, checked, witness));

    match coordinate_lifts(sc, &mut lifter) {
        Ok(coordinate) => {
            let biv = bivector_from_lifts(pi, &sc.names, coords, coordinate);
            audit_bivector(sc, &biv, &reduced, &mut report);
            let jacobi = check_jacobi(&biv.bivector, JACOBI_SWEEP_DEGREE);
            let n = sc.nvars();
            let cond = match &jacobi.witness {
                None => Condition::pass(JACOBI, jacobi.triples_checked),
                Some(w) => Condition::fail(
                    JACOBI,
                    jacobi.triples_checked,
                    Witness {
                        inputs: w.triple.iter().map(|p| biv.to_ambient(p, n)).collect(),
                        residual: biv.to_ambient(&w.residual, n),
                    },
                ),
            };
            let cond = cond.with_detail(if jacobi.schouten_vanishes { "[P_N,P_N] = 0" } else { "[P_N,P_N] ≠ 0" });
            report.push(cond);
            reduced.bivector = Some(biv);
            reduced.jacobi = Some(jacobi);
        }
        Err(ReduceError::LiftInfeasible { coordinate, degree }) => {
            let cond = induced_jacobi_sweep(sc, &reduced, &mut lifter)?
                .with_detail(format!("no lift of `{}` up to degree {}; swept representatives", coordinate, degree));
            report.push(cond);
        }
        Err(e) => return Err(e),
    }
    Ok(GeneralizedOutcome { report, reduced: Some(reduced) })
}

/// Compares the reduced bivector built from a second set of coordinate
/// lifts and checks that it reproduces the structure table.
fn audit_bivector(
    sc: &ReductionScenario,
    biv: &ReducedBivector,
    reduced: &ReducedBracket,
    report: &mut ConditionReport<Polynomial>,
) {
    let pi = &sc.bivector;
    let coords = &sc.submanifold;
    let n = sc.nvars();
    if let Some(z) = ideal_perturbation(coords) {
        let alt_lifts: Vec<Polynomial> = biv.lifts.iter().map(|l| l + &z).collect();
        let alt = bivector_from_lifts(pi, &sc.names, coords, alt_lifts.clone());
        let m = biv.lifts.len();
        let mut checked = 0;
        let mut witness = None;
        'outer: for u in 0..m {
            for v in u + 1..m {
                checked += 1;
                let a = alt.bivector.component(u, v).expect("in range");
                let b = biv.bivector.component(u, v).expect("in range");
                if a != b {
                    witness = Some(Witness {
                        inputs: vec![alt_lifts[u].clone(), alt_lifts[v].clone()],
                        residual: biv.to_ambient(&(a - b), n),
                    });
                    break 'outer;
                }
            }
        }
        report.push(Condition::from_search(BIVECTOR_LIFT_INDEPENDENCE, checked, witness));
    }

    let mut checked = 0;
    let mut witness = None;
    'outer: for ((i, j), value) in &reduced.structure {
        checked += 1;
        let f = biv.to_reduced(&reduced.restricted[*i]);
        let g = biv.to_reduced(&reduced.restricted[*j]);
        let via = biv.to_ambient(&biv.bivector.bracket(&f, &g), n);
        if &via != value {
            witness = Some(Witness {
                inputs: vec![reduced.lifts[*i].clone(), reduced.lifts[*j].clone()],
                residual: via - value.clone(),
            });
            break 'outer;
        }
    }
    report.push(Condition::from_search(STRUCTURE_MATCHES_BIVECTOR, checked, witness));
}

/// Jacobi identity of the induced operation on representative triples,
/// lifting intermediate brackets back into `B`.
fn induced_jacobi_sweep(
    sc: &ReductionScenario,
    reduced: &ReducedBracket,
    lifter: &mut RestrictedLifter,
) -> Result<Condition<Polynomial>, ReduceError> {
    let pi = &sc.bivector;
    let coords = &sc.submanifold;
    let mut induced = |f: &Polynomial, g_restricted: &Polynomial| -> Result<Polynomial, ReduceError> {
        let g = lifter.lift(g_restricted).ok_or_else(|| ReduceError::LiftInfeasible {
            coordinate: g_restricted.display(&sc.names).to_string(),
            degree: sc.work_degree,
        })?;
        Ok(pi.bracket(f, &g).restrict_zero(coords))
    };
    let r = &reduced.lifts;
    let mut checked = 0;
    for a in 0..r.len() {
        for b in a + 1..r.len() {
            for c in b + 1..r.len() {
                checked += 1;
                let j = induced(&r[a], &reduced.value(b, c))?
                    + induced(&r[b], &reduced.value(c, a))?
                    + induced(&r[c], &reduced.value(a, b))?;
                if !j.is_zero() {
                    let w = Witness { inputs: vec![r[a].clone(), r[b].clone(), r[c].clone()], residual: j };
                    return Ok(Condition::fail(JACOBI, checked, w));
                }
            }
        }
    }
    Ok(Condition::pass(JACOBI, checked))
}

/// Exact bilinearity, antisymmetry, and Leibniz checks of the induced
/// operation on representative pairs and triples. The quotient product of
/// classes is the class of the product of representatives.
pub fn audit_induced_operation(sc: &ReductionScenario, reduced: &ReducedBracket) -> ConditionReport<Polynomial> {
    let pi = &sc.bivector;
    let coords = &sc.submanifold;
    let r = &reduced.lifts;
    let m = r.len();
    let hamiltonians: Vec<PolyVectorField> = r.iter().map(|f| pi.hamiltonian_vf(f)).collect();
    // {f, r_c}|_N = -(X_{r_c} f)|_N
    let induced_with = |f: &Polynomial, c: usize| -> Polynomial { -hamiltonians[c].apply(f).restrict_zero(coords) };
    let mut report = ConditionReport::new();
    report.dimension("B/(B∩I)", m);

    let mut checked = 0;
    let mut witness = None;
    'anti: for i in 0..m {
        for j in i..m {
            checked += 1;
            let ij = induced_with(&r[i], j);
            let ji = induced_with(&r[j], i);
            if !(&ij + &ji).is_zero() {
                witness = Some(Witness { inputs: vec![r[i].clone(), r[j].clone()], residual: ij + ji });
                break 'anti;
            }
        }
    }
    report.push(Condition::from_search("antisymmetry", checked, witness));

    let s = rat(3, 2);
    let mut checked = 0;
    let mut witness = None;
    'bilinear: for a in 0..m {
        for b in a + 1..m {
            let combo = &r[a] + &r[b].scale(&s);
            for c in 0..m {
                checked += 1;
                let lhs = induced_with(&combo, c);
                let rhs = reduced.value(a, c) + reduced.value(b, c).scale(&s);
                if lhs != rhs {
                    witness = Some(Witness { inputs: vec![r[a].clone(), r[b].clone(), r[c].clone()], residual: lhs - rhs });
                    break 'bilinear;
                }
            }
        }
    }
    report.push(Condition::from_search("bilinearity", checked, witness));

    let mut checked = 0;
    let mut witness = None;
    'leibniz: for a in 0..m {
        for b in a..m {
            let prod = &r[a] * &r[b];
            for c in 0..m {
                checked += 1;
                let lhs = induced_with(&prod, c);
                let rhs = &reduced.restricted[a] * &reduced.value(b, c) + &reduced.restricted[b] * &reduced.value(a, c);
                if lhs != rhs {
                    witness = Some(Witness { inputs: vec![r[a].clone(), r[b].clone(), r[c].clone()], residual: lhs - rhs });
                    break 'leibniz;
                }
            }
        }
    }
    report.push(Condition::from_search("Leibniz", checked, witness));
    report
}

/// Degree at which `B₋` is truncated so that its restrictions cover those of
/// `B` up to the check degree: a global invariant extending a degree-`D`
/// function may gain `D * deg(field coefficients)`.
fn certificate_degree(sc: &ReductionScenario, b_minus: &StructuredSpace) -> u32 {
    let coefficient = match b_minus.rule() {
        SpaceRule::InvariantSpace(fields) | SpaceRule::RestrictedInvariantSpace { fields, .. } => fields
            .iter()
            .flat_map(|x| x.components().iter().filter_map(Polynomial::degree))
            .max()
            .unwrap_or(0),
        _ => 0,
    };
    sc.work_degree.max(sc.check_degree * (1 + coefficient))
}

fn inclusion(
    name: &str,
    basis: &[Polynomial],
    into: &StructuredSpace,
) -> Result<Condition<Polynomial>, ReduceError> {
    for (k, f) in basis.iter().enumerate() {
        if !into.member(f)? {
            return Ok(Condition::fail(name, k + 1, Witness { inputs: vec![f.clone()], residual: f.clone() }));
        }
    }
    Ok(Condition::pass(name, basis.len()))
}

/// Checks the strong conditions of a `B₋ ⊂ B ⊂ B₊` certificate and cross
/// checks that a passing certificate comes with a Jacobi-satisfying reduced
/// bivector.
pub fn certify_strong(sc: &ReductionScenario) -> Result<ConditionReport<Polynomial>, ReduceError> {
    sc.validate()?;
    let cert = sc
        .certificate
        .as_ref()
        .ok_or_else(|| ReduceError::Inconsistent("certify needs a B- certificate".into()))?;
    let pi = &sc.bivector;
    let coords = &sc.submanifold;
    let d = sc.check_degree;
    let b = sc.b_space();
    let b_plus = cert.b_plus.clone().unwrap_or_else(|| b.clone());
    let b_minus = &cert.b_minus;

    let mut report = ConditionReport::new();
    let bm_span = b_minus.truncate(d);
    let b_span = b.truncate(d);
    let bp_span = b_plus.truncate(d);
    let ispan = sc.ideal().truncate(d);
    let bp_inter = bp_span.intersect(&ispan)?;
    report.dimension("B-", bm_span.dim());
    report.dimension("B", b_span.dim());
    report.dimension("B+", bp_span.dim());
    report.dimension("B+ ∩ I", bp_inter.dim());
    let bb = b_span.basis_polynomials();
    let bp = bp_span.basis_polynomials();

    // B- + I = B + I: every restriction of B comes from B-.
    let lift_degree = certificate_degree(sc, b_minus);
    let bm_wide = b_minus.truncate(lift_degree).basis_polynomials();
    report.dimension("B- (lift degree)", bm_wide.len());
    // targets: B_D and the N coordinates that lift into B, whose lifts the
    // reduced bivector is built from
    let mut lifter = lifter_for(sc);
    let mut targets = bb.clone();
    for u in sc.n_coordinates() {
        let x = Polynomial::var(sc.nvars(), u);
        if lifter.lift(&x).is_some() {
            targets.push(x);
        }
    }
    let mut cond = Condition::pass("B- + I = B + I", targets.len());
    let mut lifts = Vec::new();
    for (k, f) in targets.iter().enumerate() {
        match lift_through_restriction(&bm_wide, f, coords) {
            Some(l) => lifts.push(l),
            None => {
                cond = Condition::fail("B- + I = B + I", k + 1, Witness { inputs: vec![f.clone()], residual: f.restrict_zero(coords) });
                break;
            }
        }
    }
    let sum_cond = cond.with_detail(format!("B- truncated at degree {}", lift_degree));

    // B-_D together with the lifts: the lifts may exceed degree D
    let tested = ExplicitSpan::from_polynomials(
        AmbientBasis::polynomials(sc.nvars(), lift_degree),
        &bm_span.basis_polynomials().into_iter().chain(lifts).collect::<Vec<_>>(),
    )?;
    let bm = tested.basis_polynomials();
    report.dimension("B- (tested)", bm.len());

    report.push(inclusion("B- ⊂ B", &bm, &b)?);
    report.push(inclusion("B ⊂ B+", &bb, &b_plus)?);
    report.push(sum_cond);

    // B+ + I = B + I: every restriction of B+ comes from B.
    let mut cond = Condition::pass("B+ + I = B + I", bp.len());
    if cert.b_plus.is_some() {
        for (k, f) in bp.iter().enumerate() {
            if !lifter.contains_restriction(&f.restrict_zero(coords)) {
                cond = Condition::fail("B+ + I = B + I", k + 1, Witness { inputs: vec![f.clone()], residual: f.restrict_zero(coords) });
                break;
            }
        }
    }
    report.push(cond);

    for (name, basis, space) in [("B-·B- ⊂ B-", &bm, b_minus), ("B+·B+ ⊂ B+", &bp, &b_plus)] {
        let (checked, witness) = search_pairs(basis, basis, true, |f, g| {
            let p = f * g;
            (!space.member(&p).expect("arity checked")).then_some(p)
        });
        report.push(Condition::from_search(name, checked, witness));
    }

    let (checked, witness) = search_pairs(&bm, &bm, true, |f, g| {
        let v = pi.bracket(f, g);
        (!b_plus.member(&v).expect("arity checked")).then_some(v)
    });
    report.push(Condition::from_search(STRONG_A, checked, witness));

    let bpi = bp_inter.basis_polynomials();
    let (checked, witness) = search_pairs(&bm, &bpi, false, |f, g| {
        let r = pi.bracket(f, g).restrict_zero(coords);
        (!r.is_zero()).then_some(r)
    });
    report.push(Condition::from_search(STRONG_B, checked, witness));

    let certified = report.passed();
    let cond = match reduced_bivector(sc) {
        Ok(biv) => {
            let jacobi = check_jacobi(&biv.bivector, JACOBI_SWEEP_DEGREE);
            let detail = format!(
                "certificate {}, Jacobi {}",
                if certified { "PASS" } else { "FAIL" },
                if jacobi.passed() { "PASS" } else { "FAIL" }
            );
            if certified && !jacobi.passed() {
                let w = jacobi.witness.clone().expect("Schouten and sweep agree");
                let n = sc.nvars();
                Condition::fail(
                    "certificate ⟹ Jacobi",
                    jacobi.triples_checked,
                    Witness {
                        inputs: w.triple.iter().map(|p| biv.to_ambient(p, n)).collect(),
                        residual: biv.to_ambient(&w.residual, n),
                    },
                )
                .with_detail(detail)
            } else {
                Condition::pass("certificate ⟹ Jacobi", jacobi.triples_checked).with_detail(detail)
            }
        }
        Err(ReduceError::LiftInfeasible { coordinate, .. }) => {
            Condition::pass("certificate ⟹ Jacobi", 0).with_detail(format!("no reduced bivector: `{}` has no lift", coordinate))
        }
        Err(e) => return Err(e),
    };
    report.push(cond);
    Ok(report)
}

/// Reduced bracket restricted to functions of `N` given in ambient
/// variables: lifts both arguments into `B` and restricts the bracket.
pub(crate) fn induced_on_restrictions(
    sc: &ReductionScenario,
    lifter: &mut RestrictedLifter,
    f: &Polynomial,
    g: &Polynomial,
) -> Option<Polynomial> {
    let a = lifter.lift(f)?;
    let b = lifter.lift(g)?;
    Some(sc.bivector.bracket(&a, &b).restrict_zero(&sc.submanifold))
}

pub(crate) fn new_lifter(sc: &ReductionScenario) -> RestrictedLifter {
    lifter_for(sc)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::poisson::PoissonBivector;
    use crate::exactalg::parse_polynomial;
    use crate::subspaces::StructuredSpace;

    pub(crate) fn names6() -> Vec<String> {
        ["x1", "x2", "x3", "y1", "y2", "y3"].iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn p(src: &str) -> Polynomial {
        parse_polynomial(src, &names6()).unwrap()
    }

    fn fields(lambda: &str) -> Vec<PolyVectorField> {
        let mut second = vec![Polynomial::zero(6); 6];
        second[1] = Polynomial::one(6);
        second[3] = -p(lambda);
        vec![PolyVectorField::coordinate(6, 0), PolyVectorField::new(second)]
    }

    /// Transverse subbundle scenario with extension `lambda`.
    pub(crate) fn example(lambda: &str, check: u32) -> ReductionScenario {
        let mut sc = ReductionScenario::new(names6(), PoissonBivector::canonical(3), check);
        sc.submanifold = CoordinateSet::new(6, [0, 1]).unwrap();
        sc.b_fields = fields(lambda);
        sc
    }

    pub(crate) fn with_certificate(lambda: &str, check: u32) -> ReductionScenario {
        let mut sc = example(lambda, check);
        sc.certificate = Some(super::super::Certificate {
            b_minus: StructuredSpace::invariant(6, fields(lambda)),
            b_plus: None,
        });
        sc
    }

    fn names4() -> Vec<String> {
        ["x3", "y1", "y2", "y3"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn reduced_bivector_of_transverse_example() {
        for lambda in ["x3", "y1 y2", "1"] {
            let biv = reduced_bivector(&example(lambda, 2)).unwrap();
            assert_eq!(biv.names, names4());
            let lam = parse_polynomial(lambda, &names4()).unwrap();
            let expected = PoissonBivector::from_entries(4, [(0, 3, Polynomial::one(4)), (1, 2, lam)]).unwrap();
            assert_eq!(biv.bivector, expected, "{}", lambda);
        }
        let biv = reduced_bivector(&example("x3", 2)).unwrap();
        assert_eq!(biv.lifts[1], p("y1 + x2 x3"));
    }

    #[test]
    fn identity_reduction() {
        let sc = ReductionScenario::new(names6(), PoissonBivector::canonical(3), 2);
        let biv = reduced_bivector(&sc).unwrap();
        assert_eq!(biv.bivector, PoissonBivector::canonical(3));
    }

    #[test]
    fn generalized_reduce_reports_jacobi_failure() {
        let out = generalized_reduce(&example("x3", 2)).unwrap();
        assert!(out.report.get(WEAK_A).unwrap().passed);
        assert!(out.report.get(WEAK_B).unwrap().passed);
        assert!(out.report.get(LIFT_INDEPENDENCE).unwrap().passed);
        assert!(out.report.get(BIVECTOR_LIFT_INDEPENDENCE).unwrap().passed);
        assert!(out.report.get(STRUCTURE_MATCHES_BIVECTOR).unwrap().passed);
        let jacobi = out.report.get(JACOBI).unwrap();
        assert!(!jacobi.passed);
        let w = jacobi.witness.as_ref().unwrap();
        assert_eq!(w.inputs, vec![p("y1"), p("y2"), p("y3")]);
        assert_eq!(w.residual, -Polynomial::one(6));
    }

    #[test]
    fn generalized_reduce_passes_for_admissible_lambda() {
        let out = generalized_reduce(&example("y1 y2", 2)).unwrap();
        assert!(out.passed(), "{:?}", out.report);
    }

    #[test]
    fn zero_subbundle_needs_a_lie_ideal() {
        let mut sc = ReductionScenario::new(names6(), PoissonBivector::canonical(3), 2);
        sc.submanifold = CoordinateSet::new(6, [0, 1]).unwrap();
        let out = generalized_reduce(&sc).unwrap();
        assert!(!out.report.get(WEAK_B).unwrap().passed);
        assert!(out.reduced.is_none());
    }

    #[test]
    fn induced_operation_audit() {
        let sc = example("x3", 2);
        let out = generalized_reduce(&sc).unwrap();
        let audit = audit_induced_operation(&sc, out.reduced.as_ref().unwrap());
        assert!(audit.passed(), "{:?}", audit);
    }

    #[test]
    fn certificate_examples() {
        let report = certify_strong(&with_certificate("1", 2)).unwrap();
        assert!(report.passed(), "{:?}", report);
        let report = certify_strong(&with_certificate("x3", 2)).unwrap();
        let strong = report.get(STRONG_A).unwrap();
        assert!(!strong.passed);
        let w = strong.witness.as_ref().unwrap();
        let b_minus = StructuredSpace::invariant(6, fields("x3"));
        assert!(w.inputs.iter().all(|f| b_minus.member(f).unwrap()));
        let b = example("x3", 2).b_space();
        assert!(!b.member(&w.residual).unwrap());
        assert!(report.get("certificate ⟹ Jacobi").unwrap().passed);
    }
}
