use std::collections::BTreeMap;

use crate::exactalg::Polynomial;
use crate::poisson::PolyVectorField;
use crate::subspaces::linalg::{kernel, SparseVec};
use crate::subspaces::{AmbientBasis, ExplicitSpan};

use super::constraint::normalizer;
use super::general::{induced_on_restrictions, new_lifter};
use super::{lift_through_restriction, search_pairs, Condition, ConditionReport, ReduceError, ReductionScenario, Witness};

pub const LIE_SUBALGEBRA: &str = "{B,B} ⊂ B";
pub const CLOSED: &str = "{A,A} ⊂ A";
pub const AGREES: &str = "two-stage = generalized";

/// Result of reducing first by the constraints of `N` and then by the
/// symmetries `E = B ∩ TN`. Functions are restrictions to `N`, written in
/// ambient variables.
#[derive(Debug, Clone)]
pub struct TwoStageOutcome {
    pub report: ConditionReport<Polynomial>,
    /// Tangential parts of `E = B ∩ TN`.
    pub e_fields: Vec<PolyVectorField>,
    /// Echelon basis of the reduced algebra `A` up to the check degree.
    pub basis: Vec<Polynomial>,
    /// Bracket of basis pairs `i < j` in the reduced algebra.
    pub structure: Vec<((usize, usize), Polynomial)>,
}

/// `E = B ∩ TN`: combinations of the B fields whose normal components
/// vanish along `N`, keeping only tangential components. Supported when the
/// normal components are constant along `N`.
fn tangent_part(sc: &ReductionScenario) -> Result<Vec<PolyVectorField>, ReduceError> {
    let coords = &sc.submanifold;
    let n = sc.nvars();
    let mut columns: Vec<SparseVec> = Vec::new();
    for x in &sc.b_fields {
        let mut col = Vec::new();
        for (kk, &k) in coords.indices().iter().enumerate() {
            let c = x.component(k).restrict_zero(coords);
            if !c.is_constant() {
                return Err(ReduceError::Unsupported(
                    "B ∩ TN with normal components that vary along N".into(),
                ));
            }
            let v = c.constant_term();
            if v != num_traits::Zero::zero() {
                col.push((kk, v));
            }
        }
        columns.push(col);
    }
    let mut out = Vec::new();
    for combo in kernel(columns) {
        let mut comps = vec![Polynomial::zero(n); n];
        for (a, c) in combo {
            for (i, comp) in comps.iter_mut().enumerate() {
                if !coords.contains(i) {
                    comp.add_scaled(&sc.b_fields[a].component(i).restrict_zero(coords), &c);
                }
            }
        }
        let field = PolyVectorField::new(comps);
        if !field.is_zero() {
            out.push(field);
        }
    }
    Ok(out)
}

/// Constraint reduction to `N` followed by symmetry reduction under
/// `E = B ∩ TN`, compared with the generalized reduction on the
/// representatives both share.
///
/// Whether `B` is a Lie subalgebra is reported as a condition rather than
/// required: the comparison is meaningful either way.
pub fn two_stage_reduce(sc: &ReductionScenario) -> Result<TwoStageOutcome, ReduceError> {
    sc.validate()?;
    let pi = &sc.bivector;
    let coords = &sc.submanifold;
    let n = sc.nvars();
    let d = sc.check_degree;
    let mut report = ConditionReport::new();

    let b = sc.b_space();
    let bspan = b.truncate(d);
    let bbasis = bspan.basis_polynomials();
    let (checked, witness) = search_pairs(&bbasis, &bbasis, true, |f, g| {
        let v = pi.bracket(f, g);
        (!b.member(&v).expect("arity checked")).then_some(v)
    });
    report.push(Condition::from_search(LIE_SUBALGEBRA, checked, witness));

    let e_fields = tangent_part(sc)?;
    report.dimension("B ∩ TN", e_fields.len());

    // stage 1: restrictions of the normalizer
    let nbasis = normalizer(pi, coords).truncate(d).basis_polynomials();
    let ambient = AmbientBasis::polynomials(n, d);
    let restricted: Vec<Polynomial> = nbasis.iter().map(|f| f.restrict_zero(coords)).collect();
    let stage1 = ExplicitSpan::from_polynomials(ambient.clone(), &restricted)?;
    report.dimension("N/(N∩I)", stage1.dim());

    // stage 2: E-invariants among them
    let s1 = stage1.basis_polynomials();
    let mut rows: BTreeMap<(usize, crate::exactalg::Monomial), usize> = BTreeMap::new();
    let columns: Vec<SparseVec> = s1
        .iter()
        .map(|u| {
            let mut col: SparseVec = Vec::new();
            for (a, x) in e_fields.iter().enumerate() {
                for (m, c) in x.apply(u).into_terms() {
                    let next = rows.len();
                    col.push((*rows.entry((a, m)).or_insert(next), c));
                }
            }
            col.sort_by_key(|(i, _)| *i);
            col
        })
        .collect();
    let invariants: Vec<Polynomial> = kernel(columns)
        .into_iter()
        .map(|combo| {
            let mut f = Polynomial::zero(n);
            for (i, c) in combo {
                f.add_scaled(&s1[i], &c);
            }
            f
        })
        .collect();
    let stage2 = ExplicitSpan::from_polynomials(ambient.clone(), &invariants)?;
    let basis = stage2.basis_polynomials();
    report.dimension("A", basis.len());

    let lift_n = |u: &Polynomial| lift_through_restriction(&nbasis, u, coords).expect("stage-1 element");
    let lifts: Vec<Polynomial> = basis.iter().map(lift_n).collect();
    let mut structure = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            structure.push(((i, j), pi.bracket(&lifts[i], &lifts[j]).restrict_zero(coords)));
        }
    }

    // closure of A, tested within the degree it was built at
    let mut checked = 0;
    let mut witness = None;
    for ((i, j), v) in &structure {
        checked += 1;
        let in_degree = v.degree().is_none_or(|k| k <= d);
        if in_degree && !stage2.contains_polynomial(v)? {
            witness = Some(Witness { inputs: vec![basis[*i].clone(), basis[*j].clone()], residual: v.clone() });
            break;
        }
    }
    report.push(Condition::from_search(CLOSED, checked, witness));

    // comparison on common representatives
    let generalized = ExplicitSpan::from_polynomials(
        ambient.clone(),
        &bbasis.iter().map(|f| f.restrict_zero(coords)).collect::<Vec<_>>(),
    )?;
    let common = stage2.intersect(&generalized)?;
    report.dimension("(B+I)/I", generalized.dim());
    report.dimension("common", common.dim());
    let common_basis = common.basis_polynomials();
    let mut lifter = new_lifter(sc);
    let mut checked = 0;
    let mut witness = None;
    'outer: for i in 0..common_basis.len() {
        for j in i + 1..common_basis.len() {
            checked += 1;
            let (u, v) = (&common_basis[i], &common_basis[j]);
            let staged = pi.bracket(&lift_n(u), &lift_n(v)).restrict_zero(coords);
            let general = induced_on_restrictions(sc, &mut lifter, u, v).ok_or_else(|| ReduceError::LiftInfeasible {
                coordinate: u.display(&sc.names).to_string(),
                degree: sc.work_degree,
            })?;
            if staged != general {
                witness = Some(Witness { inputs: vec![u.clone(), v.clone()], residual: staged - general });
                break 'outer;
            }
        }
    }
    report.push(Condition::from_search(AGREES, checked, witness));

    Ok(TwoStageOutcome { report, e_fields, basis, structure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical_reduce::general::tests::{example, names6, p};
    use crate::classical_reduce::generalized_reduce;
    use crate::exactalg::CoordinateSet;
    use crate::poisson::PoissonBivector;
    use crate::subspaces::StructuredSpace;

    fn coisotropic(fields: Vec<PolyVectorField>) -> ReductionScenario {
        let mut sc = ReductionScenario::new(names6(), PoissonBivector::canonical(3), 2);
        sc.submanifold = CoordinateSet::new(6, [0, 1]).unwrap();
        sc.b_fields = fields;
        sc
    }

    fn d(i: usize) -> PolyVectorField {
        PolyVectorField::coordinate(6, i)
    }

    #[test]
    fn transverse_subbundle_has_trivial_symmetry_stage() {
        let out = two_stage_reduce(&example("1", 2)).unwrap();
        assert_eq!(out.report.dim("B ∩ TN"), Some(0));
        assert!(!out.report.get(LIE_SUBALGEBRA).unwrap().passed);
        assert!(out.report.get(AGREES).unwrap().passed);
        assert!(out.report.dim("common").unwrap() > 0);
        // functions of (x3, y3) up to degree 2
        assert_eq!(out.basis.len(), 6);
    }

    #[test]
    fn lie_subalgebra_scenario_matches_generalized() {
        let sc = coisotropic(vec![d(3), d(4), d(0)]);
        let out = two_stage_reduce(&sc).unwrap();
        assert!(out.report.passed(), "{:?}", out.report);
        assert_eq!(out.e_fields, vec![d(3), d(4)]);
        assert_eq!(out.report.dim("A"), out.report.dim("(B+I)/I"));
        assert_eq!(out.report.dim("A"), out.report.dim("common"));

        // every B basis element lies in the normalizer
        let nspace = StructuredSpace::normalizer(sc.bivector.clone(), sc.submanifold.clone());
        for f in sc.b_space().truncate(2).basis_polynomials() {
            assert!(nspace.member(&f).unwrap());
        }
        let i = out.basis.iter().position(|f| *f == p("x3")).unwrap();
        let j = out.basis.iter().position(|f| *f == p("y3")).unwrap();
        let value = out.structure.iter().find(|(k, _)| *k == (i.min(j), i.max(j))).unwrap().1.clone();
        assert_eq!(if i < j { value } else { -value }, Polynomial::one(6));
    }

    #[test]
    fn bracket_depends_only_on_tangent_part() {
        let sc = coisotropic(vec![d(3), d(4), d(0)]);
        let sc2 = coisotropic(vec![d(3), d(4)]);
        let r = generalized_reduce(&sc).unwrap().reduced.unwrap();
        let r2 = generalized_reduce(&sc2).unwrap().reduced.unwrap();
        let span = |v: &[Polynomial]| ExplicitSpan::from_polynomials(AmbientBasis::polynomials(6, 2), v).unwrap();
        assert_eq!(span(&r.restricted), span(&r2.restricted));
        let mut lifter = new_lifter(&sc2);
        for i in 0..r.dim() {
            for j in i + 1..r.dim() {
                let other = induced_on_restrictions(&sc2, &mut lifter, &r.restricted[i], &r.restricted[j]).unwrap();
                assert_eq!(r.value(i, j), other);
            }
        }
    }

    #[test]
    fn varying_normal_components_are_unsupported() {
        let mut sc = example("x3", 2);
        sc.b_fields[1] = PolyVectorField::new({
            let mut c = vec![Polynomial::zero(6); 6];
            c[1] = p("x3");
            c
        });
        assert!(matches!(two_stage_reduce(&sc), Err(ReduceError::Unsupported(_))));
    }
}
