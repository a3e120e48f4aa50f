use crate::exactalg::Polynomial;
use crate::poisson::{PoissonBivector, PolyVectorField};
use crate::subspaces::{ExplicitSpan, StructuredSpace};

use super::{search_pairs, Condition, ConditionReport, PolyWitness, ReduceError};

/// Outcome of reducing by a family of symmetry fields.
#[derive(Debug, Clone)]
pub struct SymmetryOutcome {
    pub report: ConditionReport<Polynomial>,
    /// Echelon basis of the truncated invariant space.
    pub basis: Vec<Polynomial>,
    /// `{e_i, e_j}` for `i < j`, present only when the invariant space is
    /// closed under the bracket.
    pub structure: Option<Vec<((usize, usize), Polynomial)>>,
}

impl SymmetryOutcome {
    pub fn is_abelian(&self) -> bool {
        self.structure.as_ref().is_some_and(|s| s.iter().all(|(_, p)| p.is_zero()))
    }
}

/// Builds the invariant space `E = {f : X f = 0, X in fields}` up to
/// `degree` and checks that it is a Lie subalgebra. On success the bracket
/// restricted to `E` is returned as a structure table on the echelon basis.
pub fn reduce_by_symmetries(
    bivector: &PoissonBivector,
    fields: &[PolyVectorField],
    degree: u32,
) -> Result<SymmetryOutcome, ReduceError> {
    if fields.is_empty() {
        return Err(ReduceError::Inconsistent("symmetry reduction needs at least one field".into()));
    }
    let n = bivector.nvars();
    if fields.iter().any(|x| x.nvars() != n) {
        return Err(ReduceError::Inconsistent("vector field has the wrong variable count".into()));
    }
    let space = StructuredSpace::invariant(n, fields.to_vec());
    let span: ExplicitSpan = space.truncate(degree);
    let basis = span.basis_polynomials();

    let mut report = ConditionReport::new();
    report.dimension("E", span.dim());

    let mut brackets = Vec::new();
    let (checked, witness): (usize, Option<PolyWitness>) = search_pairs(&basis, &basis, true, |f, g| {
        let b = bivector.bracket(f, g);
        if space.member(&b).expect("arity checked") {
            brackets.push(b);
            None
        } else {
            Some(b)
        }
    });
    let closed = report.push(Condition::from_search("{E,E} ⊂ E", checked, witness));

    let structure = closed.then(|| {
        // search_pairs visits (i, j) with i <= j in order; keep i < j.
        let mut out = Vec::new();
        let mut it = brackets.into_iter();
        for i in 0..basis.len() {
            for j in i..basis.len() {
                let b = it.next().expect("one bracket per pair");
                if i < j {
                    out.push(((i, j), b));
                }
            }
        }
        out
    });
    Ok(SymmetryOutcome { report, basis, structure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_polynomial;

    fn names6() -> Vec<String> {
        ["x1", "x2", "x3", "y1", "y2", "y3"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn translation_invariants_are_abelian() {
        let pi = PoissonBivector::canonical(1);
        let out = reduce_by_symmetries(&pi, &[PolyVectorField::coordinate(2, 0)], 3).unwrap();
        assert!(out.report.passed());
        assert_eq!(out.basis.len(), 4);
        assert!(out.is_abelian());
    }

    #[test]
    fn inner_derivations_always_close() {
        let pi = PoissonBivector::canonical(1);
        let x = Polynomial::var(2, 0);
        let xg = pi.hamiltonian_vf(&x);
        let out = reduce_by_symmetries(&pi, &[xg], 3).unwrap();
        assert!(out.report.passed());

        // a nonabelian example: X_g for g = x y (scaling field)
        let names = vec!["x".to_string(), "y".to_string()];
        let g = parse_polynomial("x y", &names).unwrap();
        let out = reduce_by_symmetries(&pi, &[pi.hamiltonian_vf(&g)], 4).unwrap();
        assert!(out.report.passed());
    }

    #[test]
    fn sheared_field_is_not_closed() {
        let pi = PoissonBivector::canonical(3);
        let lam = parse_polynomial("x3", &names6()).unwrap();
        let mut comps = vec![Polynomial::zero(6); 6];
        comps[1] = Polynomial::one(6);
        comps[3] = -lam;
        let field = PolyVectorField::new(comps);
        let out = reduce_by_symmetries(&pi, std::slice::from_ref(&field), 2).unwrap();
        let cond = out.report.get("{E,E} ⊂ E").unwrap();
        assert!(!cond.passed);
        let w = cond.witness.as_ref().unwrap();
        assert!(w.inputs.iter().all(|f| field.apply(f).is_zero()));
        assert!(!field.apply(&w.residual).is_zero());
        assert!(out.structure.is_none());
    }
}
