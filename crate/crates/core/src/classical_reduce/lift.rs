use num_traits::One;

use crate::exactalg::{monomials_up_to, CoordinateSet, Monomial, Polynomial, Rational};
use crate::poisson::PolyVectorField;
use crate::subspaces::linalg::{Indexer, SparseVec, TrackedEchelon};

/// Lifts functions on `N = {x_k = 0 : k in K}` into
/// `B = {f : (X f)|_N = 0 for X in B}`.
///
/// Membership in `B` only sees `f|_N` and the normal derivatives
/// `(d_k f)|_N`, so a lift can be sought as `f = f0 + sum_k x_k nu_k` with
/// `nu_k` polynomials on `N`. The conditions become the linear system
///
/// ```text
/// (X_a f0)|_N + sum_k (X_a^k)|_N nu_k = 0      for every field X_a
/// ```
///
/// in the coefficients of `nu_k`. Unknowns are added in ascending graded-lex
/// order and the solver only uses columns that were independent when
/// inserted, so the chosen lift is supported on the smallest admissible
/// monomials.
#[derive(Debug)]
pub struct RestrictedLifter {
    nvars: usize,
    coords: CoordinateSet,
    fields: Vec<PolyVectorField>,
    /// `normal[a][kk] = (X_a^{K[kk]})|_N`
    normal: Vec<Vec<Polynomial>>,
    columns: Vec<(usize, Monomial)>,
    echelon: TrackedEchelon,
    rows: Indexer<(usize, Monomial)>,
    covered: Option<u32>,
    slack: u32,
}

impl RestrictedLifter {
    /// `slack` is the extra normal degree allowed beyond the target's own
    /// degree (the work degree minus the check degree).
    pub fn new(fields: &[PolyVectorField], coords: &CoordinateSet, slack: u32) -> Self {
        let normal = fields
            .iter()
            .map(|x| coords.indices().iter().map(|&k| x.component(k).restrict_zero(coords)).collect())
            .collect();
        RestrictedLifter {
            nvars: coords.nvars(),
            coords: coords.clone(),
            fields: fields.to_vec(),
            normal,
            columns: Vec::new(),
            echelon: TrackedEchelon::new(),
            rows: Indexer::new(),
            covered: None,
            slack,
        }
    }

    /// Normal-correction degree used for a target of total degree `degree`.
    pub fn bound_for(&self, degree: u32) -> Option<u32> {
        (degree + self.slack).checked_sub(1)
    }

    fn ensure(&mut self, bound: u32) {
        let start = match self.covered {
            Some(c) if c >= bound => return,
            Some(c) => c + 1,
            None => 0,
        };
        let monomials: Vec<Monomial> = monomials_up_to(self.nvars, bound, Some(self.coords.mask()))
            .into_iter()
            .filter(|m| m.degree() >= start)
            .collect();
        for m in monomials {
            for kk in 0..self.coords.indices().len() {
                let mut col: SparseVec = Vec::new();
                for (a, normal) in self.normal.iter().enumerate() {
                    let coeff = &normal[kk];
                    if coeff.is_zero() {
                        continue;
                    }
                    let image = coeff * &Polynomial::term(m.clone(), Rational::one());
                    for (mono, c) in image.into_terms() {
                        col.push((self.rows.index(&(a, mono)), c));
                    }
                }
                col.sort_by_key(|(i, _)| *i);
                self.columns.push((kk, m.clone()));
                self.echelon.insert(col);
            }
        }
        self.covered = Some(bound);
    }

    /// `-(X_a f0)|_N` over all fields, in row coordinates.
    fn target(&mut self, f0: &Polynomial) -> SparseVec {
        let mut v: SparseVec = Vec::new();
        for (a, x) in self.fields.iter().enumerate() {
            let img = x.apply(f0).restrict_zero(&self.coords);
            for (mono, c) in img.into_terms() {
                v.push((self.rows.index(&(a, mono)), -c));
            }
        }
        v.sort_by_key(|(i, _)| *i);
        v
    }

    /// Lift of `f0` (which must avoid the submanifold coordinates) with the
    /// default normal-degree bound.
    pub fn lift(&mut self, f0: &Polynomial) -> Option<Polynomial> {
        let bound = self.bound_for(f0.degree().unwrap_or(0));
        self.lift_with_bound(f0, bound)
    }

    pub fn lift_with_bound(&mut self, f0: &Polynomial, bound: Option<u32>) -> Option<Polynomial> {
        debug_assert!(f0.avoids(&self.coords), "lift target must be a function on N");
        let target = self.target(f0);
        if target.is_empty() {
            return Some(f0.clone());
        }
        let bound = bound?;
        self.ensure(bound);
        let x = self.echelon.solve(&target)?;
        let mut out = f0.clone();
        for (col, c) in x {
            let (kk, m) = &self.columns[col];
            if m.degree() > bound {
                // Columns beyond the bound may exist from earlier calls.
                return None;
            }
            let k = self.coords.indices()[*kk];
            out.add_scaled(&Polynomial::term(m.mul(&Monomial::var(self.nvars, k)), Rational::one()), &c);
        }
        Some(out)
    }

    /// Whether `f0` is the restriction of some member of `B` (within the
    /// default degree bound).
    pub fn contains_restriction(&mut self, f0: &Polynomial) -> bool {
        self.lift(f0).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_polynomial;
    use crate::subspaces::StructuredSpace;

    fn names() -> Vec<String> {
        ["x1", "x2", "x3", "y1", "y2", "y3"].iter().map(|s| s.to_string()).collect()
    }

    fn b_fields(lambda: &str) -> Vec<PolyVectorField> {
        let lam = parse_polynomial(lambda, &names()).unwrap();
        let mut second = vec![Polynomial::zero(6); 6];
        second[1] = Polynomial::one(6);
        second[3] = -lam;
        vec![PolyVectorField::coordinate(6, 0), PolyVectorField::new(second)]
    }

    #[test]
    fn lifts_y1_to_the_transverse_correction() {
        let k = CoordinateSet::new(6, [0, 1]).unwrap();
        for (lambda, expected) in [("x3", "y1 + x2 x3"), ("y1 y2", "y1 + x2 y1 y2"), ("1", "y1 + x2")] {
            let mut lifter = RestrictedLifter::new(&b_fields(lambda), &k, 2);
            let y1 = Polynomial::var(6, 3);
            let lift = lifter.lift(&y1).unwrap();
            assert_eq!(lift, parse_polynomial(expected, &names()).unwrap());
            let space = StructuredSpace::restricted_invariant(b_fields(lambda), k.clone());
            assert!(space.member(&lift).unwrap());
        }
    }

    #[test]
    fn lifts_are_members_and_restrict_back() {
        let k = CoordinateSet::new(6, [0, 1]).unwrap();
        let space = StructuredSpace::restricted_invariant(b_fields("x3"), k.clone());
        let mut lifter = RestrictedLifter::new(&b_fields("x3"), &k, 2);
        for src in ["y1^2", "y1 y2 x3", "y3^3 + y1", "7"] {
            let f0 = parse_polynomial(src, &names()).unwrap();
            let lift = lifter.lift(&f0).unwrap();
            assert!(space.member(&lift).unwrap(), "{}", src);
            assert_eq!(lift.restrict_zero(&k), f0);
        }
    }

    #[test]
    fn tangent_fields_obstruct_lifts() {
        // B = span{d/dy1} is tangent to N: only y1-free functions lift.
        let k = CoordinateSet::new(6, [0, 1]).unwrap();
        let mut lifter = RestrictedLifter::new(&[PolyVectorField::coordinate(6, 3)], &k, 2);
        assert!(lifter.lift(&Polynomial::var(6, 3)).is_none());
        assert!(lifter.lift(&Polynomial::var(6, 4)).is_some());
    }
}
