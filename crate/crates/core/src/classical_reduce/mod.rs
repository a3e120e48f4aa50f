//! Reduction of polynomial Poisson algebras: by symmetries, by constraints
//! (including the Dirac bracket), and by a submanifold together with a
//! subbundle along it, where the induced bracket lives on `B/(B ∩ I)`.
//!
//! Every condition is checked on basis pairs of a degree-truncated space,
//! with membership tested through the exact structured rules. A FAIL is a
//! result carrying a witness, not an error.

mod constraint;
mod general;
mod lift;
mod symmetry;
mod two_stage;

use thiserror::Error;

use crate::exactalg::{AlgebraError, CoordinateSet, Monomial, Polynomial};
use crate::poisson::{JacobiReport, PoissonBivector, PolyVectorField};
use crate::subspaces::linalg::{Indexer, SparseVec, TrackedEchelon};
use crate::subspaces::{QuotientPresentation, StructuredSpace, SubspaceError};

pub use constraint::{
    normalizer, reduce_by_constraints, second_class_check, vanishing_ideal, ConstraintOutcome, DiracBracket,
};
pub use general::{audit_induced_operation, certify_strong, generalized_reduce, reduced_bivector, GeneralizedOutcome};
pub use crate::conditions::{Condition, ConditionReport, Witness};
pub use lift::RestrictedLifter;
pub use symmetry::{reduce_by_symmetries, SymmetryOutcome};
pub use two_stage::{two_stage_reduce, TwoStageOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error("inconsistent scenario: {0}")]
    Inconsistent(String),
    #[error("coordinate `{coordinate}` has no lift into B of degree <= {degree}")]
    LiftInfeasible { coordinate: String, degree: u32 },
    #[error("constraint #{index} does not vanish on the submanifold")]
    ConstraintNotVanishing { index: usize },
    #[error("constraint bracket matrix is not invertible at the origin")]
    SingularConstraintMatrix,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Optional `B₋ ⊂ B ⊂ B₊` sandwich for the strong conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub b_minus: StructuredSpace,
    /// `None` means `B₊ = B`.
    pub b_plus: Option<StructuredSpace>,
}

/// All classical inputs: the Poisson structure on `M`, the coordinate
/// submanifold `N = {x_k = 0 : k in K}`, the fields spanning `B ⊂ T_N M`,
/// and optional symmetries, constraints, and certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionScenario {
    pub names: Vec<String>,
    pub bivector: PoissonBivector,
    pub submanifold: CoordinateSet,
    pub b_fields: Vec<PolyVectorField>,
    pub e_fields: Vec<PolyVectorField>,
    pub constraints: Vec<Polynomial>,
    pub certificate: Option<Certificate>,
    pub check_degree: u32,
    pub work_degree: u32,
}

impl ReductionScenario {
    /// A scenario with no submanifold data; `work_degree` defaults to
    /// `check_degree + 2`.
    pub fn new(names: Vec<String>, bivector: PoissonBivector, check_degree: u32) -> Self {
        let n = names.len();
        ReductionScenario {
            names,
            bivector,
            submanifold: CoordinateSet::empty(n),
            b_fields: Vec::new(),
            e_fields: Vec::new(),
            constraints: Vec::new(),
            certificate: None,
            check_degree,
            work_degree: check_degree + 2,
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn validate(&self) -> Result<(), ReduceError> {
        let n = self.nvars();
        let bad = |what: &str| Err(ReduceError::Inconsistent(format!("{} has the wrong variable count", what)));
        if self.bivector.nvars() != n {
            return bad("bivector");
        }
        if self.submanifold.nvars() != n {
            return bad("submanifold");
        }
        if self.b_fields.iter().chain(&self.e_fields).any(|x| x.nvars() != n) {
            return bad("vector field");
        }
        if self.constraints.iter().any(|c| c.nvars() != n) {
            return bad("constraint");
        }
        if let Some(cert) = &self.certificate {
            if cert.b_minus.nvars() != n || cert.b_plus.as_ref().is_some_and(|s| s.nvars() != n) {
                return bad("certificate");
            }
        }
        if self.check_degree < 1 {
            return Err(ReduceError::Inconsistent("check degree must be at least 1".into()));
        }
        if self.work_degree < self.check_degree {
            return Err(ReduceError::Inconsistent("work degree below check degree".into()));
        }
        Ok(())
    }

    /// The space `B = {f : (X f)|_N = 0 for X in B}`.
    pub fn b_space(&self) -> StructuredSpace {
        StructuredSpace::restricted_invariant(self.b_fields.clone(), self.submanifold.clone())
    }

    pub fn ideal(&self) -> StructuredSpace {
        StructuredSpace::vanishing_ideal(self.submanifold.clone())
    }

    /// Ambient indices of the coordinates on `N`.
    pub fn n_coordinates(&self) -> Vec<usize> {
        self.submanifold.complement()
    }

    pub fn n_names(&self) -> Vec<String> {
        self.n_coordinates().into_iter().map(|i| self.names[i].clone()).collect()
    }
}

pub type PolyWitness = Witness<Polynomial>;

/// Reduced bivector on the coordinates of `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedBivector {
    /// Names of the `N` coordinates, in ambient order.
    pub names: Vec<String>,
    /// Ambient indices of the `N` coordinates.
    pub coordinates: Vec<usize>,
    pub bivector: PoissonBivector,
    /// Lifts of the `N` coordinates into `B`, in ambient variables.
    pub lifts: Vec<Polynomial>,
}

impl ReducedBivector {
    /// Polynomial on `N` (reduced variables) written in ambient variables.
    pub fn to_ambient(&self, p: &Polynomial, nvars: usize) -> Polynomial {
        let map: Vec<Option<usize>> = self.coordinates.iter().map(|&i| Some(i)).collect();
        p.remap(nvars, &map)
    }

    /// Polynomial avoiding the submanifold coordinates, in reduced variables.
    pub fn to_reduced(&self, p: &Polynomial) -> Polynomial {
        let mut map = vec![None; p.nvars()];
        for (j, &i) in self.coordinates.iter().enumerate() {
            map[i] = Some(j);
        }
        p.remap(self.coordinates.len(), &map)
    }
}

/// The operation induced on a quotient `B/(B ∩ I)`: representatives, their
/// restrictions to `N`, and bracket values as canonical representatives
/// modulo `I` (restrictions to `N`).
#[derive(Debug, Clone)]
pub struct ReducedBracket {
    pub quotient: QuotientPresentation,
    pub lifts: Vec<Polynomial>,
    pub restricted: Vec<Polynomial>,
    /// `{lift_i, lift_j}|_N` for `i < j`.
    pub structure: Vec<((usize, usize), Polynomial)>,
    pub bivector: Option<ReducedBivector>,
    pub jacobi: Option<JacobiReport>,
}

impl ReducedBracket {
    pub fn dim(&self) -> usize {
        self.lifts.len()
    }

    /// Induced bracket of representatives `i` and `j`.
    pub fn value(&self, i: usize, j: usize) -> Polynomial {
        use std::cmp::Ordering::*;
        let nvars = self.lifts.first().map_or(0, Polynomial::nvars);
        let lookup = |a: usize, b: usize| {
            self.structure
                .iter()
                .find(|((x, y), _)| *x == a && *y == b)
                .map(|(_, p)| p.clone())
                .unwrap_or_else(|| Polynomial::zero(nvars))
        };
        match i.cmp(&j) {
            Equal => Polynomial::zero(nvars),
            Less => lookup(i, j),
            Greater => -lookup(j, i),
        }
    }
}

/// First pair `(a, b)` with `a` from `left` and `b` from `right` where `test`
/// returns an offending residual. With `symmetric`, `left` and `right` are
/// the same list and only pairs `i <= j` are visited.
pub(crate) fn search_pairs<F>(left: &[Polynomial], right: &[Polynomial], symmetric: bool, mut test: F) -> (usize, Option<PolyWitness>)
where
    F: FnMut(&Polynomial, &Polynomial) -> Option<Polynomial>,
{
    let mut checked = 0;
    for (i, a) in left.iter().enumerate() {
        let start = if symmetric { i } else { 0 };
        for b in &right[start..] {
            checked += 1;
            if let Some(residual) = test(a, b) {
                return (checked, Some(Witness { inputs: vec![a.clone(), b.clone()], residual }));
            }
        }
    }
    (checked, None)
}

/// A combination of `basis` whose restriction to `N` equals `target`.
pub(crate) fn lift_through_restriction(
    basis: &[Polynomial],
    target: &Polynomial,
    coords: &CoordinateSet,
) -> Option<Polynomial> {
    let mut rows: Indexer<Monomial> = Indexer::new();
    let mut to_vec = |p: Polynomial| -> SparseVec {
        let mut v: SparseVec = p.into_terms().map(|(m, c)| (rows.index(&m), c)).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    };
    let mut ech = TrackedEchelon::new();
    for b in basis {
        ech.insert(to_vec(b.restrict_zero(coords)));
    }
    let x = ech.solve(&to_vec(target.restrict_zero(coords)))?;
    let mut out = Polynomial::zero(target.nvars());
    for (i, c) in x {
        out.add_scaled(&basis[i], &c);
    }
    Some(out)
}

/// `P_N^{uv} = {lift u, lift v}|_N` in the reduced variables.
pub(crate) fn bivector_from_lifts(
    bivector: &PoissonBivector,
    names: &[String],
    coords: &CoordinateSet,
    lifts: Vec<Polynomial>,
) -> ReducedBivector {
    let coordinates = coords.complement();
    let mut reduced = ReducedBivector {
        names: coordinates.iter().map(|&i| names[i].clone()).collect(),
        bivector: PoissonBivector::zero(coordinates.len()),
        coordinates,
        lifts,
    };
    for u in 0..reduced.lifts.len() {
        for v in u + 1..reduced.lifts.len() {
            let value = bivector.bracket(&reduced.lifts[u], &reduced.lifts[v]).restrict_zero(coords);
            let value = reduced.to_reduced(&value);
            reduced.bivector.set(u, v, value).expect("u < v");
        }
    }
    reduced
}
