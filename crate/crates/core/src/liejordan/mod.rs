//! Lie-Jordan algebras of Hermitian matrices over the Gaussian rationals,
//! and the reduction of such algebras by a pair of subspaces.

mod matrix;
mod reduce;

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::conditions::{Condition, ConditionReport, Witness};
use crate::exactalg::{rat, GaussianRational, Rational};
use crate::subspaces::SubspaceError;

pub use matrix::{ComplexMatrix, HermitianElement};
pub use reduce::{
    classical_limit_compare, quantum_reduce, LJQuotient, LimitRow, QuantumCertificate, QuantumOutcome,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieJordanError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("hbar must be nonzero")]
    ZeroHbar,
    #[error("matrix is not Hermitian at entry ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("subspace is not in the Hermitian ambient of dimension {0}")]
    WrongAmbient(usize),
    #[error("axiom `{0}` fails on the basis")]
    AxiomViolation(String),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

fn same_dim(a: usize, b: usize) -> Result<(), LieJordanError> {
    if a == b {
        Ok(())
    } else {
        Err(LieJordanError::DimensionMismatch { left: a, right: b })
    }
}

/// `a∘b = (ab + ba)/2`
pub fn jordan(a: &HermitianElement, b: &HermitianElement) -> Result<HermitianElement, LieJordanError> {
    same_dim(a.dim(), b.dim())?;
    let ab = a.matrix().mul(b.matrix());
    let ba = b.matrix().mul(a.matrix());
    Ok(HermitianElement::from_matrix_unchecked(ab.add(&ba).scale_real(&rat(1, 2))))
}

/// `[a,b] = i/(2ħ) (ab - ba)`
pub fn lie(a: &HermitianElement, b: &HermitianElement, hbar: &Rational) -> Result<HermitianElement, LieJordanError> {
    same_dim(a.dim(), b.dim())?;
    if hbar.is_zero() {
        return Err(LieJordanError::ZeroHbar);
    }
    let ab = a.matrix().mul(b.matrix());
    let ba = b.matrix().mul(a.matrix());
    let factor = GaussianRational::new(Rational::zero(), Rational::from_integer(1.into()) / (hbar * rat(2, 1)));
    Ok(HermitianElement::from_matrix_unchecked(ab.sub(&ba).scale(&factor)))
}

/// `a∘b - iħ[a,b]`, which equals the matrix product `ab`.
pub fn complexify(a: &HermitianElement, b: &HermitianElement, hbar: &Rational) -> Result<ComplexMatrix, LieJordanError> {
    let j = jordan(a, b)?;
    let l = lie(a, b, hbar)?;
    let minus_i_hbar = GaussianRational::new(Rational::zero(), -hbar.clone());
    Ok(j.matrix().add(&l.matrix().scale(&minus_i_hbar)))
}

/// Product on complex matrices `x = x1 + i x2` obtained by extending
/// [`complexify`] complex-bilinearly from the Hermitian parts.
pub fn complexified_product(x: &ComplexMatrix, y: &ComplexMatrix, hbar: &Rational) -> Result<ComplexMatrix, LieJordanError> {
    same_dim(x.dim(), y.dim())?;
    let (x1, x2) = x.hermitian_parts();
    let (y1, y2) = y.hermitian_parts();
    let i = GaussianRational::new(Rational::zero(), Rational::from_integer(1.into()));
    let minus_one = GaussianRational::new(Rational::from_integer((-1).into()), Rational::zero());
    Ok(complexify(&x1, &y1, hbar)?
        .add(&complexify(&x1, &y2, hbar)?.scale(&i))
        .add(&complexify(&x2, &y1, hbar)?.scale(&i))
        .add(&complexify(&x2, &y2, hbar)?.scale(&minus_one)))
}

/// A bilinear algebra with a commutative and an anticommutative product,
/// presented on some element type.
pub trait LieJordanStructure {
    type Element: Clone + PartialEq + fmt::Debug;
    fn jordan(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn lie(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    /// `sum c_k e_k`
    fn combine(&self, terms: &[(Rational, &Self::Element)]) -> Self::Element;
    fn is_zero(&self, a: &Self::Element) -> bool;
}

/// Hermitian `d x d` matrices with `∘` and `[ , ]` at a fixed nonzero `ħ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LJAlgebra {
    d: usize,
    hbar: Rational,
}

impl LJAlgebra {
    /// Builds the algebra and verifies the identities on its full basis.
    pub fn new(d: usize, hbar: Rational) -> Result<Self, LieJordanError> {
        if hbar.is_zero() {
            return Err(LieJordanError::ZeroHbar);
        }
        let alg = LJAlgebra { d, hbar };
        let report = verify_axioms(&alg, &HermitianElement::basis(d), &alg.hbar);
        if let Some(c) = report.conditions.iter().find(|c| !c.passed) {
            return Err(LieJordanError::AxiomViolation(c.name.clone()));
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn hbar(&self) -> &Rational {
        &self.hbar
    }

    pub fn basis(&self) -> Vec<HermitianElement> {
        HermitianElement::basis(self.d)
    }
}

impl LieJordanStructure for LJAlgebra {
    type Element = HermitianElement;

    fn jordan(&self, a: &HermitianElement, b: &HermitianElement) -> HermitianElement {
        jordan(a, b).expect("elements of this algebra")
    }

    fn lie(&self, a: &HermitianElement, b: &HermitianElement) -> HermitianElement {
        lie(a, b, &self.hbar).expect("elements of this algebra")
    }

    fn combine(&self, terms: &[(Rational, &HermitianElement)]) -> HermitianElement {
        let mut out = HermitianElement::zero(self.d);
        for (c, e) in terms {
            out = out.add(&e.scale(c));
        }
        out
    }

    fn is_zero(&self, a: &HermitianElement) -> bool {
        a.is_zero()
    }
}

pub const JORDAN_COMMUTATIVE: &str = "a∘b = b∘a";
pub const LIE_ANTISYMMETRIC: &str = "[a,b] = -[b,a]";
pub const JACOBI: &str = "Jacobi";
pub const LEIBNIZ: &str = "Leibniz";
pub const ASSOCIATOR: &str = "associator";

/// Axiom verdicts; `partial` is set when the sample was not declared to
/// span the algebra.
#[derive(Debug, Clone)]
pub struct AxiomReport<T> {
    pub report: ConditionReport<T>,
    pub partial: bool,
}

impl<T> AxiomReport<T> {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Checks, exactly on every triple of `sample`:
///
/// ```text
/// [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0
/// [a∘b, c] = a∘[b,c] + [a,c]∘b
/// (a∘b)∘c - a∘(b∘c) = ħ² [[a,c],b]
/// ```
///
/// plus commutativity of `∘` and antisymmetry of `[ , ]` on pairs. The
/// associator uses the `hbar` passed here, so a wrong constant can be
/// tested against the algebra's own bracket.
pub fn verify_axioms<S: LieJordanStructure>(
    alg: &S,
    sample: &[S::Element],
    hbar: &Rational,
) -> ConditionReport<S::Element> {
    let one = Rational::from_integer(1.into());
    let minus = -one.clone();
    let hbar2 = hbar * hbar;
    let mut report = ConditionReport::new();
    report.dimension("sample", sample.len());

    let pair_check = |name: &str, f: &dyn Fn(&S::Element, &S::Element) -> S::Element| {
        let mut checked = 0;
        for (i, a) in sample.iter().enumerate() {
            for b in &sample[i..] {
                checked += 1;
                let r = f(a, b);
                if !alg.is_zero(&r) {
                    return Condition::fail(name, checked, Witness { inputs: vec![a.clone(), b.clone()], residual: r });
                }
            }
        }
        Condition::pass(name, checked)
    };
    report.push(pair_check(JORDAN_COMMUTATIVE, &|a, b| {
        alg.combine(&[(one.clone(), &alg.jordan(a, b)), (minus.clone(), &alg.jordan(b, a))])
    }));
    report.push(pair_check(LIE_ANTISYMMETRIC, &|a, b| {
        alg.combine(&[(one.clone(), &alg.lie(a, b)), (one.clone(), &alg.lie(b, a))])
    }));

    let n = sample.len();
    let lie_table: Vec<Vec<S::Element>> =
        sample.iter().map(|a| sample.iter().map(|b| alg.lie(a, b)).collect()).collect();
    let jordan_table: Vec<Vec<S::Element>> =
        sample.iter().map(|a| sample.iter().map(|b| alg.jordan(a, b)).collect()).collect();

    let mut found: [Option<Condition<S::Element>>; 3] = [None, None, None];
    let mut checked = [0usize; 3];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (x, y, z) = (&sample[a], &sample[b], &sample[c]);
                let witness = |r: S::Element| Witness { inputs: vec![x.clone(), y.clone(), z.clone()], residual: r };
                if found[0].is_none() && a < b && b < c {
                    checked[0] += 1;
                    let r = alg.combine(&[
                        (one.clone(), &alg.lie(x, &lie_table[b][c])),
                        (one.clone(), &alg.lie(y, &lie_table[c][a])),
                        (one.clone(), &alg.lie(z, &lie_table[a][b])),
                    ]);
                    if !alg.is_zero(&r) {
                        found[0] = Some(Condition::fail(JACOBI, checked[0], witness(r)));
                    }
                }
                if found[1].is_none() {
                    checked[1] += 1;
                    let r = alg.combine(&[
                        (one.clone(), &alg.lie(&jordan_table[a][b], z)),
                        (minus.clone(), &alg.jordan(x, &lie_table[b][c])),
                        (minus.clone(), &alg.jordan(&lie_table[a][c], y)),
                    ]);
                    if !alg.is_zero(&r) {
                        found[1] = Some(Condition::fail(LEIBNIZ, checked[1], witness(r)));
                    }
                }
                if found[2].is_none() {
                    checked[2] += 1;
                    let r = alg.combine(&[
                        (one.clone(), &alg.jordan(&jordan_table[a][b], z)),
                        (minus.clone(), &alg.jordan(x, &jordan_table[b][c])),
                        (-hbar2.clone(), &alg.lie(&lie_table[a][c], y)),
                    ]);
                    if !alg.is_zero(&r) {
                        found[2] = Some(Condition::fail(ASSOCIATOR, checked[2], witness(r)));
                    }
                }
            }
        }
    }
    for (k, name) in [JACOBI, LEIBNIZ, ASSOCIATOR].into_iter().enumerate() {
        report.push(found[k].take().unwrap_or_else(|| Condition::pass(name, checked[k])));
    }
    report
}

/// [`verify_axioms`] on a sample, flagged partial unless the sample spans
/// the Hermitian space.
pub fn verify_sample(alg: &LJAlgebra, sample: &[HermitianElement], hbar: &Rational) -> AxiomReport<HermitianElement> {
    let span = HermitianElement::span(alg.dim(), sample).expect("same dimension");
    AxiomReport { report: verify_axioms(alg, sample, hbar), partial: span.dim() < alg.dim() * alg.dim() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn sx() -> HermitianElement {
        HermitianElement::pauli_x()
    }
    fn sy() -> HermitianElement {
        HermitianElement::pauli_y()
    }
    fn sz() -> HermitianElement {
        HermitianElement::pauli_z()
    }

    #[test]
    fn jordan_examples() {
        let id = HermitianElement::identity(2);
        assert_eq!(jordan(&sx(), &sx()).unwrap(), id);
        assert!(jordan(&sx(), &sy()).unwrap().is_zero());
        let a = HermitianElement::from_coords(2, &[int(2), rat(1, 3), int(-1), int(5)]).unwrap();
        assert_eq!(jordan(&a, &id).unwrap(), a);
        assert!(jordan(&a, &HermitianElement::identity(3)).is_err());
    }

    #[test]
    fn lie_examples() {
        let one = int(1);
        assert_eq!(lie(&sx(), &sy(), &one).unwrap(), sz().scale(&int(-1)));
        let a = HermitianElement::from_coords(2, &[int(2), rat(1, 3), int(-1), int(5)]).unwrap();
        assert!(lie(&a, &a, &one).unwrap().is_zero());
        assert!(lie(&a, &HermitianElement::identity(2), &one).unwrap().is_zero());
        assert_eq!(lie(&a, &a, &int(0)), Err(LieJordanError::ZeroHbar));
    }

    #[test]
    fn complexify_is_the_matrix_product() {
        let one = int(1);
        let p = complexify(&sx(), &sy(), &one).unwrap();
        assert_eq!(p, sx().matrix().mul(sy().matrix()));
        let i = GaussianRational::new(int(0), int(1));
        assert_eq!(p, sz().matrix().scale(&i));
        let a = HermitianElement::from_coords(2, &[int(2), rat(1, 3), int(-1), int(5)]).unwrap();
        assert_eq!(complexify(&a, &HermitianElement::identity(2), &rat(1, 2)).unwrap(), a.matrix().clone());
    }

    #[test]
    fn pauli_axioms() {
        let alg = LJAlgebra::new(2, int(1)).unwrap();
        let report = verify_axioms(&alg, &[HermitianElement::identity(2), sx(), sy(), sz()], &int(1));
        assert!(report.passed(), "{:?}", report);
        // (σx∘σx)∘σz - σx∘(σx∘σz) = σz = ħ²[[σx,σz],σx]
        let lhs = jordan(&jordan(&sx(), &sx()).unwrap(), &sz()).unwrap().sub(&jordan(&sx(), &jordan(&sx(), &sz()).unwrap()).unwrap());
        assert_eq!(lhs, sz());
        assert_eq!(lie(&lie(&sx(), &sz(), &int(1)).unwrap(), &sx(), &int(1)).unwrap(), sz());
    }

    #[test]
    fn wrong_hbar_breaks_the_associator() {
        let alg = LJAlgebra::new(2, int(1)).unwrap();
        let report = verify_axioms(&alg, &alg.basis(), &int(2));
        let c = report.get(ASSOCIATOR).unwrap();
        assert!(!c.passed);
        assert!(c.witness.is_some());
        assert!(report.get(JACOBI).unwrap().passed);
    }

    #[test]
    fn scalars_are_trivial() {
        let alg = LJAlgebra::new(1, int(1)).unwrap();
        assert!(verify_axioms(&alg, &alg.basis(), &int(1)).passed());
        assert!(LJAlgebra::new(2, int(0)).is_err());
    }

    #[test]
    fn partial_samples_are_flagged() {
        let alg = LJAlgebra::new(2, int(1)).unwrap();
        assert!(verify_sample(&alg, &[sx(), sz()], &int(1)).partial);
        assert!(!verify_sample(&alg, &alg.basis(), &int(1)).partial);
    }
}
