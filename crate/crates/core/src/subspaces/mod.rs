//! Exact linear algebra for finite-dimensional slices of function and
//! matrix spaces: spans in reduced row-echelon form, sums, intersections,
//! quotients with canonical representatives, and rule-defined spaces whose
//! membership is decidable at every degree.

pub mod linalg;
mod structured;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::exactalg::{monomials_up_to, AlgebraError, CoordinateSet, Monomial, Polynomial, Rational};
use linalg::{axpy, entry, Echelon, SparseVec, TrackedEchelon};

pub use structured::{SpaceRule, StructuredSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("polynomial of degree {degree} exceeds the ambient degree bound {max_degree}")]
    DegreeExceeds { degree: u32, max_degree: u32 },
    #[error("polynomial involves a coordinate excluded from the ambient space")]
    ExcludedVariable,
    #[error("the second space is not contained in the first")]
    NotContained,
    #[error("vector does not lie in the space being quotiented")]
    NotInSpace,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmbientKind {
    /// Polynomials of degree `<= max_degree` in `nvars` variables, optionally
    /// avoiding a set of coordinates.
    Polynomials { nvars: usize, max_degree: u32, excluded: Option<CoordinateSet> },
    /// Hermitian `dim x dim` matrices as a real space of dimension `dim^2`.
    Hermitian { dim: usize },
}

/// Ordered basis of an ambient space.
///
/// Polynomial ambients list monomials in descending graded-lex order, so
/// echelon pivots fall on the largest monomials and quotient
/// representatives use the smallest ones. Hermitian ambients use
/// `E_ii`, then `E_ij + E_ji` (i < j), then `i(E_ij - E_ji)` (i < j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientBasis {
    kind: AmbientKind,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl AmbientBasis {
    pub fn polynomials(nvars: usize, max_degree: u32) -> Arc<Self> {
        Self::build(AmbientKind::Polynomials { nvars, max_degree, excluded: None })
    }

    /// Polynomials in the variables outside `excluded` (functions on the
    /// coordinate subspace cut out by `excluded`).
    pub fn polynomials_avoiding(max_degree: u32, excluded: &CoordinateSet) -> Arc<Self> {
        Self::build(AmbientKind::Polynomials {
            nvars: excluded.nvars(),
            max_degree,
            excluded: Some(excluded.clone()),
        })
    }

    pub fn hermitian(dim: usize) -> Arc<Self> {
        Self::build(AmbientKind::Hermitian { dim })
    }

    fn build(kind: AmbientKind) -> Arc<Self> {
        let monomials = match &kind {
            AmbientKind::Polynomials { nvars, max_degree, excluded } => {
                let mut ms = monomials_up_to(*nvars, *max_degree, excluded.as_ref().map(|c| c.mask()));
                ms.reverse();
                ms
            }
            AmbientKind::Hermitian { .. } => Vec::new(),
        };
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Arc::new(AmbientBasis { kind, monomials, index })
    }

    pub fn kind(&self) -> &AmbientKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            AmbientKind::Polynomials { .. } => self.monomials.len(),
            AmbientKind::Hermitian { dim } => dim * dim,
        }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn nvars(&self) -> Option<usize> {
        match &self.kind {
            AmbientKind::Polynomials { nvars, .. } => Some(*nvars),
            AmbientKind::Hermitian { .. } => None,
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        match &self.kind {
            AmbientKind::Polynomials { max_degree, .. } => Some(*max_degree),
            AmbientKind::Hermitian { .. } => None,
        }
    }

    /// Coordinates of a polynomial in this basis.
    pub fn coords(&self, f: &Polynomial) -> Result<SparseVec, SubspaceError> {
        let AmbientKind::Polynomials { nvars, max_degree, .. } = &self.kind else {
            return Err(SubspaceError::AmbientMismatch);
        };
        if f.nvars() != *nvars {
            return Err(AlgebraError::VariableCountMismatch { left: *nvars, right: f.nvars() }.into());
        }
        if let Some(d) = f.degree() {
            if d > *max_degree {
                return Err(SubspaceError::DegreeExceeds { degree: d, max_degree: *max_degree });
            }
        }
        let mut out: SparseVec = f
            .terms()
            .map(|(m, c)| self.index.get(m).map(|&i| (i, c.clone())).ok_or(SubspaceError::ExcludedVariable))
            .collect::<Result<_, _>>()?;
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    pub fn polynomial(&self, v: &[(usize, Rational)]) -> Polynomial {
        let nvars = self.nvars().expect("polynomial ambient");
        Polynomial::from_terms(nvars, v.iter().map(|(i, c)| (self.monomials[*i].clone(), c.clone())))
    }
}

/// Finite-dimensional subspace presented by its reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitSpan {
    ambient: Arc<AmbientBasis>,
    echelon: Echelon,
}

impl ExplicitSpan {
    pub fn zero(ambient: Arc<AmbientBasis>) -> Self {
        ExplicitSpan { ambient, echelon: Echelon::new() }
    }

    pub fn full(ambient: Arc<AmbientBasis>) -> Self {
        let dim = ambient.dim();
        Self::from_vectors(ambient, (0..dim).map(|i| vec![(i, Rational::from_integer(1.into()))]))
    }

    pub fn from_vectors(ambient: Arc<AmbientBasis>, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut echelon = Echelon::new();
        for v in vectors {
            echelon.insert(&v);
        }
        ExplicitSpan { ambient, echelon }
    }

    pub fn from_polynomials<'a>(
        ambient: Arc<AmbientBasis>,
        polys: impl IntoIterator<Item = &'a Polynomial>,
    ) -> Result<Self, SubspaceError> {
        let vectors = polys.into_iter().map(|p| ambient.coords(p)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_vectors(ambient, vectors))
    }

    pub fn ambient(&self) -> &Arc<AmbientBasis> {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.echelon.rank() == 0
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.echelon.pivots().collect()
    }

    /// Echelon basis, ordered by pivot.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.echelon.rows().cloned().collect()
    }

    pub fn basis_polynomials(&self) -> Vec<Polynomial> {
        self.echelon.rows().map(|r| self.ambient.polynomial(r)).collect()
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.echelon.contains(v)
    }

    pub fn contains_polynomial(&self, f: &Polynomial) -> Result<bool, SubspaceError> {
        Ok(self.contains(&self.ambient.coords(f)?))
    }

    /// `v` reduced modulo this span's pivots.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        self.echelon.reduce(v)
    }

    fn check_ambient(&self, other: &ExplicitSpan) -> Result<(), SubspaceError> {
        if self.ambient != other.ambient {
            return Err(SubspaceError::AmbientMismatch);
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &ExplicitSpan) -> Result<bool, SubspaceError> {
        self.check_ambient(other)?;
        Ok(self.echelon.rows().all(|r| other.contains(r)))
    }

    pub fn sum(&self, other: &ExplicitSpan) -> Result<ExplicitSpan, SubspaceError> {
        self.check_ambient(other)?;
        let mut echelon = self.echelon.clone();
        for r in other.echelon.rows() {
            echelon.insert(r);
        }
        Ok(ExplicitSpan { ambient: self.ambient.clone(), echelon })
    }

    /// Zassenhaus intersection: echelonize `(a | a)` and `(b | 0)`; rows with
    /// vanishing left half carry a basis of the intersection on the right.
    pub fn intersect(&self, other: &ExplicitSpan) -> Result<ExplicitSpan, SubspaceError> {
        self.check_ambient(other)?;
        let m = self.ambient.dim();
        let mut ech = Echelon::new();
        for r in self.echelon.rows() {
            let mut v = r.clone();
            v.extend(r.iter().map(|(i, c)| (i + m, c.clone())));
            ech.insert(&v);
        }
        for r in other.echelon.rows() {
            ech.insert(r);
        }
        let inter = ech
            .rows()
            .filter(|row| row[0].0 >= m)
            .map(|row| row.iter().map(|(i, c)| (i - m, c.clone())).collect::<SparseVec>());
        Ok(ExplicitSpan::from_vectors(self.ambient.clone(), inter))
    }

    /// Basis vectors of a complement of `self` inside the full ambient space,
    /// taken from the ambient basis (non-pivot columns).
    pub fn missing_basis_indices(&self) -> Vec<usize> {
        let pivots: std::collections::BTreeSet<usize> = self.echelon.pivots().collect();
        (0..self.ambient.dim()).filter(|i| !pivots.contains(i)).collect()
    }
}

/// `A / B` for `B` inside `A`, with canonical representatives.
///
/// `canon` reduces a vector modulo the echelon rows of `B`; the
/// representatives are the echelonized images of `A`'s basis under `canon`,
/// so they live in `A` and vanish on `B`'s pivot columns.
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    space: ExplicitSpan,
    sub: ExplicitSpan,
    reps: ExplicitSpan,
}

pub fn quotient(space: &ExplicitSpan, sub: &ExplicitSpan) -> Result<QuotientPresentation, SubspaceError> {
    if !sub.is_subspace_of(space)? {
        return Err(SubspaceError::NotContained);
    }
    let reps = ExplicitSpan::from_vectors(space.ambient.clone(), space.echelon.rows().map(|r| sub.reduce(r)));
    Ok(QuotientPresentation { space: space.clone(), sub: sub.clone(), reps })
}

impl QuotientPresentation {
    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn space(&self) -> &ExplicitSpan {
        &self.space
    }

    pub fn sub(&self) -> &ExplicitSpan {
        &self.sub
    }

    pub fn ambient(&self) -> &Arc<AmbientBasis> {
        self.space.ambient()
    }

    pub fn representatives(&self) -> Vec<SparseVec> {
        self.reps.basis()
    }

    pub fn representative_polynomials(&self) -> Vec<Polynomial> {
        self.reps.basis_polynomials()
    }

    /// Canonical representative of the class of `v`.
    pub fn canon(&self, v: &[(usize, Rational)]) -> SparseVec {
        self.sub.reduce(v)
    }

    /// Coordinates of the class of `v` (which must lie in the space) in the
    /// representative basis.
    pub fn coordinates(&self, v: &[(usize, Rational)]) -> Result<Vec<Rational>, SubspaceError> {
        let c = self.canon(v);
        let coords: Vec<Rational> = self
            .reps
            .echelon()
            .pivots()
            .map(|p| entry(&c, p).cloned().unwrap_or_else(Rational::zero))
            .collect();
        if self.combine(&coords) != c {
            return Err(SubspaceError::NotInSpace);
        }
        Ok(coords)
    }

    /// `sum_i coords[i] * rep_i`
    pub fn combine(&self, coords: &[Rational]) -> SparseVec {
        let mut out = Vec::new();
        for (c, r) in coords.iter().zip(self.reps.echelon().rows()) {
            out = axpy(&out, c, r);
        }
        out
    }
}

/// The isomorphism `(B + S)/S -> B/(B ∩ S)`, for subspaces `B`, `S` of a
/// common ambient.
#[derive(Debug, Clone)]
pub struct SecondIsomorphism {
    quotient: QuotientPresentation,
    s: ExplicitSpan,
    images: TrackedEchelon,
}

impl SecondIsomorphism {
    pub fn new(b: &ExplicitSpan, s: &ExplicitSpan) -> Result<Self, SubspaceError> {
        let inter = b.intersect(s)?;
        let quotient = quotient(b, &inter)?;
        let mut images = TrackedEchelon::new();
        for r in quotient.reps.echelon().rows() {
            images.insert(s.reduce(r));
        }
        Ok(SecondIsomorphism { quotient, s: s.clone(), images })
    }

    pub fn quotient(&self) -> &QuotientPresentation {
        &self.quotient
    }

    /// Coordinates in `B/(B ∩ S)` of the class of `v` modulo `S`, or `None`
    /// when `v` is not in `B + S`.
    pub fn project(&self, v: &[(usize, Rational)]) -> Option<Vec<Rational>> {
        let x = self.images.solve(&self.s.reduce(v))?;
        let mut coords = vec![Rational::zero(); self.quotient.dim()];
        for (i, c) in x {
            coords[i] = c;
        }
        Some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, parse_polynomial};

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn span(ambient: &Arc<AmbientBasis>, polys: &[&str]) -> ExplicitSpan {
        let ps: Vec<Polynomial> = polys.iter().map(|s| parse_polynomial(s, &xy()).unwrap()).collect();
        ExplicitSpan::from_polynomials(ambient.clone(), &ps).unwrap()
    }

    #[test]
    fn sums_and_intersections() {
        let amb = AmbientBasis::polynomials(2, 2);
        let a = span(&amb, &["x"]);
        let b = span(&amb, &["y"]);
        assert_eq!(a.sum(&b).unwrap(), span(&amb, &["x", "y"]));
        assert!(a.intersect(&b).unwrap().is_zero());
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);

        let c = span(&amb, &["x + y", "x^2"]);
        let d = span(&amb, &["x", "y", "x y"]);
        let inter = c.intersect(&d).unwrap();
        assert_eq!(inter, span(&amb, &["x + y"]));
        assert_eq!(c.dim() + d.dim(), c.sum(&d).unwrap().dim() + inter.dim());
    }

    #[test]
    fn quotient_representatives_and_canon() {
        let amb = AmbientBasis::polynomials(2, 1);
        let a = span(&amb, &["1", "x", "y"]);
        let b = span(&amb, &["x"]);
        let q = quotient(&a, &b).unwrap();
        let reps = q.representative_polynomials();
        assert_eq!(reps, vec![parse_polynomial("y", &xy()).unwrap(), Polynomial::one(2)]);
        let x_plus_y = amb.coords(&parse_polynomial("x + y", &xy()).unwrap()).unwrap();
        assert_eq!(amb.polynomial(&q.canon(&x_plus_y)), parse_polynomial("y", &xy()).unwrap());
        assert_eq!(q.coordinates(&x_plus_y).unwrap(), vec![int(1), int(0)]);
        for r in b.basis() {
            assert!(q.canon(&r).is_empty());
        }
        assert_eq!(quotient(&b, &a).unwrap_err(), SubspaceError::NotContained);
    }

    #[test]
    fn degenerate_quotients() {
        let amb = AmbientBasis::polynomials(2, 1);
        let a = span(&amb, &["1", "x"]);
        let zero = ExplicitSpan::zero(amb.clone());
        assert_eq!(quotient(&a, &zero).unwrap().dim(), 2);
        assert_eq!(quotient(&a, &a).unwrap().dim(), 0);
    }

    #[test]
    fn degree_bound_is_enforced() {
        let amb = AmbientBasis::polynomials(2, 1);
        let a = span(&amb, &["x"]);
        let err = a.contains_polynomial(&parse_polynomial("x^2", &xy()).unwrap()).unwrap_err();
        assert_eq!(err, SubspaceError::DegreeExceeds { degree: 2, max_degree: 1 });
    }

    #[test]
    fn second_isomorphism_projects() {
        let amb = AmbientBasis::polynomials(2, 1);
        let b = span(&amb, &["x", "y"]);
        let s = span(&amb, &["x", "1"]);
        let iso = SecondIsomorphism::new(&b, &s).unwrap();
        assert_eq!(iso.quotient().dim(), 1);
        // y + 3 ≡ y mod S
        let v = amb.coords(&parse_polynomial("y + 3 + x", &xy()).unwrap()).unwrap();
        assert_eq!(iso.project(&v), Some(vec![int(1)]));
    }
}
