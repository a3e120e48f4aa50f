use std::fmt;

use num_traits::{One, Zero};

use crate::exactalg::{fmt_gaussian, rat, GaussianRational, Rational};
use crate::subspaces::linalg::{from_entries, SparseVec};
use crate::subspaces::{AmbientBasis, ExplicitSpan};

use super::{same_dim, LieJordanError};

/// Square matrix over the Gaussian rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComplexMatrix {
    d: usize,
    entries: Vec<GaussianRational>,
}

fn czero() -> GaussianRational {
    GaussianRational::new(Rational::zero(), Rational::zero())
}

impl ComplexMatrix {
    pub fn new(d: usize, entries: Vec<GaussianRational>) -> Result<Self, LieJordanError> {
        if entries.len() != d * d {
            return Err(LieJordanError::EntryCount { expected: d * d, found: entries.len() });
        }
        Ok(ComplexMatrix { d, entries })
    }

    pub fn zero(d: usize) -> Self {
        ComplexMatrix { d, entries: vec![czero(); d * d] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            m.entries[i * d + i] = GaussianRational::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entry(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.d + j]
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.d, other.d, "matrix dimension");
        let d = self.d;
        let mut out = Self::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &other.entries[k * d + j];
                    if !b.is_zero() {
                        out.entries[i * d + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.d, other.d, "matrix dimension");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        ComplexMatrix { d: self.d, entries }
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.d, other.d, "matrix dimension");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        ComplexMatrix { d: self.d, entries }
    }

    pub fn scale(&self, c: &GaussianRational) -> ComplexMatrix {
        ComplexMatrix { d: self.d, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn scale_real(&self, c: &Rational) -> ComplexMatrix {
        ComplexMatrix { d: self.d, entries: self.entries.iter().map(|a| a.scale(c.clone())).collect() }
    }

    /// Conjugate transpose: the involution `(a + ib)* = a - ib` on Hermitian parts.
    pub fn adjoint(&self) -> ComplexMatrix {
        let d = self.d;
        let mut out = Self::zero(d);
        for i in 0..d {
            for j in 0..d {
                out.entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// First entry `(i, j)`, `i <= j`, breaking conjugate symmetry.
    pub fn hermitian_defect(&self) -> Option<(usize, usize)> {
        let d = self.d;
        (0..d)
            .flat_map(|i| (i..d).map(move |j| (i, j)))
            .find(|&(i, j)| self.entries[i * d + j] != self.entries[j * d + i].conj())
    }

    /// `(h1, h2)` with `self = h1 + i h2`, both Hermitian.
    pub fn hermitian_parts(&self) -> (HermitianElement, HermitianElement) {
        let adj = self.adjoint();
        let h1 = self.add(&adj).scale_real(&rat(1, 2));
        let minus_half_i = GaussianRational::new(Rational::zero(), rat(-1, 2));
        let h2 = self.sub(&adj).scale(&minus_half_i);
        (HermitianElement::from_matrix_unchecked(h1), HermitianElement::from_matrix_unchecked(h2))
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.d {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.d).map(|j| fmt_gaussian(self.entry(i, j))).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Self-adjoint `d x d` matrix.
///
/// Real coordinates, in basis order: the diagonal entries, the real parts of
/// the upper entries (basis `E_ij + E_ji`), then their imaginary parts
/// (basis `i(E_ij - E_ji)`), upper entries taken row by row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HermitianElement(ComplexMatrix);

fn upper_pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |i| (i + 1..d).map(move |j| (i, j)))
}

impl HermitianElement {
    pub fn new(matrix: ComplexMatrix) -> Result<Self, LieJordanError> {
        match matrix.hermitian_defect() {
            Some((row, col)) => Err(LieJordanError::NotHermitian { row, col }),
            None => Ok(HermitianElement(matrix)),
        }
    }

    pub fn from_entries(d: usize, entries: Vec<GaussianRational>) -> Result<Self, LieJordanError> {
        Self::new(ComplexMatrix::new(d, entries)?)
    }

    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.hermitian_defect().is_none());
        HermitianElement(matrix)
    }

    pub fn zero(d: usize) -> Self {
        HermitianElement(ComplexMatrix::zero(d))
    }

    pub fn identity(d: usize) -> Self {
        HermitianElement(ComplexMatrix::identity(d))
    }

    pub fn pauli_x() -> Self {
        Self::from_coords(2, &[Rational::zero(), Rational::zero(), Rational::one(), Rational::zero()]).unwrap()
    }

    pub fn pauli_y() -> Self {
        Self::from_coords(2, &[Rational::zero(), Rational::zero(), Rational::zero(), -Rational::one()]).unwrap()
    }

    pub fn pauli_z() -> Self {
        Self::from_coords(2, &[Rational::one(), -Rational::one(), Rational::zero(), Rational::zero()]).unwrap()
    }

    /// The `d^2` real basis elements in coordinate order.
    pub fn basis(d: usize) -> Vec<Self> {
        (0..d * d)
            .map(|k| {
                let mut c = vec![Rational::zero(); d * d];
                c[k] = Rational::one();
                Self::from_coords(d, &c).expect("length d^2")
            })
            .collect()
    }

    pub fn from_coords(d: usize, coords: &[Rational]) -> Result<Self, LieJordanError> {
        if coords.len() != d * d {
            return Err(LieJordanError::EntryCount { expected: d * d, found: coords.len() });
        }
        let mut m = ComplexMatrix::zero(d);
        for i in 0..d {
            m.entries[i * d + i] = GaussianRational::new(coords[i].clone(), Rational::zero());
        }
        let npairs = d * (d - 1) / 2;
        for (p, (i, j)) in upper_pairs(d).enumerate() {
            let z = GaussianRational::new(coords[d + p].clone(), coords[d + npairs + p].clone());
            m.entries[j * d + i] = z.conj();
            m.entries[i * d + j] = z;
        }
        Ok(HermitianElement(m))
    }

    pub fn coords(&self) -> Vec<Rational> {
        let d = self.dim();
        let mut out: Vec<Rational> = (0..d).map(|i| self.0.entry(i, i).re.clone()).collect();
        out.extend(upper_pairs(d).map(|(i, j)| self.0.entry(i, j).re.clone()));
        out.extend(upper_pairs(d).map(|(i, j)| self.0.entry(i, j).im.clone()));
        out
    }

    pub fn to_sparse(&self) -> SparseVec {
        from_entries(self.coords().into_iter().enumerate())
    }

    pub fn from_sparse(d: usize, v: &[(usize, Rational)]) -> Self {
        let mut c = vec![Rational::zero(); d * d];
        for (i, x) in v {
            c[*i] = x.clone();
        }
        Self::from_coords(d, &c).expect("length d^2")
    }

    /// Real span of `elements` in the Hermitian ambient of dimension `d`.
    pub fn span(d: usize, elements: &[Self]) -> Result<ExplicitSpan, LieJordanError> {
        for e in elements {
            same_dim(d, e.dim())?;
        }
        Ok(ExplicitSpan::from_vectors(AmbientBasis::hermitian(d), elements.iter().map(Self::to_sparse)))
    }

    pub fn dim(&self) -> usize {
        self.0.d
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        HermitianElement(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        HermitianElement(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HermitianElement(self.0.scale_real(c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for HermitianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for HermitianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(int(re), int(im))
    }

    #[test]
    fn coordinates_round_trip() {
        let h = HermitianElement::from_entries(
            3,
            vec![g(1, 0), g(2, 3), g(0, -1), g(2, -3), g(-4, 0), g(5, 5), g(0, 1), g(5, -5), g(7, 0)],
        )
        .unwrap();
        let c = h.coords();
        assert_eq!(c, vec![int(1), int(-4), int(7), int(2), int(0), int(5), int(3), int(-1), int(5)]);
        assert_eq!(HermitianElement::from_coords(3, &c).unwrap(), h);
        assert_eq!(HermitianElement::from_sparse(3, &h.to_sparse()), h);
    }

    #[test]
    fn rejects_non_hermitian() {
        let err = HermitianElement::from_entries(2, vec![g(1, 0), g(1, 1), g(1, 1), g(0, 0)]).unwrap_err();
        assert_eq!(err, LieJordanError::NotHermitian { row: 0, col: 1 });
        let err = HermitianElement::from_entries(2, vec![g(0, 1), g(0, 0), g(0, 0), g(0, 0)]).unwrap_err();
        assert_eq!(err, LieJordanError::NotHermitian { row: 0, col: 0 });
    }

    #[test]
    fn paulis_and_basis() {
        let sy = HermitianElement::pauli_y();
        assert_eq!(sy.matrix().entries(), &[g(0, 0), g(0, -1), g(0, 1), g(0, 0)]);
        assert_eq!(HermitianElement::basis(2).len(), 4);
        let span = HermitianElement::span(3, &HermitianElement::basis(3)).unwrap();
        assert_eq!(span.dim(), 9);
    }

    #[test]
    fn hermitian_parts_recombine() {
        let m = ComplexMatrix::new(2, vec![g(1, 2), g(3, -1), g(0, 4), g(-2, 5)]).unwrap();
        let (h1, h2) = m.hermitian_parts();
        let i = g(0, 1);
        assert_eq!(h1.matrix().add(&h2.matrix().scale(&i)), m);
    }
}
