use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Monomial, Rational};

/// Sparse polynomial with rational coefficients in a fixed number of variables.
///
/// Terms are kept in a graded-lex ordered map with no zero coefficients, so
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

/// A set of coordinate indices, validated against a variable count.
///
/// Used both as the list of coordinates cut out by a coordinate submanifold
/// `{x_k = 0 : k in K}` and as the corresponding restriction mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordinateSet {
    indices: Vec<usize>,
    mask: Vec<bool>,
}

impl CoordinateSet {
    pub fn new(nvars: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self, AlgebraError> {
        let mut mask = vec![false; nvars];
        for index in indices {
            if index >= nvars {
                return Err(AlgebraError::IndexOutOfRange { index, nvars });
            }
            mask[index] = true;
        }
        let indices = (0..nvars).filter(|&i| mask[i]).collect();
        Ok(CoordinateSet { indices, mask })
    }

    pub fn empty(nvars: usize) -> Self {
        CoordinateSet { indices: Vec::new(), mask: vec![false; nvars] }
    }

    pub fn nvars(&self) -> usize {
        self.mask.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn contains(&self, index: usize) -> bool {
        self.mask[index]
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Indices not in the set, ascending.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| !self.mask[i]).collect()
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::term(Monomial::var(nvars, index), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    /// Builds a polynomial from possibly repeated terms; like terms merge and
    /// zeros are dropped.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    fn check_arity(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::VariableCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_arity(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn try_pdiff(&self, index: usize) -> Result<Polynomial, AlgebraError> {
        if index >= self.nvars {
            return Err(AlgebraError::IndexOutOfRange { index, nvars: self.nvars });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if let Some(reduced) = m.div_var(index) {
                out.add_term(reduced, c * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to variable `index`.
    ///
    /// Panics when `index` is out of range; see [`Polynomial::try_pdiff`].
    pub fn pdiff(&self, index: usize) -> Polynomial {
        self.try_pdiff(index).expect("pdiff index")
    }

    /// Substitutes zero for every coordinate in `coords`. The result stays in
    /// the same ambient variable count.
    pub fn restrict_zero(&self, coords: &CoordinateSet) -> Polynomial {
        assert_eq!(coords.nvars(), self.nvars, "variable count mismatch");
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.avoids(coords.mask()))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when the polynomial only involves variables outside `coords`.
    pub fn avoids(&self, coords: &CoordinateSet) -> bool {
        self.terms.keys().all(|m| m.avoids(coords.mask()))
    }

    /// Re-indexes variables: variable `i` of `self` becomes variable
    /// `map[i]` of a polynomial in `nvars` variables. Variables mapped to
    /// `None` must not occur.
    pub fn remap(&self, nvars: usize, map: &[Option<usize>]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; nvars];
            for (i, &k) in m.exponents().iter().enumerate() {
                if k > 0 {
                    let j = map[i].expect("remap of a variable that occurs");
                    e[j] += k;
                }
            }
            (Monomial::new(e), c.clone())
        });
        Polynomial::from_terms(nvars, terms)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Drops all terms of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolynomialDisplay<'a> {
        PolynomialDisplay { poly: self, names }
    }
}

/// Formats a polynomial with variable names, leading term first.
pub struct PolynomialDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{} ", abs)?;
                }
                m.fmt_with(self.names, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{}", i)).collect();
        write!(f, "Polynomial({})", self.display(&names))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, parse_polynomial, rat};

    fn names() -> Vec<String> {
        ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect()
    }

    fn p(src: &str) -> Polynomial {
        parse_polynomial(src, &names()).unwrap()
    }

    #[test]
    fn addition_cancels_and_merges() {
        assert_eq!(p("x1 + x2") + p("-x1"), p("x2"));
        assert_eq!(&p("x1 x3 + 2") + &Polynomial::zero(3), p("x1 x3 + 2"));
        assert_eq!(p("1/2 x1^2") + p("1/2 x1^2"), p("x1^2"));
    }

    #[test]
    fn products() {
        assert_eq!(p("x1") * p("x2"), p("x1 x2"));
        assert_eq!(p("x1 + 1") * p("x1 - 1"), p("x1^2 - 1"));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x1^2 x2").pdiff(0), p("2 x1 x2"));
        assert!(p("x1^2").pdiff(1).is_zero());
        assert_eq!(
            p("x1").try_pdiff(3),
            Err(AlgebraError::IndexOutOfRange { index: 3, nvars: 3 })
        );
    }

    #[test]
    fn restriction() {
        let k1 = CoordinateSet::new(3, [0]).unwrap();
        assert_eq!(p("x1 + x3").restrict_zero(&k1), p("x3"));
        assert!(p("x1 x2").restrict_zero(&k1).is_zero());
        let k12 = CoordinateSet::new(3, [0, 1]).unwrap();
        assert_eq!(p("x1 + x2 + 1").pow(2).restrict_zero(&k12), Polynomial::one(3));
        assert!(CoordinateSet::new(3, [5]).is_err());
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(3, 0);
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn display_round_trips() {
        let f = p("3/2 x1^2 x3 - x2 + 7 - 1/3 x1");
        let shown = f.display(&names()).to_string();
        assert_eq!(shown, "3/2 x1^2 x3 - 1/3 x1 - x2 + 7");
        assert_eq!(p(&shown), f);
        assert_eq!(Polynomial::zero(3).display(&names()).to_string(), "0");
        assert_eq!(f.constant_term(), int(7));
        assert_eq!(f.coeff(&Monomial::var(3, 0)), rat(-1, 3));
    }
}
