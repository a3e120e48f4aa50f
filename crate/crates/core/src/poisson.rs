//! Bivector calculus on polynomial coordinate spaces.
//!
//! Sign conventions: `{f,g} = sum_{i<j} P^ij (d_i f d_j g - d_j f d_i g)` and
//! the Hamiltonian field of `g` acts as `X_g f = {g, f}`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactalg::{monomials_up_to, AlgebraError, Monomial, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("diagonal bivector component ({0}, {0})")]
    Diagonal(usize),
}

/// Antisymmetric matrix of polynomials; only entries with `i < j` are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonBivector {
    nvars: usize,
    components: BTreeMap<(usize, usize), Polynomial>,
}

/// Polynomial vector field `sum_i X^i d/dx_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    components: Vec<Polynomial>,
}

/// Totally antisymmetric 3-vector; only entries with `i < j < k` are stored,
/// and only when nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivector {
    nvars: usize,
    components: BTreeMap<(usize, usize, usize), Polynomial>,
}

impl PoissonBivector {
    pub fn zero(nvars: usize) -> Self {
        PoissonBivector { nvars, components: BTreeMap::new() }
    }

    /// `sum_i d/dx_i ^ d/dy_i` on `2 * pairs` variables ordered `x.., y..`.
    pub fn canonical(pairs: usize) -> Self {
        let n = 2 * pairs;
        let mut pi = Self::zero(n);
        for i in 0..pairs {
            pi.set(i, pairs + i, Polynomial::one(n)).expect("canonical indices");
        }
        pi
    }

    pub fn from_entries(
        nvars: usize,
        entries: impl IntoIterator<Item = (usize, usize, Polynomial)>,
    ) -> Result<Self, PoissonError> {
        let mut pi = Self::zero(nvars);
        for (i, j, p) in entries {
            let current = pi.component(i, j)?;
            pi.set(i, j, current + p)?;
        }
        Ok(pi)
    }

    /// Sets `P^ij` (and implicitly `P^ji = -P^ij`).
    pub fn set(&mut self, i: usize, j: usize, value: Polynomial) -> Result<(), PoissonError> {
        self.check_index(i)?;
        self.check_index(j)?;
        if value.nvars() != self.nvars {
            return Err(AlgebraError::VariableCountMismatch { left: self.nvars, right: value.nvars() }.into());
        }
        if i == j {
            return if value.is_zero() { Ok(()) } else { Err(PoissonError::Diagonal(i)) };
        }
        let (key, value) = if i < j { ((i, j), value) } else { ((j, i), -value) };
        if value.is_zero() {
            self.components.remove(&key);
        } else {
            self.components.insert(key, value);
        }
        Ok(())
    }

    fn check_index(&self, index: usize) -> Result<(), AlgebraError> {
        if index >= self.nvars {
            return Err(AlgebraError::IndexOutOfRange { index, nvars: self.nvars });
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `P^ij` with antisymmetry applied.
    pub fn component(&self, i: usize, j: usize) -> Result<Polynomial, AlgebraError> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.entry(i, j))
    }

    fn entry(&self, i: usize, j: usize) -> Polynomial {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Polynomial::zero(self.nvars),
            Less => self.components.get(&(i, j)).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars)),
            Greater => self.components.get(&(j, i)).map(|p| -p).unwrap_or_else(|| Polynomial::zero(self.nvars)),
        }
    }

    /// Nonzero upper-triangular components.
    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize), &Polynomial)> {
        self.components.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.components.values().all(Polynomial::is_constant)
    }

    /// Largest coefficient degree, `None` for the zero bivector.
    pub fn coefficient_degree(&self) -> Option<u32> {
        self.components.values().filter_map(Polynomial::degree).max()
    }

    pub fn try_bracket(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, AlgebraError> {
        for p in [f, g] {
            if p.nvars() != self.nvars {
                return Err(AlgebraError::VariableCountMismatch { left: self.nvars, right: p.nvars() });
            }
        }
        Ok(self.bracket(f, g))
    }

    /// `{f, g}`. Panics on arity mismatch; see [`PoissonBivector::try_bracket`].
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        if f.is_constant() || g.is_constant() {
            return out;
        }
        let df: Vec<Polynomial> = (0..self.nvars).map(|i| f.pdiff(i)).collect();
        let dg: Vec<Polynomial> = (0..self.nvars).map(|i| g.pdiff(i)).collect();
        for (&(i, j), pij) in &self.components {
            let cross = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
            if !cross.is_zero() {
                out = out + pij * &cross;
            }
        }
        out
    }

    /// The field `X_g` with `X_g f = {g, f}`: `X_g^j = sum_i P^ij d_i g`.
    pub fn hamiltonian_vf(&self, g: &Polynomial) -> PolyVectorField {
        let n = self.nvars;
        let dg: Vec<Polynomial> = (0..n).map(|i| g.pdiff(i)).collect();
        let mut components = vec![Polynomial::zero(n); n];
        for (&(i, j), pij) in &self.components {
            // P^ij d_i g contributes to X^j, P^ji d_j g = -P^ij d_j g to X^i.
            components[j].add_scaled(&(pij * &dg[i]), &Rational::from_integer(1.into()));
            components[i].add_scaled(&(pij * &dg[j]), &Rational::from_integer((-1).into()));
        }
        PolyVectorField { components }
    }

    /// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`
    pub fn jacobiator(&self, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Polynomial {
        let a = self.bracket(f, &self.bracket(g, h));
        let b = self.bracket(g, &self.bracket(h, f));
        let c = self.bracket(h, &self.bracket(f, g));
        a + b + c
    }

    /// Schouten self-bracket, normalized so that `T(df, dg, dh) = 2 J(f, g, h)`.
    ///
    /// Computed straight from the components:
    /// `T^ijk = 2 sum_l (P^il d_l P^jk + P^jl d_l P^ki + P^kl d_l P^ij)`.
    pub fn schouten_self(&self) -> Trivector {
        let n = self.nvars;
        let two = Rational::from_integer(2.into());
        let entries: Vec<Vec<Polynomial>> =
            (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect();
        let mut components = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut t = Polynomial::zero(n);
                    for l in 0..n {
                        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                            let pal = &entries[a][l];
                            if pal.is_zero() {
                                continue;
                            }
                            let d = entries[b][c].pdiff(l);
                            if !d.is_zero() {
                                t = t + pal * &d;
                            }
                        }
                    }
                    if !t.is_zero() {
                        components.insert((i, j, k), t.scale(&two));
                    }
                }
            }
        }
        Trivector { nvars: n, components }
    }

    /// Re-expresses the bivector on a subset of variables: variable `i`
    /// becomes `map[i]` in a space of `nvars` variables. Components touching
    /// unmapped variables must vanish.
    pub fn remap(&self, nvars: usize, map: &[Option<usize>]) -> PoissonBivector {
        let mut out = PoissonBivector::zero(nvars);
        for (&(i, j), p) in &self.components {
            let (a, b) = (map[i].expect("mapped index"), map[j].expect("mapped index"));
            let current = out.entry(a, b);
            out.set(a, b, current + p.remap(nvars, map)).expect("remapped indices");
        }
        out
    }
}

impl PolyVectorField {
    pub fn new(components: Vec<Polynomial>) -> Self {
        let n = components.len();
        assert!(components.iter().all(|c| c.nvars() == n), "vector field arity");
        PolyVectorField { components }
    }

    pub fn zero(nvars: usize) -> Self {
        PolyVectorField { components: vec![Polynomial::zero(nvars); nvars] }
    }

    /// `d/dx_index`
    pub fn coordinate(nvars: usize, index: usize) -> Self {
        let mut components = vec![Polynomial::zero(nvars); nvars];
        components[index] = Polynomial::one(nvars);
        PolyVectorField { components }
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, index: usize) -> &Polynomial {
        &self.components[index]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// `X f = sum_i X^i d_i f`
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars());
        for (i, xi) in self.components.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let d = f.pdiff(i);
            if !d.is_zero() {
                out = out + xi * &d;
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> PolyVectorField {
        PolyVectorField { components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn add(&self, other: &PolyVectorField) -> PolyVectorField {
        PolyVectorField {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Trivector {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Nonzero components `T^ijk`, `i < j < k`.
    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Polynomial)> {
        self.components.iter()
    }

    pub fn component(&self, i: usize, j: usize, k: usize) -> Polynomial {
        let mut idx = [i, j, k];
        let mut sign = 1i64;
        // bubble sort the three indices, tracking the permutation sign
        for _ in 0..2 {
            for a in 0..2 {
                if idx[a] > idx[a + 1] {
                    idx.swap(a, a + 1);
                    sign = -sign;
                }
            }
        }
        if idx[0] == idx[1] || idx[1] == idx[2] {
            return Polynomial::zero(self.nvars);
        }
        match self.components.get(&(idx[0], idx[1], idx[2])) {
            Some(p) => p.scale(&Rational::from_integer(sign.into())),
            None => Polynomial::zero(self.nvars),
        }
    }

    /// `T(df, dg, dh) = sum_{i<j<k} T^ijk det[d f, d g, d h]_{ijk}`
    pub fn evaluate(&self, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Polynomial {
        let n = self.nvars;
        let df: Vec<Polynomial> = (0..n).map(|i| f.pdiff(i)).collect();
        let dg: Vec<Polynomial> = (0..n).map(|i| g.pdiff(i)).collect();
        let dh: Vec<Polynomial> = (0..n).map(|i| h.pdiff(i)).collect();
        let mut out = Polynomial::zero(n);
        for (&(i, j, k), t) in &self.components {
            let det = &(&df[i] * &(&(&dg[j] * &dh[k]) - &(&dg[k] * &dh[j])))
                - &(&df[j] * &(&(&dg[i] * &dh[k]) - &(&dg[k] * &dh[i])))
                + &df[k] * &(&(&dg[i] * &dh[j]) - &(&dg[j] * &dh[i]));
            out = out + t * &det;
        }
        out
    }
}

/// Offending triple found by the Jacobiator sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiWitness {
    pub triple: [Polynomial; 3],
    pub residual: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    /// `[P,P] = 0` exactly.
    pub schouten_vanishes: bool,
    /// Nonzero Schouten components, for diagnostics.
    pub schouten_components: Vec<((usize, usize, usize), Polynomial)>,
    pub sweep_degree: u32,
    pub triples_checked: usize,
    pub witness: Option<JacobiWitness>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.schouten_vanishes
    }

    /// The Schouten verdict and the sweep agree.
    pub fn consistent(&self) -> bool {
        self.schouten_vanishes == self.witness.is_none()
    }
}

/// Nonconstant monomials of degree `<= degree`, lowest degree first and
/// earlier variables first within a degree.
pub fn sweep_monomials(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut ms: Vec<Monomial> = monomials_up_to(nvars, degree, None)
        .into_iter()
        .filter(|m| !m.is_one())
        .collect();
    ms.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    ms
}

/// Decides the Jacobi identity via `[P,P] = 0` and independently sweeps the
/// Jacobiator over all monomial triples of degree `<= degree`.
///
/// The sweep stops at the first witness; when the Schouten bracket vanishes
/// it runs to completion as a confirmation.
pub fn check_jacobi(pi: &PoissonBivector, degree: u32) -> JacobiReport {
    let degree = degree.max(1);
    let schouten = pi.schouten_self();
    let n = pi.nvars();
    let basis: Vec<Polynomial> = sweep_monomials(n, degree)
        .into_iter()
        .map(|m| Polynomial::term(m, Rational::from_integer(1.into())))
        .collect();
    let hamiltonians: Vec<PolyVectorField> = basis.iter().map(|f| pi.hamiltonian_vf(f)).collect();
    let mut pair_cache: BTreeMap<(usize, usize), Polynomial> = BTreeMap::new();
    let mut bracket_pair = |a: usize, b: usize| -> Polynomial {
        pair_cache
            .entry((a, b))
            .or_insert_with(|| hamiltonians[a].apply(&basis[b]))
            .clone()
    };
    let mut checked = 0;
    let mut witness = None;
    'sweep: for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            let bc_ab = bracket_pair(a, b);
            for c in b + 1..basis.len() {
                checked += 1;
                let bc = bracket_pair(b, c);
                let ca = bracket_pair(c, a);
                let residual =
                    hamiltonians[a].apply(&bc) + hamiltonians[b].apply(&ca) + hamiltonians[c].apply(&bc_ab);
                if !residual.is_zero() {
                    witness = Some(JacobiWitness {
                        triple: [basis[a].clone(), basis[b].clone(), basis[c].clone()],
                        residual,
                    });
                    break 'sweep;
                }
            }
        }
    }
    JacobiReport {
        schouten_vanishes: schouten.is_zero(),
        schouten_components: schouten.components().map(|(k, v)| (*k, v.clone())).collect(),
        sweep_degree: degree,
        triples_checked: checked,
        witness,
    }
}
