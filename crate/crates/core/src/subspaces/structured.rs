use crate::exactalg::{AlgebraError, CoordinateSet, Polynomial};
use crate::poisson::{PoissonBivector, PolyVectorField};

use super::linalg::{kernel, Indexer, SparseVec};
use super::{AmbientBasis, ExplicitSpan};

/// Rule defining a space of polynomials as the kernel of a linear map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceRule {
    /// Polynomials vanishing on `{x_k = 0 : k in K}`.
    VanishingIdeal(CoordinateSet),
    /// `X f = 0` for every listed field.
    InvariantSpace(Vec<PolyVectorField>),
    /// `(X f)|_N = 0` for every listed field, `N = {x_k = 0 : k in K}`.
    RestrictedInvariantSpace { fields: Vec<PolyVectorField>, coords: CoordinateSet },
    /// `{f, I} ⊂ I` for the vanishing ideal `I` of `K`.
    NormalizerSpace { bivector: PoissonBivector, coords: CoordinateSet },
}

/// A rule-defined polynomial space with exact membership at any degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredSpace {
    nvars: usize,
    rule: SpaceRule,
}

impl StructuredSpace {
    pub fn vanishing_ideal(coords: CoordinateSet) -> Self {
        StructuredSpace { nvars: coords.nvars(), rule: SpaceRule::VanishingIdeal(coords) }
    }

    pub fn invariant(nvars: usize, fields: Vec<PolyVectorField>) -> Self {
        assert!(fields.iter().all(|x| x.nvars() == nvars), "field arity");
        StructuredSpace { nvars, rule: SpaceRule::InvariantSpace(fields) }
    }

    pub fn restricted_invariant(fields: Vec<PolyVectorField>, coords: CoordinateSet) -> Self {
        let nvars = coords.nvars();
        assert!(fields.iter().all(|x| x.nvars() == nvars), "field arity");
        StructuredSpace { nvars, rule: SpaceRule::RestrictedInvariantSpace { fields, coords } }
    }

    pub fn normalizer(bivector: PoissonBivector, coords: CoordinateSet) -> Self {
        assert_eq!(bivector.nvars(), coords.nvars(), "bivector arity");
        StructuredSpace { nvars: coords.nvars(), rule: SpaceRule::NormalizerSpace { bivector, coords } }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rule(&self) -> &SpaceRule {
        &self.rule
    }

    /// The defining linear map; `f` belongs to the space iff every image
    /// vanishes.
    ///
    /// For the normalizer, `{g, h x_k} = h {g, x_k} + x_k {g, h}` and the
    /// second term always lies in the ideal, so testing the generators `x_k`
    /// decides membership.
    pub fn images(&self, f: &Polynomial) -> Vec<Polynomial> {
        match &self.rule {
            SpaceRule::VanishingIdeal(k) => vec![f.restrict_zero(k)],
            SpaceRule::InvariantSpace(fields) => fields.iter().map(|x| x.apply(f)).collect(),
            SpaceRule::RestrictedInvariantSpace { fields, coords } => {
                fields.iter().map(|x| x.apply(f).restrict_zero(coords)).collect()
            }
            SpaceRule::NormalizerSpace { bivector, coords } => coords
                .indices()
                .iter()
                .map(|&k| bivector.bracket(f, &Polynomial::var(self.nvars, k)).restrict_zero(coords))
                .collect(),
        }
    }

    pub fn member(&self, f: &Polynomial) -> Result<bool, AlgebraError> {
        if f.nvars() != self.nvars {
            return Err(AlgebraError::VariableCountMismatch { left: self.nvars, right: f.nvars() });
        }
        Ok(self.images(f).iter().all(Polynomial::is_zero))
    }

    /// All members of degree `<= max_degree`, as the kernel of the rule's
    /// linear map on the monomial basis.
    pub fn truncate(&self, max_degree: u32) -> ExplicitSpan {
        let ambient = AmbientBasis::polynomials(self.nvars, max_degree);
        if let SpaceRule::VanishingIdeal(k) = &self.rule {
            let vectors = ambient
                .monomials()
                .iter()
                .enumerate()
                .filter(|(_, m)| !m.avoids(k.mask()))
                .map(|(i, _)| vec![(i, num_traits::One::one())]);
            return ExplicitSpan::from_vectors(ambient.clone(), vectors);
        }
        let mut rows = Indexer::new();
        let columns: Vec<SparseVec> = ambient
            .monomials()
            .iter()
            .map(|m| {
                let f = Polynomial::term(m.clone(), num_traits::One::one());
                let mut col: SparseVec = Vec::new();
                for (a, img) in self.images(&f).into_iter().enumerate() {
                    for (mono, c) in img.into_terms() {
                        col.push((rows.index(&(a, mono)), c));
                    }
                }
                col.sort_by_key(|(i, _)| *i);
                col
            })
            .collect();
        ExplicitSpan::from_vectors(ambient.clone(), kernel(columns))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_polynomial;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn polys(src: &[&str], vars: &[String]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(s, vars).unwrap()).collect()
    }

    #[test]
    fn vanishing_ideal_truncation() {
        let vars = names(&["x1", "x2"]);
        let ideal = StructuredSpace::vanishing_ideal(CoordinateSet::new(2, [0]).unwrap());
        let span = ideal.truncate(2);
        let expected =
            ExplicitSpan::from_polynomials(span.ambient().clone(), &polys(&["x1", "x1^2", "x1 x2"], &vars)).unwrap();
        assert_eq!(span, expected);
        assert!(ideal.member(&parse_polynomial("x1 x2", &vars).unwrap()).unwrap());
        assert!(!ideal.member(&parse_polynomial("x1 + x2", &vars).unwrap()).unwrap());
    }

    #[test]
    fn invariant_space_truncation() {
        let vars = names(&["x1", "x2"]);
        let space = StructuredSpace::invariant(2, vec![PolyVectorField::coordinate(2, 0)]);
        let span = space.truncate(2);
        let expected =
            ExplicitSpan::from_polynomials(span.ambient().clone(), &polys(&["1", "x2", "x2^2"], &vars)).unwrap();
        assert_eq!(span, expected);
    }

    #[test]
    fn normalizer_truncation_and_membership() {
        let vars = names(&["x", "y"]);
        let k = CoordinateSet::new(2, [0]).unwrap();
        let space = StructuredSpace::normalizer(PoissonBivector::canonical(1), k);
        let span = space.truncate(2);
        let expected =
            ExplicitSpan::from_polynomials(span.ambient().clone(), &polys(&["1", "x", "x^2", "x y"], &vars)).unwrap();
        assert_eq!(span, expected);
        assert!(!space.member(&parse_polynomial("y", &vars).unwrap()).unwrap());
        // degree beyond any truncation is still decidable
        assert!(space.member(&parse_polynomial("x y^7 + x^5", &vars).unwrap()).unwrap());
    }

    #[test]
    fn truncation_agrees_with_membership() {
        let vars = names(&["x1", "x2", "x3", "y1", "y2", "y3"]);
        let k = CoordinateSet::new(6, [0, 1]).unwrap();
        let lambda = parse_polynomial("x3", &vars).unwrap();
        let fields = vec![
            PolyVectorField::coordinate(6, 0),
            PolyVectorField::new(vec![
                Polynomial::zero(6),
                Polynomial::one(6),
                Polynomial::zero(6),
                -&lambda,
                Polynomial::zero(6),
                Polynomial::zero(6),
            ]),
        ];
        let spaces = [
            StructuredSpace::vanishing_ideal(k.clone()),
            StructuredSpace::invariant(6, fields.clone()),
            StructuredSpace::restricted_invariant(fields.clone(), k.clone()),
            StructuredSpace::normalizer(PoissonBivector::canonical(3), k.clone()),
        ];
        for space in &spaces {
            let span = space.truncate(2);
            for f in span.basis_polynomials() {
                assert!(space.member(&f).unwrap());
            }
            // every monomial outside the span is rejected
            for m in span.ambient().monomials() {
                let f = Polynomial::term(m.clone(), num_traits::One::one());
                assert_eq!(space.member(&f).unwrap(), span.contains_polynomial(&f).unwrap());
            }
        }
        let lift = parse_polynomial("y1 + x2 x3", &vars).unwrap();
        assert!(spaces[2].member(&lift).unwrap());
        assert!(!spaces[2].member(&parse_polynomial("y1", &vars).unwrap()).unwrap());
    }
}
