use proptest::prelude::*;

use ljreduce::exactalg::{CoordinateSet, GaussianRational, Monomial, Polynomial, Rational};
use ljreduce::liejordan::{complexified_product, ComplexMatrix, HermitianElement};
use ljreduce::poisson::PoissonBivector;
use ljreduce::subspaces::{quotient, AmbientBasis, ExplicitSpan};

const N: usize = 3;

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn monomial(nvars: usize, max_degree: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_degree, nvars)
        .prop_filter("degree bound", move |e| e.iter().sum::<u32>() <= max_degree)
        .prop_map(Monomial::new)
}

fn polynomial(nvars: usize, max_degree: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(nvars, max_degree), rational()), 0..4)
        .prop_map(move |terms| Polynomial::from_terms(nvars, terms))
}

/// Arbitrary antisymmetric bivector on `2N` variables with coefficients of
/// degree at most 2; not necessarily Poisson.
fn bivector() -> impl Strategy<Value = PoissonBivector> {
    prop::collection::vec(polynomial(2 * N, 2), 3).prop_map(|coeffs| {
        let pairs = [(0, 3), (1, 4), (0, 1)];
        PoissonBivector::from_entries(2 * N, pairs.iter().zip(coeffs).map(|(&(i, j), c)| (i, j, c))).unwrap()
    })
}

fn hermitian(d: usize) -> impl Strategy<Value = HermitianElement> {
    prop::collection::vec(rational(), d * d).prop_map(move |c| HermitianElement::from_coords(d, &c).unwrap())
}

fn complex_matrix(d: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((rational(), rational()), d * d).prop_map(move |v| {
        ComplexMatrix::new(d, v.into_iter().map(|(re, im)| GaussianRational::new(re, im)).collect()).unwrap()
    })
}

fn span(d: usize, elems: &[HermitianElement]) -> ExplicitSpan {
    HermitianElement::span(d, elems).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in polynomial(N, 3), b in polynomial(N, 3), c in polynomial(N, 3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Polynomial::zero(N));
        prop_assert_eq!(&a * &Polynomial::one(N), a);
    }

    #[test]
    fn partial_derivatives_commute(f in polynomial(N, 4), i in 0..N, j in 0..N) {
        prop_assert_eq!(f.pdiff(i).pdiff(j), f.pdiff(j).pdiff(i));
    }

    #[test]
    fn restriction_is_a_ring_homomorphism(f in polynomial(N, 3), g in polynomial(N, 3), k in 0..N) {
        let coords = CoordinateSet::new(N, [k]).unwrap();
        prop_assert_eq!((&f * &g).restrict_zero(&coords), &f.restrict_zero(&coords) * &g.restrict_zero(&coords));
        prop_assert_eq!((&f + &g).restrict_zero(&coords), &f.restrict_zero(&coords) + &g.restrict_zero(&coords));
    }

    #[test]
    fn bracket_is_a_biderivation(
        pi in bivector(),
        f in polynomial(2 * N, 2),
        g in polynomial(2 * N, 2),
        h in polynomial(2 * N, 2),
    ) {
        prop_assert_eq!(pi.bracket(&f, &(&g * &h)), &pi.bracket(&f, &g) * &h + &g * &pi.bracket(&f, &h));
        prop_assert_eq!(pi.bracket(&f, &g), -pi.bracket(&g, &f));
    }

    #[test]
    fn jacobiator_is_alternating(
        pi in bivector(),
        f in polynomial(2 * N, 2),
        g in polynomial(2 * N, 2),
        h in polynomial(2 * N, 2),
    ) {
        let j = pi.jacobiator(&f, &g, &h);
        prop_assert_eq!(&j, &-pi.jacobiator(&g, &f, &h));
        prop_assert_eq!(&j, &pi.jacobiator(&g, &h, &f));
    }

    #[test]
    fn grassmann_dimension_identity(
        u in prop::collection::vec(hermitian(2), 0..4),
        v in prop::collection::vec(hermitian(2), 0..4),
    ) {
        let (su, sv) = (span(2, &u), span(2, &v));
        let sum = su.sum(&sv).unwrap();
        let inter = su.intersect(&sv).unwrap();
        prop_assert_eq!(sum.dim() + inter.dim(), su.dim() + sv.dim());
        prop_assert!(inter.is_subspace_of(&su).unwrap() && inter.is_subspace_of(&sv).unwrap());
    }

    #[test]
    fn canonical_representatives_are_idempotent(
        space in prop::collection::vec(polynomial(N, 2), 1..5),
        extra in prop::collection::vec(polynomial(N, 2), 0..3),
        v in polynomial(N, 2),
    ) {
        let ambient = AmbientBasis::polynomials(N, 2);
        let sub = ExplicitSpan::from_polynomials(ambient.clone(), &space).unwrap();
        let whole = sub.sum(&ExplicitSpan::from_polynomials(ambient.clone(), &extra).unwrap()).unwrap();
        let q = quotient(&whole, &sub).unwrap();
        let coords = ambient.coords(&v).unwrap();
        let once = q.canon(&coords);
        prop_assert_eq!(q.canon(&once), once.clone());
        // v and its representative differ by an element of the subspace
        let diff = ljreduce::subspaces::linalg::axpy(&coords, &Rational::from_integer((-1).into()), &once);
        prop_assert!(sub.contains(&diff));
    }

    #[test]
    fn graded_lex_is_a_total_order(a in monomial(N, 4), b in monomial(N, 4), c in monomial(N, 4)) {
        let ab = a.cmp(&b);
        prop_assert_eq!(ab.reverse(), b.cmp(&a));
        prop_assert_eq!(ab.is_eq(), a == b);
        if a.degree() < b.degree() {
            prop_assert!(a < b);
        }
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        // compatible with multiplication
        prop_assert_eq!(a.mul(&c).cmp(&b.mul(&c)), ab);
    }

    #[test]
    fn hermitian_coordinates_round_trip(h in hermitian(3)) {
        prop_assert_eq!(HermitianElement::from_coords(3, &h.coords()).unwrap(), h);
    }

    #[test]
    fn associative_round_trip(x in complex_matrix(2), y in complex_matrix(2), z in complex_matrix(2)) {
        for hbar in [Rational::from_integer(1.into()), Rational::new(1.into(), 2.into())] {
            prop_assert_eq!(complexified_product(&x, &y, &hbar).unwrap(), x.mul(&y));
        }
        prop_assert_eq!(x.mul(&y).adjoint(), y.adjoint().mul(&x.adjoint()));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        let (h1, h2) = x.hermitian_parts();
        let i = GaussianRational::new(Rational::from_integer(0.into()), Rational::from_integer(1.into()));
        prop_assert_eq!(h1.matrix().add(&h2.matrix().scale(&i)), x);
    }
}
