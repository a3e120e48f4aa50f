use num_traits::{One, Zero};

use crate::exactalg::{CoordinateSet, Monomial, Polynomial, Rational};
use crate::poisson::{check_jacobi, PoissonBivector};
use crate::subspaces::linalg::invert;
use crate::subspaces::{quotient, StructuredSpace};

use super::{
    bivector_from_lifts, lift_through_restriction, search_pairs, Condition, ConditionReport, ReduceError,
    ReducedBracket, ReductionScenario, Witness,
};

pub fn vanishing_ideal(coords: &CoordinateSet) -> StructuredSpace {
    StructuredSpace::vanishing_ideal(coords.clone())
}

pub fn normalizer(bivector: &PoissonBivector, coords: &CoordinateSet) -> StructuredSpace {
    StructuredSpace::normalizer(bivector.clone(), coords.clone())
}

/// Name of the invertibility condition in a second-class report.
pub const SECOND_CLASS: &str = "det C(0) ≠ 0";
/// Name of the spanning condition in a second-class report.
pub const SPANNING: &str = "N + I = all";

/// `C_ab = {phi_a, phi_b}`.
fn constraint_matrix(bivector: &PoissonBivector, constraints: &[Polynomial]) -> Vec<Vec<Polynomial>> {
    constraints
        .iter()
        .map(|a| constraints.iter().map(|b| bivector.bracket(a, b)).collect())
        .collect()
}

/// Determinant by expansion over column subsets.
fn determinant(matrix: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    let m = matrix.len();
    if m == 0 {
        return Polynomial::one(nvars);
    }
    // minors[mask] = det of the first |mask| rows on the columns in mask
    let mut minors = vec![Polynomial::zero(nvars); 1 << m];
    minors[0] = Polynomial::one(nvars);
    for mask in 1usize..(1 << m) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = Polynomial::zero(nvars);
        for col in (0..m).filter(|c| mask & (1 << c) != 0) {
            let rest = mask & !(1 << col);
            if minors[rest].is_zero() || matrix[row][col].is_zero() {
                continue;
            }
            // sign from the number of chosen columns after `col`
            let after = (rest >> col).count_ones();
            let term = &matrix[row][col] * &minors[rest];
            acc = if after % 2 == 0 { acc + term } else { acc - term };
        }
        minors[mask] = acc;
    }
    minors[(1 << m) - 1].clone()
}

fn check_vanishing(constraints: &[Polynomial], coords: &CoordinateSet) -> Result<(), ReduceError> {
    for (index, phi) in constraints.iter().enumerate() {
        if phi.nvars() != coords.nvars() {
            return Err(ReduceError::Inconsistent("constraint has the wrong variable count".into()));
        }
        if !phi.restrict_zero(coords).is_zero() {
            return Err(ReduceError::ConstraintNotVanishing { index });
        }
    }
    Ok(())
}

/// Tests whether the constraints are second class: the restricted bracket
/// matrix is invertible at the origin. Also reports whether the truncated
/// normalizer and vanishing ideal together span every polynomial of degree
/// `<= degree`, listing the monomials they miss.
pub fn second_class_check(
    bivector: &PoissonBivector,
    constraints: &[Polynomial],
    coords: &CoordinateSet,
    degree: u32,
) -> Result<ConditionReport<Polynomial>, ReduceError> {
    let n = bivector.nvars();
    if coords.nvars() != n {
        return Err(ReduceError::Inconsistent("submanifold has the wrong variable count".into()));
    }
    check_vanishing(constraints, coords)?;
    let matrix: Vec<Vec<Polynomial>> = constraint_matrix(bivector, constraints)
        .into_iter()
        .map(|row| row.into_iter().map(|c| c.restrict_zero(coords)).collect())
        .collect();
    let det = determinant(&matrix, n);

    let mut report = ConditionReport::new();
    let det0 = det.constant_term();
    let cond = if det0.is_zero() {
        Condition::fail(SECOND_CLASS, 1, Witness { inputs: constraints.to_vec(), residual: det })
    } else {
        Condition::pass(SECOND_CLASS, 1)
    };
    report.push(cond.with_detail(format!("det C(0) = {}", det0)));

    let nspan = normalizer(bivector, coords).truncate(degree);
    let ispan = vanishing_ideal(coords).truncate(degree);
    let sum = nspan.sum(&ispan)?;
    let ambient = sum.ambient().clone();
    report.dimension("N", nspan.dim());
    report.dimension("I", ispan.dim());
    report.dimension("N + I", sum.dim());
    report.dimension("all", ambient.dim());

    let mut missing: Vec<Monomial> =
        sum.missing_basis_indices().into_iter().map(|i| ambient.monomials()[i].clone()).collect();
    missing.sort();
    let cond = match missing.first() {
        None => Condition::pass(SPANNING, ambient.dim()),
        Some(m) => Condition::fail(
            SPANNING,
            ambient.dim(),
            Witness { inputs: Vec::new(), residual: Polynomial::term(m.clone(), Rational::one()) },
        )
        .with_detail(format!("{} monomials of degree <= {} missing", missing.len(), degree)),
    };
    report.push(cond);
    Ok(report)
}

/// `{f,g}_D = {f,g} - {f,phi_a} (C^-1)^{ab} {phi_b,g}`.
///
/// When `C` is constant its inverse is exact. Otherwise `C = C0 + C1` with
/// `C1` vanishing at the origin and the inverse is the Neumann series
/// `sum_k (-C0^-1 C1)^k C0^-1`, truncated at the work degree.
#[derive(Debug, Clone)]
pub struct DiracBracket {
    bivector: PoissonBivector,
    constraints: Vec<Polynomial>,
    inverse: Vec<Vec<Polynomial>>,
    exact: bool,
}

fn mat_mul(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>], nvars: usize, max_degree: u32) -> Vec<Vec<Polynomial>> {
    let m = a.len();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = Polynomial::zero(nvars);
                    for k in 0..m {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc = acc + &a[i][k] * &b[k][j];
                        }
                    }
                    acc.truncate(max_degree)
                })
                .collect()
        })
        .collect()
}

impl DiracBracket {
    pub fn new(
        bivector: &PoissonBivector,
        constraints: &[Polynomial],
        work_degree: u32,
    ) -> Result<Self, ReduceError> {
        let n = bivector.nvars();
        if constraints.iter().any(|c| c.nvars() != n) {
            return Err(ReduceError::Inconsistent("constraint has the wrong variable count".into()));
        }
        let c = constraint_matrix(bivector, constraints);
        let c0: Vec<Vec<Rational>> = c.iter().map(|row| row.iter().map(Polynomial::constant_term).collect()).collect();
        let c0_inv = invert(&c0).ok_or(ReduceError::SingularConstraintMatrix)?;
        let lift = |m: &[Vec<Rational>]| -> Vec<Vec<Polynomial>> {
            m.iter().map(|row| row.iter().map(|x| Polynomial::constant(n, x.clone())).collect()).collect()
        };
        let exact = c.iter().flatten().all(Polynomial::is_constant);
        let inverse = if exact {
            lift(&c0_inv)
        } else {
            let c0_inv = lift(&c0_inv);
            let c1: Vec<Vec<Polynomial>> = c
                .iter()
                .map(|row| row.iter().map(|x| x - &Polynomial::constant(n, x.constant_term())).collect())
                .collect();
            let step: Vec<Vec<Polynomial>> =
                mat_mul(&c0_inv, &c1, n, work_degree).into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
            let mut term = c0_inv.clone();
            let mut sum = c0_inv;
            // every factor of C1 raises the lowest degree by at least one
            for _ in 0..work_degree {
                term = mat_mul(&step, &term, n, work_degree);
                if term.iter().flatten().all(Polynomial::is_zero) {
                    break;
                }
                for (srow, trow) in sum.iter_mut().zip(&term) {
                    for (s, t) in srow.iter_mut().zip(trow) {
                        *s = &*s + t;
                    }
                }
            }
            sum
        };
        Ok(DiracBracket { bivector: bivector.clone(), constraints: constraints.to_vec(), inverse, exact })
    }

    /// Whether `C^-1` is exact rather than a truncated series.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn inverse(&self) -> &[Vec<Polynomial>] {
        &self.inverse
    }

    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut out = self.bivector.bracket(f, g);
        let left: Vec<Polynomial> = self.constraints.iter().map(|phi| self.bivector.bracket(f, phi)).collect();
        let right: Vec<Polynomial> = self.constraints.iter().map(|phi| self.bivector.bracket(phi, g)).collect();
        for (a, fa) in left.iter().enumerate() {
            if fa.is_zero() {
                continue;
            }
            for (b, gb) in right.iter().enumerate() {
                let inv = &self.inverse[a][b];
                if gb.is_zero() || inv.is_zero() {
                    continue;
                }
                out = out - &(fa * inv) * gb;
            }
        }
        out
    }
}

/// Outcome of reducing by the constraints `N = {x_k = 0}`: the bracket
/// induced on `N/(N ∩ I)` with `N` the Lie normalizer of `I`.
#[derive(Debug, Clone)]
pub struct ConstraintOutcome {
    pub report: ConditionReport<Polynomial>,
    pub reduced: Option<ReducedBracket>,
}

impl ConstraintOutcome {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Reduces by constraints. The constraints default to the coordinates
/// `x_k`, `k in K`, when the scenario lists none.
pub fn reduce_by_constraints(scenario: &ReductionScenario) -> Result<ConstraintOutcome, ReduceError> {
    scenario.validate()?;
    let n = scenario.nvars();
    let pi = &scenario.bivector;
    let coords = &scenario.submanifold;
    let constraints: Vec<Polynomial> = if scenario.constraints.is_empty() {
        coords.indices().iter().map(|&k| Polynomial::var(n, k)).collect()
    } else {
        scenario.constraints.clone()
    };
    let mut report = second_class_check(pi, &constraints, coords, scenario.check_degree)?;

    let nspace = normalizer(pi, coords);
    let ideal = vanishing_ideal(coords);
    let nspan = nspace.truncate(scenario.check_degree);
    let inter = nspan.intersect(&ideal.truncate(scenario.check_degree))?;
    report.dimension("N ∩ I", inter.dim());
    let nbasis = nspan.basis_polynomials();
    let ibasis = inter.basis_polynomials();

    let (checked, witness) = search_pairs(&nbasis, &nbasis, true, |f, g| {
        let b = pi.bracket(f, g);
        (!nspace.member(&b).expect("arity checked")).then_some(b)
    });
    report.push(Condition::from_search("{N,N} ⊂ N", checked, witness));
    let (checked, witness) = search_pairs(&nbasis, &ibasis, false, |f, g| {
        let b = pi.bracket(f, g);
        let r = b.restrict_zero(coords);
        (!r.is_zero()).then_some(r)
    });
    let well_defined = report.push(Condition::from_search("{N,N∩I} ⊂ I", checked, witness));
    if !well_defined {
        return Ok(ConstraintOutcome { report, reduced: None });
    }

    let q = quotient(&nspan, &inter)?;
    let lifts = q.representative_polynomials();
    let restricted: Vec<Polynomial> = lifts.iter().map(|f| f.restrict_zero(coords)).collect();
    let mut structure = Vec::new();
    for i in 0..lifts.len() {
        for j in i + 1..lifts.len() {
            structure.push(((i, j), pi.bracket(&lifts[i], &lifts[j]).restrict_zero(coords)));
        }
    }

    // When every N coordinate has a lift in the normalizer, the induced
    // bracket is a bivector on N.
    let coordinate_lifts: Option<Vec<Polynomial>> = coords
        .complement()
        .into_iter()
        .map(|u| lift_through_restriction(&nbasis, &Polynomial::var(n, u), coords))
        .collect();
    let bivector = coordinate_lifts.map(|l| bivector_from_lifts(pi, &scenario.names, coords, l));
    let jacobi = bivector.as_ref().map(|b| check_jacobi(&b.bivector, scenario.check_degree.max(3)));

    if report.get(SECOND_CLASS).is_some_and(|c| c.passed) {
        let dirac = DiracBracket::new(pi, &constraints, scenario.work_degree)?;
        let mut checked = 0;
        let mut witness = None;
        'outer: for i in 0..lifts.len() {
            for j in i + 1..lifts.len() {
                checked += 1;
                let d = dirac.bracket(&lifts[i], &lifts[j]).restrict_zero(coords);
                let s = &structure[checked - 1].1;
                if !dirac.is_exact() {
                    // a truncated inverse only pins the low-degree part
                    let bound = scenario.work_degree;
                    if d.truncate(bound) == s.truncate(bound) {
                        continue;
                    }
                } else if &d == s {
                    continue;
                }
                witness = Some(Witness { inputs: vec![lifts[i].clone(), lifts[j].clone()], residual: d - s.clone() });
                break 'outer;
            }
        }
        report.push(Condition::from_search("Dirac bracket = induced bracket on N", checked, witness));
    }

    let reduced = ReducedBracket { quotient: q, lifts, restricted, structure, bivector, jacobi };
    Ok(ConstraintOutcome { report, reduced: Some(reduced) })
}
