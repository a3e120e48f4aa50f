use num_traits::{One, Zero};

use crate::conditions::{Condition, ConditionReport, Witness};
use crate::exactalg::Rational;
use crate::subspaces::{AmbientKind, ExplicitSpan, SecondIsomorphism};

use super::{
    jordan, lie, verify_axioms, HermitianElement, LJAlgebra, LieJordanError, LieJordanStructure,
};

/// Optional `B₋ ⊂ B ⊂ B₊` sandwich for the strong conditions.
#[derive(Debug, Clone)]
pub struct QuantumCertificate {
    pub b_minus: ExplicitSpan,
    pub b_plus: ExplicitSpan,
}

/// `B/(B ∩ S)` with both induced products as structure constants on the
/// canonical representatives.
#[derive(Debug, Clone)]
pub struct LJQuotient {
    iso: SecondIsomorphism,
    d: usize,
    representatives: Vec<HermitianElement>,
    /// `jordan_sc[i][j]` = coordinates of `[r_i]∘[r_j]`
    pub jordan_sc: Vec<Vec<Vec<Rational>>>,
    /// `lie_sc[i][j]` = coordinates of `[[r_i],[r_j]]`
    pub lie_sc: Vec<Vec<Vec<Rational>>>,
}

impl LJQuotient {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn isomorphism(&self) -> &SecondIsomorphism {
        &self.iso
    }

    pub fn representatives(&self) -> &[HermitianElement] {
        &self.representatives
    }

    /// Canonical lift of a class given by its coordinates.
    pub fn element(&self, coords: &[Rational]) -> HermitianElement {
        let mut out = HermitianElement::zero(self.d);
        for (c, r) in coords.iter().zip(&self.representatives) {
            if !c.is_zero() {
                out = out.add(&r.scale(c));
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    fn apply(table: &[Vec<Vec<Rational>>], a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let m = a.len();
        let mut out = vec![Rational::zero(); m];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (o, t) in out.iter_mut().zip(&table[i][j]) {
                    if !t.is_zero() {
                        *o += &xy * t;
                    }
                }
            }
        }
        out
    }
}

impl LieJordanStructure for LJQuotient {
    type Element = Vec<Rational>;

    fn jordan(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        Self::apply(&self.jordan_sc, a, b)
    }

    fn lie(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        Self::apply(&self.lie_sc, a, b)
    }

    fn combine(&self, terms: &[(Rational, &Vec<Rational>)]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (c, v) in terms {
            for (o, x) in out.iter_mut().zip(v.iter()) {
                *o += c * x;
            }
        }
        out
    }

    fn is_zero(&self, a: &Vec<Rational>) -> bool {
        a.iter().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone)]
pub struct QuantumOutcome {
    pub report: ConditionReport<HermitianElement>,
    pub quotient: Option<LJQuotient>,
}

impl QuantumOutcome {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

pub const JORDAN_CLOSED: &str = "B∘B ⊂ B+S";
pub const JORDAN_IDEAL: &str = "B∘(B∩S) ⊂ S";
pub const LIE_CLOSED: &str = "[B,B] ⊂ B+S";
pub const LIE_IDEAL: &str = "[B,B∩S] ⊂ S";
pub const LIFT_INDEPENDENCE: &str = "lift independence";

fn elements(span: &ExplicitSpan, d: usize) -> Vec<HermitianElement> {
    span.basis().iter().map(|v| HermitianElement::from_sparse(d, v)).collect()
}

fn check_ambient(span: &ExplicitSpan, d: usize) -> Result<(), LieJordanError> {
    match span.ambient().kind() {
        AmbientKind::Hermitian { dim } if *dim == d => Ok(()),
        _ => Err(LieJordanError::WrongAmbient(d)),
    }
}

/// First pair from `left x right` whose product leaves `target`.
fn inclusion<F>(
    name: &str,
    left: &[HermitianElement],
    right: &[HermitianElement],
    symmetric: bool,
    product: F,
    target: &ExplicitSpan,
) -> Condition<HermitianElement>
where
    F: Fn(&HermitianElement, &HermitianElement) -> HermitianElement,
{
    let mut checked = 0;
    for (i, a) in left.iter().enumerate() {
        let start = if symmetric { i } else { 0 };
        for b in &right[start..] {
            checked += 1;
            let p = product(a, b);
            if !target.contains(&p.to_sparse()) {
                return Condition::fail(name, checked, Witness { inputs: vec![a.clone(), b.clone()], residual: p });
            }
        }
    }
    Condition::pass(name, checked)
}

fn subspace_condition(name: &str, sub: &ExplicitSpan, sup: &ExplicitSpan, d: usize) -> Result<Condition<HermitianElement>, LieJordanError> {
    for (k, v) in sub.basis().iter().enumerate() {
        if !sup.contains(v) {
            let e = HermitianElement::from_sparse(d, v);
            return Ok(Condition::fail(name, k + 1, Witness { inputs: vec![e.clone()], residual: e }));
        }
    }
    Ok(Condition::pass(name, sub.dim()))
}

/// Checks the four weak conditions on basis pairs and, when they hold,
/// induces `∘` and `[ , ]` on `B/(B ∩ S)`, checks lift independence, and
/// verifies the ternary identities on the quotient. A certificate adds the
/// strong conditions and a cross-check against the axiom verdicts.
pub fn quantum_reduce(
    b: &ExplicitSpan,
    s: &ExplicitSpan,
    alg: &LJAlgebra,
    certificate: Option<&QuantumCertificate>,
) -> Result<QuantumOutcome, LieJordanError> {
    let d = alg.dim();
    check_ambient(b, d)?;
    check_ambient(s, d)?;
    let hbar = alg.hbar().clone();
    let jordan_op = |x: &HermitianElement, y: &HermitianElement| jordan(x, y).expect("same dimension");
    let lie_op = |x: &HermitianElement, y: &HermitianElement| lie(x, y, &hbar).expect("nonzero hbar");

    let inter = b.intersect(s)?;
    let sum = b.sum(s)?;
    let mut report = ConditionReport::new();
    report.dimension("B", b.dim());
    report.dimension("S", s.dim());
    report.dimension("B ∩ S", inter.dim());
    report.dimension("B + S", sum.dim());
    let bb = elements(b, d);
    let bi = elements(&inter, d);

    let weak = [
        inclusion(JORDAN_CLOSED, &bb, &bb, true, jordan_op, &sum),
        inclusion(JORDAN_IDEAL, &bb, &bi, false, jordan_op, s),
        inclusion(LIE_CLOSED, &bb, &bb, true, lie_op, &sum),
        inclusion(LIE_IDEAL, &bb, &bi, false, lie_op, s),
    ];
    let mut weak_ok = true;
    for c in weak {
        weak_ok &= report.push(c);
    }
    if !weak_ok {
        if let Some(cert) = certificate {
            strong_conditions(&mut report, cert, b, s, d, &jordan_op, &lie_op)?;
        }
        return Ok(QuantumOutcome { report, quotient: None });
    }

    let iso = SecondIsomorphism::new(b, s)?;
    let representatives: Vec<HermitianElement> =
        iso.quotient().representatives().iter().map(|v| HermitianElement::from_sparse(d, v)).collect();
    let m = representatives.len();
    report.dimension("B/(B∩S)", m);
    let project = |e: &HermitianElement| iso.project(&e.to_sparse()).expect("weak conditions hold");
    let table = |op: &dyn Fn(&HermitianElement, &HermitianElement) -> HermitianElement| -> Vec<Vec<Vec<Rational>>> {
        representatives.iter().map(|x| representatives.iter().map(|y| project(&op(x, y))).collect()).collect()
    };
    let jordan_sc = table(&jordan_op);
    let lie_sc = table(&lie_op);

    let mut checked = 0;
    let mut witness = None;
    if !bi.is_empty() {
        let alt: Vec<HermitianElement> =
            representatives.iter().enumerate().map(|(i, r)| r.add(&bi[i % bi.len()])).collect();
        'outer: for i in 0..m {
            for j in i..m {
                checked += 1;
                for (op, sc) in [(&jordan_op as &dyn Fn(&_, &_) -> _, &jordan_sc), (&lie_op, &lie_sc)] {
                    let v = op(&alt[i], &alt[j]);
                    if project(&v) != sc[i][j] {
                        witness = Some(Witness { inputs: vec![alt[i].clone(), alt[j].clone()], residual: v });
                        break 'outer;
                    }
                }
            }
        }
    }
    report.push(Condition::from_search(LIFT_INDEPENDENCE, checked, witness));

    let quotient = LJQuotient { iso, d, representatives, jordan_sc, lie_sc };
    let units: Vec<Vec<Rational>> = (0..m).map(|i| quotient.unit(i)).collect();
    let axioms = verify_axioms(&quotient, &units, &hbar);
    let axioms_ok = axioms.passed();
    for c in axioms.conditions {
        let witness = c.witness.map(|w| Witness {
            inputs: w.inputs.iter().map(|v| quotient.element(v)).collect(),
            residual: quotient.element(&w.residual),
        });
        report.push(Condition {
            name: format!("quotient {}", c.name),
            passed: c.passed,
            checked: c.checked,
            witness,
            detail: c.detail,
        });
    }

    if let Some(cert) = certificate {
        let certified = strong_conditions(&mut report, cert, b, s, d, &jordan_op, &lie_op)?;
        let detail = format!(
            "certificate {}, axioms {}",
            if certified { "PASS" } else { "FAIL" },
            if axioms_ok { "PASS" } else { "FAIL" }
        );
        let cond = Condition { name: "certificate ⟹ axioms".into(), passed: !certified || axioms_ok, checked: 1, witness: None, detail: None };
        report.push(cond.with_detail(detail));
    }
    Ok(QuantumOutcome { report, quotient: Some(quotient) })
}

/// Pushes the sandwich preconditions and the four strong inclusions;
/// returns whether all of them hold.
fn strong_conditions(
    report: &mut ConditionReport<HermitianElement>,
    cert: &QuantumCertificate,
    b: &ExplicitSpan,
    s: &ExplicitSpan,
    d: usize,
    jordan_op: &dyn Fn(&HermitianElement, &HermitianElement) -> HermitianElement,
    lie_op: &dyn Fn(&HermitianElement, &HermitianElement) -> HermitianElement,
) -> Result<bool, LieJordanError> {
    check_ambient(&cert.b_minus, d)?;
    check_ambient(&cert.b_plus, d)?;
    let bs = b.sum(s)?;
    let mut ok = true;
    ok &= report.push(subspace_condition("B- ⊂ B", &cert.b_minus, b, d)?);
    ok &= report.push(subspace_condition("B ⊂ B+", b, &cert.b_plus, d)?);
    let sum_equal = |name: &str, x: &ExplicitSpan| -> Result<Condition<HermitianElement>, LieJordanError> {
        let xs = x.sum(s)?;
        let c = subspace_condition(name, &bs, &xs, d)?;
        Ok(if c.passed { subspace_condition(name, &xs, &bs, d)? } else { c })
    };
    ok &= report.push(sum_equal("B- + S = B + S", &cert.b_minus)?);
    ok &= report.push(sum_equal("B+ + S = B + S", &cert.b_plus)?);

    let bm = elements(&cert.b_minus, d);
    let bpi = elements(&cert.b_plus.intersect(s)?, d);
    ok &= report.push(inclusion("B-∘B- ⊂ B+", &bm, &bm, true, jordan_op, &cert.b_plus));
    ok &= report.push(inclusion("B-∘(B+∩S) ⊂ S", &bm, &bpi, false, jordan_op, s));
    ok &= report.push(inclusion("[B-,B-] ⊂ B+", &bm, &bm, true, lie_op, &cert.b_plus));
    ok &= report.push(inclusion("[B-,B+∩S] ⊂ S", &bm, &bpi, false, lie_op, s));
    Ok(ok)
}

/// One row of the classical-limit comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitRow {
    pub hbar: Rational,
    /// `(a∘b)∘c - a∘(b∘c)`
    pub associator: HermitianElement,
    /// `ħ² [[a,c],b]` with the bracket at this `ħ`
    pub rhs: HermitianElement,
    pub equal: bool,
    /// `ħ² [[a,c],b]` with the bracket held at `ħ = 1`: the associator an
    /// algebra with that fixed bracket must have at this `ħ`.
    pub fixed_bracket: HermitianElement,
}

/// Associator versus `ħ² [[a,c],b]` across several values of `ħ`.
pub fn classical_limit_compare(
    a: &HermitianElement,
    b: &HermitianElement,
    c: &HermitianElement,
    hbars: &[Rational],
) -> Result<Vec<LimitRow>, LieJordanError> {
    let one = Rational::one();
    let associator = jordan(&jordan(a, b)?, c)?.sub(&jordan(a, &jordan(b, c)?)?);
    let fixed = lie(&lie(a, c, &one)?, b, &one)?;
    hbars
        .iter()
        .map(|h| {
            let h2 = h * h;
            let rhs = lie(&lie(a, c, h)?, b, h)?.scale(&h2);
            Ok(LimitRow {
                hbar: h.clone(),
                equal: rhs == associator,
                associator: associator.clone(),
                rhs,
                fixed_bracket: fixed.scale(&h2),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use crate::liejordan::{ASSOCIATOR, JACOBI, LEIBNIZ};

    fn span(d: usize, elems: &[HermitianElement]) -> ExplicitSpan {
        HermitianElement::span(d, elems).unwrap()
    }

    #[test]
    fn block_diagonal_reduction() {
        let alg = LJAlgebra::new(2, int(1)).unwrap();
        let id = HermitianElement::identity(2);
        let sz = HermitianElement::pauli_z();
        let b = span(2, &[id.clone(), sz.clone()]);
        let s = span(2, &[id.sub(&sz)]);
        let out = quantum_reduce(&b, &s, &alg, None).unwrap();
        assert!(out.passed(), "{:?}", out.report);
        assert_eq!(out.quotient.unwrap().dim(), 1);
    }

    #[test]
    fn identity_reduction() {
        let alg = LJAlgebra::new(2, rat(1, 2)).unwrap();
        let b = span(2, &alg.basis());
        let s = span(2, &[]);
        let out = quantum_reduce(&b, &s, &alg, None).unwrap();
        assert!(out.passed());
        assert_eq!(out.quotient.unwrap().dim(), 4);
    }

    #[test]
    fn pauli_pair_is_not_a_jordan_subalgebra() {
        let alg = LJAlgebra::new(2, int(1)).unwrap();
        let sx = HermitianElement::pauli_x();
        let b = span(2, &[sx.clone(), HermitianElement::pauli_y()]);
        let out = quantum_reduce(&b, &span(2, &[]), &alg, None).unwrap();
        let c = out.report.get(JORDAN_CLOSED).unwrap();
        assert!(!c.passed);
        let w = c.witness.as_ref().unwrap();
        assert_eq!(w.inputs, vec![sx.clone(), sx]);
        assert_eq!(w.residual, HermitianElement::identity(2));
        assert!(out.quotient.is_none());
    }

    #[test]
    fn subalgebra_modulo_ideal() {
        // B = Herm(2) ⊕ Herm(1) inside Herm(3), S = the 1x1 block
        let alg = LJAlgebra::new(3, rat(1, 3)).unwrap();
        let basis = HermitianElement::basis(3);
        // coordinates: E00, E11, E22, Re01, Re02, Re12, Im01, Im02, Im12
        let b = span(3, &[basis[0].clone(), basis[1].clone(), basis[2].clone(), basis[3].clone(), basis[6].clone()]);
        let s = span(3, &[basis[2].clone()]);
        let cert = QuantumCertificate { b_minus: b.clone(), b_plus: b.clone() };
        let out = quantum_reduce(&b, &s, &alg, Some(&cert)).unwrap();
        assert!(out.passed(), "{:?}", out.report);
        for name in [JACOBI, LEIBNIZ, ASSOCIATOR] {
            assert!(out.report.get(&format!("quotient {}", name)).unwrap().passed);
        }
        assert_eq!(out.quotient.unwrap().dim(), 4);
    }

    #[test]
    fn alternate_lifts_agree() {
        let alg = LJAlgebra::new(2, int(1)).unwrap();
        let id = HermitianElement::identity(2);
        let sz = HermitianElement::pauli_z();
        let b = span(2, &[id.clone(), sz.clone()]);
        let s = span(2, &[id.sub(&sz)]);
        let out = quantum_reduce(&b, &s, &alg, None).unwrap();
        let c = out.report.get(LIFT_INDEPENDENCE).unwrap();
        assert!(c.passed && c.checked > 0);
    }

    #[test]
    fn classical_limit_rows() {
        let sx = HermitianElement::pauli_x();
        let sz = HermitianElement::pauli_z();
        let rows = classical_limit_compare(&sx, &sx, &sz, &[int(1), rat(1, 2), rat(1, 3)]).unwrap();
        assert!(rows.iter().all(|r| r.equal));
        assert_eq!(rows[0].associator, sz);
        assert_eq!(rows[1].fixed_bracket, rows[0].fixed_bracket.scale(&rat(1, 4)));
        let id = HermitianElement::identity(2);
        let rows = classical_limit_compare(&sz, &id, &sz, &[int(1)]).unwrap();
        assert!(rows[0].associator.is_zero());
    }
}
