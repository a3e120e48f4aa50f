use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `[e0, e1, ...]` standing for `x0^e0 x1^e1 ...`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors lexicographically, so `x0 > x1 > ... > 1` within each degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents.into_boxed_slice())
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial::new(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / x_index`, or `None` when `x_index` does not divide `self`.
    pub fn div_var(&self, index: usize) -> Option<Monomial> {
        if self.0[index] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[index] -= 1;
        Some(Monomial(e))
    }

    /// True when the monomial does not involve any of the flagged variables.
    pub fn avoids(&self, mask: &[bool]) -> bool {
        self.0.iter().zip(mask).all(|(&e, &m)| !m || e == 0)
    }

    pub(crate) fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(&names[i])?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All monomials in `nvars` variables of total degree at most `max_degree`,
/// restricted to the variables not flagged in `excluded`, in ascending
/// graded-lex order.
pub fn monomials_up_to(nvars: usize, max_degree: u32, excluded: Option<&[bool]>) -> Vec<Monomial> {
    let allowed: Vec<usize> = (0..nvars)
        .filter(|&i| excluded.is_none_or(|m| !m[i]))
        .collect();
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    for degree in 0..=max_degree {
        fill(&allowed, 0, degree, &mut current, &mut out);
    }
    out.sort();
    out
}

fn fill(allowed: &[usize], pos: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if pos == allowed.len() {
        if remaining == 0 {
            out.push(Monomial::new(current.clone()));
        }
        return;
    }
    let var = allowed[pos];
    for e in 0..=remaining {
        current[var] = e;
        fill(allowed, pos + 1, remaining - e, current, out);
    }
    current[var] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_orders_by_degree_then_lex() {
        let x = Monomial::var(2, 0);
        let y = Monomial::var(2, 1);
        let one = Monomial::one(2);
        let xy = x.mul(&y);
        let y2 = y.mul(&y);
        assert!(one < y && y < x);
        assert!(x < y2 && y2 < xy);
    }

    #[test]
    fn monomial_count_matches_binomial() {
        // C(6 + 3, 3) = 84
        assert_eq!(monomials_up_to(6, 3, None).len(), 84);
        let mask = [true, true, false, false, false, false];
        // C(4 + 2, 2) = 15
        assert_eq!(monomials_up_to(6, 2, Some(&mask)).len(), 15);
    }
}
