//! Sparse exact Gaussian elimination.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactalg::Rational;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// `a + c * b`
pub fn axpy(a: &[(usize, Rational)], c: &Rational, b: &[(usize, Rational)]) -> SparseVec {
    if c.is_zero() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(a: &[(usize, Rational)], c: &Rational) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, v)| (*i, v * c)).collect()
}

pub fn entry(a: &[(usize, Rational)], index: usize) -> Option<&Rational> {
    a.binary_search_by_key(&index, |(i, _)| *i).ok().map(|k| &a[k].1)
}

/// Builds a sparse vector from unordered, possibly repeated entries.
pub fn from_entries(entries: impl IntoIterator<Item = (usize, Rational)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, v) in entries {
        *acc.entry(i).or_insert_with(Rational::zero) += v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Reduced row-echelon basis of a subspace. Each row has a leading 1 at its
/// pivot (its smallest index) and zeros in every other row's pivot column.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Rows ordered by pivot.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    /// `v` with every pivot coordinate eliminated.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut out = v.to_vec();
        for (idx, c) in v {
            if let Some(row) = self.rows.get(idx) {
                // Rows vanish on the other pivots, so the coefficient at this
                // pivot is still the original one.
                out = axpy(&out, &-c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns false when it was already contained.
    pub fn insert(&mut self, v: &[(usize, Rational)]) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.first().cloned() else {
            return false;
        };
        let r = scale(&r, &(Rational::one() / lead));
        for row in self.rows.values_mut() {
            if let Some(c) = entry(row, pivot).cloned() {
                *row = axpy(row, &-c, &r);
            }
        }
        self.rows.insert(pivot, r);
        true
    }
}

/// Echelon form that remembers how each row was assembled from the inserted
/// vectors. Used for kernels and linear solves. Rows are only
/// semi-reduced: each row's pivot is its smallest index.
#[derive(Clone, Debug, Default)]
pub struct TrackedEchelon {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    inserted: usize,
}

/// Result of inserting a vector into a [`TrackedEchelon`].
pub enum Insertion {
    /// The vector was independent and became a new row.
    Independent,
    /// The vector was dependent: the returned history combination of
    /// inserted vectors sums to zero.
    Dependent(SparseVec),
}

impl TrackedEchelon {
    pub fn new() -> Self {
        TrackedEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `(v, history)` against the rows, stopping at the first
    /// non-pivot leading index.
    fn reduce_pair(&self, mut v: SparseVec, mut history: SparseVec) -> (SparseVec, SparseVec) {
        loop {
            let Some((lead, c)) = v.first().cloned() else { break };
            let Some((row, hist)) = self.rows.get(&lead) else { break };
            let neg = -c;
            v = axpy(&v, &neg, row);
            history = axpy(&history, &neg, hist);
        }
        (v, history)
    }

    /// Inserts the next vector; its history index is the insertion count.
    pub fn insert(&mut self, v: SparseVec) -> Insertion {
        let id = self.inserted;
        self.inserted += 1;
        let (r, h) = self.reduce_pair(v, vec![(id, Rational::one())]);
        match r.first().cloned() {
            None => Insertion::Dependent(h),
            Some((pivot, lead)) => {
                let inv = Rational::one() / lead;
                self.rows.insert(pivot, (scale(&r, &inv), scale(&h, &inv)));
                Insertion::Independent
            }
        }
    }

    /// Coefficients `x` (indexed by insertion order) with `sum x_j v_j = target`,
    /// or `None` when the target is outside the span.
    pub fn solve(&self, target: &[(usize, Rational)]) -> Option<SparseVec> {
        let mut v = target.to_vec();
        let mut x: SparseVec = Vec::new();
        while let Some((lead, c)) = v.first().cloned() {
            let (row, hist) = self.rows.get(&lead)?;
            v = axpy(&v, &-&c, row);
            x = axpy(&x, &c, hist);
        }
        Some(x)
    }

    pub fn contains(&self, target: &[(usize, Rational)]) -> bool {
        let mut v = target.to_vec();
        while let Some((lead, c)) = v.first().cloned() {
            match self.rows.get(&lead) {
                Some((row, _)) => v = axpy(&v, &-c, row),
                None => return false,
            }
        }
        true
    }
}

/// Kernel basis of the linear map sending basis vector `j` to `columns[j]`.
/// Each kernel vector involves only columns up to its last index, and that
/// last coefficient is 1.
pub fn kernel(columns: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut ech = TrackedEchelon::new();
    let mut out = Vec::new();
    for col in columns {
        if let Insertion::Dependent(h) = ech.insert(col) {
            out.push(h);
        }
    }
    out
}

/// Assigns dense indices to arbitrary ordered keys on first sight.
#[derive(Debug)]
pub struct Indexer<K: Ord + Clone> {
    map: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for Indexer<K> {
    fn default() -> Self {
        Indexer { map: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Indexer<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn index(&mut self, key: &K) -> usize {
        let next = self.map.len();
        *self.map.entry(key.clone()).or_insert(next)
    }

    pub fn get(&self, key: &K) -> Option<usize> {
        self.map.get(key).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        from_entries(entries.iter().map(|&(i, x)| (i, int(x))))
    }

    #[test]
    fn echelon_is_canonical() {
        let mut a = Echelon::new();
        a.insert(&v(&[(0, 1), (1, 1)]));
        a.insert(&v(&[(1, 1), (2, 1)]));
        let mut b = Echelon::new();
        b.insert(&v(&[(0, 1), (2, -1)]));
        b.insert(&v(&[(0, 2), (1, 1), (2, -1)]));
        assert_eq!(a, b);
        assert!(a.contains(&v(&[(0, 1), (1, 2), (2, 1)])));
        assert!(!a.contains(&v(&[(2, 1)])));
        assert!(!a.insert(&v(&[(0, 3), (1, 3)])));
    }

    #[test]
    fn kernel_and_solve() {
        // columns: e0, e1, e0 + e1, 2 e0
        let cols = vec![v(&[(0, 1)]), v(&[(1, 1)]), v(&[(0, 1), (1, 1)]), v(&[(0, 2)])];
        let ker = kernel(cols.clone());
        assert_eq!(ker, vec![v(&[(0, -1), (1, -1), (2, 1)]), v(&[(0, -2), (3, 1)])]);

        let mut ech = TrackedEchelon::new();
        for c in cols {
            ech.insert(c);
        }
        let x = ech.solve(&v(&[(0, 3), (1, -1)])).unwrap();
        assert_eq!(x, v(&[(0, 3), (1, -1)]));
        assert!(ech.solve(&v(&[(2, 1)])).is_none());
    }
}

/// Inverse of a dense square matrix over the rationals, or `None` when singular.
pub fn invert(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "square matrix");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = Rational::one() / &a[col][col];
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, pv) in a[r].iter_mut().zip(pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod invert_tests {
    use super::*;
    use crate::exactalg::{int, rat};

    #[test]
    fn inverts_and_detects_singular() {
        let m = vec![vec![int(0), int(1)], vec![int(-1), int(0)]];
        assert_eq!(invert(&m).unwrap(), vec![vec![int(0), int(-1)], vec![int(1), int(0)]]);
        let m = vec![vec![int(2), int(1)], vec![int(4), int(3)]];
        assert_eq!(invert(&m).unwrap(), vec![vec![rat(3, 2), rat(-1, 2)], vec![int(-2), int(1)]]);
        assert!(invert(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }
}
