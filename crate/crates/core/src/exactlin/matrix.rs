use num_traits::{One, Zero};

use super::rational::{RVector, Rational};
use super::subspace::Subspace;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RMatrix {
    rows: Vec<RVector>,
    ncols: usize,
}

impl RMatrix {
    /// Panics if the rows have differing lengths.
    pub fn new(rows: Vec<RVector>, ncols: usize) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "all rows must have {ncols} columns"
        );
        RMatrix { rows, ncols }
    }

    pub fn zero_rows(ncols: usize) -> Self {
        RMatrix { rows: Vec::new(), ncols }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| super::rational::unit(n, i)).collect();
        RMatrix { rows, ncols: n }
    }

    pub fn rows(&self) -> &[RVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<RVector> {
        self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn mul_vec(&self, x: &[Rational]) -> RVector {
        self.rows.iter().map(|r| super::rational::dot(r, x)).collect()
    }

    pub fn rank(&self) -> usize {
        rref(self).nrows()
    }
}

/// Gauss-Jordan elimination in place; returns the pivot columns. Zero rows are
/// left at the bottom.
fn eliminate(rows: &mut [RVector], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form with zero rows dropped.
pub fn rref(m: &RMatrix) -> RMatrix {
    let mut rows = m.rows.clone();
    let pivots = eliminate(&mut rows, m.ncols);
    rows.truncate(pivots.len());
    RMatrix { rows, ncols: m.ncols }
}

pub(crate) fn rref_with_pivots(m: &RMatrix) -> (RMatrix, Vec<usize>) {
    let mut rows = m.rows.clone();
    let pivots = eliminate(&mut rows, m.ncols);
    rows.truncate(pivots.len());
    (RMatrix { rows, ncols: m.ncols }, pivots)
}

pub fn rank_of(rows: &[RVector], ncols: usize) -> usize {
    let mut rows = rows.to_vec();
    eliminate(&mut rows, ncols).len()
}

/// `{x : m x = 0}`.
pub fn kernel(m: &RMatrix) -> Subspace {
    let n = m.ncols;
    let (r, pivots) = rref_with_pivots(m);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (row, &pc) in r.rows.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    Subspace::from_span(n, &basis)
}

/// Solve the square system `a x = b`; `None` when `a` is singular.
pub fn solve(a: &[RVector], b: &[Rational]) -> Option<RVector> {
    let n = a.len();
    let mut aug: Vec<RVector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = eliminate(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::{dot, rvec};

    fn m(rows: &[&[i64]]) -> RMatrix {
        let n = rows[0].len();
        RMatrix::new(rows.iter().map(|r| rvec(r)).collect(), n)
    }

    #[test]
    fn rref_examples() {
        assert_eq!(rref(&m(&[&[2, 4], &[1, 2]])), m(&[&[1, 2]]));
        assert_eq!(rref(&RMatrix::identity(3)), RMatrix::identity(3));
        assert_eq!(rref(&m(&[&[1, 1, 0], &[0, 1, 1]])), m(&[&[1, 0, -1], &[0, 1, 1]]));
        assert_eq!(rref(&RMatrix::zero_rows(3)).nrows(), 0);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&m(&[&[0, 0, 0]]));
        assert_eq!(k.dim(), 3);
        let k = kernel(&m(&[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(k.basis().rows(), &[rvec(&[0, 0, 1])]);
        let a = m(&[&[1, 1, 1]]);
        let k = kernel(&a);
        assert_eq!(k.dim(), 2);
        for b in k.basis().rows() {
            assert!(dot(&a.rows()[0], b).is_zero());
        }
    }

    #[test]
    fn solve_square() {
        let a = vec![rvec(&[2, 1]), rvec(&[1, 3])];
        let x = solve(&a, &rvec(&[3, 5])).unwrap();
        assert_eq!(x, vec![crate::exactlin::rational::ratio(4, 5), crate::exactlin::rational::ratio(7, 5)]);
        assert!(solve(&[rvec(&[1, 1]), rvec(&[2, 2])], &rvec(&[1, 1])).is_none());
    }
}
