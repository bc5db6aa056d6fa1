use num_traits::Zero;

use super::matrix::{kernel, rref, solve, RMatrix};
use super::rational::{axpy, dot, RVector, Rational};

/// Linear subspace of `Q^d` stored by the RREF basis of its row space.
///
/// The RREF is unique, so two subspaces are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    dim_ambient: usize,
    basis: RMatrix,
}

impl Subspace {
    pub fn from_span(dim_ambient: usize, vectors: &[RVector]) -> Self {
        let basis = rref(&RMatrix::new(vectors.to_vec(), dim_ambient));
        Subspace { dim_ambient, basis }
    }

    pub fn full(d: usize) -> Self {
        Subspace { dim_ambient: d, basis: RMatrix::identity(d) }
    }

    pub fn zero(d: usize) -> Self {
        Subspace { dim_ambient: d, basis: RMatrix::zero_rows(d) }
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn basis(&self) -> &RMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> &[RVector] {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.dim_ambient
    }

    pub fn orthogonal_complement(&self) -> Subspace {
        kernel(&self.basis)
    }

    /// Membership test: `v` is in the span iff appending it does not raise
    /// the rank.
    pub fn contains(&self, v: &[Rational]) -> bool {
        // An RREF basis makes this a reduction against pivots.
        let mut r = v.to_vec();
        for row in self.basis.rows() {
            let pc = row.iter().position(|x| !x.is_zero()).expect("RREF rows are nonzero");
            if !r[pc].is_zero() {
                let f = -r[pc].clone();
                r = axpy(&r, &f, row);
            }
        }
        r.iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.rows().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.rows().to_vec();
        rows.extend(other.basis.rows().iter().cloned());
        Subspace::from_span(self.dim_ambient, &rows)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.orthogonal_complement()
            .sum(&other.orthogonal_complement())
            .orthogonal_complement()
    }

    /// Orthogonal projection of `v` onto the subspace, in exact arithmetic.
    pub fn project(&self, v: &[Rational]) -> RVector {
        let b = self.basis.rows();
        if b.is_empty() {
            return vec![Rational::zero(); self.dim_ambient];
        }
        let gram: Vec<RVector> = b.iter().map(|x| b.iter().map(|y| dot(x, y)).collect()).collect();
        let rhs: RVector = b.iter().map(|x| dot(x, v)).collect();
        let coeffs = solve(&gram, &rhs).expect("basis rows are independent");
        let mut p = vec![Rational::zero(); self.dim_ambient];
        for (c, row) in coeffs.iter().zip(b) {
            p = axpy(&p, c, row);
        }
        p
    }

    /// Coordinates of `v` with respect to the basis rows: for `v = B^T y`, the
    /// linear form `x -> <a, x>` restricted to the subspace has coefficient
    /// vector `B a`.
    pub fn restrict_form(&self, a: &[Rational]) -> RVector {
        self.basis.mul_vec(a)
    }
}
