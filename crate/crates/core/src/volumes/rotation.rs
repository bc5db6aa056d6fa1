use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{ConicError, Result};
use crate::exactlin::rational::{from_f64_rounded, RVector};

#[derive(Clone, Debug, PartialEq)]
pub struct RotationMatrix {
    pub d: usize,
    pub entries: DMatrix<f64>,
}

impl RotationMatrix {
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.d)
            .map(|i| (0..self.d).map(|j| self.entries[(i, j)] * x[j]).sum())
            .collect()
    }

    /// `|Q^T Q - I|_F`.
    pub fn orthogonality_defect(&self) -> f64 {
        (self.entries.transpose() * &self.entries - DMatrix::identity(self.d, self.d)).norm()
    }

    pub fn determinant(&self) -> f64 {
        self.entries.clone().determinant()
    }

    /// Apply to a rational vector and round each coordinate to a dyadic
    /// rational with `bits` fractional bits.
    pub fn apply_rational(&self, v: &[crate::exactlin::Rational], bits: u32) -> RVector {
        let x: Vec<f64> = v.iter().map(crate::exactlin::rational::to_f64).collect();
        self.apply(&x).into_iter().map(|y| from_f64_rounded(y, bits)).collect()
    }
}

/// Haar-distributed element of `O(d)`: QR of a Gaussian matrix with the
/// columns of `Q` signed so that `R` has a positive diagonal.
pub fn haar_rotation<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<RotationMatrix> {
    if d == 0 {
        return Err(ConicError::input("rotation dimension must be at least 1"));
    }
    let g = DMatrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    Ok(RotationMatrix { d, entries: q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::volumes::sampling::stream_rng;

    #[test]
    fn orthogonal() {
        let mut rng = stream_rng(1, 0);
        for _ in 0..100 {
            let q = haar_rotation(6, &mut rng).unwrap();
            assert!(q.orthogonality_defect() < 1e-10);
            assert!((q.determinant().abs() - 1.0).abs() < 1e-10);
        }
        assert!(haar_rotation(0, &mut rng).is_err());
    }

    #[test]
    fn one_dimensional_signs_are_balanced() {
        let mut rng = stream_rng(2, 0);
        let n = 10_000;
        let plus = (0..n)
            .filter(|_| haar_rotation(1, &mut rng).unwrap().entries[(0, 0)] > 0.0)
            .count() as f64;
        let chi2 = (plus - n as f64 / 2.0).powi(2) / (n as f64 / 2.0) * 2.0;
        // 1 degree of freedom, 99.9% quantile
        assert!(chi2 < 10.83, "chi2 = {chi2}");
    }
}
