use serde::{Deserialize, Serialize};

use super::exact::IVExact;
use super::projector::Projector;
use super::sampling::SampleConfig;
use crate::cone::Cone;
use crate::error::Result;
use crate::poly::Polynomial;

/// Monte Carlo intrinsic volumes: `v_k` is the fraction of Gaussian draws
/// whose projection lands in the relative interior of a `k`-face.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IVEstimate {
    pub d: usize,
    pub values: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub n_samples: u64,
    pub seed: u64,
    pub workers: usize,
    /// Hits per face, in face-lattice order.
    pub face_hit_counts: Vec<u64>,
    pub face_dims: Vec<usize>,
    /// Mean of `|Π_C(g)|^2` over the same draws.
    pub mean_sq_norm: f64,
    pub mean_sq_norm_se: f64,
}

/// Binomial standard error of a proportion, floored at `1/n`.
pub fn proportion_se(p: f64, n: u64) -> f64 {
    let n = n as f64;
    (p * (1.0 - p) / n).sqrt().max(1.0 / n)
}

/// Standard error of `Σ c_k v̂_k` for a multinomial estimate `v̂`.
pub fn linear_se(coeffs: &[f64], values: &[f64], n: u64) -> f64 {
    let m1: f64 = coeffs.iter().zip(values).map(|(c, v)| c * v).sum();
    let m2: f64 = coeffs.iter().zip(values).map(|(c, v)| c * c * v).sum();
    ((m2 - m1 * m1).max(0.0) / n as f64).sqrt().max(1.0 / n as f64)
}

#[derive(Clone)]
struct Tally {
    faces: Vec<u64>,
    sum_sq: f64,
    sum_sq2: f64,
}

impl IVEstimate {
    pub fn from_projector(proj: &Projector, cfg: &SampleConfig) -> Result<IVEstimate> {
        let nf = proj.n_faces();
        let parts = proj.sample(
            cfg,
            || Tally { faces: vec![0; nf], sum_sq: 0.0, sum_sq2: 0.0 },
            |t, hit| {
                t.faces[hit.face] += 1;
                let s: f64 = hit.p.iter().map(|x| x * x).sum();
                t.sum_sq += s;
                t.sum_sq2 += s * s;
            },
        )?;
        let mut faces = vec![0u64; nf];
        let (mut s1, mut s2) = (0.0, 0.0);
        for t in &parts {
            for (a, b) in faces.iter_mut().zip(&t.faces) {
                *a += b;
            }
            s1 += t.sum_sq;
            s2 += t.sum_sq2;
        }
        let d = proj.d();
        let n = cfg.n_samples;
        let face_dims: Vec<usize> = (0..nf).map(|i| proj.face_dim(i)).collect();
        let mut counts = vec![0u64; d + 1];
        for (c, &k) in faces.iter().zip(&face_dims) {
            counts[k] += c;
        }
        let values: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
        let std_errors = values.iter().map(|&v| proportion_se(v, n)).collect();
        let mean = s1 / n as f64;
        let var = (s2 / n as f64 - mean * mean).max(0.0);
        Ok(IVEstimate {
            d,
            values,
            std_errors,
            n_samples: n,
            seed: cfg.seed,
            workers: cfg.workers,
            face_hit_counts: faces,
            face_dims,
            mean_sq_norm: mean,
            mean_sq_norm_se: (var / n as f64).sqrt().max(1.0 / n as f64),
        })
    }

    /// `v_F` for the face at lattice index `i`.
    pub fn face_value(&self, i: usize) -> f64 {
        self.face_hit_counts[i] as f64 / self.n_samples as f64
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

pub fn estimate_iv(c: &Cone, cfg: &SampleConfig) -> Result<IVEstimate> {
    IVEstimate::from_projector(&Projector::for_cone(c), cfg)
}

/// Either kind of intrinsic-volume vector, for the derived quantities.
#[derive(Clone, Copy, Debug)]
pub enum IVRef<'a> {
    Estimate(&'a IVEstimate),
    Exact(&'a IVExact),
}

impl<'a> From<&'a IVEstimate> for IVRef<'a> {
    fn from(v: &'a IVEstimate) -> Self {
        IVRef::Estimate(v)
    }
}

impl<'a> From<&'a IVExact> for IVRef<'a> {
    fn from(v: &'a IVExact) -> Self {
        IVRef::Exact(v)
    }
}

impl IVRef<'_> {
    pub fn values(&self) -> &[f64] {
        match self {
            IVRef::Estimate(e) => &e.values,
            IVRef::Exact(e) => &e.values,
        }
    }

    /// Value and standard error of `Σ c_k v_k` (zero error for exact input).
    pub fn functional(&self, coeffs: &[f64]) -> (f64, f64) {
        let v = self.values();
        let value = coeffs.iter().zip(v).map(|(c, x)| c * x).sum();
        match self {
            IVRef::Estimate(e) => (value, linear_se(coeffs, v, e.n_samples)),
            IVRef::Exact(_) => (value, 0.0),
        }
    }
}

/// `P_C(t) = Σ v_k t^k`.
pub fn iv_polynomial<'a>(v: impl Into<IVRef<'a>>) -> Polynomial<f64> {
    Polynomial::new(v.into().values().to_vec())
}

/// `δ(C) = Σ k v_k`, with its standard error.
pub fn statistical_dimension<'a>(v: impl Into<IVRef<'a>>) -> (f64, f64) {
    let v = v.into();
    let ks: Vec<f64> = (0..v.values().len()).map(|k| k as f64).collect();
    v.functional(&ks)
}

/// `δ(C) = E|Π_C(g)|^2`, with its standard error.
pub fn statdim_mc(c: &Cone, cfg: &SampleConfig) -> Result<(f64, f64)> {
    let e = estimate_iv(c, cfg)?;
    Ok((e.mean_sq_norm, e.mean_sq_norm_se))
}

/// `h_j = v_j + v_{j+2} + ...` for `j = 0..=d`, each with its standard
/// error. `2 h_{k+1}` is the probability that a uniformly random subspace of
/// codimension `k` meets `C` nontrivially, when `C` is not a subspace.
pub fn grassmann_angles<'a>(v: impl Into<IVRef<'a>>) -> Vec<(f64, f64)> {
    let v = v.into();
    let n = v.values().len();
    (0..n)
        .map(|j| {
            let coeffs: Vec<f64> = (0..n).map(|k| if k >= j && (k - j) % 2 == 0 { 1.0 } else { 0.0 }).collect();
            v.functional(&coeffs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::{rvec, unit};
    use crate::exactlin::Subspace;

    fn within(est: &IVEstimate, exact: &[f64]) {
        for k in 0..exact.len() {
            let z = (est.values[k] - exact[k]).abs() / est.std_errors[k];
            assert!(z < 4.0, "k={k}: {} vs {} (z={z})", est.values[k], exact[k]);
        }
    }

    #[test]
    fn subspace_is_exact() {
        let s = Cone::subspace(&Subspace::from_span(3, &[unit(3, 0), unit(3, 1)]));
        let e = estimate_iv(&s, &SampleConfig::new(2000, 3)).unwrap();
        assert_eq!(e.values, vec![0.0, 0.0, 1.0, 0.0]);
        assert!((e.values.iter().sum::<f64>() - 1.0).abs() == 0.0);
    }

    #[test]
    fn orthant_three() {
        let e = estimate_iv(&Cone::orthant(3), &SampleConfig::new(100_000, 11)).unwrap();
        within(&e, &[0.125, 0.375, 0.375, 0.125]);
        let (sd, se) = statistical_dimension(&e);
        assert!((sd - 1.5).abs() < 4.0 * se);
        assert!((e.mean_sq_norm - 1.5).abs() < 4.0 * e.mean_sq_norm_se);
    }

    #[test]
    fn planar_sixty_degrees() {
        let c = Cone::from_generators(
            &[rvec(&[1, 0]), vec![crate::exactlin::rational::ratio(1, 2), crate::exactlin::rational::rat(1)]],
            &[],
            2,
        )
        .unwrap();
        // angle of (1/2, 1) is atan(2); use the true angle as the oracle
        let theta = 2f64.atan();
        let e = estimate_iv(&c, &SampleConfig::new(100_000, 5)).unwrap();
        let pi = std::f64::consts::PI;
        within(&e, &[(pi - theta) / (2.0 * pi), 0.5, theta / (2.0 * pi)]);
    }

    #[test]
    fn deterministic_given_seed_and_workers() {
        let cfg = SampleConfig { n_samples: 5000, seed: 9, workers: 3, tolerance_sigmas: 4.0 };
        let a = estimate_iv(&Cone::orthant(2), &cfg).unwrap();
        let b = estimate_iv(&Cone::orthant(2), &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.face_hit_counts.iter().sum::<u64>(), 5000);
    }

    #[test]
    fn grassmann_orthant() {
        let e = IVExact::from_rationals(2, vec![
            crate::exactlin::rational::ratio(1, 4),
            crate::exactlin::rational::ratio(1, 2),
            crate::exactlin::rational::ratio(1, 4),
        ], super::super::exact::Provenance::Orthant);
        let h = grassmann_angles(&e);
        assert_eq!(2.0 * h[2].0, 0.5);
        assert_eq!(h[0].0, 0.5);
        let p = iv_polynomial(&e);
        assert_eq!(p.coeffs(), &[0.25, 0.5, 0.25]);
    }
}
