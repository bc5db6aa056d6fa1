//! Euclidean projection onto a cone by scanning its facial decomposition
//! `R^d = ⊔_F relint(F) + relint(N_F C)`.

use std::sync::Arc;

use nalgebra::DMatrix;

use super::sampling::{for_each_worker, gaussian_vec, SampleConfig};
use crate::cone::{Cone, Face, FaceLattice};
use crate::error::{ConicError, Result};
use crate::exactlin::rational::to_f64_vec;

/// Relative slack below which a face test counts as a tie.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

fn unit(v: &[f64]) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / n).collect()
}

fn dotf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Orthonormal rows spanning the row space of `rows` (assumed independent).
fn orthonormal_rows(rows: &[Vec<f64>], d: usize) -> Vec<Vec<f64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = DMatrix::from_fn(d, rows.len(), |i, j| rows[j][i]);
    let q = m.qr().q();
    (0..rows.len()).map(|j| q.column(j).iter().copied().collect()).collect()
}

struct FaceData {
    dim: usize,
    /// Orthonormal basis of `lin(F)`.
    basis: Vec<Vec<f64>>,
    /// For each facet not containing `F`: `<a/|a|, u_k>` over the basis.
    facets: Vec<Vec<f64>>,
    /// For each ray outside `F`: its index and `<r/|r|, u_k>` over the basis.
    rays: Vec<(usize, Vec<f64>)>,
}

/// Float data of a face lattice, prepared once for repeated projection.
pub struct Projector {
    pub lattice: Arc<FaceLattice>,
    d: usize,
    unit_rays: Vec<Vec<f64>>,
    faces: Vec<FaceData>,
}

#[derive(Clone, Debug)]
pub enum Projection {
    Unique { face: usize, p: Vec<f64> },
    /// No face or several faces passed; `margin` is the largest slack seen
    /// among failing faces, or the smallest among passing ones.
    Ambiguous { passes: usize, margin: f64 },
}

/// What the sampler hands to its visitor for every accepted draw.
pub struct Hit<'a> {
    pub face: usize,
    pub dim: usize,
    pub x: &'a [f64],
    pub p: &'a [f64],
}

impl Projector {
    pub fn new(lattice: Arc<FaceLattice>) -> Projector {
        let c = &*lattice.cone;
        let d = c.d();
        let unit_rays: Vec<Vec<f64>> = c.generators().iter().map(|r| unit(&to_f64_vec(r))).collect();
        let unit_facets: Vec<Vec<f64>> = c.inequalities().iter().map(|a| unit(&to_f64_vec(a))).collect();
        let faces = lattice
            .faces
            .iter()
            .map(|f| {
                let rows: Vec<Vec<f64>> = f.span.basis_rows().iter().map(|r| to_f64_vec(r)).collect();
                let basis = orthonormal_rows(&rows, d);
                let coords = |v: &[f64]| basis.iter().map(|u| dotf(v, u)).collect::<Vec<f64>>();
                let facets = (0..unit_facets.len())
                    .filter(|i| !f.active.contains(i))
                    .map(|i| coords(&unit_facets[i]))
                    .collect();
                let rays = (0..unit_rays.len())
                    .filter(|r| !f.rays.contains(r))
                    .map(|r| (r, coords(&unit_rays[r])))
                    .collect();
                FaceData { dim: f.dim, basis, facets, rays }
            })
            .collect();
        Projector { lattice, d, unit_rays, faces }
    }

    pub fn for_cone(c: &Cone) -> Projector {
        Projector::new(Arc::new(c.face_lattice()))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.lattice.faces[i]
    }

    pub fn face_dim(&self, i: usize) -> usize {
        self.faces[i].dim
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn project(&self, x: &[f64]) -> Projection {
        let norm = dotf(x, x).sqrt();
        let tol = MEMBERSHIP_TOL * norm.max(f64::MIN_POSITIVE);
        let rx: Vec<f64> = self.unit_rays.iter().map(|r| dotf(r, x)).collect();
        let mut found: Option<(usize, Vec<f64>, f64)> = None;
        let mut passes = 0;
        let mut best_fail = f64::NEG_INFINITY;
        let mut min_pass = f64::INFINITY;
        for (i, f) in self.faces.iter().enumerate() {
            let c: Vec<f64> = f.basis.iter().map(|u| dotf(u, x)).collect();
            let mut margin = f64::INFINITY;
            for a in &f.facets {
                margin = margin.min(-dotf(a, &c));
                if margin <= tol {
                    break;
                }
            }
            if margin > tol {
                for (r, ru) in &f.rays {
                    margin = margin.min(dotf(ru, &c) - rx[*r]);
                    if margin <= tol {
                        break;
                    }
                }
            }
            if margin > tol {
                passes += 1;
                min_pass = min_pass.min(margin);
                if found.is_none() {
                    found = Some((i, c, margin));
                }
            } else {
                best_fail = best_fail.max(margin);
            }
        }
        match (passes, found) {
            (1, Some((face, c, _))) => {
                let mut p = vec![0.0; self.d];
                for (ck, u) in c.iter().zip(&self.faces[face].basis) {
                    for (pj, uj) in p.iter_mut().zip(u) {
                        *pj += ck * uj;
                    }
                }
                Projection::Unique { face, p }
            }
            (0, _) => Projection::Ambiguous { passes: 0, margin: best_fail / norm.max(f64::MIN_POSITIVE) },
            _ => Projection::Ambiguous { passes, margin: min_pass / norm.max(f64::MIN_POSITIVE) },
        }
    }

    /// Draw `cfg.n_samples` Gaussian vectors split across worker substreams,
    /// redrawing ties, and fold every accepted draw into a per-worker
    /// accumulator. Accumulators are returned in worker order.
    pub fn sample<A, I, F>(&self, cfg: &SampleConfig, init: I, visit: F) -> Result<Vec<A>>
    where
        A: Send,
        I: Fn() -> A + Sync,
        F: Fn(&mut A, Hit<'_>) + Sync,
    {
        cfg.validate()?;
        let limit = cfg.n_samples / 1000;
        let results = for_each_worker(cfg, |rng, n| {
            let mut acc = init();
            let mut ambiguous = 0u64;
            let mut min_margin = f64::INFINITY;
            let mut done = 0;
            while done < n {
                let x = gaussian_vec(rng, self.d);
                match self.project(&x) {
                    Projection::Unique { face, p } => {
                        visit(&mut acc, Hit { face, dim: self.faces[face].dim, x: &x, p: &p });
                        done += 1;
                    }
                    Projection::Ambiguous { margin, .. } => {
                        ambiguous += 1;
                        min_margin = min_margin.min(margin.abs());
                        if ambiguous > limit {
                            break;
                        }
                    }
                }
            }
            (acc, ambiguous, min_margin)
        });
        let ambiguous: u64 = results.iter().map(|r| r.1).sum();
        if ambiguous > limit {
            let min_margin = results.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
            return Err(ConicError::Ambiguous { ambiguous, requested: cfg.n_samples, min_margin });
        }
        Ok(results.into_iter().map(|r| r.0).collect())
    }
}

/// Result of splitting `x = p + q` with `p = Π_C(x)`, `q = Π_{C°}(x)`.
#[derive(Clone, Debug)]
pub struct Moreau {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub face: Face,
}

/// One-off Moreau decomposition; for many points build a [`Projector`].
pub fn moreau_project(lattice: &FaceLattice, x: &[f64]) -> Result<Moreau> {
    let proj = Projector::new(Arc::new(lattice.clone()));
    if x.len() != proj.d || x.iter().any(|v| !v.is_finite()) {
        return Err(ConicError::input("point must be finite and of the ambient dimension"));
    }
    match proj.project(x) {
        Projection::Unique { face, p } => {
            let q = x.iter().zip(&p).map(|(a, b)| a - b).collect();
            Ok(Moreau { p, q, face: lattice.faces[face].clone() })
        }
        Projection::Ambiguous { margin, .. } => {
            Err(ConicError::Ambiguous { ambiguous: 1, requested: 1, min_margin: margin })
        }
    }
}
