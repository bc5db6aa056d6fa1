use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cone::{Cone, FaceLattice};
use crate::error::{ConicError, Result};
use crate::volumes::{linear_se, IVEstimate, Projector, SampleConfig};

/// Monte Carlo estimates of the face probabilities `v_F(K)` for every cone
/// `K` an identity touches. Each distinct cone is sampled once, with a seed
/// derived from the order of first use.
pub(crate) struct Bank {
    cfg: SampleConfig,
    tag: &'static str,
    entries: Vec<Entry>,
}

pub(crate) struct Entry {
    pub cone: Cone,
    pub lattice: Arc<FaceLattice>,
    pub est: IVEstimate,
}

impl Bank {
    pub fn new(cfg: &SampleConfig, tag: &'static str) -> Bank {
        Bank { cfg: *cfg, tag, entries: Vec::new() }
    }

    pub fn index(&mut self, c: &Cone) -> Result<usize> {
        if let Some(i) = self.entries.iter().position(|e| e.cone == *c) {
            return Ok(i);
        }
        let proj = Projector::for_cone(c);
        let est = IVEstimate::from_projector(&proj, &self.cfg.derive(self.tag, self.entries.len() as u64))?;
        self.entries.push(Entry { cone: c.clone(), lattice: proj.lattice.clone(), est });
        Ok(self.entries.len() - 1)
    }

    pub fn entry(&self, i: usize) -> &Entry {
        &self.entries[i]
    }

    /// Lattice position of the face of cone `i` whose cone equals `g`.
    pub fn locate(&self, i: usize, g: &Cone) -> Result<usize> {
        self.entries[i]
            .lattice
            .faces
            .iter()
            .position(|f| f.cone == *g)
            .ok_or_else(|| ConicError::Invariant("face not found in the lattice of a containing face".into()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

/// `Σ_K Σ_F c_{K,F} v_F(K)` over cones held in a [`Bank`].
#[derive(Clone, Debug, Default)]
pub(crate) struct Combo {
    terms: BTreeMap<usize, Vec<f64>>,
}

impl Combo {
    pub fn new() -> Combo {
        Combo::default()
    }

    fn slot<'a>(&'a mut self, bank: &Bank, i: usize) -> &'a mut Vec<f64> {
        let n = bank.entry(i).lattice.faces.len();
        self.terms.entry(i).or_insert_with(|| vec![0.0; n])
    }

    pub fn add_face(&mut self, bank: &Bank, i: usize, face: usize, c: f64) {
        self.slot(bank, i)[face] += c;
    }

    /// Adds `scale · Σ_k coeffs[k] v_k(K_i)`.
    pub fn add_dims(&mut self, bank: &Bank, i: usize, coeffs: &[f64], scale: f64) {
        let dims: Vec<usize> = bank.entry(i).est.face_dims.clone();
        let slot = self.slot(bank, i);
        for (s, k) in slot.iter_mut().zip(dims) {
            *s += scale * coeffs.get(k).copied().unwrap_or(0.0);
        }
    }

    pub fn value(&self, bank: &Bank) -> f64 {
        self.terms
            .iter()
            .map(|(&i, c)| {
                let e = &bank.entry(i).est;
                c.iter().enumerate().map(|(f, x)| x * e.face_value(f)).sum::<f64>()
            })
            .sum()
    }

    /// Standard errors of independent cones combined in quadrature; cones
    /// whose coefficients cancel contribute nothing.
    pub fn se(&self, bank: &Bank) -> f64 {
        let mut var = 0.0;
        let mut n_max = 1u64;
        for (&i, c) in &self.terms {
            let e = &bank.entry(i).est;
            n_max = n_max.max(e.n_samples);
            if c.iter().all(|x| *x == 0.0) {
                continue;
            }
            let values: Vec<f64> = (0..c.len()).map(|f| e.face_value(f)).collect();
            var += linear_se(c, &values, e.n_samples).powi(2);
        }
        var.sqrt().max(1.0 / n_max as f64)
    }

    pub fn minus(&self, other: &Combo) -> Combo {
        let mut out = self.clone();
        for (&i, c) in &other.terms {
            let slot = out.terms.entry(i).or_insert_with(|| vec![0.0; c.len()]);
            for (a, b) in slot.iter_mut().zip(c) {
                *a -= b;
            }
        }
        out
    }
}

pub(crate) fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

