//! The full identity battery over the bundled library.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::arrangements::*;
use super::faces::*;
use super::kinematic::*;
use super::report::VerificationReport;
use crate::arrangement::{Family, FamilySpec};
use crate::cone::Cone;
use crate::error::Result;
use crate::exactlin::rational::rvec;
use crate::exactlin::Subspace;
use crate::library::{arrangement_library, cone_library};
use crate::volumes::SampleConfig;

/// Target probability that the battery reports any failure for correct code.
pub const FAMILY_WISE_ERROR: f64 = 0.01;

pub const STEINER_GRID: [f64; 3] = [-1.0, -0.5, 0.3];

/// Two-sided z threshold at which `m` checks fail jointly with probability
/// at most `alpha` under the normal approximation (Bonferroni).
pub fn bonferroni_sigmas(alpha: f64, m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    Normal::standard().inverse_cdf(1.0 - alpha / (2.0 * m as f64))
}

/// Bonferroni bound on the family-wise error of `m` checks at threshold `z`.
pub fn family_wise_bound(z: f64, m: usize) -> f64 {
    (2.0 * m as f64 * (1.0 - Normal::standard().cdf(z))).min(1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub reports: Vec<VerificationReport>,
    pub statistical_checks: usize,
    pub tolerance_sigmas: f64,
    pub family_wise_bound: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(VerificationReport::passed)
    }
}

type Job<'a> = Box<dyn Fn(&SampleConfig) -> Result<VerificationReport> + 'a>;

fn kinematic_pairs() -> Vec<(Cone, Cone)> {
    let line = Cone::subspace(&Subspace::from_span(3, &[rvec(&[2, -1, 3])]));
    let half_space = Cone::from_inequalities(&[rvec(&[0, 0, -1])], 3).expect("valid half-space");
    vec![(Cone::orthant(2), Cone::orthant(2)), (Cone::orthant(3), half_space), (Cone::orthant(3), line)]
}

/// Runs every identity on the bundled cones and arrangements plus the
/// kinematic pairs and the named families. Every statistical check is then
/// graded at `max(cfg.tolerance_sigmas, bonferroni_sigmas(FAMILY_WISE_ERROR, m))`
/// where `m` is the number of statistical checks actually run.
pub fn run_suite(cfg: &SampleConfig, trials: u64) -> Result<SuiteResult> {
    cfg.validate()?;
    let cones = cone_library()?;
    let arrangements = arrangement_library()?;
    let pairs = kinematic_pairs();
    let inner = cfg.with_samples(cfg.n_samples.min(DEFAULT_INNER_SAMPLES));
    let mut jobs: Vec<Job> = Vec::new();

    for (_, c) in &cones {
        jobs.push(Box::new(move |_| Ok(verify_euler(c))));
        jobs.push(Box::new(move |cfg| verify_sommerville(c, cfg)));
        jobs.push(Box::new(move |cfg| verify_gauss_bonnet(c, cfg)));
        jobs.push(Box::new(move |cfg| verify_statdim_alternation(c, cfg)));
        jobs.push(Box::new(move |cfg| verify_steiner_mgf(c, &STEINER_GRID, cfg)));
        for k in 0..=c.dim() {
            jobs.push(Box::new(move |cfg| verify_face_alternation(c, k, cfg)));
        }
        for t in DEFAULT_GENFUN_GRID {
            jobs.push(Box::new(move |cfg| verify_genfun_alternation(c, t, cfg)));
        }
        if let Some(g) = c.face_lattice().faces_of_dim(c.lineality_dim() + 1).next().cloned() {
            jobs.push(Box::new(move |cfg| verify_generalized_sommerville(c, &g, cfg)));
        }
        if c.d() <= 3 {
            jobs.push(Box::new(move |cfg| verify_mcmullen_inverse(c, cfg)));
        }
    }
    for (_, a) in &arrangements {
        jobs.push(Box::new(move |_| verify_zaslavsky(a)));
        jobs.push(Box::new(move |_| verify_generic_level_char(a)));
        for j in 0..=a.d() {
            jobs.push(Box::new(move |cfg| verify_klivans_swartz(a, j, cfg)));
        }
    }
    let families = (1..=5)
        .map(|d| (Family::Braid, d))
        .chain((1..=4).map(|d| (Family::BC, d)))
        .chain((2..=4).map(|d| (Family::D, d)));
    for (family, d) in families {
        jobs.push(Box::new(move |_| verify_family_level_char(&FamilySpec { family, d })));
    }
    for family in [Family::Braid, Family::BC] {
        for j in 1..=3 {
            jobs.push(Box::new(move |cfg| verify_family_statdim(&family, j, cfg)));
        }
    }
    for (n, d) in [(2, 2), (3, 2), (4, 2), (4, 3)] {
        jobs.push(Box::new(move |cfg| verify_hug_schneider(n, d, cfg)));
    }
    for (c, dc) in &pairs {
        for k in 0..=c.d() {
            let inner = &inner;
            jobs.push(Box::new(move |cfg| verify_kinematic(c, dc, k, trials, &SampleConfig { seed: cfg.seed, ..*inner })));
            jobs.push(Box::new(move |cfg| {
                verify_polar_kinematic(c, dc, k, trials, &SampleConfig { seed: cfg.seed, ..*inner })
            }));
        }
        jobs.push(Box::new(move |cfg| verify_crofton_probability(c, dc, trials, cfg)));
    }
    let c4 = cyclic_group(4);
    let c6 = cyclic_group(6);
    jobs.push(Box::new(move |_| verify_finite_double_count(4, &[0, 1], &[0, 2], &c4)));
    jobs.push(Box::new(move |_| verify_finite_double_count(6, &[0, 1, 2], &[1, 4], &c6)));

    let mut reports = jobs
        .iter()
        .enumerate()
        .map(|(i, job)| job(&cfg.derive("suite", i as u64)))
        .collect::<Result<Vec<_>>>()?;
    let m: usize = reports.iter().map(VerificationReport::n_statistical).sum();
    let tol = cfg.tolerance_sigmas.max(bonferroni_sigmas(FAMILY_WISE_ERROR, m));
    for r in &mut reports {
        r.regrade(tol);
    }
    Ok(SuiteResult { reports, statistical_checks: m, tolerance_sigmas: tol, family_wise_bound: family_wise_bound(tol, m) })
}
