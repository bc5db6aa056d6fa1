//! Identities for hyperplane arrangements and their regions.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::report::{ReportBuilder, VerificationReport};
use crate::arrangement::{
    chambers, cover_efron_expected_iv, expected_statdim_family, family_level_char, generic_level_char,
    intersection_lattice, named_family, random_generic, regions_j, Arrangement, Family, FamilySpec, Region,
};
use crate::cone::Cone;
use crate::error::{ConicError, Result};
use crate::exactlin::rational::{to_f64, Rational};
use crate::volumes::{derive_seed, estimate_iv, IVEstimate, SampleConfig};

fn describe(a: &Arrangement) -> String {
    format!("arrangement d={} n={}", a.d(), a.len())
}

fn exact_cfg() -> SampleConfig {
    SampleConfig { n_samples: 0, ..Default::default() }
}

fn big_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// One Monte Carlo estimate per cone, each on its own derived seed.
fn estimate_all(cones: &[&Cone], cfg: &SampleConfig, tag: &str) -> Result<Vec<IVEstimate>> {
    cones
        .par_iter()
        .enumerate()
        .map(|(i, c)| estimate_iv(c, &cfg.derive(tag, i as u64)))
        .collect()
}

/// `|R_j| = (-1)^j χ_j(-1)` for every level `j`.
pub fn verify_zaslavsky(a: &Arrangement) -> Result<VerificationReport> {
    let lat = intersection_lattice(a);
    let mut b = ReportBuilder::new("zaslavsky", describe(a), &exact_cfg());
    for j in 0..=a.d() {
        let count = regions_j(a, j)?.len();
        let chi = lat.level_char_poly(j)?.eval(&BigInt::from(-1));
        let expected = if j % 2 == 1 { -chi } else { chi };
        b.exact(format!("|R_{j}| = (-1)^{j} chi_{j}(-1)"), count as f64, big_f64(&expected), BigInt::from(count) == expected);
    }
    Ok(b.finish())
}

/// Closed-form level characteristic polynomials of a named family against
/// the Möbius sums over its intersection lattice.
pub fn verify_family_level_char(spec: &FamilySpec) -> Result<VerificationReport> {
    let a = spec.materialize()?;
    let lat = intersection_lattice(&a);
    let mut b = ReportBuilder::new("family-level-char", spec.to_string(), &exact_cfg());
    for j in 0..=spec.d {
        let brute = lat.level_char_poly(j)?;
        let closed = family_level_char(&spec.family, spec.d, j)?;
        let at = BigInt::from(2);
        b.exact(
            format!("chi_{j}: closed form = lattice"),
            big_f64(&closed.eval(&at)),
            big_f64(&brute.eval(&at)),
            closed == brute,
        );
        if closed != brute {
            b.note(format!("j={j}: closed {closed} vs lattice {brute}"));
        }
    }
    Ok(b.finish())
}

/// Generic-arrangement closed form for `χ_j` against the lattice.
pub fn verify_generic_level_char(a: &Arrangement) -> Result<VerificationReport> {
    let b = ReportBuilder::new("generic-level-char", describe(a), &exact_cfg());
    if !a.is_generic() || a.len() < a.d() {
        return Ok(b.skip("arrangement is not in general position with n >= d"));
    }
    let mut b = b;
    let lat = intersection_lattice(a);
    for j in 1..=a.d() {
        let brute = lat.level_char_poly(j)?;
        let closed = generic_level_char(a.len(), a.d(), j)?;
        let at = BigInt::from(2);
        b.exact(format!("chi_{j}: closed form = lattice"), big_f64(&closed.eval(&at)), big_f64(&brute.eval(&at)), closed == brute);
    }
    Ok(b.finish())
}

/// `Σ_{F ∈ R_j} v_k(F) = (-1)^{j-k} a_{jk}` for `0 ≤ k ≤ j`.
pub fn verify_klivans_swartz(a: &Arrangement, j: usize, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    if j > a.d() {
        return Err(ConicError::domain(format!("level {j} exceeds dimension {}", a.d())));
    }
    let lat = intersection_lattice(a);
    let chi = lat.level_char_poly(j)?;
    let regions = regions_j(a, j)?;
    let mut b = ReportBuilder::new("klivans-swartz", format!("{}, j={j}", describe(a)), cfg);
    let r_expected = {
        let v = chi.eval(&BigInt::from(-1));
        if j % 2 == 1 {
            -v
        } else {
            v
        }
    };
    b.exact(
        "|R_j| = (-1)^j chi_j(-1)",
        regions.len() as f64,
        big_f64(&r_expected),
        BigInt::from(regions.len()) == r_expected,
    );
    let ell = lat.ell(j);
    let leading = chi.coeff(j);
    b.exact("a_jj = l_j", big_f64(&leading), ell as f64, leading == BigInt::from(ell));

    let cones: Vec<&Cone> = regions.iter().map(|r| &r.cone).collect();
    let est = estimate_all(&cones, cfg, "klivans-swartz")?;
    for k in 0..=j {
        let sum: f64 = est.iter().map(|e| e.values[k]).sum();
        let se = est.iter().map(|e| e.std_errors[k].powi(2)).sum::<f64>().sqrt();
        let a_jk = chi.coeff(k);
        let target = if (j - k) % 2 == 1 { -a_jk } else { a_jk };
        b.statistical(format!("sum_R v_{k} = (-1)^(j-k) a_j{k}"), sum, big_f64(&target), se);
    }
    b.note(format!("{} regions", regions.len()));
    Ok(b.finish())
}

/// Mean intrinsic volumes of the chambers of a random generic arrangement
/// against `C(n-1, d-1)/r` and `C(n, d-k)/r`.
pub fn verify_hug_schneider(n: usize, d: usize, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let expected = cover_efron_expected_iv(n, d)?;
    let a = random_generic(n, d, derive_seed(cfg.seed, "hug-schneider", 0))?;
    let ch = chambers(&a)?;
    let r = ch.len();
    let mut b = ReportBuilder::new("hug-schneider", format!("generic n={n} d={d}"), cfg);
    let count: BigInt = (0..d).map(|k| crate::poly::binomial(n - 1, k)).fold(BigInt::zero(), |x, y| x + y) * 2;
    b.exact("number of chambers", r as f64, big_f64(&count), BigInt::from(r) == count);
    let cones: Vec<&Cone> = ch.iter().map(|c| &c.cone).collect();
    let est = estimate_all(&cones, cfg, "hug-schneider")?;
    for (k, e_k) in expected.iter().enumerate() {
        let mean = est.iter().map(|e| e.values[k]).sum::<f64>() / r as f64;
        let se = est.iter().map(|e| e.std_errors[k].powi(2)).sum::<f64>().sqrt() / r as f64;
        b.statistical(format!("mean v_{k}"), mean, to_f64(e_k), se);
    }
    b.note(format!("normals {:?}", a.normals().iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()));
    Ok(b.finish())
}

/// `-χ_j'(-1) / χ_j(-1)`, the mean statistical dimension of `R_j`.
fn log_derivative_at_minus_one(a: &Arrangement, j: usize) -> Result<Rational> {
    let chi = intersection_lattice(a).level_char_poly(j)?;
    let m1 = BigInt::from(-1);
    let value = chi.eval(&m1);
    let deriv = chi
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .fold(BigInt::zero(), |acc, (k, c)| {
            let p = if (k - 1) % 2 == 0 { BigInt::from(k) } else { -BigInt::from(k) };
            acc + c * p
        });
    if value.is_zero() {
        return Err(ConicError::domain(format!("no regions of dimension {j}")));
    }
    Ok(-Rational::new(deriv, value))
}

/// Mean statistical dimension of the `j`-dimensional regions of the braid
/// (`H_j`) or BC (`H_j / 2`) arrangement in `R^{j+1}`.
pub fn verify_family_statdim(family: &Family, j: usize, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let expected = expected_statdim_family(family, j)?;
    let d = j + 1;
    let a = named_family(family, d)?;
    let spec = FamilySpec { family: *family, d };
    let regions: Vec<Region> = regions_j(&a, j)?;
    let mut b = ReportBuilder::new("family-statdim", format!("{spec}, j={j}"), cfg);
    let exact = log_derivative_at_minus_one(&a, j)?;
    b.exact("-chi_j'(-1)/chi_j(-1) = expected", to_f64(&exact), to_f64(&expected), exact == expected);
    let cones: Vec<&Cone> = regions.iter().map(|r| &r.cone).collect();
    let est = estimate_all(&cones, cfg, "family-statdim")?;
    let r = est.len() as f64;
    let mean = est.iter().map(|e| e.mean_sq_norm).sum::<f64>() / r;
    let se = est.iter().map(|e| e.mean_sq_norm_se.powi(2)).sum::<f64>().sqrt() / r;
    b.statistical("mean delta over R_j", mean, to_f64(&expected), se);
    b.note(format!("{} regions, expected {}", regions.len(), expected));
    Ok(b.finish())
}
