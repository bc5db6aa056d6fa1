//! Random rotations: kinematic and Crofton formulas, and the finite
//! double-counting identity behind them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::faces::describe;
use super::report::{ReportBuilder, VerificationReport};
use crate::cone::{cones_transverse, Cone};
use crate::error::{ConicError, Result};
use crate::exactlin::rational::{to_f64, Rational};
use crate::volumes::{
    derive_seed, estimate_iv, exact_iv, haar_rotation, linear_se, proportion_se, stream_rng, RotationMatrix, SampleConfig,
};

/// Fractional bits kept when rounding rotated generators to rationals.
pub const DYADIC_BITS: u32 = 40;
/// Redraws allowed per trial before a degenerate configuration is reported.
const MAX_REDRAWS: u64 = 64;

pub const DEFAULT_TRIALS: u64 = 512;
pub const DEFAULT_INNER_SAMPLES: u64 = 4096;

/// `Q D` with every generator rounded to the dyadic grid.
pub fn rotate_cone(c: &Cone, q: &RotationMatrix) -> Result<Cone> {
    let rays: Vec<_> = c.generators().iter().map(|g| q.apply_rational(g, DYADIC_BITS)).collect();
    let lin: Vec<_> = c.lineality().basis_rows().iter().map(|g| q.apply_rational(g, DYADIC_BITS)).collect();
    Cone::from_generators(&rays, &lin, c.d())
}

/// Intrinsic volumes used on the right-hand side: closed form when the cone
/// is recognized, Monte Carlo otherwise.
#[derive(Clone, Debug)]
struct Volumes {
    values: Vec<f64>,
    n: Option<u64>,
}

fn volumes_of(c: &Cone, cfg: &SampleConfig) -> Result<Volumes> {
    if let Some(e) = exact_iv(c) {
        return Ok(Volumes { values: e.values, n: None });
    }
    let e = estimate_iv(c, cfg)?;
    Ok(Volumes { values: e.values, n: Some(e.n_samples) })
}

/// `Σ_m w_m v_m(C × D)` with its delta-method standard error.
fn product_functional(a: &Volumes, b: &Volumes, w: &[f64]) -> (f64, f64) {
    let conv = |x: &[f64], y: &[f64], m: usize| -> f64 {
        (0..x.len()).filter(|&i| m >= i && m - i < y.len()).map(|i| x[i] * y[m - i]).sum()
    };
    let value: f64 = w.iter().enumerate().map(|(m, wm)| wm * conv(&a.values, &b.values, m)).sum();
    // ∂/∂a_i = Σ_m w_m b_{m-i}
    let grad = |x: &Volumes, y: &Volumes| -> Vec<f64> {
        (0..x.values.len())
            .map(|i| {
                (0..y.values.len())
                    .map(|j| w.get(i + j).copied().unwrap_or(0.0) * y.values[j])
                    .sum()
            })
            .collect()
    };
    let mut var = 0.0;
    if let Some(n) = a.n {
        var += linear_se(&grad(a, b), &a.values, n).powi(2);
    }
    if let Some(n) = b.n {
        var += linear_se(&grad(b, a), &b.values, n).powi(2);
    }
    (value, var.sqrt())
}

fn indicator(len: usize, pick: impl Fn(usize) -> bool) -> Vec<f64> {
    (0..len).map(|m| f64::from(u8::from(pick(m)))).collect()
}

/// Draws a rotation for trial `trial` and hands `Q D` to `accept`; `None`
/// means the configuration was degenerate and is redrawn.
fn with_rotation<T>(
    d_cone: &Cone,
    seed: u64,
    tag: &str,
    trial: u64,
    accept: impl Fn(&Cone) -> Result<Option<T>>,
) -> Result<(T, u64)> {
    let base = derive_seed(seed, tag, trial);
    for attempt in 0..MAX_REDRAWS {
        let mut rng = stream_rng(base, attempt);
        let q = haar_rotation(d_cone.d(), &mut rng)?;
        let qd = rotate_cone(d_cone, &q)?;
        if let Some(v) = accept(&qd)? {
            return Ok((v, attempt));
        }
    }
    Err(ConicError::Ambiguous { ambiguous: MAX_REDRAWS, requested: 1, min_margin: 0.0 })
}

struct TwoLevel {
    mean: f64,
    se: f64,
    outer_var: f64,
    inner_var: f64,
    redraws: u64,
}

/// Runs `trials` rotations, each yielding an inner estimate and its
/// binomial variance.
fn two_level(
    trials: u64,
    inner: u64,
    per_trial: impl Fn(u64) -> Result<((f64, f64), u64)> + Sync,
) -> Result<TwoLevel> {
    if trials < 2 {
        return Err(ConicError::input("at least two rotations are needed"));
    }
    let results: Vec<Result<((f64, f64), u64)>> = (0..trials).into_par_iter().map(&per_trial).collect();
    let mut xs = Vec::with_capacity(trials as usize);
    let (mut inner_var, mut redraws) = (0.0, 0);
    for r in results {
        let ((x, v), extra) = r?;
        xs.push(x);
        inner_var += v;
        redraws += extra;
    }
    let t = trials as f64;
    let mean = xs.iter().sum::<f64>() / t;
    let outer_var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (t - 1.0);
    let se = (outer_var / t).sqrt().max(1.0 / (t * inner as f64));
    Ok(TwoLevel { mean, se, outer_var, inner_var: inner_var / t, redraws })
}

fn check_pair(c: &Cone, d_cone: &Cone, k: usize) -> Result<()> {
    if c.d() != d_cone.d() {
        return Err(ConicError::input(format!("ambient dimensions differ: {} vs {}", c.d(), d_cone.d())));
    }
    if k > c.d() {
        return Err(ConicError::input(format!("k = {k} exceeds the ambient dimension {}", c.d())));
    }
    Ok(())
}

/// Inner estimate of `v_k(K)` and its binomial variance.
fn inner_estimate(k_cone: &Cone, k: usize, cfg: &SampleConfig) -> Result<(f64, f64)> {
    let e = estimate_iv(k_cone, cfg)?;
    Ok((e.values[k], e.std_errors[k].powi(2)))
}

fn pair_target(c: &Cone, d_cone: &Cone) -> String {
    format!("C: {}; D: {}", describe(c), describe(d_cone))
}

/// `E[v_k(C ∩ QD)] = v_{k+d}(C × D)` for `k > 0` and
/// `E[v_0(C ∩ QD)] = Σ_{j≤d} v_j(C × D)`.
pub fn verify_kinematic(c: &Cone, d_cone: &Cone, k: usize, trials: u64, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    check_pair(c, d_cone, k)?;
    let d = c.d();
    let stats = two_level(trials, cfg.n_samples, |t| {
        with_rotation(d_cone, cfg.seed, "kinematic-rotation", t, |qd| {
            let inter = c.intersect(qd)?;
            if !inter.is_zero() && !cones_transverse(c, qd)? {
                return Ok(None);
            }
            inner_estimate(&inter, k, &cfg.derive("kinematic-inner", t)).map(Some)
        })
    })?;
    let vc = volumes_of(c, &cfg.derive("kinematic-c", 0))?;
    let vd = volumes_of(d_cone, &cfg.derive("kinematic-d", 0))?;
    let w = if k > 0 { indicator(2 * d + 1, |m| m == k + d) } else { indicator(2 * d + 1, |m| m <= d) };
    let (rhs, rhs_se) = product_functional(&vc, &vd, &w);

    let mut b = ReportBuilder::new("kinematic", format!("{}, k={k}", pair_target(c, d_cone)), cfg).trials(trials);
    let label = if k > 0 { format!("E v_{k}(C cap QD) = v_{}(C x D)", k + d) } else { "E v_0(C cap QD) = sum_{j<=d} v_j(C x D)".into() };
    b.statistical(label, stats.mean, rhs, (stats.se.powi(2) + rhs_se.powi(2)).sqrt());
    if d_cone.is_subspace() {
        // reduced form for D = L of codimension m
        let m = d - d_cone.dim();
        let crofton: f64 = if k > 0 {
            vc.values.get(k + m).copied().unwrap_or(0.0)
        } else {
            vc.values[..=m].iter().sum()
        };
        b.closed_form("product form = subspace form", rhs, crofton);
    }
    b.note(format!(
        "outer variance {:.6e}, mean inner variance {:.6e}, redraws {}",
        stats.outer_var, stats.inner_var, stats.redraws
    ));
    Ok(b.finish())
}

/// `E[v_{d-k}(C + QD)] = v_{d-k}(C × D)` for `k > 0` and
/// `E[v_d(C + QD)] = Σ_{j≤d} v_{d+j}(C × D)`.
pub fn verify_polar_kinematic(
    c: &Cone,
    d_cone: &Cone,
    k: usize,
    trials: u64,
    cfg: &SampleConfig,
) -> Result<VerificationReport> {
    cfg.validate()?;
    check_pair(c, d_cone, k)?;
    let d = c.d();
    let c_polar = c.polar();
    let stats = two_level(trials, cfg.n_samples, |t| {
        with_rotation(d_cone, cfg.seed, "polar-kinematic-rotation", t, |qd| {
            let qd_polar = qd.polar();
            if c_polar.meets_nontrivially(&qd_polar)? && !cones_transverse(&c_polar, &qd_polar)? {
                return Ok(None);
            }
            let sum = c.minkowski_sum(qd)?;
            inner_estimate(&sum, d - k, &cfg.derive("polar-kinematic-inner", t)).map(Some)
        })
    })?;
    let vc = volumes_of(c, &cfg.derive("polar-kinematic-c", 0))?;
    let vd = volumes_of(d_cone, &cfg.derive("polar-kinematic-d", 0))?;
    let w = if k > 0 { indicator(2 * d + 1, |m| m == d - k) } else { indicator(2 * d + 1, |m| m >= d) };
    let (rhs, rhs_se) = product_functional(&vc, &vd, &w);
    let mut b =
        ReportBuilder::new("polar-kinematic", format!("{}, k={k}", pair_target(c, d_cone)), cfg).trials(trials);
    let label = if k > 0 {
        format!("E v_{}(C + QD) = v_{}(C x D)", d - k, d - k)
    } else {
        format!("E v_{d}(C + QD) = sum_j v_(d+j)(C x D)")
    };
    b.statistical(label, stats.mean, rhs, (stats.se.powi(2) + rhs_se.powi(2)).sqrt());
    b.note(format!(
        "outer variance {:.6e}, mean inner variance {:.6e}, redraws {}",
        stats.outer_var, stats.inner_var, stats.redraws
    ));
    Ok(b.finish())
}

/// `P{C ∩ QD ≠ 0} = 2 Σ_{i odd} v_{d+i}(C × D)`, deciding every rotation
/// exactly.
pub fn verify_crofton_probability(c: &Cone, d_cone: &Cone, trials: u64, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    check_pair(c, d_cone, 0)?;
    let b = ReportBuilder::new("crofton-probability", pair_target(c, d_cone), cfg).trials(trials);
    if c.is_subspace() && d_cone.is_subspace() {
        return Ok(b.skip("both cones are linear subspaces"));
    }
    if trials == 0 {
        return Err(ConicError::input("at least one rotation is needed"));
    }
    let d = c.d();
    let outcomes: Vec<Result<(bool, u64)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            with_rotation(d_cone, cfg.seed, "crofton-rotation", t, |qd| {
                let inter = c.intersect(qd)?;
                if inter.is_zero() {
                    return Ok(Some(false));
                }
                Ok(cones_transverse(c, qd)?.then_some(true))
            })
        })
        .collect();
    let (mut hits, mut redraws) = (0u64, 0u64);
    for o in outcomes {
        let (hit, extra) = o?;
        hits += u64::from(hit);
        redraws += extra;
    }
    let p = hits as f64 / trials as f64;
    let vc = volumes_of(c, &cfg.derive("crofton-c", 0))?;
    let vd = volumes_of(d_cone, &cfg.derive("crofton-d", 0))?;
    let w = indicator(2 * d + 1, |m| m > d && (m - d) % 2 == 1);
    let (tail, tail_se) = product_functional(&vc, &vd, &w);
    let mut b = b;
    b.statistical(
        "P{C cap QD != 0} = 2 sum_odd v_(d+i)(C x D)",
        p,
        2.0 * tail,
        (proportion_se(p, trials).powi(2) + (2.0 * tail_se).powi(2)).sqrt(),
    );
    b.note(format!("{hits} of {trials} rotations hit, redraws {redraws}"));
    Ok(b.finish())
}

/// `E_γ |M ∩ γN| = |M||N| / |Ω|` for a transitive permutation group.
pub fn verify_finite_double_count(
    omega_size: usize,
    m: &[usize],
    n: &[usize],
    group: &[Vec<usize>],
) -> Result<VerificationReport> {
    if omega_size == 0 {
        return Err(ConicError::input("the ground set must be nonempty"));
    }
    if group.is_empty() {
        return Err(ConicError::input("the group must contain at least the identity"));
    }
    for g in group {
        let image: BTreeSet<usize> = g.iter().copied().collect();
        if g.len() != omega_size || image.len() != omega_size || image.iter().any(|&x| x >= omega_size) {
            return Err(ConicError::input("every group element must be a permutation of the ground set"));
        }
    }
    let elements: BTreeSet<&Vec<usize>> = group.iter().collect();
    for a in group {
        for b in group {
            let ab: Vec<usize> = b.iter().map(|&x| a[x]).collect();
            if !elements.contains(&ab) {
                return Err(ConicError::input("the permutation list is not closed under composition"));
            }
        }
    }
    let orbit: BTreeSet<usize> = group.iter().map(|g| g[0]).collect();
    if orbit.len() != omega_size {
        return Err(ConicError::domain("the group does not act transitively"));
    }
    let m_set: BTreeSet<usize> = m.iter().copied().collect();
    let n_set: BTreeSet<usize> = n.iter().copied().collect();
    if m_set.iter().chain(&n_set).any(|&x| x >= omega_size) {
        return Err(ConicError::input("subset element outside the ground set"));
    }
    let total: usize = group
        .iter()
        .map(|g| n_set.iter().filter(|&&x| m_set.contains(&g[x])).count())
        .sum();
    let lhs = Rational::new(BigInt::from(total), BigInt::from(group.len()));
    let rhs = Rational::new(BigInt::from(m_set.len() * n_set.len()), BigInt::from(omega_size));
    let cfg = SampleConfig { n_samples: 0, ..Default::default() };
    let mut b = ReportBuilder::new(
        "finite-double-count",
        format!("|Omega|={omega_size}, |M|={}, |N|={}, |G|={}", m_set.len(), n_set.len(), group.len()),
        &cfg,
    );
    b.exact("E|M cap gN| = |M||N|/|Omega|", to_f64(&lhs), to_f64(&rhs), lhs == rhs);
    b.note(format!("{lhs} vs {rhs}"));
    Ok(b.finish())
}

/// The cyclic group `Z/n` acting on `{0, .., n-1}` by rotation.
pub fn cyclic_group(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|s| (0..n).map(|x| (x + s) % n).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::rvec;

    #[test]
    fn product_functional_exact() {
        let o = Volumes { values: vec![0.25, 0.5, 0.25], n: None };
        // v_3(C × D) for two quadrants: v_1 v_2 + v_2 v_1
        let (v, se) = product_functional(&o, &o, &indicator(5, |m| m == 3));
        assert_eq!(v, 0.25);
        assert_eq!(se, 0.0);
        let tail = product_functional(&o, &o, &indicator(5, |m| m > 2 && (m - 2) % 2 == 1)).0;
        // two random quarter arcs overlap with probability 1/2
        assert_eq!(2.0 * tail, 0.5);
    }

    #[test]
    fn finite_double_count_examples() {
        let g = cyclic_group(4);
        let r = verify_finite_double_count(4, &[0, 1], &[1, 2], &g).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs, vec![1.0]);
        let r = verify_finite_double_count(4, &[0, 1, 2, 3], &[2], &g).unwrap();
        assert_eq!(r.rhs, vec![1.0]);
        let r = verify_finite_double_count(4, &[], &[2], &g).unwrap();
        assert_eq!(r.lhs, vec![0.0]);
        // the subgroup {0, 2} is not transitive on four points
        let half = vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1]];
        assert!(matches!(verify_finite_double_count(4, &[0], &[1], &half), Err(ConicError::Domain(_))));
        assert!(verify_finite_double_count(3, &[0], &[1], &[vec![1, 2, 0]]).is_err());
    }

    #[test]
    fn rotation_preserves_cone_type() {
        let mut rng = stream_rng(4, 0);
        let q = haar_rotation(3, &mut rng).unwrap();
        let half = Cone::from_inequalities(&[rvec(&[0, 0, 1])], 3).unwrap();
        let r = rotate_cone(&half, &q).unwrap();
        assert_eq!(r.lineality_dim(), 2);
        assert_eq!(r.dim(), 3);
        let o = rotate_cone(&Cone::orthant(3), &q).unwrap();
        assert_eq!(o.generators().len(), 3);
    }
}
