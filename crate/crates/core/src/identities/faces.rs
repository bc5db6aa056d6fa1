//! Identities over the face lattice of a single cone.

use super::bank::{sign, Bank, Combo};
use super::report::{ReportBuilder, VerificationReport};
use crate::cone::{Cone, Face};
use crate::error::{ConicError, Result};
use crate::volumes::{exact_iv, external_angle, internal_angle, AngleValue, Projector, SampleConfig};

pub const DEFAULT_GENFUN_GRID: [f64; 4] = [-1.0, -0.5, 0.5, 1.0];

pub fn describe(c: &Cone) -> String {
    format!(
        "cone d={} dim={} rays={} lineality={}",
        c.d(),
        c.dim(),
        c.generators().len(),
        c.lineality_dim()
    )
}

fn exact_builder(name: &str, c: &Cone) -> ReportBuilder {
    ReportBuilder::new(name, describe(c), &SampleConfig { n_samples: 0, ..Default::default() })
}

/// `Σ (-1)^i f_i` equals `(-1)^{dim C}` for subspaces and `0` otherwise.
pub fn verify_euler(c: &Cone) -> VerificationReport {
    let lat = c.face_lattice();
    let mut b = exact_builder("euler", c);
    let (sum, expected) = (lat.euler_sum(), lat.euler_expected());
    b.exact("sum (-1)^i f_i", sum as f64, expected as f64, sum == expected);
    b.note(format!("f = {:?}", lat.f_vector));
    b.finish()
}

fn dim_coeffs(d: usize, f: impl Fn(usize) -> f64) -> Vec<f64> {
    (0..=d).map(f).collect()
}

/// Pushes one statistical check `lhs = rhs` of two bank functionals.
fn compare(b: &mut ReportBuilder, bank: &Bank, label: &str, lhs: &Combo, rhs: &Combo) {
    let se = lhs.minus(rhs).se(bank);
    b.statistical(label, lhs.value(bank), rhs.value(bank), se);
}

pub fn verify_sommerville(c: &Cone, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let mut b = ReportBuilder::new("sommerville", describe(c), cfg);
    if c.lineality_dim() > 0 {
        b.exact("v_0(C) = sum (-1)^dim F v_0(F)", 0.0, 0.0, true);
        b.note("nonzero lineality: both sides vanish");
        return Ok(b.finish());
    }
    let lat = c.face_lattice();
    let mut bank = Bank::new(cfg, "sommerville");
    let e0 = dim_coeffs(c.d(), |k| f64::from(u8::from(k == 0)));
    let top = bank.index(c)?;
    let mut lhs = Combo::new();
    lhs.add_dims(&bank, top, &e0, 1.0);
    let mut rhs = Combo::new();
    for f in &lat.faces {
        let i = bank.index(&f.cone)?;
        rhs.add_dims(&bank, i, &e0, sign(f.dim));
    }
    compare(&mut b, &bank, "v_0(C) = sum (-1)^dim F v_0(F)", &lhs, &rhs);
    b.note(format!("{} cones sampled", bank.len()));
    Ok(b.finish())
}

/// `(-1)^{dim G} v_G(C) = Σ_{F ⊇ G} (-1)^{dim F} v_G(F)`.
pub fn verify_generalized_sommerville(c: &Cone, g: &Face, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let lat = c.face_lattice();
    let gi = if *g.parent == *c { lat.index_of(g) } else { None }
        .ok_or_else(|| ConicError::domain("G is not a face of the cone"))?;
    let mut b = ReportBuilder::new("generalized-sommerville", format!("{}, dim G={}", describe(c), g.dim), cfg);
    let mut bank = Bank::new(cfg, "generalized-sommerville");
    let top = bank.index(c)?;
    let mut lhs = Combo::new();
    let at = bank.locate(top, &g.cone)?;
    lhs.add_face(&bank, top, at, sign(g.dim));
    let mut rhs = Combo::new();
    for (fi, f) in lat.faces.iter().enumerate() {
        if !lat.order[gi][fi] {
            continue;
        }
        let i = bank.index(&f.cone)?;
        let at = bank.locate(i, &g.cone)?;
        rhs.add_face(&bank, i, at, sign(f.dim));
    }
    compare(&mut b, &bank, "(-1)^dim G v_G(C) = sum (-1)^dim F v_G(F)", &lhs, &rhs);
    Ok(b.finish())
}

/// `(-1)^k v_k(C) = Σ_F (-1)^{dim F} v_k(F)`.
pub fn verify_face_alternation(c: &Cone, k: usize, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    if k > c.d() {
        return Err(ConicError::domain(format!("k = {k} exceeds the ambient dimension {}", c.d())));
    }
    let mut b = ReportBuilder::new("face-alternation", format!("{}, k={k}", describe(c)), cfg);
    let ek = dim_coeffs(c.d(), |i| f64::from(u8::from(i == k)));
    let (lhs, rhs, bank) = alternation(c, cfg, "face-alternation", &ek, &|i| ek[i] * sign(i))?;
    compare(&mut b, &bank, &format!("(-1)^{k} v_{k}(C) = sum (-1)^dim F v_{k}(F)"), &lhs, &rhs);
    Ok(b.finish())
}

/// `lhs = Σ_k w_C(k) v_k(C)` and `rhs = Σ_F (-1)^{dim F} Σ_k w(k) v_k(F)`.
fn alternation(
    c: &Cone,
    cfg: &SampleConfig,
    tag: &'static str,
    face_weights: &[f64],
    cone_weights: &dyn Fn(usize) -> f64,
) -> Result<(Combo, Combo, Bank)> {
    let lat = c.face_lattice();
    let mut bank = Bank::new(cfg, tag);
    let top = bank.index(c)?;
    let mut lhs = Combo::new();
    lhs.add_dims(&bank, top, &dim_coeffs(c.d(), cone_weights), 1.0);
    let mut rhs = Combo::new();
    for f in &lat.faces {
        let i = bank.index(&f.cone)?;
        rhs.add_dims(&bank, i, face_weights, sign(f.dim));
    }
    Ok((lhs, rhs, bank))
}

pub fn verify_gauss_bonnet(c: &Cone, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let lat = c.face_lattice();
    let expected = lat.euler_expected() as f64;
    let mut b = ReportBuilder::new("gauss-bonnet", describe(c), cfg);
    let f_side = lat.euler_sum() as f64;
    b.exact("sum (-1)^i f_i", f_side, expected, f_side == expected);
    let mut bank = Bank::new(cfg, "gauss-bonnet");
    let top = bank.index(c)?;
    let mut v = Combo::new();
    v.add_dims(&bank, top, &dim_coeffs(c.d(), sign), 1.0);
    b.statistical("sum (-1)^i v_i", v.value(&bank), expected, v.se(&bank));
    Ok(b.finish())
}

/// `Σ (-1)^k k v_k(C) = Σ_F (-1)^{dim F} δ(F)`, plus the parity forms over
/// proper faces.
pub fn verify_statdim_alternation(c: &Cone, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let d = c.d();
    let mut b = ReportBuilder::new("statdim-alternation", describe(c), cfg);
    let ks = dim_coeffs(d, |k| k as f64);
    let (lhs, rhs, bank) = alternation(c, cfg, "statdim-alternation", &ks, &|k| sign(k) * k as f64)?;
    compare(&mut b, &bank, "sum (-1)^k k v_k = sum (-1)^dim F delta(F)", &lhs, &rhs);

    // the same sum over proper faces only
    let m = c.dim();
    let mut proper = rhs.clone();
    // C was the first cone entered into the bank
    let top = 0;
    proper.add_dims(&bank, top, &ks, -sign(m));
    let mut parity = Combo::new();
    let (label, keep_odd, scale) = if m % 2 == 1 {
        ("2 sum_even k v_k = sum_{F<C} (-1)^dim F delta(F)", false, 2.0)
    } else {
        ("-2 sum_odd k v_k = sum_{F<C} (-1)^dim F delta(F)", true, -2.0)
    };
    parity.add_dims(&bank, top, &dim_coeffs(d, |k| if (k % 2 == 1) == keep_odd { k as f64 } else { 0.0 }), scale);
    compare(&mut b, &bank, label, &parity, &proper);
    Ok(b.finish())
}

/// `E[(-1)^{V_C} e^{t V_C}] = Σ_F (-1)^{dim F} E[e^{t V_F}]`.
pub fn verify_genfun_alternation(c: &Cone, t: f64, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    if !t.is_finite() {
        return Err(ConicError::domain("t must be finite"));
    }
    let mut b = ReportBuilder::new("genfun-alternation", format!("{}, t={t}", describe(c)), cfg);
    let w = dim_coeffs(c.d(), |k| (t * k as f64).exp());
    let (lhs, rhs, bank) = alternation(c, cfg, "genfun-alternation", &w, &|k| sign(k) * w[k])?;
    compare(&mut b, &bank, &format!("E[(-1)^V e^(tV)] at t={t}"), &lhs, &rhs);
    Ok(b.finish())
}

/// `s(t) = (1 - e^{-2t}) / 2`.
pub fn steiner_s(t: f64) -> f64 {
    (1.0 - (-2.0 * t).exp()) / 2.0
}

#[derive(Clone)]
struct MgfTally {
    by_dim: Vec<u64>,
    /// per t: Σ e^{s|p|^2}, Σ (e^{s|p|^2})^2, Σ D, Σ D^2 with D = e^{s|p|^2} - e^{t k}
    mgf: Vec<[f64; 4]>,
    /// Σ |p|^2 - k and its square
    second: [f64; 2],
}

/// Sampled `E[e^{s |Π_C g|^2}]` against `Σ v̂_k e^{tk}` and against
/// `Σ v̂_k (1-2s)^{-k/2}`, plus `E|Π_C g|^2 = Σ k v̂_k`, on the same draws.
pub fn verify_steiner_mgf(c: &Cone, t_grid: &[f64], cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let ss: Vec<f64> = t_grid.iter().map(|&t| steiner_s(t)).collect();
    if let Some(i) = ss.iter().position(|s| !(s.is_finite() && *s < 0.5)) {
        return Err(ConicError::domain(format!("t = {} gives s = {} >= 1/2", t_grid[i], ss[i])));
    }
    let d = c.d();
    let proj = Projector::for_cone(c);
    let nt = t_grid.len();
    let parts = proj.sample(
        &cfg.derive("steiner-mgf", 0),
        || MgfTally { by_dim: vec![0; d + 1], mgf: vec![[0.0; 4]; nt], second: [0.0; 2] },
        |acc, hit| {
            let sq: f64 = hit.p.iter().map(|x| x * x).sum();
            let k = hit.dim as f64;
            acc.by_dim[hit.dim] += 1;
            for ((m, &t), &s) in acc.mgf.iter_mut().zip(t_grid).zip(&ss) {
                let x = (s * sq).exp();
                let diff = x - (t * k).exp();
                m[0] += x;
                m[1] += x * x;
                m[2] += diff;
                m[3] += diff * diff;
            }
            acc.second[0] += sq - k;
            acc.second[1] += (sq - k) * (sq - k);
        },
    )?;
    let n = cfg.n_samples as f64;
    let mut by_dim = vec![0u64; d + 1];
    let mut mgf = vec![[0.0; 4]; nt];
    let mut second = [0.0; 2];
    for p in &parts {
        for (a, b) in by_dim.iter_mut().zip(&p.by_dim) {
            *a += b;
        }
        for (a, b) in mgf.iter_mut().zip(&p.mgf) {
            for j in 0..4 {
                a[j] += b[j];
            }
        }
        second[0] += p.second[0];
        second[1] += p.second[1];
    }
    let v: Vec<f64> = by_dim.iter().map(|&x| x as f64 / n).collect();
    let paired_se = |s1: f64, s2: f64| ((s2 / n - (s1 / n).powi(2)).max(0.0) / n).sqrt().max(1.0 / n);
    let exact = exact_iv(c);

    let mut b = ReportBuilder::new("steiner-mgf", describe(c), cfg);
    for ((&t, &s), m) in t_grid.iter().zip(&ss).zip(&mgf) {
        let via_t: f64 = v.iter().enumerate().map(|(k, vk)| vk * (t * k as f64).exp()).sum();
        let via_s: f64 = v.iter().enumerate().map(|(k, vk)| vk * (1.0 - 2.0 * s).powf(-(k as f64) / 2.0)).sum();
        let lhs = m[0] / n;
        b.statistical(format!("E e^(s|Pg|^2) = sum v_k e^(tk), t={t}"), lhs, via_t, paired_se(m[2], m[3]));
        b.closed_form(format!("sum v_k e^(tk) = sum v_k (1-2s)^(-k/2), t={t}"), via_t, via_s);
        if let Some(e) = &exact {
            let reference: f64 = e.values.iter().enumerate().map(|(k, vk)| vk * (t * k as f64).exp()).sum();
            b.statistical(format!("E e^(s|Pg|^2) vs exact volumes, t={t}"), lhs, reference, paired_se(m[0], m[1]));
        }
        if 4.0 * s >= 1.0 {
            b.note(format!("t={t}: e^(s|Pg|^2) has infinite variance, its standard error is unreliable"));
        }
    }
    let delta: f64 = v.iter().enumerate().map(|(k, vk)| k as f64 * vk).sum();
    b.statistical("E|P_C g|^2 = sum k v_k", delta + second[0] / n, delta, paired_se(second[0], second[1]));
    Ok(b.finish())
}

fn product_term(a: AngleValue, b: AngleValue) -> (f64, f64, bool) {
    let var = (b.value * a.std_error).powi(2) + (a.value * b.std_error).powi(2);
    (a.value * b.value, var, a.exact && b.exact)
}

/// Both incidence-algebra inverse relations between internal and external
/// angles, for every face `G` of `C`:
/// `Σ_{G≤F≤C} (-1)^{dim F - dim G} β(G,F) γ(F,C) = [G = C]` and
/// `Σ_{G≤F≤C} (-1)^{dim C - dim F} γ(G,F) β(F,C) = [G = C]`.
pub fn verify_mcmullen_inverse(c: &Cone, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let lat = c.face_lattice();
    let nf = lat.faces.len();
    let mut b = ReportBuilder::new("mcmullen-inverse", describe(c), cfg);

    // β(F, C) and γ(F, C) for every face F
    let mut beta_top = Vec::with_capacity(nf);
    let mut gamma_top = Vec::with_capacity(nf);
    for (i, f) in lat.faces.iter().enumerate() {
        beta_top.push(internal_angle(f, c, &cfg.derive("beta-top", i as u64))?);
        gamma_top.push(external_angle(f, c, &cfg.derive("gamma-top", i as u64))?);
    }
    let top_dim = c.dim();
    let mut all_exact = true;
    for gi in 0..nf {
        let g = &lat.faces[gi];
        let (mut s1, mut v1, mut s2, mut v2) = (0.0, 0.0, 0.0, 0.0);
        let mut exact = true;
        for fi in 0..nf {
            if !lat.order[gi][fi] {
                continue;
            }
            let f = &lat.faces[fi];
            let inner = f.cone.face_from_cone(&g.cone)?;
            let pair = (gi * nf + fi) as u64;
            let beta_gf = internal_angle(&inner, &f.cone, &cfg.derive("beta", pair))?;
            let gamma_gf = external_angle(&inner, &f.cone, &cfg.derive("gamma", pair))?;
            let (t1, w1, e1) = product_term(beta_gf, gamma_top[fi]);
            let (t2, w2, e2) = product_term(gamma_gf, beta_top[fi]);
            s1 += sign(f.dim - g.dim) * t1;
            v1 += w1;
            s2 += sign(top_dim - f.dim) * t2;
            v2 += w2;
            exact &= e1 && e2;
        }
        let expected = f64::from(u8::from(gi == nf - 1));
        let label = format!("face {gi} (dim {})", g.dim);
        if exact {
            b.closed_form(format!("beta*gamma, {label}"), s1, expected);
            b.closed_form(format!("gamma*beta, {label}"), s2, expected);
        } else {
            let floor = 1.0 / cfg.n_samples as f64;
            b.statistical(format!("beta*gamma, {label}"), s1, expected, v1.sqrt().max(floor));
            b.statistical(format!("gamma*beta, {label}"), s2, expected, v2.sqrt().max(floor));
        }
        all_exact &= exact;
    }
    if all_exact {
        b.note("every angle has a closed form");
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::rvec;
    use crate::exactlin::Subspace;

    fn cfg() -> SampleConfig {
        SampleConfig::new(20_000, 3)
    }

    #[test]
    fn euler_examples() {
        let sq = Cone::from_generators(
            &[rvec(&[1, 0, 0]), rvec(&[1, 1, 0]), rvec(&[1, 1, 1]), rvec(&[1, 0, 1])],
            &[],
            3,
        )
        .unwrap();
        for c in [Cone::orthant(3), Cone::subspace(&Subspace::from_span(3, &[rvec(&[1, 0, 0]), rvec(&[0, 1, 0])])), sq] {
            let r = verify_euler(&c);
            assert!(r.passed(), "{}", r.to_table());
        }
    }

    #[test]
    fn sommerville_half_line_and_half_plane() {
        let half_line = Cone::from_inequalities(&[rvec(&[1])], 1).unwrap();
        let r = verify_sommerville(&half_line, &cfg()).unwrap();
        assert!(r.passed(), "{}", r.to_table());
        assert!((r.lhs[0] - 0.5).abs() < 0.02);
        let half_plane = Cone::from_inequalities(&[rvec(&[0, -1])], 2).unwrap();
        let r = verify_sommerville(&half_plane, &cfg()).unwrap();
        assert_eq!(r.residual_or_z, vec![0.0]);
    }

    #[test]
    fn statdim_parity_forms() {
        for c in [Cone::orthant(2), Cone::orthant(3)] {
            let r = verify_statdim_alternation(&c, &cfg()).unwrap();
            assert!(r.passed(), "{}", r.to_table());
            assert_eq!(r.checks.len(), 2);
        }
    }

    #[test]
    fn steiner_rejects_large_s() {
        assert!(verify_steiner_mgf(&Cone::orthant(2), &[f64::INFINITY], &cfg()).is_err());
        let r = verify_steiner_mgf(&Cone::orthant(2), &[0.0], &cfg()).unwrap();
        assert_eq!(r.checks[0].lhs, 1.0);
        assert_eq!(r.checks[0].rhs, 1.0);
    }

    #[test]
    fn mcmullen_half_line() {
        let half_line = Cone::from_inequalities(&[rvec(&[-1])], 1).unwrap();
        let r = verify_mcmullen_inverse(&half_line, &cfg()).unwrap();
        assert!(r.passed(), "{}", r.to_table());
        assert_eq!(r.checks.len(), 4);
        assert!(r.checks.iter().all(|c| c.std_error.is_none()));
    }
}
