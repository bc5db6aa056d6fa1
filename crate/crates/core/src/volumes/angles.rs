use serde::Serialize;

use super::estimate::estimate_iv;
use super::exact::exact_iv;
use super::sampling::SampleConfig;
use crate::cone::{normal_face, Cone, Face};
use crate::error::{ConicError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngleValue {
    pub value: f64,
    pub std_error: f64,
    pub exact: bool,
}

fn check_face(c: &Cone, f: &Face) -> Result<()> {
    if *f.parent != *c {
        return Err(ConicError::domain("face does not belong to this cone"));
    }
    Ok(())
}

/// `T_F C`: keep only the constraints active on `relint(F)`.
pub fn tangent_cone(c: &Cone, f: &Face) -> Result<Cone> {
    check_face(c, f)?;
    let active: Vec<_> = f.active.iter().map(|&i| c.inequalities()[i].clone()).collect();
    Cone::from_h(&active, c.equalities().basis_rows(), c.d())
}

/// `α(C) = v_{dim C}(C)`, exact when the cone is recognized.
pub fn solid_angle(c: &Cone, cfg: &SampleConfig) -> Result<AngleValue> {
    let k = c.dim();
    if let Some(e) = exact_iv(c) {
        return Ok(AngleValue { value: e.values[k], std_error: 0.0, exact: true });
    }
    let e = estimate_iv(c, cfg)?;
    Ok(AngleValue { value: e.values[k], std_error: e.std_errors[k], exact: false })
}

/// `β(F, C) = α(T_F C)`.
pub fn internal_angle(f: &Face, c: &Cone, cfg: &SampleConfig) -> Result<AngleValue> {
    solid_angle(&tangent_cone(c, f)?, cfg)
}

/// `γ(F, C) = α(N_F C)`.
pub fn external_angle(f: &Face, c: &Cone, cfg: &SampleConfig) -> Result<AngleValue> {
    solid_angle(&normal_face(c, f)?.cone, cfg)
}
