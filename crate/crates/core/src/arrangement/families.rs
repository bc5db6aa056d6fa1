use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::{intersection_lattice, Arrangement};
use crate::error::{ConicError, Result};
use crate::exactlin::rational::{rat, RVector};
use crate::exactlin::Subspace;
use crate::volumes::stream_rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `x_i = x_j`.
    Braid,
    /// `x_i = ±x_j`, `x_i = 0`.
    BC,
    /// `x_i = ±x_j`.
    D,
    /// `n` random small-integer hyperplanes in general position.
    Generic { n: usize, seed: u64 },
}

/// A family together with its ambient dimension, e.g. `braid:4` or
/// `generic:n=5,d=3,seed=7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub d: usize,
}

impl FamilySpec {
    pub fn materialize(&self) -> Result<Arrangement> {
        named_family(&self.family, self.d)
    }
}

impl FromStr for FamilySpec {
    type Err = ConicError;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let bad = || ConicError::Parse(format!("bad family spec {s:?}; expected braid:D, bc:D, d:D or generic:n=N,d=D[,seed=S]"));
        let (name, params) = s.split_once(':').ok_or_else(bad)?;
        let int = |v: &str| v.trim().parse::<u64>().map_err(|_| bad());
        match name.trim().to_ascii_lowercase().as_str() {
            "braid" => Ok(FamilySpec { family: Family::Braid, d: int(params)? as usize }),
            "bc" | "b" => Ok(FamilySpec { family: Family::BC, d: int(params)? as usize }),
            "d" => Ok(FamilySpec { family: Family::D, d: int(params)? as usize }),
            "generic" => {
                let (mut n, mut d, mut seed) = (None, None, 0);
                for kv in params.split(',') {
                    let (k, v) = kv.split_once('=').ok_or_else(bad)?;
                    match k.trim() {
                        "n" => n = Some(int(v)? as usize),
                        "d" => d = Some(int(v)? as usize),
                        "seed" => seed = int(v)?,
                        _ => return Err(bad()),
                    }
                }
                let (n, d) = (n.ok_or_else(bad)?, d.ok_or_else(bad)?);
                Ok(FamilySpec { family: Family::Generic { n, seed }, d })
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Braid => write!(f, "braid:{}", self.d),
            Family::BC => write!(f, "bc:{}", self.d),
            Family::D => write!(f, "d:{}", self.d),
            Family::Generic { n, seed } => write!(f, "generic:n={n},d={},seed={seed}", self.d),
        }
    }
}

fn pair(d: usize, i: usize, j: usize, sign: i64) -> RVector {
    let mut v = vec![rat(0); d];
    v[i] = rat(1);
    v[j] = rat(sign);
    v
}

pub fn named_family(family: &Family, d: usize) -> Result<Arrangement> {
    if d == 0 {
        return Err(ConicError::domain("family dimension must be at least 1"));
    }
    let mut normals = Vec::new();
    match *family {
        Family::Braid => {
            for i in 0..d {
                for j in i + 1..d {
                    normals.push(pair(d, i, j, -1));
                }
            }
        }
        Family::BC | Family::D => {
            if *family == Family::D && d < 2 {
                return Err(ConicError::domain("family D needs d >= 2"));
            }
            if *family == Family::BC {
                for i in 0..d {
                    normals.push(crate::exactlin::rational::unit(d, i));
                }
            }
            for i in 0..d {
                for j in i + 1..d {
                    normals.push(pair(d, i, j, -1));
                    normals.push(pair(d, i, j, 1));
                }
            }
        }
        Family::Generic { n, seed } => return random_generic(n, d, seed),
    }
    Arrangement::new(d, &normals)
}

/// A hyperplane `H` in general position relative to `a`: it contains no
/// flat of positive dimension, so `L ↦ L ∩ H` drops every such dimension by one.
pub fn generic_hyperplane(a: &Arrangement, seed: u64) -> Subspace {
    let lat = intersection_lattice(a);
    let mut rng = stream_rng(seed, 1);
    loop {
        let h: RVector = (0..a.d()).map(|_| rat(rng.random_range(-5..=5))).collect();
        if h.iter().all(num_traits::Zero::is_zero) {
            continue;
        }
        let plane = Subspace::from_span(a.d(), std::slice::from_ref(&h)).orthogonal_complement();
        let transverse = lat
            .flats
            .iter()
            .filter(|f| f.dim() > 0)
            .all(|f| f.subspace.intersection(&plane).dim() + 1 == f.dim());
        if transverse {
            return plane;
        }
    }
}

/// `n` hyperplanes with normals drawn uniformly from `{-3..3}^d`, redrawn
/// until every set of at most `d` normals is independent.
pub fn random_generic(n: usize, d: usize, seed: u64) -> Result<Arrangement> {
    if n < d {
        return Err(ConicError::domain(format!("a generic arrangement needs n >= d, got n={n}, d={d}")));
    }
    if d == 1 && n > 1 {
        return Err(ConicError::domain("R^1 has only one hyperplane"));
    }
    let mut rng = stream_rng(seed, 0);
    let mut normals: Vec<RVector> = Vec::with_capacity(n);
    while normals.len() < n {
        let v: RVector = (0..d).map(|_| rat(rng.random_range(-3..=3))).collect();
        normals.push(v);
        let ok = Arrangement::new(d, &normals).is_ok_and(|a| a.len() == normals.len() && a.is_generic());
        if !ok {
            normals.pop();
        }
    }
    Arrangement::new(d, &normals)
}
