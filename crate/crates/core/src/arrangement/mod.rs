//! Central hyperplane arrangements: intersection lattices, level
//! characteristic polynomials, regions, and the closed forms for the
//! reflection and generic families.

mod closed_forms;
mod families;
mod lattice;
mod regions;

pub use closed_forms::{
    cover_efron_expected_iv, expected_statdim_family, family_level_char, generic_level_char,
};
pub use families::{generic_hyperplane, named_family, random_generic, Family, FamilySpec};
pub use lattice::{
    bivariate_poly, char_poly, intersection_lattice, level_char_poly, Flat, IntersectionLattice,
};
pub use regions::{chambers, regions_j, zaslavsky_count, Region};

use serde_json::{json, Value};

use crate::error::{ConicError, Result};
use crate::exactlin::rational::{matrix_from_json, matrix_to_json, sign_canonical, RVector};
use crate::exactlin::{rank_of, Subspace};

/// Hyperplanes `{x : <a, x> = 0}` stored by primitive normals whose first
/// nonzero entry is positive, without repeats.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrangement {
    d: usize,
    normals: Vec<RVector>,
}

impl Arrangement {
    pub fn new(d: usize, normals: &[RVector]) -> Result<Arrangement> {
        let mut out: Vec<RVector> = Vec::with_capacity(normals.len());
        for a in normals {
            if a.len() != d {
                return Err(ConicError::input(format!(
                    "normal of length {} in ambient dimension {d}",
                    a.len()
                )));
            }
            let c = sign_canonical(a).ok_or_else(|| ConicError::input("zero hyperplane normal"))?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        Ok(Arrangement { d, normals: out })
    }

    pub fn empty(d: usize) -> Arrangement {
        Arrangement { d, normals: Vec::new() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn normals(&self) -> &[RVector] {
        &self.normals
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.normals, self.d)
    }

    /// Every set of at most `d` normals is linearly independent.
    pub fn is_generic(&self) -> bool {
        fn rec(a: &Arrangement, start: usize, chosen: &mut Vec<RVector>) -> bool {
            if chosen.len() == a.d {
                return true;
            }
            for i in start..a.normals.len() {
                chosen.push(a.normals[i].clone());
                let ok = rank_of(chosen, a.d) == chosen.len() && rec(a, i + 1, chosen);
                chosen.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        rec(self, 0, &mut Vec::new())
    }

    /// `A^L = {H ∩ L : L ⊄ H}` in the coordinates of the RREF basis of `L`.
    pub fn restriction(&self, l: &Subspace) -> Result<Arrangement> {
        if l.dim_ambient() != self.d {
            return Err(ConicError::input("subspace lives in a different ambient space"));
        }
        let restricted: Vec<RVector> = self
            .normals
            .iter()
            .map(|a| l.restrict_form(a))
            .filter(|v| v.iter().any(|x| !num_traits::Zero::is_zero(x)))
            .collect();
        Arrangement::new(l.dim(), &restricted)
    }

    /// `A × B = {H × R^e} ∪ {R^d × H'}`.
    pub fn product(&self, other: &Arrangement) -> Arrangement {
        let d = self.d + other.d;
        let zero = || vec![crate::exactlin::Rational::default(); d];
        let mut normals = Vec::with_capacity(self.len() + other.len());
        for a in &self.normals {
            let mut v = zero();
            v[..self.d].clone_from_slice(a);
            normals.push(v);
        }
        for b in &other.normals {
            let mut v = zero();
            v[self.d..].clone_from_slice(b);
            normals.push(v);
        }
        Arrangement { d, normals }
    }

    pub fn from_json(v: &Value) -> Result<Arrangement> {
        let d = v
            .get("d")
            .and_then(Value::as_u64)
            .ok_or_else(|| ConicError::Parse("arrangement needs a nonnegative integer \"d\"".into()))?;
        let normals = v
            .get("normals")
            .map(matrix_from_json)
            .transpose()?
            .ok_or_else(|| ConicError::Parse("arrangement needs \"normals\"".into()))?;
        Arrangement::new(d as usize, &normals)
    }

    pub fn from_json_str(s: &str) -> Result<Arrangement> {
        Arrangement::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> Value {
        json!({ "d": self.d, "normals": matrix_to_json(&self.normals) })
    }
}
