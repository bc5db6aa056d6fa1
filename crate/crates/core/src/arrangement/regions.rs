use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::lattice::intersection_lattice;
use super::Arrangement;
use crate::cone::Cone;
use crate::error::{ConicError, Result};
use crate::exactlin::rational::{dot, neg, scale, RVector, Rational};
use crate::exactlin::{strict_witness, Subspace};

/// Closure of a connected component of the complement of an arrangement
/// restricted to one of its flats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    /// Sign of each ambient hyperplane on the relative interior, `0` for the
    /// hyperplanes containing the flat.
    pub sign_vector: Vec<i8>,
    pub cone: Cone,
    pub flat: Subspace,
}

fn signed(a: &[Rational], s: i8) -> RVector {
    if s > 0 {
        a.to_vec()
    } else {
        neg(a)
    }
}

/// Sign vectors of the chambers, by inserting one hyperplane at a time and
/// splitting every chamber the new hyperplane cuts.
fn chamber_signs(a: &Arrangement) -> Vec<Vec<i8>> {
    let d = a.d();
    // each chamber carries a strictly interior witness point
    let mut cells: Vec<(Vec<i8>, RVector)> = vec![(Vec::new(), vec![Rational::zero(); d])];
    for (i, h) in a.normals().iter().enumerate() {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for (signs, w) in cells {
            let system: Vec<RVector> = signs
                .iter()
                .enumerate()
                .map(|(k, &s)| signed(&a.normals()[k], s))
                .collect();
            let side = |s: i8| -> Option<RVector> {
                let mut sys = system.clone();
                sys.push(signed(h, s));
                strict_witness(&sys, d)
            };
            let hw = dot(h, &w);
            let (plus, minus) = if hw.is_positive() {
                (Some(w), side(-1))
            } else if hw.is_negative() {
                (side(1), Some(w))
            } else {
                (side(1), side(-1))
            };
            for (s, wit) in [(1i8, plus), (-1i8, minus)] {
                if let Some(wit) = wit {
                    let mut sv = signs.clone();
                    sv.push(s);
                    next.push((sv, wit));
                }
            }
        }
        cells = next;
        debug_assert!(cells.iter().all(|(s, _)| s.len() == i + 1));
    }
    let mut out: Vec<Vec<i8>> = cells.into_iter().map(|(s, _)| s).collect();
    out.sort();
    out
}

fn chamber_cone(a: &Arrangement, signs: &[i8]) -> Result<Cone> {
    // sign · <a, x> >= 0  <=>  <-sign · a, x> <= 0
    let normals: Vec<RVector> = signs
        .iter()
        .zip(a.normals())
        .map(|(&s, n)| signed(n, -s))
        .collect();
    Cone::from_inequalities(&normals, a.d())
}

pub fn chambers(a: &Arrangement) -> Result<Vec<Region>> {
    chamber_signs(a)
        .into_iter()
        .map(|sign_vector| {
            let cone = chamber_cone(a, &sign_vector)?;
            Ok(Region { sign_vector, cone, flat: Subspace::full(a.d()) })
        })
        .collect()
}

/// `R_j`: the chambers of `A^L` for every `j`-flat `L`, as cones in the
/// ambient space.
pub fn regions_j(a: &Arrangement, j: usize) -> Result<Vec<Region>> {
    let d = a.d();
    if j > d {
        return Err(ConicError::domain(format!("level {j} exceeds dimension {d}")));
    }
    let lat = intersection_lattice(a);
    let flats: Vec<_> = lat.level(j).map(|i| lat.flats[i].clone()).collect();
    let per_flat: Vec<Result<Vec<Region>>> = flats
        .par_iter()
        .map(|flat| {
            let l = &flat.subspace;
            let basis = l.basis_rows();
            let lift = |y: &RVector| -> RVector {
                basis
                    .iter()
                    .zip(y)
                    .fold(vec![Rational::zero(); d], |acc, (b, c)| {
                        acc.iter().zip(scale(b, c)).map(|(x, z)| x + z).collect()
                    })
            };
            let restricted = a.restriction(l)?;
            let mut out = Vec::new();
            for local in chambers(&restricted)? {
                let rays: Vec<RVector> = local.cone.generators().iter().map(&lift).collect();
                let lin: Vec<RVector> = local.cone.lineality().basis_rows().iter().map(&lift).collect();
                let cone = Cone::from_generators(&rays, &lin, d)?;
                // a relative-interior point: the sum of the extreme rays
                let interior = rays.iter().fold(vec![Rational::zero(); d], |acc, r| {
                    acc.iter().zip(r).map(|(x, y)| x + y).collect()
                });
                let sign_vector = a
                    .normals()
                    .iter()
                    .enumerate()
                    .map(|(i, n)| {
                        if flat.defining_set.contains(&i) {
                            0
                        } else {
                            let v = dot(n, &interior);
                            if v.is_positive() {
                                1
                            } else if v.is_negative() {
                                -1
                            } else {
                                0
                            }
                        }
                    })
                    .collect();
                out.push(Region { sign_vector, cone, flat: l.clone() });
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for r in per_flat {
        all.extend(r?);
    }
    Ok(all)
}

/// `r_j = (-1)^j χ_j(-1)`.
pub fn zaslavsky_count(a: &Arrangement, j: usize) -> Result<BigInt> {
    let chi = intersection_lattice(a).level_char_poly(j)?;
    let v = chi.eval(&BigInt::from(-1));
    Ok(if j % 2 == 1 { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{named_family, Family};
    use crate::exactlin::rational::rvec;

    #[test]
    fn chamber_counts() {
        let three = Arrangement::new(2, &[rvec(&[1, 0]), rvec(&[0, 1]), rvec(&[1, 1])]).unwrap();
        assert_eq!(chambers(&three).unwrap().len(), 6);
        let braid = named_family(&Family::Braid, 3).unwrap();
        assert_eq!(chambers(&braid).unwrap().len(), 6);
        assert_eq!(regions_j(&braid, 2).unwrap().len(), 6);
        let empty = Arrangement::empty(3);
        let ch = chambers(&empty).unwrap();
        assert_eq!(ch.len(), 1);
        assert_eq!(ch[0].cone, Cone::full(3));
    }

    #[test]
    fn zaslavsky_examples() {
        let braid = named_family(&Family::Braid, 3).unwrap();
        assert_eq!(zaslavsky_count(&braid, 3).unwrap(), BigInt::from(6));
        let bc = named_family(&Family::BC, 2).unwrap();
        assert_eq!(zaslavsky_count(&bc, 2).unwrap(), BigInt::from(8));
        for j in 0..=2 {
            let r = regions_j(&bc, j).unwrap();
            assert_eq!(BigInt::from(r.len()), zaslavsky_count(&bc, j).unwrap());
        }
    }

    #[test]
    fn region_cones_match_signs() {
        let bc = named_family(&Family::BC, 2).unwrap();
        for r in regions_j(&bc, 1).unwrap() {
            assert_eq!(r.cone.dim(), 1);
            for g in r.cone.generators() {
                for (n, &s) in bc.normals().iter().zip(&r.sign_vector) {
                    let v = dot(n, g);
                    assert!(s == 0 && v.is_zero() || (s > 0) == v.is_positive() || v.is_zero());
                }
            }
        }
    }
}
