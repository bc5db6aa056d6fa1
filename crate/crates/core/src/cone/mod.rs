//! Polyhedral cones in both representations, their face lattices and the
//! structural maps between a cone and its polar.
//!
//! A [`Cone`] is always stored in canonical form: the equality space
//! `lin(C)^⊥` and the lineality space `C ∩ -C` as RREF subspaces, facet
//! normals projected into `lin(C)` and extreme rays projected into the
//! orthogonal complement of the lineality space, each scaled to a primitive
//! integer vector and sorted. Equal cones therefore compare equal
//! structurally, and the polar is obtained by swapping the two halves.

mod dd;
pub mod io;
mod lattice;

pub use lattice::{face_lattice, normal_face, normal_face_map, Face, FaceLattice};

use num_traits::{Signed, Zero};

use crate::error::{ConicError, Result};
use crate::exactlin::rational::{dot, is_zero_vec, primitive, RVector, Rational};
use crate::exactlin::{lp_strictly_feasible, RMatrix, Subspace};
use dd::double_description;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    d: usize,
    /// Facet normals `a` with `C ⊆ {x : <a, x> <= 0}`.
    inequalities: Vec<RVector>,
    /// `lin(C)^⊥`.
    equalities: Subspace,
    /// Extreme rays modulo the lineality space.
    generators: Vec<RVector>,
    lineality: Subspace,
}

fn check_lengths(vs: &[RVector], d: usize, what: &str) -> Result<()> {
    match vs.iter().find(|v| v.len() != d) {
        Some(v) => Err(ConicError::input(format!(
            "{what} of length {} in ambient dimension {d}",
            v.len()
        ))),
        None => Ok(()),
    }
}

/// Project every vector off `sub`, scale to primitive, sort and dedup.
/// Vectors that vanish after projection are dropped.
fn canonical_set(vectors: &[RVector], sub: &Subspace) -> Vec<RVector> {
    let mut out: Vec<RVector> = vectors
        .iter()
        .filter_map(|v| {
            let p = if sub.is_zero() {
                v.clone()
            } else {
                let q = sub.project(v);
                v.iter().zip(&q).map(|(a, b)| a - b).collect()
            };
            primitive(&p)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

impl Cone {
    /// `{x : <a_i, x> <= 0}`.
    pub fn from_inequalities(normals: &[RVector], d: usize) -> Result<Cone> {
        Cone::from_h(normals, &[], d)
    }

    /// `{x : <a_i, x> <= 0, <e_j, x> = 0}`.
    pub fn from_h(inequalities: &[RVector], equalities: &[RVector], d: usize) -> Result<Cone> {
        check_lengths(inequalities, d, "inequality normal")?;
        check_lengths(equalities, d, "equality normal")?;
        if inequalities.iter().any(|a| is_zero_vec(a)) {
            return Err(ConicError::input("zero inequality normal"));
        }
        let v = double_description(d, equalities, inequalities);
        Ok(Cone::from_minimal_v(d, &v.lineality, &v.rays))
    }

    /// `cone(rays) + span(lineality)`.
    pub fn from_generators(rays: &[RVector], lineality: &[RVector], d: usize) -> Result<Cone> {
        check_lengths(rays, d, "generator")?;
        check_lengths(lineality, d, "lineality vector")?;
        if rays.iter().any(|r| is_zero_vec(r)) {
            return Err(ConicError::input("zero generator"));
        }
        Ok(Cone::from_generators_unchecked(rays, lineality, d))
    }

    pub(crate) fn from_generators_unchecked(rays: &[RVector], lineality: &[RVector], d: usize) -> Cone {
        // H-representation from the polar, then a minimal V-representation back
        let h = double_description(d, lineality, rays);
        let v = double_description(d, &h.lineality, &h.rays);
        Cone::from_minimal_v(d, &v.lineality, &v.rays)
    }

    /// Assemble the canonical cone from a minimal V-representation.
    fn from_minimal_v(d: usize, lineality: &[RVector], rays: &[RVector]) -> Cone {
        let lineality = Subspace::from_span(d, lineality);
        let generators = canonical_set(rays, &lineality);
        let h = double_description(d, lineality.basis_rows(), &generators);
        let equalities = Subspace::from_span(d, &h.lineality);
        let inequalities = canonical_set(&h.rays, &equalities);
        Cone { d, inequalities, equalities, generators, lineality }
    }

    pub fn full(d: usize) -> Cone {
        Cone {
            d,
            inequalities: Vec::new(),
            equalities: Subspace::zero(d),
            generators: Vec::new(),
            lineality: Subspace::full(d),
        }
    }

    pub fn zero(d: usize) -> Cone {
        Cone::full(d).polar()
    }

    pub fn subspace(s: &Subspace) -> Cone {
        Cone {
            d: s.dim_ambient(),
            inequalities: Vec::new(),
            equalities: s.orthogonal_complement(),
            generators: Vec::new(),
            lineality: s.clone(),
        }
    }

    /// Nonnegative orthant `R^d_{>=0}`.
    pub fn orthant(d: usize) -> Cone {
        let rays: Vec<RVector> = (0..d).map(|i| crate::exactlin::rational::unit(d, i)).collect();
        Cone::from_generators_unchecked(&rays, &[], d)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.d - self.equalities.dim()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.dim()
    }

    pub fn inequalities(&self) -> &[RVector] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &Subspace {
        &self.equalities
    }

    pub fn generators(&self) -> &[RVector] {
        &self.generators
    }

    pub fn lineality(&self) -> &Subspace {
        &self.lineality
    }

    /// `lin(C)`.
    pub fn span(&self) -> Subspace {
        self.equalities.orthogonal_complement()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_zero()
    }

    pub fn is_subspace(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.d
            && self.inequalities.iter().all(|a| !dot(a, x).is_positive())
            && self.equalities.basis_rows().iter().all(|e| dot(e, x).is_zero())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators.iter().all(|g| self.contains(g))
            && other.lineality.basis_rows().iter().all(|l| {
                self.contains(l) && self.contains(&l.iter().map(|x| -x).collect::<Vec<_>>())
            })
    }

    /// `C° = {y : <x, y> <= 0 for all x in C}`.
    pub fn polar(&self) -> Cone {
        Cone {
            d: self.d,
            inequalities: self.generators.clone(),
            equalities: self.lineality.clone(),
            generators: self.inequalities.clone(),
            lineality: self.equalities.clone(),
        }
    }

    fn same_dim(&self, other: &Cone) -> Result<()> {
        if self.d != other.d {
            return Err(ConicError::input(format!(
                "ambient dimensions differ: {} vs {}",
                self.d, other.d
            )));
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        self.same_dim(other)?;
        let mut ineq = self.inequalities.clone();
        ineq.extend(other.inequalities.iter().cloned());
        let mut eq = self.equalities.basis_rows().to_vec();
        eq.extend(other.equalities.basis_rows().iter().cloned());
        Cone::from_h(&ineq, &eq, self.d)
    }

    pub fn minkowski_sum(&self, other: &Cone) -> Result<Cone> {
        self.same_dim(other)?;
        let mut rays = self.generators.clone();
        rays.extend(other.generators.iter().cloned());
        let mut lin = self.lineality.basis_rows().to_vec();
        lin.extend(other.lineality.basis_rows().iter().cloned());
        Ok(Cone::from_generators_unchecked(&rays, &lin, self.d))
    }

    /// `C × D ⊆ R^{d+e}`.
    pub fn product(&self, other: &Cone) -> Cone {
        let d = self.d + other.d;
        let pad = |v: &RVector, left: bool| -> RVector {
            let mut out = vec![Rational::zero(); d];
            let off = if left { 0 } else { self.d };
            out[off..off + v.len()].clone_from_slice(v);
            out
        };
        let mut rays: Vec<RVector> = self.generators.iter().map(|v| pad(v, true)).collect();
        rays.extend(other.generators.iter().map(|v| pad(v, false)));
        let mut lin: Vec<RVector> = self.lineality.basis_rows().iter().map(|v| pad(v, true)).collect();
        lin.extend(other.lineality.basis_rows().iter().map(|v| pad(v, false)));
        Cone::from_generators_unchecked(&rays, &lin, d)
    }

    /// Image under an invertible linear map given by its matrix.
    pub fn transform(&self, m: &RMatrix) -> Result<Cone> {
        if m.ncols() != self.d || m.nrows() != self.d {
            return Err(ConicError::input("transform must be a square matrix of the ambient dimension"));
        }
        let rays: Vec<RVector> = self.generators.iter().map(|g| m.mul_vec(g)).collect();
        let lin: Vec<RVector> = self.lineality.basis_rows().iter().map(|g| m.mul_vec(g)).collect();
        Cone::from_generators(&rays, &lin, self.d)
    }

    /// `(L, C/L)`: the lineality space and the pointed cone obtained by
    /// projecting onto `L^⊥`.
    pub fn canonical_decomposition(&self) -> (Subspace, Cone) {
        let pointed = Cone::from_generators_unchecked(&self.generators, &[], self.d);
        (self.lineality.clone(), pointed)
    }

    /// Strict system describing `relint(C)` in coordinates of `sub ∩ lin(C)`.
    fn relint_constraints(&self, basis: &Subspace) -> Vec<RVector> {
        self.inequalities
            .iter()
            .map(|a| basis.restrict_form(a).into_iter().map(|x| -x).collect())
            .collect()
    }

    /// Whether `relint(C) ∩ L` is empty, evaluated on the primal side and
    /// cross-checked against the polar side.
    ///
    /// The polar condition is `C° ∩ L^⊥ ⊄ lin(C)^⊥`, which for full-dimensional
    /// cones is the familiar `C° ∩ L^⊥ ≠ {0}`.
    pub fn farkas_check(&self, l: &Subspace) -> Result<bool> {
        if l.dim_ambient() != self.d {
            return Err(ConicError::input("subspace lives in a different ambient space"));
        }
        let common = self.span().intersection(l);
        let primal = !lp_strictly_feasible(&self.relint_constraints(&common), common.dim());

        let dual_cone = self.polar().intersect(&Cone::subspace(&l.orthogonal_complement()))?;
        let dual = dual_cone
            .generators
            .iter()
            .chain(dual_cone.lineality.basis_rows())
            .any(|g| !self.equalities.contains(g));

        if primal != dual {
            return Err(ConicError::Invariant(format!(
                "Farkas alternative disagrees: primal {primal}, dual {dual}"
            )));
        }
        Ok(primal)
    }

    /// Whether `C ∩ D ≠ {0}`.
    pub fn meets_nontrivially(&self, other: &Cone) -> Result<bool> {
        Ok(!self.intersect(other)?.is_zero())
    }
}

/// Whether the relative interiors of all given cones share a point.
pub fn relints_meet(cones: &[&Cone]) -> bool {
    let Some(first) = cones.first() else {
        return true;
    };
    let common = cones
        .iter()
        .skip(1)
        .fold(first.span(), |acc, c| acc.intersection(&c.span()));
    let constraints: Vec<RVector> = cones
        .iter()
        .flat_map(|c| c.relint_constraints(&common))
        .collect();
    lp_strictly_feasible(&constraints, common.dim())
}

/// `C ⋔ D`: relative interiors meet and `dim(C ∩ D) = dim C + dim D - d`.
pub fn cones_transverse(c: &Cone, other: &Cone) -> Result<bool> {
    c.same_dim(other)?;
    if !relints_meet(&[c, other]) {
        return Ok(false);
    }
    let inter = c.intersect(other)?;
    Ok(inter.dim() as isize == c.dim() as isize + other.dim() as isize - c.d as isize)
}

/// Transversality of two faces (of possibly different cones).
pub fn transverse(f: &Face, g: &Face) -> Result<bool> {
    cones_transverse(&f.cone, &g.cone)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::{rvec, unit};

    fn square_cone() -> Cone {
        let rays = [rvec(&[1, 0, 0]), rvec(&[1, 1, 0]), rvec(&[1, 1, 1]), rvec(&[1, 0, 1])];
        Cone::from_generators(&rays, &[], 3).unwrap()
    }

    #[test]
    fn construction_examples() {
        let c = Cone::from_inequalities(&[rvec(&[-1, 0]), rvec(&[0, -1])], 2).unwrap();
        assert_eq!(c.generators(), &[rvec(&[0, 1]), rvec(&[1, 0])]);
        assert_eq!(c, Cone::orthant(2));

        let full = Cone::from_inequalities(&[], 3).unwrap();
        assert_eq!(full.lineality_dim(), 3);
        assert_eq!(full, Cone::full(3));

        let z = Cone::from_inequalities(&[rvec(&[-1, 0]), rvec(&[0, -1]), rvec(&[1, 1])], 2).unwrap();
        assert!(z.is_zero());
        assert_eq!(z, Cone::zero(2));

        let line = Cone::from_generators(&[], &[rvec(&[1, 0])], 2).unwrap();
        assert_eq!(line.dim(), 1);
        assert!(line.is_subspace());

        let sq = square_cone();
        assert_eq!(sq.inequalities().len(), 4);
        assert!(sq.is_pointed());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Cone::from_inequalities(&[rvec(&[0, 0])], 2), Err(ConicError::Input(_))));
        assert!(matches!(Cone::from_inequalities(&[rvec(&[1, 0, 0])], 2), Err(ConicError::Input(_))));
        assert!(matches!(Cone::from_generators(&[rvec(&[1])], &[], 2), Err(ConicError::Input(_))));
    }

    #[test]
    fn duplicate_normals_collapse() {
        let a = Cone::from_inequalities(&[rvec(&[-1, 0]), rvec(&[-2, 0]), rvec(&[0, -3])], 2).unwrap();
        assert_eq!(a, Cone::orthant(2));
    }

    #[test]
    fn polar_examples() {
        let neg = Cone::from_generators(&[rvec(&[-1, 0]), rvec(&[0, -1])], &[], 2).unwrap();
        assert_eq!(Cone::orthant(2).polar(), neg);

        let axis = Cone::from_generators(&[], &[unit(3, 0)], 3).unwrap();
        let plane = Cone::from_h(&[], &[unit(3, 0)], 3).unwrap();
        assert_eq!(axis.polar(), plane);
        assert_eq!(plane.dim(), 2);

        let ray = Cone::from_generators(&[rvec(&[1, 1])], &[], 2).unwrap();
        let half = Cone::from_inequalities(&[rvec(&[1, 1])], 2).unwrap();
        assert_eq!(ray.polar(), half);
        assert_eq!(ray.polar().polar(), ray);
    }

    #[test]
    fn decomposition_examples() {
        let (l, p) = Cone::orthant(2).canonical_decomposition();
        assert!(l.is_zero());
        assert_eq!(p, Cone::orthant(2));

        let (l, p) = Cone::full(2).canonical_decomposition();
        assert!(l.is_full());
        assert!(p.is_zero());

        let half = Cone::from_inequalities(&[rvec(&[0, -1])], 2).unwrap();
        let (l, p) = half.canonical_decomposition();
        assert_eq!(l, Subspace::from_span(2, &[rvec(&[1, 0])]));
        assert_eq!(p, Cone::from_generators(&[rvec(&[0, 1])], &[], 2).unwrap());
        assert!(p.is_pointed());
        assert_eq!(p.minkowski_sum(&Cone::subspace(&l)).unwrap(), half);
    }

    #[test]
    fn intersection_and_sum() {
        let o = Cone::orthant(2);
        let left = Cone::from_inequalities(&[rvec(&[1, 0])], 2).unwrap();
        let ray = Cone::from_generators(&[rvec(&[0, 1])], &[], 2).unwrap();
        assert_eq!(o.intersect(&left).unwrap(), ray);
        assert_eq!(o.minkowski_sum(&o.polar()).unwrap(), Cone::full(2));

        // (C ∩ D)° = C° + D° with D the orthant rotated by 90 degrees
        let rot = Cone::from_generators(&[rvec(&[0, 1]), rvec(&[-1, 0])], &[], 2).unwrap();
        let lhs = o.intersect(&rot).unwrap().polar();
        let rhs = o.polar().minkowski_sum(&rot.polar()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(o.intersect(&Cone::full(3)).is_err());
    }

    #[test]
    fn farkas_examples() {
        let o = Cone::orthant(2);
        assert!(!o.farkas_check(&Subspace::from_span(2, &[rvec(&[1, 1])])).unwrap());
        assert!(o.farkas_check(&Subspace::from_span(2, &[rvec(&[1, -1])])).unwrap());
        let w = rvec(&[-1, -1]);
        assert!(o.polar().contains(&w));
        let z = Cone::zero(3);
        for l in [Subspace::zero(3), Subspace::from_span(3, &[rvec(&[1, 2, 3])]), Subspace::full(3)] {
            assert!(!z.farkas_check(&l).unwrap());
        }
        // lower-dimensional cone: ray along e1 against span(e1) and span(e2)
        let ray = Cone::from_generators(&[unit(2, 0)], &[], 2).unwrap();
        assert!(!ray.farkas_check(&Subspace::from_span(2, &[unit(2, 0)])).unwrap());
        assert!(ray.farkas_check(&Subspace::from_span(2, &[unit(2, 1)])).unwrap());
    }

    #[test]
    fn transversality() {
        let full = Cone::full(2);
        assert!(cones_transverse(&full, &full).unwrap());
        // regression: two coordinate axes meet transversely at the origin
        let x = Cone::from_generators(&[], &[unit(2, 0)], 2).unwrap();
        let y = Cone::from_generators(&[], &[unit(2, 1)], 2).unwrap();
        assert!(cones_transverse(&x, &y).unwrap());
        let o = Cone::orthant(2);
        let neg = Cone::from_generators(&[rvec(&[-1, 0]), rvec(&[0, -1])], &[], 2).unwrap();
        assert!(!cones_transverse(&o, &neg).unwrap());
        // two rays on the x axis: relints meet but dimensions do not add up
        let r = Cone::from_generators(&[unit(2, 0)], &[], 2).unwrap();
        assert!(!cones_transverse(&r, &r).unwrap());
    }
}
