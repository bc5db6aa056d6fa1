use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use num_traits::Zero;

use super::{canonical_set, Cone};
use crate::error::{ConicError, Result};
use crate::exactlin::rational::{dot, RVector};
use crate::exactlin::{rank_of, Subspace};

/// A face `F = C ∩ H` of a cone, identified by the parent's extreme rays it
/// contains and the parent's facets that are tight on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub parent: Arc<Cone>,
    /// Indices into `parent.generators()`.
    pub rays: Vec<usize>,
    /// Indices into `parent.inequalities()` of facets containing the face.
    pub active: Vec<usize>,
    pub span: Subspace,
    pub cone: Cone,
    pub dim: usize,
}

impl Face {
    /// Build the face spanned by `rays` (assumed closed under the facet
    /// closure) together with its canonical cone.
    pub(crate) fn from_rays(parent: Arc<Cone>, rays: Vec<usize>) -> Face {
        let c = &*parent;
        let d = c.d;
        let active: Vec<usize> = (0..c.inequalities.len())
            .filter(|&i| rays.iter().all(|&r| dot(&c.inequalities[i], &c.generators[r]).is_zero()))
            .collect();
        let mut span_rows: Vec<RVector> = c.lineality.basis_rows().to_vec();
        span_rows.extend(rays.iter().map(|&r| c.generators[r].clone()));
        let span = Subspace::from_span(d, &span_rows);
        let dim = span.dim();

        // facets of F are the traces of parent facets meeting F in codimension one
        let mut normals = Vec::new();
        for (i, a) in c.inequalities.iter().enumerate() {
            if active.contains(&i) {
                continue;
            }
            let mut rows: Vec<RVector> = c.lineality.basis_rows().to_vec();
            rows.extend(
                rays.iter()
                    .filter(|&&r| dot(a, &c.generators[r]).is_zero())
                    .map(|&r| c.generators[r].clone()),
            );
            if rank_of(&rows, d) + 1 == dim {
                normals.push(span.project(a));
            }
        }
        let generators: Vec<RVector> = {
            let mut g: Vec<RVector> = rays.iter().map(|&r| c.generators[r].clone()).collect();
            g.sort();
            g
        };
        let cone = Cone {
            d,
            inequalities: canonical_set(&normals, &Subspace::zero(d)),
            equalities: span.orthogonal_complement(),
            generators,
            lineality: c.lineality.clone(),
        };
        Face { parent, rays, active, span, cone, dim }
    }

    pub fn is_lineality(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.rays.len() == self.parent.generators.len()
    }
}

/// Graded lattice of all faces of a cone.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub cone: Arc<Cone>,
    /// Sorted by dimension, then by ray set.
    pub faces: Vec<Face>,
    /// `order[i][j]` iff face `i` is contained in face `j`.
    pub order: Vec<Vec<bool>>,
    pub f_vector: Vec<usize>,
}

impl FaceLattice {
    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    pub fn top(&self) -> &Face {
        self.faces.last().expect("every cone has itself as a face")
    }

    pub fn bottom(&self) -> &Face {
        &self.faces[0]
    }

    pub fn index_of(&self, f: &Face) -> Option<usize> {
        self.faces.iter().position(|g| g.rays == f.rays && *g.parent == *f.parent)
    }

    /// `Σ (-1)^k f_k`.
    pub fn euler_sum(&self) -> i64 {
        self.f_vector
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Value the Euler relation prescribes for the alternating sum.
    pub fn euler_expected(&self) -> i64 {
        if self.cone.is_subspace() {
            if self.cone.lineality_dim() % 2 == 0 {
                1
            } else {
                -1
            }
        } else {
            0
        }
    }
}

fn tight_table(c: &Cone) -> Vec<Vec<bool>> {
    c.inequalities
        .iter()
        .map(|a| c.generators.iter().map(|g| dot(a, g).is_zero()).collect())
        .collect()
}

/// Rays tight on every facet tight on all of `rays`.
fn closure(tight: &[Vec<bool>], nrays: usize, rays: &[usize]) -> Vec<usize> {
    let active: Vec<usize> = (0..tight.len())
        .filter(|&i| rays.iter().all(|&r| tight[i][r]))
        .collect();
    (0..nrays).filter(|&r| active.iter().all(|&i| tight[i][r])).collect()
}

pub fn face_lattice(c: &Cone) -> FaceLattice {
    face_lattice_arc(Arc::new(c.clone()))
}

pub(crate) fn face_lattice_arc(parent: Arc<Cone>) -> FaceLattice {
    let tight = tight_table(&parent);
    let nrays = parent.generators.len();
    let top: Vec<usize> = (0..nrays).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::from([top.clone()]);
    seen.insert(top);
    while let Some(rays) = queue.pop_front() {
        for row in &tight {
            if rays.iter().all(|&r| row[r]) {
                continue;
            }
            let sub: Vec<usize> = rays.iter().copied().filter(|&r| row[r]).collect();
            let child = closure(&tight, nrays, &sub);
            if seen.insert(child.clone()) {
                queue.push_back(child);
            }
        }
    }

    let mut faces: Vec<Face> = seen
        .into_iter()
        .map(|rays| Face::from_rays(parent.clone(), rays))
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.rays).cmp(&(b.dim, &b.rays)));
    let order = faces
        .iter()
        .map(|f| faces.iter().map(|g| f.rays.iter().all(|r| g.rays.contains(r))).collect())
        .collect();
    let mut f_vector = vec![0; parent.d + 1];
    for f in &faces {
        f_vector[f.dim] += 1;
    }
    FaceLattice { cone: parent, faces, order, f_vector }
}

fn check_is_face(c: &Cone, f: &Face) -> Result<()> {
    if *f.parent != *c {
        return Err(ConicError::domain("face belongs to a different cone"));
    }
    let tight = tight_table(c);
    if closure(&tight, c.generators.len(), &f.rays) != f.rays {
        return Err(ConicError::domain("ray set is not closed, so it does not define a face"));
    }
    Ok(())
}

/// `N_F C = C° ∩ lin(F)^⊥`, returned as a face of `C°`.
pub fn normal_face(c: &Cone, f: &Face) -> Result<Face> {
    check_is_face(c, f)?;
    // the generators of C° are the facet normals of C, in the same order
    Ok(Face::from_rays(Arc::new(c.polar()), f.active.clone()))
}

impl Cone {
    /// Locate `candidate` among the faces of `self`.
    pub fn face_from_cone(&self, candidate: &Cone) -> Result<Face> {
        if candidate.d != self.d || !self.contains_cone(candidate) {
            return Err(ConicError::domain("candidate is not contained in the cone"));
        }
        let tight = tight_table(self);
        let probes: Vec<&RVector> = candidate
            .generators
            .iter()
            .chain(candidate.lineality.basis_rows())
            .collect();
        let active: Vec<usize> = (0..self.inequalities.len())
            .filter(|&i| probes.iter().all(|g| dot(&self.inequalities[i], g).is_zero()))
            .collect();
        let rays: Vec<usize> = (0..self.generators.len())
            .filter(|&r| active.iter().all(|&i| tight[i][r]))
            .collect();
        let face = Face::from_rays(Arc::new(self.clone()), rays);
        if face.cone != *candidate {
            return Err(ConicError::domain("candidate cone is not a face"));
        }
        Ok(face)
    }

    pub fn face_lattice(&self) -> FaceLattice {
        face_lattice(self)
    }
}

/// Index map from each face of `C` to its normal face in the lattice of `C°`.
pub fn normal_face_map(lat: &FaceLattice, polar_lat: &FaceLattice) -> Vec<usize> {
    let by_rays: HashMap<&Vec<usize>, usize> =
        polar_lat.faces.iter().enumerate().map(|(i, f)| (&f.rays, i)).collect();
    lat.faces.iter().map(|f| by_rays[&f.active]).collect()
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
    fn f_vectors() {
        assert_eq!(face_lattice(&Cone::orthant(3)).f_vector, vec![1, 3, 3, 1]);
        let line = Cone::from_generators(&[], &[unit(2, 0)], 2).unwrap();
        let lat = face_lattice(&line);
        assert_eq!(lat.f_vector, vec![0, 1, 0]);
        assert_eq!(lat.euler_sum(), lat.euler_expected());
        let sq = face_lattice(&square_cone());
        assert_eq!(sq.f_vector, vec![1, 4, 4, 1]);
        assert_eq!(sq.euler_sum(), 0);
    }

    #[test]
    fn lattice_order_has_bounds() {
        let lat = face_lattice(&square_cone());
        let n = lat.faces.len();
        for i in 0..n {
            assert!(lat.order[0][i]);
            assert!(lat.order[i][n - 1]);
        }
        assert!(lat.bottom().is_lineality());
        assert!(lat.top().is_top());
    }

    #[test]
    fn normal_face_examples() {
        let o = Cone::orthant(2);
        let lat = face_lattice(&o);
        let xray = lat.faces_of_dim(1).find(|f| f.cone.generators() == [rvec(&[1, 0])]).unwrap();
        let nf = normal_face(&o, xray).unwrap();
        assert_eq!(nf.cone.generators(), &[rvec(&[0, -1])]);

        let full = Cone::full(3);
        let lat = face_lattice(&full);
        let nf = normal_face(&full, lat.top()).unwrap();
        assert_eq!(nf.dim, 0);
        assert!(nf.parent.is_zero());
    }

    #[test]
    fn normal_face_is_an_involution() {
        let c = square_cone();
        let p = c.polar();
        let lat = face_lattice(&c);
        let plat = face_lattice(&p);
        assert_eq!(lat.faces.len(), 10);
        for f in &lat.faces {
            let nf = normal_face(&c, f).unwrap();
            assert_eq!(nf.dim, c.d() - f.dim);
            assert!(plat.index_of(&nf).is_some());
            let back = normal_face(&p, &nf).unwrap();
            assert_eq!(back.cone, f.cone);
        }
    }

    #[test]
    fn face_lookup() {
        let c = square_cone();
        let edge = Cone::from_generators(&[rvec(&[1, 0, 0]), rvec(&[1, 1, 0])], &[], 3).unwrap();
        assert_eq!(c.face_from_cone(&edge).unwrap().dim, 2);
        let diag = Cone::from_generators(&[rvec(&[1, 0, 0]), rvec(&[1, 1, 1])], &[], 3).unwrap();
        assert!(matches!(c.face_from_cone(&diag), Err(ConicError::Domain(_))));
    }

    #[test]
    fn half_plane_faces() {
        let half = Cone::from_inequalities(&[rvec(&[0, -1])], 2).unwrap();
        let lat = face_lattice(&half);
        assert_eq!(lat.f_vector, vec![0, 1, 1]);
        assert_eq!(lat.euler_sum(), 0);
        assert_eq!(lat.bottom().cone, Cone::from_generators(&[], &[unit(2, 0)], 2).unwrap());
    }
}
