use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;

use super::Arrangement;
use crate::error::{ConicError, Result};
use crate::exactlin::Subspace;
use crate::poly::{BiPolynomial, IntPoly};

/// An intersection of hyperplanes of the arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flat {
    pub subspace: Subspace,
    /// All hyperplanes containing the flat.
    pub defining_set: Vec<usize>,
}

impl Flat {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

/// Flats ordered by reverse inclusion, with the Möbius function.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    pub d: usize,
    /// Sorted by decreasing dimension, so `R^d` comes first.
    pub flats: Vec<Flat>,
    /// `order[x][y]` iff `x ⪯ y`, i.e. flat `y` is contained in flat `x`.
    pub order: Vec<Vec<bool>>,
    /// `mobius[x][y] = μ(x, y)`, zero unless `x ⪯ y`.
    pub mobius: Vec<Vec<i64>>,
}

impl IntersectionLattice {
    pub fn level(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.flats.len()).filter(move |&i| self.flats[i].dim() == j)
    }

    /// `ℓ_j`, the number of flats of dimension `j`.
    pub fn ell(&self, j: usize) -> usize {
        self.level(j).count()
    }

    fn check_level(&self, j: usize) -> Result<()> {
        if j > self.d {
            return Err(ConicError::domain(format!("level {j} exceeds dimension {}", self.d)));
        }
        Ok(())
    }

    /// `χ_j(t) = Σ_{X ∈ L_j} Σ_{Y ⪰ X} μ(X, Y) t^{dim Y}`.
    pub fn level_char_poly(&self, j: usize) -> Result<IntPoly> {
        self.check_level(j)?;
        let mut coeffs = vec![0i64; j + 1];
        for x in self.level(j) {
            for (y, &m) in self.mobius[x].iter().enumerate() {
                if m != 0 {
                    coeffs[self.flats[y].dim()] += m;
                }
            }
        }
        Ok(IntPoly::new(coeffs.into_iter().map(BigInt::from).collect()))
    }

    pub fn char_poly(&self) -> IntPoly {
        self.level_char_poly(self.d).expect("top level exists")
    }

    pub fn bivariate(&self) -> BiPolynomial {
        BiPolynomial::new((0..=self.d).map(|j| self.level_char_poly(j).expect("j <= d")).collect())
    }
}

pub fn intersection_lattice(a: &Arrangement) -> IntersectionLattice {
    let d = a.d();
    let normals = a.normals();
    let defining = |n: &Subspace| -> Vec<usize> {
        (0..normals.len()).filter(|&i| n.contains(&normals[i])).collect()
    };

    // flats are keyed by their normal space
    let start = Subspace::zero(d);
    let mut seen: HashSet<Subspace> = HashSet::from([start.clone()]);
    let mut found: Vec<(Subspace, Vec<usize>)> = vec![(start.clone(), Vec::new())];
    let mut queue = VecDeque::from([(start, Vec::<usize>::new())]);
    while let Some((n, def)) = queue.pop_front() {
        for (i, a_i) in normals.iter().enumerate() {
            if def.contains(&i) {
                continue;
            }
            let next = n.sum(&Subspace::from_span(d, std::slice::from_ref(a_i)));
            if seen.insert(next.clone()) {
                let def = defining(&next);
                found.push((next.clone(), def.clone()));
                queue.push_back((next, def));
            }
        }
    }

    let mut flats: Vec<Flat> = found
        .into_iter()
        .map(|(n, defining_set)| Flat { subspace: n.orthogonal_complement(), defining_set })
        .collect();
    flats.sort_by(|x, y| (y.dim(), &x.defining_set).cmp(&(x.dim(), &y.defining_set)));

    let m = flats.len();
    let subset = |x: &[usize], y: &[usize]| x.iter().all(|i| y.contains(i));
    let order: Vec<Vec<bool>> = (0..m)
        .map(|x| (0..m).map(|y| subset(&flats[x].defining_set, &flats[y].defining_set)).collect())
        .collect();
    let mut mobius = vec![vec![0i64; m]; m];
    for x in 0..m {
        mobius[x][x] = 1;
        for y in x + 1..m {
            if !order[x][y] {
                continue;
            }
            let s: i64 = (x..y).filter(|&z| order[x][z] && order[z][y]).map(|z| mobius[x][z]).sum();
            mobius[x][y] = -s;
        }
    }
    IntersectionLattice { d, flats, order, mobius }
}

pub fn char_poly(a: &Arrangement) -> IntPoly {
    intersection_lattice(a).char_poly()
}

pub fn level_char_poly(a: &Arrangement, j: usize) -> Result<IntPoly> {
    intersection_lattice(a).level_char_poly(j)
}

/// `X(s, t) = Σ_j s^j χ_j(t)`.
pub fn bivariate_poly(a: &Arrangement) -> BiPolynomial {
    intersection_lattice(a).bivariate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{named_family, Family};
    use crate::exactlin::rational::rvec;

    #[test]
    fn lattice_examples() {
        let one = Arrangement::new(2, &[rvec(&[1, 0])]).unwrap();
        let l = intersection_lattice(&one);
        assert_eq!(l.flats.len(), 2);
        assert_eq!(l.mobius[0][1], -1);

        let three = Arrangement::new(2, &[rvec(&[1, 0]), rvec(&[0, 1]), rvec(&[1, 1])]).unwrap();
        let l = intersection_lattice(&three);
        assert_eq!(l.flats.len(), 5);
        assert_eq!(l.mobius[0][4], 2);

        let braid = named_family(&Family::Braid, 3).unwrap();
        let l = intersection_lattice(&braid);
        assert_eq!((0..=3).map(|j| l.ell(j)).collect::<Vec<_>>(), vec![0, 1, 3, 1]);
        let line = l.level(1).next().unwrap();
        assert_eq!(l.mobius[0][line], 2);
    }

    #[test]
    fn characteristic_polynomials() {
        let braid = named_family(&Family::Braid, 3).unwrap();
        assert_eq!(char_poly(&braid), IntPoly::from_i64(&[0, 2, -3, 1]));
        assert_eq!(level_char_poly(&braid, 2).unwrap(), IntPoly::from_i64(&[0, -3, 3]));
        assert!(matches!(level_char_poly(&braid, 4), Err(ConicError::Domain(_))));
        let bc = named_family(&Family::BC, 2).unwrap();
        assert_eq!(char_poly(&bc), IntPoly::from_i64(&[3, -4, 1]));
    }

    #[test]
    fn low_levels() {
        let a = Arrangement::new(3, &[rvec(&[1, 0, 0]), rvec(&[0, 1, 0]), rvec(&[0, 0, 1]), rvec(&[1, 1, 1])])
            .unwrap();
        let l = intersection_lattice(&a);
        let l0 = l.ell(0) as i64;
        let l1 = l.ell(1) as i64;
        assert_eq!(l.level_char_poly(0).unwrap(), IntPoly::from_i64(&[l0]));
        assert_eq!(l.level_char_poly(1).unwrap(), IntPoly::from_i64(&[-l1 * l0, l1]));
    }
}
