//! Incremental double description for `{x : E x = 0, A x <= 0}`.
//!
//! Starts from the kernel of `E` as pure lineality and folds in one
//! inequality at a time. Lineality directions cut by the new constraint are
//! traded for a ray; otherwise rays on both sides are paired up along the
//! edges of the current cone (algebraic adjacency test on tight sets).

use num_traits::{Signed, Zero};

use crate::exactlin::rational::{axpy, dot, primitive, scale, RVector, Rational};
use crate::exactlin::{kernel, rank_of, RMatrix};

#[derive(Clone, Debug)]
pub(crate) struct DdOutput {
    pub lineality: Vec<RVector>,
    pub rays: Vec<RVector>,
}

pub(crate) fn double_description(d: usize, equalities: &[RVector], inequalities: &[RVector]) -> DdOutput {
    let mut lineality: Vec<RVector> = kernel(&RMatrix::new(equalities.to_vec(), d))
        .basis_rows()
        .iter()
        .map(|v| primitive(v).expect("basis rows are nonzero"))
        .collect();
    let mut rays: Vec<RVector> = Vec::new();
    let mut processed: Vec<RVector> = Vec::new();

    for a in inequalities {
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        if let Some(k) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let l = lineality.remove(k);
            let al = dot(a, &l);
            for other in lineality.iter_mut() {
                let c = -(dot(a, other) / &al);
                *other = primitive(&axpy(other, &c, &l)).expect("independent of l");
            }
            for r in rays.iter_mut() {
                let c = -(dot(a, r) / &al);
                *r = primitive(&axpy(r, &c, &l)).expect("rays are independent of lineality");
            }
            rays.push(if al.is_positive() { l.iter().map(|x| -x).collect() } else { l });
        } else {
            let values: Vec<Rational> = rays.iter().map(|r| dot(a, r)).collect();
            let mut next: Vec<RVector> = Vec::new();
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
            let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
            for (i, r) in rays.iter().enumerate() {
                if !values[i].is_positive() {
                    next.push(r.clone());
                }
            }
            if !pos.is_empty() && !neg.is_empty() {
                let tight: Vec<Vec<bool>> = rays
                    .iter()
                    .map(|r| processed.iter().map(|b| dot(b, r).is_zero()).collect())
                    .collect();
                let target = d as isize - lineality.len() as isize - 2;
                for &p in &pos {
                    for &n in &neg {
                        let mut rows: Vec<RVector> = equalities.to_vec();
                        rows.extend(
                            processed
                                .iter()
                                .enumerate()
                                .filter(|(j, _)| tight[p][*j] && tight[n][*j])
                                .map(|(_, b)| b.clone()),
                        );
                        if rank_of(&rows, d) as isize != target {
                            continue;
                        }
                        let combo = axpy(&scale(&rays[n], &values[p]), &-values[n].clone(), &rays[p]);
                        next.push(primitive(&combo).expect("adjacent rays are independent"));
                    }
                }
            }
            rays = next;
        }
        processed.push(a.clone());
    }
    DdOutput { lineality, rays }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::rvec;

    #[test]
    fn orthant_from_inequalities() {
        let out = double_description(2, &[], &[rvec(&[-1, 0]), rvec(&[0, -1])]);
        assert!(out.lineality.is_empty());
        let mut rays = out.rays;
        rays.sort();
        assert_eq!(rays, vec![rvec(&[0, 1]), rvec(&[1, 0])]);
    }

    #[test]
    fn square_cone_rays() {
        // x <= z, y <= z, x >= 0, y >= 0 ... cone over the unit square
        let ineq = [rvec(&[-1, 0, 0]), rvec(&[0, -1, 0]), rvec(&[1, 0, -1]), rvec(&[0, 1, -1])];
        let out = double_description(3, &[], &ineq);
        assert!(out.lineality.is_empty());
        assert_eq!(out.rays.len(), 4);
    }
}
