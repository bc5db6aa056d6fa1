//! Closed-form intrinsic volumes for cones built from subspaces, single rays
//! and planar wedges by orthogonal products and polarity.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::exactlin::rational::{dot, format_rational, ratio, to_f64, to_f64_vec, RVector, Rational};
use crate::exactlin::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Subspace,
    Orthant,
    Product,
    Polar,
    PlanarAngle,
    ArrangementClosedForm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IVExact {
    pub d: usize,
    pub values: Vec<f64>,
    /// Present when every value is rational.
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_rationals", default)]
    pub rational: Option<Vec<Rational>>,
    pub provenance: Provenance,
}

mod opt_rationals {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        let strings: Option<Vec<String>> = v.as_ref().map(|v| v.iter().map(format_rational).collect());
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        let strings: Option<Vec<String>> = Option::deserialize(d)?;
        strings
            .map(|v| {
                v.iter()
                    .map(|s| crate::exactlin::rational::parse_rational(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .transpose()
    }
}

impl IVExact {
    pub fn from_rationals(d: usize, values: Vec<Rational>, provenance: Provenance) -> IVExact {
        IVExact { d, values: values.iter().map(to_f64).collect(), rational: Some(values), provenance }
    }

    pub fn reversed(&self) -> IVExact {
        let mut values = self.values.clone();
        values.reverse();
        let rational = self.rational.clone().map(|mut r| {
            r.reverse();
            r
        });
        IVExact { d: self.d, values, rational, provenance: Provenance::Polar }
    }
}

/// Intrinsic volumes of a pointed piece within its own span, lowest first.
#[derive(Clone, Debug)]
struct Piece {
    values: Vec<f64>,
    rational: Option<Vec<Rational>>,
}

impl Piece {
    fn point() -> Piece {
        Piece { values: vec![1.0], rational: Some(vec![Rational::one()]) }
    }

    fn convolve(&self, other: &Piece) -> Piece {
        let mut values = vec![0.0; self.values.len() + other.values.len() - 1];
        for (i, a) in self.values.iter().enumerate() {
            for (j, b) in other.values.iter().enumerate() {
                values[i + j] += a * b;
            }
        }
        let rational = match (&self.rational, &other.rational) {
            (Some(a), Some(b)) => {
                let mut r = vec![Rational::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        r[i + j] += x * y;
                    }
                }
                Some(r)
            }
            _ => None,
        };
        Piece { values, rational }
    }

    fn reversed(mut self) -> Piece {
        self.values.reverse();
        if let Some(r) = self.rational.as_mut() {
            r.reverse();
        }
        self
    }
}

#[derive(Default)]
struct Trace {
    used_polar: bool,
    planar: usize,
    components: usize,
}

/// Partition rays into classes connected by non-orthogonality.
fn orthogonal_components(rays: &[RVector]) -> Vec<Vec<usize>> {
    let n = rays.len();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while c[r] != r {
            r = c[r];
        }
        c[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if !dot(&rays[i], &rays[j]).is_zero() {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut comp, i);
        match root_of[r] {
            Some(g) => groups[g].push(i),
            None => {
                root_of[r] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }
    groups
}

/// Recognize a pointed cone given by its extreme rays (spanning `m`
/// dimensions) as an orthogonal product of recognizable pieces.
fn pointed_piece(rays: &[RVector], d: usize, allow_polar: bool, trace: &mut Trace) -> Option<Piece> {
    let mut acc = Piece::point();
    for group in orthogonal_components(rays) {
        trace.components += 1;
        let g: Vec<RVector> = group.iter().map(|&i| rays[i].clone()).collect();
        let piece = match g.len() {
            1 => Piece { values: vec![0.5, 0.5], rational: Some(vec![ratio(1, 2), ratio(1, 2)]) },
            2 => {
                let a = to_f64_vec(&g[0]);
                let b = to_f64_vec(&g[1]);
                let cos = a.iter().zip(&b).map(|(x, y)| x * y).sum::<f64>()
                    / (a.iter().map(|x| x * x).sum::<f64>() * b.iter().map(|x| x * x).sum::<f64>()).sqrt();
                let theta = cos.clamp(-1.0, 1.0).acos();
                let tau = 2.0 * std::f64::consts::PI;
                trace.planar += 1;
                Piece { values: vec![(std::f64::consts::PI - theta) / tau, 0.5, theta / tau], rational: None }
            }
            _ if allow_polar => {
                // polar within the span of the group: its rays are the facet normals
                let sub = Cone::from_generators_unchecked(&g, &[], d);
                trace.used_polar = true;
                let m = sub.dim();
                let polar_rays = sub.inequalities().to_vec();
                let p = pointed_piece(&polar_rays, d, false, trace)?;
                if p.values.len() != m + 1 {
                    return None;
                }
                p.reversed()
            }
            _ => return None,
        };
        acc = acc.convolve(&piece);
    }
    Some(acc)
}

/// Closed-form intrinsic volumes, or `None` when the cone is not recognized.
pub fn exact_iv(c: &Cone) -> Option<IVExact> {
    let d = c.d();
    let l = c.lineality_dim();
    let mut trace = Trace::default();
    let piece = pointed_piece(c.generators(), d, true, &mut trace)?;
    // shift by the lineality dimension and pad up to the ambient dimension
    let mut values = vec![0.0; d + 1];
    let mut rational = piece.rational.as_ref().map(|_| vec![Rational::zero(); d + 1]);
    for (k, v) in piece.values.iter().enumerate() {
        values[k + l] = *v;
    }
    if let (Some(r), Some(src)) = (rational.as_mut(), piece.rational.as_ref()) {
        for (k, v) in src.iter().enumerate() {
            r[k + l] = v.clone();
        }
    }
    let provenance = if trace.used_polar {
        Provenance::Polar
    } else if c.generators().is_empty() {
        Provenance::Subspace
    } else if trace.planar == 0 {
        Provenance::Orthant
    } else if trace.components == 1 && l == 0 {
        Provenance::PlanarAngle
    } else {
        Provenance::Product
    };
    Some(IVExact { d, values, rational, provenance })
}

/// Exact intrinsic volumes of a linear subspace of dimension `k` in `R^d`.
pub fn subspace_iv(s: &Subspace) -> IVExact {
    let mut r = vec![Rational::zero(); s.dim_ambient() + 1];
    r[s.dim()] = Rational::one();
    IVExact::from_rationals(s.dim_ambient(), r, Provenance::Subspace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::{rvec, unit};

    fn rats(nums: &[i64], den: i64) -> Vec<Rational> {
        nums.iter().map(|&n| ratio(n, den)).collect()
    }

    #[test]
    fn orthants_and_products() {
        let e = exact_iv(&Cone::orthant(4)).unwrap();
        assert_eq!(e.rational.unwrap(), rats(&[1, 4, 6, 4, 1], 16));
        assert_eq!(e.provenance, Provenance::Orthant);

        let c = Cone::from_generators(&[unit(3, 0), unit(3, 1)], &[unit(3, 2)], 3).unwrap();
        let e = exact_iv(&c).unwrap();
        assert_eq!(e.rational.unwrap(), rats(&[0, 1, 2, 1], 4));

        let e = exact_iv(&Cone::orthant(3).polar()).unwrap();
        assert_eq!(e.rational.unwrap(), rats(&[1, 3, 3, 1], 8));
    }

    #[test]
    fn planar_and_polar() {
        let c = Cone::from_generators(&[rvec(&[1, 0]), rvec(&[1, 1])], &[], 2).unwrap();
        let e = exact_iv(&c).unwrap();
        assert_eq!(e.provenance, Provenance::PlanarAngle);
        assert!((e.values[2] - 0.125).abs() < 1e-15);
        assert!((e.values[0] - 0.375).abs() < 1e-15);

        // a simplicial cone whose polar is an orthant (up to rotation)
        let sq = Cone::from_inequalities(&[rvec(&[-1, 0, 0]), rvec(&[0, -1, 0]), rvec(&[0, 0, -1])], 3).unwrap();
        assert_eq!(exact_iv(&sq).unwrap().provenance, Provenance::Orthant);

        // cone over a square is not recognized
        let rays = [rvec(&[1, 0, 0]), rvec(&[1, 1, 0]), rvec(&[1, 1, 1]), rvec(&[1, 0, 1])];
        assert!(exact_iv(&Cone::from_generators(&rays, &[], 3).unwrap()).is_none());
    }

    #[test]
    fn subspaces() {
        let s = Subspace::from_span(3, &[unit(3, 0)]);
        let e = exact_iv(&Cone::subspace(&s)).unwrap();
        assert_eq!(e, subspace_iv(&s));
        assert_eq!(exact_iv(&Cone::zero(2)).unwrap().values, vec![1.0, 0.0, 0.0]);
    }
}
