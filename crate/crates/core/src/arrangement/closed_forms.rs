use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::families::Family;
use crate::error::{ConicError, Result};
use crate::exactlin::rational::Rational;
use crate::poly::{binomial, stirling2, IntPoly};

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

/// `χ_j` of a generic arrangement of `n` hyperplanes in `R^d`, from
/// `(-1)^j χ_j(-t) = C(n, d-j) (C(n-d+j-1, j-1) + Σ_{k=1}^j C(n-d+j, j-k) t^k)`.
pub fn generic_level_char(n: usize, d: usize, j: usize) -> Result<IntPoly> {
    if n < d {
        return Err(ConicError::domain(format!("generic closed form needs n >= d, got n={n}, d={d}")));
    }
    if j == 0 || j > d {
        return Err(ConicError::domain(format!("level must satisfy 1 <= j <= d, got j={j}")));
    }
    let m = n - d + j;
    let mut q = vec![binomial(m - 1, j - 1)];
    q.extend((1..=j).map(|k| binomial(m, j - k)));
    let q = IntPoly::new(q).scale(&binomial(n, d - j));
    // χ_j(t) = (-1)^j Q(-t)
    let r = q.reflect();
    Ok(if j % 2 == 1 { r.scale(&big(-1)) } else { r })
}

/// `Π_{i=0}^{j-1} (t - 2i - 1)`, the characteristic polynomial of `BC_j`.
fn bc_product(j: usize) -> IntPoly {
    IntPoly::from_roots((0..j).map(|i| big(2 * i as i64 + 1)))
}

/// Set partitions of an `n`-set into `k` blocks of size at least two.
fn associated_stirling2(n: usize, k: usize) -> BigInt {
    let mut t = vec![vec![BigInt::zero(); k + 1]; n + 1];
    t[0][0] = BigInt::one();
    for m in 1..=n {
        for b in 1..=k {
            let mut v = BigInt::from(b) * &t[m - 1][b];
            if m >= 2 {
                v += BigInt::from(m - 1) * &t[m - 2][b - 1];
            }
            t[m][b] = v;
        }
    }
    t[n][k].clone()
}

/// Number of `j`-flats of `BC_d` whose zero set has size `d - i` for `i` in
/// the given range: choose the nonzero coordinates, partition them into `j`
/// blocks and pick relative signs inside each block.
fn bc_flat_count(d: usize, j: usize, max_nonzero: usize) -> BigInt {
    (j..=max_nonzero)
        .map(|i| binomial(d, i) * stirling2(i, j) * pow2(i - j))
        .fold(BigInt::zero(), |a, b| a + b)
}

/// Closed form of `χ_j` for the braid, BC and D families.
///
/// Every `j`-flat of `BC_d` restricts to a copy of `BC_j`. For `D_d` the same
/// holds when at least two coordinates vanish on the flat; flats with no
/// vanishing coordinate restrict to `D_j` plus one coordinate hyperplane per
/// block of size at least two.
pub fn family_level_char(family: &Family, d: usize, j: usize) -> Result<IntPoly> {
    if d == 0 {
        return Err(ConicError::domain("family dimension must be at least 1"));
    }
    if j > d {
        return Err(ConicError::domain(format!("level {j} exceeds dimension {d}")));
    }
    match *family {
        Family::Braid => {
            if j == 0 {
                return Ok(IntPoly::zero());
            }
            Ok(IntPoly::from_roots((0..j as i64).map(big)).scale(&stirling2(d, j)))
        }
        Family::BC => Ok(bc_product(j).scale(&bc_flat_count(d, j, d))),
        Family::D => {
            if d < 2 {
                return Err(ConicError::domain("family D needs d >= 2"));
            }
            let with_zeros = bc_product(j).scale(&bc_flat_count(d, j, d - 2));
            if j == 0 {
                return Ok(with_zeros);
            }
            let tail = IntPoly::from_roots((1..j).map(|i| big(2 * i as i64 - 1)));
            let mut total = with_zeros;
            for k in 0..=j {
                // k non-singleton blocks covering s = d - j + k coordinates
                let s = d - j + k;
                if s > d {
                    break;
                }
                let count = binomial(d, s) * associated_stirling2(s, k) * pow2(d - j);
                if count.is_zero() {
                    continue;
                }
                let lin = IntPoly::linear_root(big(j as i64 + k as i64 - 1));
                total = &total + &(&lin * &tail).scale(&count);
            }
            Ok(total)
        }
        Family::Generic { n, .. } => {
            if j == 0 {
                return Ok(IntPoly::new(vec![BigInt::from(u8::from(n >= d))]));
            }
            generic_level_char(n, d, j)
        }
    }
}

/// Average intrinsic volumes of the chambers of a generic arrangement of `n`
/// hyperplanes in `R^d`: `E v_0 = C(n-1, d-1)/r`, `E v_k = C(n, d-k)/r`.
pub fn cover_efron_expected_iv(n: usize, d: usize) -> Result<Vec<Rational>> {
    if d == 0 || n < d {
        return Err(ConicError::domain(format!("need n >= d >= 1, got n={n}, d={d}")));
    }
    let r: BigInt = (0..d).map(|k| binomial(n - 1, k)).fold(BigInt::zero(), |a, b| a + b) * 2;
    let mut out = vec![Rational::new(binomial(n - 1, d - 1), r.clone())];
    out.extend((1..=d).map(|k| Rational::new(binomial(n, d - k), r.clone())));
    Ok(out)
}

/// `H_j` for braid and `H_j / 2` for BC.
pub fn expected_statdim_family(family: &Family, j: usize) -> Result<Rational> {
    if j == 0 {
        return Err(ConicError::domain("level must be at least 1"));
    }
    let h = (1..=j as i64).fold(Rational::zero(), |acc, i| acc + Rational::new(big(1), big(i)));
    match family {
        Family::Braid => Ok(h),
        Family::BC => Ok(h / Rational::from_integer(big(2))),
        _ => Err(ConicError::domain("harmonic statistical dimension is known for braid and BC only")),
    }
}
