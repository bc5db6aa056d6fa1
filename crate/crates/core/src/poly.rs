//! Dense univariate and bivariate polynomials, coefficients lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

/// Exact integer polynomial.
pub type IntPoly = Polynomial<BigInt>;

impl<T: Clone + Zero> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Polynomial::new(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }
}

impl<T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>> Polynomial<T> {
    pub fn one() -> Self {
        Polynomial::new(vec![T::one()])
    }

    pub fn eval(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Polynomial::one(), |acc, _| &acc * self)
    }
}

impl<T: Clone + Zero + One + Add<Output = T> + Mul<Output = T> + Neg<Output = T>> Polynomial<T> {
    /// `t - r`.
    pub fn linear_root(r: T) -> Self {
        Polynomial::new(vec![-r, T::one()])
    }

    /// `p(-t)`.
    pub fn reflect(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// `Π (t - r)` over the given roots.
    pub fn from_roots(roots: impl IntoIterator<Item = T>) -> Self {
        roots
            .into_iter()
            .fold(Polynomial::one(), |acc, r| &acc * &Polynomial::linear_root(r))
    }
}

impl<T: Clone + Zero + Add<Output = T>> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Polynomial<T>, k: usize| p.coeffs.get(k).cloned().unwrap_or_else(T::zero);
        Polynomial::new((0..n).map(|k| get(self, k) + get(rhs, k)).collect())
    }
}

impl<T: Clone + Zero + Add<Output = T> + Neg<Output = T>> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let neg = Polynomial { coeffs: rhs.coeffs.iter().map(|c| -c.clone()).collect() };
        self + &neg
    }
}

impl<T: Clone + Zero + Add<Output = T> + Mul<Output = T>> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl Polynomial<BigInt> {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| match i64::try_from(c) {
                    Ok(i) => Value::from(i),
                    Err(_) => Value::String(c.to_string()),
                })
                .collect(),
        )
    }
}

impl<T: fmt::Display + Zero + One + PartialEq> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ if c.is_one() => write!(f, "t^{k}")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// `X(s, t) = Σ_j s^j χ_j(t)`, stored as the list of `χ_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPolynomial {
    pub by_s_degree: Vec<IntPoly>,
}

impl BiPolynomial {
    pub fn new(mut by_s_degree: Vec<IntPoly>) -> Self {
        while by_s_degree.last().is_some_and(|p| p.is_zero()) {
            by_s_degree.pop();
        }
        BiPolynomial { by_s_degree }
    }

    /// Coefficient of `s^j t^k`.
    pub fn coeff(&self, j: usize, k: usize) -> BigInt {
        self.by_s_degree.get(j).map(|p| p.coeff(k)).unwrap_or_default()
    }

    pub fn mul(&self, other: &BiPolynomial) -> BiPolynomial {
        if self.by_s_degree.is_empty() || other.by_s_degree.is_empty() {
            return BiPolynomial::new(Vec::new());
        }
        let mut out = vec![IntPoly::zero(); self.by_s_degree.len() + other.by_s_degree.len() - 1];
        for (i, a) in self.by_s_degree.iter().enumerate() {
            for (j, b) in other.by_s_degree.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPolynomial::new(out)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.by_s_degree.iter().map(IntPoly::to_json).collect())
    }
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Stirling numbers of the second kind `S(n, k)` for `0 <= k <= n`.
pub fn stirling2_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for k in 1..=m {
            let stay = if k < m { BigInt::from(k) * &row[k] } else { BigInt::zero() };
            next[k] = &row[k - 1] + stay;
        }
        row = next;
    }
    row
}

pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    stirling2_row(n).swap_remove(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = IntPoly::from_roots((0..3).map(BigInt::from));
        assert_eq!(p, IntPoly::from_i64(&[0, 2, -3, 1]));
        assert_eq!(p.eval(&BigInt::from(3)), BigInt::from(6));
        assert_eq!(p.reflect(), IntPoly::from_i64(&[0, -2, -3, -1]));
        assert_eq!(&p - &p, IntPoly::zero());
        assert_eq!(IntPoly::from_i64(&[1, 0, 0]).degree(), Some(0));
        assert_eq!(format!("{}", IntPoly::from_i64(&[3, -4, 1])), "t^2 + -4*t^1 + 3");
    }

    #[test]
    fn stirling_and_binomial() {
        assert_eq!(stirling2_row(4), [0, 1, 7, 6, 1].map(BigInt::from).to_vec());
        assert_eq!(stirling2(0, 0), BigInt::one());
        assert_eq!(stirling2(5, 3), BigInt::from(25));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(2, 3), BigInt::zero());
    }

    #[test]
    fn bivariate_product() {
        let a = BiPolynomial::new(vec![IntPoly::from_i64(&[1]), IntPoly::from_i64(&[-1, 1])]);
        let sq = a.mul(&a);
        assert_eq!(sq.coeff(2, 2), BigInt::one());
        assert_eq!(sq.coeff(1, 0), BigInt::from(-2));
    }
}
