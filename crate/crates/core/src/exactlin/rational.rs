//! Rational scalars and vectors plus their JSON encoding.
//!
//! A rational serializes as a bare JSON integer when its denominator is one
//! and as a `"p/q"` string otherwise. Vectors are arrays, matrices arrays of
//! arrays.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{ConicError, Result};

pub type Rational = BigRational;
pub type RVector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rvec(entries: &[i64]) -> RVector {
    entries.iter().map(|&e| rat(e)).collect()
}

pub fn unit(d: usize, i: usize) -> RVector {
    let mut v = vec![Rational::zero(); d];
    v[i] = Rational::one();
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn scale(v: &[Rational], s: &Rational) -> RVector {
    v.iter().map(|x| x * s).collect()
}

pub fn neg(v: &[Rational]) -> RVector {
    v.iter().map(|x| -x).collect()
}

/// `a + s*b`
pub fn axpy(a: &[Rational], s: &Rational, b: &[Rational]) -> RVector {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

/// Rescale by a positive factor to the primitive integer vector on the same
/// ray. Returns `None` for the zero vector.
pub fn primitive(v: &[Rational]) -> Option<RVector> {
    if is_zero_vec(v) {
        return None;
    }
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    Some(
        ints.into_iter()
            .map(|x| Rational::from_integer(x / &g))
            .collect(),
    )
}

/// Primitive integer vector with first nonzero entry positive, identifying
/// `v` and `-v`.
pub fn sign_canonical(v: &[Rational]) -> Option<RVector> {
    let p = primitive(v)?;
    let first_negative = p.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    Some(if first_negative { neg(&p) } else { p })
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // very large numerators/denominators: divide in floating point after scaling
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn to_f64_vec(v: &[Rational]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

/// Nearest dyadic rational `round(x * 2^bits) / 2^bits`.
pub fn from_f64_rounded(x: f64, bits: u32) -> Rational {
    let scaled = (x * 2f64.powi(bits as i32)).round();
    let n = BigInt::from(scaled as i128);
    Rational::new(n, BigInt::one() << bits)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || ConicError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(ConicError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rational_to_json(x: &Rational) -> Value {
    if x.is_integer() {
        if let Some(i) = x.numer().to_i64() {
            return Value::from(i);
        }
    }
    Value::String(format_rational(x))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(rat(i)),
            None => parse_rational(&n.to_string()),
        },
        Value::String(s) => parse_rational(s),
        other => Err(ConicError::Parse(format!("expected a rational, got {other}"))),
    }
}

pub fn vector_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn vector_from_json(v: &Value) -> Result<RVector> {
    v.as_array()
        .ok_or_else(|| ConicError::Parse(format!("expected an array of rationals, got {v}")))?
        .iter()
        .map(rational_from_json)
        .collect()
}

pub fn matrix_to_json(rows: &[RVector]) -> Value {
    Value::Array(rows.iter().map(|r| vector_to_json(r)).collect())
}

pub fn matrix_from_json(v: &Value) -> Result<Vec<RVector>> {
    v.as_array()
        .ok_or_else(|| ConicError::Parse(format!("expected an array of vectors, got {v}")))?
        .iter()
        .map(vector_from_json)
        .collect()
}

/// `serde(with = ...)` adapter for `Vec<RVector>` fields.
pub mod serde_rows {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(rows: &[RVector], s: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_to_json(rows).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<RVector>, D::Error> {
        let v = Value::deserialize(d)?;
        matrix_from_json(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7));
        assert_eq!(format_rational(&ratio(-2, 4)), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(rational_to_json(&rat(3)), Value::from(3));
        assert_eq!(rational_to_json(&ratio(1, 3)), Value::from("1/3"));
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![ratio(1, 2), ratio(-3, 4), rat(0)];
        assert_eq!(primitive(&v).unwrap(), rvec(&[2, -3, 0]));
        assert_eq!(sign_canonical(&neg(&v)).unwrap(), rvec(&[2, -3, 0]));
        assert_eq!(primitive(&rvec(&[-4, -6])).unwrap(), rvec(&[-2, -3]));
        assert!(primitive(&rvec(&[0, 0])).is_none());
    }
}
