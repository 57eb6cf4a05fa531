//! Exact rational helpers.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for every weight and defect.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qint(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// `2^{-k}`.
pub fn pow2_inv(k: u32) -> Q {
    Q::new(BigInt::one(), BigInt::one() << k as usize)
}

pub fn abs_diff(a: &Q, b: &Q) -> Q {
    (a - b).abs()
}

/// Parses `n/d` or `n`; `field` names the offending input in errors.
pub fn parse_q(s: &str, field: &str) -> Result<Q> {
    let s = s.trim();
    let err = |msg: &str| Error::Field { field: field.to_string(), msg: format!("{msg}: `{s}`") };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Q::new(n, d))
}

/// Always `n/d`, even for integers, so documents have one shape.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact value followed by a fixed-precision decimal.
pub fn show(x: &Q) -> String {
    format!("{} ({:.12})", fmt_q(x), to_f64(x))
}

pub fn sum<'a>(it: impl IntoIterator<Item = &'a Q>) -> Q {
    it.into_iter().fold(Q::zero(), |acc, x| acc + x)
}
