use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.25`.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let err = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg}: {s:?}") };
    if t.is_empty() {
        return Err(err("empty rational"));
    }
    if let Some((a, b)) = t.split_once('/') {
        let n = BigInt::from_str(a.trim()).map_err(|_| err("bad numerator"))?;
        let d = BigInt::from_str(b.trim()).map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((a, b)) = t.split_once('.') {
        let neg = a.starts_with('-');
        let ip = if a.is_empty() || a == "-" || a == "+" { BigInt::zero() } else { BigInt::from_str(a).map_err(|_| err("bad integer part"))? };
        if !b.chars().all(|c| c.is_ascii_digit()) || b.is_empty() {
            return Err(err("bad fractional part"));
        }
        let fp = BigInt::from_str(b).map_err(|_| err("bad fractional part"))?;
        let den = num_traits::pow(BigInt::from(10), b.len());
        let frac = Q::new(fp, den);
        let ipq = Q::from_integer(ip.abs());
        let v = ipq + frac;
        return Ok(if neg { -v } else { v });
    }
    BigInt::from_str(t).map(Q::from_integer).map_err(|_| err("bad integer"))
}

pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn to_f64(x: &Q) -> f64 {
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // scale down huge numerators and denominators together
        let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000);
        let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Q) -> Q {
    x - x.floor()
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn lcm_denoms<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn ser_q<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

pub fn ser_qvec<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<String> = xs.iter().map(fmt_q).collect();
    v.serialize(s)
}

pub fn ser_qmat<S: Serializer>(xs: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = xs.iter().map(|r| r.iter().map(fmt_q).collect()).collect();
    v.serialize(s)
}
