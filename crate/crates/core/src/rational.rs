//! Exact rational scalars and small combinatorial helpers.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(value: i64) -> Q {
    Q::from_integer(BigInt::from(value))
}

pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_big(value: BigInt) -> Q {
    Q::from_integer(value)
}

const FACTORIAL_CACHE: usize = 96;

fn factorial_table() -> &'static [BigInt] {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(FACTORIAL_CACHE);
        let mut acc = BigInt::one();
        table.push(acc.clone());
        for i in 1..FACTORIAL_CACHE {
            acc *= i;
            table.push(acc.clone());
        }
        table
    })
}

pub fn factorial(n: u32) -> BigInt {
    let n = n as usize;
    let table = factorial_table();
    if n < table.len() {
        return table[n].clone();
    }
    let mut acc = table[table.len() - 1].clone();
    for i in table.len()..=n {
        acc *= i;
    }
    acc
}

/// Product of factorials of the entries, written α! for a multi-index.
pub fn multi_factorial(entries: &[u32]) -> BigInt {
    entries.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e))
}

/// Binomial coefficient with the convention C(n, k) = 0 whenever n < k or k < 0.
pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// Serializes as `p/q` with a positive denominator.
pub fn to_string(value: &Q) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `p/q` or a plain integer.
pub fn parse(text: &str) -> Result<Q> {
    let text = text.trim();
    let parse_int = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid rational `{text}`")))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{text}`")));
            }
            Ok(Q::new(parse_int(num)?, den))
        }
        None => Ok(Q::from_integer(parse_int(text)?)),
    }
}

pub fn to_f64(value: &Q) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn sign(value: &Q) -> i32 {
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

pub fn cross(a: &[Q], b: &[Q]) -> Vec<Q> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn unit(dim: usize, axis: usize) -> Vec<Q> {
    (0..dim).map(|i| if i == axis { Q::one() } else { Q::zero() }).collect()
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}
