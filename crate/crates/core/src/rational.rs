//! Exact rational scalars.
//!
//! `Rational` is `num::BigRational`: it is always normalized (lowest terms,
//! positive denominator) and never rounds. This module adds the handful of
//! helpers the rest of the crate needs on top of it.

use num::bigint::{BigInt, BigUint, Sign};
use num::{One, Signed, ToPrimitive, Zero};

pub use num::BigRational as Rational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_u64(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^exp` for a signed exponent, with `0^0 = 1`.
pub fn pow(base: &Rational, exp: i32) -> Rational {
    if exp >= 0 {
        num::pow(base.clone(), exp as usize)
    } else {
        num::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Multinomial coefficient `(Σ counts)! / Π counts!`.
pub fn multinomial(counts: &[usize]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total = 0u64;
    for &c in counts {
        total += c as u64;
        acc *= binomial(total, c as u64);
    }
    acc
}

fn log2_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().map(f64::log2).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top: BigUint = n >> shift;
    top.to_f64().map(f64::log2).unwrap_or(f64::NAN) + shift as f64
}

/// `log₂ r` in double precision. Returns `-inf` for zero and `NaN` for negatives.
pub fn log2(r: &Rational) -> f64 {
    match r.numer().sign() {
        Sign::NoSign => f64::NEG_INFINITY,
        Sign::Minus => f64::NAN,
        Sign::Plus => {
            log2_biguint(r.numer().magnitude()) - log2_biguint(r.denom().magnitude())
        }
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        sign * log2(&r.abs()).exp2()
    })
}

/// Fixed-point decimal rendering with `digits` fractional digits, rounded
/// half away from zero. Exact: no floating point is involved.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = num::pow(BigInt::from(10), digits);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + ratio(1, 2)).floor().to_integer();
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if r.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.25"`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w.parse().ok()?,
        };
        let frac_int: BigInt = frac.parse().ok()?;
        let value = Rational::from_integer(whole)
            + Rational::new(frac_int, num::pow(BigInt::from(10), frac.len()));
        return Some(if negative { -value } else { value });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_after_arithmetic() {
        let a = ratio(6, -8);
        assert_eq!(a.numer(), &BigInt::from(-3));
        assert_eq!(a.denom(), &BigInt::from(4));
        let b = &a * &ratio(4, 3) + int(2);
        assert_eq!(b, int(1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(multinomial(&[2, 1, 1]), BigInt::from(12));
    }

    #[test]
    fn pow_conventions() {
        assert_eq!(pow(&int(0), 0), int(1));
        assert_eq!(pow(&ratio(3, 4), 2), ratio(9, 16));
        assert_eq!(pow(&ratio(1, 2), -3), int(8));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&ratio(12, 283), 7), "0.0424028");
        assert_eq!(to_decimal(&ratio(-1, 6), 3), "-0.167");
        assert_eq!(to_decimal(&int(3), 2), "3.00");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse("1/2"), Some(ratio(1, 2)));
        assert_eq!(parse("-0.25"), Some(ratio(-1, 4)));
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("abc"), None);
    }

    #[test]
    fn log2_of_large_rationals() {
        let r = pow(&ratio(3, 4), 400);
        let expected = 400.0 * (0.75f64).log2();
        assert!((log2(&r) - expected).abs() < 1e-9);
        assert_eq!(log2(&int(8)), 3.0);
    }
}
