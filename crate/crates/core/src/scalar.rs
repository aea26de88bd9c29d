//! Exact rational scalars used for every coordinate and area.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An arbitrary-precision rational number, always kept in lowest terms with
/// a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`. Panics if `den` is zero; meant for literals.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Builds `num / den` from big integers, rejecting a zero denominator.
    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::MalformedNumber("zero denominator".into()));
        }
        Ok(Scalar(BigRational::new(num, den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Self {
        Scalar(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// Nearest `f64`; saturates to 0 or infinity for extreme magnitudes.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            let l = self.log2_abs();
            let v = l.exp2();
            if self.0.is_negative() {
                -v
            } else {
                v
            }
        })
    }

    /// `log2(|self|)`, accurate even when the value under- or overflows `f64`.
    /// Returns `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        log2_bigint(&self.0.numer().abs()) - log2_bigint(self.0.denom())
    }

    /// Natural logarithm of `|self|`.
    pub fn ln_abs(&self) -> f64 {
        self.log2_abs() * std::f64::consts::LN_2
    }

    /// Rounds a finite non-negative `f64` down to a multiple of `2^-bits`.
    pub fn floor_dyadic(value: f64, bits: u32) -> Self {
        assert!(value.is_finite() && value >= 0.0, "value must be finite and non-negative");
        let r = BigRational::from_float(value).expect("finite");
        let scale = BigInt::one() << bits;
        let k = (r * BigRational::from_integer(scale.clone())).floor().to_integer();
        Scalar(BigRational::new(k, scale))
    }

    /// `p/q (decimal)` form used in reports.
    pub fn with_decimal(&self) -> String {
        format!("{} ({})", self, self.to_f64())
    }

    /// Least common multiple of the denominators of `values`.
    pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
        values
            .into_iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }
}

fn log2_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        n.to_f64().expect("fits").log2()
    } else {
        let shift = bits - 64;
        let top: BigInt = n >> shift;
        top.to_f64().expect("fits").log2() + shift as f64
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts integers, fractions `p/q`, and decimal literals such as `0.125`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::MalformedNumber(s.to_string());
        let s_trim = s.trim();
        if s_trim.is_empty() {
            return Err(bad());
        }
        if let Some((p, q)) = s_trim.split_once('/') {
            let p = parse_int(p).ok_or_else(bad)?;
            let q = parse_int(q).ok_or_else(bad)?;
            if q.is_zero() {
                return Err(bad());
            }
            return Ok(Scalar(BigRational::new(p, q)));
        }
        let (neg, body) = match s_trim.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s_trim.strip_prefix('+').unwrap_or(s_trim)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        let v = BigRational::new(num, den);
        Ok(Scalar(if neg { -v } else { v }))
    }
}

fn parse_int(t: &str) -> Option<BigInt> {
    let t = t.trim();
    let body = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn parses_fractions_decimals_integers() {
        assert_eq!(s("1/2"), Scalar::ratio(1, 2));
        assert_eq!(s("2/4"), Scalar::ratio(1, 2));
        assert_eq!(s("0.125"), Scalar::ratio(1, 8));
        assert_eq!(s(".5"), Scalar::ratio(1, 2));
        assert_eq!(s("1."), Scalar::one());
        assert_eq!(s("0"), Scalar::zero());
        assert_eq!(s("-3/6"), Scalar::ratio(-1, 2));
        assert_eq!(s("3/-6"), Scalar::ratio(-1, 2));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "abc", "1/0", "1//2", "0.5.5", "1e3", ".", "1/", "/2", "- 1"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(Scalar::ratio(10, 16).to_string(), "5/8");
        assert_eq!(Scalar::ratio(4, 2).to_string(), "2");
        assert_eq!(Scalar::ratio(5, 8).with_decimal(), "5/8 (0.625)");
    }

    #[test]
    fn log2_handles_tiny_values() {
        let tiny = Scalar::from_bigints(BigInt::one(), BigInt::one() << 3000u32).unwrap();
        assert!((tiny.log2_abs() + 3000.0).abs() < 1e-9);
        assert_eq!(Scalar::ratio(1, 8).log2_abs(), -3.0);
        assert_eq!(Scalar::zero().log2_abs(), f64::NEG_INFINITY);
    }

    #[test]
    fn floor_dyadic_rounds_down() {
        let v = Scalar::floor_dyadic(0.3, 4);
        assert_eq!(v, Scalar::ratio(4, 16));
        assert_eq!(Scalar::floor_dyadic(1.0, 24), Scalar::one());
    }
}
