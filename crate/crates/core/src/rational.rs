//! Exact rational helpers shared by every module.
//!
//! Everything in this crate is computed over [`Rational`] (an arbitrary
//! precision fraction). Floating point never enters a comparison; the only
//! `f64` in the crate is [`to_decimal`], which is for display.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

pub fn half() -> Rational {
    rat(1, 2)
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Returns the integer value of `x`, or `None` when `x` is not integral.
pub fn as_integer(x: &Rational) -> Option<BigInt> {
    is_integer(x).then(|| x.numer().clone())
}

pub fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil(x: &Rational) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

/// Parses `p/q` or a bare integer. Decimal notation is rejected on purpose.
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational literal: {text:?}"));
    let parse_int = |s: &str| -> Result<BigInt> {
        let s = s.trim();
        if s.is_empty() || s.contains(|c: char| !(c.is_ascii_digit() || c == '-' || c == '+')) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    match text.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Display-only decimal approximation.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (x * big(&scale)).round();
    let v = scaled.to_integer();
    let neg = v.is_negative();
    let digits_str = v.abs().to_string();
    let padded = format!("{:0>width$}", digits_str, width = digits + 1);
    let (whole, frac) = padded.split_at(padded.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Wrapper implementing `Display` as `p/q`.
pub struct Fmt<'a>(pub &'a Rational);

impl fmt::Display for Fmt<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(self.0))
    }
}

/// Serde helper writing a rational as `p/q` text.
pub fn ser_rat<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(x))
}

/// Serde helper writing a big integer as decimal text.
pub fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// A real number `(a + b·√d) / c` with rational `a`, integer `b`, positive
/// non-square `d` and positive `c`, compared exactly against rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub a: Rational,
    pub b: BigInt,
    pub d: BigInt,
    pub c: BigInt,
}

impl QuadraticSurd {
    pub fn new(a: Rational, b: i64, d: i64, c: i64) -> Self {
        assert!(d > 0 && c > 0);
        Self {
            a,
            b: BigInt::from(b),
            d: BigInt::from(d),
            c: BigInt::from(c),
        }
    }

    /// Ordering of `self` relative to the rational `x`.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        // sign of (a + b√d) - c·x  =  sign of b√d - y
        let y = big(&self.c) * x - &self.a;
        let b = &self.b;
        if b.is_zero() {
            return Rational::zero().cmp(&y);
        }
        let lhs_sq = big(&(b * b * &self.d));
        let y_sq = &y * &y;
        if b.is_positive() {
            if y.is_negative() {
                Ordering::Greater
            } else {
                lhs_sq.cmp(&y_sq)
            }
        } else if !y.is_negative() {
            Ordering::Less
        } else {
            y_sq.cmp(&lhs_sq)
        }
    }

    /// Rational bounds `lo < self < hi` with `hi - lo < gap`, found by walking
    /// the Stern–Brocot tree. Requires `self` to be irrational.
    pub fn sandwich(&self, gap: &Rational) -> (Rational, Rational) {
        // integer bracket first
        let approx = self.a.clone() / big(&self.c);
        let mut lo_int = floor(&approx) - BigInt::from(1);
        while self.cmp_rational(&big(&(&lo_int + BigInt::one()))) == Ordering::Greater {
            lo_int += 1;
        }
        while self.cmp_rational(&big(&lo_int)) != Ordering::Greater {
            lo_int -= 1;
        }
        // Stern–Brocot between lo_int/1 and (lo_int+1)/1
        let (mut ln, mut ld) = (lo_int.clone(), BigInt::one());
        let (mut hn, mut hd) = (lo_int + BigInt::one(), BigInt::one());
        loop {
            let lo = Rational::new(ln.clone(), ld.clone());
            let hi = Rational::new(hn.clone(), hd.clone());
            if &(&hi - &lo) < gap {
                return (lo, hi);
            }
            let mn = &ln + &hn;
            let md = &ld + &hd;
            let mid = Rational::new(mn.clone(), md.clone());
            match self.cmp_rational(&mid) {
                Ordering::Greater => {
                    ln = mn;
                    ld = md;
                }
                Ordering::Less => {
                    hn = mn;
                    hd = md;
                }
                Ordering::Equal => unreachable!("quadratic surd with rational value"),
            }
        }
    }
}

/// `(3 - √5)/2`, where the right branch of `O` ends.
pub fn golden_endpoint() -> QuadraticSurd {
    QuadraticSurd::new(int(3), -1, 5, 2)
}

/// `1/2 - (3 - √8)/2 = √2 - 1`, where the left branch of `T(-1)` ends.
pub fn silver_endpoint() -> QuadraticSurd {
    QuadraticSurd::new(int(-1), 1, 2, 1)
}

/// Default gap for sandwich bounds.
pub fn sandwich_gap() -> Rational {
    rat(1, 100_000_000)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("-11/2").unwrap(), rat(-11, 2));
        assert_eq!(parse("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse(" 7 ").unwrap(), int(7));
        assert!(parse("0.5").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("").is_err());
        assert_eq!(fmt_rational(&rat(10, -4)), "-5/2");
        assert_eq!(fmt_rational(&int(3)), "3");
    }

    #[test]
    fn floor_ceil_negative() {
        assert_eq!(floor(&rat(-1, 3)), BigInt::from(-1));
        assert_eq!(ceil(&rat(-1, 3)), BigInt::from(0));
        assert_eq!(floor(&rat(7, 3)), BigInt::from(2));
        assert_eq!(ceil(&rat(7, 3)), BigInt::from(3));
        assert_eq!(ceil(&int(2)), BigInt::from(2));
    }

    #[test]
    fn decimal_display() {
        assert_eq!(to_decimal(&rat(13, 25), 4), "0.5200");
        assert_eq!(to_decimal(&rat(-1, 3), 3), "-0.333");
        assert_eq!(to_decimal(&rat(5, 2), 0), "3");
    }

    #[test]
    fn surd_comparisons() {
        let g = golden_endpoint();
        assert_eq!(g.cmp_rational(&rat(38, 100)), Ordering::Greater);
        assert_eq!(g.cmp_rational(&rat(39, 100)), Ordering::Less);
        assert_eq!(g.cmp_rational(&rat(5, 13)), Ordering::Less);
        let s = silver_endpoint();
        assert_eq!(s.cmp_rational(&rat(41, 100)), Ordering::Greater);
        assert_eq!(s.cmp_rational(&rat(5, 12)), Ordering::Less);
    }

    #[test]
    fn sandwich_brackets_and_is_tight() {
        for surd in [golden_endpoint(), silver_endpoint()] {
            let (lo, hi) = surd.sandwich(&sandwich_gap());
            assert_eq!(surd.cmp_rational(&lo), Ordering::Greater);
            assert_eq!(surd.cmp_rational(&hi), Ordering::Less);
            assert!(&hi - &lo < sandwich_gap());
        }
        let (lo, _) = golden_endpoint().sandwich(&sandwich_gap());
        assert!((to_f64(&lo) - 0.381_966_011_250_105).abs() < 1e-8);
    }
}
