//! Chern characters on the plane and their numerical invariants.
//!
//! A character is the triple `(ch0, ch1, ch2)` with integral rank and first
//! Chern class and a rational second Chern character. Slope, discriminant and
//! Euler characteristic are derived views. Nothing here uses floating point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, big, half, int, rat, Rational};

/// Hilbert polynomial of the structure sheaf, `(x² + 3x + 2)/2`.
pub fn hilbert_p(x: &Rational) -> Rational {
    (x * x + int(3) * x + int(2)) * half()
}

/// `p(n)` for an integer argument; always an integer.
pub fn hilbert_p_int(n: &BigInt) -> BigInt {
    (n * n + BigInt::from(3) * n + BigInt::from(2)) / BigInt::from(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharP2 {
    pub ch0: BigInt,
    pub ch1: BigInt,
    pub ch2: Rational,
}

/// Slope, discriminant and Euler characteristic of a positive-rank character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantView {
    pub mu: Rational,
    pub delta: Rational,
    pub chi: Rational,
}

impl CharP2 {
    pub fn new(ch0: impl Into<BigInt>, ch1: impl Into<BigInt>, ch2: Rational) -> Self {
        Self {
            ch0: ch0.into(),
            ch1: ch1.into(),
            ch2,
        }
    }

    pub fn structure_sheaf() -> Self {
        Self::new(1, 0, int(0))
    }

    /// `O(d)`.
    pub fn line_bundle(d: i64) -> Self {
        Self::new(1, d, rat(d * d, 2))
    }

    /// The character of rank `r`, slope `mu` and discriminant `delta`.
    /// Fails when `r·mu` is not an integer.
    pub fn from_slope_disc(r: &BigInt, mu: &Rational, delta: &Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonPositiveRank(r.to_string()));
        }
        let c1 = rational::as_integer(&(big(r) * mu))
            .ok_or_else(|| Error::OffGrid(format!("rank {r} times slope {} is not integral", rational::Fmt(mu))))?;
        let ch2 = big(r) * (mu * mu * half() - delta);
        Ok(Self {
            ch0: r.clone(),
            ch1: c1,
            ch2,
        })
    }

    pub fn rank(&self) -> &BigInt {
        &self.ch0
    }

    pub fn is_torsion(&self) -> bool {
        self.ch0.is_zero()
    }

    pub fn slope(&self) -> Result<Rational> {
        if self.ch0.is_zero() {
            return Err(Error::TorsionSlope);
        }
        Ok(Rational::new(self.ch1.clone(), self.ch0.clone()))
    }

    pub fn discriminant(&self) -> Result<Rational> {
        let mu = self.slope()?;
        Ok(&mu * &mu * half() - &self.ch2 / big(&self.ch0))
    }

    pub fn invariants(&self) -> Result<InvariantView> {
        let mu = self.slope()?;
        let delta = &mu * &mu * half() - &self.ch2 / big(&self.ch0);
        Ok(InvariantView {
            mu,
            delta,
            chi: euler_char(self),
        })
    }

    pub fn scale(&self, m: i64) -> Self {
        let m_big = BigInt::from(m);
        Self {
            ch0: &self.ch0 * &m_big,
            ch1: &self.ch1 * &m_big,
            ch2: &self.ch2 * int(m),
        }
    }
}

impl fmt::Display for CharP2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.ch0, self.ch1, rational::Fmt(&self.ch2))
    }
}

impl Serialize for CharP2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `r,c1,ch2` where `ch2` may be `p/q`.
impl FromStr for CharP2 {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected r,c1,ch2 but got {text:?}")));
        }
        let integral = |s: &str| {
            rational::parse(s)
                .and_then(|q| rational::as_integer(&q).ok_or_else(|| Error::Parse(format!("{s:?} must be an integer"))))
        };
        Ok(Self {
            ch0: integral(parts[0])?,
            ch1: integral(parts[1])?,
            ch2: rational::parse(parts[2])?,
        })
    }
}

impl Add for &CharP2 {
    type Output = CharP2;
    fn add(self, o: &CharP2) -> CharP2 {
        CharP2 {
            ch0: &self.ch0 + &o.ch0,
            ch1: &self.ch1 + &o.ch1,
            ch2: &self.ch2 + &o.ch2,
        }
    }
}

impl Sub for &CharP2 {
    type Output = CharP2;
    fn sub(self, o: &CharP2) -> CharP2 {
        CharP2 {
            ch0: &self.ch0 - &o.ch0,
            ch1: &self.ch1 - &o.ch1,
            ch2: &self.ch2 - &o.ch2,
        }
    }
}

impl Neg for &CharP2 {
    type Output = CharP2;
    fn neg(self) -> CharP2 {
        CharP2 {
            ch0: -&self.ch0,
            ch1: -&self.ch1,
            ch2: -&self.ch2,
        }
    }
}

impl Mul<&CharP2> for i64 {
    type Output = CharP2;
    fn mul(self, v: &CharP2) -> CharP2 {
        v.scale(self)
    }
}

pub fn invariants(v: &CharP2) -> Result<InvariantView> {
    v.invariants()
}

/// Riemann–Roch: `χ = ch0 + (3/2)·ch1 + ch2`. Defined at rank zero as well.
pub fn euler_char(v: &CharP2) -> Rational {
    big(&v.ch0) + rat(3, 2) * big(&v.ch1) + &v.ch2
}

/// The bilinear Euler form `χ(u, w)`.
pub fn euler_pairing(u: &CharP2, w: &CharP2) -> Rational {
    let (ru, cu, du) = (big(&u.ch0), big(&u.ch1), &u.ch2);
    let (rw, cw, dw) = (big(&w.ch0), big(&w.ch1), &w.ch2);
    &ru * &rw + rat(3, 2) * (&ru * &cw - &cu * &rw) - &cu * &cw + &ru * dw + du * &rw
}

/// Tensor by `O(n)`.
pub fn twist(v: &CharP2, n: i64) -> CharP2 {
    let n_big = BigInt::from(n);
    CharP2 {
        ch0: v.ch0.clone(),
        ch1: &v.ch1 + &n_big * &v.ch0,
        ch2: &v.ch2 + big(&(&n_big * &v.ch1)) + rat(n * n, 2) * big(&v.ch0),
    }
}

pub fn dual(v: &CharP2) -> CharP2 {
    CharP2 {
        ch0: v.ch0.clone(),
        ch1: -&v.ch1,
        ch2: v.ch2.clone(),
    }
}

/// Kernel of a surjection onto `m` point sheaves: lowers `ch2` by `m`.
pub fn elementary_modification(v: &CharP2, m: u64) -> CharP2 {
    CharP2 {
        ch0: v.ch0.clone(),
        ch1: v.ch1.clone(),
        ch2: &v.ch2 - big(&BigInt::from(m)),
    }
}

/// `c1` and `χ` both integral. `c1` is integral by construction.
pub fn is_integral(v: &CharP2) -> bool {
    rational::is_integer(&euler_char(v))
}

/// Arithmetic genus of a smooth plane curve of degree `c1`.
pub fn genus_plane_curve(c1: i64) -> Result<i64> {
    if c1 < 1 {
        return Err(Error::InvalidCurveDegree(c1));
    }
    Ok((c1 - 1) * (c1 - 2) / 2)
}

/// Character of `O_C(D)` for a line bundle of degree `d` on a smooth plane
/// curve `C` of degree `c1`.
pub fn torsion_char_from_curve(c1: i64, d: i64) -> Result<CharP2> {
    let g = genus_plane_curve(c1)?;
    Ok(CharP2::new(0, c1, int(d + 1 - g) - rat(3 * c1, 2)))
}
