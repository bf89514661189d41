//! Brill–Noether numerics: expected codimensions and dimensions of the loci
//! `B^k(v)`, the global-section bound `h⁰ ≤ max{p(c1), r}`, the parabola
//! `χ = r`, and the dimension counts for rank `r`, `c1 = 1` strata.
//!
//! Expected dimensions are returned as rationals. Negative or fractional
//! values are meaningful here (empty or excluded strata), so callers decide
//! when integrality is required.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::dlp::{classify, disc_offset_k, moduli_dim};
use crate::error::{Error, Result};
use crate::kernel::{euler_char, hilbert_p_int, CharP2};
use crate::rational::{self, big, int, rat, Rational};

/// A character together with a number of sections `k ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BNQuery {
    pub v: CharP2,
    pub k: BigInt,
}

impl BNQuery {
    pub fn new(v: CharP2, k: impl Into<BigInt>) -> Result<Self> {
        let k = k.into();
        if k.is_negative() {
            return Err(Error::Hypothesis(format!(
                "number of sections must be non-negative, got {k}"
            )));
        }
        Ok(Self { v, k })
    }
}

/// `k·(k − χ(v))`.
pub fn expected_codim(q: &BNQuery) -> Rational {
    let k = big(&q.k);
    &k * (&k - euler_char(&q.v))
}

/// `dim M(v) − k·(k − χ(v))`.
pub fn expected_dim(q: &BNQuery) -> Result<Rational> {
    Ok(moduli_dim(&q.v)? - expected_codim(q))
}

pub fn h0_upper_bound(v: &CharP2) -> Result<BigInt> {
    if !v.ch0.is_positive() {
        return Err(Error::NonPositiveRank(v.ch0.to_string()));
    }
    Ok(hilbert_p_int(&v.ch1).max(v.ch0.clone()))
}

/// The parabola `Δ = μ²/2 + 3μ/2` along which `χ(v) = ch0(v)`.
pub fn xi(mu: &Rational) -> Rational {
    mu * mu * rat(1, 2) + rat(3, 2) * mu
}

/// Result of the dimension count for `B^r(v)` when `r ≥ p(c1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthExpdim {
    #[serde(serialize_with = "rational::ser_big")]
    pub k: BigInt,
    /// `1 + c1² + k·r`.
    #[serde(serialize_with = "rational::ser_rat")]
    pub formula: Rational,
    /// `expected_dim(v, r)` computed directly.
    #[serde(serialize_with = "rational::ser_rat")]
    pub expected_dim: Rational,
}

impl DepthExpdim {
    pub fn consistent(&self) -> bool {
        self.formula == self.expected_dim
    }
}

/// `1 + c1² + k·r` with `k = r(Δ − Δ_min)`, alongside `expected_dim(v, r)`.
/// Requires `c1 > 0`, `r ≥ p(c1)` and a stable character.
pub fn depth_expdim_br(v: &CharP2, depth: u32) -> Result<DepthExpdim> {
    if !v.ch1.is_positive() {
        return Err(Error::Hypothesis(format!("{v}: need c1 > 0")));
    }
    if v.ch0 < hilbert_p_int(&v.ch1) {
        return Err(Error::Hypothesis(format!(
            "{v}: need ch0 ≥ p(c1) = {}",
            hilbert_p_int(&v.ch1)
        )));
    }
    let verdict = classify(v, depth)?;
    if !verdict.kind.is_stable_character() {
        return Err(Error::Hypothesis(format!("{v} is {}, not stable", verdict.kind)));
    }
    let k = disc_offset_k(v, depth)?;
    let r = big(&v.ch0);
    let c1 = big(&v.ch1);
    let formula = int(1) + &c1 * &c1 + big(&k) * &r;
    let expected_dim = expected_dim(&BNQuery::new(v.clone(), v.ch0.clone())?)?;
    Ok(DepthExpdim {
        k,
        formula,
        expected_dim,
    })
}

/// Upper bound `(c1² + 3c1)/2 − r` on the degree of a line bundle quotient
/// on a curve of degree `c1`.
pub fn quot_degree_bound(r: i64, c1: i64) -> i64 {
    (c1 * c1 + 3 * c1) / 2 - r
}

/// `c1² + 1`, the dimension of the relative Picard variety over curves of
/// degree `c1`.
pub fn pic_dim(c1: i64) -> Result<i64> {
    if c1 < 1 {
        return Err(Error::InvalidCurveDegree(c1));
    }
    Ok(c1 * c1 + 1)
}

/// Stratum parameters for `c1 = 1`: `0 → O^{r−s} → E → E′ → 0` with
/// `ch2(E) = a − 1/2` and `rk E′ = s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct C1OneParams {
    pub r: i64,
    pub a: i64,
    pub s: i64,
}

impl C1OneParams {
    pub fn new(r: i64, a: i64, s: i64) -> Result<Self> {
        if r < 2 || a > 0 || s < 0 || s >= r {
            return Err(Error::Hypothesis(format!(
                "need r ≥ 2, a ≤ 0, 0 ≤ s < r; got r={r} a={a} s={s}"
            )));
        }
        Ok(Self { r, a, s })
    }

    /// `(r, 1, a − 1/2)`.
    pub fn character(&self) -> CharP2 {
        CharP2::new(self.r, 1, int(self.a) - rat(1, 2))
    }

    /// `m = r − s − χ(v)` with `χ(v) = r + a + 1`.
    pub fn m(&self) -> i64 {
        self.r - self.s - (self.r + self.a + 1)
    }
}

/// `−r² + (s − a + 2)r − s² − (a + 1)s + 2`.
pub fn c1_one_actual_dim(p: &C1OneParams) -> Rational {
    let C1OneParams { r, a, s } = *p;
    int(-r * r + (s - a + 2) * r - s * s - (a + 1) * s + 2)
}

/// `expected_dim((r, 1, a − 1/2), r − s)`.
pub fn c1_one_expected_dim(p: &C1OneParams) -> Result<Rational> {
    expected_dim(&BNQuery::new(p.character(), p.r - p.s)?)
}

/// Lower bound on the number of components of `B^2` on `P^{2[n]}(d)`:
/// `d − 1` once `n > d²`, otherwise 1.
pub fn twist_components_lower_bound(d: u64, n: u64) -> Result<u64> {
    if d == 0 || n == 0 {
        return Err(Error::Hypothesis(format!("need d ≥ 1 and n ≥ 1, got d={d} n={n}")));
    }
    Ok(if n > d * d { d - 1 } else { 1 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cohomology {
    #[serde(serialize_with = "rational::ser_rat")]
    pub h0: Rational,
    #[serde(serialize_with = "rational::ser_rat")]
    pub h1: Rational,
    #[serde(serialize_with = "rational::ser_rat")]
    pub h2: Rational,
}

/// Cohomology of the general sheaf in `M(v)` for `ch0 ≥ 2`: at most one group
/// is nonzero.
pub fn gh_generic_cohomology(v: &CharP2) -> Result<Cohomology> {
    if v.ch0 < BigInt::from(2) {
        return Err(Error::Hypothesis(format!("{v}: need ch0 ≥ 2")));
    }
    let chi = euler_char(v);
    let mu = v.slope()?;
    let zero = Rational::zero;
    if chi.is_negative() {
        return Ok(Cohomology {
            h0: zero(),
            h1: -chi,
            h2: zero(),
        });
    }
    match mu.cmp(&int(-3)) {
        std::cmp::Ordering::Greater => Ok(Cohomology {
            h0: chi,
            h1: zero(),
            h2: zero(),
        }),
        std::cmp::Ordering::Less => Ok(Cohomology {
            h0: zero(),
            h1: zero(),
            h2: chi,
        }),
        std::cmp::Ordering::Equal => Err(Error::GhUndefined),
    }
}
