//! Extremal characters and extremal decompositions `v = v′ + v″`.
//!
//! The extremal character `v′` of `v` is the stable character of maximal
//! slope, then minimal discriminant, then minimal rank, among those allowed
//! as a subobject:
//!
//! * [`Variant::Paper`]: `r′ < r` and `μ′ ≤ μ`;
//! * [`Variant::Ch`]: `r′ ≤ r` and `μ′ < μ`.
//!
//! For each candidate rank only the largest admissible slope can win, and at a
//! fixed slope the smallest stable discriminant is
//! [`min_discriminant`](crate::dlp::min_discriminant) with exceptional
//! bundles included, so the search is one slope per rank.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::brillnoether::{expected_dim, BNQuery};
use crate::dlp::{classify, disc_offset_k, min_discriminant, moduli_dim, VerdictKind};
use crate::error::{Error, Result};
use crate::kernel::{euler_char, euler_pairing, CharP2};
use crate::rational::{self, big, ceil, floor, int, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Paper,
    Ch,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Paper => "paper",
            Variant::Ch => "ch",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper" => Ok(Variant::Paper),
            "ch" => Ok(Variant::Ch),
            _ => Err(Error::Parse(format!("unknown variant {s:?}, expected paper or ch"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalTriple {
    pub v_prime: CharP2,
    pub v: CharP2,
    pub v_dprime: CharP2,
    pub variant: Variant,
    /// `χ(v′) − r′`.
    #[serde(serialize_with = "rational::ser_big")]
    pub eps_prime: BigInt,
    /// `min{ε′, r″}`.
    #[serde(serialize_with = "rational::ser_big")]
    pub eps: BigInt,
}

fn require_positive_stable(v: &CharP2, depth: u32) -> Result<Rational> {
    let verdict = classify(v, depth)?;
    if !verdict.kind.is_stable_character() {
        return Err(Error::Hypothesis(format!("{v} is {}, not stable", verdict.kind)));
    }
    let mu = v.slope()?;
    if !mu.is_positive() {
        return Err(Error::Hypothesis(format!("{v}: need μ > 0")));
    }
    Ok(mu)
}

/// Largest admissible `c1′` for rank `r′`.
fn candidate_c1(r_prime: &BigInt, mu: &Rational, variant: Variant) -> BigInt {
    let x = big(r_prime) * mu;
    match variant {
        Variant::Paper => floor(&x),
        Variant::Ch => ceil(&x) - 1,
    }
}

fn is_eligible(w: &CharP2, depth: u32) -> Result<bool> {
    let kind = classify(w, depth)?.kind;
    Ok(matches!(kind, VerdictKind::Stable | VerdictKind::ExceptionalUnit))
}

/// The extremal character of a stable `v` with `μ(v) > 0`.
pub fn extremal_character(v: &CharP2, variant: Variant, depth: u32) -> Result<CharP2> {
    let mu = require_positive_stable(v, depth)?;
    let top = match variant {
        Variant::Paper => &v.ch0 - 1,
        Variant::Ch => v.ch0.clone(),
    };
    let mut slopes: Vec<(Rational, BigInt)> = Vec::new();
    let mut r_prime = BigInt::one();
    while r_prime <= top {
        let c = candidate_c1(&r_prime, &mu, variant);
        slopes.push((Rational::new(c, r_prime.clone()), r_prime.clone()));
        r_prime += 1;
    }
    // larger slope first, smaller rank first within a slope
    slopes.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut best: Option<(Rational, CharP2)> = None;
    let mut i = 0;
    while i < slopes.len() {
        let slope = slopes[i].0.clone();
        let mut j = i;
        while j < slopes.len() && slopes[j].0 == slope {
            let r_prime = &slopes[j].1;
            let disc = min_discriminant(r_prime, &slope, depth, true)?;
            let w = CharP2::from_slope_disc(r_prime, &slope, &disc)?;
            if is_eligible(&w, depth)? && best.as_ref().is_none_or(|(d, _)| &disc < d) {
                best = Some((disc, w));
            }
            j += 1;
        }
        if let Some((_, w)) = best {
            return Ok(w);
        }
        i = j;
    }
    Err(Error::NoExtremal(v.to_string()))
}

/// `v = v′ + v″` with `v′` extremal and `v″` stable.
pub fn extremal_triple(v: &CharP2, variant: Variant, depth: u32) -> Result<ExtremalTriple> {
    let v_prime = extremal_character(v, variant, depth)?;
    let v_dprime = v - &v_prime;
    if !v_dprime.ch0.is_positive() {
        return Err(Error::NoDecomposition(format!("quotient {v_dprime} of {v} has rank 0")));
    }
    let kind = classify(&v_dprime, depth)?.kind;
    if !matches!(
        kind,
        VerdictKind::Stable | VerdictKind::ExceptionalUnit | VerdictKind::SemistableExceptionalMultiple
    ) {
        return Err(Error::NoDecomposition(format!("quotient {v_dprime} of {v} is {kind}")));
    }
    let chi = euler_char(&v_prime);
    let eps_prime = rational::as_integer(&(chi - big(&v_prime.ch0)))
        .ok_or_else(|| Error::OffGrid(format!("χ({v_prime}) is not an integer")))?;
    let eps = eps_prime.clone().min(v_dprime.ch0.clone());
    Ok(ExtremalTriple {
        v_prime,
        v: v.clone(),
        v_dprime,
        variant,
        eps_prime,
        eps,
    })
}

/// Dimension of the first Brill–Noether family `Z₁`,
/// `c1² + 1 + r(r − χ(v, O)) − r²`.
///
/// Its growth under elementary modification is `r` per point.
pub fn z1_dim(v: &CharP2, depth: u32) -> Result<Rational> {
    require_positive_stable(v, depth)?;
    if !v.ch1.is_positive() {
        return Err(Error::Hypothesis(format!("{v}: need c1 > 0")));
    }
    let r = big(&v.ch0);
    let c1 = big(&v.ch1);
    let chi_vo = euler_pairing(v, &CharP2::structure_sheaf());
    Ok(&c1 * &c1 + int(1) + &r * (&r - chi_vo) - &r * &r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Z2Growth {
    /// `r + ε`.
    #[serde(serialize_with = "rational::ser_big")]
    pub k_coefficient: BigInt,
    /// Computable part of the constant term, excluding the fibre correction.
    #[serde(serialize_with = "rational::ser_rat")]
    pub example_offset: Rational,
    /// The offset `k` of `v` above the minimal discriminant.
    #[serde(serialize_with = "rational::ser_big")]
    pub k: BigInt,
    pub triple: ExtremalTriple,
}

/// Leading growth `(r + ε)k` of the second family `Z₂`, plus the
/// computable part of its constant.
pub fn z2_growth(v: &CharP2, variant: Variant, depth: u32) -> Result<Z2Growth> {
    let triple = extremal_triple(v, variant, depth)?;
    if variant == Variant::Ch && triple.v_prime.slope()? <= rat(1, 3) {
        return Err(Error::Hypothesis(format!(
            "{v}: extremal slope {} is not above 1/3",
            rational::Fmt(&triple.v_prime.slope()?)
        )));
    }
    if !triple.eps.is_positive() {
        return Err(Error::Hypothesis(format!("{v}: ε = {} is not positive", triple.eps)));
    }
    let (vp, vpp) = (&triple.v_prime, &triple.v_dprime);
    let sections = &vpp.ch0 - &triple.eps;
    let total =
        expected_dim(&BNQuery::new(vpp.clone(), sections)?)? + moduli_dim(vp)? - euler_pairing(vpp, vp) - int(1);
    let k = disc_offset_k(v, depth)?;
    let k_coefficient = &v.ch0 + &triple.eps;
    let example_offset = total - big(&(&k_coefficient * &k));
    Ok(Z2Growth {
        k_coefficient,
        example_offset,
        k,
        triple,
    })
}

/// Searches for an integer `n` with `(c1 − 1)/r < n/(r − 1) < c1/r`.
/// Requires `r ≥ 2`, `gcd(r, c1) > 1` and `r ∤ c1`.
pub fn lemma_noninteger_check(r: i64, c1: i64) -> Result<Option<i64>> {
    if r < 2 || r.gcd(&c1) <= 1 || c1 % r == 0 {
        return Err(Error::Hypothesis(format!(
            "need r ≥ 2, gcd(r, c1) > 1, r ∤ c1; got r={r} c1={c1}"
        )));
    }
    let lo = rat(c1 - 1, r);
    let hi = rat(c1, r);
    let n_lo = Integer::div_floor(&((c1 - 1) * (r - 1)), &r);
    let n_hi = Integer::div_ceil(&(c1 * (r - 1)), &r);
    Ok((n_lo..=n_hi).find(|&n| {
        let x = rat(n, r - 1);
        lo < x && x < hi
    }))
}
