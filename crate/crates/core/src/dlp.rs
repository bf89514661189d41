//! The Drézet–Le Potier curve and the stability classification it controls.
//!
//! `δ(μ)` is the supremum of `p(−|μ − α|) − Δ_α` over exceptional slopes `α`
//! with `|μ − α| < 3`. Here the supremum runs over the exceptional table of a
//! fixed dyadic depth, so [`delta`] returns a lower bound for the true curve
//! that is non-decreasing in the depth and exact once the controlling slope
//! has appeared.

use std::cmp::Ordering;
use std::fmt;
use std::thread;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exceptional::{self, ExceptionalSlope, ExceptionalTable, Level};
use crate::kernel::{euler_pairing, hilbert_p, is_integral, CharP2};
use crate::rational::{self, big, floor, int, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `μ < α`, the `E_α^⊥` branch.
    Left,
    /// `μ > α`, the `^⊥E_α` branch.
    Right,
    AtPeak,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Left => "left",
            Branch::Right => "right",
            Branch::AtPeak => "at_peak",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveEvaluation {
    pub mu: Rational,
    pub depth: u32,
    pub delta_lower: Rational,
    pub witness: ExceptionalSlope,
    pub branch: Branch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Stable,
    ExceptionalUnit,
    SemistableExceptionalMultiple,
    NotIntegral,
    BelowCurve,
}

impl VerdictKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictKind::Stable => "stable",
            VerdictKind::ExceptionalUnit => "exceptional_unit",
            VerdictKind::SemistableExceptionalMultiple => "semistable_exceptional_multiple",
            VerdictKind::NotIntegral => "not_integral",
            VerdictKind::BelowCurve => "below_curve",
        }
    }

    /// Stable or exceptional, i.e. a point of some moduli space of stable sheaves.
    pub fn is_stable_character(&self) -> bool {
        matches!(self, VerdictKind::Stable | VerdictKind::ExceptionalUnit)
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub kind: VerdictKind,
    pub details: String,
}

/// `p(−|μ − α|) − Δ_α`, the branch of the curve attached to `α`.
pub fn on_branch_formula(mu: &Rational, alpha: &ExceptionalSlope) -> Rational {
    let x = (mu - &alpha.alpha).abs();
    hilbert_p(&-x) - &alpha.disc
}

/// Best branch found so far, ordered by value, then smaller rank, then
/// smaller slope.
struct Best {
    value: Rational,
    witness: ExceptionalSlope,
}

impl Best {
    fn offer(best: &mut Option<Best>, mu: &Rational, e: &ExceptionalSlope, shift: i64) {
        let alpha = &e.alpha + int(shift);
        let x = (mu - &alpha).abs();
        if x >= int(3) {
            return;
        }
        let value = hilbert_p(&-x) - &e.disc;
        let better = match best {
            None => true,
            Some(b) => match value.cmp(&b.value) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => (&e.rank, &alpha) < (&b.witness.rank, &b.witness.alpha),
            },
        };
        if better {
            *best = Some(Best {
                value,
                witness: e.shifted(shift),
            });
        }
    }
}

/// A rational `x ≥ 0` such that every `y ∈ [0, 3/2]` with `p(−y) ≥ t` has
/// `y ≤ x`. `p(−y) = (y − 1)(y − 2)/2` decreases on that interval.
fn reach(t: &Rational) -> Rational {
    let three_halves = rat(3, 2);
    if t <= &rat(-1, 8) {
        return three_halves;
    }
    if t > &int(1) {
        return Rational::zero();
    }
    // float guess for the smaller root, then widened until exact
    let tf = rational::to_f64(t);
    let guess = ((3.0 - (1.0 + 8.0 * tf).max(0.0).sqrt()) / 2.0).max(0.0);
    let scale = 1i64 << 30;
    let mut x = Rational::new(
        BigInt::from((guess * scale as f64).ceil() as i64 + 1),
        BigInt::from(scale),
    );
    let mut step = rat(1, 1 << 20);
    while x < three_halves && &hilbert_p(&-x.clone()) > t {
        x += &step;
        step = &step * int(2);
    }
    x.min(three_halves)
}

/// Offers every node of `level` whose slope lies in `[lo, hi]`.
fn scan(best: &mut Option<Best>, mu: &Rational, table: &ExceptionalTable, level: &Level, lo: &Rational, hi: &Rational) {
    if lo > hi {
        return;
    }
    let entries = &table.entries;
    let mut n = floor(lo);
    let n_hi = floor(hi);
    while n <= n_hi {
        let shift = i64::try_from(&n).expect("integer shift fits in i64");
        let (local_lo, local_hi) = (lo - big(&n), hi - big(&n));
        let start = level.indices.partition_point(|&i| entries[i].alpha < local_lo);
        for &i in &level.indices[start..] {
            if entries[i].alpha > local_hi {
                break;
            }
            Best::offer(best, mu, &entries[i], shift);
        }
        n += 1;
    }
}

/// Evaluates the curve at `mu` over the exceptional table of depth `depth`.
pub fn delta(mu: &Rational, depth: u32) -> CurveEvaluation {
    delta_with_table(mu, &exceptional::table(depth))
}

/// Level by level: after the coarser levels fix a best value `b`, a node of a
/// finer level can only compete when `p(−|μ − α|) ≥ b + Δ_min(level)`, which
/// confines it to a short window next to `μ` or next to `μ ± 3`.
pub fn delta_with_table(mu: &Rational, table: &ExceptionalTable) -> CurveEvaluation {
    let three = int(3);
    let mut best: Option<Best> = None;
    for level in table.levels() {
        if level.indices.is_empty() {
            continue;
        }
        match &best {
            None => scan(&mut best, mu, table, level, &(mu - &three), &(mu + &three)),
            Some(b) => {
                let x = reach(&(&b.value + &level.min_disc));
                if x.is_zero() {
                    continue;
                }
                scan(&mut best, mu, table, level, &(mu - &x), &(mu + &x));
                scan(&mut best, mu, table, level, &(mu + &three - &x), &(mu + &three));
                scan(&mut best, mu, table, level, &(mu - &three), &(mu - &three + &x));
            }
        }
    }
    let Best { value, witness } = best.expect("an integer slope lies within distance 1/2");
    let branch = match mu.cmp(&witness.alpha) {
        Ordering::Greater => Branch::Right,
        Ordering::Less => Branch::Left,
        Ordering::Equal => Branch::AtPeak,
    };
    CurveEvaluation {
        mu: mu.clone(),
        depth: table.q_max,
        delta_lower: value,
        witness,
        branch,
    }
}

/// Reference evaluation over every candidate, without pruning.
pub fn delta_exhaustive(mu: &Rational, depth: u32) -> CurveEvaluation {
    let table = exceptional::table(depth);
    let lo = mu - int(3);
    let hi = mu + int(3);
    let mut best: Option<(Rational, ExceptionalSlope)> = None;
    for e in table.window(&lo, &hi) {
        if (mu - &e.alpha).abs() >= int(3) {
            continue;
        }
        let value = on_branch_formula(mu, &e);
        let replace = match &best {
            None => true,
            Some((b, held)) => match value.cmp(b) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => (&e.rank, &e.alpha) < (&held.rank, &held.alpha),
            },
        };
        if replace {
            best = Some((value, e));
        }
    }
    let (delta_lower, witness) = best.expect("window contains integers");
    let branch = match mu.cmp(&witness.alpha) {
        Ordering::Greater => Branch::Right,
        Ordering::Less => Branch::Left,
        Ordering::Equal => Branch::AtPeak,
    };
    CurveEvaluation {
        mu: mu.clone(),
        depth,
        delta_lower,
        witness,
        branch,
    }
}

/// Checks that the character of rank `r` on the branch of `alpha` at `mu` is
/// orthogonal to `E_α` in the order matching the side: `χ(v, E_α) = 0` on
/// the right, `χ(E_α, v) = 0` on the left, both at the peak.
pub fn branch_orthogonality_check(mu: &Rational, r: &BigInt, alpha: &ExceptionalSlope) -> Result<bool> {
    let disc = on_branch_formula(mu, alpha);
    let v = CharP2::from_slope_disc(r, mu, &disc)?;
    let e = alpha.character();
    Ok(match mu.cmp(&alpha.alpha) {
        Ordering::Greater => euler_pairing(&v, &e).is_zero(),
        Ordering::Less => euler_pairing(&e, &v).is_zero(),
        Ordering::Equal => euler_pairing(&v, &e).is_zero() && euler_pairing(&e, &v).is_zero(),
    })
}

fn exceptional_at(mu: &Rational, depth: u32) -> Option<ExceptionalSlope> {
    exceptional::table(depth).find_slope(mu)
}

/// Stability verdict for a positive-rank character against the depth-`depth`
/// curve. `BelowCurve` means "below the truncated curve".
pub fn classify(v: &CharP2, depth: u32) -> Result<StabilityVerdict> {
    if !v.ch0.is_positive() {
        return Err(Error::NonPositiveRank(v.ch0.to_string()));
    }
    if !is_integral(v) {
        return Ok(StabilityVerdict {
            kind: VerdictKind::NotIntegral,
            details: format!(
                "chi = {} is not an integer",
                rational::Fmt(&crate::kernel::euler_char(v))
            ),
        });
    }
    let inv = v.invariants()?;
    if let Some(e) = exceptional_at(&inv.mu, depth) {
        let unit = e.character();
        if &unit == v {
            return Ok(StabilityVerdict {
                kind: VerdictKind::ExceptionalUnit,
                details: format!(
                    "exceptional bundle of slope {} and rank {}",
                    rational::Fmt(&e.alpha),
                    e.rank
                ),
            });
        }
        if inv.delta == e.disc && (&v.ch0 % &e.rank).is_zero() {
            let m = &v.ch0 / &e.rank;
            return Ok(StabilityVerdict {
                kind: VerdictKind::SemistableExceptionalMultiple,
                details: format!(
                    "{m} copies of the exceptional bundle of slope {}",
                    rational::Fmt(&e.alpha)
                ),
            });
        }
    }
    let curve = delta(&inv.mu, depth);
    let (kind, relation) = if inv.delta >= curve.delta_lower {
        (VerdictKind::Stable, ">=")
    } else {
        (VerdictKind::BelowCurve, "<")
    };
    Ok(StabilityVerdict {
        kind,
        details: format!(
            "Delta = {} {relation} delta = {} (witness slope {}, {} branch, depth {depth})",
            rational::Fmt(&inv.delta),
            rational::Fmt(&curve.delta_lower),
            rational::Fmt(&curve.witness.alpha),
            curve.branch
        ),
    })
}

/// `dim M(v) = r²(2Δ − 1) + 1`.
pub fn moduli_dim(v: &CharP2) -> Result<Rational> {
    if !v.ch0.is_positive() {
        return Err(Error::NonPositiveRank(v.ch0.to_string()));
    }
    let r = big(&v.ch0);
    Ok(&r * &r * (int(2) * v.discriminant()? - int(1)) + int(1))
}

/// Smallest discriminant of an integral character of rank `r` and slope `mu`
/// on or above the truncated curve, or `Δ_α` when `(r, mu)` is exactly an
/// exceptional bundle and `include_exceptional` is set.
pub fn min_discriminant(r: &BigInt, mu: &Rational, depth: u32, include_exceptional: bool) -> Result<Rational> {
    if !r.is_positive() {
        return Err(Error::NonPositiveRank(r.to_string()));
    }
    if !rational::is_integer(&(big(r) * mu)) {
        return Err(Error::OffGrid(format!(
            "rank {r} times slope {} is not integral",
            rational::Fmt(mu)
        )));
    }
    if include_exceptional {
        if let Some(e) = exceptional_at(mu, depth) {
            if &e.rank == r {
                return Ok(e.disc);
            }
        }
    }
    let curve = delta(mu, depth);
    let p_mu = hilbert_p(mu);
    let steps = floor(&(big(r) * (&p_mu - &curve.delta_lower)));
    Ok(p_mu - big(&steps) / big(r))
}

/// `k` with `Δ(v) = Δ_min + k/r`.
pub fn disc_offset_k(v: &CharP2, depth: u32) -> Result<BigInt> {
    let verdict = classify(v, depth)?;
    if !verdict.kind.is_stable_character() {
        return Err(Error::Hypothesis(format!("{v} is {}, not stable", verdict.kind)));
    }
    let include_exceptional = verdict.kind == VerdictKind::ExceptionalUnit;
    let inv = v.invariants()?;
    let min = min_discriminant(&v.ch0, &inv.mu, depth, include_exceptional)?;
    let k = big(&v.ch0) * (&inv.delta - &min);
    match rational::as_integer(&k) {
        Some(k) if !k.is_negative() => Ok(k),
        _ => Err(Error::OffGrid(format!("{v}: r(Δ − Δ_min) = {}", rational::Fmt(&k)))),
    }
}

/// Curve samples at `from, from + step, …` up to `to`, evaluated in parallel
/// and returned in slope order.
pub fn sample_curve(from: &Rational, to: &Rational, step: &Rational, depth: u32) -> Result<Vec<CurveEvaluation>> {
    if !step.is_positive() {
        return Err(Error::Hypothesis("step must be positive".into()));
    }
    if from >= to {
        return Err(Error::Hypothesis("from must be smaller than to".into()));
    }
    let count = floor(&((to - from) / step)) + BigInt::from(1);
    let count = usize::try_from(&count).map_err(|_| Error::Hypothesis("too many samples".into()))?;
    let points: Vec<Rational> = (0..count).map(|i| from + step * int(i as i64)).collect();
    let table = exceptional::table(depth);
    let workers = thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(points.len().max(1));
    let chunk = points.len().div_ceil(workers);
    let mut out = Vec::with_capacity(points.len());
    thread::scope(|s| {
        let handles: Vec<_> = points
            .chunks(chunk.max(1))
            .map(|part| {
                let table = &table;
                s.spawn(move || part.iter().map(|mu| delta_with_table(mu, table)).collect::<Vec<_>>())
            })
            .collect();
        for h in handles {
            out.extend(h.join().expect("curve worker panicked"));
        }
    });
    Ok(out)
}

pub const CURVE_CSV_HEADER: &str = "mu_num,mu_den,delta_num,delta_den,witness_alpha,branch";

pub fn curve_csv(rows: &[CurveEvaluation]) -> String {
    let mut s = String::from(CURVE_CSV_HEADER);
    s.push('\n');
    for row in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.mu.numer(),
            row.mu.denom(),
            row.delta_lower.numer(),
            row.delta_lower.denom(),
            rational::fmt_rational(&row.witness.alpha),
            row.branch
        ));
    }
    s
}
