//! Slopes of exceptional bundles, generated by the dyadic mutation recursion.
//!
//! Every exceptional slope is `ε(p/2^q)` for a dyadic rational `p/2^q`:
//! integers map to themselves, and the midpoint of two adjacent dyadics at
//! level `q` maps to the mutation of their images,
//!
//! ```text
//! ε((2p+1)/2^(q+1)) = (α+β)/2 + (Δβ − Δα)/(3 + α − β),   α = ε(p/2^q), β = ε((p+1)/2^q)
//! ```
//!
//! The rank is the denominator of the slope and `Δ = (1 − 1/r²)/2`. Each node
//! is checked for `χ`-integrality when it is built.
//!
//! Tables cover the window `[0, 1]`; other slopes come from integer shifts.
//! A table can be written to and read from a small text file, see
//! [`ExceptionalTable::to_text`].

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{hilbert_p, CharP2};
use crate::rational::{self, big, floor, half, int, Rational};

pub const CACHE_HEADER: &str = "sheafcalc-exc v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicIndex {
    pub p: i64,
    pub q: u32,
}

impl DyadicIndex {
    pub fn new(p: i64, q: u32) -> Result<Self> {
        if q > 0 && p % 2 == 0 {
            return Err(Error::NonReducedDyadic { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn value(&self) -> Rational {
        Rational::new(BigInt::from(self.p), BigInt::one() << self.q)
    }

    fn shifted(&self, n: i64) -> Self {
        Self {
            p: self.p + (n << self.q),
            q: self.q,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalSlope {
    pub alpha: Rational,
    pub rank: BigInt,
    pub disc: Rational,
    pub dyadic_index: DyadicIndex,
}

impl ExceptionalSlope {
    /// Builds the node for slope `alpha`, deriving rank and discriminant and
    /// checking `χ`-integrality.
    pub fn new(alpha: Rational, dyadic_index: DyadicIndex) -> Result<Self> {
        let rank = alpha.denom().clone();
        let r = big(&rank);
        let disc = (int(1) - (&r * &r).recip()) * half();
        let node = Self {
            alpha,
            rank,
            disc,
            dyadic_index,
        };
        node.check()?;
        Ok(node)
    }

    fn check(&self) -> Result<()> {
        let r = big(&self.rank);
        let ok = rational::is_integer(&(&r * &self.alpha))
            && rational::is_integer(&(&r * (hilbert_p(&self.alpha) - &self.disc)))
            && self.disc == (int(1) - (&r * &r).recip()) * half()
            && self.disc < half();
        if ok {
            Ok(())
        } else {
            Err(Error::ExceptionalIntegrality(format!(
                "alpha={} rank={} disc={}",
                rational::Fmt(&self.alpha),
                self.rank,
                rational::Fmt(&self.disc)
            )))
        }
    }

    /// The character `(r_α, r_α·α, ch2)` with discriminant `Δ_α`.
    pub fn character(&self) -> CharP2 {
        CharP2::from_slope_disc(&self.rank, &self.alpha, &self.disc).expect("rank times exceptional slope is integral")
    }

    pub fn shifted(&self, n: i64) -> Self {
        Self {
            alpha: &self.alpha + int(n),
            rank: self.rank.clone(),
            disc: self.disc.clone(),
            dyadic_index: self.dyadic_index.shifted(n),
        }
    }
}

/// One mutation step: the slope between adjacent exceptional slopes `a < b`.
pub fn mutate(a: &ExceptionalSlope, b: &ExceptionalSlope) -> Rational {
    (&a.alpha + &b.alpha) * half() + (&b.disc - &a.disc) / (int(3) + &a.alpha - &b.alpha)
}

/// Exceptional slopes with dyadic depth `≤ q_max` in the window `[0, 1]`,
/// sorted by slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalTable {
    pub q_max: u32,
    pub entries: Vec<ExceptionalSlope>,
    levels: Vec<Level>,
}

/// The nodes of one dyadic level in `[0, 1)`, sorted by slope, with the
/// smallest discriminant among them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub q: u32,
    pub indices: Vec<usize>,
    pub min_disc: Rational,
}

impl ExceptionalTable {
    pub fn build(q_max: u32) -> Result<Self> {
        // level-by-level refinement of the sorted list
        let zero = ExceptionalSlope::new(int(0), DyadicIndex { p: 0, q: 0 })?;
        let one = ExceptionalSlope::new(int(1), DyadicIndex { p: 1, q: 0 })?;
        let mut entries = vec![zero, one];
        for q in 1..=q_max {
            let mut next = Vec::with_capacity(entries.len() * 2 - 1);
            for (i, pair) in entries.windows(2).enumerate() {
                let alpha = mutate(&pair[0], &pair[1]);
                next.push(pair[0].clone());
                next.push(ExceptionalSlope::new(alpha, DyadicIndex::new(2 * i as i64 + 1, q)?)?);
            }
            next.push(entries.last().expect("table is never empty").clone());
            entries = next;
        }
        Ok(Self::from_entries(q_max, entries))
    }

    fn from_entries(q_max: u32, entries: Vec<ExceptionalSlope>) -> Self {
        let mut levels: Vec<Level> = (0..=q_max)
            .map(|q| Level {
                q,
                indices: Vec::new(),
                min_disc: half(),
            })
            .collect();
        for (i, e) in entries[..entries.len() - 1].iter().enumerate() {
            let level = &mut levels[e.dyadic_index.q as usize];
            if level.indices.is_empty() || e.disc < level.min_disc {
                level.min_disc = e.disc.clone();
            }
            level.indices.push(i);
        }
        Self { q_max, entries, levels }
    }

    /// Nodes grouped by dyadic level, coarsest first. Slope 1 is left out;
    /// it is the shift of slope 0.
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// The exceptional slope equal to `mu`, if the table has one.
    pub fn find_slope(&self, mu: &Rational) -> Option<ExceptionalSlope> {
        let n = floor(mu);
        let local = mu - big(&n);
        let reps = &self.entries[..self.entries.len() - 1];
        let i = reps.binary_search_by(|e| e.alpha.cmp(&local)).ok()?;
        let shift = i64::try_from(&n).ok()?;
        Some(reps[i].shifted(shift))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, index: DyadicIndex) -> Option<&ExceptionalSlope> {
        self.entries.iter().find(|e| e.dyadic_index == index)
    }

    /// All slopes in `[lo, hi]` obtained by integer shifts of the table,
    /// sorted and without duplicates.
    pub fn window(&self, lo: &Rational, hi: &Rational) -> Vec<ExceptionalSlope> {
        let mut out = Vec::new();
        if lo > hi {
            return out;
        }
        let n_lo = floor(lo);
        let n_hi = floor(hi);
        let mut n = n_lo;
        while n <= n_hi {
            let shift: i64 = i64::try_from(&n).expect("integer shift fits in i64");
            // [0, 1) representatives; the slope 1 arrives as the shift of 0
            for e in &self.entries[..self.entries.len() - 1] {
                let alpha = &e.alpha + int(shift);
                if &alpha >= lo && &alpha <= hi {
                    out.push(e.shifted(shift));
                }
            }
            n += 1;
        }
        out
    }

    /// Cache-file text. Header, then one `p q alpha rank disc` record per node.
    pub fn to_text(&self) -> String {
        let mut s = format!("{CACHE_HEADER} qmax={}\n", self.q_max);
        for e in &self.entries {
            s.push_str(&format!(
                "{} {} {}/{} {} {}/{}\n",
                e.dyadic_index.p,
                e.dyadic_index.q,
                e.alpha.numer(),
                e.alpha.denom(),
                e.rank,
                e.disc.numer(),
                e.disc.denom()
            ));
        }
        s
    }

    /// Parses cache text. Every record goes through the node invariants; a
    /// header for another version or depth is reported as
    /// [`Error::Cache`].
    pub fn from_text(text: &str, expected_q_max: u32) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Cache("empty cache file".into()))?;
        let expected = format!("{CACHE_HEADER} qmax={expected_q_max}");
        if header.trim() != expected {
            return Err(Error::Cache(format!("header {header:?} does not match {expected:?}")));
        }
        let mut entries = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::Cache(format!("record {}: {what}: {line:?}", lineno + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(bad("expected 5 fields"));
            }
            let p: i64 = fields[0].parse().map_err(|_| bad("bad p"))?;
            let q: u32 = fields[1].parse().map_err(|_| bad("bad q"))?;
            let alpha = parse_lowest_terms(fields[2]).ok_or_else(|| bad("alpha not in lowest terms"))?;
            let rank: BigInt = fields[3].parse().map_err(|_| bad("bad rank"))?;
            let disc = parse_lowest_terms(fields[4]).ok_or_else(|| bad("disc not in lowest terms"))?;
            let node = ExceptionalSlope {
                alpha,
                rank,
                disc,
                dyadic_index: DyadicIndex::new(p, q)?,
            };
            node.check()?;
            if q > expected_q_max {
                return Err(bad("depth above qmax"));
            }
            entries.push(node);
        }
        if entries.len() != (1usize << expected_q_max) + 1 {
            return Err(Error::Cache(format!(
                "expected {} records, found {}",
                (1usize << expected_q_max) + 1,
                entries.len()
            )));
        }
        if entries.windows(2).any(|w| w[0].alpha >= w[1].alpha) {
            return Err(Error::Cache("records are not sorted by slope".into()));
        }
        Ok(Self::from_entries(expected_q_max, entries))
    }

    pub fn cache_path(dir: &Path, q_max: u32) -> PathBuf {
        dir.join(format!("exc-qmax{q_max}.txt"))
    }

    /// Reads the table for `q_max` from `dir`, rebuilding and rewriting it
    /// when the file is missing or carries a different header.
    pub fn load_or_build(dir: &Path, q_max: u32) -> Result<Self> {
        let path = Self::cache_path(dir, q_max);
        match fs::read_to_string(&path) {
            Ok(text) => match Self::from_text(&text, q_max) {
                Ok(table) => return Ok(table),
                Err(Error::Cache(msg)) if msg.starts_with("header") || msg.starts_with("empty") => {}
                Err(e) => return Err(e),
            },
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
        let table = Self::build(q_max)?;
        fs::create_dir_all(dir)?;
        fs::write(&path, table.to_text())?;
        Ok(table)
    }
}

fn parse_lowest_terms(s: &str) -> Option<Rational> {
    let (n, d) = s.split_once('/')?;
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d <= BigInt::zero() || !n.gcd(&d).is_one() {
        return None;
    }
    Some(Rational::new_raw(n, d))
}

fn registry() -> &'static Mutex<HashMap<u32, Arc<ExceptionalTable>>> {
    static TABLES: OnceLock<Mutex<HashMap<u32, Arc<ExceptionalTable>>>> = OnceLock::new();
    TABLES.get_or_init(Default::default)
}

/// Shared, frozen table for `q_max`. Construction happens under the registry
/// lock, so concurrent first requests for a depth build it once.
pub fn table(q_max: u32) -> Arc<ExceptionalTable> {
    let mut tables = registry().lock().expect("exceptional registry poisoned");
    tables
        .entry(q_max)
        .or_insert_with(|| Arc::new(ExceptionalTable::build(q_max).expect("exceptional recursion is integral")))
        .clone()
}

/// Makes `table` the shared table for its depth, replacing any existing one.
pub fn install(table: ExceptionalTable) -> Arc<ExceptionalTable> {
    let table = Arc::new(table);
    registry()
        .lock()
        .expect("exceptional registry poisoned")
        .insert(table.q_max, table.clone());
    table
}

/// `ε(p/2^q)` for a dyadic index in lowest terms.
pub fn eps(p: i64, q: u32) -> Result<ExceptionalSlope> {
    let index = DyadicIndex::new(p, q)?;
    let shift = p.div_euclid(1 << q);
    let local = DyadicIndex { p: p - (shift << q), q };
    if q == 0 {
        return ExceptionalSlope::new(int(p), index);
    }
    let node = table(q)
        .lookup(local)
        .cloned()
        .expect("every reduced index at depth q is in the table");
    Ok(node.shifted(shift))
}

/// Every `ε(p/2^q)` with `q ≤ q_max` and slope in `[lo, hi]`, ascending.
pub fn enumerate_exceptional(q_max: u32, lo: &Rational, hi: &Rational) -> Vec<ExceptionalSlope> {
    table(q_max).window(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::CharP2;
    use crate::rational::rat;

    #[test]
    fn eps_examples() {
        let e = eps(1, 1).unwrap();
        assert_eq!(
            (e.alpha.clone(), e.rank.clone(), e.disc.clone()),
            (rat(1, 2), BigInt::from(2), rat(3, 8))
        );
        let e = eps(1, 2).unwrap();
        assert_eq!(
            (e.alpha.clone(), e.rank.clone(), e.disc.clone()),
            (rat(2, 5), BigInt::from(5), rat(12, 25))
        );
        assert_eq!(int(1) - &e.disc, rat(13, 25));
        let e = eps(1, 3).unwrap();
        assert_eq!(
            (e.alpha.clone(), e.rank.clone(), e.disc.clone()),
            (rat(5, 13), BigInt::from(13), rat(84, 169))
        );
        assert_eq!(int(13) * (hilbert_p(&e.alpha) - &e.disc), int(15));
    }

    #[test]
    fn eps_integers_and_shifts() {
        for n in -4..5 {
            let e = eps(n, 0).unwrap();
            assert_eq!(e.alpha, int(n));
            assert_eq!(e.rank, BigInt::from(1));
            assert_eq!(e.disc, int(0));
        }
        let e = eps(5, 1).unwrap();
        assert_eq!(e.alpha, rat(5, 2));
        assert_eq!(e.rank, BigInt::from(2));
        let e = eps(-3, 2).unwrap();
        assert_eq!(e.alpha, rat(2, 5) - int(1));
    }

    #[test]
    fn eps_rejects_non_reduced_index() {
        assert!(matches!(eps(2, 2), Err(Error::NonReducedDyadic { p: 2, q: 2 })));
    }

    #[test]
    fn enumerate_examples() {
        let got: Vec<_> = enumerate_exceptional(2, &int(0), &int(1))
            .into_iter()
            .map(|e| e.alpha)
            .collect();
        assert_eq!(got, vec![int(0), rat(2, 5), rat(1, 2), rat(3, 5), int(1)]);

        let ints = enumerate_exceptional(0, &int(-2), &int(2));
        assert_eq!(
            ints.iter().map(|e| e.alpha.clone()).collect::<Vec<_>>(),
            (-2..=2).map(int).collect::<Vec<_>>()
        );
        assert!(ints.iter().all(|e| e.rank == BigInt::from(1)));

        let q3: Vec<_> = enumerate_exceptional(3, &int(0), &int(1))
            .into_iter()
            .map(|e| e.alpha)
            .collect();
        assert!(q3.contains(&rat(5, 13)) && q3.contains(&rat(8, 13)));
    }

    #[test]
    fn invalid_node_is_rejected() {
        let bogus = ExceptionalSlope {
            alpha: rat(1, 3),
            rank: BigInt::from(3),
            disc: rat(4, 9),
            dyadic_index: DyadicIndex { p: 1, q: 1 },
        };
        assert!(matches!(bogus.check(), Err(Error::ExceptionalIntegrality(_))));
    }

    #[test]
    fn exceptional_characters_are_rigid() {
        for e in &table(5).entries {
            let v: CharP2 = e.character();
            assert_eq!(v.discriminant().unwrap(), e.disc);
            assert!(v.discriminant().unwrap() < half());
        }
    }

    #[test]
    fn cache_text_round_trip() {
        let t = ExceptionalTable::build(4).unwrap();
        let text = t.to_text();
        assert!(text.starts_with("sheafcalc-exc v1 qmax=4\n"));
        assert!(text.contains("\n1 2 2/5 5 12/25\n"));
        assert!(text.contains("\n0 0 0/1 1 0/1\n"));
        assert_eq!(ExceptionalTable::from_text(&text, 4).unwrap(), t);
        assert!(ExceptionalTable::from_text(&text, 5).is_err());
        let broken = text.replace("2/5 5 12/25", "4/10 5 12/25");
        assert!(ExceptionalTable::from_text(&broken, 4).is_err());
    }

    #[test]
    fn cache_file_rebuilds_on_version_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = ExceptionalTable::cache_path(dir.path(), 3);
        let built = ExceptionalTable::load_or_build(dir.path(), 3).unwrap();
        assert!(path.exists());
        fs::write(&path, "sheafcalc-exc v0 qmax=3\n").unwrap();
        let rebuilt = ExceptionalTable::load_or_build(dir.path(), 3).unwrap();
        assert_eq!(built, rebuilt);
        assert!(fs::read_to_string(&path)
            .unwrap()
            .starts_with("sheafcalc-exc v1 qmax=3"));
    }
}
