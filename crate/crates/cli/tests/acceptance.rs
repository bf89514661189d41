//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, ExitCode};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sheafcalc_core::brillnoether::{expected_dim, BNQuery};
use sheafcalc_core::dlp::{classify, delta, moduli_dim, VerdictKind};
use sheafcalc_core::exceptional::{enumerate_exceptional, ExceptionalTable};
use sheafcalc_core::extremal::{extremal_character, z1_dim, z2_growth, Variant};
use sheafcalc_core::kernel::{elementary_modification, euler_pairing, hilbert_p, CharP2};
use sheafcalc_core::rational::{big, int, is_integer, rat, Rational};
use sheafcalc_core::verify::{suite_c1_one, suite_depth, suite_noninteger, suite_rank2_example, suite_regions};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_character(rng: &mut StdRng) -> CharP2 {
    let r = rng.random_range(1..=50i64);
    let c = rng.random_range(-100..=100i64);
    let d = rng.random_range(1..=12i64);
    let n = rng.random_range(-400..=400i64);
    CharP2::new(r, c, rat(n, d))
}

fn riemann_roch() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let (u, w) = (random_character(&mut rng), random_character(&mut rng));
        let (ru, rw) = (big(&u.ch0), big(&w.ch0));
        let (cu, cw) = (big(&u.ch1), big(&w.ch1));
        // Hirzebruch-Riemann-Roch against ch(u*)·ch(w)·td
        let hrr = &ru * &rw + rat(3, 2) * (&ru * &cw - &cu * &rw) + (&ru * &w.ch2 - &cu * &cw + &u.ch2 * &rw);
        let mu = |r: &Rational, c: &Rational| c / r;
        let disc = |r: &Rational, c: &Rational, d: &Rational| mu(r, c) * mu(r, c) / int(2) - d / r;
        let rr =
            &ru * &rw * (hilbert_p(&(mu(&rw, &cw) - mu(&ru, &cu))) - disc(&ru, &cu, &u.ch2) - disc(&rw, &cw, &w.ch2));
        let lib = euler_pairing(&u, &w);
        ensure(lib == hrr && lib == rr, || {
            format!("u={u} w={w}: pairing {lib}, hrr {hrr}, rr {rr}")
        })?;
    }
    Ok(())
}

fn exceptional_slopes() -> Outcome {
    let expected: Vec<(Rational, i64)> = vec![
        (int(0), 1),
        (rat(5, 13), 13),
        (rat(2, 5), 5),
        (rat(12, 29), 29),
        (rat(1, 2), 2),
        (rat(17, 29), 29),
        (rat(3, 5), 5),
        (rat(8, 13), 13),
        (int(1), 1),
    ];
    let as_pairs = |v: Vec<(Rational, BigInt)>| -> BTreeSet<(Rational, BigInt)> { v.into_iter().collect() };
    let want = as_pairs(expected.iter().map(|(a, r)| (a.clone(), BigInt::from(*r))).collect());
    let q3 = enumerate_exceptional(3, &int(0), &int(1));
    let got = as_pairs(q3.iter().map(|e| (e.alpha.clone(), e.rank.clone())).collect());
    ensure(got == want, || format!("q_max=3 slopes {got:?}"))?;
    let q4 = ExceptionalTable::build(4).map_err(|e| e.to_string())?;
    let coarse = as_pairs(
        q4.entries
            .iter()
            .filter(|e| e.dyadic_index.q <= 3)
            .map(|e| (e.alpha.clone(), e.rank.clone()))
            .collect(),
    );
    ensure(coarse == want, || {
        format!("q<=3 nodes of the q_max=4 table: {coarse:?}")
    })?;
    let fine: BTreeSet<Rational> = q4
        .entries
        .iter()
        .filter(|e| e.dyadic_index.q == 4)
        .map(|e| e.alpha.clone())
        .collect();
    let fine_want: BTreeSet<Rational> = [
        (13, 34),
        (75, 194),
        (179, 433),
        (70, 169),
        (99, 169),
        (254, 433),
        (119, 194),
        (21, 34),
    ]
    .into_iter()
    .map(|(n, d)| rat(n, d))
    .collect();
    ensure(fine == fine_want, || format!("q=4 nodes {fine:?}"))?;
    for e in &q4.entries {
        let r = big(&e.rank);
        let chi = &r * (hilbert_p(&e.alpha) - &e.disc);
        ensure(
            &e.rank == e.alpha.denom()
                && is_integer(&(&r * &e.alpha))
                && is_integer(&chi)
                && e.disc == (int(1) - (&r * &r).recip()) / int(2),
            || format!("integrality fails at {}", e.alpha),
        )?;
    }
    Ok(())
}

fn curve_values() -> Outcome {
    for depth in 4..=10 {
        for mu in [rat(1, 3), rat(2, 3)] {
            let d = delta(&mu, depth).delta_lower;
            ensure(d == rat(5, 9), || format!("delta({mu}) = {d} at depth {depth}"))?;
        }
    }
    let cutoff = rat(3819, 10000);
    for den in 1..=12i64 {
        for num in 0..=den {
            let mu = rat(num, den);
            if mu >= cutoff {
                continue;
            }
            let d = delta(&mu, 10).delta_lower;
            let o_branch = (&mu * &mu - int(3) * &mu + int(2)) / int(2);
            ensure(d == o_branch, || format!("delta({mu}) = {d}, O-branch {o_branch}"))?;
        }
    }
    let d = delta(&rat(2, 5), 10).delta_lower;
    ensure(d == rat(13, 25), || format!("delta(2/5) = {d}"))
}

fn vk(k: i64) -> CharP2 {
    CharP2::new(3, 2, int(-1 - k))
}

fn stability_of_examples() -> Outcome {
    for k in 0..=20 {
        let kind = classify(&vk(k), 10).map_err(|e| e.to_string())?.kind;
        ensure(kind == VerdictKind::Stable, || format!("v_{k} is {kind}"))?;
    }
    let t = CharP2::new(2, 1, rat(-1, 2));
    let kind = classify(&t, 10).map_err(|e| e.to_string())?.kind;
    ensure(kind == VerdictKind::ExceptionalUnit, || format!("{t} is {kind}"))?;
    let dim = moduli_dim(&t).map_err(|e| e.to_string())?;
    ensure(dim == int(0), || format!("dim M({t}) = {dim}"))
}

fn expected_dimensions() -> Outcome {
    for k in 0..=20 {
        let q = BNQuery::new(vk(k), 3).map_err(|e| e.to_string())?;
        let d = expected_dim(&q).map_err(|e| e.to_string())?;
        ensure(d == int(3 * k + 8), || format!("expected dim for v_{k} = {d}"))?;
    }
    let q = BNQuery::new(CharP2::new(2, 3, rat(-11, 2)), 3).map_err(|e| e.to_string())?;
    let d = expected_dim(&q).map_err(|e| e.to_string())?;
    ensure(d == int(22), || format!("rank 2 expected dim = {d}"))?;
    let rep = suite_rank2_example();
    ensure(rep.passed(), || rep.to_text())
}

fn c1_one_identity() -> Outcome {
    let rep = suite_c1_one(30, -15);
    ensure(rep.passed() && rep.checks.len() > 1000, || {
        rep.failures().map(|c| c.id.clone()).collect::<Vec<_>>().join(",")
    })?;
    Ok(())
}

/// Every stable or exceptional character with rank at most 8, slope in
/// `[-1, 2]` and `Δ ∈ [0, 2]`.
fn stable_catalogue() -> Result<Vec<CharP2>, String> {
    let mut out = Vec::new();
    for r in 1..=8i64 {
        for c in -r..=2 * r {
            let mu = rat(c, r);
            let top = int(r) * &mu * &mu / int(2);
            // ch2 ≡ -3c/2 mod 1 so that χ is an integer
            let base = rat(-3 * c, 2);
            let lo = sheafcalc_core::rational::floor(&(&top - int(2 * r) - &base));
            let hi = sheafcalc_core::rational::floor(&(&top - &base));
            let mut n = lo;
            while n <= hi {
                let ch2 = &base + big(&n);
                let v = CharP2::new(r, c, ch2);
                let d = v.discriminant().map_err(|e| e.to_string())?;
                if d >= int(0) && d <= int(2) && classify(&v, 10).map_err(|e| e.to_string())?.kind.is_stable_character()
                {
                    out.push(v);
                }
                n += 1;
            }
        }
    }
    Ok(out)
}

fn oracle_extremal(v: &CharP2, variant: Variant, catalogue: &[CharP2]) -> Option<CharP2> {
    let mu = v.slope().ok()?;
    let r = &v.ch0;
    let key = |w: &CharP2| (w.slope().unwrap(), -w.discriminant().unwrap(), -big(&w.ch0));
    catalogue
        .iter()
        .filter(|w| {
            let s = w.slope().unwrap();
            match variant {
                Variant::Paper => &w.ch0 < r && s <= mu,
                Variant::Ch => &w.ch0 <= r && s < mu,
            }
        })
        .max_by_key(|w| key(w))
        .cloned()
}

fn extremal_family() -> Outcome {
    for k in 1..=20 {
        let v = vk(k);
        let z = z2_growth(&v, Variant::Ch, 10).map_err(|e| e.to_string())?;
        ensure(
            z.triple.eps_prime == BigInt::from(1) && z.triple.eps == BigInt::from(1),
            || format!("v_{k}: eps'={} eps={}", z.triple.eps_prime, z.triple.eps),
        )?;
        let step = z1_dim(&elementary_modification(&v, 1), 10).map_err(|e| e.to_string())?
            - z1_dim(&v, 10).map_err(|e| e.to_string())?;
        ensure(z.k_coefficient == BigInt::from(4) && step == int(3), || {
            format!("v_{k}: z2 coefficient {} vs z1 coefficient {step}", z.k_coefficient)
        })?;
    }
    let catalogue = stable_catalogue()?;
    let mut compared = 0;
    for v in catalogue
        .iter()
        .filter(|v| v.ch1 > BigInt::from(0) && v.ch0 >= BigInt::from(2))
    {
        let mut slopes = Vec::new();
        for variant in [Variant::Paper, Variant::Ch] {
            let got = extremal_character(v, variant, 10).ok();
            let want = oracle_extremal(v, variant, &catalogue);
            ensure(got == want, || {
                format!("{variant} extremal of {v}: got {got:?}, oracle {want:?}")
            })?;
            slopes.push(got.map(|w| w.slope().unwrap()));
            compared += 1;
        }
        if let (Some(p), Some(c)) = (&slopes[0], &slopes[1]) {
            ensure(c <= p, || format!("{v}: ch slope {c} above paper slope {p}"))?;
        }
    }
    ensure(compared > 100, || format!("only {compared} comparisons"))
}

fn depth_claims() -> Outcome {
    let rep = suite_depth(4, 20, 10, 10);
    ensure(rep.passed(), || {
        rep.failures().map(|c| c.id.clone()).collect::<Vec<_>>().join(",")
    })
}

fn regions() -> Outcome {
    let rep = suite_regions(60, 10);
    ensure(rep.passed(), || {
        rep.failures().map(|c| c.id.clone()).collect::<Vec<_>>().join(",")
    })
}

fn noninteger() -> Outcome {
    let rep = suite_noninteger(60);
    ensure(rep.passed(), || {
        rep.failures().map(|c| c.id.clone()).collect::<Vec<_>>().join(",")
    })
}

fn curve_cli() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_sheafcalc"))
            .args(["curve", "--from", "0", "--to", "1", "--step", "1/100", "--depth", "10"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success(), || String::from_utf8_lossy(&a.stderr).into_owned())?;
    ensure(a.stdout == b.stdout, || "two runs differ".into())?;
    let text = String::from_utf8(a.stdout).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<&str>> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    ensure(rows.len() == 101, || format!("{} rows", rows.len()))?;
    for i in 0..rows.len() {
        let (x, y) = (&rows[i], &rows[rows.len() - 1 - i]);
        ensure(x[2..4] == y[2..4], || {
            format!("rows {i} and {} are not symmetric", rows.len() - 1 - i)
        })?;
    }
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/curve_0_1_step_1_100.csv");
    let want = std::fs::read_to_string(&golden).map_err(|e| format!("{}: {e}", golden.display()))?;
    ensure(text == want, || "output differs from golden file".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("riemann_roch", riemann_roch),
        ("exceptional_slopes", exceptional_slopes),
        ("curve_values", curve_values),
        ("stability_of_examples", stability_of_examples),
        ("expected_dimensions", expected_dimensions),
        ("c1_one_identity", c1_one_identity),
        ("extremal_family", extremal_family),
        ("depth_claims", depth_claims),
        ("regions", regions),
        ("noninteger", noninteger),
        ("curve_cli", curve_cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
