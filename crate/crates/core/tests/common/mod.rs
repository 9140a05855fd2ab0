#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use refined_ck::analysis::{f2_leading_coeffs, normalized_a, normalized_f2};
use refined_ck::padic::{floor_log_p, is_prime, p_pow, primes_in};
use refined_ck::roots::{planted_polynomial, zp_roots};
use refined_ck::series::{
    disc_table, g_coefficient_bound, g_table, polylog_eval, truncation_index_polylog, SeriesApprox,
};
use refined_ck::steinberg::depth2_constant;
use refined_ck::Padic;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn failure(e: proptest::test_runner::TestError<impl std::fmt::Debug>) -> String {
    e.to_string()
}

/// `x ≡ y` modulo `p^target`, with enough precision to say so.
pub fn agree_to(x: &Padic, y: &Padic, target: i64) -> bool {
    let d = x - y;
    if d.is_zero() {
        d.precision() >= target
    } else {
        d.valuation() >= target
    }
}

/// Digits agree with `reference` up to its precision and `ours` is at least as precise.
pub fn matches_reference(ours: &Padic, reference: &str) -> bool {
    let want: Padic = reference.parse().expect("reference value parses");
    ours.precision() >= want.precision() && ours.with_precision(want.precision()) == want
}

/// Brute-force zeros of an integer polynomial modulo `p^n`.
fn brute_force_zeros(coeffs: &[BigInt], p: u64, n: i64) -> BTreeSet<BigInt> {
    let m = p_pow(p, n);
    let mut out = BTreeSet::new();
    let mut x = BigInt::zero();
    while x < m {
        let v = coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * &x + c).mod_floor(&m));
        if v.is_zero() {
            out.insert(x.clone());
        }
        x += 1;
    }
    out
}

fn in_class(x: &BigInt, r: &Padic) -> bool {
    let prec = r.precision();
    let m = p_pow(r.prime(), prec);
    (x - r.to_integer().unwrap()).mod_floor(&m).is_zero()
}

fn poly_coeffs(p: u64, roots: &[BigInt], unit: i64, n: i64) -> (Vec<BigInt>, SeriesApprox) {
    let f = planted_polynomial(p, roots, n);
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| c.to_integer().unwrap() * unit).collect();
    let s = SeriesApprox::from_integers(p, &ints, n);
    (ints, s)
}

/// Every returned class holds a planted root and a brute-force zero mod `p^N`; every planted
/// root lies in a returned class; roots that are distinct mod p come back to precision N.
pub fn planted_roots_property(cases: u32) -> Result<(), String> {
    let strat = (prop::sample::select(vec![3u64, 5, 7]), 2i64..=4, 1usize..=3, any::<u64>(), 1i64..50);
    runner(cases)
        .run(&strat, |(p, n, count, seed, unit)| {
            let unit = if unit % p as i64 == 0 { unit + 1 } else { unit };
            let count = count.min(p as usize - 1);
            let m = p_pow(p, n);
            // distinct residues mod p, random higher digits
            let mut roots = Vec::new();
            let mut s = seed;
            let mut used = BTreeSet::new();
            while roots.len() < count {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let r = BigInt::from(s >> 11).mod_floor(&m);
                let res = (&r % p).to_string();
                if used.insert(res) {
                    roots.push(r);
                }
            }
            let (ints, f) = poly_coeffs(p, &roots, unit, n);
            let found = zp_roots(&f).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let zeros = brute_force_zeros(&ints, p, n);
            prop_assert_eq!(found.len(), roots.len());
            for r in &found {
                prop_assert_eq!(r.root.precision(), n);
                prop_assert!(roots.iter().any(|x| in_class(x, &r.root)), "unsound root {}", r.root);
                prop_assert!(zeros.iter().any(|x| in_class(x, &r.root)), "root {} misses the oracle", r.root);
            }
            for x in &roots {
                prop_assert!(found.iter().any(|r| in_class(x, &r.root)), "missed planted root {}", x);
            }
            Ok(())
        })
        .map_err(failure)
}

/// Clustered roots: a precision error is acceptable, a wrong answer is not.
pub fn clustered_roots_property(cases: u32) -> Result<(), String> {
    let strat = (prop::sample::select(vec![3u64, 5, 7]), 3i64..=5, 1i64..=3, 0u64..1000, 0u64..1000);
    runner(cases)
        .run(&strat, |(p, n, gap, a, b)| {
            let m = p_pow(p, n);
            let r1 = BigInt::from(a).mod_floor(&m);
            let r2 = (&r1 + p_pow(p, gap) * BigInt::from(b % (p - 1) + 1)).mod_floor(&m);
            let roots = vec![r1, r2];
            let (ints, f) = poly_coeffs(p, &roots, 1, n);
            let found = match zp_roots(&f) {
                Ok(f) => f,
                Err(e) if e.is_precision() => return Ok(()),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            };
            let zeros = brute_force_zeros(&ints, p, n);
            for r in &found {
                prop_assert!(roots.iter().any(|x| in_class(x, &r.root)), "unsound root {}", r.root);
                prop_assert!(zeros.iter().any(|x| in_class(x, &r.root)));
            }
            for x in &roots {
                prop_assert!(found.iter().any(|r| in_class(x, &r.root)), "missed planted root {}", x);
            }
            Ok(())
        })
        .map_err(failure)
}

/// Slack `⌊log_p k₀⌋ + 2` for comparisons of depth-m values at order N.
pub fn epsilon(p: u64, depth: u32, n: i64) -> i64 {
    floor_log_p(truncation_index_polylog(p, depth, n), p) as i64 + 2
}

fn check_identities(p: u64, n: i64, points: &[i64], q: u64) -> Result<(), String> {
    let eps = epsilon(p, 4, n);
    let target = n - eps;
    let li2 = |x: i64| polylog_eval(&Padic::from_int(p, x, n), 2, n).map_err(|e| e.to_string());
    let (l3, lm3, l9) = (li2(3)?, li2(-3)?, li2(9)?);
    if !agree_to(&l3.mul_int(2), &lm3, target) || !agree_to(&l3.mul_int(6), &l9, target) {
        return Err(format!("p={p}: Li2(3)={l3}, Li2(-3)={lm3}, Li2(9)={l9}"));
    }
    for &z in points {
        let zp = Padic::from_int(p, z, n);
        let li1 = polylog_eval(&zp, 1, n).map_err(|e| e.to_string())?;
        let lg = (&Padic::one(p, n) - &zp).log().map_err(|e| e.to_string())?;
        if !agree_to(&li1, &-&lg, target) {
            return Err(format!("p={p}: Li1({z}) = {li1} but -log(1-z) = {}", -&lg));
        }
    }
    let g = g_table(p, 4, n).map_err(|e| e.to_string())?;
    for m in 0..=4u32 {
        let start = (((m as f64 - 1.0) * (p as f64 - 1.0)) / (p as f64).ln()).ceil().max(1.0) as u64;
        for k in start..g.k0 {
            let c = g.coeff(m as usize, k as usize);
            if !c.is_zero() && (c.valuation() as f64) < g_coefficient_bound(p, m, k) - 1e-9 {
                return Err(format!("p={p}: v(b_{m},{k}) = {} below bound", c.valuation()));
            }
        }
    }
    for r in 2..p {
        let t = disc_table(p, r, 4, n).map_err(|e| e.to_string())?;
        for (m, s) in t.polylogs.iter().enumerate() {
            for (k, c) in s.coeffs().iter().enumerate() {
                let bound = match (m, k) {
                    (0, 0) => 0,
                    (m, 0) => m as i64,
                    (m, k) => k as i64 - m as i64 * floor_log_p(k as u64, p) as i64,
                };
                if !c.is_zero() && c.valuation() < bound {
                    return Err(format!("p={p}: Li_{m} coefficient {k} on disc {r} has valuation {}", c.valuation()));
                }
            }
        }
    }
    // closed-form leading coefficients of the depth-2 function
    let a_q2 = depth2_constant(p, q, n, 20).map_err(|e| e.to_string())?;
    let a = normalized_a(p, q, &a_q2, n).map_err(|e| e.to_string())?;
    let target2 = n - epsilon(p, 2, n);
    for r in 2..p {
        let c = f2_leading_coeffs(p, r, &a, n).map_err(|e| e.to_string())?;
        let f = normalized_f2(p, r, &a, n).map_err(|e| e.to_string())?;
        for (i, ci) in c.iter().enumerate() {
            if !agree_to(ci, &f.coeff(i), target2) {
                return Err(format!("p={p} q={q} disc {r}: c{i} = {ci} vs series {}", f.coeff(i)));
            }
        }
    }
    Ok(())
}

/// Functional equations, valuation bounds and closed forms at `count` random primes `5 ≤ p ≤ 100`.
pub fn identity_suite(count: u32) -> Result<(), String> {
    let primes = primes_in(5, 100);
    let strat = (
        prop::sample::select(primes),
        10i64..=14,
        prop::collection::vec(any::<i32>(), 5),
        prop::sample::select(vec![3u64, 5, 7, 11, 13]),
    );
    runner(count)
        .run(&strat, |(p, n, raw, q)| {
            let points: Vec<i64> = raw
                .iter()
                .map(|&x| {
                    let x = x as i64;
                    match x.rem_euclid(p as i64) {
                        0 => x + 2,
                        1 => x + 1,
                        _ => x,
                    }
                })
                .collect();
            let q = if q == p { 17 } else { q };
            assert!(is_prime(q));
            check_identities(p, n, &points, q).map_err(TestCaseError::fail)
        })
        .map_err(failure)
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn one() -> BigInt {
    BigInt::one()
}
