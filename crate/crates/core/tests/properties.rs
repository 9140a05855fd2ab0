mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use refined_ck::padic::{p_pow, vp_int};
use refined_ck::Padic;

fn unit_of(p: u64, x: i64) -> i64 {
    if x.rem_euclid(p as i64) == 0 {
        x + 1
    } else {
        x
    }
}

/// `num/den` reduced mod `p^n`, as the canonical integer in `[0, p^n)`.
fn reduce(p: u64, num: &BigInt, den: &BigInt, n: i64) -> BigInt {
    let m = p_pow(p, n);
    let inv = den.extended_gcd(&m).x;
    (num * inv).mod_floor(&m)
}

fn same_mod(x: &Padic, num: &BigInt, den: &BigInt, n: i64) -> bool {
    let p = x.prime();
    let v = x.to_integer().expect("integral");
    (v - reduce(p, num, den, n)).mod_floor(&p_pow(p, n)) == BigInt::from(0)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_ops_agree_with_integers(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), n in 1i64..20, a in any::<i64>(), b in any::<i64>()) {
        let (x, y) = (Padic::from_int(p, a, n), Padic::from_int(p, b, n));
        let m = p_pow(p, n);
        let one = BigInt::from(1);
        prop_assert!(same_mod(&(&x + &y), &(BigInt::from(a) + b), &one, n));
        prop_assert!(same_mod(&(&x - &y), &(BigInt::from(a) - b), &one, n));
        prop_assert!(same_mod(&(&x * &y), &(BigInt::from(a) * b).mod_floor(&m), &one, n));
    }

    #[test]
    fn division_by_units_matches_rationals(p in prop::sample::select(vec![3u64, 5, 7, 13]), n in 1i64..15, a in any::<i32>(), b in any::<i32>()) {
        let b = unit_of(p, b as i64);
        let x = Padic::from_int(p, a, n);
        let q = x.try_div(&Padic::from_int(p, b, n)).unwrap();
        prop_assert!(same_mod(&q, &BigInt::from(a), &BigInt::from(b), n));
        prop_assert_eq!(q, Padic::from_rational(p, a, b, n).unwrap());
    }

    #[test]
    fn precision_propagation(p in prop::sample::select(vec![3u64, 5, 7]), na in 2i64..12, nb in 2i64..12, a in 1i64..1000, b in 1i64..1000) {
        let (x, y) = (Padic::from_int(p, a, na), Padic::from_int(p, b, nb));
        prop_assert_eq!((&x + &y).precision(), na.min(nb));
        let (vx, vy) = (vp_int(&BigInt::from(a), p) as i64, vp_int(&BigInt::from(b), p) as i64);
        if vx < na && vy < nb {
            prop_assert_eq!((&x * &y).precision(), (vx + nb).min(vy + na));
        }
        if vx < na {
            prop_assert_eq!(x.inv().unwrap().precision(), na - 2 * vx);
        }
    }

    #[test]
    fn log_is_additive_on_units(p in prop::sample::select(vec![3u64, 5, 7, 11, 29]), n in 2i64..14, a in any::<i32>(), b in any::<i32>()) {
        let (a, b) = (unit_of(p, a as i64), unit_of(p, b as i64));
        let (x, y) = (Padic::from_int(p, a, n), Padic::from_int(p, b, n));
        let lhs = (&x * &y).log().unwrap();
        let rhs = &x.log().unwrap() + &y.log().unwrap();
        prop_assert!(common::agree_to(&lhs, &rhs, n - 1), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn teichmuller_lifts(p in prop::sample::select(vec![3u64, 5, 7, 11, 97]), n in 1i64..20, a in 1u64..10_000) {
        let a = if a % p == 0 { a + 1 } else { a };
        let w = Padic::teichmuller(p, a, n).unwrap();
        prop_assert_eq!(w.residue(), Some(a % p));
        prop_assert_eq!(w.pow((p - 1) as u32), Padic::one(p, n));
        prop_assert!(w.log().unwrap().is_zero());
    }

    #[test]
    fn text_and_serde_roundtrip(p in prop::sample::select(vec![2u64, 5, 7, 43]), n in 1i64..12, a in any::<i64>(), d in 0i64..3) {
        let x = Padic::from_int(p, a, n).shift(-d);
        let back: Padic = x.to_string().parse().unwrap();
        prop_assert_eq!(&back, &x);
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<Padic>(&json).unwrap(), x);
    }
}

#[test]
fn planted_roots_simple() {
    common::planted_roots_property(1000).unwrap();
}

#[test]
fn planted_roots_clustered() {
    common::clustered_roots_property(300).unwrap();
}

#[test]
fn identities_at_random_primes() {
    common::identity_suite(20).unwrap();
}
