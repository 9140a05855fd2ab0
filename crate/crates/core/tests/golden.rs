mod common;

use num_bigint::BigInt;
use refined_ck::analysis::is_wieferich;
use refined_ck::loci::{a_32, coeffs_z16, depth2_locus, depth4_locus, f4_eval, integral_points_10, locus_11, verify_kim, Verdict};
use refined_ck::roots::zp_roots;
use refined_ck::series::SeriesApprox;
use refined_ck::steinberg::depth2_constant;
use refined_ck::{Padic, PrecisionPolicy};

const DEPTH2_P5: [&str; 6] = [
    "2 + O(5^9)",
    "2 + 4*5 + 4*5^2 + 4*5^3 + 4*5^4 + 4*5^5 + 4*5^6 + 4*5^7 + 4*5^8 + O(5^9)",
    "3 + O(5^6)",
    "3 + 5^2 + 2*5^3 + 5^4 + 3*5^5 + O(5^6)",
    "4 + 4*5 + 4*5^2 + 4*5^3 + 4*5^4 + 4*5^5 + 4*5^6 + 4*5^7 + 4*5^8 + O(5^9)",
    "4 + 5 + O(5^9)",
];

const DEPTH4_P7: [&str; 4] = [
    "2 + 7 + O(7^9)",
    "3 + O(7^9)",
    "4 + 6*7 + 6*7^2 + 6*7^3 + 6*7^4 + 6*7^5 + 6*7^6 + 6*7^7 + 6*7^8 + O(7^9)",
    "6 + 6*7 + 6*7^2 + 6*7^3 + 6*7^4 + 6*7^5 + 6*7^6 + 6*7^7 + O(7^8)",
];

#[test]
fn depth2_locus_p5_q3() {
    let l = depth2_locus(5, 3, 10, &a_32(5, 10).unwrap()).unwrap();
    assert_eq!(l.len(), 6);
    for want in DEPTH2_P5 {
        assert!(l.roots().any(|z| common::matches_reference(z, want)), "missing {want}");
    }
    for z in [-3, -1, 3, 9] {
        assert!(l.contains(&BigInt::from(z)));
    }
}

#[test]
fn depth4_locus_p7() {
    let l = depth4_locus(7, 3, PrecisionPolicy::new(10, 40).unwrap(), None).unwrap();
    let got: Vec<String> = l.roots().map(Padic::to_string).collect();
    assert_eq!(got, DEPTH4_P7);
}

#[test]
fn depth4_locus_p5_and_eliminated_points() {
    let l = depth4_locus(5, 3, PrecisionPolicy::new(10, 40).unwrap(), None).unwrap();
    assert_eq!(l.len(), 4);
    for z in [-3, -1, 3, 9] {
        assert!(l.contains(&BigInt::from(z)));
    }
    let c = coeffs_z16(5, 20).unwrap();
    let f2 = f4_eval(&Padic::from_int(5, 2, 20), 20, &c).unwrap();
    assert!(common::matches_reference(&f2, "4*5^13 + 4*5^14 + 3*5^15 + 5^16 + 3*5^18 + 3*5^19 + O(5^20)"));
    let z0: Padic = "3 + 5^2 + 2*5^3 + 5^4 + 3*5^5 + 5^6 + 5^7 + 5^9 + 2*5^10 + 3*5^11 + 2*5^12 + O(5^13)"
        .parse()
        .unwrap();
    let fz0 = f4_eval(&z0, 20, &c).unwrap();
    assert!(common::matches_reference(&fz0, "4*5^13 + O(5^14)"));
    for z in [-3, -1, 3, 9] {
        let v = f4_eval(&Padic::from_int(5, z, 20), 20, &c).unwrap();
        assert!(v.is_zero() && v.precision() >= 20, "f4({z}) = {v}");
    }
}

#[test]
fn integral_points_for_q3() {
    let mut pts: Vec<i64> = integral_points_10(3, 12)
        .into_iter()
        .filter(|(_, d)| *d == BigInt::from(1))
        .map(|(n, _)| n.try_into().unwrap())
        .collect();
    pts.sort();
    assert_eq!(pts, vec![-3, -1, 3, 9]);
}

#[test]
fn locus_11_is_minus_one() {
    for p in [5u64, 7, 11, 13] {
        let l = locus_11(p, PrecisionPolicy::new(12, 40).unwrap()).unwrap();
        assert_eq!(l.len(), 1);
        assert!(l.contains(&BigInt::from(-1)));
    }
}

#[test]
fn q3_sizes_small_p() {
    let want = [(5u64, 6usize), (7, 8), (11, 18), (13, 16), (17, 22), (19, 20), (23, 20), (29, 26), (31, 36)];
    for (p, n) in want {
        let l = depth2_locus(p, 3, 10, &a_32(p, 10).unwrap()).unwrap();
        assert_eq!(l.len(), n, "p = {p}");
    }
}

#[test]
fn mixed_q_sizes() {
    for (q, p, n) in [(5u64, 29u64, 38usize), (7, 17, 15), (11, 47, 48), (19, 43, 78)] {
        let a = depth2_constant(p, q, 10, 20).unwrap();
        assert_eq!(depth2_locus(p, q, 10, &a).unwrap().len(), n, "q = {q}, p = {p}");
    }
}

#[test]
fn kim_small_primes() {
    for p in [5u64, 7, 11, 13, 17, 19, 23] {
        let r = verify_kim(p, PrecisionPolicy::new(12, 40).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r}");
    }
}

#[test]
fn two_adic_root_examples() {
    let f = SeriesApprox::from_integers(2, &[-1, 0, 1], 2);
    assert!(zp_roots(&f).unwrap_err().is_precision());
    let f = SeriesApprox::from_integers(2, &[-1, 0, 1], 3);
    let r: Vec<String> = zp_roots(&f).unwrap().iter().map(|r| r.root.to_string()).collect();
    assert_eq!(r, ["1 + O(2^2)", "1 + 2 + O(2^2)"]);
}

#[test]
fn wieferich_flags() {
    assert!(is_wieferich(1093, 2));
    assert!(is_wieferich(3511, 2));
    assert!(is_wieferich(43, 19));
    assert!(!is_wieferich(5, 2));
    assert!(!is_wieferich(7, 2));
}

#[test]
fn usage_errors() {
    assert!(depth2_locus(5, 5, 10, &Padic::zero(5, 10)).is_err());
    assert!(depth4_locus(7, 5, PrecisionPolicy::fixed(10), None).is_err());
    assert!(PrecisionPolicy::new(20, 10).is_err());
}

/// Around two minutes in release mode; run with `--ignored`.
#[test]
#[ignore]
fn q3_sizes_near_1093() {
    use refined_ck::analysis::survey;
    let recs = survey(3, &[1091, 1093, 1097], PrecisionPolicy::new(10, 30).unwrap(), 20).unwrap();
    let sizes: Vec<usize> = recs.iter().map(|r| r.size).collect();
    assert_eq!(sizes, vec![1076, 2154, 1078]);
    assert_eq!(recs[1].histogram[0], 14);
}
