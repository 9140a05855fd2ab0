use refined_ck::analysis::{
    disc_root_bound, global_bounds, normalized_a, observed_regime, plot_data, survey, to_csv, Regime,
};
use refined_ck::steinberg::depth2_constant;
use refined_ck::PrecisionPolicy;

#[test]
fn survey_q3_prefix_and_csv() {
    let recs = survey(3, &[5, 7, 11, 13], PrecisionPolicy::new(10, 30).unwrap(), 20).unwrap();
    let sizes: Vec<usize> = recs.iter().map(|r| r.size).collect();
    assert_eq!(sizes, vec![6, 8, 18, 16]);
    // observed for q = 3, not a general invariant
    assert!(sizes.iter().all(|s| s % 2 == 0));
    // 11 is a base-3 Wieferich prime
    assert!(recs[2].wieferichq && recs[2].nu == Some(-1) && recs[2].regime == Regime::AboutTwoP);
    let csv = to_csv(&recs);
    assert!(csv.starts_with("p,q,size,histogram,nu,wieferich2,wieferichq,regime\n"));
    assert_eq!(csv.lines().count(), 5);
    assert_eq!(plot_data(&recs).lines().next(), Some("5 6"));
    for r in &recs {
        let total: usize = r.histogram.iter().enumerate().map(|(k, c)| k * c).sum();
        assert_eq!(total, r.size);
        assert!(r.size as u64 <= global_bounds(r.p).1);
    }
}

#[test]
fn per_disc_bound_is_two() {
    for (q, p) in [(5u64, 29u64), (11, 47), (19, 43)] {
        let a_q2 = depth2_constant(p, q, 10, 20).unwrap();
        let a = normalized_a(p, q, &a_q2, 10).unwrap();
        for r in 2..p {
            assert!(disc_root_bound(p, r, &a, 10).unwrap() <= 2);
        }
    }
}

#[test]
fn regime_bands() {
    assert_eq!(observed_regime(43, 78), Regime::AboutTwoP);
    assert_eq!(observed_regime(47, 48), Regime::AboutP);
    assert_eq!(observed_regime(3, 2), Regime::SmallP);
    assert_eq!(observed_regime(100, 150), Regime::Other);
}
