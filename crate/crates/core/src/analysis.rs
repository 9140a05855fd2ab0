//! Newton-polygon analysis of the depth-2 function and locus-size surveys.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::loci::{depth2_locus, f2_series, log_relative, CKLocus};
use crate::padic::{is_prime, p_pow, Padic, PrecisionPolicy};
use crate::roots::strassmann_bound;
use crate::series::{disc_table, SeriesApprox};
use crate::steinberg::depth2_constant;

/// `b^(p−1) ≡ 1 mod p²`.
pub fn is_wieferich(p: u64, b: u64) -> bool {
    assert!(!b.is_multiple_of(p), "{p} divides the base {b}");
    let m = p_pow(p, 2);
    BigInt::from(b).modpow(&BigInt::from(p - 1), &m) == BigInt::from(1)
}

/// `a = a_{τ_q τ₂} / (log 2 · log q)`, the constant of `Li₂ − a·log·Li₁`.
pub fn normalized_a(p: u64, q: u64, a_q2: &Padic, order: i64) -> Result<Padic> {
    let denom = &log_relative(p, 2, order)? * &log_relative(p, q, order)?;
    a_q2.try_div(&denom)
}

/// First three coefficients of `Li₂(ζ + pt) − a·log(ζ + pt)·Li₁(ζ + pt)` in closed form.
pub fn f2_leading_coeffs(p: u64, residue: u64, a: &Padic, order: i64) -> Result<[Padic; 3]> {
    let table = disc_table(p, residue, 2, order)?;
    let work = order + 4;
    let zeta = Padic::teichmuller(p, residue, work)?;
    let one = Padic::one(p, work);
    let li1 = table.polylogs[1].coeff(0);
    let one_minus_a = &one - a;
    let c0 = table.polylogs[2].coeff(0);
    let c1 = (&one_minus_a * &li1).try_div(&zeta)?.shift(1);
    let first = (&one - &a.mul_int(2)).try_div(&(&zeta * &(&one - &zeta)).mul_int(2))?;
    let second = (&one_minus_a * &li1).try_div(&(&zeta * &zeta).mul_int(2))?;
    let c2 = (&first - &second).shift(2);
    Ok([c0, c1, c2])
}

/// Per-disc bound on the number of zeros of `Li₂ − a·log·Li₁`.
///
/// Needs `p ≥ 5` and either `v_p(a) < 0` or `a ≢ 1/2 mod p`; otherwise the
/// valuation pattern gives no bound and an `Invalid` error is returned.
pub fn disc_root_bound(p: u64, residue: u64, a: &Padic, order: i64) -> Result<usize> {
    if p < 5 {
        return Err(Error::Invalid(format!("root bound needs p ≥ 5, got {p}")));
    }
    let half = Padic::from_rational(p, 1, 2, order)?;
    let nu = a.valuation();
    let near_half = nu >= 0 && {
        let d = a - &half;
        d.is_zero() || d.valuation() >= 1
    };
    if near_half {
        return Err(Error::Invalid("a ≡ 1/2 mod p: unbounded by this method".into()));
    }
    let f = normalized_f2(p, residue, a, order)?;
    strassmann_bound(&f)
}

/// `Li₂ − a·log·Li₁` on the disc of `residue`.
pub fn normalized_f2(p: u64, residue: u64, a: &Padic, order: i64) -> Result<SeriesApprox> {
    let table = disc_table(p, residue, 2, order)?;
    Ok(table.polylogs[2].sub(&table.log.mul(&table.polylogs[1]).scale(a)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// Size roughly p.
    #[serde(rename = "~p")]
    AboutP,
    /// Size roughly 2p.
    #[serde(rename = "~2p")]
    AboutTwoP,
    #[serde(rename = "small-p")]
    SmallP,
    #[serde(rename = "other")]
    Other,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::AboutP => "~p",
            Regime::AboutTwoP => "~2p",
            Regime::SmallP => "small-p",
            Regime::Other => "other",
        })
    }
}

/// Band of an observed size: `[0.6p, 1.4p]` or `[1.6p, 2p + 2]`.
pub fn observed_regime(p: u64, size: usize) -> Regime {
    let (p, s) = (p as f64, size as f64);
    if p < 5.0 {
        Regime::SmallP
    } else if (0.6 * p..=1.4 * p).contains(&s) {
        Regime::AboutP
    } else if (1.6 * p..=2.0 * p + 2.0).contains(&s) {
        Regime::AboutTwoP
    } else {
        Regime::Other
    }
}

/// Regime predicted from `ν = v_p(a)`.
pub fn predicted_regime(p: u64, nu: Option<i64>) -> Regime {
    match nu {
        _ if p < 5 => Regime::SmallP,
        Some(v) if v < 0 => Regime::AboutTwoP,
        _ => Regime::AboutP,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub p: u64,
    pub q: u64,
    pub size: usize,
    /// `histogram[k]` = number of discs holding exactly `k` points.
    pub histogram: Vec<usize>,
    pub nu: Option<i64>,
    pub wieferich2: bool,
    pub wieferichq: bool,
    pub regime: Regime,
    pub observed: Regime,
    pub precision: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SurveyRecord {
    pub const CSV_HEADER: &'static str = "p,q,size,histogram,nu,wieferich2,wieferichq,regime";

    pub fn csv_row(&self) -> String {
        let hist: Vec<String> = self.histogram.iter().map(usize::to_string).collect();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.p,
            self.q,
            if self.error.is_some() { "ERR".to_string() } else { self.size.to_string() },
            hist.join(";"),
            self.nu.map_or_else(String::new, |v| v.to_string()),
            self.wieferich2,
            self.wieferichq,
            self.regime
        )
    }
}

pub fn histogram(locus: &CKLocus) -> Vec<usize> {
    let counts = locus.per_disc_counts();
    let max = counts.iter().map(|c| c.1).max().unwrap_or(0);
    let mut h = vec![0; max + 1];
    for (_, c) in counts {
        h[c] += 1;
    }
    h
}

fn survey_one(q: u64, p: u64, policy: PrecisionPolicy, bound: u64) -> SurveyRecord {
    let mut rec = SurveyRecord {
        p,
        q,
        size: 0,
        histogram: Vec::new(),
        nu: None,
        wieferich2: is_wieferich(p, 2),
        wieferichq: is_wieferich(p, q),
        regime: predicted_regime(p, None),
        observed: Regime::Other,
        precision: policy.working,
        error: None,
    };
    let mut last = None;
    for n in policy.ladder() {
        let attempt = depth2_constant(p, q, n, bound).and_then(|a| {
            let nu = normalized_a(p, q, &a, n)?;
            let locus = depth2_locus(p, q, n, &a)?;
            Ok((nu, locus))
        });
        match attempt {
            Ok((a, locus)) => {
                rec.nu = (!a.is_zero()).then(|| a.valuation());
                rec.regime = predicted_regime(p, rec.nu);
                rec.size = locus.len();
                rec.histogram = histogram(&locus);
                rec.observed = observed_regime(p, rec.size);
                rec.precision = n;
                return rec;
            }
            Err(e) if e.is_precision() => last = Some(e),
            Err(e) => {
                last = Some(e);
                break;
            }
        }
    }
    rec.error = last.map(|e| e.to_string());
    rec
}

/// Depth-2 locus sizes for a fixed `q` over a list of auxiliary primes, computed in parallel.
pub fn survey(q: u64, primes: &[u64], policy: PrecisionPolicy, bound: u64) -> Result<Vec<SurveyRecord>> {
    if !is_prime(q) || q == 2 {
        return Err(Error::Invalid(format!("q = {q} must be an odd prime")));
    }
    let mut out: Vec<SurveyRecord> = primes
        .par_iter()
        .filter(|&&p| p != q && p > 2 && is_prime(p))
        .map(|&p| survey_one(q, p, policy, bound))
        .collect();
    out.sort_by_key(|r| r.p);
    Ok(out)
}

pub fn to_csv(records: &[SurveyRecord]) -> String {
    let mut s = String::from(SurveyRecord::CSV_HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

/// `p size` pairs for a scatter plot.
pub fn plot_data(records: &[SurveyRecord]) -> String {
    records
        .iter()
        .filter(|r| r.error.is_none())
        .map(|r| format!("{} {}\n", r.p, r.size))
        .collect()
}

/// The a priori bound `8(p−2) + 8(p−1)/log p` and the improved bound `2(p−2)`.
pub fn global_bounds(p: u64) -> (f64, u64) {
    let pf = p as f64;
    (8.0 * (pf - 2.0) + 8.0 * (pf - 1.0) / pf.ln(), 2 * (p - 2))
}

/// Series of the depth-2 function divided by `log 2 · log q`, for cross-checks.
pub fn f2_series_normalized(p: u64, q: u64, residue: u64, a_q2: &Padic, order: i64) -> Result<SeriesApprox> {
    let f = f2_series(p, q, residue, order, a_q2)?;
    let denom = &log_relative(p, 2, order)? * &log_relative(p, q, order)?;
    let inv = denom.inv()?;
    Ok(f.scale(&inv))
}
