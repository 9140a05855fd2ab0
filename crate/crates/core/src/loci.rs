//! Depth-2 and depth-4 refined Chabauty–Kim loci for `S = {2, q}`.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{is_prime, Padic, PrecisionPolicy};
use crate::roots::{zp_roots, RootWithPrecision};
use crate::series::{disc_table, polylog_values, SeriesApprox};

/// Where the coefficients of a [`CoeffSet`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoeffSource {
    DeterminantMinors,
    PeriodsFormula,
    UserSupplied,
}

/// Constants of the depth-2 equation and, optionally, the depth-4 equation
/// `a·Li₄(z) + b·log(z)Li₃(z) + c·log(z)³Li₁(z) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffSet {
    pub a_q2: Padic,
    pub depth4: Option<[Padic; 3]>,
    pub source: CoeffSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Refinement {
    #[serde(rename = "(1,0)")]
    OneZero,
    #[serde(rename = "(1,1)")]
    OneOne,
}

impl fmt::Display for Refinement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Refinement::OneZero => "(1,0)",
            Refinement::OneOne => "(1,1)",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PointStatus {
    /// A known S-integral point.
    Confirmed,
    /// Survived the filter at the working precision but is not a known integral point.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusPoint {
    pub disc: u64,
    pub point: RootWithPrecision,
    pub status: Option<PointStatus>,
}

/// A finite set of points of `X(ℤ_p)` grouped by residue disc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CKLocus {
    pub p: u64,
    pub q: u64,
    pub depth: u32,
    pub refinement: Refinement,
    pub precision: i64,
    pub points: Vec<LocusPoint>,
    /// Discs (or points) that needed more than the requested precision.
    pub escalated: Vec<u64>,
    /// Size of the locus this one was filtered from (depth 4 only).
    pub filtered_from: Option<usize>,
}

#[derive(Serialize)]
struct PointJson {
    disc: u64,
    digits: Vec<u64>,
    abs_prec: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    status: Option<PointStatus>,
}

#[derive(Serialize)]
struct LocusJson {
    p: u64,
    q: u64,
    depth: u32,
    refinement: Refinement,
    precision: i64,
    points: Vec<PointJson>,
}

impl CKLocus {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn roots(&self) -> impl Iterator<Item = &Padic> {
        self.points.iter().map(|pt| &pt.point.root)
    }

    /// Number of points in each disc `2..p`, indexed by residue.
    pub fn per_disc_counts(&self) -> Vec<(u64, usize)> {
        (2..self.p)
            .map(|r| (r, self.points.iter().filter(|pt| pt.disc == r).count()))
            .collect()
    }

    /// Whether some point of the locus agrees with `z` to the point's precision.
    pub fn contains(&self, z: &BigInt) -> bool {
        self.roots().any(|r| approximates(r, z))
    }

    pub fn to_json(&self) -> String {
        let j = LocusJson {
            p: self.p,
            q: self.q,
            depth: self.depth,
            refinement: self.refinement,
            precision: self.precision,
            points: self
                .points
                .iter()
                .map(|pt| PointJson {
                    disc: pt.disc,
                    digits: pt.point.root.digits(),
                    abs_prec: pt.point.root.precision(),
                    status: pt.status,
                })
                .collect(),
        };
        serde_json::to_string(&j).expect("locus serializes")
    }

    /// One point per line in digit-expansion form.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for pt in &self.points {
            s.push_str(&pt.point.root.to_string());
            if let Some(st) = pt.status {
                s.push_str(match st {
                    PointStatus::Confirmed => "  [CONFIRMED]",
                    PointStatus::Unresolved => "  [UNRESOLVED]",
                });
            }
            s.push('\n');
        }
        s
    }

    fn sort(&mut self) {
        self.points.sort_by_key(|a| (a.disc, a.point.root.digits()));
    }
}

/// `z` agrees with the integer `n` modulo `p^N` for the precision `N` of `z`.
pub fn approximates(z: &Padic, n: &BigInt) -> bool {
    let d = z - &Padic::from_int(z.prime(), n.clone(), z.precision());
    d.is_zero()
}

/// `p` and `q` are distinct odd primes.
pub fn check_primes(p: u64, q: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::Invalid(format!("p = {p} must be an odd prime")));
    }
    if !is_prime(q) || q == 2 {
        return Err(Error::Invalid(format!("q = {q} must be an odd prime")));
    }
    if p == q {
        return Err(Error::Invalid(format!("p = {p} lies in S = {{2, {q}}}")));
    }
    Ok(())
}

/// `log(2)·log(q)·Li₂ − a_q2·log·Li₁` on the disc of `residue`, of order N.
pub fn f2_series(p: u64, q: u64, residue: u64, order: i64, a_q2: &Padic) -> Result<SeriesApprox> {
    check_primes(p, q)?;
    let table = disc_table(p, residue, 2, order)?;
    let log2 = log_relative(p, 2, order)?;
    let logq = log_relative(p, q, order)?;
    let first = table.polylogs[2].scale(&(&log2 * &logq));
    let second = table.log.mul(&table.polylogs[1]).scale(a_q2);
    Ok(first.sub(&second))
}

/// `log(b)` for an integer unit `b`, to relative precision N.
pub fn log_relative(p: u64, b: u64, order: i64) -> Result<Padic> {
    let mut prec = order + 1;
    loop {
        let l = Padic::from_int(p, b, prec).log()?;
        if l.is_zero() || prec - l.valuation() >= order {
            return Ok(l);
        }
        prec = order + l.valuation();
    }
}

/// Roots of `f` on the disc of `residue`, as points `z = ζ + p·t`.
fn disc_points(p: u64, residue: u64, f: &SeriesApprox) -> Result<Vec<LocusPoint>> {
    let roots = zp_roots(f).map_err(|e| e.on_disc(residue))?;
    roots
        .into_iter()
        .map(|r| {
            let prec = r.root.precision() + 1;
            let zeta = Padic::teichmuller(p, residue, prec)?;
            let z = &zeta + &r.root.shift(1);
            Ok(LocusPoint {
                disc: residue,
                point: RootWithPrecision {
                    root: z.with_precision(prec),
                    residue: r.residue,
                    level: r.level,
                },
                status: None,
            })
        })
        .collect()
}

/// Depth-2 locus: the zeros of the depth-2 function on every disc `ζ ∉ {0, 1}`.
pub fn depth2_locus(p: u64, q: u64, order: i64, a_q2: &Padic) -> Result<CKLocus> {
    check_primes(p, q)?;
    let per_disc: Vec<Result<Vec<LocusPoint>>> = (2..p)
        .into_par_iter()
        .map(|r| {
            let f = f2_series(p, q, r, order, a_q2).map_err(|e| e.on_disc(r))?;
            disc_points(p, r, &f)
        })
        .collect();
    let mut points = Vec::new();
    for d in per_disc {
        points.extend(d?);
    }
    let mut locus = CKLocus {
        p,
        q,
        depth: 2,
        refinement: Refinement::OneZero,
        precision: order,
        points,
        escalated: Vec::new(),
        filtered_from: None,
    };
    locus.sort();
    Ok(locus)
}

/// `Li_m(x)` for an integer `x`, to relative precision N where the valuation allows it.
pub fn polylog_relative(p: u64, x: i64, m: u32, order: i64) -> Result<Padic> {
    let mut prec = order + m as i64;
    loop {
        let v = polylog_values(&Padic::from_int(p, x, prec), m, prec)?.pop().unwrap();
        if v.is_zero() || prec - v.valuation() >= order || prec >= 4 * order + 8 {
            return Ok(v);
        }
        prec = order + v.valuation();
    }
}

/// `a_{τ₃τ₂} = −Li₂(3)`, to relative precision N.
pub fn a_32(p: u64, order: i64) -> Result<Padic> {
    Ok(-&polylog_relative(p, 3, 2, order)?)
}

/// Row `(Li₄(x), log(x)Li₃(x), log(x)³Li₁(x))` of the determinant.
fn det_row(x: &Padic, order: i64) -> Result<[Padic; 3]> {
    let li = polylog_values(x, 4, order)?;
    let lg = x.log()?;
    let lg3 = &(&lg * &lg) * &lg;
    Ok([li[4].clone(), &lg * &li[3], &lg3 * &li[1]])
}

/// Coefficients for `q = 3`: `a_q2 = −Li₂(3)` and the cofactors of the first row of
/// the determinant with rows at `z`, `3`, `9`.
pub fn coeffs_z16(p: u64, order: i64) -> Result<CoeffSet> {
    check_primes(p, 3)?;
    let r3 = det_row(&Padic::from_int(p, 3, order), order)?;
    let r9 = det_row(&Padic::from_int(p, 9, order), order)?;
    let minor = |i: usize, j: usize| &(&r3[i] * &r9[j]) - &(&r3[j] * &r9[i]);
    let abc = [minor(1, 2), -&minor(0, 2), minor(0, 1)];
    if abc.iter().all(Padic::is_zero) {
        return Err(Error::precision("rows at 3 and 9 are indistinguishable from dependent"));
    }
    Ok(CoeffSet {
        a_q2: a_32(p, order)?,
        depth4: Some(abc),
        source: CoeffSource::DeterminantMinors,
    })
}

/// `a·Li₄(z) + b·log(z)Li₃(z) + c·log(z)³Li₁(z)`.
pub fn f4_eval(z: &Padic, order: i64, coeffs: &CoeffSet) -> Result<Padic> {
    let abc = coeffs
        .depth4
        .as_ref()
        .ok_or_else(|| Error::Invalid("coefficient set has no depth-4 part".into()))?;
    let row = det_row(z, order)?;
    Ok(&(&(&abc[0] * &row[0]) + &(&abc[1] * &row[1])) + &(&abc[2] * &row[2]))
}

/// Points `z ∈ ℤ[1/2q]` with `z, 1 − z` both `{2, q}`-units, reducing to `1` mod 2 and to
/// `X ∪ {0}` mod q. Exponents are searched in `[−bound, bound]`.
pub fn integral_points_10(q: u64, bound: i32) -> Vec<(BigInt, BigInt)> {
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};
    let two = BigRational::from_integer(2.into());
    let qq = BigRational::from_integer(q.into());
    let pow = |b: &BigRational, e: i32| {
        if e >= 0 {
            num_traits::pow(b.clone(), e as usize)
        } else {
            num_traits::pow(b.recip(), (-e) as usize)
        }
    };
    let split = |x: &BigRational| -> Option<(i32, i32)> {
        // x = ±2^a q^b ?
        let mut a = 0;
        let mut b = 0;
        let (mut n, mut d) = (x.numer().abs(), x.denom().abs());
        for (prime, e) in [(BigInt::from(2), &mut a), (BigInt::from(q), &mut b)] {
            while (&n % &prime).is_zero() {
                n /= &prime;
                *e += 1;
            }
            while (&d % &prime).is_zero() {
                d /= &prime;
                *e -= 1;
            }
        }
        (n.is_one() && d.is_one()).then_some((a, b))
    };
    let mut out = Vec::new();
    for sign in [1i64, -1] {
        for a in -bound..=bound {
            for b in -bound..=bound {
                let z = pow(&two, a) * pow(&qq, b) * BigRational::from_integer(sign.into());
                let w = BigRational::one() - &z;
                if w.is_zero() {
                    continue;
                }
                let Some((c, d)) = split(&w) else { continue };
                // mod 2: z ≡ 1, i.e. v₂(z) = 0 and v₂(1 − z) > 0
                let mod2 = a == 0 && c > 0;
                // mod q: v_q(z) > 0, or both z and 1 − z are q-units
                let modq = b > 0 || (b == 0 && d == 0);
                if mod2 && modq {
                    out.push((z.numer().clone(), z.denom().clone()));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn matches_rational(z: &Padic, num: &BigInt, den: &BigInt) -> bool {
    match Padic::from_rational(z.prime(), num.clone(), den.clone(), z.precision()) {
        Ok(x) => (z - &x).is_zero(),
        Err(_) => false,
    }
}

/// Depth-4 locus: depth-2 points at which the depth-4 function is indistinguishable from 0.
///
/// Surviving points that are not known integral points are UNRESOLVED; they make the
/// computation retry along the precision ladder of `policy`. With `coeffs = None` the
/// `q = 3` coefficients are computed at each rung.
pub fn depth4_locus(p: u64, q: u64, policy: PrecisionPolicy, coeffs: Option<&CoeffSet>) -> Result<CKLocus> {
    check_primes(p, q)?;
    if coeffs.is_none() && q != 3 {
        return Err(Error::Invalid(format!(
            "depth-4 coefficients for q = {q} are not known; supply (a_q2, a, b, c)"
        )));
    }
    let known = integral_points_10(q, 12);
    let ladder = policy.ladder();
    let mut last_err = None;
    for (i, &n) in ladder.iter().enumerate() {
        let owned;
        let c = match coeffs {
            Some(c) => c,
            None => match coeffs_z16(p, n) {
                Ok(c) => {
                    owned = c;
                    &owned
                }
                Err(e) if e.is_precision() => {
                    last_err = Some(e);
                    continue;
                }
                Err(e) => return Err(e),
            },
        };
        let d2 = match depth2_locus(p, q, n, &c.a_q2) {
            Ok(l) => l,
            Err(e) if e.is_precision() => {
                last_err = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        let candidates = d2.points.len();
        let mut points = Vec::new();
        let mut unresolved = false;
        for mut pt in d2.points {
            let z = &pt.point.root;
            let val = f4_eval(z, n, c)?;
            let is_known = known.iter().any(|(a, b)| matches_rational(z, a, b));
            if !val.is_zero() {
                if is_known {
                    return Err(Error::precision(format!(
                        "depth-4 function does not vanish at the integral point {z}: {val}"
                    ))
                    .on_disc(pt.disc));
                }
                continue;
            }
            pt.status = Some(if is_known {
                PointStatus::Confirmed
            } else {
                unresolved = true;
                PointStatus::Unresolved
            });
            points.push(pt);
        }
        let last = i + 1 == ladder.len();
        if !unresolved || last {
            let escalated = if i > 0 { (2..p).collect() } else { Vec::new() };
            let mut locus = CKLocus {
                p,
                q,
                depth: 4,
                refinement: Refinement::OneZero,
                precision: n,
                points,
                escalated,
                filtered_from: Some(candidates),
            };
            locus.sort();
            return Ok(locus);
        }
    }
    Err(last_err.unwrap_or_else(|| Error::precision("precision ladder exhausted")))
}

/// The `(1,1)` locus: Teichmüller points `ζ ≠ 1` with `Li₂(ζ)` indistinguishable from 0.
pub fn locus_11(p: u64, policy: PrecisionPolicy) -> Result<CKLocus> {
    if p < 3 || !is_prime(p) {
        return Err(Error::Invalid(format!("p = {p} must be an odd prime")));
    }
    let minus_one = p - 1;
    let ladder = policy.ladder();
    for (i, &n) in ladder.iter().enumerate() {
        let mut points = Vec::new();
        let mut ambiguous = None;
        for r in 2..p {
            let table = disc_table(p, r, 2, n)?;
            if !table.polylogs[2].coeff(0).is_zero() {
                continue;
            }
            if r != minus_one {
                ambiguous = Some(r);
            }
            let root = Padic::teichmuller(p, r, n)?;
            points.push(LocusPoint {
                disc: r,
                point: RootWithPrecision {
                    root,
                    residue: BigInt::from(r),
                    level: 0,
                },
                status: Some(if r == minus_one {
                    PointStatus::Confirmed
                } else {
                    PointStatus::Unresolved
                }),
            });
        }
        match ambiguous {
            Some(r) if i + 1 == ladder.len() => {
                return Err(Error::precision(format!("Li₂ of the Teichmüller point {r} is O({p}^{n})")).on_disc(r))
            }
            Some(_) => continue,
            None => {
                return Ok(CKLocus {
                    p,
                    q: 0,
                    depth: 2,
                    refinement: Refinement::OneOne,
                    precision: n,
                    points,
                    escalated: Vec::new(),
                    filtered_from: None,
                })
            }
        }
    }
    unreachable!("ladder is nonempty")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Inconclusive,
}

/// Outcome of checking Kim's conjecture for `S = {2, 3}` at one auxiliary prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KimReport {
    pub p: u64,
    pub verdict: Verdict,
    pub depth2_size: usize,
    pub depth4_size: usize,
    pub locus_11_size: usize,
    pub precision_used: i64,
    pub unresolved: Vec<String>,
}

impl fmt::Display for KimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        write!(
            f,
            "p={:<5} {v:<12} depth2={} depth4={} (1,1)={} N={}",
            self.p, self.depth2_size, self.depth4_size, self.locus_11_size, self.precision_used
        )?;
        for u in &self.unresolved {
            write!(f, " unresolved: {u}")?;
        }
        Ok(())
    }
}

/// PASS iff the depth-4 `(1,0)` locus is `{−3, −1, 3, 9}` and the `(1,1)` locus is `{−1}`.
pub fn verify_kim(p: u64, policy: PrecisionPolicy) -> Result<KimReport> {
    if p < 5 {
        return Err(Error::Invalid(format!("Kim verification needs p ≥ 5, got {p}")));
    }
    let d4 = depth4_locus(p, 3, policy, None)?;
    let l11 = locus_11(p, policy)?;
    let d2_size = d4.filtered_from.unwrap_or(0);
    let unresolved: Vec<String> = d4
        .points
        .iter()
        .filter(|pt| pt.status == Some(PointStatus::Unresolved))
        .map(|pt| pt.point.root.to_string())
        .collect();
    let expected = [-3i64, -1, 3, 9];
    let all_found = expected.iter().all(|&z| d4.contains(&BigInt::from(z)));
    let pass = unresolved.is_empty()
        && all_found
        && d4.len() == 4
        && l11.len() == 1
        && l11.contains(&BigInt::from(-1));
    Ok(KimReport {
        p,
        verdict: if pass { Verdict::Pass } else { Verdict::Inconclusive },
        depth2_size: d2_size,
        depth4_size: d4.len(),
        locus_11_size: l11.len(),
        precision_used: d4.precision,
        unresolved,
    })
}
