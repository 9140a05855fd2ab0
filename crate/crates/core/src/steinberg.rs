//! Steinberg decompositions in `E ⊗ E`, `E = ℚ ⊗ ℚ^×`, and the DCW coefficients built from them.
//!
//! `E` has the primes as a basis (`[−1] = 0` after tensoring with ℚ), so an
//! element of `E ⊗ E` is a rational matrix indexed by pairs of primes and
//! `[t] ⊗ [1 − t]` is the outer product of the exponent vectors of `t` and `1 − t`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::EchelonSpan;
use crate::padic::{is_prime, primes_in, vp_int, Padic};
use crate::series::polylog_values;
use crate::Rational;

/// A rational number serialized as `"n/d"` (or `"n"`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub Rational);

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Q {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad rational `{s}`"));
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim().parse::<BigInt>().map_err(|_| bad())?, d.trim().parse::<BigInt>().map_err(|_| bad())?),
            None => (s.trim().parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Q(Rational::new(n, d)))
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinbergTerm {
    pub c: Q,
    pub t: Q,
}

/// `[l] ⊗ [q] = Σ c_i [t_i] ⊗ [1 − t_i]`, with every `t_i` and `1 − t_i` a p-unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinbergDecomposition {
    pub l: u64,
    pub q: u64,
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    pub terms: Vec<SteinbergTerm>,
}

/// Exponent vector of a nonzero rational over the given primes; `None` if other primes divide it.
fn exponents(x: &Rational, primes: &[u64]) -> Option<Vec<i64>> {
    let mut n = x.numer().abs();
    let mut d = x.denom().abs();
    let mut out = Vec::with_capacity(primes.len());
    for &r in primes {
        let rb = BigInt::from(r);
        let a = vp_int(&n, r) as i64;
        let b = vp_int(&d, r) as i64;
        n /= num_traits::pow(rb.clone(), a as usize);
        d /= num_traits::pow(rb, b as usize);
        out.push(a - b);
    }
    (n.is_one() && d.is_one()).then_some(out)
}

/// `[t] ⊗ [1 − t]` as a flattened `|primes|²` vector.
fn steinberg_vector(t: &Rational, primes: &[u64]) -> Option<Vec<Rational>> {
    let a = exponents(t, primes)?;
    let b = exponents(&(Rational::one() - t), primes)?;
    let mut v = Vec::with_capacity(a.len() * b.len());
    for x in &a {
        for y in &b {
            v.push(Rational::from_integer(BigInt::from(x * y)));
        }
    }
    Some(v)
}

fn target_vector(l: u64, q: u64, primes: &[u64]) -> Vec<Rational> {
    let n = primes.len();
    let mut v = vec![Rational::zero(); n * n];
    let i = primes.iter().position(|&r| r == l).unwrap();
    let j = primes.iter().position(|&r| r == q).unwrap();
    v[i * n + j] = Rational::one();
    v
}

impl SteinbergDecomposition {
    /// Checks the defining identity exactly and the p-unit conditions.
    pub fn verify(&self) -> Result<()> {
        let mut primes: Vec<u64> = vec![self.l, self.q];
        for term in &self.terms {
            for x in [term.t.0.clone(), Rational::one() - &term.t.0] {
                if x.is_zero() {
                    return Err(Error::Invalid("Steinberg argument t ∈ {0, 1}".into()));
                }
                for part in [x.numer().abs(), x.denom().abs()] {
                    let mut m = part;
                    let mut r = 2u64;
                    while m > BigInt::one() {
                        if (&m % r).is_zero() {
                            if !primes.contains(&r) {
                                primes.push(r);
                            }
                            m /= r;
                        } else {
                            r += 1;
                        }
                    }
                }
                if vp_int(x.numer(), self.p) > 0 || vp_int(x.denom(), self.p) > 0 {
                    return Err(Error::Invalid(format!("Steinberg argument {} is not a {}-unit", Q(x), self.p)));
                }
            }
        }
        primes.sort_unstable();
        primes.dedup();
        let n = primes.len();
        let mut sum = vec![Rational::zero(); n * n];
        for term in &self.terms {
            let v = steinberg_vector(&term.t.0, &primes).expect("support was collected above");
            for (s, x) in sum.iter_mut().zip(v) {
                *s += &term.c.0 * x;
            }
        }
        if sum != target_vector(self.l, self.q, &primes) {
            return Err(Error::Invalid(format!("terms do not sum to [{}]⊗[{}]", self.l, self.q)));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let d: Self = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        d.verify()?;
        Ok(d)
    }
}

/// Default search height for the triples `a + b = c`.
pub const DEFAULT_HEIGHT: u64 = 20_000;

fn smooth_numbers(primes: &[u64], height: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &r in primes {
        let mut next = Vec::new();
        for &x in &out {
            let mut y = x;
            while y <= height {
                next.push(y);
                match y.checked_mul(r) {
                    Some(z) => y = z,
                    None => break,
                }
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

/// Candidate arguments `t`: the six cross-ratio images of `a/c` for coprime
/// smooth p-free `a + b = c`, ordered by `c`, then `a`.
pub fn steinberg_candidates(bound: u64, p: u64, height: u64) -> Vec<Rational> {
    let primes: Vec<u64> = primes_in(2, bound).into_iter().filter(|&r| r != p).collect();
    let smooth = smooth_numbers(&primes, height);
    let is_smooth = |x: u64| smooth.binary_search(&x).is_ok();
    let mut out = Vec::new();
    for &c in &smooth {
        for &a in smooth.iter().take_while(|&&a| 2 * a <= c) {
            let b = c - a;
            if a == b || a.gcd(&b) != 1 || !is_smooth(b) {
                continue;
            }
            let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
            for (n, d) in [
                (a.clone(), c.clone()),
                (b.clone(), c.clone()),
                (c.clone(), a.clone()),
                (c.clone(), b.clone()),
                (-a.clone(), b.clone()),
                (-b.clone(), a.clone()),
            ] {
                out.push(Rational::new(n, d));
            }
        }
    }
    out
}

/// Finds a decomposition of `[l] ⊗ [q]` into Steinberg elements whose arguments only
/// involve primes `≤ bound` other than `p`.
pub fn steinberg_decompose(l: u64, q: u64, bound: u64, p: u64) -> Result<SteinbergDecomposition> {
    steinberg_decompose_with_height(l, q, bound, p, DEFAULT_HEIGHT)
}

pub fn steinberg_decompose_with_height(l: u64, q: u64, bound: u64, p: u64, height: u64) -> Result<SteinbergDecomposition> {
    for r in [l, q] {
        if !is_prime(r) || r > bound {
            return Err(Error::Invalid(format!("{r} must be a prime ≤ the bound {bound}")));
        }
        if r == p {
            return Err(Error::Invalid(format!("excluded prime {p} occurs in [{l}]⊗[{q}]")));
        }
    }
    let primes: Vec<u64> = primes_in(2, bound).into_iter().filter(|&r| r != p).collect();
    let target = target_vector(l, q, &primes);
    let mut span = EchelonSpan::<Rational>::new(primes.len() * primes.len());
    let mut chosen = Vec::new();
    for t in steinberg_candidates(bound, p, height) {
        let v = steinberg_vector(&t, &primes).expect("candidates are smooth");
        if span.insert(&v) {
            chosen.push(t);
            if let Some(x) = span.solve(&target) {
                let terms = chosen
                    .into_iter()
                    .zip(x)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(t, c)| SteinbergTerm { c: Q(c), t: Q(t) })
                    .collect();
                let dec = SteinbergDecomposition {
                    l,
                    q,
                    p,
                    bound: Some(bound),
                    terms,
                };
                dec.verify()?;
                return Ok(dec);
            }
        }
    }
    Err(Error::InsufficientBound { l, q, p, bound, height })
}

/// `a_{τ_l τ_q} = −Σ c_i Li₂(t_i)` in ℚ_p, to absolute precision N.
pub fn dcw_coefficient(p: u64, order: i64, dec: &SteinbergDecomposition) -> Result<Padic> {
    if dec.p != p {
        return Err(Error::Invalid(format!("decomposition avoids {} but p = {p}", dec.p)));
    }
    // denominators of c_i divisible by p cost precision
    let extra = dec
        .terms
        .iter()
        .map(|t| vp_int(t.c.0.denom(), p) as i64)
        .max()
        .unwrap_or(0);
    let work = order + extra;
    let mut acc = Padic::zero(p, work);
    for term in &dec.terms {
        let t = Padic::from_rational(p, term.t.0.numer().clone(), term.t.0.denom().clone(), work + 1)?;
        let li2 = polylog_values(&t, 2, work)?.pop().unwrap();
        let c = Padic::from_rational(p, term.c.0.numer().clone(), term.c.0.denom().clone(), work + 2 * extra + 2)?;
        acc = &acc + &(&c * &li2);
    }
    Ok((-&acc).with_precision(order))
}

/// Closed forms for `a_{τ_q τ_2}`: `(c, x)` with `a_{τ_q τ_2} = c·Li₂(x)`.
pub fn dcw_special_case(q: u64) -> Option<(Rational, i64)> {
    if q == 3 {
        return Some((-Rational::one(), 3));
    }
    let n_fermat = (q - 1).is_power_of_two().then(|| (q - 1).trailing_zeros());
    if let Some(n) = n_fermat.filter(|&n| n > 0 && is_prime(q)) {
        return Some((-Rational::new(1.into(), n.into()), q as i64));
    }
    let n_mersenne = (q + 1).is_power_of_two().then(|| (q + 1).trailing_zeros());
    if let Some(n) = n_mersenne.filter(|&n| n > 1 && is_prime(q)) {
        return Some((-Rational::new(1.into(), n.into()), -(q as i64)));
    }
    None
}

/// Evaluates a closed form from [`dcw_special_case`].
pub fn dcw_special_value(p: u64, q: u64, order: i64) -> Result<Option<Padic>> {
    let Some((c, x)) = dcw_special_case(q) else {
        return Ok(None);
    };
    let li = polylog_values(&Padic::from_int(p, x, order + 1), 2, order)?.pop().unwrap();
    let c = Padic::from_rational(p, c.numer().clone(), c.denom().clone(), order + 2)?;
    Ok(Some((&c * &li).with_precision(order)))
}

/// `a_{τ_q τ_2}` for the depth-2 equation: the closed form when one applies and `x ≢ 0, 1`
/// mod p, else a decomposition of `[q] ⊗ [2]` at the given support bound. Relative precision `order`.
pub fn depth2_constant(p: u64, q: u64, order: i64, bound: u64) -> Result<Padic> {
    let a = depth2_constant_abs(p, q, order, bound)?;
    if a.is_zero() || a.relative_precision() >= order {
        return Ok(a);
    }
    depth2_constant_abs(p, q, order + a.valuation().max(1), bound)
}

/// `a_{τ_q τ₂}` to absolute precision `order`.
fn depth2_constant_abs(p: u64, q: u64, order: i64, bound: u64) -> Result<Padic> {
    if let Some((_, x)) = dcw_special_case(q) {
        let r = x.rem_euclid(p as i64);
        if r != 0 && r != 1 {
            return Ok(dcw_special_value(p, q, order)?.unwrap());
        }
    }
    let mut b = bound.max(q);
    loop {
        match steinberg_decompose(q, 2, b, p) {
            Ok(dec) => return dcw_coefficient(p, order, &dec),
            Err(Error::InsufficientBound { .. }) if b < 4 * bound.max(q) + 40 => {
                b = primes_in(b + 1, 10 * b + 10).first().copied().unwrap_or(b + 1);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Size of the decomposition search space, for diagnostics.
pub fn candidate_count(bound: u64, p: u64, height: u64) -> usize {
    steinberg_candidates(bound, p, height).len()
}
