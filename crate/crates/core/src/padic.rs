//! Elements of ℚ_p with absolute precision tracking.
//!
//! A [`Padic`] stands for the set `p^v·u + O(p^N)`. Values that cannot be
//! distinguished from zero are stored as a zero flag together with their
//! envelope `O(p^N)`. Arithmetic follows the usual propagation rules:
//!
//! * `x ± y` is known modulo `p^min(N_x, N_y)`;
//! * `x · y` is known modulo `p^min(v_x + N_y, v_y + N_x)`;
//! * `1 / y` is known modulo `p^(N_y − 2 v_y)`.
//!
//! For a zero-flagged operand the valuation in these formulas is its
//! precision, which makes zeros propagate their envelope.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

thread_local! {
    static POWERS: RefCell<HashMap<(u64, u32), BigInt>> = RefCell::new(HashMap::new());
}

/// `p^e` for `e ≥ 0`, memoized per thread.
pub fn p_pow(p: u64, e: i64) -> BigInt {
    assert!(e >= 0, "negative exponent {e} in p_pow");
    let e = e as u32;
    if e < 2 {
        return if e == 0 { BigInt::one() } else { BigInt::from(p) };
    }
    POWERS.with(|cache| {
        let mut cache = cache.borrow_mut();
        if let Some(v) = cache.get(&(p, e)) {
            return v.clone();
        }
        let v = BigInt::from(p).pow(e);
        if cache.len() > 4096 {
            cache.clear();
        }
        cache.insert((p, e), v.clone());
        v
    })
}

/// p-adic valuation of a nonzero integer.
pub fn vp_int(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of 0");
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Valuation of a machine integer; `u32::MAX` for zero.
pub fn vp_u64(mut n: u64, p: u64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Inverse of `a` modulo `m`; `a` must be coprime to `m`.
pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let g = a.mod_floor(m).extended_gcd(m);
    debug_assert!(g.gcd.is_one(), "not invertible");
    g.x.mod_floor(m)
}

/// Trial-division primality test, sufficient for the auxiliary primes in use.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// An element of ℚ_p known modulo `p^prec`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Padic {
    p: u64,
    /// Exact valuation when `unit != 0`; equals `prec` for zero-flagged values.
    val: i64,
    /// Unit part in `[1, p^(prec - val))`, coprime to p, or 0 for the zero flag.
    unit: BigInt,
    prec: i64,
}

impl Padic {
    /// The zero-flagged value `O(p^prec)`.
    pub fn zero(p: u64, prec: i64) -> Self {
        Padic {
            p,
            val: prec,
            unit: BigInt::zero(),
            prec,
        }
    }

    pub fn one(p: u64, prec: i64) -> Self {
        Self::from_int(p, 1, prec)
    }

    /// `p^val · raw + O(p^prec)`, normalized.
    pub fn from_scaled(p: u64, val: i64, raw: BigInt, prec: i64) -> Self {
        if val >= prec || raw.is_zero() {
            return Self::zero(p, prec);
        }
        let pb = BigInt::from(p);
        let mut val = val;
        let mut raw = raw;
        loop {
            let (q, r) = raw.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            raw = q;
            val += 1;
            if val >= prec {
                return Self::zero(p, prec);
            }
        }
        let unit = raw.mod_floor(&p_pow(p, prec - val));
        Padic { p, val, unit, prec }
    }

    pub fn from_int(p: u64, n: impl Into<BigInt>, prec: i64) -> Self {
        Self::from_scaled(p, 0, n.into(), prec)
    }

    /// The rational `num/den` modulo `p^prec`.
    pub fn from_rational(p: u64, num: impl Into<BigInt>, den: impl Into<BigInt>, prec: i64) -> Result<Self> {
        let num = num.into();
        let mut den = den.into();
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero(p, prec));
        }
        let vd = vp_int(&den, p) as i64;
        den /= p_pow(p, vd);
        let vn = vp_int(&num, p) as i64;
        let num_unit = num / p_pow(p, vn);
        let val = vn - vd;
        if val >= prec {
            return Ok(Self::zero(p, prec));
        }
        let m = p_pow(p, prec - val);
        let unit = (num_unit * mod_inverse(&den, &m)).mod_floor(&m);
        Ok(Padic { p, val, unit, prec })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Absolute precision N of `x + O(p^N)`.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Exact valuation for nonzero values; the precision (a lower bound) for zero-flagged ones.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    /// True when the value is indistinguishable from zero at its precision.
    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.val == 0
    }

    /// Unit digits `u` with `x = p^v·u + O(p^N)`; zero for the zero flag.
    pub fn unit_part(&self) -> &BigInt {
        &self.unit
    }

    /// Relative precision `N − v` (0 for zero-flagged values).
    pub fn relative_precision(&self) -> i64 {
        self.prec - self.val
    }

    /// Integer representative in `[0, p^N)` for values in ℤ_p.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.val < 0 {
            return None;
        }
        Some(&self.unit * p_pow(self.p, self.val))
    }

    /// Residue modulo p of an element of ℤ_p.
    pub fn residue(&self) -> Option<u64> {
        if self.val < 0 && !self.is_zero() {
            return None;
        }
        if self.val > 0 || self.is_zero() {
            return Some(0);
        }
        (&self.unit % BigInt::from(self.p)).to_u64()
    }

    /// Digits `d_i` for `i = min(v, 0) .. N`, lowest power first.
    pub fn digits(&self) -> Vec<u64> {
        let start = if self.is_zero() { self.prec.min(0) } else { self.val.min(0) };
        let mut out = Vec::new();
        let pb = BigInt::from(self.p);
        let mut rest = self.unit.clone();
        for i in start..self.prec {
            if self.is_zero() || i < self.val {
                out.push(0);
            } else {
                let (q, r) = rest.div_rem(&pb);
                out.push(r.to_u64().unwrap());
                rest = q;
            }
        }
        out
    }

    /// Drops precision to `min(N, prec)`.
    pub fn with_precision(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        if self.is_zero() || self.val >= prec {
            return Self::zero(self.p, prec);
        }
        let unit = self.unit.mod_floor(&p_pow(self.p, prec - self.val));
        Padic {
            p: self.p,
            val: self.val,
            unit,
            prec,
        }
    }

    fn check_prime(&self, other: &Padic) {
        assert_eq!(self.p, other.p, "mixing {}-adic and {}-adic numbers", self.p, other.p);
    }

    /// Multiplication by an exact integer.
    pub fn mul_int(&self, n: impl Into<BigInt>) -> Self {
        let n: BigInt = n.into();
        if n.is_zero() {
            // 0 · (x + O(p^N)) is exactly 0; keep an envelope at least as fine as x's.
            return Self::zero(self.p, self.prec.max(self.val + self.prec));
        }
        let e = vp_int(&n, self.p) as i64;
        let u = n / p_pow(self.p, e);
        Self::from_scaled(self.p, self.val + e, &self.unit * u, self.prec + e)
    }

    /// Multiplication by `p^e` (exact, any sign of `e`).
    pub fn shift(&self, e: i64) -> Self {
        Padic {
            p: self.p,
            val: self.val + e,
            unit: self.unit.clone(),
            prec: self.prec + e,
        }
    }

    /// Division by a nonzero exact integer.
    pub fn div_int(&self, n: impl Into<BigInt>) -> Result<Self> {
        let n: BigInt = n.into();
        if n.is_zero() {
            return Err(Error::Domain("division by the integer 0".into()));
        }
        let e = vp_int(&n, self.p) as i64;
        let u = n / p_pow(self.p, e);
        if self.is_zero() {
            return Ok(Self::zero(self.p, self.prec - e));
        }
        let m = p_pow(self.p, self.prec - self.val);
        let unit = (&self.unit * mod_inverse(&u, &m)).mod_floor(&m);
        Ok(Padic {
            p: self.p,
            val: self.val - e,
            unit,
            prec: self.prec - e,
        })
    }

    /// Multiplicative inverse; fails on zero-flagged input.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::precision(format!(
                "divisor indistinguishable from 0 (O({}^{}))",
                self.p, self.prec
            )));
        }
        let rel = self.prec - self.val;
        let m = p_pow(self.p, rel);
        Ok(Padic {
            p: self.p,
            val: -self.val,
            unit: mod_inverse(&self.unit, &m),
            prec: rel - self.val,
        })
    }

    pub fn try_div(&self, other: &Padic) -> Result<Self> {
        self.check_prime(other);
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc: Option<Padic> = None;
        let mut base = self.clone();
        if e == 0 {
            return Padic::one(self.p, self.relative_precision().max(1));
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc.unwrap()
    }

    /// The p-adic logarithm of a unit, via `log x = log(x^(p−1)) / (p−1)`.
    ///
    /// The result carries the precision of `x`: log is an isometry on `1 + pℤ_p`.
    pub fn log(&self) -> Result<Self> {
        if self.is_zero() || self.val != 0 {
            return Err(Error::Domain(format!("log is only defined on units, got {self}")));
        }
        let p = self.p;
        let target = self.prec;
        let y = &self.pow((p - 1) as u32) - &Padic::one(p, target);
        if y.is_zero() {
            return Ok(Padic::zero(p, target));
        }
        let vy = y.valuation();
        debug_assert!(vy >= 1);
        // terms with k·v(y) − log_p(k) ≥ N vanish modulo p^N
        let k0 = crate::series::smallest_k_with(|k| (k as f64) * vy as f64 - log_p(k, p) >= target as f64);
        let mut sum = Padic::zero(p, target);
        let mut y_pow = y.clone();
        for k in 1..k0 {
            let term = y_pow.div_int(k as i64)?;
            sum = if k % 2 == 1 { &sum + &term } else { &sum - &term };
            y_pow = &y_pow * &y;
        }
        Ok(sum.div_int(-(1i64) + p as i64)?.with_precision(target))
    }

    /// Teichmüller representative of `a mod p`, to absolute precision `prec`.
    pub fn teichmuller(p: u64, a: u64, prec: i64) -> Result<Self> {
        if a.is_multiple_of(p) {
            return Err(Error::Domain(format!("no Teichmüller lift of 0 mod {p}")));
        }
        if prec <= 0 {
            return Ok(Self::zero(p, prec));
        }
        // a^(p^(N−1)) ≡ ω(a) mod p^N
        let m = p_pow(p, prec);
        let e = p_pow(p, prec - 1);
        let w = BigInt::from(a % p).modpow(&e, &m);
        Ok(Self::from_scaled(p, 0, w, prec))
    }

    /// Teichmüller lift of the residue of a unit.
    pub fn teichmuller_of(&self, prec: i64) -> Result<Self> {
        match self.residue() {
            Some(r) if r != 0 && self.val == 0 => Self::teichmuller(self.p, r, prec),
            _ => Err(Error::Domain(format!("{self} is not a unit"))),
        }
    }
}

/// `log_p(k)` as a real number.
pub(crate) fn log_p(k: u64, p: u64) -> f64 {
    (k as f64).ln() / (p as f64).ln()
}

/// `⌊log_p(k)⌋` for `k ≥ 1`, computed exactly.
pub fn floor_log_p(k: u64, p: u64) -> u32 {
    assert!(k >= 1);
    let mut e = 0;
    let mut pe = p;
    while pe <= k {
        e += 1;
        pe = match pe.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
    }
    e
}

impl Add for &Padic {
    type Output = Padic;
    fn add(self, other: &Padic) -> Padic {
        self.check_prime(other);
        let prec = self.prec.min(other.prec);
        match (self.is_zero(), other.is_zero()) {
            (true, _) => return other.with_precision(prec),
            (_, true) => return self.with_precision(prec),
            _ => {}
        }
        let m = self.val.min(other.val);
        if m >= prec {
            return Padic::zero(self.p, prec);
        }
        let raw = &self.unit * p_pow(self.p, self.val - m) + &other.unit * p_pow(self.p, other.val - m);
        Padic::from_scaled(self.p, m, raw, prec)
    }
}

impl Neg for &Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        if self.is_zero() {
            return self.clone();
        }
        let m = p_pow(self.p, self.prec - self.val);
        Padic {
            p: self.p,
            val: self.val,
            unit: (&m - &self.unit).mod_floor(&m),
            prec: self.prec,
        }
    }
}

impl Sub for &Padic {
    type Output = Padic;
    fn sub(self, other: &Padic) -> Padic {
        self + &(-other)
    }
}

impl Mul for &Padic {
    type Output = Padic;
    fn mul(self, other: &Padic) -> Padic {
        self.check_prime(other);
        let prec = (self.val + other.prec).min(other.val + self.prec);
        if self.is_zero() || other.is_zero() {
            return Padic::zero(self.p, prec);
        }
        Padic::from_scaled(self.p, self.val + other.val, &self.unit * &other.unit, prec)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Padic {
            type Output = Padic;
            fn $f(self, other: Padic) -> Padic {
                (&self).$f(&other)
            }
        }
        impl $tr<&Padic> for Padic {
            type Output = Padic;
            fn $f(self, other: &Padic) -> Padic {
                (&self).$f(other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        -&self
    }
}

fn fmt_power(p: u64, e: i64) -> String {
    match e {
        1 => format!("{p}"),
        _ => format!("{p}^{e}"),
    }
}

impl fmt::Display for Padic {
    /// Ascending digit expansion, e.g. `3 + 5^2 + 2*5^3 + O(5^6)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        if !self.is_zero() {
            let start = self.val;
            let pb = BigInt::from(self.p);
            let mut rest = self.unit.clone();
            let mut e = start;
            while !rest.is_zero() {
                let (q, r) = rest.div_rem(&pb);
                let d = r.to_u64().unwrap();
                if d != 0 {
                    terms.push(match (e, d) {
                        (0, d) => format!("{d}"),
                        (e, 1) => fmt_power(self.p, e),
                        (e, d) => format!("{d}*{}", fmt_power(self.p, e)),
                    });
                }
                rest = q;
                e += 1;
            }
        }
        terms.push(format!("O({})", fmt_power(self.p, self.prec)));
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_power(s: &str) -> Result<(u64, i64)> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad prime power `{s}`"));
    match s.split_once('^') {
        Some((b, e)) => Ok((b.trim().parse().map_err(|_| bad())?, e.trim().parse().map_err(|_| bad())?)),
        None => Ok((s.parse().map_err(|_| bad())?, 1)),
    }
}

impl FromStr for Padic {
    type Err = Error;

    /// Parses `d0 + d1*p + d2*p^2 + ... + O(p^N)`.
    fn from_str(s: &str) -> Result<Self> {
        let terms: Vec<&str> = s.split('+').map(str::trim).collect();
        let last = terms.last().copied().unwrap_or_default();
        let inner = last
            .strip_prefix("O(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("missing O(p^N) term in `{s}`")))?;
        let (p, prec) = parse_power(inner)?;
        if !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        let mut num = BigInt::zero();
        let mut min_e = 0i64;
        let mut parsed = Vec::new();
        for t in &terms[..terms.len() - 1] {
            let (d, e) = match t.split_once('*') {
                Some((d, pw)) => {
                    let d: u64 = d.trim().parse().map_err(|_| Error::Parse(format!("bad digit in `{t}`")))?;
                    let (b, e) = parse_power(pw)?;
                    if b != p {
                        return Err(Error::Parse(format!("term `{t}` uses base {b}, expected {p}")));
                    }
                    (d, e)
                }
                None if t.contains('^') || t.trim() == p.to_string() => {
                    let (b, e) = parse_power(t)?;
                    if b != p {
                        return Err(Error::Parse(format!("term `{t}` uses base {b}, expected {p}")));
                    }
                    (1, e)
                }
                None => (
                    t.parse().map_err(|_| Error::Parse(format!("bad term `{t}`")))?,
                    0,
                ),
            };
            if d >= p {
                return Err(Error::Parse(format!("digit {d} out of range for p = {p}")));
            }
            if e >= prec {
                return Err(Error::Parse(format!("term `{t}` beyond the precision O({p}^{prec})")));
            }
            min_e = min_e.min(e);
            parsed.push((d, e));
        }
        for (d, e) in parsed {
            num += BigInt::from(d) * p_pow(p, e - min_e);
        }
        Ok(Padic::from_scaled(p, min_e, num, prec))
    }
}

impl serde::Serialize for Padic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Padic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Working precision together with the ceiling for adaptive retries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PrecisionPolicy {
    pub working: i64,
    pub max: i64,
}

impl PrecisionPolicy {
    pub fn new(working: i64, max: i64) -> Result<Self> {
        if working < 1 || working > max {
            return Err(Error::Invalid(format!(
                "precision policy needs 1 ≤ N ≤ N_max, got N = {working}, N_max = {max}"
            )));
        }
        Ok(PrecisionPolicy { working, max })
    }

    pub fn fixed(n: i64) -> Self {
        PrecisionPolicy { working: n, max: n }
    }

    /// The escalation ladder `N, 3N/2, ...` capped at `N_max`.
    pub fn ladder(&self) -> Vec<i64> {
        let mut out = vec![self.working];
        let mut n = self.working;
        while n < self.max {
            n = (n + (n / 2).max(2)).min(self.max);
            out.push(n);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Padic {
        s.parse().unwrap()
    }

    #[test]
    fn addition_carries_into_higher_digits() {
        let x = Padic::from_int(5, 2, 3);
        let y = Padic::from_int(5, 3, 3);
        let s = &x + &y;
        assert_eq!(s.valuation(), 1);
        assert_eq!(s.precision(), 3);
        assert_eq!(s.to_string(), "5 + O(5^3)");
    }

    #[test]
    fn minus_one_plus_one_is_zero_flagged() {
        let m1 = q("4 + 4*5 + 4*5^2 + 4*5^3 + 4*5^4 + 4*5^5 + 4*5^6 + 4*5^7 + 4*5^8 + O(5^9)");
        assert_eq!(m1, Padic::from_int(5, -1, 9));
        let s = &m1 + &Padic::one(5, 20);
        assert!(s.is_zero());
        assert_eq!(s.precision(), 9);
        assert_eq!(s.to_string(), "O(5^9)");
    }

    #[test]
    fn unit_times_inverse_is_one() {
        let x = Padic::from_int(7, 3 + 4 * 7 + 2 * 49, 6);
        let y = &x * &x.inv().unwrap();
        assert_eq!(y, Padic::one(7, 6));
    }

    #[test]
    fn precision_rules() {
        let x = Padic::from_scaled(5, 1, 2.into(), 4); // 2*5 + O(5^4)
        let y = Padic::from_scaled(5, 2, 1.into(), 3); // 5^2 + O(5^3)
        assert_eq!((&x * &y).precision(), 4); // min(1 + 3, 2 + 4)
        assert_eq!((&x + &y).precision(), 3);
        let z = Padic::zero(5, 3);
        assert!((&x * &z).is_zero());
        assert_eq!((&x * &z).precision(), 4);
        let inv = x.inv().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(inv.precision(), 2); // 4 − 2·1
    }

    #[test]
    fn division_by_zero_flag_is_a_precision_error() {
        let x = Padic::one(5, 4);
        let z = Padic::zero(5, 4);
        assert!(matches!(x.try_div(&z), Err(Error::Precision { .. })));
    }

    #[test]
    fn rational_constructor() {
        let h = Padic::from_rational(5, 1, 2, 5).unwrap();
        assert!((&h.mul_int(2) - &Padic::one(5, 5)).is_zero());
        let x = Padic::from_rational(5, 3, 25, 4).unwrap();
        assert_eq!(x.valuation(), -2);
        assert_eq!(x.precision(), 4);
        assert_eq!(x.to_string(), "3*5^-2 + O(5^4)");
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(Padic::teichmuller(5, 1, 10).unwrap(), Padic::one(5, 10));
        assert_eq!(Padic::teichmuller(5, 4, 10).unwrap(), Padic::from_int(5, -1, 10));
        let z = Padic::teichmuller(7, 2, 6).unwrap();
        // exact modular exponentiation oracle
        let n = z.to_integer().unwrap();
        let m = BigInt::from(7).pow(6);
        assert_eq!(n.modpow(&BigInt::from(6), &m), BigInt::one());
        assert_eq!(z.residue(), Some(2));
    }

    #[test]
    fn log_examples() {
        let z = Padic::teichmuller(5, 2, 10).unwrap();
        assert!(z.log().unwrap().is_zero());
        let l2 = Padic::from_int(5, 2, 10).log().unwrap();
        assert_eq!(l2.valuation(), 1);
        assert_eq!(l2.precision(), 10);
        let l = Padic::from_int(1093, 2, 4).log().unwrap();
        assert!(l.valuation() >= 2);
        assert!(matches!(Padic::from_int(5, 10, 5).log(), Err(Error::Domain(_))));
    }

    #[test]
    fn log_of_one_plus_p() {
        // log(1 + p) = p − p²/2 + p³/3 − ...
        let x = Padic::from_int(7, 8, 8);
        let l = x.log().unwrap();
        let p = Padic::from_int(7, 7, 8);
        let mut expect = Padic::zero(7, 8);
        for k in 1..10 {
            let t = p.pow(k).div_int(k as i64).unwrap();
            expect = if k % 2 == 1 { &expect + &t } else { &expect - &t };
        }
        assert_eq!(l, expect.with_precision(8));
    }

    #[test]
    fn display_and_parse_golden_strings() {
        for s in [
            "2 + O(5^9)",
            "3 + 5^2 + 2*5^3 + 5^4 + 3*5^5 + O(5^6)",
            "4 + 5 + O(5^9)",
            "O(5^20)",
            "7^2 + 2*7^3 + 6*7^4 + 3*7^5 + 2*7^6 + 6*7^7 + 5*7^8 + O(7^10)",
            "6 + 6*7 + 6*7^2 + 6*7^3 + 6*7^4 + 6*7^5 + 6*7^6 + 6*7^7 + O(7^8)",
            "1 + O(2^2)",
            "1 + 2 + O(2^2)",
        ] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("3 + 5^2 + 2*5^3 + 5^4 + 3*5^5 + O(5^6)").digits(), vec![3, 0, 1, 2, 1, 3]);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("2 + 7*5".parse::<Padic>().is_err());
        assert!("9 + O(5^3)".parse::<Padic>().is_err());
        assert!("2 + 3*7 + O(5^3)".parse::<Padic>().is_err());
        assert!("2 + O(6^3)".parse::<Padic>().is_err());
    }

    #[test]
    fn policy_ladder() {
        assert!(PrecisionPolicy::new(12, 10).is_err());
        let pol = PrecisionPolicy::new(12, 40).unwrap();
        let l = pol.ladder();
        assert_eq!(l.first(), Some(&12));
        assert_eq!(l.last(), Some(&40));
        assert!(l.windows(2).all(|w| w[0] < w[1]));
    }
}
