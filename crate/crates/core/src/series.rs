//! Power series of log and the polylogarithms on residue discs.
//!
//! On the disc `U_ζ = ζ + pℤ_p` of a Teichmüller point `ζ ≠ 1` we expand
//! `log(ζ + pt)` and `Li_m(ζ + pt)` in the parameter `t`. The constant terms
//! `Li_m(ζ)` come from the auxiliary series `g_m(v)` with
//! `Li_m(z) − p^(−m) Li_m(z^p) = g_m(1/(1−z))`, and the higher coefficients
//! from integrating `dLi_m = Li_(m−1) dz/z` term by term.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{floor_log_p, log_p, mod_inverse, p_pow, vp_u64, Padic};

/// Smallest `k ≥ 1` satisfying a predicate that is monotone from `false` to `true`.
pub fn smallest_k_with(pred: impl Fn(u64) -> bool) -> u64 {
    let mut hi = 1u64;
    while !pred(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2 + 1;
    if lo > hi {
        lo = hi;
    }
    // pred(hi) holds; find the first k in [lo, hi] with pred(k)
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    hi
}

/// `k − log_p(k) ≥ n`, decided in exact integer arithmetic.
fn log_bound_holds(k: u64, p: u64, n: i64) -> bool {
    let slack = k as i64 - n;
    if slack < 0 {
        return false;
    }
    // p^slack ≥ k
    let mut pw: u64 = 1;
    for _ in 0..slack {
        pw = pw.saturating_mul(p);
        if pw >= k {
            return true;
        }
    }
    pw >= k
}

/// Truncation index for the logarithm series: the least `k₀ ≥ 1` with `k₀ − log_p(k₀) ≥ N`.
pub fn truncation_index_log(p: u64, n: i64) -> u64 {
    smallest_k_with(|k| log_bound_holds(k, p, n))
}

/// Least `k₀ ≥ 1` such that `k − n⌊log_p k⌋ ≥ N` for every `k ≥ k₀`.
pub fn truncation_index_polylog(p: u64, depth: u32, n: i64) -> u64 {
    let depth = depth as i64;
    // beyond `last` the real lower bound k − depth·log_p(k) is increasing and ≥ N
    let turn = ((depth as f64) / (p as f64).ln()).ceil().max(1.0) as u64;
    let mut last = turn;
    while (last as f64) - depth as f64 * log_p(last, p) < n as f64 + 1e-9 {
        last += 1;
    }
    let h = |k: u64| k as i64 - depth * floor_log_p(k, p) as i64;
    (1..=last).rev().find(|&k| h(k) < n).map_or(1, |k| k + 1)
}

/// Lower bound for `v_p(b_{m,k})`, valid for `k ≥ max(1, (m−1)(p−1)/ln p)`:
/// `(k − p)/(p − 1) − m·log_p(k)`.
///
/// It follows from `v_p(b_{0,k}) ≥ (k − p)/(p − 1)` (read off from the
/// geometric series defining `g_0`) and from `g_{m−1}(1) = 0`, which turns
/// the recursion into `b_{m,k} = (1/k)·Σ_{j>k} b_{m−1,j}`.
pub fn g_coefficient_bound(p: u64, m: u32, k: u64) -> f64 {
    (k as f64 - p as f64) / (p as f64 - 1.0) - m as f64 * log_p(k, p)
}

/// The constant `c(m, p)` in `v_p(b_{m,k}) ≥ k/(p−1) − m·log_p(k) − c(m, p)`.
pub fn g_bound_constant(p: u64) -> f64 {
    p as f64 / (p as f64 - 1.0)
}

/// Truncation index for `g_0, …, g_depth` at order `M`.
pub fn g_truncation_index(p: u64, depth: u32, order: i64) -> u64 {
    let start = ((depth as f64) * (p as f64 - 1.0) / (p as f64).ln()).ceil().max(2.0) as u64;
    let mut k = start;
    while g_coefficient_bound(p, depth, k) < order as f64 + 1e-9 {
        k += 1;
    }
    k
}

/// `f(v) ∈ vℤ[v]` with `(1−v)^p − (−v)^p = 1 − p·f(v)`; index `j` holds the coefficient of `v^j`.
pub fn compute_f_poly(p: u64) -> Vec<BigInt> {
    let mut f = vec![BigInt::zero(); p as usize];
    let mut binom = BigInt::one();
    for j in 1..p {
        binom = binom * BigInt::from(p - j + 1) / BigInt::from(j);
        let sign = if j % 2 == 0 { -1 } else { 1 };
        // −C(p,j)(−1)^j / p
        f[j as usize] = &binom * sign / BigInt::from(p);
    }
    f
}

/// An order-N approximation of a power series on ℤ_p.
///
/// Coefficients beyond the stored ones have valuation at least `order`, and
/// every stored coefficient is correct modulo `p^order` (individual
/// coefficients may be known better).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesApprox {
    p: u64,
    coeffs: Vec<Padic>,
    order: i64,
}

impl SeriesApprox {
    pub fn new(p: u64, coeffs: Vec<Padic>, order: i64) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.prime() == p));
        SeriesApprox { p, coeffs, order }
    }

    /// An exactly known polynomial, stored at precision `order`.
    pub fn from_integers<T: Into<BigInt> + Clone>(p: u64, coeffs: &[T], order: i64) -> Self {
        let coeffs = coeffs.iter().map(|c| Padic::from_int(p, c.clone(), order)).collect();
        SeriesApprox { p, coeffs, order }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Effective order: the declared tail bound capped by every coefficient's precision.
    pub fn order(&self) -> i64 {
        self.coeffs.iter().map(Padic::precision).fold(self.order, i64::min)
    }

    pub fn declared_order(&self) -> i64 {
        self.order
    }

    /// `k₀`: number of stored coefficients.
    pub fn truncation_index(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Padic] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; beyond the truncation index this is `O(p^order)`.
    pub fn coeff(&self, k: usize) -> Padic {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Padic::zero(self.p, self.order))
    }

    /// Lowest valuation among the coefficients, counting the tail as valuation `order`.
    pub fn min_valuation(&self) -> i64 {
        self.coeffs.iter().map(Padic::valuation).fold(self.order, i64::min)
    }

    /// Every coefficient reduced to precision at most `n`; the order becomes `min(order, n)`.
    pub fn truncate(&self, n: i64) -> Self {
        SeriesApprox {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c.with_precision(n)).collect(),
            order: self.order.min(n),
        }
    }

    /// Evaluation at `t ∈ ℤ_p`.
    pub fn eval(&self, t: &Padic) -> Result<Padic> {
        if !t.is_zero() && t.valuation() < 0 {
            return Err(Error::Domain(format!("series evaluated outside ℤ_p at {t}")));
        }
        let mut acc = Padic::zero(self.p, self.order);
        let mut pw = Padic::one(self.p, t.precision().max(self.order) + 1);
        for c in &self.coeffs {
            acc = &acc + &(c * &pw);
            pw = &pw * t;
        }
        Ok(acc.with_precision(self.order))
    }

    pub fn scale(&self, c: &Padic) -> Self {
        let order = (c.valuation() + self.order).min(c.precision() + self.min_valuation());
        SeriesApprox {
            p: self.p,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            order,
        }
    }

    /// Multiplication by `p^e`.
    pub fn shift(&self, e: i64) -> Self {
        SeriesApprox {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c.shift(e)).collect(),
            order: self.order + e,
        }
    }

    fn padded(&self, len: usize) -> Vec<Padic> {
        (0..len).map(|k| self.coeff(k)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let (a, b) = (self.padded(len), other.padded(len));
        SeriesApprox {
            p: self.p,
            coeffs: a.iter().zip(&b).map(|(x, y)| x + y).collect(),
            order: self.order.min(other.order),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Padic::from_int(self.p, -1, other.order.max(1) + 1 + other.min_valuation().abs())))
    }

    /// Product, truncated to the longer of the two truncation indices.
    pub fn mul(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let (a, b) = (self.padded(len), other.padded(len));
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc: Option<Padic> = None;
            for i in 0..=k {
                let t = &a[i] * &b[k - i];
                acc = Some(match acc {
                    None => t,
                    Some(s) => &s + &t,
                });
            }
            out.push(acc.unwrap());
        }
        let order = (self.order + other.min_valuation()).min(other.order + self.min_valuation());
        SeriesApprox {
            p: self.p,
            coeffs: out,
            order,
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.mul_int(k as i64)).collect();
        SeriesApprox {
            p: self.p,
            coeffs,
            order: self.order,
        }
    }

    /// The series `s ↦ f(a + p·s)`.
    pub fn substitute(&self, a: &BigInt) -> Self {
        let len = self.coeffs.len();
        let p = self.p;
        // binomial row and powers of a, exact
        let mut a_pow = vec![BigInt::one(); len.max(1)];
        for i in 1..len {
            a_pow[i] = &a_pow[i - 1] * a;
        }
        let mut out = Vec::with_capacity(len);
        let mut binom_rows: Vec<BigInt> = vec![BigInt::one(); len]; // C(k, j) for current j, indexed by k
        for j in 0..len {
            if j > 0 {
                // C(k, j) = C(k, j−1)·(k−j+1)/j
                for k in (j..len).rev() {
                    binom_rows[k] = &binom_rows[k] * BigInt::from(k - j + 1) / BigInt::from(j);
                }
            }
            let mut acc = Padic::zero(p, self.order + j as i64);
            for k in j..len {
                let c = self.coeffs[k].mul_int(&binom_rows[k] * &a_pow[k - j]);
                acc = &acc + &c;
            }
            out.push(acc.shift(j as i64));
        }
        SeriesApprox {
            p,
            coeffs: out,
            order: self.order,
        }
    }

    /// Reduction modulo p as residues `0..p`; requires integral coefficients known mod p.
    pub fn reduce_mod_p(&self) -> Vec<u64> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_zero() || c.valuation() > 0 {
                    0
                } else {
                    c.residue().unwrap_or(0)
                }
            })
            .collect()
    }
}

/// Series of `log(ζ + pt)` on the disc of the Teichmüller point `ζ ≠ 1`.
pub fn log_series(zeta: &Padic, order: i64) -> Result<SeriesApprox> {
    let p = zeta.prime();
    if zeta.residue() == Some(1) {
        return Err(Error::Domain("log series requested on the residue disc of 1".into()));
    }
    let k0 = truncation_index_log(p, order);
    let w = Padic::from_int(p, -(p as i64), order + 2).try_div(zeta)?;
    let mut coeffs = vec![Padic::zero(p, order)];
    let mut wk = w.clone();
    for k in 1..k0 {
        coeffs.push((-&wk.div_int(k as i64)?).with_precision(order));
        wk = &wk * &w;
    }
    Ok(SeriesApprox::new(p, coeffs, order))
}

/// Approximations of `g_0, …, g_n` to order `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSeriesTable {
    pub p: u64,
    pub depth: u32,
    pub order: i64,
    pub k0: u64,
    /// `b_{m,k}` modulo `p^precisions[m]`, all in ℤ_p.
    residues: Vec<Vec<BigInt>>,
    precisions: Vec<i64>,
}

impl GSeriesTable {
    pub fn compute(p: u64, depth: u32, order: i64) -> Result<Self> {
        if p < 3 {
            return Err(Error::Invalid(format!("g-series need an odd prime, got {p}")));
        }
        let order = order.max(0);
        let k0 = g_truncation_index(p, depth, order);
        let delta = floor_log_p(k0 - 1, p) as i64;
        let working = order + depth as i64 * delta;
        let modulus = p_pow(p, working.max(0));
        let len = k0 as usize;

        // h = Σ_i (p f)^i, as the reciprocal of 1 − p f
        let pf: Vec<BigInt> = compute_f_poly(p).into_iter().map(|c| (c * BigInt::from(p)).mod_floor(&modulus)).collect();
        let mut h = vec![BigInt::zero(); len];
        h[0] = BigInt::one();
        for k in 1..len {
            let mut s = BigInt::zero();
            for j in 1..pf.len().min(k + 1) {
                if !pf[j].is_zero() {
                    s += &pf[j] * &h[k - j];
                }
            }
            h[k] = s.mod_floor(&modulus);
        }
        // (1 − v)^p coefficients
        let mut e = Vec::with_capacity(p as usize + 1);
        let mut binom = BigInt::one();
        for j in 0..=p {
            if j > 0 {
                binom = binom * BigInt::from(p - j + 1) / BigInt::from(j);
            }
            e.push(if j % 2 == 0 { binom.clone() } else { -binom.clone() });
        }
        let mut g0 = vec![BigInt::zero(); len];
        for k in 0..len {
            let mut s = BigInt::zero();
            for j in 0..=(p as usize).min(k) {
                s += &e[j] * &h[k - j];
            }
            if k == 0 {
                s -= 1;
            } else if k == 1 {
                s += 1;
            }
            g0[k] = s.mod_floor(&modulus);
        }
        assert!(g0[0].is_zero(), "g_0(0) must vanish");

        let mut residues = vec![g0];
        let mut precisions = vec![working];
        for m in 1..=depth as usize {
            let prev_prec = precisions[m - 1];
            let prec = prev_prec - delta;
            let prev_mod = p_pow(p, prev_prec);
            let new_mod = p_pow(p, prec.max(0));
            let mut b = vec![BigInt::zero(); len];
            let mut s = BigInt::zero();
            for k in 1..len {
                s = (s + &residues[m - 1][k]).mod_floor(&prev_mod);
                let ek = vp_u64(k as u64, p) as i64;
                let pe = p_pow(p, ek);
                let (q, r) = s.div_rem(&pe);
                assert!(r.is_zero(), "v_p(b_{{{m},{k}}}) < 0: the g-series integrality bound failed");
                let u = BigInt::from(k as u64) / &pe;
                let m_red = p_pow(p, (prev_prec - ek).max(0));
                let val = (-q * mod_inverse(&u, &m_red)).mod_floor(&m_red);
                b[k] = val.mod_floor(&new_mod);
            }
            residues.push(b);
            precisions.push(prec);
        }
        Ok(GSeriesTable {
            p,
            depth,
            order,
            k0,
            residues,
            precisions,
        })
    }

    /// `b_{m,k}` as a p-adic number.
    pub fn coeff(&self, m: usize, k: usize) -> Padic {
        Padic::from_int(self.p, self.residues[m][k].clone(), self.precisions[m])
    }

    pub fn coefficient_precision(&self, m: usize) -> i64 {
        self.precisions[m]
    }

    /// `g_m(v)` for `v ∈ ℤ_p`; the truncated tail caps the result at order `M`.
    pub fn eval(&self, m: usize, v: &Padic) -> Result<Padic> {
        let p = self.p;
        if !v.is_zero() && v.valuation() < 0 {
            return Err(Error::Domain("g_m evaluated outside ℤ_p".into()));
        }
        let prec = self.precisions[m].min(self.order).min(v.precision());
        if prec <= 0 {
            return Ok(Padic::zero(p, prec));
        }
        let modulus = p_pow(p, prec);
        let vi = v.to_integer().unwrap().mod_floor(&modulus);
        let mut acc = BigInt::zero();
        for b in self.residues[m].iter().rev() {
            acc = (acc * &vi + b).mod_floor(&modulus);
        }
        Ok(Padic::from_int(p, acc, prec))
    }
}

/// Series of `log` and `Li_0, …, Li_n` on one residue disc, all of order N.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolylogDiscTable {
    pub p: u64,
    pub residue: u64,
    pub zeta: Padic,
    pub depth: u32,
    pub order: i64,
    pub log: SeriesApprox,
    /// `polylogs[m]` approximates `Li_m(ζ + pt)`.
    pub polylogs: Vec<SeriesApprox>,
}

impl PolylogDiscTable {
    pub fn compute(p: u64, residue: u64, depth: u32, order: i64) -> Result<Self> {
        let residue = residue % p;
        if residue == 0 || residue == 1 {
            return Err(Error::Domain(format!(
                "residue disc of {residue} mod {p} is not part of the thrice-punctured line"
            )));
        }
        let k0 = truncation_index_polylog(p, depth, order);
        let delta = if k0 > 1 { floor_log_p(k0 - 1, p) as i64 } else { 0 };
        let working = order.max(order + depth as i64 * (delta - 1));
        let zeta = Padic::teichmuller(p, residue, working + 2)?;
        let one = Padic::one(p, working + 2);
        let inv = (&one - &zeta).inv()?;
        let len = k0 as usize;

        let mut li0 = Vec::with_capacity(len);
        li0.push(&zeta * &inv);
        let mut inv_pow = &inv * &inv;
        for k in 1..len {
            li0.push(inv_pow.shift(k as i64));
            inv_pow = &inv_pow * &inv;
        }

        let w = Padic::from_int(p, -(p as i64), working + 3).try_div(&zeta)?;
        let mut w_pow = vec![Padic::one(p, working + 3)];
        for i in 1..len {
            let next = &w_pow[i - 1] * &w;
            w_pow.push(next);
        }

        let g = g_table(p, depth, working)?;
        let mut rows = vec![li0];
        for m in 1..=depth as usize {
            let pm = BigInt::from(p).pow(m as u32);
            let gm = g.eval(m, &inv)?;
            let mut row = Vec::with_capacity(len);
            row.push(gm.shift(m as i64).div_int(pm - 1)?);
            for k in 1..len {
                let prev = &rows[m - 1];
                let mut s = Padic::zero(p, working + 2 * len as i64);
                for j in 0..k {
                    s = &s + &(&w_pow[k - j] * &prev[j]);
                }
                row.push(-&s.div_int(k as i64)?);
            }
            rows.push(row);
        }

        let mut polylogs = Vec::with_capacity(rows.len());
        for (m, row) in rows.into_iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                if c.precision() < order {
                    return Err(Error::precision(format!(
                        "Li_{m} coefficient {k} on disc {residue} only known to O({p}^{})",
                        c.precision()
                    )));
                }
                check_polylog_bound(p, m as u32, k as u64, c);
            }
            polylogs.push(SeriesApprox::new(p, row.iter().map(|c| c.with_precision(order)).collect(), order));
        }
        let log = log_series(&zeta, order)?;
        Ok(PolylogDiscTable {
            p,
            residue,
            zeta: zeta.with_precision(order.max(1) + 1),
            depth,
            order,
            log,
            polylogs,
        })
    }

    /// The disc parameter `t = (z − ζ)/p` of a point of this disc.
    pub fn parameter(&self, z: &Padic) -> Result<Padic> {
        if z.residue() != Some(self.residue) || z.valuation() != 0 {
            return Err(Error::Domain(format!("{z} is not on the residue disc of {}", self.residue)));
        }
        let zeta = Padic::teichmuller(self.p, self.residue, z.precision().max(1))?;
        Ok((z - &zeta).shift(-1))
    }
}

fn check_polylog_bound(p: u64, m: u32, k: u64, c: &Padic) {
    if c.is_zero() {
        return;
    }
    let bound = if k == 0 {
        if m == 0 {
            0
        } else {
            m as i64
        }
    } else {
        k as i64 - m as i64 * floor_log_p(k, p) as i64
    };
    assert!(
        c.valuation() >= bound,
        "valuation bound violated for Li_{m} coefficient {k} mod {p}: {} < {bound}",
        c.valuation()
    );
}

type GKey = (u64, u32, i64);
type DiscKey = (u64, u64, u32, i64);

static G_MEMO: Lazy<Mutex<HashMap<GKey, Arc<GSeriesTable>>>> = Lazy::new(Default::default);
static DISC_MEMO: Lazy<Mutex<HashMap<DiscKey, Arc<PolylogDiscTable>>>> = Lazy::new(Default::default);
static STORE: Lazy<Mutex<Option<Arc<dyn TableStore>>>> = Lazy::new(Default::default);

/// Persistent backing for the memoized tables.
pub trait TableStore: Send + Sync {
    fn load_g(&self, p: u64, depth: u32, order: i64) -> Option<GSeriesTable>;
    fn store_g(&self, table: &GSeriesTable);
    fn load_disc(&self, p: u64, residue: u64, depth: u32, order: i64) -> Option<PolylogDiscTable>;
    fn store_disc(&self, table: &PolylogDiscTable);
}

/// Installs (or removes) the persistent table store used behind the in-memory memo.
pub fn install_store(store: Option<Arc<dyn TableStore>>) {
    *STORE.lock().unwrap() = store;
}

fn store() -> Option<Arc<dyn TableStore>> {
    STORE.lock().unwrap().clone()
}

/// Memoized [`GSeriesTable::compute`].
pub fn g_table(p: u64, depth: u32, order: i64) -> Result<Arc<GSeriesTable>> {
    let key = (p, depth, order);
    if let Some(t) = G_MEMO.lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let st = store();
    let table = match st.as_ref().and_then(|s| s.load_g(p, depth, order)) {
        Some(t) => t,
        None => {
            let t = GSeriesTable::compute(p, depth, order)?;
            if let Some(s) = &st {
                s.store_g(&t);
            }
            t
        }
    };
    let mut memo = G_MEMO.lock().unwrap();
    Ok(memo.entry(key).or_insert_with(|| Arc::new(table)).clone())
}

/// Memoized [`PolylogDiscTable::compute`].
pub fn disc_table(p: u64, residue: u64, depth: u32, order: i64) -> Result<Arc<PolylogDiscTable>> {
    let key = (p, residue % p, depth, order);
    if let Some(t) = DISC_MEMO.lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let st = store();
    let table = match st.as_ref().and_then(|s| s.load_disc(p, residue % p, depth, order)) {
        Some(t) => t,
        None => {
            let t = PolylogDiscTable::compute(p, residue, depth, order)?;
            if let Some(s) = &st {
                s.store_disc(&t);
            }
            t
        }
    };
    let mut memo = DISC_MEMO.lock().unwrap();
    Ok(memo.entry(key).or_insert_with(|| Arc::new(table)).clone())
}

/// Drops every memoized table (tests and cache maintenance).
pub fn clear_memo() {
    G_MEMO.lock().unwrap().clear();
    DISC_MEMO.lock().unwrap().clear();
}

fn check_polylog_point(z: &Padic) -> Result<u64> {
    match z.residue() {
        Some(r) if z.valuation() == 0 && !z.is_zero() && r != 1 => Ok(r),
        _ => Err(Error::Domain(format!("Li_m needs z ∈ ℤ_p with z ≢ 0, 1 mod p, got {z}"))),
    }
}

/// `Li_0(z), …, Li_n(z)` from the series on the disc of `z`, each to precision at most N.
pub fn polylog_values(z: &Padic, depth: u32, order: i64) -> Result<Vec<Padic>> {
    let r = check_polylog_point(z)?;
    let table = disc_table(z.prime(), r, depth, order)?;
    let t = table.parameter(z)?;
    table.polylogs.iter().map(|s| s.eval(&t)).collect()
}

/// `Li_m(z)` for `z ∈ ℤ_p` with `z ≢ 0, 1 mod p`.
pub fn polylog_eval(z: &Padic, m: u32, order: i64) -> Result<Padic> {
    Ok(polylog_values(z, m, order)?.pop().unwrap())
}
