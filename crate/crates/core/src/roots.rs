//! Roots in ℤ_p of inexactly known power series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{p_pow, Padic};
use crate::series::SeriesApprox;

/// A root together with the residue class it was isolated in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootWithPrecision {
    /// The root, known modulo `p^root.precision()`.
    pub root: Padic,
    /// Residue `a` modulo `p^(level+1)` whose class contains the root.
    pub residue: BigInt,
    /// Number of substitutions `t ← a + p·s` made before the root became simple.
    pub level: u32,
}

/// Divides by `p^μ` so that some coefficient becomes a unit; returns the series and `μ`.
pub fn normalize(f: &SeriesApprox) -> Result<(SeriesApprox, i64)> {
    let order = f.order();
    let mu = f
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero() && c.valuation() < order)
        .map(Padic::valuation)
        .min()
        .ok_or_else(|| Error::precision("series indistinguishable from 0"))?;
    Ok((f.truncate(order).shift(-mu), mu))
}

/// Strassmann bound: the last index attaining the minimal coefficient valuation.
pub fn strassmann_bound(f: &SeriesApprox) -> Result<usize> {
    let order = f.order();
    let min = f
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero() && c.valuation() < order)
        .map(Padic::valuation)
        .min()
        .ok_or_else(|| Error::precision("minimal valuation not separated from the tail bound"))?;
    Ok(f
        .coeffs()
        .iter()
        .rposition(|c| !c.is_zero() && c.valuation() == min)
        .unwrap())
}

/// Lower convex hull of `(k, v_p(c_k))` up to the last vertex of minimal height.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, i64)>,
}

impl NewtonPolygon {
    /// `(slope, length)` for each segment, slopes nondecreasing.
    pub fn slopes(&self) -> Vec<(f64, usize)> {
        self.vertices
            .windows(2)
            .map(|w| ((w[1].1 - w[0].1) as f64 / (w[1].0 - w[0].0) as f64, w[1].0 - w[0].0))
            .collect()
    }

    /// Number of roots in the closed unit disc, counted with multiplicity.
    pub fn unit_disc_root_count(&self) -> usize {
        self.vertices.last().map_or(0, |v| v.0) - self.vertices.first().map_or(0, |v| v.0)
    }
}

/// Newton polygon of the known part of `f`; segments of positive slope are not included.
pub fn newton_polygon(f: &SeriesApprox) -> Result<NewtonPolygon> {
    let order = f.order();
    let pts: Vec<(usize, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero() && c.valuation() < order)
        .map(|(k, c)| (k, c.valuation()))
        .collect();
    if pts.is_empty() {
        return Err(Error::precision("series indistinguishable from 0"));
    }
    let min = pts.iter().map(|p| p.1).min().unwrap();
    let last = pts.iter().rposition(|p| p.1 == min).unwrap();
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &pts[..=last] {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b if it lies on or above the segment a → pt
            let cross = (b.1 - a.1) as i128 * (pt.0 - a.0) as i128 - (pt.1 - a.1) as i128 * (b.0 - a.0) as i128;
            if cross >= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    // a zero-flagged coefficient below the hull could move a vertex
    for (k, c) in f.coeffs().iter().enumerate().take(hull.last().unwrap().0 + 1) {
        if c.is_zero() || c.valuation() >= order {
            let env = c.precision().min(order);
            if env <= hull_height(&hull, k) {
                return Err(Error::precision(format!("Newton polygon vertex ambiguous at index {k}")));
            }
        }
    }
    Ok(NewtonPolygon { vertices: hull })
}

fn hull_height(hull: &[(usize, i64)], k: usize) -> i64 {
    if k < hull[0].0 {
        return i64::MAX;
    }
    for w in hull.windows(2) {
        if k <= w[1].0 {
            let (a, b) = (w[0], w[1]);
            return a.1 + Integer::div_floor(&((b.1 - a.1) * (k - a.0) as i64), &((b.0 - a.0) as i64));
        }
    }
    hull.last().unwrap().1
}

fn residue_eval(coeffs: &[u64], a: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| ((acc as u128 * a as u128 + c as u128) % p as u128) as u64)
}

/// All roots in ℤ_p of every series congruent to `f` modulo `p^N`.
///
/// Simple roots mod p are lifted by Newton iteration and reported to the
/// full normalized order; multiple roots are handled by substituting
/// `t ← a + p·s` and recursing. A branch whose series can no longer be
/// distinguished from zero raises a precision error.
pub fn zp_roots(f: &SeriesApprox) -> Result<Vec<RootWithPrecision>> {
    let mut out = Vec::new();
    roots_rec(f, &BigInt::zero(), 0, &mut out)?;
    out.sort_by_key(|a| a.root.to_integer());
    Ok(out)
}

fn roots_rec(f: &SeriesApprox, prefix: &BigInt, level: u32, out: &mut Vec<RootWithPrecision>) -> Result<()> {
    let p = f.prime();
    let (g, _) = normalize(f)?;
    let order = g.order();
    if order <= 0 {
        return Err(Error::precision("series order exhausted"));
    }
    let red = g.reduce_mod_p();
    let dg = g.derivative();
    let dred = dg.reduce_mod_p();
    let scale = p_pow(p, level as i64);
    for a in 0..p {
        if residue_eval(&red, a, p) != 0 {
            continue;
        }
        let a_big = BigInt::from(a);
        if residue_eval(&dred, a, p) != 0 {
            let alpha = hensel_lift(&g, &dg, a_big.clone(), order)?;
            let root = Padic::from_int(p, prefix + &scale * &alpha, order + level as i64);
            out.push(RootWithPrecision {
                root,
                residue: prefix + &scale * &a_big,
                level,
            });
        } else {
            let next = g.substitute(&a_big);
            roots_rec(&next, &(prefix + &scale * &a_big), level + 1, out)?;
        }
    }
    Ok(())
}

/// Newton iteration from a simple root `a` mod p; the result is exact mod `p^order`.
fn hensel_lift(g: &SeriesApprox, dg: &SeriesApprox, a: BigInt, order: i64) -> Result<BigInt> {
    let p = g.prime();
    let modulus = p_pow(p, order);
    let mut x = a;
    loop {
        let xp = Padic::from_int(p, x.clone(), order + 1);
        let gx = g.eval(&xp)?;
        if gx.is_zero() || gx.valuation() >= order {
            return Ok(x.mod_floor(&modulus));
        }
        let step = gx.try_div(&dg.eval(&xp)?)?;
        x = (x - step.to_integer().expect("step is integral")).mod_floor(&modulus);
    }
}

/// Exact polynomial `Π (t − r_i)` as a series of the given order.
pub fn planted_polynomial(p: u64, roots: &[BigInt], order: i64) -> SeriesApprox {
    let mut coeffs = vec![BigInt::one()];
    for r in roots {
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        coeffs = next;
    }
    SeriesApprox::from_integers(p, &coeffs, order)
}
