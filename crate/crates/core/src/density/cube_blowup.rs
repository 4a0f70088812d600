//! The cube blow-up `A_r = { v_0 + t·v_1 + … + t^{r-1}·v_{r-1} : v_i ∈ {0..k-1}^m }`
//! with `t = ⌈k√m/ε⌉`, and the product sets `A × [N]^{m-1}`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::cube::{checked_pow, index_vector, IndexedGrid};
use crate::rational::{Epsilon, ExactRational};

pub const DEFAULT_POINT_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubeBlowupSpec {
    pub m: usize,
    pub k: usize,
    pub eps: Epsilon,
    pub alpha: ExactRational,
    pub r: u32,
    pub t: i64,
    /// Side of the bounding box: `diam(B_r) + 1 ≤ k·t^{r-1}`.
    pub side: i64,
    /// Lexicographically sorted, 0-based.
    pub elements: Vec<Vec<i64>>,
}

impl CubeBlowupSpec {
    /// `t^{r-1}`, the scale of the top digit.
    pub fn top_scale(&self) -> i64 {
        self.t.pow(self.r - 1)
    }

    /// Top digit vector `u` of a point, i.e. the block `A_{r,u}` holding it.
    pub fn block_of(&self, p: &[i64]) -> Vec<usize> {
        let s = self.top_scale();
        p.iter().map(|&c| (c / s) as usize).collect()
    }

    /// Members of `A_{r,u}`, in lexicographic order.
    pub fn block(&self, u: &[usize]) -> Vec<Vec<i64>> {
        self.elements.iter().filter(|p| self.block_of(p) == u).cloned().collect()
    }

    /// One uniformly chosen point from each `A_{r,u}`, indexed by `u`.
    pub fn random_transversal<R: Rng>(&self, rng: &mut R) -> Result<IndexedGrid> {
        let count = checked_pow(self.k, self.m)?;
        let mut blocks: Vec<Vec<&Vec<i64>>> = vec![Vec::new(); count];
        for p in &self.elements {
            let idx = self.block_of(p).iter().fold(0, |acc, &c| acc * self.k + c);
            blocks[idx].push(p);
        }
        let points = blocks.iter().map(|b| (*b.choose(rng).expect("nonempty block")).clone()).collect();
        IndexedGrid::new(self.m, self.k, points)
    }
}

/// `r = ⌈ln(1/α) / ln(k^m/(k^m-1))⌉`, at least 1.
pub fn iteration_count(m: usize, k: usize, alpha: &ExactRational) -> Result<u32> {
    if !alpha.is_positive() || alpha >= &ExactRational::one() {
        return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let km = checked_pow(k, m)? as f64;
    let r = ((1.0 / alpha.to_f64()).ln() / (km / (km - 1.0)).ln()).ceil();
    Ok(r.max(1.0) as u32)
}

/// Smallest integer `t ≥ k√m/ε`, decided exactly via `t²ε² ≥ k²m`.
pub fn cube_step(m: usize, k: usize, eps: &Epsilon) -> Result<i64> {
    let target = ExactRational::from((k * k * m) as i64);
    let fits = |t: i64| {
        let te = &ExactRational::from(t) * eps.value();
        &te * &te >= target
    };
    let mut t = ((k as f64) * (m as f64).sqrt() / eps.to_f64()).ceil().max(1.0) as i64;
    while t > 1 && fits(t - 1) {
        t -= 1;
    }
    while !fits(t) {
        t += 1;
    }
    Ok(t)
}

pub fn build_cube_blowup(
    m: usize,
    k: usize,
    eps: &Epsilon,
    alpha: &ExactRational,
    point_cap: usize,
) -> Result<CubeBlowupSpec> {
    if m < 1 || k < 3 {
        return Err(Error::InvalidParameter(format!("need m >= 1 and k >= 3, got m={m}, k={k}")));
    }
    let r = iteration_count(m, k, alpha)?;
    let t = cube_step(m, k, eps)?;
    if t < k as i64 {
        return Err(Error::InvalidParameter(format!("t = {t} < k = {k}; blocks would overlap")));
    }
    let size = (r as usize)
        .checked_mul(m)
        .and_then(|e| k.checked_pow(e as u32))
        .filter(|&s| s <= point_cap)
        .ok_or_else(|| {
            Error::CapExceeded(format!("|A_r| = {k}^({r}·{m}) exceeds the point cap {point_cap} (r = {r})"))
        })?;
    t.checked_pow(r - 1)
        .and_then(|s| s.checked_mul(k as i64))
        .ok_or_else(|| Error::Overflow(format!("k·t^(r-1) with t={t}, r={r}")))?;

    let digits_per_axis = checked_pow(k, r as usize)?;
    let axis: Vec<i64> = (0..digits_per_axis)
        .map(|code| {
            index_vector(code, r as usize, k).iter().fold(0i64, |acc, &b| acc * t + b as i64)
        })
        .collect();
    let side = axis.last().unwrap() + 1;
    let mut elements = Vec::with_capacity(size);
    for code in 0..size {
        elements.push(index_vector(code, m, digits_per_axis).iter().map(|&i| axis[i]).collect());
    }
    Ok(CubeBlowupSpec { m, k, eps: eps.clone(), alpha: alpha.clone(), r, t, side, elements })
}

/// `A × [N]^{m-1}` with `A ⊆ [N]`, lexicographically sorted.
pub fn product_free_set(a: &[i64], m: usize, n: i64) -> Result<Vec<Vec<i64>>> {
    if m < 1 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if let Some(x) = a.iter().find(|&&x| !(1..=n).contains(&x)) {
        return Err(Error::InvalidInput(format!("{x} is not in [1, {n}]")));
    }
    let mut first = a.to_vec();
    first.sort_unstable();
    first.dedup();
    let mut out: Vec<Vec<i64>> = first.into_iter().map(|x| vec![x]).collect();
    for _ in 1..m {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=n).map(move |y| {
                    let mut q = p.clone();
                    q.push(y);
                    q
                })
            })
            .collect();
    }
    Ok(out)
}
