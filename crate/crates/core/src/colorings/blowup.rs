//! Iterated blow-ups `B_r = { b_0 + t·b_1 + … + t^{r-1}·b_{r-1} : b_i ∈ [0, k) }`
//! with `t = ⌈k/ε⌉`. Any `r`-coloring of `B_r` has a monochromatic `AP_k(ε)`.

use serde::Serialize;

use crate::colorings::verify::find_mono_ap;
use crate::error::{Error, Result};
use crate::rational::{Epsilon, ExactRational};
use num_traits::ToPrimitive;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupSpec {
    pub k: usize,
    pub r: usize,
    pub eps: Epsilon,
    pub t: i64,
    /// Sorted, 0-based.
    pub elements: Vec<i64>,
}

impl BlowupSpec {
    /// The elements shifted into `[N]` (`+1`).
    pub fn one_based(&self) -> Vec<i64> {
        self.elements.iter().map(|x| x + 1).collect()
    }

    pub fn diameter(&self) -> i64 {
        self.elements.last().unwrap() - self.elements.first().unwrap()
    }

    /// `(k-1)(1 + t + … + t^{r-1})`.
    pub fn diameter_bound(&self) -> i64 {
        let mut s = 0;
        let mut p = 1;
        for _ in 0..self.r {
            s += p;
            p *= self.t;
        }
        (self.k as i64 - 1) * s
    }

    /// The copy `B_{r-1} + i·t^{r-1}`: elements whose leading digit is `i`.
    pub fn block(&self, i: usize) -> &[i64] {
        let len = self.elements.len() / self.k;
        &self.elements[i * len..(i + 1) * len]
    }
}

pub fn blowup_step(k: usize, eps: &Epsilon) -> Result<i64> {
    let t = (ExactRational::from(k as i64) / eps.value().clone()).ceil();
    t.to_i64().ok_or_else(|| Error::Overflow(format!("t = {t} does not fit in i64")))
}

pub fn build_blowup_1d(k: usize, r: usize, eps: &Epsilon) -> Result<BlowupSpec> {
    if k < 2 || r < 1 {
        return Err(Error::InvalidParameter(format!("need k >= 2 and r >= 1, got k={k}, r={r}")));
    }
    let t = blowup_step(k, eps)?;
    if t < k as i64 {
        return Err(Error::InvalidParameter(format!("eps = {eps} gives t = {t} < k, digits would collide")));
    }
    let overflow = || Error::Overflow(format!("t^(r-1)·k with t={t}, r={r}, k={k} exceeds i64"));
    let top = t.checked_pow(r as u32 - 1).ok_or_else(overflow)?;
    top.checked_mul(k as i64).ok_or_else(overflow)?;
    let size = k.checked_pow(r as u32).ok_or_else(overflow)?;

    let mut elements = Vec::with_capacity(size);
    elements.push(0i64);
    let mut scale = 1i64;
    for _ in 0..r {
        let prev = std::mem::take(&mut elements);
        for b in 0..k as i64 {
            elements.extend(prev.iter().map(|x| x + b * scale));
        }
        scale = scale.saturating_mul(t);
    }
    debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
    Ok(BlowupSpec { k, r, eps: eps.clone(), t, elements })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupRamseyReport {
    pub colorings_checked: u64,
    /// A coloring (one color per element, in element order) with no
    /// monochromatic `AP_k(ε)`, if one exists.
    pub counterexample: Option<Vec<u8>>,
}

/// Checks every `colors`-coloring of the blow-up for a monochromatic
/// `AP_k(ε)`. Exponential; desk scale only.
pub fn exhaustive_blowup_check(spec: &BlowupSpec, colors: u8, cap: u64) -> Result<BlowupRamseyReport> {
    let n = spec.elements.len();
    let total = (colors as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= cap)
        .ok_or_else(|| Error::CapExceeded(format!("{colors}^{n} colorings exceeds cap {cap}")))?;
    let mut assignment = vec![0u8; n];
    for code in 0..total {
        let mut c = code;
        for slot in assignment.iter_mut() {
            *slot = (c % colors as u64) as u8;
            c /= colors as u64;
        }
        let mut classes = vec![Vec::new(); colors as usize];
        for (x, &col) in spec.elements.iter().zip(&assignment) {
            classes[col as usize].push(*x);
        }
        if find_mono_ap(&classes, spec.k, &spec.eps).is_none() {
            return Ok(BlowupRamseyReport {
                colorings_checked: code + 1,
                counterexample: Some(assignment.iter().map(|c| c + 1).collect()),
            });
        }
    }
    Ok(BlowupRamseyReport { colorings_checked: total, counterexample: None })
}
