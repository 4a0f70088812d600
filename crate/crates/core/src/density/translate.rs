//! Averaging over translates: some `A + u`, `u ∈ [-N+1, N]^m`, meets `X`
//! in at least `(α/2^m)·|A|` points, where `α = |X|/N^m`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_SHIFT_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranslateMode {
    /// Scan every shift in lexicographic order; error above `cap` shifts.
    Deterministic { cap: u64 },
    /// Sample shifts from a seeded generator until the bound is met.
    Randomized { seed: u64, max_samples: u64 },
    /// Deterministic when `(2N)^m ≤ 10^6`, otherwise randomized.
    Auto { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslateResult {
    pub shift: Vec<i64>,
    pub count: u64,
    /// Whether `count · 2^m · N^m ≥ |X|·|A|`.
    pub meets_bound: bool,
    pub shifts_examined: u64,
}

fn intersection(a: &[Vec<i64>], x: &HashSet<&[i64]>, u: &[i64]) -> u64 {
    let mut buf = vec![0; u.len()];
    a.iter()
        .filter(|p| {
            for ((b, c), s) in buf.iter_mut().zip(p.iter()).zip(u) {
                *b = c + s;
            }
            x.contains(buf.as_slice())
        })
        .count() as u64
}

fn shift_count(n: i64, m: usize) -> Option<u64> {
    (2 * n as u64).checked_pow(m as u32)
}

fn shift_at(code: u64, n: i64, m: usize) -> Vec<i64> {
    let width = 2 * n as u64;
    let mut u = vec![0; m];
    let mut c = code;
    for slot in u.iter_mut().rev() {
        *slot = (c % width) as i64 - n + 1;
        c /= width;
    }
    u
}

fn validate(a: &[Vec<i64>], x: &[Vec<i64>], n: i64, m: usize) -> Result<()> {
    if a.is_empty() {
        return Err(Error::InvalidInput("A must be nonempty".into()));
    }
    if n < 1 || m < 1 {
        return Err(Error::InvalidParameter(format!("need N >= 1 and m >= 1, got N={n}, m={m}")));
    }
    for p in a.iter().chain(x) {
        if p.len() != m {
            return Err(Error::InvalidInput(format!("point {p:?} does not have {m} coordinates")));
        }
    }
    if let Some(p) = x.iter().find(|p| p.iter().any(|c| !(1..=n).contains(c))) {
        return Err(Error::InvalidInput(format!("X point {p:?} is outside [1, {n}]^{m}")));
    }
    Ok(())
}

/// `Σ_u |X ∩ (A + u)|` over every `u ∈ [-N+1, N]^m`.
pub fn translation_count_sum(a: &[Vec<i64>], x: &[Vec<i64>], n: i64, m: usize) -> Result<u64> {
    validate(a, x, n, m)?;
    let total = shift_count(n, m).ok_or_else(|| Error::Overflow("(2N)^m".into()))?;
    let xs: HashSet<&[i64]> = x.iter().map(Vec::as_slice).collect();
    Ok((0..total).map(|c| intersection(a, &xs, &shift_at(c, n, m))).sum())
}

pub fn find_dense_translate(
    a: &[Vec<i64>],
    x: &[Vec<i64>],
    n: i64,
    m: usize,
    mode: TranslateMode,
) -> Result<TranslateResult> {
    validate(a, x, n, m)?;
    let xs: HashSet<&[i64]> = x.iter().map(Vec::as_slice).collect();
    let total = shift_count(n, m);
    // count·2^m·N^m ≥ |X|·|A|
    let scale = (2 * n as u128).pow(m as u32);
    let need = xs.len() as u128 * a.len() as u128;
    let meets = |count: u64| count as u128 * scale >= need;

    let mode = match mode {
        TranslateMode::Auto { seed } => match total {
            Some(t) if t <= DEFAULT_SHIFT_CAP => TranslateMode::Deterministic { cap: DEFAULT_SHIFT_CAP },
            _ => TranslateMode::Randomized { seed, max_samples: 10_000_000 },
        },
        other => other,
    };
    match mode {
        TranslateMode::Deterministic { cap } => {
            let total = total.filter(|&t| t <= cap).ok_or_else(|| {
                Error::CapExceeded(format!("(2N)^m shifts with N={n}, m={m} exceeds cap {cap}"))
            })?;
            let mut best = (0u64, shift_at(0, n, m));
            for code in 0..total {
                let u = shift_at(code, n, m);
                let c = intersection(a, &xs, &u);
                if c > best.0 {
                    best = (c, u);
                }
            }
            Ok(TranslateResult { meets_bound: meets(best.0), shift: best.1, count: best.0, shifts_examined: total })
        }
        TranslateMode::Randomized { seed, max_samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best: Option<(u64, Vec<i64>)> = None;
            for tried in 1..=max_samples {
                let u: Vec<i64> = (0..m).map(|_| rng.gen_range(-n + 1..=n)).collect();
                let c = intersection(a, &xs, &u);
                if best.as_ref().is_none_or(|b| c > b.0) {
                    best = Some((c, u));
                }
                let (count, shift) = best.clone().unwrap();
                if meets(count) {
                    return Ok(TranslateResult { shift, count, meets_bound: true, shifts_examined: tried });
                }
            }
            let (count, shift) = best.unwrap_or((0, vec![0; m]));
            Ok(TranslateResult { shift, count, meets_bound: false, shifts_examined: max_samples })
        }
        TranslateMode::Auto { .. } => unreachable!(),
    }
}
