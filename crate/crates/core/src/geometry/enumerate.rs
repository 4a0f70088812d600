//! Pruned depth-first enumeration of `AP_k(ε)` subsets of a sorted list.
//!
//! Tuples are grown in increasing order. After each point the closed
//! feasibility region bounds where the next point may lie, so only a slice
//! of the candidate list is scanned. Complete tuples are confirmed with the
//! exact recognizer, so the output equals that of a naive double loop.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::geometry::ap::{recognize_ap, IndexedPoints1D, Witness1D};
use crate::geometry::region::FeasibleRegion2D;
use crate::rational::Epsilon;

pub type ApVisit = ControlFlow<()>;

/// Calls `visit` on every `k`-subset of `candidates` (sorted, distinct) that
/// is an `AP_k(ε)`, in lexicographic order. Stops early when `visit` breaks.
/// Returns the number of search nodes expanded.
pub fn for_each_eps_ap<F>(candidates: &[i64], k: usize, eps: &Epsilon, mut visit: F) -> u64
where
    F: FnMut(&[i64], Witness1D) -> ApVisit,
{
    debug_assert!(candidates.windows(2).all(|w| w[0] < w[1]));
    let mut nodes = 0;
    if k >= 1 && candidates.len() >= k {
        let mut chosen = Vec::with_capacity(k);
        let region = FeasibleRegion2D::new(eps.clone());
        let _ = dfs(candidates, k, 0, &region, &mut chosen, &mut visit, &mut nodes);
    }
    nodes
}

fn dfs<F>(
    cands: &[i64],
    k: usize,
    start: usize,
    region: &FeasibleRegion2D,
    chosen: &mut Vec<i64>,
    visit: &mut F,
    nodes: &mut u64,
) -> ApVisit
where
    F: FnMut(&[i64], Witness1D) -> ApVisit,
{
    *nodes += 1;
    let depth = chosen.len();
    if depth == k {
        if k < 2 {
            return ControlFlow::Continue(());
        }
        let pts = IndexedPoints1D::new(chosen.clone()).expect("increasing");
        if let Some(w) = recognize_ap(&pts, region.eps()) {
            return visit(chosen, w);
        }
        return ControlFlow::Continue(());
    }
    let Some((lo, hi)) = region.position_range(depth as i64, None) else {
        return ControlFlow::Continue(());
    };
    let end_limit = cands.len() - (k - depth - 1);
    let mut first = start;
    if let Some(lo) = lo {
        let lo = clamp_i64(&lo.ceil());
        first = first.max(cands.partition_point(|&c| c < lo));
    }
    let mut last = end_limit;
    if let Some(hi) = hi {
        let hi = clamp_i64(&hi.floor());
        last = last.min(cands.partition_point(|&c| c <= hi));
    }
    for idx in first..last {
        let next = region.with_point(depth as i64, cands[idx]);
        if next.closed_empty() {
            continue;
        }
        chosen.push(cands[idx]);
        let flow = dfs(cands, k, idx + 1, &next, chosen, visit, nodes);
        chosen.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

fn clamp_i64(v: &BigInt) -> i64 {
    v.to_i64().unwrap_or(if v.sign() == num_bigint::Sign::Minus { i64::MIN } else { i64::MAX })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(cands: &[i64], k: usize, eps: &Epsilon) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let n = cands.len();
        let mut idx: Vec<usize> = (0..k).collect();
        if n < k {
            return out;
        }
        loop {
            let pts: Vec<i64> = idx.iter().map(|&i| cands[i]).collect();
            if recognize_ap(&IndexedPoints1D::new(pts.clone()).unwrap(), eps).is_some() {
                out.push(pts);
            }
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        out
    }

    #[test]
    fn matches_naive_on_small_ranges() {
        for (p, q) in [(1, 10), (1, 4), (1, 3)] {
            let e = Epsilon::from_ratio(p, q).unwrap();
            for k in 2..=4 {
                let cands: Vec<i64> = (1..=10).collect();
                let mut got = Vec::new();
                for_each_eps_ap(&cands, k, &e, |s, _| {
                    got.push(s.to_vec());
                    ControlFlow::Continue(())
                });
                assert_eq!(got, naive(&cands, k, &e), "k={k}, eps={p}/{q}");
            }
        }
    }

    #[test]
    fn sparse_candidates() {
        let e = Epsilon::from_ratio(1, 5).unwrap();
        let cands = vec![1, 4, 9, 16, 25, 36, 49];
        let mut got = Vec::new();
        for_each_eps_ap(&cands, 3, &e, |s, _| {
            got.push(s.to_vec());
            ControlFlow::Continue(())
        });
        assert_eq!(got, naive(&cands, 3, &e));
    }

    #[test]
    fn early_stop() {
        let e = Epsilon::from_ratio(1, 3).unwrap();
        let cands: Vec<i64> = (1..=8).collect();
        let mut seen = 0;
        for_each_eps_ap(&cands, 3, &e, |s, _| {
            seen += 1;
            assert_eq!(s, &[1, 2, 3]);
            ControlFlow::Break(())
        });
        assert_eq!(seen, 1);
    }
}
