//! Exact `W_ε(k, r)` by backtracking over colorings of `1, 2, …, N`.
//!
//! Elements are colored in increasing order. An edge can only become
//! monochromatic when its second-to-last element is colored, at which point
//! that color is forbidden for its last element; the search backtracks as
//! soon as an uncolored element has every color forbidden. Color classes are
//! kept in first-occurrence order, so element 1 always has color 1.

use std::time::Instant;

use crate::colorings::coloring::Coloring;
use crate::error::{Error, Result};
use crate::rational::Epsilon;
use crate::search::hypergraph::{enumerate_eps_aps, EpsApHypergraph, DEFAULT_EDGE_CAP};
use crate::search::{OutcomeKind, SearchOutcome, SearchStats, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Total nodes over all decisions before giving up.
    pub node_cap: u64,
    pub edge_cap: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self { node_cap: 200_000_000, edge_cap: DEFAULT_EDGE_CAP }
    }
}

/// Result of one satisfiability question.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    /// A coloring of `[N]` without a monochromatic edge.
    Colorable(Coloring),
    Unsatisfiable,
    /// The node budget ran out first.
    Unknown,
}

struct Solver<'a> {
    n: usize,
    r: u8,
    /// `trigger[x]`: edges whose second-to-last element is `x`.
    trigger: Vec<Vec<&'a [i64]>>,
    colors: Vec<u8>,
    /// `forbidden[y][c]`: edges that would turn monochromatic in color `c` at `y`.
    forbidden: Vec<Vec<u32>>,
    nodes: u64,
    budget: u64,
}

impl<'a> Solver<'a> {
    fn new(h: &'a EpsApHypergraph, n: usize, r: u8, budget: u64) -> Self {
        let mut trigger = vec![Vec::new(); n + 1];
        for e in &h.edges {
            if *e.last().unwrap() as usize <= n {
                trigger[e[e.len() - 2] as usize].push(e.as_slice());
            }
        }
        Self {
            n,
            r,
            trigger,
            colors: vec![0; n + 1],
            forbidden: vec![vec![0; r as usize + 1]; n + 1],
            nodes: 0,
            budget,
        }
    }

    /// `Some(true)` on success (colors filled), `Some(false)` when the
    /// subtree is exhausted, `None` when the budget runs out.
    fn dfs(&mut self, x: usize, used: u8) -> Option<bool> {
        if x > self.n {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let top = (used + 1).min(self.r);
        for c in 1..=top {
            if self.forbidden[x][c as usize] > 0 {
                continue;
            }
            self.colors[x] = c;
            let mut touched: Vec<usize> = Vec::new();
            let mut wiped = false;
            for e in &self.trigger[x] {
                let k = e.len();
                if e[..k - 1].iter().all(|&y| self.colors[y as usize] == c) {
                    let last = e[k - 1] as usize;
                    self.forbidden[last][c as usize] += 1;
                    touched.push(last);
                    if (1..=self.r as usize).all(|col| self.forbidden[last][col] > 0) {
                        wiped = true;
                    }
                }
            }
            let result = if wiped { Some(false) } else { self.dfs(x + 1, used.max(c)) };
            for &last in &touched {
                self.forbidden[last][c as usize] -= 1;
            }
            match result {
                Some(true) => return Some(true),
                None => {
                    self.colors[x] = 0;
                    return None;
                }
                Some(false) => {}
            }
        }
        self.colors[x] = 0;
        Some(false)
    }
}

/// Decides whether `[n]` has an `r`-coloring without a monochromatic edge
/// of `h` (only edges inside `[n]` count).
pub fn decide_colorable(h: &EpsApHypergraph, n: usize, r: u8, node_budget: u64) -> (Decision, u64) {
    if n == 0 {
        return (Decision::Unsatisfiable, 0);
    }
    let mut solver = Solver::new(h, n, r, node_budget);
    let outcome = solver.dfs(1, 0);
    let decision = match outcome {
        Some(true) => Decision::Colorable(Coloring::new(r, solver.colors[1..].to_vec()).expect("valid colors")),
        Some(false) => Decision::Unsatisfiable,
        None => Decision::Unknown,
    };
    (decision, solver.nodes)
}

/// Smallest `N ≤ n_max` such that every `r`-coloring of `[N]` contains a
/// monochromatic `AP_k(ε)`, with a good coloring of `[N-1]` as witness.
/// When no such `N` is found the outcome is `LowerBoundOnly` and `value` is
/// the largest `N` for which a good coloring was exhibited.
pub fn exact_w(k: usize, r: u8, eps: &Epsilon, n_max: usize, limits: SearchLimits) -> Result<SearchOutcome> {
    if k < 2 || r < 1 {
        return Err(Error::InvalidParameter(format!("need k >= 2 and r >= 1, got k={k}, r={r}")));
    }
    let start = Instant::now();
    let mut nodes = 0u64;
    let mut grown = 0usize;
    let mut h = enumerate_eps_aps(0, k, eps, limits.edge_cap)?;
    let mut last_good: Option<Coloring> = None;
    let finish = |kind, value, witness: Option<Coloring>, nodes| SearchOutcome {
        kind,
        value,
        witness: witness.map(Witness::Coloring),
        stats: SearchStats { nodes, wall_time: start.elapsed() },
    };
    for n in 1..=n_max {
        if n > grown {
            grown = n_max.min((2 * grown).max(k));
            h = enumerate_eps_aps(grown, k, eps, limits.edge_cap)?;
        }
        let budget = limits.node_cap.saturating_sub(nodes);
        let (decision, used) = decide_colorable(&h, n, r, budget);
        nodes += used;
        match decision {
            Decision::Colorable(c) => last_good = Some(c),
            Decision::Unsatisfiable => {
                return Ok(finish(OutcomeKind::Value, n as u64, last_good, nodes));
            }
            Decision::Unknown => {
                return Ok(finish(OutcomeKind::LowerBoundOnly, n as u64 - 1, last_good, nodes));
            }
        }
    }
    Ok(finish(OutcomeKind::LowerBoundOnly, n_max as u64, last_good, nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::verify::verify_no_mono_ap;

    fn eps(p: i64, q: i64) -> Epsilon {
        Epsilon::from_ratio(p, q).unwrap()
    }

    #[test]
    fn one_color() {
        for k in 2..=6 {
            let out = exact_w(k, 1, &eps(1, 4), 20, SearchLimits::default()).unwrap();
            assert_eq!((out.kind, out.value), (OutcomeKind::Value, k as u64));
        }
    }

    #[test]
    fn pairs_pigeonhole() {
        for r in 1..=5 {
            let out = exact_w(2, r, &eps(1, 3), 10, SearchLimits::default()).unwrap();
            assert_eq!(out.value, r as u64 + 1);
        }
    }

    #[test]
    fn exact_ap_van_der_waerden() {
        // Tiny ε makes AP_3(ε) exact on integers, so W(3,2) = 9.
        let out = exact_w(3, 2, &eps(1, 1000), 20, SearchLimits::default()).unwrap();
        assert_eq!(out.value, 9);
    }

    #[test]
    fn witness_and_minimality() {
        let e = eps(1, 3);
        let out = exact_w(3, 2, &e, 60, SearchLimits::default()).unwrap();
        assert_eq!(out.kind, OutcomeKind::Value);
        let Some(Witness::Coloring(c)) = &out.witness else { panic!("no witness") };
        assert_eq!(c.n() as u64, out.value - 1);
        assert!(verify_no_mono_ap(c, 3, &e).is_none());
        let h = enumerate_eps_aps(out.value as usize, 3, &e, 1 << 20).unwrap();
        assert_eq!(decide_colorable(&h, out.value as usize, 2, u64::MAX).0, Decision::Unsatisfiable);
    }

    /// Every coloring of `[n]`, checked with the verifier.
    fn brute_colorable(n: usize, r: u8, k: usize, e: &Epsilon) -> bool {
        let total = (r as u64).pow(n as u32);
        (0..total).any(|mut code| {
            let colors: Vec<u8> = (0..n)
                .map(|_| {
                    let c = (code % r as u64) as u8 + 1;
                    code /= r as u64;
                    c
                })
                .collect();
            verify_no_mono_ap(&Coloring::new(r, colors).unwrap(), k, e).is_none()
        })
    }

    #[test]
    fn decision_matches_brute_force() {
        for e in [eps(1, 3), eps(1, 5)] {
            let h = enumerate_eps_aps(10, 3, &e, 1 << 20).unwrap();
            for n in 1..=10 {
                let got = !matches!(decide_colorable(&h, n, 2, u64::MAX).0, Decision::Unsatisfiable);
                assert_eq!(got, brute_colorable(n, 2, 3, &e), "n={n} eps={e}");
            }
        }
    }

    #[test]
    fn budget_gives_lower_bound() {
        let out = exact_w(3, 2, &eps(1, 1000), 20, SearchLimits { node_cap: 5, ..Default::default() }).unwrap();
        assert_eq!(out.kind, OutcomeKind::LowerBoundOnly);
        assert!(out.value < 9);
    }
}
