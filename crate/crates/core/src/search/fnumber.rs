//! Exact `f_ε(N, m, k)`: the largest subset of `[N]^m` without a `C_ε(m,k)`.
//!
//! Branch and bound over the points in lexicographic order, trying
//! inclusion first, starting from the greedy set as incumbent. For `m = 1`
//! the forbidden family is an explicit hypergraph; since it is invariant
//! under translation, the optimum on every shorter suffix bounds the
//! remaining gain. For `m ≥ 2` the cube search is the violation oracle.

use std::time::Instant;

use crate::density::cube_search::verify_cube_free;
use crate::error::{Error, Result};
use crate::geometry::cube::checked_pow;
use crate::rational::Epsilon;
use crate::search::hypergraph::{enumerate_eps_aps, exact_ap_edges, DEFAULT_EDGE_CAP};
use crate::search::wnumber::SearchLimits;
use crate::search::{OutcomeKind, SearchOutcome, SearchStats, Witness};

/// Maximum subset of `1..=n` containing no edge, for a translation-invariant
/// family given by its edges (sorted `k`-subsets of `1..=n`).
/// Returns `(size, set, nodes, complete)`.
fn max_free_1d(n: usize, edges: &[Vec<i64>], node_cap: u64) -> (usize, Vec<i64>, u64, bool) {
    let mut by_max: Vec<Vec<&[i64]>> = vec![Vec::new(); n + 1];
    for e in edges {
        by_max[*e.last().unwrap() as usize].push(e.as_slice());
    }
    let mut nodes = 0u64;
    // sizes[l]: optimum on an interval of length l (or an upper bound while unknown).
    let mut sizes = vec![0usize; n + 1];
    let mut best_set = Vec::new();
    for len in 1..=n {
        let floor = sizes[len - 1];
        sizes[len] = floor + 1;
        let mut search = FreeSearch {
            n: len,
            by_max: &by_max,
            sizes: &sizes,
            member: vec![false; len + 1],
            best: floor,
            best_set: None,
            nodes: 0,
            budget: node_cap.saturating_sub(nodes),
        };
        let done = search.dfs(1, 0);
        nodes += search.nodes;
        if !done {
            // Fall back to the greedy set on the full range.
            let g = greedy_1d(n, &by_max);
            return (g.len(), g, nodes, false);
        }
        match search.best_set {
            Some(s) => {
                sizes[len] = s.len();
                if len == n {
                    best_set = s;
                }
            }
            None => {
                sizes[len] = floor;
                if len == n {
                    // The optimum equals the previous one; recover the lexicographically first.
                    let mut again = FreeSearch {
                        n,
                        by_max: &by_max,
                        sizes: &sizes,
                        member: vec![false; n + 1],
                        best: floor.saturating_sub(1),
                        best_set: None,
                        nodes: 0,
                        budget: u64::MAX,
                    };
                    again.dfs(1, 0);
                    nodes += again.nodes;
                    best_set = again.best_set.unwrap_or_default();
                }
            }
        }
    }
    (sizes[n], best_set, nodes, true)
}

struct FreeSearch<'a> {
    n: usize,
    by_max: &'a [Vec<&'a [i64]>],
    sizes: &'a [usize],
    member: Vec<bool>,
    best: usize,
    best_set: Option<Vec<i64>>,
    nodes: u64,
    budget: u64,
}

impl FreeSearch<'_> {
    fn closes_edge(&self, x: usize) -> bool {
        self.by_max[x].iter().any(|e| e[..e.len() - 1].iter().all(|&y| self.member[y as usize]))
    }

    /// Finds a set larger than `best`; returns false if the budget ran out.
    fn dfs(&mut self, x: usize, count: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if x > self.n {
            if count > self.best {
                self.best = count;
                self.best_set = Some((1..=self.n as i64).filter(|&y| self.member[y as usize]).collect());
            }
            return true;
        }
        if count + self.sizes[self.n - x + 1] <= self.best {
            return true;
        }
        if !self.closes_edge(x) {
            self.member[x] = true;
            let ok = self.dfs(x + 1, count + 1);
            self.member[x] = false;
            if !ok {
                return false;
            }
        }
        self.dfs(x + 1, count)
    }
}

fn greedy_1d(n: usize, by_max: &[Vec<&[i64]>]) -> Vec<i64> {
    let mut member = vec![false; n + 1];
    for x in 1..=n {
        member[x] = !by_max[x].iter().any(|e| e[..e.len() - 1].iter().all(|&y| member[y as usize]));
    }
    (1..=n as i64).filter(|&y| member[y as usize]).collect()
}

fn outcome(complete: bool, set: Vec<Vec<i64>>, nodes: u64, start: Instant) -> SearchOutcome {
    SearchOutcome {
        kind: if complete { OutcomeKind::Value } else { OutcomeKind::LowerBoundOnly },
        value: set.len() as u64,
        witness: Some(Witness::Set(set)),
        stats: SearchStats { nodes, wall_time: start.elapsed() },
    }
}

/// `f_ε(N, m, k)` with a witness set (points as `m`-vectors over `1..=N`).
pub fn exact_f(n: usize, m: usize, k: usize, eps: &Epsilon, limits: SearchLimits) -> Result<SearchOutcome> {
    if m < 1 || k < 2 {
        return Err(Error::InvalidParameter(format!("need m >= 1 and k >= 2, got m={m}, k={k}")));
    }
    let start = Instant::now();
    if m == 1 {
        let h = enumerate_eps_aps(n, k, eps, limits.edge_cap)?;
        let (_, set, nodes, complete) = max_free_1d(n, &h.edges, limits.node_cap);
        return Ok(outcome(complete, set.into_iter().map(|x| vec![x]).collect(), nodes, start));
    }
    let total = checked_pow(n, m)?;
    if total > 128 {
        return Err(Error::CapExceeded(format!("[{n}]^{m} has {total} points; the cube search handles at most 128")));
    }
    let points: Vec<Vec<i64>> = (0..total)
        .map(|i| crate::geometry::cube::index_vector(i, m, n).into_iter().map(|c| c as i64 + 1).collect())
        .collect();
    let mut search = CubeFreeSearch { points: &points, m, k, eps, member: Vec::new(), best: Vec::new(), nodes: 0, budget: limits.node_cap };
    // Greedy incumbent.
    for p in &points {
        search.member.push(p.clone());
        if verify_cube_free(&search.member, m, k, eps).is_some() {
            search.member.pop();
        }
    }
    search.best = std::mem::take(&mut search.member);
    let complete = search.dfs(0);
    Ok(outcome(complete, search.best, search.nodes, start))
}

/// `f(N, 1, k)` for exact progressions, on the same engine.
pub fn exact_f_exact_ap(n: usize, k: usize, limits: SearchLimits) -> Result<SearchOutcome> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    let start = Instant::now();
    let edges = exact_ap_edges(n, k);
    if edges.len() > limits.edge_cap {
        return Err(Error::CapExceeded(format!("{} edges exceed cap {}", edges.len(), limits.edge_cap)));
    }
    let (_, set, nodes, complete) = max_free_1d(n, &edges, limits.node_cap);
    Ok(outcome(complete, set.into_iter().map(|x| vec![x]).collect(), nodes, start))
}

struct CubeFreeSearch<'a> {
    points: &'a [Vec<i64>],
    m: usize,
    k: usize,
    eps: &'a Epsilon,
    member: Vec<Vec<i64>>,
    best: Vec<Vec<i64>>,
    nodes: u64,
    budget: u64,
}

impl CubeFreeSearch<'_> {
    fn dfs(&mut self, pos: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if self.member.len() + (self.points.len() - pos) <= self.best.len() {
            return true;
        }
        if pos == self.points.len() {
            self.best = self.member.clone();
            return true;
        }
        self.member.push(self.points[pos].clone());
        let ok = verify_cube_free(&self.member, self.m, self.k, self.eps).is_some() || self.dfs(pos + 1);
        self.member.pop();
        ok && self.dfs(pos + 1)
    }
}

/// Default limits with the edge cap used by the exact-value searches.
pub fn default_limits() -> SearchLimits {
    SearchLimits { edge_cap: DEFAULT_EDGE_CAP, ..SearchLimits::default() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::apfree::{apk_free_set, APkFreeProvider};
    use crate::geometry::ap::recognize_ap_set;

    fn eps(p: i64, q: i64) -> Epsilon {
        Epsilon::from_ratio(p, q).unwrap()
    }

    fn set_1d(out: &SearchOutcome) -> Vec<i64> {
        match &out.witness {
            Some(Witness::Set(s)) => s.iter().map(|p| p[0]).collect(),
            _ => panic!("no set witness"),
        }
    }

    /// All subsets of [n], largest ε-AP-free one (lexicographically first).
    fn brute(n: usize, k: usize, e: &Epsilon) -> Vec<i64> {
        let mut best: Vec<i64> = Vec::new();
        for mask in 0u32..1 << n {
            let set: Vec<i64> = (1..=n as i64).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
            if set.len() < best.len() {
                continue;
            }
            let mut bad = false;
            let c = crate::colorings::verify::first_eps_ap(&set, k, e);
            if c.is_some() {
                bad = true;
            }
            if !bad && (set.len() > best.len() || set < best) {
                best = set;
            }
        }
        best
    }

    #[test]
    fn too_few_points() {
        for k in 3..=5 {
            let out = exact_f(k - 1, 1, k, &eps(1, 3), default_limits()).unwrap();
            assert_eq!(out.value, k as u64 - 1);
        }
    }

    #[test]
    fn matches_brute_force() {
        for e in [eps(1, 3), eps(1, 5), eps(1, 10)] {
            for n in 1..=12 {
                let out = exact_f(n, 1, 3, &e, default_limits()).unwrap();
                assert_eq!(set_1d(&out), brute(n, 3, &e), "n={n} eps={e}");
            }
        }
    }

    #[test]
    fn witness_is_free() {
        let e = eps(1, 3);
        let out = exact_f(6, 1, 3, &e, default_limits()).unwrap();
        let s = set_1d(&out);
        assert_eq!(s.len() as u64, out.value);
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                for l in j + 1..s.len() {
                    assert!(recognize_ap_set(&[s[i], s[j], s[l]], &e).unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn exact_engine_matches_provider() {
        for n in 1..=15 {
            let engine = exact_f_exact_ap(n, 3, default_limits()).unwrap();
            let provider = apk_free_set(1, n as i64, 3, &APkFreeProvider::exact()).unwrap();
            assert_eq!(set_1d(&engine), provider, "n={n}");
            let approx = exact_f(n, 1, 3, &eps(1, 4), default_limits()).unwrap();
            assert!(approx.value <= engine.value);
        }
    }

    #[test]
    fn two_dimensional() {
        // [2]^2 with k = 2 is itself a cube: the best is 3 points.
        let out = exact_f(2, 2, 2, &eps(1, 4), default_limits()).unwrap();
        assert_eq!(out.kind, OutcomeKind::Value);
        assert_eq!(out.value, 3);
        let Some(Witness::Set(s)) = &out.witness else { panic!() };
        assert!(verify_cube_free(s, 2, 2, &eps(1, 4)).is_none());
    }

    #[test]
    fn node_cap_keeps_incumbent() {
        let out = exact_f(14, 1, 3, &eps(1, 4), SearchLimits { node_cap: 10, ..default_limits() }).unwrap();
        assert_eq!(out.kind, OutcomeKind::LowerBoundOnly);
        assert!(out.value > 0);
    }
}
