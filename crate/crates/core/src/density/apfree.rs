//! Sets without an exact `k`-term arithmetic progression.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProviderMode {
    /// Maximum-size set by branch and bound.
    Exact,
    /// Behrend's sphere-digit construction (`k = 3` only).
    Behrend3,
    /// Greedy by increasing element.
    Greedy,
    /// Exact up to the cap, then Behrend for `k = 3`, else greedy.
    Auto,
}

impl std::str::FromStr for ProviderMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "behrend3" => Ok(Self::Behrend3),
            "greedy" => Ok(Self::Greedy),
            "auto" => Ok(Self::Auto),
            other => Err(Error::Parse(format!("unknown provider mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct APkFreeProvider {
    pub mode: ProviderMode,
    /// Largest interval length the exact mode accepts (at most 128).
    pub exact_cap: usize,
}

impl Default for APkFreeProvider {
    fn default() -> Self {
        Self { mode: ProviderMode::Auto, exact_cap: 60 }
    }
}

impl APkFreeProvider {
    pub fn exact() -> Self {
        Self { mode: ProviderMode::Exact, ..Self::default() }
    }
}

/// A subset of `[lo, hi]` without an exact `k`-term progression.
pub fn apk_free_set(lo: i64, hi: i64, k: usize, provider: &APkFreeProvider) -> Result<Vec<i64>> {
    if lo > hi {
        return Err(Error::InvalidParameter(format!("empty interval [{lo}, {hi}]")));
    }
    if k < 3 {
        return Err(Error::InvalidParameter(format!("k must be at least 3, got {k}")));
    }
    let n = usize::try_from(hi - lo + 1).map_err(|_| Error::Overflow("interval length".into()))?;
    let mode = match provider.mode {
        ProviderMode::Auto if n <= provider.exact_cap.min(128) => ProviderMode::Exact,
        ProviderMode::Auto if k == 3 => ProviderMode::Behrend3,
        ProviderMode::Auto => ProviderMode::Greedy,
        m => m,
    };
    let base = match mode {
        ProviderMode::Exact => {
            if n > provider.exact_cap || n > 128 {
                return Err(Error::CapExceeded(format!(
                    "exact mode on {n} elements exceeds cap {}",
                    provider.exact_cap.min(128)
                )));
            }
            max_free_exact(n, k)
        }
        ProviderMode::Behrend3 => {
            if k != 3 {
                return Err(Error::InvalidParameter(format!("behrend3 needs k = 3, got {k}")));
            }
            behrend3(n)
        }
        ProviderMode::Greedy => greedy(n, k),
        ProviderMode::Auto => unreachable!(),
    };
    Ok(base.into_iter().map(|x| x as i64 + lo).collect())
}

/// True iff some exact `k`-term progression lies in `set` (sorted or not).
pub fn has_exact_ap(set: &[i64], k: usize) -> bool {
    let members: std::collections::HashSet<i64> = set.iter().copied().collect();
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    for (i, &a) in sorted.iter().enumerate() {
        for &b in &sorted[i + 1..] {
            let d = b - a;
            if (2..k as i64).all(|j| members.contains(&(a + j * d))) {
                return true;
            }
        }
    }
    false
}

fn closes_ap(mask: u128, e: usize, k: usize) -> bool {
    let span = k - 1;
    (1..=e / span).any(|d| (1..=span).all(|j| mask >> (e - j * d) & 1 == 1))
}

/// Lexicographically smallest maximum `k`-AP-free subset of `[0, n)`.
fn max_free_exact(n: usize, k: usize) -> Vec<usize> {
    // sizes[l] = maximum size for an interval of length l.
    let mut sizes = vec![0usize; n + 1];
    for len in 1..=n {
        let floor = sizes[len - 1];
        // Upper bound while searching; one more element adds at most one.
        sizes[len] = floor + 1;
        let found = Search { n: len, k, sizes: &sizes, best: floor, best_mask: None }.run();
        sizes[len] = if found.1.is_some() { found.0 } else { floor };
    }
    let floor = sizes[n].saturating_sub(1);
    let (_, mask) = Search { n, k, sizes: &sizes, best: floor, best_mask: None }.run();
    let mask = mask.unwrap_or(0);
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

struct Search<'a> {
    n: usize,
    k: usize,
    sizes: &'a [usize],
    best: usize,
    best_mask: Option<u128>,
}

impl Search<'_> {
    /// Finds a set strictly larger than `best` if one exists.
    fn run(mut self) -> (usize, Option<u128>) {
        self.dfs(0, 0, 0);
        (self.best, self.best_mask)
    }

    fn dfs(&mut self, pos: usize, mask: u128, count: usize) {
        if pos == self.n {
            if count > self.best {
                self.best = count;
                self.best_mask = Some(mask);
            }
            return;
        }
        if count + self.sizes[self.n - pos] <= self.best {
            return;
        }
        if !closes_ap(mask, pos, self.k) {
            self.dfs(pos + 1, mask | 1 << pos, count + 1);
        }
        self.dfs(pos + 1, mask, count);
    }
}

fn greedy(n: usize, k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    let mut member = vec![false; n];
    for e in 0..n {
        let span = k - 1;
        let closes = (1..=e / span).any(|d| (1..=span).all(|j| member[e - j * d]));
        if !closes {
            member[e] = true;
            out.push(e);
        }
    }
    out
}

/// Behrend: digits below `d` in base `2d - 1` with a fixed sum of squares.
/// Digit sums never carry, so `x + z = 2y` forces digitwise equality, and a
/// sphere contains no three collinear points.
fn behrend3(n: usize) -> Vec<usize> {
    let mut best: Vec<usize> = (0..n.min(2)).collect();
    let mut d = 2usize;
    while 2 * d - 1 <= n.max(3) {
        let base = 2 * d - 1;
        let mut dims = 1usize;
        while let Some(max) = max_value(d, base, dims) {
            if max >= n {
                break;
            }
            let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
            let count = d.pow(dims as u32);
            for code in 0..count {
                let (mut c, mut value, mut place, mut norm) = (code, 0usize, 1usize, 0usize);
                for _ in 0..dims {
                    let digit = c % d;
                    c /= d;
                    value += digit * place;
                    place *= base;
                    norm += digit * digit;
                }
                groups.entry(norm).or_default().push(value);
            }
            for (_, mut g) in groups {
                if g.len() > best.len() {
                    g.sort_unstable();
                    best = g;
                }
            }
            dims += 1;
        }
        d += 1;
    }
    best
}

fn max_value(d: usize, base: usize, dims: usize) -> Option<usize> {
    let mut total = 0usize;
    let mut place = 1usize;
    for _ in 0..dims {
        total = total.checked_add((d - 1).checked_mul(place)?)?;
        place = place.checked_mul(base)?;
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All subsets of [0, n): the largest AP-free ones, lexicographically first.
    fn brute(n: usize, k: usize) -> Vec<i64> {
        let mut best: Option<Vec<i64>> = None;
        for mask in 0u32..1 << n {
            let set: Vec<i64> = (0..n as i64).filter(|&i| mask >> i & 1 == 1).collect();
            if has_exact_ap(&set, k) {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => set.len() > b.len() || (set.len() == b.len() && set < *b),
            };
            if better {
                best = Some(set);
            }
        }
        best.unwrap()
    }

    #[test]
    fn exact_matches_brute_force() {
        for k in 3..=4 {
            for n in 1..=14 {
                let got = apk_free_set(0, n as i64 - 1, k, &APkFreeProvider::exact()).unwrap();
                assert_eq!(got, brute(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn worked_examples() {
        let p = APkFreeProvider::exact();
        assert_eq!(apk_free_set(0, 4, 3, &p).unwrap(), vec![0, 1, 3, 4]);
        assert_eq!(apk_free_set(2, 3, 3, &p).unwrap(), vec![2, 3]);
        let shifted: Vec<i64> = apk_free_set(0, 4, 3, &p).unwrap().iter().map(|x| x + 10).collect();
        assert_eq!(apk_free_set(10, 14, 3, &p).unwrap(), shifted);
    }

    #[test]
    fn known_maximum_sizes() {
        // r_3(n) for n = 1..=24 (OEIS A003002).
        let r3 = [1, 2, 2, 3, 4, 4, 4, 4, 5, 5, 6, 6, 7, 8, 8, 8, 8, 8, 8, 9, 9, 9, 9, 10];
        for (i, &want) in r3.iter().enumerate() {
            let n = i as i64 + 1;
            assert_eq!(apk_free_set(1, n, 3, &APkFreeProvider::exact()).unwrap().len(), want, "n={n}");
        }
    }

    #[test]
    fn mode_errors() {
        let b = APkFreeProvider { mode: ProviderMode::Behrend3, exact_cap: 60 };
        assert!(apk_free_set(0, 10, 4, &b).is_err());
        assert!(apk_free_set(0, 100, 3, &APkFreeProvider::exact()).is_err());
        assert!(apk_free_set(5, 4, 3, &APkFreeProvider::default()).is_err());
    }

    #[test]
    fn constructions_are_free() {
        for n in [50, 200, 1000] {
            let b = apk_free_set(0, n - 1, 3, &APkFreeProvider { mode: ProviderMode::Behrend3, exact_cap: 60 }).unwrap();
            assert!(!has_exact_ap(&b, 3), "behrend n={n}");
            assert!(b.iter().all(|&x| (0..n).contains(&x)));
            for k in 3..=5 {
                let g = apk_free_set(0, n - 1, k, &APkFreeProvider { mode: ProviderMode::Greedy, exact_cap: 60 }).unwrap();
                assert!(!has_exact_ap(&g, k), "greedy n={n} k={k}");
            }
        }
        let auto = apk_free_set(0, 999, 3, &APkFreeProvider::default()).unwrap();
        assert!(!has_exact_ap(&auto, 3));
    }

    #[test]
    fn greedy_k3_is_ternary_digits() {
        // Greedy 3-AP-free from 0 picks numbers with no digit 2 in base 3.
        let g = apk_free_set(0, 26, 3, &APkFreeProvider { mode: ProviderMode::Greedy, exact_cap: 60 }).unwrap();
        let want: Vec<i64> = (0..27).filter(|x: &i64| {
            let mut v = *x;
            while v > 0 {
                if v % 3 == 2 {
                    return false;
                }
                v /= 3;
            }
            true
        }).collect();
        assert_eq!(g, want);
    }
}
