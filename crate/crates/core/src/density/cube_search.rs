//! Search a finite point set for an ε-approximate cube `C_ε(m,k)`.
//!
//! Points are assigned to index vectors in lexicographic order of `v`. Each
//! axis keeps its own closed 1-D region over `(a_j, d)` with the shared `d`
//! interval intersected across axes; a cube witness satisfies every
//! coordinate projection, so an empty relaxation prunes soundly. Complete
//! assignments are confirmed with `recognize_cube`.
//!
//! For `m ≥ 2` the search also keeps, in floating point, the `d` values for
//! which every placed pair of points is within `2εd` of its ideal offset in
//! Euclidean distance. The per-axis regions are the `ℓ∞` form of the same
//! pairwise condition and are much weaker once ε is large.
//!
//! The axis regions only ever need the admissible `d` interval. When ε and
//! the coordinates are small it is tracked with `i128` fractions; otherwise
//! the arbitrary-precision [`FeasibleRegion2D`] is used. Both are exact.

use std::cmp::Ordering as CmpOrdering;
use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::geometry::cube::{checked_pow, index_vector, recognize_cube, CubeVerdict, IndexedGrid, WitnessMD, DEFAULT_TOL};
use crate::geometry::region::FeasibleRegion2D;
use crate::rational::{Epsilon, ExactRational};

/// Closed region of one axis, reduced to its `d` interval.
trait AxisRegion: Clone + Send + Sync {
    type D: Ord + Clone;
    fn with_point(&self, index: i64, x: i64) -> Self;
    /// `None` when empty; an upper end of `None` is +∞.
    fn interval(&self) -> Option<(Self::D, Option<Self::D>)>;
}

impl AxisRegion for FeasibleRegion2D {
    type D = ExactRational;

    fn with_point(&self, index: i64, x: i64) -> Self {
        FeasibleRegion2D::with_point(self, index, x)
    }

    fn interval(&self) -> Option<(ExactRational, Option<ExactRational>)> {
        self.d_interval()
    }
}

/// `num / den` with `den > 0`.
#[derive(Clone, Copy, Debug)]
struct Frac {
    num: i128,
    den: i128,
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == CmpOrdering::Equal
    }
}

impl Eq for Frac {}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<CmpOrdering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> CmpOrdering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// Same constraints as [`FeasibleRegion2D`], for `ε = p/q` with
/// `p, q, |x| < 2^31` and index differences below `2^16`, so every cross
/// product stays far inside `i128`.
#[derive(Clone, Debug)]
struct SmallRegion {
    p: i128,
    q: i128,
    points: Vec<(i64, i64)>,
    lo: Frac,
    hi: Option<Frac>,
    empty: bool,
}

impl SmallRegion {
    const LIMIT: i64 = 1 << 31;

    fn new(eps: &Epsilon) -> Option<Self> {
        let p = eps.value().numer().to_i64()?;
        let q = eps.value().denom().to_i64()?;
        (q < Self::LIMIT).then_some(Self {
            p: p as i128,
            q: q as i128,
            points: Vec::new(),
            lo: Frac { num: 0, den: 1 },
            hi: None,
            empty: false,
        })
    }

    /// Imposes `(di + 2ε)·d ≥ delta`.
    fn constrain(&mut self, di: i64, delta: i64) {
        let coef = self.q * di as i128 + 2 * self.p;
        let num = self.q * delta as i128;
        match coef.cmp(&0) {
            CmpOrdering::Greater => self.lo = self.lo.max(Frac { num, den: coef }),
            CmpOrdering::Less => {
                let b = Frac { num: -num, den: -coef };
                self.hi = Some(self.hi.map_or(b, |h| h.min(b)));
            }
            CmpOrdering::Equal => self.empty |= delta > 0,
        }
        if self.hi.is_some_and(|h| h < self.lo) {
            self.empty = true;
        }
    }
}

impl AxisRegion for SmallRegion {
    type D = Frac;

    fn with_point(&self, index: i64, x: i64) -> Self {
        let mut next = self.clone();
        if !next.empty {
            for &(j, xj) in &self.points {
                next.constrain(index - j, x - xj);
                next.constrain(j - index, xj - x);
            }
        }
        next.points.push((index, x));
        next
    }

    fn interval(&self) -> Option<(Frac, Option<Frac>)> {
        (!self.empty).then_some((self.lo, self.hi))
    }
}

struct CubeSearch<'a> {
    points: &'a [Vec<i64>],
    m: usize,
    k: usize,
    eps: &'a Epsilon,
    /// `index_vector` for every slot, in lexicographic order.
    slots: &'a [Vec<usize>],
    nodes: u64,
    /// Branch index of this search and the smallest branch that has found a
    /// cube so far; a later branch can stop once an earlier one succeeds.
    branch: usize,
    best: &'a AtomicUsize,
}

fn common_interval<R: AxisRegion>(regions: &[R]) -> Option<(R::D, Option<R::D>)> {
    let (mut lo, mut hi) = regions[0].interval()?;
    for r in &regions[1..] {
        let (l, h) = r.interval()?;
        lo = lo.max(l);
        hi = match (hi, h) {
            (None, h) | (h, None) => h,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        if hi.as_ref().is_some_and(|h| *h < lo) {
            return None;
        }
    }
    Some((lo, hi))
}

/// Relative widening of the floating-point pairwise intervals, so rounding
/// never removes a `d` at which the exact condition holds.
const PAIR_SLACK: f64 = 1e-9;

impl CubeSearch<'_> {
    /// Intersects `span` with the `d` values where `|A - dB| ≤ 2εd`, for
    /// `A = x - x_u`, `B = v - u`, over every placed point `u`.
    fn pair_span(&self, chosen: &[usize], v: &[usize], x: &[i64], mut span: (f64, f64)) -> Option<(f64, f64)> {
        let four_eps2 = 4.0 * self.eps.to_f64().powi(2);
        for (slot, &i) in chosen.iter().enumerate() {
            let u = &self.slots[slot];
            let xu = &self.points[i];
            let (mut aa, mut ab, mut bb) = (0.0, 0.0, 0.0);
            for j in 0..self.m {
                let a = (x[j] - xu[j]) as f64;
                let b = v[j] as f64 - u[j] as f64;
                aa += a * a;
                ab += a * b;
                bb += b * b;
            }
            // (|B|² - 4ε²)d² - 2(A·B)d + |A|² ≤ 0
            let quad = bb - four_eps2;
            let (lo, hi) = if quad > PAIR_SLACK {
                let disc = ab * ab - quad * aa;
                if disc < -PAIR_SLACK * ab * ab - PAIR_SLACK {
                    return None;
                }
                let root = disc.max(0.0).sqrt();
                ((ab - root) / quad, (ab + root) / quad)
            } else if quad.abs() <= PAIR_SLACK && ab > 0.0 {
                (aa / (2.0 * ab), f64::INFINITY)
            } else {
                continue;
            };
            span.0 = span.0.max(lo - PAIR_SLACK * (lo.abs() + 1.0));
            span.1 = span.1.min(hi + PAIR_SLACK * (hi.abs() + 1.0));
            if span.0 > span.1 {
                return None;
            }
        }
        Some(span)
    }

    fn dfs<R: AxisRegion>(
        &mut self,
        regions: &[R],
        span: (f64, f64),
        chosen: &mut Vec<usize>,
        used: &mut HashSet<usize>,
    ) -> Option<(IndexedGrid, WitnessMD)> {
        self.nodes += 1;
        if self.best.load(Ordering::Relaxed) < self.branch {
            return None;
        }
        let slot = chosen.len();
        if slot == self.slots.len() {
            let pts = chosen.iter().map(|&i| self.points[i].clone()).collect();
            let grid = IndexedGrid::new(self.m, self.k, pts).ok()?;
            return match recognize_cube(&grid, self.eps, DEFAULT_TOL).ok()? {
                CubeVerdict::Feasible { witness } => Some((grid, witness)),
                _ => None,
            };
        }
        let v = &self.slots[slot];
        for idx in 0..self.points.len() {
            if used.contains(&idx) {
                continue;
            }
            let p = &self.points[idx];
            let next: Vec<R> = (0..self.m).map(|j| regions[j].with_point(v[j] as i64, p[j])).collect();
            if common_interval(&next).is_none() {
                continue;
            }
            let next_span = if self.m >= 2 { self.pair_span(chosen, v, p, span) } else { Some(span) };
            let Some(next_span) = next_span else { continue };
            chosen.push(idx);
            used.insert(idx);
            let found = self.dfs(&next, next_span, chosen, used);
            chosen.pop();
            used.remove(&idx);
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// First cube of `points` in lexicographic order of the assigned point
/// sequence, or `None` if the set is `C_ε(m,k)`-free. Assignments whose
/// verdict is `Boundary` are not counted as cubes.
pub fn verify_cube_free(points: &[Vec<i64>], m: usize, k: usize, eps: &Epsilon) -> Option<(IndexedGrid, WitnessMD)> {
    verify_cube_free_counted(points, m, k, eps).0
}

/// As [`verify_cube_free`], also returning the number of search nodes. The
/// count depends on scheduling, since later branches stop early once an
/// earlier one has found a cube.
pub fn verify_cube_free_counted(
    points: &[Vec<i64>],
    m: usize,
    k: usize,
    eps: &Epsilon,
) -> (Option<(IndexedGrid, WitnessMD)>, u64) {
    let Ok(size) = checked_pow(k, m) else { return (None, 0) };
    if m == 0 || k < 2 || points.len() < size || points.iter().any(|p| p.len() != m) {
        return (None, 0);
    }
    let small = k < 1 << 16 && points.iter().flatten().all(|x| x.unsigned_abs() < SmallRegion::LIMIT as u64);
    match SmallRegion::new(eps).filter(|_| small) {
        Some(empty) => search(points, m, k, eps, empty),
        None => search(points, m, k, eps, FeasibleRegion2D::new(eps.clone())),
    }
}

fn search<R: AxisRegion>(
    points: &[Vec<i64>],
    m: usize,
    k: usize,
    eps: &Epsilon,
    empty: R,
) -> (Option<(IndexedGrid, WitnessMD)>, u64) {
    let mut sorted = points.to_vec();
    sorted.sort();
    sorted.dedup();
    let slots: Vec<Vec<usize>> = (0..k.pow(m as u32)).map(|i| index_vector(i, m, k)).collect();
    let best = AtomicUsize::new(usize::MAX);

    // Split on the point assigned to v = 0; the first branch in order wins.
    let results: Vec<(Option<(IndexedGrid, WitnessMD)>, u64)> = (0..sorted.len())
        .into_par_iter()
        .map(|first| {
            let mut search =
                CubeSearch { points: &sorted, m, k, eps, slots: &slots, nodes: 0, branch: first, best: &best };
            let regions: Vec<R> = (0..m).map(|j| empty.with_point(0, sorted[first][j])).collect();
            let mut chosen = vec![first];
            let mut used = HashSet::from([first]);
            let found = search.dfs(&regions, (0.0, f64::INFINITY), &mut chosen, &mut used);
            if found.is_some() {
                best.fetch_min(first, Ordering::Relaxed);
            }
            (found, search.nodes)
        })
        .collect();
    let nodes = results.iter().map(|r| r.1).sum();
    (results.into_iter().find_map(|r| r.0), nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::cube_blowup::{build_cube_blowup, product_free_set};

    fn eps(p: i64, q: i64) -> Epsilon {
        Epsilon::from_ratio(p, q).unwrap()
    }

    #[test]
    fn lattice_is_found() {
        for (m, k) in [(1, 3), (2, 2), (2, 3)] {
            let grid = IndexedGrid::standard(m, k).unwrap();
            let (found, w) = verify_cube_free(grid.points(), m, k, &eps(1, 4)).unwrap();
            assert_eq!(found, grid);
            assert!(w.certifies(&found, &eps(1, 4), 0.0));
        }
    }

    #[test]
    fn too_few_points() {
        assert!(verify_cube_free(&[vec![0, 0], vec![1, 1]], 2, 2, &eps(1, 4)).is_none());
    }

    #[test]
    fn one_dimension_matches_ap_search() {
        use crate::colorings::verify::first_eps_ap;
        let set = vec![1, 2, 4, 7, 8, 13, 14];
        for e in [eps(1, 10), eps(1, 4), eps(1, 3)] {
            for k in 3..=4 {
                let pts: Vec<Vec<i64>> = set.iter().map(|&x| vec![x]).collect();
                let cube = verify_cube_free(&pts, 1, k, &e).map(|(g, _)| g.points().iter().map(|p| p[0]).collect::<Vec<_>>());
                assert_eq!(cube, first_eps_ap(&set, k, &e).map(|(s, _)| s), "k={k} eps={e}");
            }
        }
    }

    #[test]
    fn digit_product_is_cube_free() {
        let a: Vec<i64> = [2, 3, 7, 8, 17, 18, 22, 23].iter().map(|x| x + 1).collect();
        let s = product_free_set(&a, 2, 25).unwrap();
        assert!(verify_cube_free(&s, 2, 3, &eps(1, 125)).is_none());
    }

    #[test]
    fn small_and_exact_regions_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..300 {
            let e = eps(rng.gen_range(1..5), rng.gen_range(10..40));
            let mut small = SmallRegion::new(&e).unwrap();
            let mut exact = FeasibleRegion2D::new(e.clone());
            for _ in 0..rng.gen_range(1..6) {
                let (i, x) = (rng.gen_range(0..5), rng.gen_range(-20..20));
                small = AxisRegion::with_point(&small, i, x);
                exact = AxisRegion::with_point(&exact, i, x);
                let to_q = |f: Frac| ExactRational::new(f.num as i64, f.den as i64).unwrap();
                let s = small.interval().map(|(l, h)| (to_q(l), h.map(to_q)));
                assert_eq!(s, exact.interval(), "trial {trial}");
            }
        }
    }

    #[test]
    fn large_coordinates_use_the_exact_region() {
        let big = 1i64 << 40;
        let pts: Vec<Vec<i64>> = (0..3).map(|i| vec![big + i * big / 4]).collect();
        let (grid, _) = verify_cube_free(&pts, 1, 3, &eps(1, 4)).unwrap();
        assert_eq!(grid.points(), pts.as_slice());
    }

    #[test]
    fn transversal_is_found() {
        use rand::SeedableRng;
        let b = build_cube_blowup(2, 3, &eps(1, 2), &ExactRational::new(4, 5).unwrap(), 1000).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let tr = b.random_transversal(&mut rng).unwrap();
        let (grid, _) = verify_cube_free(tr.points(), 2, 3, &eps(1, 2)).unwrap();
        assert_eq!(grid, tr);
    }
}
