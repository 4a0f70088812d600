//! Closed feasibility region for `(a, d)` under the relaxed constraints
//! `a + (i-ε)d ≤ x_i ≤ a + (i+ε)d`, `d ≥ 0`.
//!
//! Eliminating `a` pairwise leaves an interval of admissible `d`; the region
//! is empty exactly when that interval is. The interval also bounds where the
//! point of any further index can lie, which is what the enumerators use to
//! restrict their candidate lists.

use crate::rational::{Epsilon, ExactRational};

type Q = ExactRational;

/// Upper end of the `d` interval; `None` is +∞.
pub type UpperBound = Option<Q>;

#[derive(Clone, Debug)]
pub struct FeasibleRegion2D {
    eps: Epsilon,
    /// `(index, x)` in insertion order.
    points: Vec<(i64, i64)>,
    d_lo: Q,
    d_hi: UpperBound,
    empty: bool,
}

/// A line `value(d) = intercept + slope·d`.
#[derive(Clone, Debug)]
struct Line {
    intercept: Q,
    slope: Q,
}

impl Line {
    fn at(&self, d: &Q) -> Q {
        &self.intercept + &(&self.slope * d)
    }
}

impl FeasibleRegion2D {
    /// The unconstrained half-plane `d ≥ 0`.
    pub fn new(eps: Epsilon) -> Self {
        Self { eps, points: Vec::new(), d_lo: Q::zero(), d_hi: None, empty: false }
    }

    pub fn eps(&self) -> &Epsilon {
        &self.eps
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    /// Adds both half-planes for `x` at `index`.
    pub fn add_point(&mut self, index: i64, x: i64) {
        let two_eps = self.eps.value() * &Q::from(2);
        for i in 0..self.points.len() {
            let (j, xj) = self.points[i];
            // (x_a - x_b) ≤ (a - b + 2ε)·d for both orientations.
            self.constrain(&(&Q::from(index - j) + &two_eps), x - xj);
            self.constrain(&(&Q::from(j - index) + &two_eps), xj - x);
        }
        self.points.push((index, x));
    }

    /// Returns a copy with one more point.
    pub fn with_point(&self, index: i64, x: i64) -> Self {
        let mut next = self.clone();
        next.add_point(index, x);
        next
    }

    /// Imposes `coef·d ≥ delta`.
    fn constrain(&mut self, coef: &Q, delta: i64) {
        if self.empty {
            return;
        }
        let delta = Q::from(delta);
        if coef.is_positive() {
            let bound = &delta / coef;
            if bound > self.d_lo {
                self.d_lo = bound;
            }
        } else if coef.is_negative() {
            let bound = &delta / coef;
            if self.d_hi.as_ref().is_none_or(|h| bound < *h) {
                self.d_hi = Some(bound);
            }
        } else if delta.is_positive() {
            self.empty = true;
        }
        if let Some(h) = &self.d_hi {
            if *h < self.d_lo {
                self.empty = true;
            }
        }
    }

    /// True only when even the closed relaxation has no point.
    pub fn closed_empty(&self) -> bool {
        self.empty
    }

    /// The admissible closed interval of `d`, or `None` if empty.
    pub fn d_interval(&self) -> Option<(Q, UpperBound)> {
        (!self.empty).then(|| (self.d_lo.clone(), self.d_hi.clone()))
    }

    /// Membership in the closed region.
    pub fn contains(&self, a: &Q, d: &Q) -> bool {
        if d.is_negative() {
            return false;
        }
        self.points.iter().all(|&(i, x)| {
            let x = Q::from(x);
            let i = Q::from(i);
            let lo = a + &(&(&i - self.eps.value()) * d);
            let hi = a + &(&(&i + self.eps.value()) * d);
            lo <= x && x <= hi
        })
    }

    /// Lines `x_j + (index - j + 2ε)d` whose minimum bounds a new point from above.
    fn upper_lines(&self, index: i64) -> Vec<Line> {
        let two_eps = self.eps.value() * &Q::from(2);
        self.points
            .iter()
            .map(|&(j, xj)| Line { intercept: Q::from(xj), slope: &Q::from(index - j) + &two_eps })
            .collect()
    }

    fn lower_lines(&self, index: i64) -> Vec<Line> {
        let two_eps = self.eps.value() * &Q::from(2);
        self.points
            .iter()
            .map(|&(j, xj)| Line { intercept: Q::from(xj), slope: &Q::from(index - j) - &two_eps })
            .collect()
    }

    /// Closed range `[lo, hi]` of positions a point at `index` may take while
    /// the region stays nonempty, with `d` further restricted to `[d_lo, d_hi]`
    /// (pass `None` to use the region's own interval). `None` endpoints are
    /// infinite. Returns `None` when no position is possible.
    pub fn position_range(
        &self,
        index: i64,
        within: Option<(&Q, Option<&Q>)>,
    ) -> Option<(Option<Q>, Option<Q>)> {
        let (own_lo, own_hi) = self.d_interval()?;
        let (lo_d, hi_d) = match within {
            None => (own_lo, own_hi),
            Some((l, h)) => {
                let lo = own_lo.max(l.clone());
                let hi = match (own_hi, h) {
                    (None, None) => None,
                    (Some(a), None) => Some(a),
                    (None, Some(b)) => Some(b.clone()),
                    (Some(a), Some(b)) => Some(a.min(b.clone())),
                };
                if hi.as_ref().is_some_and(|h| *h < lo) {
                    return None;
                }
                (lo, hi)
            }
        };
        if self.points.is_empty() {
            return Some((None, None));
        }
        let hi = extremum(&self.upper_lines(index), &lo_d, hi_d.as_ref(), true);
        let lo = extremum(&self.lower_lines(index), &lo_d, hi_d.as_ref(), false);
        Some((lo, hi))
    }

    /// Corners of the closed region in `(a, d)` coordinates, lower `d` first.
    /// For an unbounded region only the finite corners are listed.
    pub fn vertices(&self) -> Vec<(Q, Q)> {
        let Some((dl, dh)) = self.d_interval() else {
            return Vec::new();
        };
        if self.points.is_empty() {
            return vec![];
        }
        // L(d) = max_j(x_j - (j+ε)d), U(d) = min_j(x_j - (j-ε)d).
        let left: Vec<Line> = self
            .points
            .iter()
            .map(|&(j, x)| Line { intercept: Q::from(x), slope: -(&Q::from(j) + self.eps.value()) })
            .collect();
        let right: Vec<Line> = self
            .points
            .iter()
            .map(|&(j, x)| Line { intercept: Q::from(x), slope: -(&Q::from(j) - self.eps.value()) })
            .collect();
        let mut ds = vec![dl.clone()];
        ds.extend(dh.clone());
        for lines in [&left, &right] {
            ds.extend(crossings(lines).into_iter().filter(|d| {
                *d >= dl && dh.as_ref().is_none_or(|h| d <= h)
            }));
        }
        ds.sort();
        ds.dedup();
        let eval_max = |d: &Q| left.iter().map(|l| l.at(d)).max().unwrap();
        let eval_min = |d: &Q| right.iter().map(|l| l.at(d)).min().unwrap();
        let lchain: Vec<(Q, Q)> = ds.iter().map(|d| (eval_max(d), d.clone())).collect();
        let rchain: Vec<(Q, Q)> = ds.iter().rev().map(|d| (eval_min(d), d.clone())).collect();
        let mut out = strip_collinear(lchain);
        out.extend(strip_collinear(rchain));
        out.dedup();
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        out
    }
}

/// Pairwise crossing abscissae of a family of lines.
fn crossings(lines: &[Line]) -> Vec<Q> {
    let mut out = Vec::new();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            let ds = &a.slope - &b.slope;
            if !ds.is_zero() {
                out.push(&(&b.intercept - &a.intercept) / &ds);
            }
        }
    }
    out
}

/// Max of the lower envelope (`maximize`) or min of the upper envelope of
/// `lines` over `d ∈ [lo, hi]`. `None` means unbounded.
fn extremum(lines: &[Line], lo: &Q, hi: Option<&Q>, maximize: bool) -> Option<Q> {
    let envelope = |d: &Q| {
        let vals = lines.iter().map(|l| l.at(d));
        if maximize {
            vals.min().unwrap()
        } else {
            vals.max().unwrap()
        }
    };
    if hi.is_none() {
        // Envelope slope at +∞ is the extreme slope.
        let tail = if maximize {
            lines.iter().map(|l| &l.slope).min().unwrap()
        } else {
            lines.iter().map(|l| &l.slope).max().unwrap()
        };
        if (maximize && tail.is_positive()) || (!maximize && tail.is_negative()) {
            return None;
        }
    }
    let mut ds = vec![lo.clone()];
    ds.extend(hi.cloned());
    ds.extend(
        crossings(lines)
            .into_iter()
            .filter(|d| d >= lo && hi.is_none_or(|h| d <= h)),
    );
    let vals = ds.iter().map(envelope);
    if maximize {
        vals.max()
    } else {
        vals.min()
    }
}

fn strip_collinear(chain: Vec<(Q, Q)>) -> Vec<(Q, Q)> {
    let mut out: Vec<(Q, Q)> = Vec::with_capacity(chain.len());
    for p in chain {
        if out.last() == Some(&p) {
            continue;
        }
        if out.len() >= 2 {
            let (a, b) = (&out[out.len() - 2], &out[out.len() - 1]);
            let cross = &(&(&b.0 - &a.0) * &(&p.1 - &a.1)) - &(&(&b.1 - &a.1) * &(&p.0 - &a.0));
            if cross.is_zero() {
                out.pop();
            }
        }
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ap::{recognize_ap, IndexedPoints1D};

    fn eps(p: i64, q: i64) -> Epsilon {
        Epsilon::from_ratio(p, q).unwrap()
    }

    fn region(xs: &[i64], e: &Epsilon) -> FeasibleRegion2D {
        let mut r = FeasibleRegion2D::new(e.clone());
        for (i, &x) in xs.iter().enumerate() {
            r.add_point(i as i64, x);
        }
        r
    }

    #[test]
    fn empty_constraint_set_is_half_plane() {
        let r = FeasibleRegion2D::new(eps(1, 3));
        assert!(!r.closed_empty());
        assert_eq!(r.d_interval(), Some((Q::zero(), None)));
        assert!(r.contains(&Q::from(-7), &Q::from(100)));
    }

    #[test]
    fn contains_worked_example_point() {
        let r = region(&[1, 3, 6], &eps(1, 3));
        assert!(!r.closed_empty());
        let a = Q::new(4, 5).unwrap();
        let d = Q::new(12, 5).unwrap();
        assert!(r.contains(&a, &d));
    }

    #[test]
    fn empties_after_third_point() {
        let e = eps(1, 10);
        let mut r = FeasibleRegion2D::new(e.clone());
        r.add_point(0, 1);
        r.add_point(1, 2);
        assert!(!r.closed_empty());
        r.add_point(2, 10);
        assert!(r.closed_empty());
        assert!(recognize_ap(&IndexedPoints1D::new(vec![1, 2, 10]).unwrap(), &e).is_none());
    }

    #[test]
    fn position_range_for_next_index() {
        // x0=0, x1=10 at ε=1/10: d ∈ [10/1.2, 10/0.8]; third point within
        // [10 + 0.8·d_lo, 10 + 1.2·d_hi] = [16.66.., 25].
        let r = region(&[0, 10], &eps(1, 10));
        let (lo, hi) = r.position_range(2, None).unwrap();
        assert_eq!(hi.unwrap(), Q::from(25));
        assert_eq!(lo.unwrap(), Q::new(50, 3).unwrap());
    }

    #[test]
    fn position_range_unbounded_with_one_point() {
        let r = region(&[4], &eps(1, 3));
        let (lo, hi) = r.position_range(1, None).unwrap();
        assert!(hi.is_none());
        assert_eq!(lo.unwrap(), Q::from(4));
    }

    #[test]
    fn vertices_of_bounded_region() {
        let r = region(&[0, 10], &eps(1, 10));
        let v = r.vertices();
        assert!(!v.is_empty());
        for (a, d) in &v {
            assert!(r.contains(a, d), "({a}, {d}) not in region");
        }
    }
}
