//! Exact recognition of ε-approximate arithmetic progressions on the line.
//!
//! For an indexed tuple `x_0 < … < x_{k-1}` and a candidate difference `d`,
//! the best offset is the midrange of `{x_i - i·d}` and the remaining slack is
//!
//! ```text
//! margin(d) = ε·d - (max_i(x_i - i·d) - min_i(x_i - i·d)) / 2
//! ```
//!
//! which is concave and piecewise linear in `d`. Its breakpoints are the
//! crossings `d = (x_j - x_i)/(j - i)`, so the strict system is feasible iff
//! the largest margin over those O(k²) values is positive. All arithmetic is
//! carried out on integers scaled by the breakpoint denominator.

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{Epsilon, ExactRational};

/// Strictly increasing integer points with implicit indices `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedPoints1D(Vec<i64>);

impl IndexedPoints1D {
    pub fn new(points: Vec<i64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 points, got {}",
                points.len()
            )));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("points must be strictly increasing".into()));
        }
        Ok(Self(points))
    }

    /// Set-level constructor: sorts the points and rejects duplicates.
    pub fn from_set(mut points: Vec<i64>) -> Result<Self> {
        points.sort_unstable();
        Self::new(points)
    }

    pub fn points(&self) -> &[i64] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }
}

/// Offset, common difference and slack certifying `|x_i - (a + i·d)| < ε·d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness1D {
    pub a: ExactRational,
    pub d: ExactRational,
    pub margin: ExactRational,
}

impl Witness1D {
    /// Substitutes the witness into the defining strict inequalities.
    pub fn certifies(&self, points: &[i64], eps: &Epsilon) -> bool {
        if !self.d.is_positive() {
            return false;
        }
        let bound = eps.value() * &self.d;
        points.iter().enumerate().all(|(i, &x)| {
            let center = &self.a + &(&ExactRational::from(i as i64) * &self.d);
            (&ExactRational::from(x) - &center).abs() < bound
        })
    }
}

/// A breakpoint `d = num/den` with the scaled envelope values at it.
struct Candidate {
    num: BigInt,
    den: i64,
    hi: BigInt,
    lo: BigInt,
    /// `2·p·num - q·(hi - lo)`; the margin is `score / (2·q·den)`.
    score: BigInt,
}

impl Candidate {
    fn evaluate(points: &[i64], num: i64, den: i64, p: &BigInt, q: &BigInt) -> Self {
        let mut hi = i128::MIN;
        let mut lo = i128::MAX;
        for (l, &x) in points.iter().enumerate() {
            let v = den as i128 * x as i128 - l as i128 * num as i128;
            hi = hi.max(v);
            lo = lo.min(v);
        }
        let num = BigInt::from(num);
        let (hi, lo) = (BigInt::from(hi), BigInt::from(lo));
        let score = BigInt::from(2) * p * &num - q * (&hi - &lo);
        Self { num, den, hi, lo, score }
    }

    /// Orders by margin, then prefers the smaller difference.
    fn better_than(&self, other: &Candidate) -> bool {
        match (&self.score * other.den).cmp(&(&other.score * self.den)) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => &self.num * other.den < &other.num * self.den,
        }
    }

    fn into_witness(self, q: &BigInt) -> Witness1D {
        let den = BigInt::from(self.den);
        Witness1D {
            a: ExactRational::new(&self.hi + &self.lo, BigInt::from(2) * &den).unwrap(),
            d: ExactRational::new(self.num, den.clone()).unwrap(),
            margin: ExactRational::new(self.score, BigInt::from(2) * q * den).unwrap(),
        }
    }
}

/// Decides whether the indexed tuple is an `AP_k(ε)`.
///
/// Returns the margin-maximizing witness (smallest `d` among ties) when the
/// maximum margin is positive. If the margin is unbounded (only possible
/// when `ε > (k-1)/2`) the witness at the largest breakpoint is returned.
pub fn recognize_ap(points: &IndexedPoints1D, eps: &Epsilon) -> Option<Witness1D> {
    let xs = points.points();
    let k = xs.len();
    let p = eps.value().numer();
    let q = eps.value().denom();

    let mut best: Option<Candidate> = None;
    let mut largest: Option<(i64, i64)> = None;
    for i in 0..k {
        for j in i + 1..k {
            let (num, den) = (xs[j] - xs[i], (j - i) as i64);
            if largest.is_none_or(|(n, d)| num as i128 * d as i128 > n as i128 * den as i128) {
                largest = Some((num, den));
            }
            let c = Candidate::evaluate(xs, num, den, p, q);
            if best.as_ref().is_none_or(|b| c.better_than(b)) {
                best = Some(c);
            }
        }
    }

    // Slope of the margin beyond the last breakpoint is ε - (k-1)/2.
    let unbounded = BigInt::from(2) * p > q * BigInt::from(k as i64 - 1);
    if unbounded {
        let (num, den) = largest.expect("k >= 2");
        return Some(Candidate::evaluate(xs, num, den, p, q).into_witness(q));
    }
    best.filter(|c| c.score > BigInt::from(0)).map(|c| c.into_witness(q))
}

/// Set-level recognition: sorts the points (the indexing is forced for
/// `ε < 1/2`) and refuses `ε ≥ 1/2`.
pub fn recognize_ap_set(points: &[i64], eps: &Epsilon) -> Result<Option<Witness1D>> {
    eps.require_set_level()?;
    let pts = IndexedPoints1D::from_set(points.to_vec())?;
    Ok(recognize_ap(&pts, eps))
}

/// Necessary condition for `AP_k(ε)` when `ε < 1/10`: every ratio of two
/// consecutive gaps lies strictly inside `(1 - 5ε, 1 + 5ε)`.
///
/// Vacuously true for fewer than three points.
pub fn gap_ratio_filter(points: &IndexedPoints1D, eps: &Epsilon) -> bool {
    let xs = points.points();
    if xs.len() < 3 {
        return true;
    }
    let (mut gmin, mut gmax) = (i64::MAX, i64::MIN);
    for w in xs.windows(2) {
        let g = w[1] - w[0];
        gmin = gmin.min(g);
        gmax = gmax.max(g);
    }
    // Worst pair is gmax/gmin; |gmax/gmin - 1| < 5p/q.
    let p = eps.value().numer();
    let q = eps.value().denom();
    q * BigInt::from(gmax - gmin) < BigInt::from(5) * p * BigInt::from(gmin)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(p: i64, q: i64) -> Epsilon {
        Epsilon::from_ratio(p, q).unwrap()
    }

    fn pts(v: &[i64]) -> IndexedPoints1D {
        IndexedPoints1D::new(v.to_vec()).unwrap()
    }

    fn r(p: i64, q: i64) -> ExactRational {
        ExactRational::new(p, q).unwrap()
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(IndexedPoints1D::new(vec![3]).is_err());
        assert!(IndexedPoints1D::new(vec![3, 3, 4]).is_err());
        assert!(IndexedPoints1D::new(vec![4, 3]).is_err());
        assert!(IndexedPoints1D::from_set(vec![4, 1, 2]).is_ok());
    }

    #[test]
    fn worked_example_1_3_6() {
        let e = eps(1, 3);
        let w = recognize_ap(&pts(&[1, 3, 6]), &e).expect("accepted");
        assert!(w.margin.is_positive());
        assert!(w.certifies(&[1, 3, 6], &e));
        let given = Witness1D { a: r(4, 5), d: r(12, 5), margin: ExactRational::zero() };
        assert!(given.certifies(&[1, 3, 6], &e));
    }

    #[test]
    fn exact_progression() {
        let w = recognize_ap(&pts(&[5, 7, 9]), &eps(1, 1000)).unwrap();
        assert_eq!(w.a, ExactRational::from(5));
        assert_eq!(w.d, ExactRational::from(2));
        assert_eq!(w.margin, r(2, 1000));
    }

    #[test]
    fn rejected_at_small_eps() {
        assert!(recognize_ap(&pts(&[1, 3, 6]), &eps(1, 100)).is_none());
    }

    #[test]
    fn candidate_for_1_2_4() {
        let e = eps(1, 3);
        let cand = Witness1D { a: r(3, 4), d: r(3, 2), margin: ExactRational::zero() };
        assert!(cand.certifies(&[1, 2, 4], &e));
        assert!(recognize_ap(&pts(&[1, 2, 4]), &e).is_some());
    }

    #[test]
    fn margin_formula_holds_at_witness() {
        let xs = [2, 7, 11, 17];
        let e = eps(1, 4);
        let w = recognize_ap(&pts(&xs), &e).unwrap();
        let shifted: Vec<ExactRational> = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| ExactRational::from(x) - ExactRational::from(i as i64) * w.d.clone())
            .collect();
        let hi = shifted.iter().max().unwrap().clone();
        let lo = shifted.iter().min().unwrap().clone();
        let expect = e.value() * &w.d - (hi.clone() - lo.clone()) / ExactRational::from(2);
        assert_eq!(w.margin, expect);
        assert_eq!(w.a, (hi + lo) / ExactRational::from(2));
    }

    #[test]
    fn pair_always_accepted() {
        let w = recognize_ap(&pts(&[3, 10]), &eps(1, 50)).unwrap();
        assert_eq!(w.d, ExactRational::from(7));
        assert_eq!(w.a, ExactRational::from(3));
    }

    #[test]
    fn large_eps_is_unbounded_but_certified() {
        let e = eps(3, 2);
        let w = recognize_ap(&pts(&[0, 1, 100]), &e).unwrap();
        assert!(w.certifies(&[0, 1, 100], &e));
    }

    #[test]
    fn set_level_domain() {
        assert!(recognize_ap_set(&[6, 1, 3], &eps(1, 3)).unwrap().is_some());
        assert!(recognize_ap_set(&[1, 3, 6], &eps(1, 2)).is_err());
    }

    #[test]
    fn gap_filter_examples() {
        assert!(gap_ratio_filter(&pts(&[2, 5, 8, 11]), &eps(1, 1000)));
        assert!(gap_ratio_filter(&pts(&[1, 3, 6]), &eps(1, 3)));
        assert!(!gap_ratio_filter(&pts(&[1, 2, 10]), &eps(1, 10)));
        assert!(gap_ratio_filter(&pts(&[1, 200]), &eps(1, 1000)));
    }
}
