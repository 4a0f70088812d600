//! `(r-1,1;D)`-alternate labelings of `[rtD]` and the simple two-coloring
//! built from one.

use serde::Serialize;

use crate::colorings::coloring::Coloring;
use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Periodic ±1 labeling of `{1..rtD}`: blocks `[iD+1, (i+1)D]`, `r-1` blocks
/// labeled `+1` then one labeled `-1`, the pattern shifted by `offset` blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternateLabeling {
    pub r: usize,
    pub block: usize,
    pub t: usize,
    pub offset: usize,
    labels: Vec<i8>,
}

impl AlternateLabeling {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Label of `x ∈ 1..=rtD`.
    pub fn label(&self, x: usize) -> i8 {
        self.labels[x - 1]
    }

    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    /// Colors `+1 → 1`, `-1 → 2`.
    pub fn to_coloring(&self) -> Result<Coloring> {
        Coloring::new(2, self.labels.iter().map(|&l| if l > 0 { 1 } else { 2 }).collect())
    }
}

fn label_at(x: usize, r: usize, block: usize, offset: usize) -> i8 {
    let b = (x - 1) / block;
    if (b + r - offset) % r < r - 1 {
        1
    } else {
        -1
    }
}

pub fn build_alternate_labeling(r: usize, block: usize, t: usize, offset: usize) -> Result<AlternateLabeling> {
    if r < 2 || block < 1 || t < 1 || offset >= r {
        return Err(Error::InvalidParameter(format!(
            "need r >= 2, D >= 1, t >= 1, 0 <= offset < r; got r={r}, D={block}, t={t}, offset={offset}"
        )));
    }
    let n = r
        .checked_mul(t)
        .and_then(|v| v.checked_mul(block))
        .ok_or_else(|| Error::Overflow("r·t·D".into()))?;
    let labels = (1..=n).map(|x| label_at(x, r, block, offset)).collect();
    Ok(AlternateLabeling { r, block, t, offset, labels })
}

/// True iff `d` lies outside every open interval `((i/q - δ)rD, (i/q + δ)rD)`,
/// `i ∈ ℤ`, `1 ≤ q ≤ r`.
pub fn excluded_difference_check(d: &ExactRational, r: usize, block: usize, delta: &ExactRational) -> bool {
    let period = ExactRational::from((r * block) as i64);
    let radius = delta * &period;
    (1..=r as i64).all(|q| {
        let spacing = &period / &ExactRational::from(q);
        let base = (d / &spacing).floor();
        [base.clone(), base + 1].into_iter().all(|i| {
            let center = &ExactRational::from_integer(i) * &spacing;
            (d - &center).abs() >= radius
        })
    })
}

/// Two-coloring of `[2(k-1)·⌊(k-2)/3⌋]` by the `(1,1;k-1)`-alternate
/// labeling. Needs `k ≥ 5` for a nonempty domain.
pub fn build_simple_r2_coloring(k: usize) -> Result<Coloring> {
    if k < 5 {
        return Err(Error::InvalidParameter(format!(
            "k = {k} gives an empty domain 2(k-1)·floor((k-2)/3) = 0; need k >= 5"
        )));
    }
    build_alternate_labeling(2, k - 1, (k - 2) / 3, 0)?.to_coloring()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> ExactRational {
        ExactRational::new(p, d).unwrap()
    }

    #[test]
    fn r2_d2_t2() {
        let l = build_alternate_labeling(2, 2, 2, 0).unwrap();
        assert_eq!(l.labels(), &[1, 1, -1, -1, 1, 1, -1, -1]);
    }

    #[test]
    fn r3_d1_t1() {
        let l = build_alternate_labeling(3, 1, 1, 0).unwrap();
        assert_eq!(l.labels(), &[1, 1, -1]);
    }

    #[test]
    fn offset_shifts_by_one_block() {
        let l = build_alternate_labeling(2, 2, 2, 1).unwrap();
        assert_eq!(l.labels(), &[-1, -1, 1, 1, -1, -1, 1, 1]);
    }

    #[test]
    fn offsets_give_r_distinct_labelings() {
        let all: Vec<_> = (0..4).map(|o| build_alternate_labeling(4, 3, 2, o).unwrap()).collect();
        for i in 0..4 {
            for j in i + 1..4 {
                assert_ne!(all[i].labels(), all[j].labels());
            }
        }
    }

    #[test]
    fn range_checks() {
        assert!(build_alternate_labeling(1, 2, 2, 0).is_err());
        assert!(build_alternate_labeling(2, 0, 2, 0).is_err());
        assert!(build_alternate_labeling(2, 2, 2, 2).is_err());
    }

    #[test]
    fn excluded_differences() {
        let delta = q(1, 100);
        assert!(!excluded_difference_check(&ExactRational::from(20), 2, 10, &delta));
        assert!(!excluded_difference_check(&ExactRational::from(10), 2, 10, &delta));
        assert!(excluded_difference_check(&ExactRational::from(7), 2, 10, &delta));
        // Interval endpoints are open.
        assert!(excluded_difference_check(&q(102, 10), 2, 10, &delta));
        assert!(!excluded_difference_check(&q(1019, 100), 2, 10, &delta));
    }

    #[test]
    fn simple_r2_examples() {
        let c = build_simple_r2_coloring(5).unwrap();
        assert_eq!(c.as_slice(), &[1, 1, 1, 1, 2, 2, 2, 2]);
        let c = build_simple_r2_coloring(8).unwrap();
        assert_eq!(c.n(), 28);
        for block in c.as_slice().chunks(7) {
            assert!(block.iter().all(|&x| x == block[0]));
        }
        let firsts: Vec<u8> = c.as_slice().chunks(7).map(|b| b[0]).collect();
        assert_eq!(firsts, vec![1, 2, 1, 2]);
        assert!(build_simple_r2_coloring(4).is_err());
    }
}
