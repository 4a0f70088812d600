//! Digit sets avoiding `AP_k(ε)`: base `q = ⌊1/(25ε)⌋` expansions whose
//! leading digit comes from a `k`-AP-free subset of `[0, q-1]` and whose
//! other digits come from a `k`-AP-free subset of the middle band
//! `[⌈2q/5⌉, ⌊3q/5⌋]`.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::density::apfree::{apk_free_set, APkFreeProvider};
use crate::error::{Error, Result};
use crate::rational::{Epsilon, ExactRational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitConstruction {
    pub q: i64,
    pub h: u32,
    pub k: usize,
    /// Alphabet of the leading digit `s_{h-1}`.
    pub head: Vec<i64>,
    /// Alphabet of the digits `s_0 … s_{h-2}`.
    pub tail: Vec<i64>,
    /// `q^h`; the set lies in `[0, q^h - 1]`.
    pub n: i64,
}

impl DigitConstruction {
    pub fn expected_size(&self) -> usize {
        self.head.len() * self.tail.len().pow(self.h - 1)
    }
}

/// `q = ⌊1/(25ε)⌋` for `0 < ε ≤ 1/125`.
pub fn digit_base(eps: &Epsilon) -> Result<i64> {
    if eps.value() > &ExactRational::new(1, 125)? {
        return Err(Error::InvalidParameter(format!("digit construction needs eps <= 1/125, got {eps}")));
    }
    let q = (ExactRational::one() / (eps.value() * &ExactRational::from(25))).floor();
    q.to_i64().ok_or_else(|| Error::Overflow(format!("q = {q}")))
}

pub fn build_behrend_digit_set(
    eps: &Epsilon,
    h: u32,
    k: usize,
    provider: &APkFreeProvider,
) -> Result<(DigitConstruction, Vec<i64>)> {
    if h < 1 {
        return Err(Error::InvalidParameter("h must be at least 1".into()));
    }
    let q = digit_base(eps)?;
    let n = q.checked_pow(h).ok_or_else(|| Error::Overflow(format!("{q}^{h}")))?;
    let head = apk_free_set(0, q - 1, k, provider)?;
    let tail = apk_free_set((2 * q + 4) / 5, 3 * q / 5, k, provider)?;

    let mut elements = head.clone();
    for _ in 1..h {
        elements = elements
            .iter()
            .flat_map(|&prefix| tail.iter().map(move |&digit| prefix * q + digit))
            .collect();
    }
    elements.sort_unstable();
    let construction = DigitConstruction { q, h, k, head, tail, n };
    debug_assert_eq!(elements.len(), construction.expected_size());
    Ok((construction, elements))
}

/// Base-`q` digits of `x`, least significant first, padded to `h` digits.
pub fn digits(x: i64, q: i64, h: u32) -> Vec<i64> {
    let mut v = Vec::with_capacity(h as usize);
    let mut x = x;
    for _ in 0..h {
        v.push(x % q);
        x /= q;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(p: i64, q: i64) -> Epsilon {
        Epsilon::from_ratio(p, q).unwrap()
    }

    #[test]
    fn base_from_eps() {
        assert_eq!(digit_base(&eps(1, 125)).unwrap(), 5);
        assert_eq!(digit_base(&eps(1, 250)).unwrap(), 10);
        assert_eq!(digit_base(&eps(1, 130)).unwrap(), 5);
        assert!(digit_base(&eps(1, 100)).is_err());
    }

    #[test]
    fn h2_expansion() {
        let (c, a) = build_behrend_digit_set(&eps(1, 125), 2, 3, &APkFreeProvider::exact()).unwrap();
        assert_eq!(c.head, vec![0, 1, 3, 4]);
        assert_eq!(c.tail, vec![2, 3]);
        assert_eq!(a, vec![2, 3, 7, 8, 17, 18, 22, 23]);
        assert_eq!(c.n, 25);
    }

    #[test]
    fn h1_is_the_head() {
        let (c, a) = build_behrend_digit_set(&eps(1, 125), 1, 3, &APkFreeProvider::exact()).unwrap();
        assert_eq!(a, c.head);
    }

    #[test]
    fn members_have_the_digit_structure() {
        let (c, a) = build_behrend_digit_set(&eps(1, 250), 3, 3, &APkFreeProvider::exact()).unwrap();
        assert_eq!(a.len(), c.expected_size());
        for &x in &a {
            let d = digits(x, c.q, c.h);
            assert!(c.head.contains(&d[c.h as usize - 1]));
            assert!(d[..c.h as usize - 1].iter().all(|s| c.tail.contains(s)));
        }
    }
}
