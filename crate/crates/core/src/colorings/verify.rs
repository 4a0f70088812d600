//! Search for a monochromatic `AP_k(ε)`.

use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use crate::colorings::coloring::Coloring;
use crate::geometry::ap::Witness1D;
use crate::geometry::enumerate::for_each_eps_ap;
use crate::rational::Epsilon;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoAp {
    pub color: u8,
    pub subset: Vec<i64>,
    pub witness: Witness1D,
}

/// Lexicographically first `AP_k(ε)` inside one sorted class.
pub fn first_eps_ap(class: &[i64], k: usize, eps: &Epsilon) -> Option<(Vec<i64>, Witness1D)> {
    let mut found = None;
    for_each_eps_ap(class, k, eps, |s, w| {
        found = Some((s.to_vec(), w));
        ControlFlow::Break(())
    });
    found
}

/// Given color classes (index `c` is color `c+1`, each sorted), returns the
/// lexicographically smallest `(color, subset)` that is a monochromatic
/// `AP_k(ε)`. Classes are searched in parallel; the reduction keeps the
/// result independent of scheduling.
pub fn find_mono_ap(classes: &[Vec<i64>], k: usize, eps: &Epsilon) -> Option<MonoAp> {
    classes.par_iter().enumerate().find_map_first(|(c, class)| {
        first_eps_ap(class, k, eps).map(|(subset, witness)| MonoAp { color: c as u8 + 1, subset, witness })
    })
}

/// `None` when the coloring has no monochromatic `AP_k(ε)`.
pub fn verify_no_mono_ap(coloring: &Coloring, k: usize, eps: &Epsilon) -> Option<MonoAp> {
    find_mono_ap(&coloring.classes(), k, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::alternate::build_simple_r2_coloring;
    use crate::geometry::ap::{recognize_ap, IndexedPoints1D};

    fn eps(p: i64, q: i64) -> Epsilon {
        Epsilon::from_ratio(p, q).unwrap()
    }

    #[test]
    fn too_few_points() {
        let c = Coloring::monochromatic(4, 1).unwrap();
        assert!(verify_no_mono_ap(&c, 5, &eps(1, 3)).is_none());
    }

    #[test]
    fn all_one_coloring_of_three() {
        let c = Coloring::monochromatic(3, 1).unwrap();
        let m = verify_no_mono_ap(&c, 3, &eps(1, 3)).unwrap();
        assert_eq!(m.color, 1);
        assert_eq!(m.subset, vec![1, 2, 3]);
        assert_eq!(m.witness.d, crate::ExactRational::from(1));
    }

    /// Unpruned oracle: every monochromatic k-subset, lexicographic order.
    fn brute(coloring: &Coloring, k: usize, e: &Epsilon) -> Option<(u8, Vec<i64>)> {
        for (c, class) in coloring.classes().iter().enumerate() {
            let n = class.len();
            if n < k {
                continue;
            }
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                let pts: Vec<i64> = idx.iter().map(|&i| class[i]).collect();
                if recognize_ap(&IndexedPoints1D::new(pts.clone()).unwrap(), e).is_some() {
                    return Some((c as u8 + 1, pts));
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
        }
        None
    }

    #[test]
    fn simple_r2_matches_brute_force() {
        for k in 5..=8 {
            let c = build_simple_r2_coloring(k).unwrap();
            for e in [eps(1, 5), eps(1, 4), eps(1, 10)] {
                let got = verify_no_mono_ap(&c, k, &e).map(|m| (m.color, m.subset));
                assert_eq!(got, brute(&c, k, &e), "k={k} eps={e}");
            }
        }
    }

    #[test]
    fn lexicographic_minimum_across_colors() {
        // Color 2 has an AP; color 1 has a later one.
        let c = Coloring::new(2, vec![2, 2, 2, 1, 1, 1]).unwrap();
        let m = verify_no_mono_ap(&c, 3, &eps(1, 3)).unwrap();
        assert_eq!((m.color, m.subset), (1, vec![4, 5, 6]));
    }
}
