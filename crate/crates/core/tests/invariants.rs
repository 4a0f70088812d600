use std::ops::ControlFlow;

use epsap::colorings::alternate::excluded_difference_check;
use epsap::colorings::build_alternate_labeling;
use epsap::density::digits::digits;
use epsap::density::{build_behrend_digit_set, APkFreeProvider};
use epsap::geometry::for_each_eps_ap;
use epsap::search::{exact_f, exact_w, OutcomeKind, SearchLimits};
use epsap::{Epsilon, ExactRational};

fn eps(p: i64, q: i64) -> Epsilon {
    Epsilon::from_ratio(p, q).unwrap()
}

/// Two pairs of members that agree on every digit above `j0` and whose
/// `j0`-digit gaps differ in size have gaps at least `q^j0 / 5` apart.
#[test]
fn digit_gaps_are_separated() {
    for (e, h) in [(eps(1, 125), 2), (eps(1, 125), 3), (eps(1, 500), 2)] {
        let (info, set) = build_behrend_digit_set(&e, h, 3, &APkFreeProvider::exact()).unwrap();
        let q = info.q;
        let ds: Vec<Vec<i64>> = set.iter().map(|&x| digits(x, q, h)).collect();
        let pairs: Vec<(usize, usize)> =
            (0..set.len()).flat_map(|i| (i + 1..set.len()).map(move |j| (i, j))).collect();
        let mut checked = 0;
        for &(a, b) in &pairs {
            for &(c, d) in &pairs {
                let four = [a, b, c, d];
                let Some(j0) = (0..h as usize).rev().find(|&j| four.iter().any(|&i| ds[i][j] != ds[a][j])) else {
                    continue;
                };
                let g1 = (ds[b][j0] - ds[a][j0]).abs();
                let g2 = (ds[d][j0] - ds[c][j0]).abs();
                if g1 == g2 {
                    continue;
                }
                let outer = ((set[b] - set[a]).abs() - (set[d] - set[c]).abs()).abs();
                assert!(5 * outer >= q.pow(j0 as u32), "q={q} h={h}: pairs {:?} {:?}", (set[a], set[b]), (set[c], set[d]));
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}

/// Whether the open interval `(lo, hi) / scale` meets the `+1` part of the
/// `(r-1,1;D)`-alternate labeling of the reals, `(irD, (i + (r-1)/r)rD]`.
fn plus_block_meets(lo: i128, hi: i128, r: i128, block: i128, scale: i128) -> bool {
    let width = block * scale;
    let first = lo.div_euclid(width);
    (first..=hi.div_euclid(width)).any(|b| {
        let (l, u) = (b * width, (b + 1) * width);
        b.rem_euclid(r) != r - 1 && l < hi && u > lo
    })
}

#[test]
fn long_progressions_of_balls_need_special_differences() {
    for r in 2i128..=3 {
        let delta = ExactRational::new(1, (2 * r * (r + 1)) as i64).unwrap();
        let bound = 3 * r * 2 * r * (r + 1);
        for block in 1i128..=4 {
            // Everything is scaled by `scale`, which makes δrD = D/(2(r+1))
            // and the grids below integral.
            let scale = 2 * (r + 1) * 6;
            let radius = block * 6;
            let period = r * block * scale;
            let mut tested = 0;
            for e in 1..=3 * period / 5 {
                let step = 5 * e;
                let d = ExactRational::new(step as i64, scale as i64).unwrap();
                if !excluded_difference_check(&d, r as usize, block as usize, &delta) {
                    continue;
                }
                for start in (0..period).step_by(7) {
                    let mut len = 0;
                    while len <= bound {
                        let c = start + len * step;
                        if !plus_block_meets(c - radius, c + radius, r, block, scale) {
                            break;
                        }
                        len += 1;
                    }
                    assert!(len <= bound, "r={r} D={block} d={d} a={start}/{scale}: {len} balls");
                    tested += 1;
                }
            }
            assert!(tested > 0, "no admissible d for r={r}, D={block}");
        }
    }
}

#[test]
fn plus_progressions_concentrate_in_one_block() {
    let mut found = 0;
    for (r, t, e) in [(2usize, 1usize, eps(1, 5)), (2, 2, eps(1, 5)), (3, 1, eps(1, 7))] {
        let ell = t * (r + 1) + 2;
        for block in [ell - 2, ell, ell + 2] {
            for offset in 0..r {
                let lab = build_alternate_labeling(r, block, t, offset).unwrap();
                let plus: Vec<i64> = (1..=lab.len()).filter(|&x| lab.label(x) > 0).map(|x| x as i64).collect();
                for_each_eps_ap(&plus, ell, &e, |xs, _| {
                    let best = (0..r * t)
                        .map(|b| xs.iter().filter(|&&x| (x as usize - 1) / block == b).count())
                        .max()
                        .unwrap();
                    assert!(best * (r - 1) >= ell, "r={r} t={t} D={block}: {xs:?}");
                    found += 1;
                    ControlFlow::Continue(())
                });
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn w_is_monotone_in_k_and_r() {
    for e in [eps(1, 3), eps(1, 4)] {
        let w = |k, r| {
            let out = exact_w(k, r, &e, 40, SearchLimits::default()).unwrap();
            assert_eq!(out.kind, OutcomeKind::Value);
            out.value
        };
        let table: Vec<Vec<u64>> = (2..=4).map(|k| (1..=2).map(|r| w(k, r)).collect()).collect();
        for (i, row) in table.iter().enumerate() {
            assert!(row.windows(2).all(|p| p[0] <= p[1]), "eps={e} {table:?}");
            if i > 0 {
                assert!(row.iter().zip(&table[i - 1]).all(|(a, b)| a >= b), "eps={e} {table:?}");
            }
        }
    }
}

#[test]
fn f_is_monotone_in_n() {
    for e in [eps(1, 3), eps(1, 5)] {
        let values: Vec<u64> =
            (1..=14).map(|n| exact_f(n, 1, 3, &e, SearchLimits::default()).unwrap().value).collect();
        assert!(values.windows(2).all(|p| p[0] <= p[1] && p[1] <= p[0] + 1), "eps={e}: {values:?}");
    }
}
