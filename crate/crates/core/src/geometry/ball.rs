//! Smallest enclosing Euclidean ball in any dimension (Welzl's algorithm,
//! move-to-front recursion over a fixed-seed shuffle).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const REL_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    fn empty(dim: usize) -> Self {
        Self { center: vec![0.0; dim], radius: -1.0 }
    }

    /// Containment with a small relative slack for rounding.
    pub fn contains(&self, p: &[f64]) -> bool {
        if self.radius < 0.0 {
            return false;
        }
        let d = dist(&self.center, p);
        d <= self.radius + REL_SLACK * (1.0 + self.radius)
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Smallest ball containing every point. All points must share a dimension.
pub fn min_enclosing_ball(points: &[Vec<f64>]) -> Result<Ball> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidInput("min_enclosing_ball of an empty list".into()));
    };
    let dim = first.len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidInput("points of mixed dimension".into()));
    }
    if dim == 1 {
        let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
        return Ok(Ball { center: vec![(lo + hi) / 2.0], radius: (hi - lo) / 2.0 });
    }
    let mut order: Vec<&[f64]> = points.iter().map(Vec::as_slice).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed));
    let mut boundary = Vec::with_capacity(dim + 1);
    Ok(welzl(&order, order.len(), &mut boundary, dim))
}

fn welzl<'a>(points: &[&'a [f64]], n: usize, boundary: &mut Vec<&'a [f64]>, dim: usize) -> Ball {
    let mut ball = ball_through(boundary, dim);
    if boundary.len() == dim + 1 {
        return ball;
    }
    for i in 0..n {
        if !ball.contains(points[i]) {
            boundary.push(points[i]);
            ball = welzl(points, i, boundary, dim);
            boundary.pop();
        }
    }
    ball
}

/// Smallest ball with every boundary point on its sphere: the circumcenter
/// within the affine hull of the boundary.
fn ball_through(boundary: &[&[f64]], dim: usize) -> Ball {
    match boundary {
        [] => Ball::empty(dim),
        [p] => Ball { center: p.to_vec(), radius: 0.0 },
        [p0, rest @ ..] => {
            let q: Vec<Vec<f64>> =
                rest.iter().map(|p| p.iter().zip(p0.iter()).map(|(a, b)| a - b).collect()).collect();
            let n = q.len();
            let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
            // 2 Σ_j λ_j (q_i·q_j) = q_i·q_i
            let mut a = vec![vec![0.0; n + 1]; n];
            for i in 0..n {
                for j in 0..n {
                    a[i][j] = 2.0 * dot(&q[i], &q[j]);
                }
                a[i][n] = dot(&q[i], &q[i]);
            }
            match solve(a) {
                Some(lambda) => {
                    let mut center = p0.to_vec();
                    for (l, qi) in lambda.iter().zip(&q) {
                        for (c, x) in center.iter_mut().zip(qi) {
                            *c += l * x;
                        }
                    }
                    let radius = boundary.iter().map(|p| dist(&center, p)).fold(0.0, f64::max);
                    Ball { center, radius }
                }
                None => diametral(boundary),
            }
        }
    }
}

/// Fallback for affinely dependent boundaries: ball on the farthest pair.
fn diametral(points: &[&[f64]]) -> Ball {
    let mut best = (0, 0, -1.0);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = dist(points[i], points[j]);
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    let (p, q) = (points[best.0], points[best.1]);
    let center: Vec<f64> = p.iter().zip(q).map(|(a, b)| (a + b) / 2.0).collect();
    let radius = points.iter().map(|x| dist(&center, x)).fold(0.0, f64::max);
    Ball { center, radius }
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let n = a.len();
    let scale = a.iter().flat_map(|r| r[..n].iter()).fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(col, piv);
        let (top, bottom) = a.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in bottom.iter_mut() {
            let f = row[col] / pivot[col];
            for (dst, src) in row[col..].iter_mut().zip(&pivot[col..]) {
                *dst -= f * src;
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|c| a[row][c] * x[c]).sum();
        x[row] = (a[row][n] - s) / a[row][row];
    }
    Some(x)
}
