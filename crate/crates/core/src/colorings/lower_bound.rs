//! Recursive `r`-coloring of `[N_1]` without a monochromatic `AP_k(ε)`.
//!
//! `[N_1]` is cut into `w` intervals `Y_i`, each into `⌊s/2⌋` intervals
//! `Y_{i,j}` of length `r·t·D_j`, each into `t` intervals `Z_u` of length
//! `r·D_j`, and each of those into `r` blocks `Z_{u,v}` of length `D_j`.
//! Block `Z_{u,v}` copies the first `D_j` colors of the `(r-1)`-coloring of
//! `[N_0]` with color `v` removed from the palette.
//!
//! Parameters (natural log, rounded up):
//!
//! ```text
//! s   = ⌈ln(1/5ε) / 0.9⌉
//! w   = ⌈e^{0.9 s} / (s·(r-1)!)⌉
//! t   = ⌈k / (2 r s)⌉
//! N_0 = N(ε, ⌈k/(r s)⌉, r-1),  N(ε, k, 1) = k - 1
//! D_j = ⌈(s-j+1) N_0 / s⌉,     1 ≤ j ≤ ⌊s/2⌋
//! N_1 = r·w·t·(D_1 + … + D_{⌊s/2⌋})
//! ```

use serde::Serialize;

use crate::colorings::coloring::Coloring;
use crate::error::{Error, Result};
use crate::rational::{Epsilon, ExactRational};

#[derive(Clone, Debug)]
pub struct LowerBoundConfig {
    /// Largest admissible ε.
    pub eps0: ExactRational,
    /// Largest `N_1` that will be materialized.
    pub max_len: u64,
}

impl Default for LowerBoundConfig {
    fn default() -> Self {
        Self { eps0: ExactRational::new(1, 1000).unwrap(), max_len: 100_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundParams {
    pub k: u64,
    pub r: u8,
    pub s: u64,
    pub w: u64,
    pub t: u64,
    /// `D_1 ≥ D_2 ≥ … ≥ D_{⌊s/2⌋}`.
    pub blocks: Vec<u64>,
    pub n0: u64,
    pub n1: u64,
    /// Parameters of the `(r-1)`-color construction on `[N_0]`.
    pub inner: Option<Box<LowerBoundParams>>,
}

impl LowerBoundParams {
    pub fn block_sum(&self) -> u64 {
        self.blocks.iter().sum()
    }

    /// Offset `α_i` of `Y_i` (1-based `i`).
    pub fn alpha(&self, i: u64) -> u64 {
        (i - 1) * self.r as u64 * self.t * self.block_sum()
    }

    /// Offset `β_{i,j}` of `Y_{i,j}`.
    pub fn beta(&self, i: u64, j: usize) -> u64 {
        let before: u64 = self.blocks[..j - 1].iter().sum();
        self.r as u64 * self.t * before + self.alpha(i)
    }

    /// Offset `γ_{i,j,u}` of `Z_u^{i,j}`.
    pub fn gamma(&self, i: u64, j: usize, u: u64) -> u64 {
        (u - 1) * self.r as u64 * self.blocks[j - 1] + self.beta(i, j)
    }

    /// Offset `σ_{i,j,u,v}` of `Z_{u,v}^{i,j}`.
    pub fn sigma(&self, i: u64, j: usize, u: u64, v: u8) -> u64 {
        (v as u64 - 1) * self.blocks[j - 1] + self.gamma(i, j, u)
    }

    /// Every `Z_{u,v}^{i,j}` in increasing position order.
    pub fn z_blocks(&self) -> impl Iterator<Item = ZBlock> + '_ {
        let (w, t, r) = (self.w, self.t, self.r);
        (1..=w).flat_map(move |i| {
            (1..=self.blocks.len()).flat_map(move |j| {
                (1..=t).flat_map(move |u| {
                    (1..=r).map(move |v| ZBlock {
                        i,
                        j,
                        u,
                        v,
                        start: self.sigma(i, j, u, v),
                        len: self.blocks[j - 1],
                    })
                })
            })
        })
    }
}

/// The block `Z_{u,v}^{i,j} = [start + 1, start + len]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZBlock {
    pub i: u64,
    pub j: usize,
    pub u: u64,
    pub v: u8,
    pub start: u64,
    pub len: u64,
}

fn factorial(n: u64) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

fn checked_product(factors: &[u64]) -> Result<u64> {
    factors
        .iter()
        .try_fold(1u64, |acc, &f| acc.checked_mul(f))
        .ok_or_else(|| Error::Overflow(format!("product {factors:?} exceeds u64")))
}

pub fn params_eq5(k: u64, r: u8, eps: &Epsilon, config: &LowerBoundConfig) -> Result<LowerBoundParams> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    if r == 1 {
        if k < 2 {
            return Err(Error::HypothesisViolated(format!("base case needs k >= 2, got k = {k}")));
        }
        return Ok(LowerBoundParams {
            k,
            r,
            s: 0,
            w: 0,
            t: 0,
            blocks: Vec::new(),
            n0: 0,
            n1: k - 1,
            inner: None,
        });
    }
    if eps.value() > &config.eps0 {
        return Err(Error::HypothesisViolated(format!("eps <= eps0 fails: {eps} > {}", config.eps0)));
    }
    let e = eps.to_f64();
    let log_term = (1.0 / (5.0 * e)).ln();
    if log_term <= 0.0 {
        return Err(Error::HypothesisViolated(format!("log(1/(5 eps)) > 0 fails for eps = {eps}")));
    }
    let rf = r as f64;
    let threshold = 2f64.powf(rf) * factorial(r as u64) / e * log_term.powf(rf);
    if (k as f64) < threshold {
        return Err(Error::HypothesisViolated(format!(
            "k >= 2^r r! eps^-1 log^r(1/(5 eps)) fails: k = {k} < {threshold:.3}"
        )));
    }
    let s = (log_term / 0.9).ceil() as u64;
    if s < 2 {
        return Err(Error::HypothesisViolated(format!("floor(s/2) >= 1 fails: s = {s}")));
    }
    let w = ((0.9 * s as f64).exp() / (s as f64 * factorial(r as u64 - 1))).ceil() as u64;
    let t = k.div_ceil(2 * r as u64 * s);
    let inner_k = k.div_ceil(r as u64 * s);
    let inner = params_eq5(inner_k, r - 1, eps, config)?;
    let n0 = inner.n1;
    let blocks: Vec<u64> = (1..=s / 2).map(|j| ((s - j + 1) * n0).div_ceil(s)).collect();
    let sum: u64 = blocks.iter().sum();
    let n1 = checked_product(&[r as u64, w, t, sum])?;
    Ok(LowerBoundParams { k, r, s, w, t, blocks, n0, n1, inner: Some(Box::new(inner)) })
}

#[derive(Clone, Debug)]
pub struct LowerBoundColoring {
    pub params: LowerBoundParams,
    pub coloring: Coloring,
}

/// Materializes the coloring. Fails with `CapExceeded` when `N_1` is above
/// `config.max_len`.
pub fn build_lower_bound_coloring(k: u64, r: u8, eps: &Epsilon, config: &LowerBoundConfig) -> Result<LowerBoundColoring> {
    let params = params_eq5(k, r, eps, config)?;
    if params.n1 > config.max_len {
        return Err(Error::CapExceeded(format!(
            "N_1 = {} exceeds the configured cap {} (k = {k}, r = {r}, eps = {eps})",
            params.n1, config.max_len
        )));
    }
    let colors = color_from_params(&params)?;
    Ok(LowerBoundColoring { coloring: Coloring::new(r, colors)?, params })
}

fn color_from_params(params: &LowerBoundParams) -> Result<Vec<u8>> {
    let Some(inner) = params.inner.as_deref() else {
        return Ok(vec![1; params.n1 as usize]);
    };
    let base = color_from_params(inner)?;
    let mut colors = vec![0u8; params.n1 as usize];
    for z in params.z_blocks() {
        let dst = &mut colors[z.start as usize..(z.start + z.len) as usize];
        for (slot, &c) in dst.iter_mut().zip(&base) {
            *slot = relabel(c, z.v);
        }
    }
    Ok(colors)
}

/// Maps color `c ∈ 1..r-1` onto the palette `[r] \ {missing}`.
pub fn relabel(c: u8, missing: u8) -> u8 {
    if c < missing {
        c
    } else {
        c + 1
    }
}

/// Checks that the blocks tile `[N_1]` consecutively with the closed-form
/// offsets, that `Y_{i,j}` has length `r·t·D_j`, that every `Z_{u,v}` omits
/// color `v`, and that every `Z_{u,v}` is the relabeled prefix of the inner
/// coloring. Returns a description of the first failure.
pub fn check_structure(built: &LowerBoundColoring) -> std::result::Result<(), String> {
    let p = &built.params;
    let colors = built.coloring.as_slice();
    if colors.len() as u64 != p.n1 {
        return Err(format!("coloring has {} elements, N_1 = {}", colors.len(), p.n1));
    }
    let Some(inner) = p.inner.as_deref() else {
        return if colors.iter().all(|&c| c == 1) { Ok(()) } else { Err("base case not monochromatic".into()) };
    };
    if p.n1 != p.r as u64 * p.w * p.t * p.block_sum() {
        return Err("N_1 != r·w·t·(D_1 + ... + D_{s/2})".into());
    }
    if p.blocks.windows(2).any(|w| w[0] < w[1]) {
        return Err("D_j not nonincreasing".into());
    }
    if p.blocks.iter().any(|&d| d > p.n0 || 2 * d < p.n0) {
        return Err("D_j outside [N_0/2, N_0]".into());
    }
    let base = color_from_params(inner).map_err(|e| e.to_string())?;
    let mut next = 0u64;
    for i in 1..=p.w {
        for j in 1..=p.blocks.len() {
            let beta = p.beta(i, j);
            if beta != next {
                return Err(format!("Y_{{{i},{j}}} starts at {beta}, expected {next}"));
            }
            next += p.r as u64 * p.t * p.blocks[j - 1];
        }
    }
    if next != p.n1 {
        return Err(format!("Y blocks cover {next} elements, N_1 = {}", p.n1));
    }
    let mut next = 0u64;
    for z in p.z_blocks() {
        if z.start != next {
            return Err(format!("Z block {z:?} starts at {}, expected {next}", z.start));
        }
        next = z.start + z.len;
        let block = &colors[z.start as usize..next as usize];
        if block.contains(&z.v) {
            return Err(format!("Z block {z:?} uses its omitted color"));
        }
        if block.iter().zip(&base).any(|(&c, &b)| c != relabel(b, z.v)) {
            return Err(format!("Z block {z:?} is not the relabeled inner prefix"));
        }
    }
    if next != p.n1 {
        return Err(format!("Z blocks cover {next} elements, N_1 = {}", p.n1));
    }
    Ok(())
}

/// Smallest `k` meeting the size hypothesis at `(r, ε)`.
pub fn minimal_k(r: u8, eps: &Epsilon) -> u64 {
    let e = eps.to_f64();
    let threshold = 2f64.powi(r as i32) * factorial(r as u64) / e * (1.0 / (5.0 * e)).ln().powi(r as i32);
    threshold.ceil().max(2.0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(p: i64, q: i64) -> Epsilon {
        Epsilon::from_ratio(p, q).unwrap()
    }

    fn loose() -> LowerBoundConfig {
        LowerBoundConfig { eps0: ExactRational::new(1, 5).unwrap(), max_len: 10_000_000 }
    }

    #[test]
    fn base_case() {
        let p = params_eq5(7, 1, &eps(1, 3), &LowerBoundConfig::default()).unwrap();
        assert_eq!(p.n1, 6);
        let c = build_lower_bound_coloring(7, 1, &eps(1, 3), &LowerBoundConfig::default()).unwrap();
        assert_eq!(c.coloring.as_slice(), &[1; 6]);
    }

    #[test]
    fn hypothesis_errors_name_the_inequality() {
        let cfg = LowerBoundConfig::default();
        let err = params_eq5(100, 2, &eps(1, 2000), &cfg).unwrap_err().to_string();
        assert!(err.contains("k >= 2^r r!"), "{err}");
        let err = params_eq5(10_000_000, 2, &eps(1, 20), &cfg).unwrap_err().to_string();
        assert!(err.contains("eps <= eps0"), "{err}");
    }

    #[test]
    fn hand_computed_parameters() {
        // eps = 1/13: ln(13/5) = 0.9555, s = 2, w = ceil(e^1.8 / 2) = 4,
        // k_min = ceil(8·13·0.9555^2) = 95, t = ceil(95/8) = 12,
        // N_0 = ceil(95/4) - 1 = 23, D_1 = 23, N_1 = 2·4·12·23 = 2208.
        let e = eps(1, 13);
        assert_eq!(minimal_k(2, &e), 95);
        let p = params_eq5(95, 2, &e, &loose()).unwrap();
        assert_eq!((p.s, p.w, p.t, p.n0), (2, 4, 12, 23));
        assert_eq!(p.blocks, vec![23]);
        assert_eq!(p.n1, 2208);
        assert!(params_eq5(94, 2, &e, &loose()).is_err());
    }

    #[test]
    fn structure_of_small_instance() {
        let built = build_lower_bound_coloring(95, 2, &eps(1, 13), &loose()).unwrap();
        check_structure(&built).unwrap();
        assert_eq!(built.params.z_blocks().count(), 4 * 12 * 2);
    }

    #[test]
    fn blocks_nonincreasing_for_larger_s() {
        let e = eps(1, 1000);
        let k = minimal_k(2, &e);
        let p = params_eq5(k, 2, &e, &LowerBoundConfig::default()).unwrap();
        assert_eq!(p.s, 6);
        assert_eq!(p.blocks.len(), 3);
        assert!(p.blocks.windows(2).all(|w| w[0] >= w[1]));
        assert!(p.blocks.iter().all(|&d| 2 * d >= p.n0));
        assert_eq!(p.n1, 2 * p.w * p.t * p.block_sum());
    }

    #[test]
    fn cap_is_reported() {
        let e = eps(1, 1000);
        let k = minimal_k(2, &e);
        let err = build_lower_bound_coloring(k, 2, &e, &LowerBoundConfig::default()).unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)));
    }

    #[test]
    fn corrupted_coloring_fails_structure_check() {
        let mut built = build_lower_bound_coloring(95, 2, &eps(1, 13), &loose()).unwrap();
        let mut colors = built.coloring.as_slice().to_vec();
        colors[0] = if colors[0] == 1 { 2 } else { 1 };
        built.coloring = Coloring::new(2, colors).unwrap();
        assert!(check_structure(&built).is_err());
    }
}
