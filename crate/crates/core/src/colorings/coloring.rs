use serde::Serialize;

use crate::error::{Error, Result};

/// A total map `{1..N} → {1..r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Coloring {
    r: u8,
    colors: Vec<u8>,
}

impl Coloring {
    /// `colors[i]` is the color of `i + 1`.
    pub fn new(r: u8, colors: Vec<u8>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("a coloring needs at least one color".into()));
        }
        if colors.is_empty() {
            return Err(Error::InvalidParameter("a coloring needs a nonempty domain".into()));
        }
        if let Some(pos) = colors.iter().position(|&c| c == 0 || c > r) {
            return Err(Error::InvalidInput(format!(
                "color {} of element {} is outside 1..={r}",
                colors[pos],
                pos + 1
            )));
        }
        Ok(Self { r, colors })
    }

    pub fn monochromatic(n: usize, r: u8) -> Result<Self> {
        Self::new(r, vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn r(&self) -> u8 {
        self.r
    }

    /// Color of `x ∈ 1..=N`.
    pub fn color(&self, x: usize) -> u8 {
        self.colors[x - 1]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.colors
    }

    /// Elements of each color, ascending; index `c-1` holds color `c`.
    pub fn classes(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new(); self.r as usize];
        for (i, &c) in self.colors.iter().enumerate() {
            out[c as usize - 1].push(i as i64 + 1);
        }
        out
    }
}
