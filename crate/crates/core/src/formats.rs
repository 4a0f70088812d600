//! Line-based file formats.
//!
//! SET: optional `#` comment lines, then one point per line as `m`
//! whitespace-separated integers; points sorted lexicographically; every
//! line ends with a newline.
//!
//! COLORING: a header `# N=<N> r=<r> eps=<p>/<q> k=<k>`, then `N` lines, line
//! `i` holding the color (in `1..=r`) of the integer `i`.
//!
//! GRID: the SET layout without the sorting rule; row `i` is the point with
//! index vector number `i` in lexicographic order (first axis most
//! significant).
//!
//! The hypergraph format lives with the hypergraph type.

use std::fmt::Write as _;

use crate::colorings::coloring::Coloring;
use crate::error::{Error, Result};
use crate::geometry::cube::IndexedGrid;
use crate::rational::Epsilon;
use crate::search::hypergraph::parse_header;

pub use crate::search::hypergraph::{export_hypergraph, parse_hypergraph};

/// Writes a SET file; the points are sorted first.
pub fn write_set(points: &[Vec<i64>]) -> String {
    let mut sorted = points.to_vec();
    sorted.sort();
    let mut s = String::new();
    for p in &sorted {
        let row: Vec<String> = p.iter().map(i64::to_string).collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
    s
}

/// Writes a GRID file: the points in index order.
pub fn write_grid(grid: &IndexedGrid) -> String {
    let mut s = String::new();
    for p in grid.points() {
        let row: Vec<String> = p.iter().map(i64::to_string).collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
    s
}

pub fn parse_grid(text: &str, m: usize, k: usize) -> Result<IndexedGrid> {
    IndexedGrid::new(m, k, parse_rows(text, false)?)
}

/// Parses a SET file. All rows must have the same number of coordinates,
/// and the rows must be strictly increasing.
pub fn parse_set(text: &str) -> Result<Vec<Vec<i64>>> {
    parse_rows(text, true)
}

fn parse_rows(text: &str, sorted: bool) -> Result<Vec<Vec<i64>>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for (no, line) in text.lines().enumerate() {
        if line.starts_with('#') {
            continue;
        }
        let row: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("line {}: bad integer {t:?}", no + 1))))
            .collect::<Result<_>>()?;
        if row.is_empty() {
            return Err(Error::Parse(format!("line {}: empty row", no + 1)));
        }
        if let Some(prev) = out.last() {
            if prev.len() != row.len() {
                return Err(Error::Parse(format!("line {}: expected {} coordinates", no + 1, prev.len())));
            }
            if sorted && *prev >= row {
                return Err(Error::Parse(format!("line {}: points must be sorted and distinct", no + 1)));
            }
        }
        out.push(row);
    }
    Ok(out)
}

/// Header fields of a COLORING file besides the colors themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringHeader {
    pub eps: Epsilon,
    pub k: usize,
}

pub fn write_coloring(c: &Coloring, eps: &Epsilon, k: usize) -> String {
    let mut s = format!("# N={} r={} eps={} k={}\n", c.n(), c.r(), eps, k);
    for &col in c.as_slice() {
        writeln!(s, "{col}").unwrap();
    }
    s
}

pub fn parse_coloring(text: &str) -> Result<(Coloring, ColoringHeader)> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty coloring file".into()))?;
    let f = parse_header(header, &["N", "r", "eps", "k"])?;
    let n: usize = f[0].parse().map_err(|_| Error::Parse(format!("bad N {:?}", f[0])))?;
    let r: u8 = f[1].parse().map_err(|_| Error::Parse(format!("bad r {:?}", f[1])))?;
    let eps: Epsilon = f[2].parse()?;
    let k: usize = f[3].parse().map_err(|_| Error::Parse(format!("bad k {:?}", f[3])))?;
    let colors: Vec<u8> = lines
        .enumerate()
        .map(|(i, l)| l.trim().parse().map_err(|_| Error::Parse(format!("line {}: bad color {l:?}", i + 2))))
        .collect::<Result<_>>()?;
    if colors.len() != n {
        return Err(Error::Parse(format!("header says N={n} but {} colors follow", colors.len())));
    }
    Ok((Coloring::new(r, colors)?, ColoringHeader { eps, k }))
}
