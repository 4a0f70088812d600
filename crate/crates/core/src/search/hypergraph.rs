//! The hypergraph of `AP_k(ε)` subsets of `[N]` and its text format.
//!
//! Text format: a header `# N=<N> k=<k> eps=<p>/<q>`, then one edge per line
//! as `k` ascending integers separated by single spaces. Each line ends
//! with a newline.

use std::fmt::Write as _;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::enumerate::for_each_eps_ap;
use crate::rational::Epsilon;

pub const DEFAULT_EDGE_CAP: usize = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsApHypergraph {
    pub n: usize,
    pub k: usize,
    pub eps: Epsilon,
    /// Sorted `k`-subsets of `1..=N`, in lexicographic order.
    pub edges: Vec<Vec<i64>>,
}

impl EpsApHypergraph {
    /// Edges grouped by their largest element: `by_max[x]` lists edges ending at `x`.
    pub fn by_max(&self) -> Vec<Vec<&[i64]>> {
        let mut out = vec![Vec::new(); self.n + 1];
        for e in &self.edges {
            out[*e.last().unwrap() as usize].push(e.as_slice());
        }
        out
    }

    /// The sub-hypergraph induced on `1..=n`.
    pub fn restrict(&self, n: usize) -> Self {
        let edges = self.edges.iter().filter(|e| *e.last().unwrap() <= n as i64).cloned().collect();
        Self { n, k: self.k, eps: self.eps.clone(), edges }
    }
}

/// Every `AP_k(ε)` among the `k`-subsets of `[N]`. Errors once more than
/// `edge_cap` edges have been produced.
pub fn enumerate_eps_aps(n: usize, k: usize, eps: &Epsilon, edge_cap: usize) -> Result<EpsApHypergraph> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    let cands: Vec<i64> = (1..=n as i64).collect();
    let mut edges = Vec::new();
    let mut over = false;
    for_each_eps_ap(&cands, k, eps, |s, _| {
        if edges.len() == edge_cap {
            over = true;
            return ControlFlow::Break(());
        }
        edges.push(s.to_vec());
        ControlFlow::Continue(())
    });
    if over {
        return Err(Error::CapExceeded(format!("more than {edge_cap} edges for N={n}, k={k}, eps={eps}")));
    }
    Ok(EpsApHypergraph { n, k, eps: eps.clone(), edges })
}

/// Exact `k`-term progressions in `[N]`, lexicographic. Used as the
/// reference family when comparing with the exact-AP-free maximum.
pub fn exact_ap_edges(n: usize, k: usize) -> Vec<Vec<i64>> {
    let n = n as i64;
    let k = k as i64;
    let mut out = Vec::new();
    for a in 1..=n {
        for d in 1.. {
            if a + (k - 1) * d > n {
                break;
            }
            out.push((0..k).map(|i| a + i * d).collect());
        }
    }
    out.sort();
    out
}

pub fn export_hypergraph(h: &EpsApHypergraph, format: &str) -> Result<String> {
    match format {
        "text" => {
            let mut s = format!("# N={} k={} eps={}\n", h.n, h.k, h.eps);
            for e in &h.edges {
                let line: Vec<String> = e.iter().map(i64::to_string).collect();
                writeln!(s, "{}", line.join(" ")).unwrap();
            }
            Ok(s)
        }
        "json" => Ok(serde_json::to_string(h).map_err(|e| Error::Parse(e.to_string()))? + "\n"),
        other => Err(Error::InvalidParameter(format!("unknown hypergraph format {other:?} (use text or json)"))),
    }
}

/// Reads either export format; JSON is recognized by a leading `{`.
pub fn parse_hypergraph(text: &str) -> Result<EpsApHypergraph> {
    if text.trim_start().starts_with('{') {
        #[derive(serde::Deserialize)]
        struct Raw {
            n: usize,
            k: usize,
            eps: String,
            edges: Vec<Vec<i64>>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        for (i, e) in raw.edges.iter().enumerate() {
            check_edge(e, raw.n, raw.k).map_err(|m| Error::Parse(format!("edge {i}: {m}")))?;
        }
        return Ok(EpsApHypergraph { n: raw.n, k: raw.k, eps: raw.eps.parse()?, edges: raw.edges });
    }
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty hypergraph file".into()))?;
    let fields = parse_header(header, &["N", "k", "eps"])?;
    let n: usize = fields[0].parse().map_err(|_| Error::Parse(format!("bad N {:?}", fields[0])))?;
    let k: usize = fields[1].parse().map_err(|_| Error::Parse(format!("bad k {:?}", fields[1])))?;
    let eps: Epsilon = fields[2].parse()?;
    let mut edges = Vec::new();
    for (no, line) in lines.enumerate() {
        let edge: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("line {}: bad integer {t:?}", no + 2))))
            .collect::<Result<_>>()?;
        check_edge(&edge, n, k).map_err(|m| Error::Parse(format!("line {}: {m}", no + 2)))?;
        edges.push(edge);
    }
    Ok(EpsApHypergraph { n, k, eps, edges })
}

fn check_edge(edge: &[i64], n: usize, k: usize) -> std::result::Result<(), String> {
    if edge.len() != k || !edge.windows(2).all(|w| w[0] < w[1]) || edge[0] < 1 || edge[k - 1] > n as i64 {
        return Err(format!("not a sorted {k}-subset of [1, {n}]"));
    }
    Ok(())
}

/// Splits `# a=1 b=2 …` into values, requiring exactly the given keys in order.
pub(crate) fn parse_header<'a>(line: &'a str, keys: &[&str]) -> Result<Vec<&'a str>> {
    let bad = || Error::Parse(format!("expected header `# {}`, got {line:?}", keys.iter().map(|k| format!("{k}=…")).collect::<Vec<_>>().join(" ")));
    let rest = line.strip_prefix('#').ok_or_else(bad)?;
    let parts: Vec<&str> = rest.split_whitespace().collect();
    if parts.len() != keys.len() {
        return Err(bad());
    }
    parts
        .iter()
        .zip(keys)
        .map(|(p, key)| p.strip_prefix(key).and_then(|v| v.strip_prefix('=')).ok_or_else(bad))
        .collect()
}
