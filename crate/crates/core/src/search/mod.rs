//! Exact small values of `W_ε(k, r)` and `f_ε(N, m, k)`.

use std::time::Duration;

use serde::Serialize;

use crate::colorings::coloring::Coloring;

pub mod fnumber;
pub mod hypergraph;
pub mod wnumber;

pub use fnumber::{default_limits, exact_f, exact_f_exact_ap};
pub use hypergraph::{enumerate_eps_aps, exact_ap_edges, export_hypergraph, parse_hypergraph, EpsApHypergraph};
pub use wnumber::{decide_colorable, exact_w, Decision, SearchLimits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeKind {
    Value,
    LowerBoundOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "data", rename_all = "snake_case")]
pub enum Witness {
    Coloring(Coloring),
    Set(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    /// Not serialized, so that repeated runs produce identical output.
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub kind: OutcomeKind,
    /// The exact value, or for `LowerBoundOnly` the best bound established:
    /// a good coloring length for `W`, an incumbent size for `f`.
    pub value: u64,
    pub witness: Option<Witness>,
    pub stats: SearchStats,
}
