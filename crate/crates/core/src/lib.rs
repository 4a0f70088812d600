//! Recognition, construction and exact search for ε-approximate arithmetic
//! progressions `AP_k(ε)` and ε-approximate cubes `C_ε(m,k)`.
//!
//! A set `{x_0 < … < x_{k-1}}` of integers is an `AP_k(ε)` when some `a` and
//! `d > 0` satisfy `|x_i - (a + i·d)| < ε·d` for every `i`. The cube version
//! replaces indices by vectors `v ∈ {0,…,k-1}^m` and the absolute value by
//! the Euclidean norm.
//!
//! * [`geometry`]: exact 1-D recognizer, gap-ratio filter, cube recognizer,
//!   smallest enclosing ball, incremental feasibility regions.
//! * [`colorings`]: blow-ups, alternate labelings, the recursive lower-bound
//!   coloring and monochromatic-progression verification.
//! * [`density`]: progression-free building blocks, digit sets, cube
//!   blow-ups, translation averaging and cube search.
//! * [`search`]: exact `W_ε(k,r)` and `f_ε(N,m,k)` at desk scale.
//! * [`formats`]: the text file formats shared with the command-line tool.

pub mod colorings;
pub mod density;
pub mod error;
pub mod formats;
pub mod geometry;
pub mod rational;
pub mod search;

pub use error::{Error, Result};
pub use rational::{Epsilon, ExactRational};
