//! Recognizers for approximate progressions and cubes, and the feasibility
//! machinery the searches share.

pub mod ap;
pub mod ball;
pub mod cube;
pub mod enumerate;
pub mod region;

pub use ap::{gap_ratio_filter, recognize_ap, recognize_ap_set, IndexedPoints1D, Witness1D};
pub use ball::{min_enclosing_ball, Ball};
pub use cube::{index_grid_points, recognize_cube, CubeVerdict, IndexedGrid, WitnessMD, DEFAULT_TOL};
pub use enumerate::{for_each_eps_ap, ApVisit};
pub use region::FeasibleRegion2D;
