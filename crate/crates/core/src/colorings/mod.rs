//! Colorings of `[N]`: blow-up sets that force monochromatic `AP_k(ε)`,
//! alternate labelings, and the recursive construction avoiding them.

pub mod alternate;
pub mod blowup;
pub mod coloring;
pub mod lcm;
pub mod lower_bound;
pub mod verify;

pub use alternate::{
    build_alternate_labeling, build_simple_r2_coloring, excluded_difference_check, AlternateLabeling,
};
pub use blowup::{build_blowup_1d, exhaustive_blowup_check, BlowupRamseyReport, BlowupSpec};
pub use coloring::Coloring;
pub use lcm::lcm_range;
pub use lower_bound::{
    build_lower_bound_coloring, check_structure, minimal_k, params_eq5, relabel, LowerBoundColoring,
    LowerBoundConfig, LowerBoundParams, ZBlock,
};
pub use verify::{find_mono_ap, first_eps_ap, verify_no_mono_ap, MonoAp};
