//! Dense sets with and without approximate structure: exact-AP-free
//! alphabets, base-`q` digit sets, products, the cube blow-up and the
//! translation-averaging step.

pub mod apfree;
pub mod cube_blowup;
pub mod cube_search;
pub mod digits;
pub mod translate;

pub use apfree::{apk_free_set, has_exact_ap, APkFreeProvider, ProviderMode};
pub use cube_blowup::{build_cube_blowup, cube_step, iteration_count, product_free_set, CubeBlowupSpec};
pub use cube_search::{verify_cube_free, verify_cube_free_counted};
pub use digits::{build_behrend_digit_set, digit_base, DigitConstruction};
pub use translate::{find_dense_translate, translation_count_sum, TranslateMode, TranslateResult};
