//! Canonical Theta-configurations, the inequality checkers run on them,
//! stretch constants, and the recursive Theta-Theta_k path.

mod checks;
mod config;
mod constants;
mod harness;
mod optimize;
mod recursive;
mod sampler;

pub use checks::{
    check_detour_lemma, check_lemma_abba, check_lemma_paa1, check_lemma_paa5,
    check_lemma_paasecond, check_lemma_thetapath, detour_lemma_for, CheckOutcome, Lemma,
    SLACK_TOLERANCE,
};
pub use config::{
    extract_configs, normalize_config, CanonicalConfig, ExtractStats, Extraction, Quad, SixCone,
    Symmetry, Theta6Paths, ThetaFamily,
};
pub use constants::{
    reproduce_tables, stretch_constant, stretch_constant_with, x_bound, y_bound, z_bound,
    StretchCase, StretchConstantReport, TableEntry, GRID_SAMPLES, PUBLISHED_STRETCH_TABLE,
    TABLE_TOLERANCE,
};
pub use harness::{report_rows, run_harness, HarnessOptions, HarnessReport, Tally};
pub use optimize::{golden_section_max, maximize_unit_interval, maximize_unit_square, Maximum2};
pub use recursive::{recursive_theta_path, RecursivePaths};
pub use sampler::{sample_point_set, sample_quad};
