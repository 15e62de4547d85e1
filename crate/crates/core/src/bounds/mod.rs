//! Checkers for the resolvent bound and its variants, random contractions,
//! and a search for near-extremal pairs.

mod checks;
mod report;
mod sampling;
mod search;
mod vonneumann;

pub use checks::{
    cayley_check, check_half_plane_variant, check_minpoly_variant, check_numerical_range_variant,
    check_numerical_range_variant_with, check_power_bounded_variant, check_theorem1, check_theorem1_with,
    entrywise_check, numerical_range_margin, positivity_check, power_bound_profile, CayleyReport, EntrywiseReport,
    MinpolyReport, PositivityReport, PowerBoundProfile, PowerBoundedReport,
};
pub use report::BoundReport;
pub use sampling::{random_contraction, theorem1_z_points, trial_seed, Construction, ContractionSample};
pub use search::{extremality_search, family_grid, theorem1_batch, BatchOutcome, SearchResult, TrialReport};
pub use vonneumann::{polar_unitary_interpolant_check, von_neumann_check, DiskMap, PolarReport, VonNeumannReport};
