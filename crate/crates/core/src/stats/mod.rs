//! Statistics of zero sets: arc counts against Poisson, modulus tails,
//! spacings, pair occupancy and eigenvector localization.

mod arcs;
mod localization;
mod tails;

pub use arcs::{arc_counts, correlation, in_arc, poisson_compare, poisson_pmf, ArcSpec, CountHistogram, TV_TRUNCATION};
pub use localization::{
    linear_fit, localization_fit, localization_profile, max_occupancy, occupancy_cap, LocalizationProfile,
    LocalizationSummary, AMPLITUDE_FLOOR,
};
pub use tails::{min_gap, modulus_tail, pair_occupancy, quantile, wilson_interval, PairOccupancy, Z95};
