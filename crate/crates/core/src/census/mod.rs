//! Counting experiments: polynomial sets, quadratic fields, twist densities and the cubic survey.

pub mod counting;
pub mod density;
pub mod survey;

pub use counting::{count_extensions_direct, count_poly_sets, quad_field_census, quad_field_main_term, PolyCounts};
pub use density::{
    classify_twists, fit_log_exponent, fit_series, local_global_from, local_global_ratio_series, twist_density_from,
    twist_density_series, DensitySeries, LocalGlobalSeries, LogFit, Membership, TwistStatus,
};
pub use survey::{s3_survey, Proportion, SurveyReport};
