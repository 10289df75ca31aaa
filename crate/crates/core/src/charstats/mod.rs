//! Statistics over character families and primitive-root powers: mean
//! values of character sums against doubling-aware envelopes, the
//! double-sum moment behind them, zero-density aggregation over
//! subgroups, and the window/variance/pair-correlation statistics of
//! g^n mod q.

mod hb;
mod mean_value;
mod spacing;
mod zerodensity;

pub use hb::{hb_double_sum, DoubleSumReport};
pub use mean_value::{mean_value, MeanValueReport};
pub use spacing::{
    pair_correlation, window_count, window_variance, window_variance_brute,
    PairCorrelationReport,
};
pub use zerodensity::{zero_density_aggregate, zero_density_envelope, ZeroDensityAggregate};
