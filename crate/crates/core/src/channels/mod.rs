//! The four hyperbolic channels |x| > Q or |y| > Q.

mod asymptotic;
mod free;
mod hyperbolic;
mod leading;
mod oscillator;
mod partition;
mod series;

/// Channel multiplicity, applied once when a single-channel result is promoted.
pub const CHANNELS: u32 = 4;

pub use asymptotic::{
    bernoulli_growth_ratio, channel_q_independent, ln_term_magnitude, optimal_index,
    q_independent_double_factorial_form, q_independent_factorial_form, q_independent_from_derivative,
    ChannelQIndependent,
};
pub use free::{
    free_channel_exact, free_channel_integrand, rescaled_trace_derivative, z2_free_channel, FreeChannelExact,
    FreeChannelIntegrand, FreeChannelReport,
};
pub use hyperbolic::{csch_derivative, HypExpr, ZetaForm};
pub use leading::{channel_leading_coefficient, channel_log_coth_term, z_channels_leading, ChannelLeadingTerm};
pub use oscillator::{
    adiabatic_level, mode_power_sum, mode_power_sum_truncated, oscillator_trace, oscillator_trace_truncated,
};
pub use partition::{
    channel_partition, expected_derivative_coefficient, linear_wk_coefficients, ChannelSeries, DerivativeTerm,
};
pub use series::{csch_series, csch_series_derivative, eval_csch_series, eval_log_coth_series, log_coth_series};
