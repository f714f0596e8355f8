//! Square plus channels: the order-by-order cancellation table, the
//! Q-independent leading total, and Z(t) in each evaluation mode.

mod cancel;
mod total;
mod zmode;

pub use cancel::{cancellation_table, CancelRow, CancelTable, ChannelModel, Verdict, KMAX_CEILING};
pub use total::{leading_total, require_small_lambda, LeadingTotal, PowerRow, ASSEMBLY_ORDERS};
pub use zmode::{
    default_spectral_bases, natural_scales, z_compare, z_spectral_assembled, z_tf, z_with_asymptotic, AsymptoticTotal,
    CompareRow, Comparison, SpectralZ, TfValue, ZMode, CHANNEL_SERIES_TERMS, COMPARE_MAX_TAIL,
};
