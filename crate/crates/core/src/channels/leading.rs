use serde::{Deserialize, Serialize};

use crate::central::ModelParams;
use crate::exactalg::{int, pow_i, rational_text, to_f64, Rational};
use crate::Error;

use super::series::log_coth_series;
use super::CHANNELS;

/// Dominant channel term at order ħ^k: c (ħgtQ)^k, or c ln(4/(ħgtQ)) at k = 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelLeadingTerm {
    pub order: u32,
    #[serde(with = "rational_text")]
    pub coefficient: Rational,
    pub is_log: bool,
}

impl ChannelLeadingTerm {
    pub fn value_k_units(&self, p: &ModelParams) -> f64 {
        let x = p.hgtq();
        if self.is_log {
            to_f64(&self.coefficient) * (4.0 / x).ln()
        } else {
            to_f64(&self.coefficient) * x.powi(self.order as i32)
        }
    }
}

/// Expansion of 4 ln coth(u/2) with u = ħgtQ/2, read off at (ħgtQ)^k.
pub fn channel_leading_coefficient(k: u32) -> Result<ChannelLeadingTerm, Error> {
    if !matches!(k, 0 | 2 | 4 | 6 | 8) {
        return Err(Error::InvalidArgument(format!("channel leading term supports k in {{0,2,4,6,8}}, got {k}")));
    }
    channel_log_coth_term(k)
}

/// Same read-off for any even k; orders past 8 are exploratory.
pub fn channel_log_coth_term(k: u32) -> Result<ChannelLeadingTerm, Error> {
    if k % 2 != 0 {
        return Err(Error::InvalidArgument(format!("channel terms exist only at even k, got {k}")));
    }
    let mult = int(CHANNELS as i64);
    if k == 0 {
        // −4 ln(u/2) = 4 ln(4/(ħgtQ))
        return Ok(ChannelLeadingTerm { order: 0, coefficient: mult, is_log: true });
    }
    let j = (k / 2) as usize;
    let l = log_coth_series(j);
    let coefficient = mult * &l[j] / pow_i(&int(2), k as i32);
    Ok(ChannelLeadingTerm { order: k, coefficient, is_log: false })
}

pub fn z_channels_leading(k: u32, p: &ModelParams) -> Result<(ChannelLeadingTerm, f64), Error> {
    p.require_series()?;
    let term = channel_leading_coefficient(k)?;
    let v = term.value_k_units(p);
    Ok((term, v))
}
