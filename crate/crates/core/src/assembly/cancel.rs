use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::central::{zk_square, SquarePipeline};
use crate::channels::{channel_leading_coefficient, channel_log_coth_term, free_channel_exact, free_channel_integrand, ZetaForm};
use crate::exactalg::{fmt_rational, rational_text, Rational};
use crate::Error;

/// Highest order the symbolic pipeline is asked for.
pub const KMAX_CEILING: u32 = 10;

/// Which channel treatment is paired with the square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelModel {
    /// Adiabatic separation with the effective linear potential.
    Adiabatic,
    /// Free motion along the channel, second order only.
    Free,
}

impl FromStr for ChannelModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "adiabatic" => Ok(ChannelModel::Adiabatic),
            "free" => Ok(ChannelModel::Free),
            _ => Err(Error::InvalidArgument(format!("unknown channel model `{s}` (adiabatic, free)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

/// Square and channel coefficients of K (ħgtQ)^k and what is left of their sum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CancelRow {
    pub order: u32,
    #[serde(with = "rational_text")]
    pub square: Rational,
    #[serde(with = "rational_text")]
    pub channel: Rational,
    #[serde(with = "rational_text")]
    pub residual: Rational,
    /// Q-independent remainder, in K units.
    pub constant: ZetaForm,
    pub constant_value: f64,
    pub verdict: Verdict,
    pub exploratory: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CancelTable {
    pub model: ChannelModel,
    pub kmax: u32,
    pub rows: Vec<CancelRow>,
    /// Every non-exploratory row passed.
    pub all_pass: bool,
}

impl CancelTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("order,square,channel,residual,constant,constant_value,verdict,exploratory\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                r.order,
                fmt_rational(&r.square),
                fmt_rational(&r.channel),
                fmt_rational(&r.residual),
                r.constant,
                r.constant_value,
                r.verdict,
                r.exploratory
            );
        }
        s
    }
}

fn row(order: u32, square: Rational, channel: Rational, constant: ZetaForm, exploratory: bool) -> CancelRow {
    let residual = &square + &channel;
    let verdict = if residual.is_zero() && constant.coefficients.is_empty() { Verdict::Pass } else { Verdict::Fail };
    let constant_value = constant.value();
    CancelRow { order, square, channel, residual, constant, constant_value, verdict, exploratory }
}

/// Exact square + channel sums for k = 2, 4, .., kmax. Order 10 needs `exploratory`
/// and never counts towards `all_pass`.
pub fn cancellation_table(kmax: u32, model: ChannelModel, exploratory: bool) -> Result<CancelTable, Error> {
    if kmax < 2 || kmax % 2 != 0 || kmax > KMAX_CEILING {
        return Err(Error::InvalidArgument(format!("kmax must be even in 2..={KMAX_CEILING}, got {kmax}")));
    }
    if kmax == KMAX_CEILING && !exploratory {
        return Err(Error::InvalidArgument(format!("order {kmax} is exploratory; pass --exploratory")));
    }
    let mut rows = Vec::new();
    match model {
        ChannelModel::Free => {
            if kmax != 2 {
                return Err(Error::InvalidArgument("the free channel model exists only at k = 2".into()));
            }
            let integrand = free_channel_integrand()?;
            let exact = free_channel_exact(&integrand.leading, 2)?;
            rows.push(row(2, zk_square(2)?.coefficient, exact.boundary_coefficient(2), exact.constant, false));
        }
        ChannelModel::Adiabatic => {
            for k in (2..=kmax.min(8)).step_by(2) {
                let sq = zk_square(k as usize)?.coefficient;
                let ch = channel_leading_coefficient(k)?.coefficient;
                rows.push(row(k, sq, ch, ZetaForm::default(), false));
            }
            if kmax == KMAX_CEILING {
                let sq = SquarePipeline::new(KMAX_CEILING as usize)?.dominant(KMAX_CEILING as usize)?.coefficient;
                let ch = channel_log_coth_term(KMAX_CEILING)?.coefficient;
                rows.push(row(KMAX_CEILING, sq, ch, ZetaForm::default(), true));
            }
        }
    }
    let all_pass = rows.iter().filter(|r| !r.exploratory).all(|r| r.verdict == Verdict::Pass);
    Ok(CancelTable { model, kmax, rows, all_pass })
}
