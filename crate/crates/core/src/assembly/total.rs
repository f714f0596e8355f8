use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::central::{Correction, ModelParams, SquarePipeline, Validity};
use crate::channels::{channel_leading_coefficient, channel_partition};
use crate::exactalg::{big, odd_double_factorial, rational_text, to_f64, Rational};
use crate::special::EULER_GAMMA;
use crate::Error;

/// Orders carried by the square pipeline and the channel series.
pub const ASSEMBLY_ORDERS: [u32; 4] = [2, 4, 6, 8];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerRow {
    pub order: u32,
    #[serde(with = "rational_text")]
    pub square: Rational,
    #[serde(with = "rational_text")]
    pub channel: Rational,
    #[serde(with = "rational_text")]
    pub total: Rational,
}

/// Dominant terms of square plus channels through ħ⁸, exact in their
/// Q-dependence, with the full closed-form evaluation alongside.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeadingTotal {
    pub params: ModelParams,
    pub validity: Validity,
    /// Weight of ln(g²Q⁴t) in the square's TF term.
    #[serde(with = "rational_text")]
    pub square_log_weight: Rational,
    /// Weight of ln(4/(ħgtQ)) from the channels.
    #[serde(with = "rational_text")]
    pub channel_log_weight: Rational,
    /// Net coefficient of ln Q.
    #[serde(with = "rational_text")]
    pub ln_q_coefficient: Rational,
    pub powers: Vec<PowerRow>,
    /// Q-free part of the dominant total, K units.
    pub constant_k_units: f64,
    /// Dominant total at this Q, K units.
    pub dominant_k_units: f64,
    pub dominant_absolute: f64,
    /// Every W_k entry and the full channel series, K units.
    pub numeric_k_units: f64,
    pub numeric_absolute: f64,
    /// (g²tQ⁴)^{-1}.
    pub suppression: f64,
}

impl LeadingTotal {
    /// Every ħ^k and ln Q coefficient cancels exactly.
    pub fn q_independent(&self) -> bool {
        use num_traits::Zero;
        self.ln_q_coefficient.is_zero() && self.powers.iter().all(|r| r.total.is_zero())
    }
}

/// λ² = g²ħ⁴t³ < 1, the expansion parameter of the improved TF term.
pub fn require_small_lambda(p: &ModelParams) -> Result<(), Error> {
    let l = p.lambda_sq();
    if l >= 1.0 {
        return Err(Error::Regime(format!("λ² = g²ħ⁴t³ = {l:.4e} ≥ 1 (semiclassical expansion parameter)")));
    }
    Ok(())
}

fn square_log_weight(pipe: &SquarePipeline) -> Result<Rational, Error> {
    let d = pipe.decomposition(0)?;
    let mut w = Rational::from_integer(0.into());
    for e in &d.entries {
        if !(e.is_log() && e.m == 0 && e.g_pow == 0 && e.t_pow == -1) {
            return Err(Error::Numeric(format!("W_0 entry {e} is not the bare I_00 term")));
        }
        w += &e.coefficient * big(&odd_double_factorial(e.m));
    }
    Ok(w)
}

pub fn leading_total(p: &ModelParams) -> Result<LeadingTotal, Error> {
    p.require_adiabatic()?;
    p.require_series()?;
    require_small_lambda(p)?;
    let pipe = SquarePipeline::shared();
    let sw = square_log_weight(pipe)?;
    let c0 = channel_leading_coefficient(0)?.coefficient;
    // ln(g²Q⁴t) carries 4 ln Q, ln(4/(ħgtQ)) carries -ln Q
    let ln_q_coefficient = &sw * Rational::from_integer(4.into()) - &c0;
    let mut powers = Vec::new();
    for k in ASSEMBLY_ORDERS {
        let square = pipe.dominant(k as usize)?.coefficient;
        let channel = channel_leading_coefficient(k)?.coefficient;
        let total = &square + &channel;
        powers.push(PowerRow { order: k, square, channel, total });
    }
    let (g, h, t, q) = (p.g, p.hbar, p.t, p.q);
    let constant_k_units =
        to_f64(&sw) * ((g * g * t).ln() + EULER_GAMMA + LN_2) + to_f64(&c0) * (4.0 / (h * g * t)).ln();
    let x = p.hgtq();
    let dominant_k_units = constant_k_units
        + to_f64(&ln_q_coefficient) * q.ln()
        + powers.iter().map(|r| to_f64(&r.total) * x.powi(r.order as i32)).sum::<f64>();
    let mut numeric_k_units = channel_partition(8, p)?.value();
    for k in (0..=8).step_by(2) {
        let (dom, sub) = pipe.numeric_k_units(k, p, Correction::Off)?;
        numeric_k_units += dom + sub;
    }
    let kp = p.k_prefactor();
    Ok(LeadingTotal {
        params: *p,
        validity: p.validity(),
        square_log_weight: sw,
        channel_log_weight: c0,
        ln_q_coefficient,
        powers,
        constant_k_units,
        dominant_k_units,
        dominant_absolute: kp * dominant_k_units,
        numeric_k_units,
        numeric_absolute: kp * numeric_k_units,
        suppression: 1.0 / p.adiabatic_parameter(),
    })
}
