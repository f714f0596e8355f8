use serde::{Deserialize, Serialize};

use crate::central::ModelParams;
use crate::exactalg::{int, pow_i, rational_text, to_f64, Rational, Symbol};
use crate::wk::{reduce_momentum, wk_sequence, PotentialSpec};
use crate::Error;

use super::hyperbolic::{csch_derivative, HypExpr};
use super::oscillator::mode_power_sum;
use super::series::{csch_series, csch_series_derivative, eval_power_terms};
use super::CHANNELS;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeTerm {
    pub lambda_power: u32,
    /// Multiplies −λ^{2n} ∂_ξ^{2n-1} csch ξ at ξ = u, in K units.
    #[serde(with = "rational_text")]
    pub coefficient: Rational,
    pub derivative_order: u32,
    /// Multiplies ħ^{2n} t^n ∂_x^{2n} acting on 1/(2 sinh ξ) inside one channel.
    #[serde(with = "rational_text")]
    pub x_space_coefficient: Rational,
}

/// K[L ln coth(u/2) − Σ d_n λ^{2n} ∂^{2n-1} csch(u)].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelSeries {
    #[serde(with = "rational_text")]
    pub log_term: Rational,
    pub derivative_terms: Vec<DerivativeTerm>,
    pub u: f64,
    pub lambda_sq: f64,
    /// Number of channels already folded into the coefficients.
    pub multiplicity: u32,
}

impl ChannelSeries {
    /// Folds in the four channels; refuses to do it twice.
    fn all_channels(mut self) -> Self {
        assert_eq!(self.multiplicity, 1, "channel multiplicity applied twice");
        let m = int(CHANNELS as i64);
        self.log_term *= &m;
        for d in &mut self.derivative_terms {
            d.coefficient *= &m;
        }
        self.multiplicity = CHANNELS;
        self
    }

    /// Closed-form derivatives of csch.
    pub fn value(&self) -> f64 {
        let u = self.u;
        let log = to_f64(&self.log_term) * (1.0 / (u / 2.0).tanh()).ln();
        log - self
            .derivative_terms
            .iter()
            .map(|d| {
                to_f64(&d.coefficient)
                    * self.lambda_sq.powi(d.lambda_power as i32 / 2)
                    * csch_derivative(d.derivative_order).eval(u)
            })
            .sum::<f64>()
    }

    /// Same sum with each derivative taken term by term from the Bernoulli series.
    pub fn value_by_series(&self, order: usize) -> f64 {
        let u = self.u;
        let coeffs = csch_series(order);
        let log = to_f64(&self.log_term) * (1.0 / (u / 2.0).tanh()).ln();
        log - self
            .derivative_terms
            .iter()
            .map(|d| {
                let terms = csch_series_derivative(&coeffs, d.derivative_order);
                to_f64(&d.coefficient) * self.lambda_sq.powi(d.lambda_power as i32 / 2) * eval_power_terms(&terms, u)
            })
            .sum::<f64>()
    }
}

/// ħ^{2n} t^{3n} coefficients of the momentum-averaged linear-potential W_{2n} per unit α^{2n}.
pub fn linear_wk_coefficients(kmax: usize) -> Result<Vec<Rational>, Error> {
    let seq = wk_sequence(&PotentialSpec::linear_alpha(), kmax)?;
    let mut out = Vec::new();
    for n in 1..=kmax / 2 {
        let red = reduce_momentum(&seq.orders[2 * n], 1);
        let mut it = red.terms();
        let (m, c) = it.next().ok_or_else(|| Error::Numeric(format!("W{} reduces to zero", 2 * n)))?;
        let n_i = n as i32;
        if it.next().is_some()
            || m.exp(Symbol::Alpha) != 2 * n_i
            || m.exp(Symbol::T) != 3 * n_i
            || m.exp(Symbol::X) != 0
            || !c.is_real()
        {
            return Err(Error::Numeric(format!("W{} does not reduce to c α^{} t^{}: {red}", 2 * n, 2 * n, 3 * n)));
        }
        out.push(c.re.clone());
    }
    Ok(out)
}

/// Per-mode W_{2n} gives c α^{2n} t^{3n}; the mode sum Σ(n+½)^{2n} e^{-(2n+1)ξ}
/// is a derivative of 1/(2 sinh ξ), and ∫_Q^∞ dx lowers the order by one.
pub fn channel_partition(kmax: usize, p: &ModelParams) -> Result<ChannelSeries, Error> {
    if !matches!(kmax, 0 | 2 | 4 | 6 | 8) {
        return Err(Error::InvalidArgument(format!("channel series supports kmax in {{0,2,4,6,8}}, got {kmax}")));
    }
    p.require_series()?;
    let cs = linear_wk_coefficients(kmax)?;
    let mut terms = Vec::new();
    for (idx, c) in cs.into_iter().enumerate() {
        let n = idx as u32 + 1;
        // Σ_n a_n^{2n} e^{-a_n x t}: closed form through mode_power_sum, whose
        // leading factor (−½)^{2n}/2 against ½ csch gives 4^{-n}.
        let mode = mode_power_sum(2 * n);
        let half_csch = csch_derivative(2 * n).scale(&Rational::new(1.into(), 2.into()));
        let ratio = mode_ratio(&mode, &half_csch)?;
        // 2K c λ^{2n} ∫_u^∞ S dξ = −2K c λ^{2n} ratio ½ ∂^{2n-1} csch(u)
        let coefficient = &c * &ratio;
        terms.push(DerivativeTerm { lambda_power: 2 * n, coefficient, derivative_order: 2 * n - 1, x_space_coefficient: c });
    }
    let single = ChannelSeries { log_term: int(1), derivative_terms: terms, u: p.u(), lambda_sq: p.lambda_sq(), multiplicity: 1 };
    Ok(single.all_channels())
}

/// r with a = r·b, for expressions known to be proportional.
fn mode_ratio(a: &HypExpr, b: &HypExpr) -> Result<Rational, Error> {
    let (k, cb) = b.terms().next().ok_or_else(|| Error::Numeric("empty expression".into()))?;
    let ca = a.terms().find(|(ka, _)| *ka == k).map(|(_, c)| c.clone()).unwrap_or_default();
    let r = ca / cb;
    if *a != b.scale(&r) {
        return Err(Error::Numeric("mode sum is not a multiple of the csch derivative".into()));
    }
    Ok(r)
}

/// d_n for n = 1..4: 1/(2³·3), 1/(2⁹·3²), 1/(2¹⁴·3⁴), 1/(2²¹·3⁵).
pub fn expected_derivative_coefficient(n: u32) -> Option<Rational> {
    let (a, b) = match n {
        1 => (3, 1),
        2 => (9, 2),
        3 => (14, 4),
        4 => (21, 5),
        _ => return None,
    };
    Some((pow_i(&int(2), a) * pow_i(&int(3), b)).recip())
}
