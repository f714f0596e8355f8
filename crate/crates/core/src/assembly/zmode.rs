use std::f64::consts::LN_2;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::central::{central_q_independent, CentralQSeries, ModelParams, SquarePipeline};
use crate::channels::{channel_q_independent, ChannelQIndependent};
use crate::series::AsymptoticSeries;
use crate::special::EULER_GAMMA;
use crate::spectral::{z_spectral_converged, BasisKind, ConvergedZ, ZSpectral};
use crate::wk::log_coefficients;
use crate::Error;

use super::total::{leading_total, require_small_lambda, LeadingTotal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZMode {
    Tf,
    Leading,
    WithAsymptotic,
    Spectral,
    Compare,
}

impl FromStr for ZMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "tf" => ZMode::Tf,
            "leading" => ZMode::Leading,
            "with-asymptotic" => ZMode::WithAsymptotic,
            "spectral" => ZMode::Spectral,
            "compare" => ZMode::Compare,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown mode `{s}` (tf, leading, with-asymptotic, spectral, compare)"
                )))
            }
        })
    }
}

/// K [ln(1/λ²) + 9 ln 2 + C].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TfValue {
    pub lambda_sq: f64,
    pub k_prefactor: f64,
    pub k_units: f64,
    pub absolute: f64,
}

pub fn z_tf(p: &ModelParams) -> Result<TfValue, Error> {
    require_small_lambda(p)?;
    let l = p.lambda_sq();
    let k_units = (1.0 / l).ln() + 9.0 * LN_2 + EULER_GAMMA;
    let kp = p.k_prefactor();
    Ok(TfValue { lambda_sq: l, k_prefactor: kp, k_units, absolute: kp * k_units })
}

/// Leading total plus the optimally truncated λ^{2n} series of both regions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticTotal {
    pub leading: LeadingTotal,
    pub channel: ChannelQIndependent,
    pub central: CentralQSeries,
    /// Σ λ^{2n} (Σ a_m (2m-1)!!) ln(g²Q⁴t) over the included central orders.
    pub central_log_q: f64,
    pub k_units: f64,
    pub absolute: f64,
    /// Sum of first omitted terms, K units.
    pub error_estimate: f64,
}

/// Exact channel coefficients carried into the with-asymptotic sum.
pub const CHANNEL_SERIES_TERMS: u32 = 8;

pub fn z_with_asymptotic(p: &ModelParams, digits: usize) -> Result<AsymptoticTotal, Error> {
    let leading = leading_total(p)?;
    let l2 = p.lambda_sq();
    let channel = channel_q_independent(CHANNEL_SERIES_TERMS, l2)?;
    let pipe = SquarePipeline::shared();
    let nmax = (pipe.kmax() / 4) as u32;
    let coeffs = (1..=nmax)
        .map(|n| log_coefficients(pipe.decomposition(4 * n as usize)?, n))
        .collect::<Result<Vec<_>, _>>()?;
    let central = central_q_independent(nmax, &coeffs, l2, digits)?;
    let ln_arg = p.adiabatic_parameter().ln();
    let central_log_q: f64 = central
        .terms
        .iter()
        .filter(|t| t.n <= central.series.truncation_index)
        .map(|t| crate::exactalg::to_f64(&t.log_q_coefficient) * l2.powi(t.n as i32) * ln_arg)
        .sum();
    let k_units =
        leading.dominant_k_units + channel.series.partial_sum + central.series.partial_sum + central_log_q;
    let error_estimate = tail_estimate(&channel.series) + tail_estimate(&central.series);
    let absolute = p.k_prefactor() * k_units;
    Ok(AsymptoticTotal { leading, channel, central, central_log_q, k_units, absolute, error_estimate })
}

/// First omitted term, or the last kept one when the table ends before the turn.
fn tail_estimate(s: &AsymptoticSeries) -> f64 {
    s.first_omitted
        .or_else(|| (s.truncation_index as usize).checked_sub(1).and_then(|i| s.term_values().get(i).map(|v| v.abs())))
        .unwrap_or(0.0)
}

/// Natural length (ħ/g)^{1/3} and energy ħ^{4/3} g^{2/3} of p²/2 + g²x²y²/2.
pub fn natural_scales(g: f64, hbar: f64) -> (f64, f64) {
    ((hbar / g).cbrt(), hbar.powf(4.0 / 3.0) * g.powf(2.0 / 3.0))
}

/// Two sinc grids, in natural units (spacing, extent, potential cut):
/// (0.17, 70, 200) and (0.15, 75, 250).
pub fn default_spectral_bases(g: f64, hbar: f64) -> Vec<BasisKind> {
    let (len, en) = natural_scales(g, hbar);
    [(0.17, 70.0, 200.0), (0.15, 75.0, 250.0)]
        .into_iter()
        .map(|(h, l, v)| BasisKind::Grid { spacing: h * len, extent: l * len, vcut: v * en })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralZ {
    pub g: f64,
    pub hbar: f64,
    pub t: f64,
    pub converged: ConvergedZ,
    /// Relative agreement required between the two bases.
    pub gate: f64,
    pub gate_passed: bool,
    pub best: ZSpectral,
    pub tail_fraction: f64,
}

pub fn z_spectral_assembled(
    g: f64,
    hbar: f64,
    t: f64,
    bases: &[BasisKind],
    budget: usize,
    gate: f64,
) -> Result<SpectralZ, Error> {
    let converged = z_spectral_converged(g, hbar, t, bases, budget)?;
    let best = converged.best();
    Ok(SpectralZ {
        g,
        hbar,
        t,
        gate,
        gate_passed: converged.converged(gate),
        tail_fraction: best.tail_fraction(),
        best,
        converged,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub method: String,
    pub absolute: f64,
    pub error_band: f64,
    /// (semiclassical - spectral) / spectral.
    pub relative_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub spectral: SpectralZ,
    pub rows: Vec<CompareRow>,
    /// Methods left out, with the reason.
    pub skipped: Vec<(String, String)>,
    pub tolerance: f64,
    /// Gate passed, tail under 1 %, and the TF row within tolerance.
    pub within_tolerance: bool,
}

/// Largest spectral tail fraction accepted for a comparison.
pub const COMPARE_MAX_TAIL: f64 = 0.01;

pub fn z_compare(p: &ModelParams, spectral: SpectralZ, tolerance: f64, digits: usize) -> Result<Comparison, Error> {
    let zs = spectral.best.value;
    let dev = |v: f64| (v - zs) / zs;
    let tf = z_tf(p)?;
    let mut rows = vec![CompareRow {
        method: "tf".into(),
        absolute: tf.absolute,
        error_band: 0.0,
        relative_deviation: dev(tf.absolute),
    }];
    let mut skipped = Vec::new();
    match leading_total(p) {
        Ok(l) => {
            rows.push(CompareRow {
                method: "leading".into(),
                absolute: l.dominant_absolute,
                error_band: 0.0,
                relative_deviation: dev(l.dominant_absolute),
            });
            let a = z_with_asymptotic(p, digits)?;
            rows.push(CompareRow {
                method: "with-asymptotic".into(),
                absolute: a.absolute,
                error_band: p.k_prefactor() * a.error_estimate,
                relative_deviation: dev(a.absolute),
            });
        }
        Err(Error::Regime(why)) => skipped.push(("leading".into(), why)),
        Err(e) => return Err(e),
    }
    let within_tolerance = spectral.gate_passed
        && spectral.tail_fraction < COMPARE_MAX_TAIL
        && rows[0].relative_deviation.abs() <= tolerance;
    Ok(Comparison { spectral, rows, skipped, tolerance, within_tolerance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::to_f64;

    #[test]
    fn tf_example() {
        // g = ħ = 1, λ² = 10⁻³
        let p = ModelParams::new(1.0, 1.0, 0.1, 10.0).unwrap();
        let z = z_tf(&p).unwrap();
        assert!((z.lambda_sq - 1e-3).abs() < 1e-15);
        let want = 1000f64.ln() + 9.0 * LN_2 + EULER_GAMMA;
        assert!((z.k_units - want).abs() < 1e-10);
        assert!(z_tf(&ModelParams::new(1.0, 1.0, 1.5, 10.0).unwrap()).is_err());
    }

    #[test]
    fn mode_names() {
        for (s, m) in [("tf", ZMode::Tf), ("with-asymptotic", ZMode::WithAsymptotic), ("compare", ZMode::Compare)] {
            assert_eq!(s.parse::<ZMode>().unwrap(), m);
            assert_eq!(serde_json::to_string(&m).unwrap(), format!("\"{s}\""));
        }
        assert!("exact".parse::<ZMode>().is_err());
    }

    #[test]
    fn asymptotic_sum_matches_closed_forms() {
        // the λ² payloads of the central series against the I_mm entries of W_4
        let p = ModelParams::new(1.0, 1.0, 0.01, 10.0).unwrap();
        let a = z_with_asymptotic(&p, 40).unwrap();
        let pipe = SquarePipeline::shared();
        let d = pipe.decomposition(4).unwrap();
        let direct: f64 = d
            .entries
            .iter()
            .filter(|e| e.is_log())
            .map(|e| crate::central::entry_k_units(e, 4, &p, crate::central::Correction::Off).unwrap())
            .sum();
        let t1 = &a.central.terms[0];
        let series = p.lambda_sq() * (t1.payload_exact + to_f64(&t1.log_q_coefficient) * p.adiabatic_parameter().ln());
        assert!((direct - series).abs() < 1e-12 * direct.abs().max(1e-12), "{direct:e} vs {series:e}");
        assert!(a.error_estimate < 1e-6);
        assert!((a.k_units - a.leading.dominant_k_units).abs() < 1e-4);
    }

    #[test]
    fn scales() {
        let (l, e) = natural_scales(8.0, 1.0);
        assert!((l - 0.5).abs() < 1e-15);
        assert!((e - 4.0).abs() < 1e-12);
    }
}
