use std::f64::consts::PI;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactalg::{big, odd_double_factorial, rat, to_f64, Rational};
use crate::wk::{quartic_decomposition, wk_sequence, ImnDecomposition, ImnEntry, PotentialSpec, WkSequence};
use crate::Error;

use super::imn::{imn_value, Correction};
use super::params::ModelParams;

/// A contribution c · K (ħgtQ)^k, possibly scaled by a suppression factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentralTerm {
    pub order: usize,
    #[serde(with = "crate::exactalg::rational_text")]
    pub coefficient: Rational,
    pub subdominant: bool,
    /// (g²tQ⁴)^{-ℓ} for subdominant terms, 1 otherwise.
    pub suppression: f64,
    /// Coefficients a_m of I_mm entries at this order, if any.
    pub log_payload: Vec<LogEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogEntry {
    pub m: u32,
    #[serde(with = "crate::exactalg::rational_text")]
    pub coefficient: Rational,
}

/// Flat JSON form of a central term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentralTermRecord {
    pub order: usize,
    pub coefficient_num: String,
    pub coefficient_den: String,
    #[serde(rename = "power_of_hgtQ")]
    pub power_of_hgtq: usize,
    #[serde(rename = "K_units")]
    pub k_units: bool,
    pub subdominant: bool,
}

impl CentralTerm {
    /// Value in units of K.
    pub fn value_k_units(&self, p: &ModelParams) -> f64 {
        to_f64(&self.coefficient) * p.hgtq().powi(self.order as i32) * self.suppression
    }

    pub fn record(&self) -> CentralTermRecord {
        CentralTermRecord {
            order: self.order,
            coefficient_num: self.coefficient.numer().to_string(),
            coefficient_den: self.coefficient.denom().to_string(),
            power_of_hgtq: self.order,
            k_units: true,
            subdominant: self.subdominant,
        }
    }
}

/// Quartic W_0..W_kmax with their I_mn decompositions.
pub struct SquarePipeline {
    seq: WkSequence,
    decomps: Vec<ImnDecomposition>,
}

impl SquarePipeline {
    pub fn new(kmax: usize) -> Result<Self, Error> {
        let seq = wk_sequence(&PotentialSpec::quartic_xy(), kmax)?;
        let decomps = (0..=kmax).map(|k| quartic_decomposition(&seq, k)).collect::<Result<_, _>>()?;
        Ok(SquarePipeline { seq, decomps })
    }

    /// Shared pipeline through W_8.
    pub fn shared() -> &'static SquarePipeline {
        static P: OnceLock<SquarePipeline> = OnceLock::new();
        P.get_or_init(|| SquarePipeline::new(8).expect("quartic pipeline through W_8"))
    }

    pub fn sequence(&self) -> &WkSequence {
        &self.seq
    }

    pub fn kmax(&self) -> usize {
        self.decomps.len() - 1
    }

    pub fn decomposition(&self, k: usize) -> Result<&ImnDecomposition, Error> {
        self.decomps
            .get(k)
            .ok_or_else(|| Error::InvalidArgument(format!("pipeline stops at W_{}", self.kmax())))
    }

    /// Exact dominant coefficient of K (ħgtQ)^k: Σ c (2n-1)!!/(m-n) over m - n = k/2.
    pub fn dominant(&self, k: usize) -> Result<CentralTerm, Error> {
        if k == 0 || k % 2 != 0 {
            return Err(Error::InvalidArgument(format!("order {k}: need even k ≥ 2")));
        }
        let d = self.decomposition(k)?;
        let mut sum = Rational::zero();
        for e in d.leading() {
            sum += dominant_ratio(e, k)?;
        }
        let log_payload = d
            .entries
            .iter()
            .filter(|e| e.is_log())
            .map(|e| LogEntry { m: e.m, coefficient: e.coefficient.clone() })
            .collect();
        Ok(CentralTerm { order: k, coefficient: sum, subdominant: false, suppression: 1.0, log_payload })
    }

    /// Every entry of W_k evaluated through the closed forms, in K units.
    /// Returns (dominant, subdominant) parts.
    pub fn numeric_k_units(&self, k: usize, p: &ModelParams, corr: Correction) -> Result<(f64, f64), Error> {
        let d = self.decomposition(k)?;
        let (mut dom, mut sub) = (0.0, 0.0);
        for e in &d.entries {
            let v = entry_k_units(e, k, p, corr)?;
            if d.is_subdominant(e) {
                sub += v;
            } else {
                dom += v;
            }
        }
        Ok((dom, sub))
    }
}

/// c (2n-1)!!/(m-n) for a dominant entry; checks that g, t and Q drop out.
fn dominant_ratio(e: &ImnEntry, k: usize) -> Result<Rational, Error> {
    let (m, n, k) = (e.m as i32, e.n as i32, k as i32);
    let g_exp = e.g_pow - 2 * n - k;
    let t_exp = e.t_pow - n + 1 - k;
    let q_exp = 2 * (m - n) - k;
    if g_exp != 0 || t_exp != 0 || q_exp != 0 {
        return Err(Error::InvalidArgument(format!(
            "entry {e} leaves g^{g_exp} t^{t_exp} Q^{q_exp} relative to (ħgtQ)^{k}"
        )));
    }
    Ok(&e.coefficient * big(&odd_double_factorial(e.n)) * rat(1, (m - n) as i64))
}

/// ħ^{k-2}/(2π) c g^{g_pow} t^{t_pow} I_mn, divided by K.
pub fn entry_k_units(e: &ImnEntry, k: usize, p: &ModelParams, corr: Correction) -> Result<f64, Error> {
    let i = imn_value(e.m, e.n, p, corr)?;
    let z = p.hbar.powi(k as i32 - 2) / (2.0 * PI)
        * to_f64(&e.coefficient)
        * p.g.powi(e.g_pow)
        * p.t.powi(e.t_pow)
        * i;
    Ok(z / p.k_prefactor())
}

/// Z_k^{[-Q,Q]} as an exact multiple of K (ħgtQ)^k, for k ∈ {2, 4, 6, 8}.
pub fn zk_square(k: usize) -> Result<CentralTerm, Error> {
    if !matches!(k, 2 | 4 | 6 | 8) {
        return Err(Error::InvalidArgument(format!("zk_square supports k = 2, 4, 6, 8, not {k}")));
    }
    SquarePipeline::shared().dominant(k)
}

/// Order-of-magnitude estimate of a subdominant entry with m - n = k/2 - 2ℓ:
/// K (g²tQ⁴)^{-ℓ} (ħgtQ)^k (2n-1)!!/(2^{n-1}(k-4ℓ)); ℓ = 0 gives (2n-1)!!/2^{n-1}.
pub fn zk_square_subdominant(k: usize, ell: u32, m: u32, n: u32, p: &ModelParams) -> Result<CentralTerm, Error> {
    let (ki, li) = (k as i64, ell as i64);
    if k % 2 != 0 || m < n || (m - n) as i64 != ki / 2 - 2 * li || (ell > 0 && ki - 4 * li <= 0) {
        return Err(Error::InvalidArgument(format!("inconsistent (k, ℓ, m, n) = ({k}, {ell}, {m}, {n})")));
    }
    let two_pow = if n == 0 { rat(1, 2) } else { Rational::from_integer(num_bigint::BigInt::from(1u64 << (n - 1))) };
    let mut c = big(&odd_double_factorial(n)) / two_pow;
    if ell > 0 {
        c /= rat(ki - 4 * li, 1);
    }
    Ok(CentralTerm {
        order: k,
        coefficient: c,
        subdominant: ell > 0,
        suppression: p.adiabatic_parameter().powi(-(ell as i32)),
        log_payload: Vec::new(),
    })
}
