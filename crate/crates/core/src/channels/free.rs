//! Second order in the channels with free longitudinal motion.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::central::{zk_square, ModelParams};
use crate::exactalg::{fmt_rational, int, pow_i, rat, rational_text, to_f64, Rational, Symbol};
use crate::quad::{integrate_with_breaks, QuadOptions};
use crate::wk::{reduce_momenta, wk_sequence, PotentialSpec};
use crate::Error;

use super::hyperbolic::{HypExpr, ZetaForm};
use super::CHANNELS;

/// c a^{pa/2} b^{pb/2} ξ^r f^{(d)}(ξ√(ab)) with f = 1/(2 sinh).
#[derive(Clone, Debug)]
struct RescaledTerm {
    c: Rational,
    pa: i32,
    pb: i32,
    r: i32,
    d: u32,
}

fn diff_a(terms: &[RescaledTerm]) -> Vec<RescaledTerm> {
    let mut out = Vec::new();
    for t in terms {
        if t.pa != 0 {
            out.push(RescaledTerm { c: &t.c * rat(t.pa as i64, 2), pa: t.pa - 2, ..t.clone() });
        }
        out.push(RescaledTerm { c: &t.c / int(2), pa: t.pa - 1, pb: t.pb + 1, r: t.r + 1, d: t.d + 1 });
    }
    out
}

fn diff_b(terms: &[RescaledTerm]) -> Vec<RescaledTerm> {
    let swapped: Vec<RescaledTerm> =
        terms.iter().map(|t| RescaledTerm { pa: t.pb, pb: t.pa, ..t.clone() }).collect();
    diff_a(&swapped).into_iter().map(|t| RescaledTerm { pa: t.pb, pb: t.pa, ..t }).collect()
}

/// ∂_a^j ∂_b^l f(ξ√(ab)) at a = b = 1, as a function of ξ.
pub fn rescaled_trace_derivative(j: u32, l: u32) -> HypExpr {
    let mut terms = vec![RescaledTerm { c: Rational::one(), pa: 0, pb: 0, r: 0, d: 0 }];
    for _ in 0..j {
        terms = diff_a(&terms);
    }
    for _ in 0..l {
        terms = diff_b(&terms);
    }
    terms.into_iter().fold(HypExpr::zero(), |acc, t| {
        let f = HypExpr::csch().nth_derivative(t.d).scale(&(&t.c / int(2)));
        acc.add(&f.mul_xi_pow(t.r))
    })
}

/// Channel integrand split by x-power before the x → ξ change of variables.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeChannelIntegrand {
    /// K-unit integrand over ξ of the terms that carry no λ (all four channels).
    pub leading: HypExpr,
    /// Coefficient of λ² in K units, same normalization.
    pub discarded: HypExpr,
}

/// Builds the channel integrand from W_2 of the quartic potential: p_x is averaged,
/// y² and p_y² become rescaling derivatives of Tr e^{-tH'_y}.
pub fn free_channel_integrand() -> Result<FreeChannelIntegrand, Error> {
    let seq = wk_sequence(&PotentialSpec::quartic_xy(), 2)?;
    let reduced = reduce_momenta(&seq.orders[2], &[Symbol::Px]);
    let mut by_i: BTreeMap<i32, HypExpr> = BTreeMap::new();
    for (m, c) in reduced.terms() {
        if !c.is_real() {
            return Err(Error::Numeric(format!("complex coefficient in reduced W2: {c}")));
        }
        let (ey, epy) = (m.exp(Symbol::Y), m.exp(Symbol::Py));
        if ey % 2 != 0 || epy % 2 != 0 {
            continue;
        }
        let (j, l) = (ey / 2, epy / 2);
        // y^{2j} -> (-2/(tαx²))^j ∂_a^j,  p_y^{2l} -> (-2/t)^l ∂_b^l
        let coef = &c.re * pow_i(&int(-2), j + l);
        let s_alpha = m.exp(Symbol::Alpha) - j;
        let e_t = m.exp(Symbol::T) - j - l;
        let ex = m.exp(Symbol::X) - 2 * j;
        if ex % 2 != 0 {
            return Err(Error::Numeric(format!("odd x power in channel term {m:?}")));
        }
        let i = ex / 2;
        // x^{2i} dx -> (2/(ħgt))^{2i+1} ξ^{2i} dξ; ħ²/(2πħ)·√(2π/t) over K leaves
        // 2^{2i+1} ħ^{2-2i} g^{2s-2i} t^{e-2i}.
        let (h_pow, g_pow, t_pow) = (2 - 2 * i, 2 * s_alpha - 2 * i, e_t - 2 * i);
        let lambda_pow = match (h_pow, g_pow, t_pow) {
            (0, 0, 0) => 0,
            (4, 2, 3) => 2,
            _ => {
                return Err(Error::Numeric(format!(
                    "channel term with ħ^{h_pow} g^{g_pow} t^{t_pow} is not a power of λ"
                )))
            }
        };
        let factor = coef * pow_i(&int(2), 2 * i + 1);
        let piece = rescaled_trace_derivative(j as u32, l as u32).mul_xi_pow(2 * i).scale(&factor);
        let slot = by_i.entry(lambda_pow).or_default();
        *slot = slot.add(&piece);
    }
    let mult = int(CHANNELS as i64);
    Ok(FreeChannelIntegrand {
        leading: by_i.remove(&0).unwrap_or_default().scale(&mult),
        discarded: by_i.remove(&2).unwrap_or_default().scale(&mult),
    })
}

/// Exact pieces of ∫_{ξ₀}^∞ of the leading integrand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreeChannelExact {
    /// ∫_0^∞, a combination of zeta values.
    pub constant: ZetaForm,
    /// −∫_0^{ξ₀} expanded: coefficient of (ħgtQ)^p, keyed by p.
    #[serde(with = "boundary_map")]
    pub boundary: BTreeMap<i32, Rational>,
}

impl FreeChannelExact {
    pub fn boundary_coefficient(&self, p: i32) -> Rational {
        self.boundary.get(&p).cloned().unwrap_or_else(Rational::zero)
    }
}

pub fn free_channel_exact(integrand: &HypExpr, boundary_order: i32) -> Result<FreeChannelExact, Error> {
    let constant = integrand.mellin()?;
    let mut boundary = BTreeMap::new();
    for (p, b) in integrand.laurent(boundary_order - 1) {
        if p < 0 {
            return Err(Error::Numeric(format!("channel integrand has a ξ^{p} pole at the boundary")));
        }
        // −∫_0^{ξ₀} b ξ^p = −b ξ₀^{p+1}/(p+1), ξ₀ = (ħgtQ)/2
        let c = -b / (int(p as i64 + 1) * pow_i(&int(2), p + 1));
        boundary.insert(p + 1, c);
    }
    Ok(FreeChannelExact { constant, boundary })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreeChannelReport {
    pub params: ModelParams,
    pub exact: FreeChannelExact,
    /// Channel contribution in K units, exact pieces evaluated at the parameters.
    pub channel_k_units: f64,
    /// Square second-order dominant term, coefficient of (ħgtQ)².
    #[serde(with = "rational_text")]
    pub square_coefficient: Rational,
    /// Q-dependent remainder after adding the square; zero when the boundary term cancels.
    #[serde(with = "rational_text")]
    pub residual_q2_coefficient: Rational,
    /// Square plus channel in K units.
    pub combined_k_units: f64,
    /// The O(1/(g²tQ⁴)) term dropped from the channel, evaluated at the parameters.
    pub discarded_k_units: f64,
}

/// Channel Z₂ and its sum with the square, for ξ₀ = ħgtQ/2 < 1.
pub fn z2_free_channel(p: &ModelParams) -> Result<FreeChannelReport, Error> {
    let xi0 = p.xi0();
    if xi0 >= 1.0 {
        return Err(Error::Regime(format!("ξ₀ = ħgtQ/2 = {xi0:.4e} ≥ 1 (free channel needs ξ₀ ≪ 1)")));
    }
    let integrand = free_channel_integrand()?;
    let exact = free_channel_exact(&integrand.leading, 6)?;
    let hgtq = p.hgtq();
    let boundary_val: f64 = exact.boundary.iter().map(|(k, c)| to_f64(c) * hgtq.powi(*k)).sum();
    let channel = exact.constant.value() + boundary_val;
    let square = zk_square(2)?.coefficient;
    let residual = &square + exact.boundary_coefficient(2);
    let combined = channel + to_f64(&square) * hgtq * hgtq;
    let disc = &integrand.discarded;
    let tail = integrate_with_breaks(|x| disc.eval(x), xi0, 60.0, &[2.0 * xi0, 1.0], &QuadOptions::default())?;
    Ok(FreeChannelReport {
        params: *p,
        exact,
        channel_k_units: channel,
        square_coefficient: square,
        residual_q2_coefficient: residual,
        combined_k_units: combined,
        discarded_k_units: p.lambda_sq() * tail.value,
    })
}

impl std::fmt::Display for FreeChannelExact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.constant)?;
        for (p, c) in &self.boundary {
            write!(f, " + {} (hgtQ)^{p}", fmt_rational(c))?;
        }
        Ok(())
    }
}

mod boundary_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exactalg::{fmt_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(m: &BTreeMap<i32, Rational>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(m.iter().map(|(k, v)| (k.to_string(), fmt_rational(v))))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<i32, Rational>, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                let k = k.parse().map_err(serde::de::Error::custom)?;
                let v = parse_rational(&v).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{v}`")))?;
                Ok((k, v))
            })
            .collect()
    }
}
