use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactalg::{bernoulli, big, int, odd_double_factorial, rat, to_f64, Rational};
use crate::precision::HighPrec;
use crate::series::{AsymptoticSeries, SeriesTerm};
use crate::Error;

use super::imn::odd_harmonic;

/// Σ_{ℓ≤m} 1/(2ℓ-1) against ½[C + ln(4m) + Σ_ℓ (2^{2ℓ-1}-1) B_{2ℓ} / (ℓ (4m²)^ℓ)].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerSum {
    pub m: u32,
    #[serde(with = "crate::exactalg::rational_text")]
    pub exact: Rational,
    pub euler_value: String,
    pub terms_used: u32,
    /// ½|first omitted bracket term|.
    pub first_omitted: f64,
    pub error: f64,
}

/// Bracket term (2^{2ℓ-1}-1) B_{2ℓ} / (ℓ (4m²)^ℓ).
fn euler_term(m: u32, l: u32) -> Rational {
    let two = num_bigint::BigInt::from(2);
    let a = two.pow(2 * l - 1) - 1;
    let four_m2 = num_bigint::BigInt::from(4u64 * m as u64 * m as u64);
    big(&a) * bernoulli(2 * l as usize) / (Rational::from_integer(four_m2.pow(l)) * int(l as i64))
}

/// The Euler form truncated before the first term larger than its predecessor.
/// Returns (value, terms used, ½|first omitted|).
pub fn euler_odd_harmonic_value(m: u32, hp: &mut HighPrec) -> Result<(astro_float::BigFloat, u32, f64), Error> {
    if m == 0 {
        return Err(Error::InvalidArgument("Euler form needs m ≥ 1".into()));
    }
    let mut sum = Rational::zero();
    let mut prev: Option<Rational> = None;
    let mut l = 1;
    let omitted = loop {
        let t = euler_term(m, l);
        if let Some(p) = &prev {
            if t.abs() > p.abs() {
                break t;
            }
        }
        sum += &t;
        prev = Some(t);
        l += 1;
        if l > 10_000 {
            return Err(Error::Numeric(format!("Euler series for m = {m} did not turn around")));
        }
    };
    let c = hp.euler_gamma();
    let four_m = hp.int(4 * m as i64);
    let ln4m = hp.ln(&four_m);
    let s = hp.rational(&sum);
    let bracket = hp.add(&hp.add(&c, &ln4m), &s);
    let half = hp.rational(&rat(1, 2));
    Ok((hp.mul(&half, &bracket), l - 1, 0.5 * to_f64(&omitted.abs())))
}

pub fn euler_odd_harmonic(m: u32, digits: usize) -> Result<EulerSum, Error> {
    let mut hp = HighPrec::with_digits(digits)?;
    let (v, terms_used, first_omitted) = euler_odd_harmonic_value(m, &mut hp)?;
    let exact = odd_harmonic(m);
    let e = hp.rational(&exact);
    let diff = hp.sub(&v, &e);
    let error = hp.to_f64(&diff).abs();
    Ok(EulerSum { m, exact, euler_value: hp.to_decimal(&v), terms_used, first_omitted, error })
}

/// One λ^{2n} term of the central Q-independent series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentralLogTerm {
    pub n: u32,
    /// a_0 (C + ln 2) - Σ_{m≥1} a_m (2m-1)!! [ln(2m) + S_m], Euler route.
    pub payload_euler: f64,
    /// Same with 2 Σ 1/(2ℓ-1) summed exactly.
    pub payload_exact: f64,
    /// Bound on |payload_euler - payload_exact| from the first omitted Euler terms.
    pub euler_error_bound: f64,
    /// Σ a_m (2m-1)!!, the coefficient left on ln(g²Q⁴t).
    #[serde(with = "crate::exactalg::rational_text")]
    pub log_q_coefficient: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentralQSeries {
    pub terms: Vec<CentralLogTerm>,
    pub series: AsymptoticSeries,
}

/// Q-independent central payloads for n = 1..=nmax from the I_mm coefficients
/// `coeffs[n-1][m]` = a_m^{(n)} (from W_{4n}).
pub fn central_q_independent(
    nmax: u32,
    coeffs: &[Vec<Rational>],
    lambda_sq: f64,
    digits: usize,
) -> Result<CentralQSeries, Error> {
    if nmax == 0 || coeffs.len() < nmax as usize {
        return Err(Error::InvalidArgument(format!(
            "need a_m^(n) for n = 1..{nmax}, have {} sets",
            coeffs.len()
        )));
    }
    let mut hp = HighPrec::with_digits(digits)?;
    let c = hp.euler_gamma();
    let ln2 = hp.ln2();
    let c_ln2 = hp.add(&c, &ln2);
    let mut terms = Vec::new();
    for n in 1..=nmax {
        let a = &coeffs[n as usize - 1];
        if a.is_empty() {
            return Err(Error::InvalidArgument(format!("empty coefficient set for n = {n}")));
        }
        let mut euler = hp.zero();
        let mut exact = hp.zero();
        let mut bound = 0.0;
        let mut log_q = Rational::zero();
        for (m, am) in a.iter().enumerate() {
            let m = m as u32;
            let w = am * big(&odd_double_factorial(m));
            log_q += &w;
            let wf = hp.rational(&w);
            // exact: C + ln 2 - 2 Σ 1/(2ℓ-1)
            let h = hp.rational(&(odd_harmonic(m) * int(2)));
            exact = hp.add(&exact, &hp.mul(&wf, &hp.sub(&c_ln2, &h)));
            if m == 0 {
                euler = hp.add(&euler, &hp.mul(&wf, &c_ln2));
            } else {
                let (half_bracket, _, omitted) = euler_odd_harmonic_value(m, &mut hp)?;
                // C + ln 2 - 2·½[C + ln 4m + S] = -(ln 2m + S)
                let two = hp.int(2);
                let inner = hp.sub(&c_ln2, &hp.mul(&two, &half_bracket));
                euler = hp.add(&euler, &hp.mul(&wf, &inner));
                bound += 2.0 * omitted * to_f64(&w).abs();
            }
        }
        terms.push(CentralLogTerm {
            n,
            payload_euler: hp.to_f64(&euler),
            payload_exact: hp.to_f64(&exact),
            euler_error_bound: bound,
            log_q_coefficient: log_q,
        });
    }
    let series = AsymptoticSeries::new(
        terms.iter().map(|t| SeriesTerm::real(t.n, t.payload_euler)).collect(),
        lambda_sq,
    );
    Ok(CentralQSeries { terms, series })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_m1() {
        let e = euler_odd_harmonic(1, 40).unwrap();
        assert_eq!(e.exact, rat(1, 1));
        assert_eq!(e.terms_used, 3);
        assert!(e.error <= e.first_omitted, "{e:?}");
    }

    #[test]
    fn n1_payload_routes_agree() {
        let a = vec![vec![rat(-1, 60), rat(1, 16), rat(-17, 720), rat(1, 576)]];
        let s = central_q_independent(1, &a, 1e-3, 40).unwrap();
        let t = &s.terms[0];
        assert!((t.payload_euler - t.payload_exact).abs() <= t.euler_error_bound);
        assert_eq!(t.log_q_coefficient, rat(1, 960));
        assert!(central_q_independent(2, &a, 1e-3, 40).is_err());
    }
}
