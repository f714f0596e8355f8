use serde::{Deserialize, Serialize};

use crate::exactalg::{bernoulli, factorial, int, odd_double_factorial, pow_i, to_f64, Rational};
use std::f64::consts::{LN_10, PI};

use crate::series::{AsymptoticSeries, SeriesTerm};
use crate::special::{ln_gamma, zeta};
use crate::Error;

use super::partition::DerivativeTerm;
use super::series::{csch_series, csch_series_derivative};

fn big(n: num_bigint::BigInt) -> Rational {
    Rational::from_integer(n)
}

fn odd_power(n: u32) -> Rational {
    pow_i(&int(2), 2 * n as i32 - 1) - int(1)
}

/// 2^{2n}(2^{2n-1}-1)(2n-1)!! / (2^{2(n-1)} n (2n)!) · B_{2n} / 48^n, the λ^{2n} coefficient.
pub fn q_independent_double_factorial_form(n: u32) -> Rational {
    let num = pow_i(&int(2), 2 * n as i32) * odd_power(n) * big(odd_double_factorial(n)) * bernoulli(2 * n as usize);
    let den = pow_i(&int(2), 2 * (n as i32 - 1)) * int(n as i64) * big(factorial(2 * n));
    num / den / pow_i(&int(48), n as i32)
}

/// 4(2^{2n-1}-1)/(2^n n! n) · B_{2n} / 48^n.
pub fn q_independent_factorial_form(n: u32) -> Rational {
    int(4) * odd_power(n) * bernoulli(2 * n as usize)
        / (pow_i(&int(2), n as i32) * big(factorial(n)) * int(n as i64))
        / pow_i(&int(48), n as i32)
}

/// The u⁰ part of −d λ^{2n} ∂^{2n-1} csch(u), per unit λ^{2n}.
pub fn q_independent_from_derivative(term: &DerivativeTerm) -> Rational {
    let n = term.derivative_order as usize;
    let terms = csch_series_derivative(&csch_series(n.div_ceil(2) + 1), term.derivative_order);
    let c0 = terms.into_iter().find(|(p, _)| *p == 0).map(|(_, c)| c).unwrap_or_default();
    -(&term.coefficient * c0)
}

/// |B_{2n}| (2π)^{2n} / (2 (2n)!), which tends to 1.
pub fn bernoulli_growth_ratio(n: u32) -> f64 {
    let r = bernoulli(2 * n as usize) / (int(2) * big(factorial(2 * n)));
    to_f64(&r).abs() * (2.0 * std::f64::consts::PI).powi(2 * n as i32)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelQIndependent {
    /// Exact terms n = 1..nmax.
    pub series: AsymptoticSeries,
    /// Index of the smallest-magnitude term, found past the exact table if needed.
    pub optimal_index: u64,
    pub log10_smallest_term: f64,
    pub log10_first_omitted: f64,
    pub growth_ratios: Vec<(u32, f64)>,
}

/// ln |term n| with |B_{2n}| = 2(2n)! ζ(2n)/(2π)^{2n}, valid for any n.
pub fn ln_term_magnitude(n: u64, lambda_sq: f64) -> f64 {
    let nf = n as f64;
    let ln_b = 2f64.ln() + ln_gamma(2.0 * nf + 1.0) - 2.0 * nf * (2.0 * PI).ln() + zeta_even(n).ln();
    let ln_odd = (2.0 * nf - 1.0) * 2f64.ln() + (-(2f64.powf(1.0 - 2.0 * nf))).ln_1p();
    4f64.ln() + ln_odd + ln_b - nf * 2f64.ln() - ln_gamma(nf + 1.0) - nf.ln() - nf * 48f64.ln() + nf * lambda_sq.ln()
}

fn zeta_even(n: u64) -> f64 {
    if n > 40 {
        1.0
    } else {
        zeta(2 * n as u32)
    }
}

/// First n whose successor is larger in magnitude.
pub fn optimal_index(lambda_sq: f64) -> u64 {
    let mut n = 1u64;
    let mut cur = ln_term_magnitude(1, lambda_sq);
    loop {
        let next = ln_term_magnitude(n + 1, lambda_sq);
        if next > cur {
            return n;
        }
        n += 1;
        cur = next;
    }
}

/// Q-independent channel terms in K units.
pub fn channel_q_independent(nmax: u32, lambda_sq: f64) -> Result<ChannelQIndependent, Error> {
    if nmax < 1 {
        return Err(Error::InvalidArgument("nmax must be at least 1".into()));
    }
    if !(lambda_sq > 0.0 && lambda_sq.is_finite()) {
        return Err(Error::InvalidArgument(format!("λ² must be positive, got {lambda_sq:e}")));
    }
    let terms: Vec<SeriesTerm> = (1..=nmax).map(|n| SeriesTerm::exact(n, q_independent_factorial_form(n))).collect();
    let series = AsymptoticSeries::new(terms, lambda_sq);
    let opt = optimal_index(lambda_sq);
    let growth_ratios = (1..=nmax).map(|n| (n, bernoulli_growth_ratio(n))).collect();
    Ok(ChannelQIndependent {
        series,
        optimal_index: opt,
        log10_smallest_term: ln_term_magnitude(opt, lambda_sq) / LN_10,
        log10_first_omitted: ln_term_magnitude(opt + 1, lambda_sq) / LN_10,
        growth_ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::central::ModelParams;
    use crate::channels::channel_partition;
    use crate::exactalg::rat;

    #[test]
    fn printed_terms() {
        assert_eq!(q_independent_factorial_form(1), rat(1, 144));
        assert_eq!(q_independent_factorial_form(2), rat(-7, 276480));
        assert_eq!(q_independent_factorial_form(1), rat(1, 24) * bernoulli(2));
        assert_eq!(q_independent_factorial_form(2), rat(7, 9216) * bernoulli(4));
        assert_eq!(q_independent_factorial_form(3), rat(31, 3981312) * bernoulli(6));
        assert_eq!(q_independent_factorial_form(4), rat(127, 2038431744) * bernoulli(8));
    }

    #[test]
    fn two_forms_agree() {
        for n in 1..=6 {
            assert_eq!(q_independent_double_factorial_form(n), q_independent_factorial_form(n), "n={n}");
        }
    }

    #[test]
    fn derivative_route_agrees() {
        let p = ModelParams::new(1.0, 1.0, 0.05, 6.0).unwrap();
        let s = channel_partition(8, &p).unwrap();
        for d in &s.derivative_terms {
            assert_eq!(q_independent_from_derivative(d), q_independent_factorial_form(d.lambda_power / 2));
        }
    }

    #[test]
    fn log_magnitudes_match_exact() {
        let q = channel_q_independent(30, 1e-3).unwrap();
        for (i, v) in q.series.term_values().iter().enumerate() {
            let ln = ln_term_magnitude(i as u64 + 1, 1e-3);
            assert!((ln - v.abs().ln()).abs() < 1e-9 * ln.abs().max(1.0), "n={}", i + 1);
        }
    }

    #[test]
    fn asymptotic_shape() {
        // large λ² puts the turn inside the exact table
        let q = channel_q_independent(40, 8.0).unwrap();
        let n = q.series.truncation_index;
        assert!(n > 1 && n < 40);
        assert_eq!(q.optimal_index, n as u64);
        let mags: Vec<f64> = q.series.term_values().iter().map(|v| v.abs()).collect();
        assert!(mags[n as usize] > mags[n as usize - 1]);
        assert!(mags[..n as usize].windows(2).all(|w| w[1] < w[0]));
        let (_, r12) = q.growth_ratios[11];
        assert!((r12 - 1.0).abs() < 0.01);

        let q = channel_q_independent(20, 1e-3).unwrap();
        let opt = q.optimal_index;
        assert!(opt > 1000 && opt < 1_000_000);
        assert!(q.log10_first_omitted > q.log10_smallest_term);
        assert!(ln_term_magnitude(opt - 1, 1e-3) > ln_term_magnitude(opt, 1e-3));
    }
}
