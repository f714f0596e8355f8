use num_traits::Zero;

use crate::exactalg::{bernoulli, factorial, int, pow_i, to_f64, Rational};
use crate::Error;

/// Coefficients of 1/sinh ξ: entry n multiplies ξ^{2n-1}, entry 0 is the 1/ξ pole.
pub fn csch_series(order: usize) -> Vec<Rational> {
    let mut out = vec![int(1)];
    for n in 1..=order as u32 {
        let num = pow_i(&int(2), 2 * n as i32 - 1) - int(1);
        out.push(-int(2) * num * bernoulli(2 * n as usize) / Rational::from_integer(factorial(2 * n)));
    }
    out
}

/// Entry k multiplies u^{2k} in ln coth(u/2) + ln(u/2); entry 0 is zero.
pub fn log_coth_series(order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for k in 1..=order as u32 {
        let num = pow_i(&int(2), 2 * k as i32 - 1) - int(1);
        out.push(num * bernoulli(2 * k as usize) / (int(k as i64) * Rational::from_integer(factorial(2 * k))));
    }
    out
}

pub fn eval_csch_series(coeffs: &[Rational], xi: f64) -> f64 {
    coeffs.iter().enumerate().map(|(n, c)| to_f64(c) * xi.powi(2 * n as i32 - 1)).sum()
}

pub fn eval_log_coth_series(coeffs: &[Rational], u: f64) -> Result<f64, Error> {
    if !(u > 0.0 && u < std::f64::consts::PI) {
        return Err(Error::Regime(format!("ln coth(u/2) series needs 0 < u < π, got u = {u}")));
    }
    Ok(-(u / 2.0).ln() + coeffs.iter().enumerate().skip(1).map(|(k, c)| to_f64(c) * u.powi(2 * k as i32)).sum::<f64>())
}

/// d^d/dξ^d applied term by term to the csch coefficients; returns (power, coefficient) pairs.
pub fn csch_series_derivative(coeffs: &[Rational], d: u32) -> Vec<(i32, Rational)> {
    coeffs
        .iter()
        .enumerate()
        .filter_map(|(n, c)| {
            let mut p = 2 * n as i32 - 1;
            let mut c = c.clone();
            for _ in 0..d {
                c *= int(p as i64);
                p -= 1;
            }
            (!c.is_zero()).then_some((p, c))
        })
        .collect()
}

pub fn eval_power_terms(terms: &[(i32, Rational)], x: f64) -> f64 {
    terms.iter().map(|(p, c)| to_f64(c) * x.powi(*p)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn csch_coefficients() {
        let c = csch_series(3);
        assert_eq!(c[1], rat(-1, 6));
        assert_eq!(c[2], rat(7, 360));
        let c12 = csch_series(12);
        let x: f64 = 0.3;
        assert!((eval_csch_series(&c12, x) - 1.0 / x.sinh()).abs() < 1e-12);
    }

    #[test]
    fn log_coth_coefficients() {
        let c = log_coth_series(14);
        assert_eq!(c[1], rat(1, 12));
        let u: f64 = 0.5;
        let direct = (1.0 / (u / 2.0).tanh()).ln();
        assert!((eval_log_coth_series(&c, u).unwrap() - direct).abs() < 1e-12);
        assert!(eval_log_coth_series(&c, 3.2).is_err());
    }

    #[test]
    fn log_coth_derivative_is_minus_csch() {
        let l = log_coth_series(8);
        let c = csch_series(8);
        // d/du [-ln(u/2) + Σ l_k u^{2k}] = -1/u + Σ 2k l_k u^{2k-1}
        assert_eq!(c[0], int(1));
        for k in 1..=8 {
            assert_eq!(int(2 * k as i64) * &l[k], -c[k].clone());
        }
    }
}
