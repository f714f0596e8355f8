use crate::central::ModelParams;
use crate::exactalg::{int, pow_i, rat};
use crate::Error;

use super::hyperbolic::HypExpr;

/// Tr e^{-tH_y} = 1/(2 sinh ξ) for the transverse oscillator, ξ = ħgtx/2.
pub fn oscillator_trace(xi: f64) -> Result<f64, Error> {
    if !(xi > 0.0) {
        return Err(Error::InvalidArgument(format!("oscillator trace needs ξ > 0, got {xi}")));
    }
    Ok(0.5 / xi.sinh())
}

/// Σ_{n<modes} e^{-(2n+1)ξ}.
pub fn oscillator_trace_truncated(xi: f64, modes: usize) -> f64 {
    (0..modes).map(|n| (-(2.0 * n as f64 + 1.0) * xi).exp()).sum()
}

/// (n+½)ħgx.
pub fn adiabatic_level(n: u32, x: f64, p: &ModelParams) -> f64 {
    (n as f64 + 0.5) * p.hbar * p.g * x
}

/// Σ_n (n+½)^j e^{-(2n+1)ξ} = (-½ ∂_ξ)^j 1/(2 sinh ξ).
pub fn mode_power_sum(j: u32) -> HypExpr {
    HypExpr::csch().nth_derivative(j).scale(&(pow_i(&rat(-1, 2), j as i32) / int(2)))
}

pub fn mode_power_sum_truncated(j: u32, xi: f64, modes: usize) -> f64 {
    (0..modes)
        .map(|n| {
            let e = n as f64 + 0.5;
            e.powi(j as i32) * (-2.0 * e * xi).exp()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, QuadOptions};

    #[test]
    fn trace_values() {
        assert!((oscillator_trace(1.0).unwrap() - 0.425_459_5).abs() < 1e-6);
        assert!(oscillator_trace(0.0).is_err());
        let xi = 1e-6;
        assert!((oscillator_trace(xi).unwrap() * 2.0 * xi - 1.0).abs() < 1e-10);
        assert!((oscillator_trace_truncated(0.1, 200) - oscillator_trace(0.1).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn levels() {
        let p = ModelParams::new(1.0, 1.0, 1.0, 10.0).unwrap();
        assert_eq!(adiabatic_level(0, 2.0, &p), 1.0);
        assert_eq!(adiabatic_level(3, 1.0, &p), 3.5);
    }

    /// Normalized Hermite functions of the oscillator with frequency ω (ħ = 1 scale s = 1/√ω).
    fn hermite_functions(nmax: usize, y: f64, omega: f64) -> Vec<f64> {
        let s = omega.sqrt();
        let z = s * y;
        let mut psi = vec![0.0; nmax + 2];
        psi[0] = (s / std::f64::consts::PI.sqrt()).sqrt() * (-z * z / 2.0).exp();
        psi[1] = 2f64.sqrt() * z * psi[0];
        for n in 2..nmax + 2 {
            psi[n] = (2.0 / n as f64).sqrt() * z * psi[n - 1] - ((n - 1) as f64 / n as f64).sqrt() * psi[n - 2];
        }
        psi
    }

    #[test]
    fn levels_match_hermite_expectation() {
        let p = ModelParams::new(1.3, 1.0, 1.0, 10.0).unwrap();
        let x = 1.7;
        let omega = p.g * x;
        let opts = QuadOptions::tight();
        for n in 0..=5usize {
            let energy = |y: f64| {
                let psi = hermite_functions(n, y, omega);
                // ψ_n' = √ω (√(n/2) ψ_{n-1} - √((n+1)/2) ψ_{n+1})
                let lower = if n > 0 { (n as f64 / 2.0).sqrt() * psi[n - 1] } else { 0.0 };
                let d = omega.sqrt() * (lower - ((n + 1) as f64 / 2.0).sqrt() * psi[n + 1]);
                0.5 * d * d + 0.5 * omega * omega * y * y * psi[n] * psi[n]
            };
            let e = integrate(energy, -12.0, 12.0, &opts).unwrap().value;
            assert!((e - adiabatic_level(n as u32, x, &p)).abs() < 1e-10, "n={n}: {e}");
        }
    }

    #[test]
    fn mode_sums() {
        for j in 0..6 {
            let exact = mode_power_sum(j).eval(0.2);
            let trunc = mode_power_sum_truncated(j, 0.2, 400);
            assert!(((exact - trunc) / trunc).abs() < 1e-12, "j={j}");
        }
    }
}
