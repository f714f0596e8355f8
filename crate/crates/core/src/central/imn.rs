use std::f64::consts::{LN_2, PI};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactalg::{odd_double_factorial, rat, to_f64, Rational};
use crate::special::EULER_GAMMA;
use crate::Error;

use super::params::ModelParams;

/// Whether the finite-Q correction factor multiplies the leading I_mn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Correction {
    Off,
    On,
}

fn dfact(n: u32) -> f64 {
    to_f64(&odd_double_factorial(n).into())
}

/// I_mn for m > n in the adiabatic limit:
/// √(2π) (g t^{1/2})^{-(2n+1)} (2n-1)!!/(m-n) Q^{2(m-n)},
/// times 1 - ((2m-1)!!/(2n-1)!!)(g²Q⁴t)^{n-m} when corrected.
pub fn imn_leading(m: u32, n: u32, p: &ModelParams, corr: Correction) -> Result<f64, Error> {
    if m <= n {
        return Err(Error::InvalidArgument(format!("I_{m}{n}: need m > n (use imm_log for m = n)")));
    }
    p.require_adiabatic()?;
    let d = (m - n) as f64;
    let base = (2.0 * PI).sqrt() * (p.g * p.t.sqrt()).powi(-(2 * n as i32 + 1)) * dfact(n) / d
        * p.q.powi(2 * (m - n) as i32);
    Ok(match corr {
        Correction::Off => base,
        Correction::On => base * (1.0 - dfact(m) / dfact(n) * p.adiabatic_parameter().powi(n as i32 - m as i32)),
    })
}

/// Σ_{ℓ=1..m} 1/(2ℓ-1).
pub fn odd_harmonic(m: u32) -> Rational {
    (1..=m as i64).fold(Rational::zero(), |acc, l| acc + rat(1, 2 * l - 1))
}

/// Bracket constant -2 Σ 1/(2ℓ-1) of I_mm.
pub fn imm_bracket_constant(m: u32) -> Rational {
    -odd_harmonic(m) * rat(2, 1)
}

/// I_mm = √(2π) (2m-1)!! (g²t)^{-(m+1/2)} [ln(g²Q⁴t) + C + ln 2 - 2 Σ 1/(2ℓ-1)].
pub fn imm_log(m: u32, p: &ModelParams) -> Result<f64, Error> {
    p.require_adiabatic()?;
    let bracket = p.adiabatic_parameter().ln() + EULER_GAMMA + LN_2 + to_f64(&imm_bracket_constant(m));
    Ok((2.0 * PI).sqrt() * dfact(m) * (p.g * p.g * p.t).powf(-(m as f64 + 0.5)) * bracket)
}

/// Either closed form, by the sign of m - n (m ≥ n after symmetrization).
pub fn imn_value(m: u32, n: u32, p: &ModelParams, corr: Correction) -> Result<f64, Error> {
    if m == n {
        imm_log(m, p)
    } else {
        imn_leading(m.max(n), m.min(n), p, corr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p10() -> ModelParams {
        ModelParams::new(1.0, 1.0, 1.0, 10.0).unwrap()
    }

    #[test]
    fn printed_examples() {
        let s = (2.0 * PI).sqrt();
        assert!((imn_leading(1, 0, &p10(), Correction::Off).unwrap() - s * 100.0).abs() < 1e-10);
        assert!((imn_leading(2, 1, &p10(), Correction::Off).unwrap() - s * 100.0).abs() < 1e-10);
        assert!((imn_leading(3, 1, &p10(), Correction::Off).unwrap() - 0.5 * s * 1e4).abs() < 1e-8);
        assert!(imn_leading(1, 1, &p10(), Correction::Off).is_err());
    }

    #[test]
    fn bracket_constants() {
        assert_eq!(imm_bracket_constant(0), rat(0, 1));
        assert_eq!(imm_bracket_constant(1), rat(-2, 1));
        assert_eq!(imm_bracket_constant(2), rat(-8, 3));
        assert_eq!(imm_bracket_constant(3), rat(-46, 15));
    }

    #[test]
    fn i00_matches_baseline_bracket() {
        let want = (2.0 * PI).sqrt() * (1e4f64.ln() + EULER_GAMMA + LN_2);
        assert!((imm_log(0, &p10()).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn regime_refusal() {
        let p = ModelParams::new(1.0, 1.0, 1e-3, 1.0).unwrap();
        assert!(matches!(imm_log(0, &p), Err(Error::Regime(_))));
    }
}
