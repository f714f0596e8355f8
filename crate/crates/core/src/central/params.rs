use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::Error;

/// g²tQ⁴ at or above this counts as adiabatic.
pub const ADIABATIC_MIN: f64 = 100.0;
/// ħ t^{3/4} at or below this counts as semiclassical.
pub const WIGNER_MAX: f64 = 0.5;
/// The ln coth(u/2) expansion converges for u < π.
pub const SERIES_U_MAX: f64 = PI;

/// Model parameters (g, ħ, t, Q) in the units where H = p²/2 + g²x²y²/2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub g: f64,
    pub hbar: f64,
    pub t: f64,
    #[serde(rename = "Q")]
    pub q: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Validity {
    pub adiabatic: bool,
    pub wigner: bool,
    pub series: bool,
    pub adiabatic_parameter: f64,
    pub wigner_parameter: f64,
    pub u: f64,
}

impl ModelParams {
    pub fn new(g: f64, hbar: f64, t: f64, q: f64) -> Result<Self, Error> {
        for (name, v) in [("g", g), ("hbar", hbar), ("t", t), ("Q", q)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(ModelParams { g, hbar, t, q })
    }

    /// K = (2π g² ħ⁴ t³)^{-1/2}.
    pub fn k_prefactor(&self) -> f64 {
        1.0 / (2.0 * PI * self.lambda_sq()).sqrt()
    }

    /// λ² = g² ħ⁴ t³.
    pub fn lambda_sq(&self) -> f64 {
        self.g * self.g * self.hbar.powi(4) * self.t.powi(3)
    }

    pub fn hgtq(&self) -> f64 {
        self.hbar * self.g * self.t * self.q
    }

    /// u = ħgtQ/2, also the channel entry point ξ₀.
    pub fn u(&self) -> f64 {
        0.5 * self.hgtq()
    }

    pub fn xi0(&self) -> f64 {
        self.u()
    }

    /// g²tQ⁴.
    pub fn adiabatic_parameter(&self) -> f64 {
        self.g * self.g * self.t * self.q.powi(4)
    }

    /// ħ t^{3/4}.
    pub fn wigner_parameter(&self) -> f64 {
        self.hbar * self.t.powf(0.75)
    }

    pub fn validity(&self) -> Validity {
        let (a, w, u) = (self.adiabatic_parameter(), self.wigner_parameter(), self.u());
        Validity {
            adiabatic: a >= ADIABATIC_MIN,
            wigner: w <= WIGNER_MAX,
            series: u < SERIES_U_MAX,
            adiabatic_parameter: a,
            wigner_parameter: w,
            u,
        }
    }

    pub fn require_adiabatic(&self) -> Result<(), Error> {
        let a = self.adiabatic_parameter();
        if a < ADIABATIC_MIN {
            return Err(Error::Regime(format!("g²tQ⁴ = {a:.4e} < {ADIABATIC_MIN} (adiabatic condition)")));
        }
        Ok(())
    }

    pub fn require_series(&self) -> Result<(), Error> {
        let u = self.u();
        if u >= SERIES_U_MAX {
            return Err(Error::Regime(format!("u = ħgtQ/2 = {u:.4e} ≥ π (channel series diverges)")));
        }
        Ok(())
    }

    pub fn require_wigner(&self) -> Result<(), Error> {
        let w = self.wigner_parameter();
        if w > WIGNER_MAX {
            return Err(Error::Regime(format!("ħt^(3/4) = {w:.4e} > {WIGNER_MAX} (semiclassical condition)")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let p = ModelParams::new(1.0, 1.0, 0.1, 10.0).unwrap();
        assert!((p.lambda_sq() - 1e-3).abs() < 1e-15);
        assert!((p.k_prefactor() - 1.0 / (2.0 * PI * 1e-3f64).sqrt()).abs() < 1e-12);
        assert!((p.u() - 0.5).abs() < 1e-15);
        let v = p.validity();
        assert!(v.adiabatic && v.wigner && v.series);
        assert!(ModelParams::new(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, 1.0, 1.0).unwrap().require_adiabatic().is_err());
    }
}
