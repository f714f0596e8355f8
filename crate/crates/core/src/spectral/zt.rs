use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::quad::{integrate_with_breaks, QuadOptions};
use crate::special::{digamma, EULER_GAMMA};
use crate::Error;

use super::basis::{build_hamiltonian_2d, BasisKind, BasisSpec, Sector};
use super::eigen::{dense_eigenvalues, Spectrum};

/// Tail fractions above this make the spectral value meaningless.
pub const MAX_TAIL_FRACTION: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailModel {
    None,
    /// Level density whose Laplace transform is K[ln(1/λ²) + 9 ln 2 + C].
    ImprovedTf,
}

/// ρ(E) = (2πg²ħ⁴)^{-1/2} (2/√π) √E [3 ln E − ln(g²ħ⁴) − 3ψ(3/2) + 9 ln 2 + C].
pub fn improved_tf_density(e: f64, g: f64, hbar: f64) -> f64 {
    let s = g * g * hbar.powi(4);
    let bracket = 3.0 * e.ln() - s.ln() - 3.0 * digamma(1.5) + 9.0 * 2f64.ln() + EULER_GAMMA;
    (2.0 * PI * s).powf(-0.5) * 2.0 / PI.sqrt() * e.sqrt() * bracket
}

pub fn improved_tf_tail(e_cut: f64, t: f64, g: f64, hbar: f64) -> Result<f64, Error> {
    let top = e_cut + 60.0 / t;
    let r = integrate_with_breaks(
        |e| improved_tf_density(e, g, hbar) * (-t * e).exp(),
        e_cut,
        top,
        &[e_cut + 1.0 / t, e_cut + 5.0 / t],
        &QuadOptions::default(),
    )?;
    Ok(r.value)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZSpectral {
    pub t: f64,
    /// Σ e^{-tE} over trusted levels.
    pub sum: f64,
    pub tail: f64,
    /// First-order effect of the per-level convergence estimates.
    pub convergence_error: f64,
    pub value: f64,
    pub error_band: f64,
    pub levels_used: usize,
    pub e_cut: f64,
}

impl ZSpectral {
    pub fn tail_fraction(&self) -> f64 {
        (self.tail / self.value).abs()
    }
}

pub fn z_spectral(
    spec: &Spectrum,
    t: f64,
    tail_model: TailModel,
    tail_tolerance: f64,
    g: f64,
    hbar: f64,
) -> Result<ZSpectral, Error> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
    }
    let e_max = spec.eigenvalues.last().copied().ok_or_else(|| Error::InvalidArgument("empty spectrum".into()))?;
    let e_cut = spec.reliable_below.unwrap_or(e_max).min(e_max);
    let mut sum = 0.0;
    let mut conv = 0.0;
    let mut used = 0;
    for (e, c) in spec.eigenvalues.iter().zip(&spec.convergence) {
        if *e > e_cut {
            break;
        }
        let w = (-t * e).exp();
        sum += w;
        conv += t * w * c.unwrap_or(0.0);
        used += 1;
    }
    let tail = if (-t * e_cut).exp() < tail_tolerance {
        0.0
    } else {
        match tail_model {
            TailModel::ImprovedTf => improved_tf_tail(e_cut, t, g, hbar)?,
            TailModel::None => {
                return Err(Error::Regime(format!(
                    "e^(-t E_max) = {:e} exceeds the tail tolerance {tail_tolerance:e} and no tail model was given",
                    (-t * e_cut).exp()
                )))
            }
        }
    };
    let value = sum + tail;
    if tail.abs() > MAX_TAIL_FRACTION * value.abs() {
        return Err(Error::Regime(format!(
            "regime not resolvable: tail {tail:.4e} is more than {MAX_TAIL_FRACTION} of Z = {value:.4e} at t = {t}"
        )));
    }
    Ok(ZSpectral { t, sum, tail, convergence_error: conv, value, error_band: tail.abs() + conv, levels_used: used, e_cut })
}

/// Energy below which a grid basis is trusted: the ground channel mode reaches
/// the box wall at ħgL/2, the potential cut and the grid resolution bound the rest.
pub fn grid_reliable_energy(kind: &BasisKind, g: f64, hbar: f64) -> Option<f64> {
    match *kind {
        BasisKind::Grid { spacing, extent, vcut } => {
            Some((0.5 * hbar * g * extent).min(0.5 * vcut).min(PI * PI * hbar * hbar / (8.0 * spacing * spacing)))
        }
        BasisKind::OscillatorProduct { .. } => None,
    }
}

/// Every level of the basis, assembled from symmetry sectors with their degeneracies.
pub fn full_spectrum(g: f64, hbar: f64, kind: BasisKind, budget_bytes: usize) -> Result<Spectrum, Error> {
    let mut levels = Vec::new();
    for (sector, mult) in Sector::partition() {
        let b = BasisSpec { kind, sector: Some(sector) };
        let h = build_hamiltonian_2d(g, hbar, &b, budget_bytes)?;
        let w = dense_eigenvalues(&h)?;
        for _ in 0..mult {
            levels.extend_from_slice(&w);
        }
    }
    let mut s = Spectrum::from_levels(levels);
    s.basis = Some(BasisSpec { kind, sector: None });
    s.solver = Some(super::eigen::Solver::Dense);
    s.reliable_below = grid_reliable_energy(&kind, g, hbar);
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergedZ {
    pub bases: Vec<BasisKind>,
    pub z: Vec<ZSpectral>,
    pub relative_difference: f64,
}

impl ConvergedZ {
    pub fn converged(&self, tol: f64) -> bool {
        self.relative_difference <= tol
    }

    /// Value from the finer (last) basis, with the basis difference added to its band.
    pub fn best(&self) -> ZSpectral {
        let mut z = *self.z.last().expect("at least one basis");
        z.convergence_error += (self.z[0].value - z.value).abs();
        z.error_band = z.tail.abs() + z.convergence_error;
        z
    }
}

/// Z(t) on two (or more) grid bases, with the spread used as the convergence gate.
pub fn z_spectral_converged(g: f64, hbar: f64, t: f64, bases: &[BasisKind], budget: usize) -> Result<ConvergedZ, Error> {
    let mut z = Vec::new();
    for kind in bases {
        let spec = full_spectrum(g, hbar, *kind, budget)?;
        z.push(z_spectral(&spec, t, TailModel::ImprovedTf, 1e-12, g, hbar)?);
    }
    let vals: Vec<f64> = z.iter().map(|r| r.value).collect();
    let hi = vals.iter().cloned().fold(f64::MIN, f64::max);
    let lo = vals.iter().cloned().fold(f64::MAX, f64::min);
    Ok(ConvergedZ { bases: bases.to_vec(), z, relative_difference: (hi - lo) / hi.abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::basis::DEFAULT_MEMORY_BUDGET;

    #[test]
    fn density_laplace_transform() {
        // ∫ρ e^{-tE} over all E reproduces K[ln(1/λ²) + 9 ln 2 + C]
        let (g, hbar, t) = (1.3, 0.9, 0.2);
        let total = improved_tf_tail(1e-12, t, g, hbar).unwrap();
        let lam2: f64 = g * g * hbar.powi(4) * t.powi(3);
        let k = (2.0 * PI * lam2).powf(-0.5);
        let expect = k * ((1.0 / lam2).ln() + 9.0 * 2f64.ln() + EULER_GAMMA);
        assert!(((total - expect) / expect).abs() < 1e-7, "{total} vs {expect}");
    }

    #[test]
    fn single_level_dominates() {
        let s = Spectrum::from_levels(vec![1.5, 40.0, 41.0]);
        let z = z_spectral(&s, 0.01, TailModel::None, 1e-12, 1.0, 1.0);
        assert!(z.is_err());
        let z = z_spectral(&s, 5.0, TailModel::ImprovedTf, 1e-12, 1.0, 1.0).unwrap();
        assert!((z.sum - (-7.5f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn small_t_is_refused() {
        let s = full_spectrum(1.0, 1.0, BasisKind::OscillatorProduct { size: 8, omega: 1.0 }, DEFAULT_MEMORY_BUDGET).unwrap();
        assert!(matches!(z_spectral(&s, 1e-3, TailModel::ImprovedTf, 1e-12, 1.0, 1.0), Err(Error::Regime(_))));
    }

    #[test]
    fn completely_monotone() {
        let s = full_spectrum(1.0, 1.0, BasisKind::OscillatorProduct { size: 10, omega: 1.0 }, DEFAULT_MEMORY_BUDGET).unwrap();
        let z = |t: f64| s.eigenvalues.iter().map(|e| (-t * e).exp()).sum::<f64>();
        let h = 0.05;
        for t in [0.5, 1.0, 2.0] {
            let d1 = (z(t + h) - z(t - h)) / (2.0 * h);
            let d2 = (z(t + h) - 2.0 * z(t) + z(t - h)) / (h * h);
            assert!(d1 < 0.0 && d2 > 0.0);
        }
    }
}
