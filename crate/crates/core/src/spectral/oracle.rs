use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::central::ModelParams;
use crate::quad::{integrate_with_breaks, QuadOptions};
use crate::Error;

use super::basis::SymMatrix;
use super::eigen::dense_eigenvalues;

/// 4∫₀^Q∫₀^Q x^{2m} y^{2n} e^{-tg²x²y²/2} dx dy by nested adaptive quadrature.
pub fn quad_imn(m: u32, n: u32, p: &ModelParams, opts: &QuadOptions) -> Result<f64, Error> {
    let (q, c) = (p.q, p.t * p.g * p.g / 2.0);
    let inner_opts = QuadOptions { abs_tol: opts.abs_tol * 1e-3, rel_tol: opts.rel_tol * 1e-2, ..*opts };
    let mut failure = None;
    let outer = |x: f64| -> f64 {
        if x == 0.0 {
            return if m == 0 { q.powi(2 * n as i32 + 1) / (2 * n + 1) as f64 } else { 0.0 };
        }
        // Gaussian width in y is 1/(x√(2c))
        let w = 1.0 / (x * (2.0 * c).sqrt());
        let breaks: Vec<f64> = [w, 3.0 * w, 8.0 * w].into_iter().filter(|b| *b < q).collect();
        match integrate_with_breaks(|y| y.powi(2 * n as i32) * (-c * x * x * y * y).exp(), 0.0, q, &breaks, &inner_opts) {
            Ok(r) => x.powi(2 * m as i32) * r.value,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        }
    };
    let xw = 1.0 / (q * (2.0 * c).sqrt());
    let breaks: Vec<f64> = [xw, 3.0 * xw, 8.0 * xw, 1.0].into_iter().filter(|b| *b < q).collect();
    let r = integrate_with_breaks(outer, 0.0, q, &breaks, opts);
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(4.0 * r?.value)
}

/// Plain Monte Carlo estimate of the same integral, with its standard error.
pub fn monte_carlo_imn(m: u32, n: u32, p: &ModelParams, samples: u64, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (q, c) = (p.q, p.t * p.g * p.g / 2.0);
    let (mut s, mut s2) = (0.0, 0.0);
    for _ in 0..samples {
        let (x, y): (f64, f64) = (rng.gen::<f64>() * q, rng.gen::<f64>() * q);
        let f = x.powi(2 * m as i32) * y.powi(2 * n as i32) * (-c * x * x * y * y).exp();
        s += f;
        s2 += f * f;
    }
    let ns = samples as f64;
    let mean = s / ns;
    let var = (s2 / ns - mean * mean).max(0.0);
    let area = 4.0 * q * q;
    (area * mean, area * (var / ns).sqrt())
}

/// 4ξ²[−1/sinh + (11/6) ξ cosh/sinh² − ξ²/(2 sinh) − ξ²/sinh³], written out by hand.
pub fn z2_channel_integrand(x: f64) -> f64 {
    let (s, c) = (x.sinh(), x.cosh());
    4.0 * x * x * (-1.0 / s + 11.0 / 6.0 * x * c / (s * s) - x * x / (2.0 * s) - x * x / (s * s * s))
}

/// ∫_{ξ₀}^∞ of the channel integrand in K units, for 0 < ξ₀ < 0.1.
pub fn quad_z2_channel(xi0: f64) -> Result<f64, Error> {
    if !(xi0 > 0.0 && xi0 < 0.1) {
        return Err(Error::InvalidArgument(format!("quad_z2_channel needs 0 < ξ₀ < 0.1, got {xi0}")));
    }
    let top = 80.0;
    if z2_channel_integrand(top).abs() > 1e-20 {
        return Err(Error::Numeric(format!("channel integrand not decayed at ξ = {top}")));
    }
    let r = integrate_with_breaks(z2_channel_integrand, xi0, top, &[0.1, 1.0, 5.0, 20.0], &QuadOptions::tight())?;
    Ok(r.value)
}

/// Levels of −(ħ²/2)∂² + a x on x > x₀ (hard wall) from an odd sinc grid.
pub fn linear_grid_levels(a: f64, hbar: f64, domain_start: f64, count: usize, spacing: f64, extent: f64) -> Result<Vec<f64>, Error> {
    let npts = (extent / spacing).floor() as usize;
    if npts < count + 2 {
        return Err(Error::InvalidArgument("grid too small".into()));
    }
    let c = hbar * hbar / (spacing * spacing);
    let t = |d: i64| -> f64 {
        if d == 0 {
            c * PI * PI / 6.0
        } else {
            c * (if d % 2 == 0 { 1.0 } else { -1.0 }) / (d * d) as f64
        }
    };
    let mut h = SymMatrix::zeros(npts);
    for i in 1..=npts as i64 {
        for j in 1..=i {
            let mut v = t(i - j) - t(i + j);
            if i == j {
                v += a * (domain_start + i as f64 * spacing);
            }
            h.set(i as usize - 1, j as usize - 1, v);
        }
    }
    let mut w = dense_eigenvalues(&h)?;
    w.truncate(count);
    Ok(w)
}
