use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Error;

/// 2π × area{(x, y) ∈ [-L, L]²: g²x²y²/2 < E}.
///
/// With c = √(2E)/g the region is |xy| < c, whose area inside the box is
/// 4c(1 + ln(L²/c)) when the hyperbola crosses the box and (2L)² otherwise.
pub fn classical_phase_volume(e: f64, l: f64, g: f64) -> Result<f64, Error> {
    if !(e > 0.0) || !(l > 0.0) || !(g > 0.0) {
        return Err(Error::InvalidArgument(format!("need E, L, g > 0 (E = {e}, L = {l}, g = {g})")));
    }
    let c = (2.0 * e).sqrt() / g;
    let area = if c >= l * l { 4.0 * l * l } else { 4.0 * c * (1.0 + (l * l / c).ln()) };
    Ok(2.0 * PI * area)
}

/// Large-L increment Γ(2L) - Γ(L) = 16π √(2E)/g · ln 2.
pub fn phase_volume_doubling_increment(e: f64, g: f64) -> f64 {
    16.0 * PI * (2.0 * e).sqrt() / g * std::f64::consts::LN_2
}

/// Hit-or-miss estimate of the same volume: (value, standard error).
pub fn phase_volume_monte_carlo(e: f64, l: f64, g: f64, samples: u64, seed: u64) -> Result<(f64, f64), Error> {
    if samples == 0 {
        return Err(Error::InvalidArgument("no samples".into()));
    }
    classical_phase_volume(e, l, g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..samples {
        let x: f64 = rng.gen_range(-l..l);
        let y: f64 = rng.gen_range(-l..l);
        if 0.5 * g * g * x * x * y * y < e {
            hits += 1;
        }
    }
    let frac = hits as f64 / samples as f64;
    let scale = 2.0 * PI * 4.0 * l * l;
    Ok((scale * frac, scale * (frac * (1.0 - frac) / samples as f64).sqrt()))
}
