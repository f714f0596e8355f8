//! Real special functions in double precision.

use crate::exactalg::{bernoulli, factorial, to_f64};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

/// Riemann zeta at an integer s >= 2 (Euler-Maclaurin with 10 explicit terms).
pub fn zeta(s: u32) -> f64 {
    assert!(s >= 2, "zeta pole at s = {s}");
    if s > 60 {
        return 1.0 + 2f64.powi(-(s as i32)) + 3f64.powi(-(s as i32));
    }
    let n = 10.0f64;
    let sf = s as f64;
    let mut sum: f64 = (1..10).map(|k| (k as f64).powf(-sf)).sum();
    sum += n.powf(1.0 - sf) / (sf - 1.0) + 0.5 * n.powf(-sf);
    // B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    let mut rising = sf;
    for k in 1..=12u32 {
        let b = to_f64(&bernoulli(2 * k as usize)) / to_f64(&factorial(2 * k).into());
        sum += b * rising * n.powf(-sf - 2.0 * k as f64 + 1.0);
        rising *= (sf + 2.0 * k as f64 - 1.0) * (sf + 2.0 * k as f64);
    }
    sum
}

/// ln Gamma for x > 0 (Stirling series after upward shift).
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0);
    let mut prod = 1.0;
    let mut y = x;
    while y < 20.0 {
        prod *= y;
        y += 1.0;
    }
    let shift = prod.ln();
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    (y - 0.5) * y.ln() - y + 0.5 * (2.0 * std::f64::consts::PI).ln() + series - shift
}

/// Digamma for x > 0.
pub fn digamma(x: f64) -> f64 {
    assert!(x > 0.0);
    let mut acc = 0.0;
    let mut y = x;
    while y < 20.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let tail = inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
    acc + y.ln() - 0.5 / y - tail
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_values() {
        let pi = std::f64::consts::PI;
        assert!((zeta(2) - pi * pi / 6.0).abs() < 1e-15);
        assert!((zeta(4) - pi.powi(4) / 90.0).abs() < 1e-15);
        assert!((zeta(3) - ZETA3).abs() < 1e-15);
    }

    #[test]
    fn gamma_values() {
        assert!((ln_gamma(0.5) - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-14);
        assert!((ln_gamma(10.0) - 362880f64.ln()).abs() < 1e-12);
        assert!((digamma(1.0) + EULER_GAMMA).abs() < 1e-14);
        // psi(5/2) = 2 + 2/3 - C - 2 ln 2
        let want = 2.0 + 2.0 / 3.0 - EULER_GAMMA - 2.0 * 2f64.ln();
        assert!((digamma(2.5) - want).abs() < 1e-14);
    }
}
