use std::f64::consts::PI;

use crate::Error;

const AI0: f64 = 0.355_028_053_887_817_2;
const AIP0: f64 = 0.258_819_403_792_806_8;

/// Ai(x): Maclaurin series on |x| ≤ 8.5, asymptotic forms outside.
pub fn airy_ai(x: f64) -> f64 {
    if x.abs() <= 8.5 {
        let x3 = x * x * x;
        let (mut f, mut g) = (1.0, x);
        let (mut tf, mut tg) = (1.0, x);
        let mut k = 0.0;
        loop {
            k += 1.0;
            tf *= x3 / ((3.0 * k - 1.0) * (3.0 * k));
            tg *= x3 / ((3.0 * k) * (3.0 * k + 1.0));
            f += tf;
            g += tg;
            if tf.abs() < 1e-18 * f.abs().max(1.0) && tg.abs() < 1e-18 * g.abs().max(1.0) && k > 3.0 {
                break;
            }
        }
        AI0 * f - AIP0 * g
    } else if x > 0.0 {
        let z = 2.0 / 3.0 * x.powf(1.5);
        (-z).exp() / (2.0 * PI.sqrt() * x.powf(0.25)) * asym_sum(z, true)
    } else {
        let y = -x;
        let z = 2.0 / 3.0 * y.powf(1.5);
        let (p, q) = asym_pq(z);
        let phase = z + PI / 4.0;
        (phase.sin() * p - phase.cos() * q) / (PI.sqrt() * y.powf(0.25))
    }
}

fn u_coeffs(n: usize) -> Vec<f64> {
    // u_k = Γ(3k+1/2) / (54^k k! Γ(k+1/2))
    let mut u = vec![1.0];
    for k in 1..n {
        let kf = k as f64;
        let prev = u[k - 1];
        u.push(prev * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / (216.0 * kf * (2.0 * kf - 1.0)));
    }
    u
}

fn asym_sum(z: f64, alternating: bool) -> f64 {
    let u = u_coeffs(30);
    let mut s = 0.0;
    let mut last = f64::INFINITY;
    for (k, uk) in u.iter().enumerate() {
        let t = uk / z.powi(k as i32);
        if t.abs() > last {
            break;
        }
        last = t.abs();
        s += if alternating && k % 2 == 1 { -t } else { t };
    }
    s
}

fn asym_pq(z: f64) -> (f64, f64) {
    let u = u_coeffs(30);
    let (mut p, mut q) = (0.0, 0.0);
    let mut last = f64::INFINITY;
    for (k, uk) in u.iter().enumerate() {
        let t = uk / z.powi(k as i32);
        if t.abs() > last {
            break;
        }
        last = t.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * t;
        } else {
            q += sign * t;
        }
    }
    (p, q)
}

/// Asymptotic location of the k-th zero (k ≥ 1).
fn zero_guess(k: usize) -> f64 {
    let t = 3.0 * PI * (4.0 * k as f64 - 1.0) / 8.0;
    let t2 = t.powi(-2);
    -t.powf(2.0 / 3.0) * (1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * (77125.0 / 82944.0))))
}

/// First `count` zeros of Ai, descending from −2.338….
pub fn airy_zeros(count: usize) -> Vec<f64> {
    (1..=count)
        .map(|k| {
            let guess = zero_guess(k);
            if guess < -8.0 {
                return guess;
            }
            let (mut lo, mut hi) = (guess - 0.3, guess + 0.3);
            let mut flo = airy_ai(lo);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let fm = airy_ai(mid);
                if fm == 0.0 {
                    return mid;
                }
                if (fm > 0.0) == (flo > 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-15 * mid.abs() {
                    break;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Levels of −(ħ²/2)∂² + a x on x > x₀ with a hard wall at x₀, a = (n+½)ħg.
pub fn airy_levels(n_mode: u32, count: usize, hbar: f64, g: f64, domain_start: f64) -> Result<Vec<f64>, Error> {
    if count < 1 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let a = (n_mode as f64 + 0.5) * hbar * g;
    let scale = a.powf(2.0 / 3.0) * (hbar * hbar / 2.0).powf(1.0 / 3.0);
    Ok(airy_zeros(count).into_iter().map(|z| a * domain_start - scale * z).collect())
}
