//! Acceptance criteria 1-10. Each prints one PASS/FAIL line; criteria that
//! cannot be met as stated are listed in `EXPECTED_FAIL` and must keep failing.

use std::f64::consts::LN_2;
use std::io::Write;

use num_traits::Zero;
use ymqm_core::assembly::leading_total;
use ymqm_core::central::{
    euler_odd_harmonic, imm_log, imn_leading, zk_square, Correction, ModelParams, SquarePipeline,
};
use ymqm_core::channels::{
    bernoulli_growth_ratio, channel_partition, channel_q_independent, free_channel_exact, free_channel_integrand,
    ln_term_magnitude, q_independent_double_factorial_form, q_independent_factorial_form,
    q_independent_from_derivative, z_channels_leading,
};
use ymqm_core::exactalg::{bernoulli, int, rat, to_f64, GaussRational, MultiPoly, Rational, Symbol};
use ymqm_core::quad::QuadOptions;
use ymqm_core::special::{zeta, EULER_GAMMA};
use ymqm_core::spectral::{
    airy_levels, linear_grid_levels, DEFAULT_MEMORY_BUDGET, quad_imn, quad_z2_channel, BasisKind,
};
use ymqm_core::assembly::{default_spectral_bases, z_spectral_assembled, z_tf};
use ymqm_core::wk::{log_coefficients, wk_sequence, PotentialSpec};

/// Criterion 3 asks for −25.2 within 10⁻³ relative; the exact −21ζ(3) sits 1.7·10⁻³ away.
const EXPECTED_FAIL: &[u32] = &[3];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn mono(c: Rational, exps: &[(Symbol, i32)]) -> MultiPoly {
    MultiPoly::mono(c, exps)
}

fn criterion_1() -> Outcome {
    use Symbol::*;
    let mut notes = Vec::new();
    let q = wk_sequence(&PotentialSpec::quartic_xy(), 2).unwrap();
    // V = αx²y²/2
    let grad_x = mono(int(1), &[(Alpha, 1), (X, 1), (Y, 2)]);
    let grad_y = mono(int(1), &[(Alpha, 1), (X, 2), (Y, 1)]);
    let p_grad = &(&MultiPoly::var(Px) * &grad_x) + &(&MultiPoly::var(Py) * &grad_y);
    let lap = &mono(int(1), &[(Alpha, 1), (Y, 2)]) + &mono(int(1), &[(Alpha, 1), (X, 2)]);
    let grad_sq = &(&grad_x * &grad_x) + &(&grad_y * &grad_y);
    let hess = &(&mono(int(1), &[(Alpha, 1), (Y, 2), (Px, 2)]) + &mono(int(4), &[(Alpha, 1), (X, 1), (Y, 1), (Px, 1), (Py, 1)]))
        + &mono(int(1), &[(Alpha, 1), (X, 2), (Py, 2)]);
    let t = |k: i32| mono(int(1), &[(T, k)]);
    let w1 = (&t(2) * &p_grad).scale(&GaussRational::new(int(0), rat(-1, 2)));
    let bracket = &(&(&lap.scale_rational(&rat(-1, 2)) + &(&t(1) * &grad_sq).scale_rational(&rat(1, 3)))
        + &(&t(1) * &hess).scale_rational(&rat(1, 3)))
        + &(&t(2) * &(&p_grad * &p_grad)).scale_rational(&rat(-1, 4));
    let w2 = (&t(2) * &bracket).scale_rational(&rat(1, 2));
    let ok_quartic = q.orders[1] == w1 && q.orders[2] == w2;
    notes.push(format!("x²y² W1 (t² form) and W2 {}", if ok_quartic { "exact" } else { "differ" }));

    let lin = wk_sequence(&PotentialSpec::linear_alpha(), 8).unwrap();
    // a_n^{2n} t^{3n} Σ c_j p^{2j} t^j / norm
    let printed: [(i64, &[i64]); 4] = [
        (3 * 8, &[4, -3]),
        (9 * 128, &[16, -24, 3]),
        (1024 * 27 * 15, &[320, -720, 180, -9]),
        (32768 * 81 * 105, &[8960, -26880, 10080, -1008, 27]),
    ];
    let mut ok_linear = true;
    for (idx, (norm, cs)) in printed.iter().enumerate() {
        let n = idx as i32 + 1;
        let mut want = MultiPoly::zero();
        for (j, c) in cs.iter().enumerate() {
            let j = j as i32;
            want = &want + &mono(rat(*c, *norm), &[(Alpha, 2 * n), (T, 3 * n + j), (Px, 2 * j)]);
        }
        let same = lin.orders[2 * n as usize] == want;
        ok_linear &= same;
        if !same {
            notes.push(format!("linear W{} differs", 2 * n));
        }
    }
    notes.push(format!("linear W2-W8 {}", if ok_linear { "exact" } else { "differ" }));
    outcome(ok_quartic && ok_linear, notes.join("; "))
}

fn criterion_2() -> Outcome {
    let p = ModelParams::new(1.0, 1.0, 0.05, 6.0).unwrap();
    let printed_square = [rat(-1, 12), rat(7, 128 * 3 * 15), rat(-31, 3 * 512 * 945), rat(127, 5 * 65536 * 945)];
    let printed_channel = [rat(1, 12), rat(-7, 128 * 3 * 15), rat(31, 512 * 3 * 945), rat(-127, 65536 * 5 * 945)];
    let mut pass = true;
    let mut notes = Vec::new();
    for (i, k) in [2u32, 4, 6, 8].into_iter().enumerate() {
        let sq = zk_square(k as usize).unwrap().coefficient;
        let (ch, _) = z_channels_leading(k, &p).unwrap();
        let sum = &sq + &ch.coefficient;
        let ok = sum.is_zero() && sq == printed_square[i] && ch.coefficient == printed_channel[i];
        pass &= ok;
        notes.push(format!("k={k}: {sq} + {} = {sum}", ch.coefficient));
    }
    outcome(pass, notes.join(", "))
}

fn criterion_3() -> Outcome {
    let xi0 = 1e-6;
    let hgtq = 2.0 * xi0;
    let exact = free_channel_exact(&free_channel_integrand().unwrap().leading, 4).unwrap();
    let z3 = 21.0 * zeta(3);
    let symbolic_constant = exact.constant.value();
    let numeric = quad_z2_channel(xi0).unwrap();
    let predicted = -z3 + to_f64(&exact.boundary_coefficient(2)) * hgtq * hgtq;
    let abs_err = (numeric - predicted).abs();
    let combined = numeric + to_f64(&zk_square(2).unwrap().coefficient) * hgtq * hgtq;
    let rel_printed = (combined / -25.2 - 1.0).abs();
    let rel_exact = (combined / -z3 - 1.0).abs();
    let ok_constant = abs_err < 1e-4 && (symbolic_constant + z3).abs() < 1e-12;
    let ok_combined = rel_printed < 1e-3;
    outcome(
        ok_constant && ok_combined,
        format!(
            "quadrature {numeric:.10} vs -21ζ(3)+(ħgtQ)²/12 {predicted:.10} (|Δ| {abs_err:.1e}) {}; \
             combined {combined:.6} vs -25.2: rel {rel_printed:.2e} {}; vs -21ζ(3): rel {rel_exact:.1e}",
            if ok_constant { "ok" } else { "FAIL" },
            if ok_combined { "ok" } else { "FAIL" },
        ),
    )
}

fn criterion_4() -> Outcome {
    let p = ModelParams::new(1.0, 1.0, 1.0, 10.0).unwrap();
    let opts = QuadOptions::tight();
    let mut pass = true;
    let mut worst_corr: f64 = 0.0;
    let mut worst_plain: f64 = 0.0;
    for (m, n) in [(1, 0), (2, 1), (3, 1), (2, 0), (3, 2)] {
        let q = quad_imn(m, n, &p, &opts).unwrap();
        let c = imn_leading(m, n, &p, Correction::On).unwrap();
        let l = imn_leading(m, n, &p, Correction::Off).unwrap();
        worst_corr = worst_corr.max((c / q - 1.0).abs());
        worst_plain = worst_plain.max((l / q - 1.0).abs());
    }
    pass &= worst_corr <= 1e-6 && worst_plain <= 2e-3;
    let mut worst_log: f64 = 0.0;
    for m in 0..=3 {
        let q = quad_imn(m, m, &p, &opts).unwrap();
        worst_log = worst_log.max((imm_log(m, &p).unwrap() / q - 1.0).abs());
    }
    pass &= worst_log <= 1e-3;
    outcome(
        pass,
        format!("corrected rel {worst_corr:.1e}, uncorrected rel {worst_plain:.1e}, I_mm rel {worst_log:.1e}"),
    )
}

fn criterion_5() -> Outcome {
    let pipe = SquarePipeline::shared();
    let a = log_coefficients(pipe.decomposition(4).unwrap(), 1).unwrap();
    let want = vec![rat(-1, 60), rat(1, 16), rat(-17, 720), rat(1, 576)];
    let shown: Vec<String> = a.iter().map(|r| r.to_string()).collect();
    outcome(a == want, format!("a^(1) = ({})", shown.join(", ")))
}

fn criterion_6() -> Outcome {
    let l2 = 1e-3;
    let s = channel_q_independent(12, l2).unwrap();
    let n_star = s.optimal_index;
    let decreasing = (1..n_star).all(|n| ln_term_magnitude(n + 1, l2) < ln_term_magnitude(n, l2));
    let turns = ln_term_magnitude(n_star + 1, l2) > ln_term_magnitude(n_star, l2);
    let table: Vec<f64> = s.series.term_values().iter().map(|v| v.abs()).collect();
    let table_decreasing = table.windows(2).all(|w| w[1] < w[0]);

    // closed-form λ^{2n} coefficients, n ≤ 4
    let printed = [rat(1, 24), rat(7, 9216), rat(31, 3981312), rat(127, 2038431744)];
    let mut forms_agree = true;
    for n in 1..=6u32 {
        let f45 = q_independent_factorial_form(n);
        forms_agree &= q_independent_double_factorial_form(n) == f45;
        if let Some(c) = printed.get(n as usize - 1) {
            forms_agree &= c * bernoulli(2 * n as usize) == f45;
        }
    }
    let p = ModelParams::new(1.0, 1.0, 0.05, 6.0).unwrap();
    for d in &channel_partition(8, &p).unwrap().derivative_terms {
        forms_agree &= q_independent_from_derivative(d) == q_independent_factorial_form(d.lambda_power / 2);
    }
    let ratio12 = bernoulli_growth_ratio(12);
    let growth_ok = (ratio12 - 1.0).abs() < 0.01;
    outcome(
        decreasing && turns && table_decreasing && forms_agree && growth_ok,
        format!(
            "optimal index {n_star} (10^{:.0} smallest term), forms agree {forms_agree}, B-ratio(12) = {ratio12:.6}",
            s.log10_smallest_term
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut spaced = true;
    for (n_mode, g, x0) in [(0u32, 2.0, 0.0), (1, 1.0, 0.0), (0, 2.0, 3.0)] {
        let a = (n_mode as f64 + 0.5) * g;
        let exact = airy_levels(n_mode, 5, 1.0, g, x0).unwrap();
        let grid = linear_grid_levels(a, 1.0, x0, 5, 0.05, 14.0).unwrap();
        for (e, h) in exact.iter().zip(&grid) {
            worst = worst.max((h / e - 1.0).abs());
        }
        spaced &= grid.windows(2).all(|w| w[1] - w[0] > 0.0) && grid[0] > a * x0;
    }
    outcome(worst <= 1e-6 && spaced, format!("worst rel {worst:.1e}, spacing positive {spaced}"))
}

fn criterion_8() -> Outcome {
    let (g, hbar, t) = (1.0, 1.0, 0.2);
    let p = ModelParams::new(g, hbar, t, 10.0).unwrap();
    let bases: Vec<BasisKind> = default_spectral_bases(g, hbar);
    let sp = z_spectral_assembled(g, hbar, t, &bases, DEFAULT_MEMORY_BUDGET, 1e-3).unwrap();
    let tf = z_tf(&p).unwrap();
    let z = sp.best.value;
    let dev = (tf.absolute - z) / z;
    let pass = p.lambda_sq() <= 1e-2 && sp.gate_passed && sp.tail_fraction < 0.01 && dev.abs() <= 0.10;
    let zs: Vec<String> = sp.converged.z.iter().map(|z| format!("{:.5}", z.value)).collect();
    outcome(
        pass,
        format!(
            "λ² = {:.1e}, bases Z = [{}] (rel diff {:.1e}), tail {:.2}%, TF baseline {:.5}, deviation {:.2e}",
            p.lambda_sq(),
            zs.join(", "),
            sp.converged.relative_difference,
            100.0 * sp.tail_fraction,
            tf.absolute,
            dev
        ),
    )
}

fn criterion_9() -> Outcome {
    let a = leading_total(&ModelParams::new(1.0, 1.0, 0.01, 10.0).unwrap()).unwrap();
    let b = leading_total(&ModelParams::new(1.0, 1.0, 0.01, 20.0).unwrap()).unwrap();
    let exact = a.q_independent() && b.q_independent() && a.powers == b.powers;
    let same = (a.dominant_k_units - b.dominant_k_units).abs() < 1e-12;
    let baseline = (1.0 / a.params.lambda_sq()).ln() + 9.0 * LN_2 + EULER_GAMMA;
    let matches_tf = (a.dominant_k_units - baseline).abs() < 1e-12;
    let drift = (a.numeric_k_units - b.numeric_k_units).abs();
    let bound = a.suppression.max(b.suppression);
    outcome(
        exact && same && matches_tf && drift < bound,
        format!(
            "ln Q coefficient {}, dominant {:.12} at Q=10 and Q=20, numeric drift {drift:.1e} < (g²tQ⁴)⁻¹ = {bound:.0e}",
            a.ln_q_coefficient, a.dominant_k_units
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for m in [1, 5, 10, 20] {
        let e = euler_odd_harmonic(m, 50).unwrap();
        pass &= e.error <= e.first_omitted;
        notes.push(format!("m={m}: err {:.1e} ≤ {:.1e}", e.error, e.first_omitted));
    }
    outcome(pass, notes.join(", "))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "WK fixtures", criterion_1),
        (2, "order-by-order cancellation", criterion_2),
        (3, "free-channel constant", criterion_3),
        (4, "I_mn oracle triangle", criterion_4),
        (5, "a-coefficients from W4", criterion_5),
        (6, "asymptotic series", criterion_6),
        (7, "Airy oracle", criterion_7),
        (8, "spectral vs semiclassical", criterion_8),
        (9, "Q-independence at assembly", criterion_9),
        (10, "Euler resummation", criterion_10),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout();
    for (i, name, f) in criteria {
        let o = f();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        writeln!(out, "acceptance {i:>2} {verdict}: {name}: {}", o.detail).unwrap();
        out.flush().unwrap();
        if !o.pass {
            failed.push(i);
        }
    }
    assert_eq!(failed, EXPECTED_FAIL, "failing criteria differ from the recorded unattainable set");
}
