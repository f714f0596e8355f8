use num_traits::Zero;
use proptest::prelude::*;

use ymqm_core::central::{imn_leading, zk_square, Correction, ModelParams};
use ymqm_core::channels::z_channels_leading;
use ymqm_core::exactalg::{is_reduced, rat, GaussRational, Monomial, MultiPoly, Rational, Symbol, ALPHABET};
use ymqm_core::quad::QuadOptions;
use ymqm_core::spectral::{
    basis_dimension, build_hamiltonian_2d, dense_eigenvalues, monte_carlo_imn, quad_imn, z_spectral, BasisSpec, Sector, Spectrum,
    TailModel, DEFAULT_MEMORY_BUDGET,
};
use ymqm_core::wk::{reduce_momentum, wk_sequence, PotentialSpec};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..40).prop_map(|(n, d)| rat(n, d))
}

fn gauss() -> impl Strategy<Value = GaussRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussRational::new(re, im))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0i32..4, ALPHABET.len()).prop_map(|e| {
        ALPHABET.iter().zip(e).fold(Monomial::one(), |m, ((s, _), k)| m.with(*s, k))
    })
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((gauss(), monomial()), 0..5).prop_map(|terms| {
        terms.into_iter().fold(MultiPoly::zero(), |acc, (c, m)| &acc + &MultiPoly::term(c, m))
    })
}

fn reduced(g: &GaussRational) -> bool {
    is_reduced(&g.re) && is_reduced(&g.im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_field_stays_reduced(a in gauss(), b in gauss()) {
        for v in [&a + &b, &a * &b] {
            prop_assert!(reduced(&v));
        }
        if let Some(inv) = b.inv() {
            prop_assert!(reduced(&inv));
            prop_assert_eq!(&b * &inv, GaussRational::real(rat(1, 1)));
        }
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn polynomial_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        for (_, coef) in (&a * &b).terms() {
            prop_assert!(!coef.is_zero() && reduced(coef));
        }
    }

    #[test]
    fn derivatives_are_linear(a in poly(), b in poly(), k in gauss(), i in 0usize..6) {
        let s = ALPHABET[i].0;
        let lhs = (&a.scale(&k) + &b).diff(s);
        prop_assert_eq!(lhs, &a.diff(s).scale(&k) + &b.diff(s));
        let ia = a.integrate_t().unwrap();
        let ib = b.integrate_t().unwrap();
        prop_assert_eq!((&a.scale(&k) + &b).integrate_t().unwrap(), &ia.scale(&k) + &ib);
    }

    #[test]
    fn t_derivative_then_antiderivative(a in poly()) {
        let back = a.diff(Symbol::T).integrate_t().unwrap();
        let t_free = a.at_zero(Symbol::T).unwrap();
        prop_assert_eq!(back, &a - &t_free);
    }

    #[test]
    fn canonical_text_round_trip(a in poly()) {
        let text = a.to_string();
        let back: MultiPoly = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn cancellation_is_parameter_free(t in 0.01f64..0.2, q in 5.0f64..40.0, g in 0.5f64..2.0) {
        prop_assume!(g * t * q / 2.0 < 3.0);
        let p = ModelParams::new(g, 1.0, t, q).unwrap();
        for k in [2u32, 4, 6, 8] {
            let (ch, _) = z_channels_leading(k, &p).unwrap();
            prop_assert!((&zk_square(k as usize).unwrap().coefficient + &ch.coefficient).is_zero());
        }
    }

    #[test]
    fn spectral_z_is_completely_monotone(
        levels in proptest::collection::vec(0.1f64..30.0, 1..40),
        t0 in 0.05f64..1.0,
        h in 0.01f64..0.3,
    ) {
        let spec = Spectrum::from_levels(levels);
        let z = |t: f64| z_spectral(&spec, t, TailModel::None, 1.0, 1.0, 1.0).unwrap().value;
        let f: Vec<f64> = (0..4).map(|j| z(t0 + j as f64 * h)).collect();
        let scale = f[0];
        let d1 = f[1] - f[0];
        let d2 = f[2] - 2.0 * f[1] + f[0];
        let d3 = f[3] - 3.0 * f[2] + 3.0 * f[1] - f[0];
        prop_assert!(d1 <= 1e-12 * scale);
        prop_assert!(d2 >= -1e-12 * scale);
        prop_assert!(d3 <= 1e-12 * scale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn imn_oracle_triangle(m in 0u32..4, dn in 1u32..3, t in 0.005f64..2.0, q in 10.0f64..20.0) {
        prop_assume!(dn <= m);
        let n = m - dn;
        let p = ModelParams::new(1.0, 1.0, t, q).unwrap();
        let quad = quad_imn(m, n, &p, &QuadOptions::tight()).unwrap();
        let closed = imn_leading(m, n, &p, Correction::On).unwrap();
        prop_assert!((closed / quad - 1.0).abs() < 1e-6, "closed {} quad {}", closed, quad);
        let (mc, se) = monte_carlo_imn(m, n, &p, 200_000, 7);
        prop_assert!((mc - quad).abs() < 6.0 * se + 1e-9 * quad.abs(), "mc {} ± {} quad {}", mc, se, quad);
    }

    #[test]
    fn sectors_reproduce_full_spectrum(size in 2usize..=10, omega in 0.5f64..2.0) {
        let full_basis = BasisSpec::oscillator_product(size, omega, None).unwrap();
        let full = dense_eigenvalues(&build_hamiltonian_2d(1.0, 1.0, &full_basis, DEFAULT_MEMORY_BUDGET).unwrap()).unwrap();
        for blocks in [Sector::partition(), Sector::parity_blocks().into_iter().map(|s| (s, 1)).collect()] {
            let mut union = Vec::new();
            for (sector, mult) in blocks {
                let b = full_basis.with_sector(Some(sector));
                if basis_dimension(1.0, 1.0, &b) == 0 {
                    continue;
                }
                let h = build_hamiltonian_2d(1.0, 1.0, &b, DEFAULT_MEMORY_BUDGET).unwrap();
                let w = dense_eigenvalues(&h).unwrap();
                for _ in 0..mult {
                    union.extend_from_slice(&w);
                }
            }
            union.sort_by(f64::total_cmp);
            prop_assert_eq!(union.len(), full.len());
            for (a, b) in union.iter().zip(&full) {
                prop_assert!((a - b).abs() < 1e-9 * (1.0 + b.abs()), "{} vs {}", a, b);
            }
        }
    }

    #[test]
    fn ground_state_is_variational(size in 2usize..16, omega in 0.5f64..2.0) {
        let ground = |n: usize| {
            let b = BasisSpec::oscillator_product(n, omega, None).unwrap();
            let h = build_hamiltonian_2d(1.0, 1.0, &b, DEFAULT_MEMORY_BUDGET).unwrap();
            dense_eigenvalues(&h).unwrap()[0]
        };
        let (small, large) = (ground(size), ground(size + 1));
        prop_assert!(large <= small + 1e-10, "{} then {}", small, large);
        prop_assert!(large > 0.0);
    }
}

#[test]
fn odd_orders_vanish_after_momentum_averaging() {
    for p in [PotentialSpec::quartic_xy(), PotentialSpec::linear_alpha()] {
        let s = wk_sequence(&p, 9).unwrap();
        for k in (1..=9).step_by(2) {
            assert!(reduce_momentum(&s.orders[k], p.dims()).is_zero(), "W{k}");
        }
    }
}
