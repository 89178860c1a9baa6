use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use superrad_core::analytics::{chi_max, AnalyticContext};
use superrad_core::coupling::{coupling_matrix, pair_coupling, CouplingModel, Sign, SingleAtomTerm};
use superrad_core::design::{similar_alpha, solve_design, transform_chi, DesignTarget};
use superrad_core::lattice::{build_lattice, Dimension, LatticePosition, LatticeSpec};
use superrad_core::specfun::{bessel_j0, integrate, sinc, upper_incomplete_gamma, QuadratureSpec};
use superrad_core::spectrum::solve_modes;
use superrad_core::Error;

fn dim_strategy() -> impl Strategy<Value = Dimension> {
    (1u32..=3).prop_map(|d| Dimension::new(d).unwrap())
}

fn small_side(dim: Dimension) -> impl Strategy<Value = i64> {
    let max_half = match dim {
        Dimension::One => 30,
        Dimension::Two => 6,
        Dimension::Three => 3,
    };
    (1i64..=max_half).prop_map(|h| 2 * h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_has_m_to_the_d_sites_spaced_by_k0a(
        (dim, m) in dim_strategy().prop_flat_map(|d| (Just(d), small_side(d))),
        k0a in 1.01f64..10.0,
    ) {
        let lattice = build_lattice(&LatticeSpec::new(dim.get(), k0a, m).unwrap());
        prop_assert_eq!(lattice.len(), (m as usize).pow(dim.get()));
        prop_assert_eq!(lattice.iter().filter(|p| p.is_origin()).count(), 1);
        let origin = lattice.iter().find(|p| p.is_origin()).unwrap();
        let nearest = lattice.iter().filter(|p| !p.is_origin()).map(|p| p.distance(origin)).fold(f64::INFINITY, f64::min);
        prop_assert!((nearest - k0a).abs() < 1e-12 * k0a);
    }

    #[test]
    fn pair_coupling_is_symmetric(
        dim in dim_strategy(),
        a in prop::collection::vec(-6i32..=6, 3),
        b in prop::collection::vec(-6i32..=6, 3),
        alpha in 0.0f64..2.0,
        k0a in 1.01f64..6.0,
        flip in any::<bool>(),
    ) {
        let n = dim.as_usize();
        prop_assume!(a[..n] != b[..n]);
        let mut model = CouplingModel::standard(dim, 1.3, alpha).unwrap();
        if flip {
            model = model.with_epsilon(Sign::Minus);
        }
        let (ri, rj) = (LatticePosition::new(dim, &a[..n], k0a), LatticePosition::new(dim, &b[..n], k0a));
        let vij = pair_coupling(&ri, &rj, &[model]).unwrap();
        let vji = pair_coupling(&rj, &ri, &[model]).unwrap();
        prop_assert_eq!(vij, vji);
    }

    #[test]
    fn coupling_magnitude_decays_along_a_ray(
        dim in dim_strategy(),
        alpha in 0.01f64..2.0,
        k0a in 1.01f64..6.0,
        n in 1i32..50,
    ) {
        let model = CouplingModel::standard(dim, 1.0, alpha).unwrap();
        let site = |j: i32| {
            let mut idx = vec![0; dim.as_usize()];
            idx[0] = j;
            LatticePosition::new(dim, &idx, k0a)
        };
        let near = pair_coupling(&site(0), &site(n), &[model]).unwrap().norm();
        let far = pair_coupling(&site(0), &site(n + 1), &[model]).unwrap().norm();
        prop_assert!(far < near);
    }

    #[test]
    fn coupling_matrix_is_complex_symmetric(
        (dim, m) in dim_strategy().prop_flat_map(|d| (Just(d), small_side(d))),
        alpha in 0.0f64..2.0,
        k0a in 1.01f64..6.0,
        dw in -1.0f64..1.0,
    ) {
        let lattice = build_lattice(&LatticeSpec::new(dim.get(), k0a, m).unwrap());
        let model = CouplingModel::standard(dim, 0.8, alpha).unwrap();
        let mat = coupling_matrix(&lattice, &[model], SingleAtomTerm::new(dw)).unwrap();
        prop_assert!(mat.asymmetry() == 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eigenvalues_conserve_the_trace(
        (dim, m) in dim_strategy().prop_flat_map(|d| (Just(d), small_side(d))),
        alpha in 0.0f64..2.0,
        k0a in 1.01f64..6.0,
        magnitude in 0.1f64..3.0,
        dw in -1.0f64..1.0,
    ) {
        let lattice = build_lattice(&LatticeSpec::new(dim.get(), k0a, m).unwrap());
        let n = lattice.len() as f64;
        let model = CouplingModel::standard(dim, magnitude, alpha).unwrap();
        let res = solve_modes(&coupling_matrix(&lattice, &[model], SingleAtomTerm::new(dw)).unwrap()).unwrap();
        prop_assert!((res.total_rate() - n).abs() < 1e-9 * n);
        prop_assert!((res.total_shift() - n * dw).abs() < 1e-9 * n);
    }
}

proptest! {
    #[test]
    fn incomplete_gamma_recurrence(
        s in 0.05f64..2.0,
        r in 0.0f64..100.0,
        phase in -PI..PI,
    ) {
        let z = Complex64::from_polar(r, phase);
        prop_assume!(z.norm() > 1e-6);
        let lhs = upper_incomplete_gamma(s + 1.0, z).unwrap();
        let g = upper_incomplete_gamma(s, z).unwrap() * s;
        let t = (z.ln() * s).exp() * (-z).exp();
        let scale = lhs.norm().max(g.norm()).max(t.norm());
        prop_assert!((lhs - g - t).norm() <= 1e-9 * scale);
    }

    #[test]
    fn sinc_is_even_and_bounded(x in -1e3f64..1e3) {
        prop_assert_eq!(sinc(x), sinc(-x));
        prop_assert!(sinc(x).abs() <= 1.0);
    }

    #[test]
    fn design_round_trips(
        gamma in 1.001f64..1000.0,
        rho in -5.0f64..5.0,
        dim in dim_strategy(),
        frac in 0.0f64..0.9,
        magnitude in 0.2f64..5.0,
        k0a in 1.5f64..6.0,
        minus in any::<bool>(),
    ) {
        let alpha = frac * 0.5 * (dim.as_f64() + 1.0);
        let mut target = DesignTarget::new(gamma, rho * (gamma - 1.0), dim, alpha, magnitude, k0a);
        target.epsilon = Some(if minus { Sign::Minus } else { Sign::Plus });
        let s = match solve_design(&target) {
            Err(Error::Infeasible(_)) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assert!(s.residuals_exact.gamma.abs() <= 1e-9 * gamma);
        prop_assert!(s.residuals_exact.delta.abs() <= 1e-9 * gamma.max(target.delta.abs()));
        // the reported chi_max is the forward model at the rounded N
        let ctx = AnalyticContext::standard(dim, s.strength.norm(), alpha, s.k0a, s.atoms).unwrap();
        prop_assert!((chi_max(&ctx).unwrap() - s.chi_max).abs() <= 1e-12 * s.chi_max);
    }

    #[test]
    fn transformations_compose(
        chi in 1.0f64..1e5,
        a in 0.1f64..10.0, b in 0.1f64..10.0, c in 0.1f64..10.0, e in 0.1f64..10.0,
        dim in dim_strategy(),
        alpha in 0.0f64..2.0,
    ) {
        let twice = transform_chi(transform_chi(chi, a, b, dim, alpha).unwrap(), c, e, dim, alpha).unwrap();
        let once = transform_chi(chi, a * c, b * e, dim, alpha).unwrap();
        prop_assert!((twice - once).abs() <= 1e-12 * once.abs());
        let back = transform_chi(transform_chi(chi, a, b, dim, alpha).unwrap(), 1.0 / a, 1.0 / b, dim, alpha).unwrap();
        prop_assert!((back - chi).abs() <= 1e-12 * chi);
    }

    #[test]
    fn similar_alpha_is_an_involution(d1 in dim_strategy(), d2 in dim_strategy(), alpha in 0.0f64..2.0) {
        let there = similar_alpha(d1, alpha, d2).unwrap();
        prop_assume!(there.alpha_prime >= 0.0);
        let back = similar_alpha(d2, there.alpha_prime, d1).unwrap();
        prop_assert!((back.alpha_prime - alpha).abs() <= 1e-12 * alpha.max(1.0));
        prop_assert_eq!(similar_alpha(d1, alpha, d1).unwrap().alpha_prime, alpha);
    }
}

#[test]
fn bessel_matches_its_integral_representation() {
    let spec = QuadratureSpec::default().with_rel_tol(1e-13);
    for x in [0.5, 5.0, 50.0] {
        let q = integrate(|p: f64| Complex64::new((x * p.sin()).cos() / PI, 0.0), 0.0, PI, &spec).unwrap();
        assert!((bessel_j0(x).unwrap() - q.value.re).abs() < 1e-9, "x={x}");
    }
}
