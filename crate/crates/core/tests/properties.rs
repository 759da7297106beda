//! Property-based and invariant tests spanning the whole library.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;

use latidisc::discrimination::{
    analytic_subspace_optimum, beta_bound, build_e0, optimal_average_probability,
    pure_state_success, total_povm, unambiguity_defect, Outcome,
};
use latidisc::matrix::{ComplexMatrix, Ket};
use latidisc::states::{average_state_closed, average_state_quadrature, Priors, StateLabel};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn matrix_strategy(
    rows: usize,
    cols: usize,
    entry: impl Strategy<Value = f64> + Clone,
) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec((entry.clone(), entry), rows * cols).prop_map(move |v| {
        ComplexMatrix::from_fn(rows, cols, |i, j| {
            let (re, im) = v[i * cols + j];
            c(re, im)
        })
    })
}

/// Entries k/16 with |k| <= 16: triple products stay exactly
/// representable, so Kronecker associativity must be bit-exact.
fn dyadic() -> impl Strategy<Value = f64> + Clone {
    (-16i32..=16).prop_map(|k| k as f64 / 16.0)
}

proptest! {
    #[test]
    fn kron_associative_exactly_on_dyadic_entries(
        a in matrix_strategy(2, 2, dyadic()),
        b in matrix_strategy(2, 2, dyadic()),
        d in matrix_strategy(2, 2, dyadic()),
    ) {
        let left = a.kron(&b).kron(&d);
        let right = a.kron(&b.kron(&d));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn kron_associative_up_to_roundoff_in_general(
        a in matrix_strategy(2, 2, -1.0..1.0),
        b in matrix_strategy(2, 2, -1.0..1.0),
        d in matrix_strategy(2, 2, -1.0..1.0),
    ) {
        let left = a.kron(&b).kron(&d);
        let right = a.kron(&b.kron(&d));
        prop_assert!(left.max_abs_diff(&right) <= 1e-14);
    }

    #[test]
    fn hermitian_eigenvalue_sum_matches_trace(
        a in matrix_strategy(4, 4, -1.0..1.0),
    ) {
        let h = &a + &a.adjoint();
        let eigs = h.hermitian_eigenvalues().unwrap();
        let sum: f64 = eigs.iter().sum();
        let tr = h.trace().re;
        prop_assert!((sum - tr).abs() <= 1e-9 * h.max_abs().max(1.0));
    }

    #[test]
    fn projector_is_idempotent(
        v in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 8)
            .prop_filter("nonzero", |v| {
                v.iter().map(|(re, im)| re * re + im * im).sum::<f64>() > 1e-3
            }),
    ) {
        let norm = v.iter().map(|(re, im)| re * re + im * im).sum::<f64>().sqrt();
        let ket = Ket::new(v.into_iter().map(|(re, im)| c(re / norm, im / norm)).collect())
            .unwrap();
        let p = ket.projector().unwrap();
        let diff = &(&p * &p) - &p;
        prop_assert!(diff.max_abs() <= 1e-12);
        prop_assert!((p.trace().re - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn total_povm_is_valid_for_random_priors(eta1 in 0.0..=1.0f64) {
        let povm = total_povm(Priors::new(eta1).unwrap());
        for element in povm.elements() {
            prop_assert!(element.is_psd(1e-10).unwrap());
        }
        let sum = &(povm.element(Outcome::Identify1) + povm.element(Outcome::Identify2))
            + povm.element(Outcome::Inconclusive);
        prop_assert!(sum.max_abs_diff(&ComplexMatrix::identity(8)) <= 1e-12);
    }

    #[test]
    fn unambiguity_is_exact_on_average_states(
        theta in 0.0..=PI,
        eta1 in 0.0..=1.0f64,
    ) {
        let povm = total_povm(Priors::new(eta1).unwrap());
        let r1 = average_state_closed(StateLabel::One, theta).unwrap();
        let r2 = average_state_closed(StateLabel::Two, theta).unwrap();
        let (d_a, d_b) = unambiguity_defect(&povm, &r1, &r2).unwrap();
        prop_assert!(d_a.abs() <= 1e-13);
        prop_assert!(d_b.abs() <= 1e-13);
    }

    #[test]
    fn pure_success_matches_direct_expectation(
        theta in 0.0..=PI,
        phi1 in 0.0..TAU,
        phi2 in 0.0..TAU,
        eta1 in 0.0..=1.0f64,
    ) {
        let priors = Priors::new(eta1).unwrap();
        let povm = total_povm(priors);
        let k1 = latidisc::states::total_input_ket(StateLabel::One, theta, phi1, phi2).unwrap();
        let k2 = latidisc::states::total_input_ket(StateLabel::Two, theta, phi1, phi2).unwrap();
        let direct = eta1 * k1.expectation(povm.element(Outcome::Identify1)).unwrap()
            + (1.0 - eta1) * k2.expectation(povm.element(Outcome::Identify2)).unwrap();
        let closed = pure_state_success(theta, phi1, phi2, priors).unwrap();
        prop_assert!((direct - closed).abs() <= 1e-12);
    }

    #[test]
    fn average_probability_symmetries(
        theta in 0.0..=PI,
        eta1 in 0.0..=1.0f64,
    ) {
        let p = optimal_average_probability(theta, Priors::new(eta1).unwrap()).unwrap();
        let prior_flipped =
            optimal_average_probability(theta, Priors::new(1.0 - eta1).unwrap()).unwrap();
        let latitude_flipped =
            optimal_average_probability(PI - theta, Priors::new(eta1).unwrap()).unwrap();
        prop_assert!((p - prior_flipped).abs() <= 1e-15);
        prop_assert!((p - latitude_flipped).abs() <= 1e-12);
    }
}

#[test]
fn closed_form_matches_quadrature_on_theta_grid() {
    let mut worst = 0.0_f64;
    for i in 0..50 {
        let theta = PI * i as f64 / 49.0;
        for which in [StateLabel::One, StateLabel::Two] {
            let closed = average_state_closed(which, theta).unwrap();
            let quad = average_state_quadrature(which, theta, 64).unwrap();
            worst = worst.max(closed.mat().max_abs_diff(quad.mat()));
        }
    }
    assert!(worst <= 1e-11, "max deviation {worst:.3e}");
}

#[test]
fn weight_identity_on_theta_grid() {
    for i in 0..50 {
        let theta = PI * i as f64 / 49.0;
        let c2 = (0.5 * theta).cos().powi(2);
        let s2 = (0.5 * theta).sin().powi(2);
        let p1 = 3.0 * c2 * c2 * s2;
        let p2 = 3.0 * c2 * s2 * s2;
        let rho = average_state_closed(StateLabel::One, theta).unwrap();
        let corner = rho.mat()[(0, 0)].re + rho.mat()[(7, 7)].re;
        assert!((corner + p1 + p2 - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn averaged_states_agree_on_the_pure_corner_block() {
    for theta in [0.3, 1.0, PI / 2.0, 2.4] {
        let r1 = average_state_closed(StateLabel::One, theta).unwrap();
        let r2 = average_state_closed(StateLabel::Two, theta).unwrap();
        for (i, j) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
            assert!((r1.mat()[(i, j)] - r2.mat()[(i, j)]).norm() <= 1e-15);
        }
    }
}

#[test]
fn phase_grid_mean_of_pure_success_equals_average_probability() {
    let nodes = 8;
    for theta in [0.4, PI / 2.0, 2.0, 3.0] {
        for eta1 in [0.1, 0.5, 0.77, 0.9] {
            let priors = Priors::new(eta1).unwrap();
            let mut mean = 0.0;
            for j in 0..nodes {
                for k in 0..nodes {
                    let phi1 = TAU * j as f64 / nodes as f64;
                    let phi2 = TAU * k as f64 / nodes as f64;
                    mean += pure_state_success(theta, phi1, phi2, priors).unwrap();
                }
            }
            mean /= (nodes * nodes) as f64;
            let avg = optimal_average_probability(theta, priors).unwrap();
            assert!(
                (mean - avg).abs() <= 1e-12,
                "theta {theta} eta1 {eta1}: {mean} vs {avg}"
            );
        }
    }
}

#[test]
fn branches_are_continuous_at_the_thresholds() {
    // Evaluate both closed-form branch expressions at each threshold.
    let low = |eta1: f64| (1.0 - eta1) / 3.0;
    let middle = |eta1: f64| (4.0 / 9.0) * (1.0 - (eta1 * (1.0 - eta1)).sqrt());
    let high = |eta1: f64| eta1 / 3.0;
    assert!((low(0.2) - middle(0.2)).abs() <= 1e-12);
    assert!((low(0.2) - 4.0 / 15.0).abs() <= 1e-12);
    assert!((high(0.8) - middle(0.8)).abs() <= 1e-12);

    for theta in [0.7, PI / 2.0, 2.3] {
        let c2 = (0.5 * theta).cos().powi(2);
        let s2 = (0.5 * theta).sin().powi(2);
        let scale = 3.0 * c2 * s2;
        for (eta1, a, b) in [(0.2, low(0.2), middle(0.2)), (0.8, middle(0.8), high(0.8))] {
            let p = optimal_average_probability(theta, Priors::new(eta1).unwrap()).unwrap();
            assert!((p - scale * a).abs() <= 1e-12);
            assert!((p - scale * b).abs() <= 1e-12);
        }
    }
}

#[test]
fn optimum_parameters_stay_feasible() {
    for i in 0..=100 {
        let eta1 = i as f64 / 100.0;
        let r = analytic_subspace_optimum(Priors::new(eta1).unwrap());
        assert!((0.0..=1.0).contains(&r.alpha), "alpha at eta1 = {eta1}");
        assert!((0.0..=1.0).contains(&r.beta), "beta at eta1 = {eta1}");
        assert!(
            r.beta <= beta_bound(r.alpha) + 1e-12,
            "infeasible optimum at eta1 = {eta1}"
        );
    }
}

#[test]
fn beta_bound_is_tight_on_alpha_grid() {
    for i in 0..=100 {
        let alpha = i as f64 / 100.0;
        let bound = beta_bound(alpha);
        let below = (bound - 1e-9).clamp(0.0, 1.0);
        assert!(
            build_e0(alpha, below).unwrap().is_psd(1e-10).unwrap(),
            "E0 not PSD just below the bound at alpha = {alpha}"
        );
        let above = bound + 1e-6;
        if above <= 1.0 {
            assert!(
                !build_e0(alpha, above).unwrap().is_psd(1e-10).unwrap(),
                "E0 still PSD above the bound at alpha = {alpha}"
            );
        }
    }
}

#[test]
fn feasibility_by_eigenvalues_agrees_with_bound_on_2d_grid() {
    let res = 101;
    for i in 0..res {
        let alpha = i as f64 / (res - 1) as f64;
        let bound = beta_bound(alpha);
        for j in 0..res {
            let beta = j as f64 / (res - 1) as f64;
            let psd = build_e0(alpha, beta).unwrap().is_psd(1e-10).unwrap();
            if beta <= bound {
                assert!(psd, "feasible node rejected at ({alpha}, {beta})");
            } else if beta > bound + 1e-6 {
                assert!(!psd, "infeasible node accepted at ({alpha}, {beta})");
            }
        }
    }
}
