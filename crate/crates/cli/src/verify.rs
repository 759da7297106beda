//! The `verify` subcommand's oracle checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use std::f64::consts::PI;

use latidisc::discrimination::{beta_bound, build_e0, total_povm, unambiguity_defect, Outcome};
use latidisc::matrix::ComplexMatrix;
use latidisc::optimizer::verify_piecewise;
use latidisc::states::{average_state_closed, average_state_quadrature, Priors, StateLabel};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub check: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn new(check: &'static str, max_deviation: f64, tolerance: f64) -> Self {
        Self {
            check,
            max_deviation,
            tolerance,
            pass: max_deviation <= tolerance,
        }
    }
}

/// Runs every verification oracle and returns one row per check.
pub fn run_checks(
    resolution: usize,
    eta_samples: usize,
    quadrature_nodes: usize,
    seed: u64,
    inject_fault: bool,
) -> latidisc::Result<Vec<Check>> {
    let mut checks = Vec::new();

    // (a) closed-form vs quadrature state equivalence
    let mut state_dev = 0.0_f64;
    for i in 0..50 {
        let theta = PI * i as f64 / 49.0;
        for which in [StateLabel::One, StateLabel::Two] {
            let closed = average_state_closed(which, theta)?;
            let quad = average_state_quadrature(which, theta, quadrature_nodes)?;
            state_dev = state_dev.max(closed.mat().max_abs_diff(quad.mat()));
        }
    }
    checks.push(Check::new("state-equivalence", state_dev, 1e-11));

    // (b) grid search vs analytic optimum
    let sweep = verify_piecewise(resolution, eta_samples)?;
    checks.push(Check::new(
        "grid-vs-analytic",
        sweep.max_deviation,
        sweep.tolerance(),
    ));

    // (c) POVM validity and unambiguity on random (theta, eta1) pairs
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut psd_dev = 0.0_f64;
    let mut completeness_dev = 0.0_f64;
    let mut unamb_dev = 0.0_f64;
    for _ in 0..200 {
        let theta = rng.random_range(0.0..=PI);
        let eta1 = rng.random_range(0.0..=1.0);
        let povm = total_povm(Priors::new(eta1)?);
        for element in povm.elements() {
            let min_eig = element.hermitian_eigenvalues()?[0];
            psd_dev = psd_dev.max(-min_eig);
        }
        let sum = &(povm.element(Outcome::Identify1) + povm.element(Outcome::Identify2))
            + povm.element(Outcome::Inconclusive);
        completeness_dev = completeness_dev.max(sum.max_abs_diff(&ComplexMatrix::identity(8)));
        let r1 = average_state_closed(StateLabel::One, theta)?;
        let r2 = average_state_closed(StateLabel::Two, theta)?;
        let (d_a, d_b) = unambiguity_defect(&povm, &r1, &r2)?;
        unamb_dev = unamb_dev.max(d_a.abs()).max(d_b.abs());
    }
    checks.push(Check::new("povm-positivity", psd_dev.max(0.0), 1e-10));
    checks.push(Check::new("povm-completeness", completeness_dev, 1e-12));
    checks.push(Check::new("unambiguity", unamb_dev, 1e-13));

    // (d) eigenvalue PSD test flips exactly at beta_bound
    let builder: fn(f64, f64) -> ComplexMatrix = if inject_fault { faulty_e0 } else { plain_e0 };
    let n = 1000;
    let mut violations = 0u32;
    for i in 0..n {
        let alpha = i as f64 / (n - 1) as f64;
        let bound = beta_bound(alpha);
        let below = (bound - 1e-9).clamp(0.0, 1.0);
        if !builder(alpha, below).is_psd(1e-10)? {
            violations += 1;
        }
        let above = bound + 1e-6;
        if above <= 1.0 && builder(alpha, above).is_psd(1e-10)? {
            violations += 1;
        }
    }
    checks.push(Check::new("e0-bound-agreement", f64::from(violations), 0.0));

    Ok(checks)
}

fn plain_e0(alpha: f64, beta: f64) -> ComplexMatrix {
    build_e0(alpha, beta).expect("grid parameters lie in [0, 1]")
}

/// Deliberately corrupted inconclusive operator for the harness
/// self-test: the sign of the (|u⟩|0⟩, |v⟩|0⟩) coupling is flipped, which
/// moves the PSD boundary away from beta_bound.
fn faulty_e0(alpha: f64, beta: f64) -> ComplexMatrix {
    let mut m = plain_e0(alpha, beta);
    m[(1, 2)] = -m[(1, 2)];
    m[(2, 1)] = -m[(2, 1)];
    m
}
