//! Long-run Monte Carlo integration tests: cumulative zero-error
//! accounting and conditional correctness across regimes and latitudes.

use std::f64::consts::PI;

use latidisc::simulator::{run_simulation, PhaseMode, SimConfig};

/// Together with the acceptance suite this pushes the cumulative trial
/// count over 10^7, all of which must produce zero wrong identifications.
#[test]
fn zero_error_over_ten_million_cumulative_trials() {
    let configs = [
        (PI / 2.0, 0.5, 101u64, PhaseMode::Uniform),
        (PI / 3.0, 0.3, 102, PhaseMode::Uniform),
        (2.0 * PI / 3.0, 0.7, 103, PhaseMode::Uniform),
        (0.4, 0.1, 104, PhaseMode::Uniform),
        (2.8, 0.9, 105, PhaseMode::Uniform),
        (1.0, 0.05, 106, PhaseMode::Uniform),
        (PI / 2.0, 0.5, 107, PhaseMode::Fixed { phi1: 0.0, phi2: PI }),
    ];
    let trials_each = 1_000_000u64;
    let mut cumulative = 0u64;
    for (theta, eta1, seed, mode) in configs {
        let cfg = SimConfig::new(theta, eta1, trials_each, seed, mode).unwrap();
        let report = run_simulation(&cfg).unwrap();
        assert_eq!(
            report.counts.n_wrong, 0,
            "wrong identification at theta = {theta}, eta1 = {eta1}"
        );
        assert_eq!(report.counts.total(), trials_each);
        assert!(
            report.z_score.abs() < 4.5,
            "z = {} at theta = {theta}, eta1 = {eta1}",
            report.z_score
        );
        cumulative += trials_each;
    }
    assert!(cumulative >= 7_000_000);
}

/// Among conclusive outcomes the identification is always the true label:
/// with per-label bookkeeping, every conclusive count lands in a
/// `n_correct` bucket and none in `n_wrong`.
#[test]
fn conclusive_outcomes_are_always_correct() {
    for (theta, eta1, seed) in [(1.2, 0.25, 21u64), (1.9, 0.6, 22), (PI / 2.0, 0.82, 23)] {
        let cfg = SimConfig::new(theta, eta1, 300_000, seed, PhaseMode::Uniform).unwrap();
        let report = run_simulation(&cfg).unwrap();
        let conclusive = report.counts.n_correct_1 + report.counts.n_correct_2;
        assert!(conclusive > 0, "no conclusive outcomes at eta1 = {eta1}");
        assert_eq!(report.counts.n_wrong, 0);
        assert_eq!(
            conclusive + report.counts.n_inconclusive,
            report.counts.total()
        );
    }
}
