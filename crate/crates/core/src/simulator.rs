//! Born-rule Monte Carlo verification of the optimal measurement.
//!
//! Each trial draws the unknown phases and the true state label, forms the
//! pure 8-dim input, applies the optimal POVM via the Born rule, and
//! tallies the outcome. Trials are split into fixed-size blocks, each
//! driven by its own ChaCha12 stream derived from `(seed, block index)`,
//! so results are bit-identical for a given seed regardless of how many
//! worker threads execute the blocks.

use std::f64::consts::TAU;
use std::ops::Add;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::discrimination::{
    optimal_average_probability, pure_state_success, total_povm, Outcome, Povm,
};
use crate::error::{Error, Result};
use crate::matrix::Ket;
use crate::states::{total_input_ket, Priors, StateLabel};

/// PRNG recorded in every report for reproducibility: ChaCha12 with one
/// independent stream per 8192-trial block.
pub const RNG_ALGORITHM: &str = "chacha12-block-streams";

/// Negative Born probabilities beyond this magnitude indicate a broken
/// POVM rather than roundoff.
pub const PROB_CLIP_TOL: f64 = 1e-12;

/// Allowed deviation of the outcome-probability sum from 1.
pub const PROB_SUM_TOL: f64 = 1e-10;

const TRIALS_PER_BLOCK: u64 = 8192;

/// How the unknown phases are chosen per trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseMode {
    /// Independent uniform draws over [0, 2π) each trial.
    Uniform,
    /// The same fixed phases every trial.
    Fixed { phi1: f64, phi2: f64 },
}

/// Parameters of one simulation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    theta: f64,
    priors: Priors,
    trials: u64,
    seed: u64,
    phase_mode: PhaseMode,
}

impl SimConfig {
    pub fn new(
        theta: f64,
        eta1: f64,
        trials: u64,
        seed: u64,
        phase_mode: PhaseMode,
    ) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta,
                range: "[0, pi]",
            });
        }
        if trials == 0 {
            return Err(Error::OutOfRange {
                name: "trials",
                value: 0.0,
                range: "[1, ...)",
            });
        }
        Ok(Self {
            theta,
            priors: Priors::new(eta1)?,
            trials,
            seed,
            phase_mode,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn priors(&self) -> Priors {
        self.priors
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn phase_mode(&self) -> PhaseMode {
        self.phase_mode
    }
}

/// Outcome tallies of a run. `n_wrong` counts identifications of the
/// wrong state and must be zero for an unambiguous measurement.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OutcomeCounts {
    pub n_correct_1: u64,
    pub n_correct_2: u64,
    pub n_wrong: u64,
    pub n_inconclusive: u64,
}

impl OutcomeCounts {
    pub fn total(&self) -> u64 {
        self.n_correct_1 + self.n_correct_2 + self.n_wrong + self.n_inconclusive
    }
}

impl Add for OutcomeCounts {
    type Output = OutcomeCounts;

    fn add(self, rhs: OutcomeCounts) -> OutcomeCounts {
        OutcomeCounts {
            n_correct_1: self.n_correct_1 + rhs.n_correct_1,
            n_correct_2: self.n_correct_2 + rhs.n_correct_2,
            n_wrong: self.n_wrong + rhs.n_wrong,
            n_inconclusive: self.n_inconclusive + rhs.n_inconclusive,
        }
    }
}

/// Result of a simulation run.
///
/// `z_score` compares the empirical success frequency against the
/// analytic prediction under the binomial null; it is reported as 0 when
/// the prediction is deterministic (variance zero).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub counts: OutcomeCounts,
    pub empirical_success: f64,
    pub predicted_success: f64,
    pub z_score: f64,
    pub rng_algorithm: &'static str,
}

/// Samples one measurement outcome from `⟨state|Π_k|state⟩` using a
/// single uniform variate and the inverse CDF over the outcome order
/// (identify-1, identify-2, inconclusive).
///
/// Born probabilities in `[-PROB_CLIP_TOL, 0)` are clipped to zero;
/// anything more negative, or a probability sum off from 1 by more than
/// [`PROB_SUM_TOL`], is a hard error.
pub fn sample_outcome<R: Rng + ?Sized>(povm: &Povm, state: &Ket, rng: &mut R) -> Result<Outcome> {
    let mut q = [0.0_f64; 3];
    for (slot, element) in q.iter_mut().zip(povm.elements()) {
        let p = state.expectation(element)?;
        if p < -PROB_CLIP_TOL {
            return Err(Error::NegativeProbability(p));
        }
        *slot = p.max(0.0);
    }
    let sum = q[0] + q[1] + q[2];
    let deviation = (sum - 1.0).abs();
    if deviation > PROB_SUM_TOL {
        return Err(Error::BrokenOutcomeDistribution { sum, deviation });
    }
    // Scaling the variate by the sum renormalizes without disturbing
    // exactly-zero outcome probabilities.
    let u = rng.random::<f64>() * sum;
    Ok(if u < q[0] {
        Outcome::Identify1
    } else if u < q[0] + q[1] {
        Outcome::Identify2
    } else {
        Outcome::Inconclusive
    })
}

fn run_block(cfg: &SimConfig, povm: &Povm, block: u64) -> Result<OutcomeCounts> {
    let lo = block * TRIALS_PER_BLOCK;
    let hi = (lo + TRIALS_PER_BLOCK).min(cfg.trials);
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    rng.set_stream(block);
    let mut counts = OutcomeCounts::default();
    for _ in lo..hi {
        let (phi1, phi2) = match cfg.phase_mode {
            PhaseMode::Uniform => (rng.random_range(0.0..TAU), rng.random_range(0.0..TAU)),
            PhaseMode::Fixed { phi1, phi2 } => (phi1, phi2),
        };
        let label = if rng.random::<f64>() < cfg.priors.eta1() {
            StateLabel::One
        } else {
            StateLabel::Two
        };
        let state = total_input_ket(label, cfg.theta, phi1, phi2)?;
        match (sample_outcome(povm, &state, &mut rng)?, label) {
            (Outcome::Identify1, StateLabel::One) => counts.n_correct_1 += 1,
            (Outcome::Identify2, StateLabel::Two) => counts.n_correct_2 += 1,
            (Outcome::Inconclusive, _) => counts.n_inconclusive += 1,
            _ => counts.n_wrong += 1,
        }
    }
    Ok(counts)
}

/// Runs the full Monte Carlo experiment described by `cfg` against the
/// optimal POVM and compares the empirical success rate with the analytic
/// prediction (phase-averaged for uniform mode, pure-state for fixed
/// phases).
pub fn run_simulation(cfg: &SimConfig) -> Result<SimReport> {
    let povm = total_povm(cfg.priors);
    let predicted_success = match cfg.phase_mode {
        PhaseMode::Uniform => optimal_average_probability(cfg.theta, cfg.priors)?,
        PhaseMode::Fixed { phi1, phi2 } => pure_state_success(cfg.theta, phi1, phi2, cfg.priors)?,
    };
    let blocks = cfg.trials.div_ceil(TRIALS_PER_BLOCK);
    let counts = (0..blocks)
        .into_par_iter()
        .map(|block| run_block(cfg, &povm, block))
        .try_reduce(OutcomeCounts::default, |a, b| Ok(a + b))?;
    debug_assert_eq!(counts.total(), cfg.trials);

    let empirical_success =
        (counts.n_correct_1 + counts.n_correct_2) as f64 / cfg.trials as f64;
    let variance = predicted_success * (1.0 - predicted_success) / cfg.trials as f64;
    let z_score = if variance > 0.0 {
        (empirical_success - predicted_success) / variance.sqrt()
    } else {
        0.0
    };
    Ok(SimReport {
        counts,
        empirical_success,
        predicted_success,
        z_score,
        rng_algorithm: RNG_ALGORITHM,
    })
}
