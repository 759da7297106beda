//! Brute-force verification that the piecewise analytic optimum really is
//! the maximum of the constrained (α, β) problem.
//!
//! Two search paths exist. The fast 1-D path exploits that the objective
//! is increasing in β, so the best β for a fixed α sits on the feasibility
//! boundary. The 2-D path makes no such assumption: it scans the full
//! parameter square and decides feasibility per node with the eigenvalue
//! PSD test, so it is the oracle of record.

use rayon::prelude::*;
use serde::Serialize;

use crate::discrimination::{analytic_subspace_optimum, beta_bound, build_e0};
use crate::error::{Error, Result};
use crate::matrix::PSD_TOL;
use crate::states::Priors;

/// Outcome of a grid search over the feasible (α, β) region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSearchResult {
    pub best_alpha: f64,
    pub best_beta: f64,
    pub best_probability: f64,
    pub resolution: usize,
}

/// Result of sweeping priors and comparing grid search against the
/// analytic optimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PiecewiseReport {
    pub max_deviation: f64,
    pub worst_eta1: f64,
    pub resolution: usize,
    pub eta_samples: usize,
}

impl PiecewiseReport {
    /// Grid-resolution error bound the deviation must respect.
    pub fn tolerance(&self) -> f64 {
        10.0 / self.resolution as f64
    }

    pub fn passes(&self) -> bool {
        self.max_deviation <= self.tolerance()
    }
}

#[derive(Clone, Copy)]
struct Candidate {
    probability: f64,
    alpha: f64,
    beta: f64,
}

impl Candidate {
    const WORST: Candidate = Candidate {
        probability: f64::NEG_INFINITY,
        alpha: f64::INFINITY,
        beta: f64::INFINITY,
    };

    /// Deterministic total order: higher probability wins, ties broken by
    /// smaller α, then smaller β. Keeps parallel reduction associative.
    fn better(self, other: Candidate) -> Candidate {
        if self.probability != other.probability {
            return if self.probability > other.probability {
                self
            } else {
                other
            };
        }
        if self.alpha != other.alpha {
            return if self.alpha < other.alpha { self } else { other };
        }
        if self.beta <= other.beta {
            self
        } else {
            other
        }
    }
}

fn check_resolution(resolution: usize) -> Result<()> {
    if resolution < 100 {
        return Err(Error::OutOfRange {
            name: "resolution",
            value: resolution as f64,
            range: "[100, ...)",
        });
    }
    Ok(())
}

fn objective(priors: Priors, alpha: f64, beta: f64) -> f64 {
    (priors.eta1() * alpha + priors.eta2() * beta) / 3.0
}

/// Fast 1-D search: α on a `resolution`-point grid over [0, 1], β pinned
/// to `min(1, beta_bound(α))`.
pub fn grid_search_optimum(priors: Priors, resolution: usize) -> Result<GridSearchResult> {
    check_resolution(resolution)?;
    let step = 1.0 / (resolution - 1) as f64;
    let best = (0..resolution)
        .into_par_iter()
        .map(|i| {
            let alpha = i as f64 * step;
            let beta = beta_bound(alpha).min(1.0);
            Candidate {
                probability: objective(priors, alpha, beta),
                alpha,
                beta,
            }
        })
        .reduce(|| Candidate::WORST, Candidate::better);
    Ok(GridSearchResult {
        best_alpha: best.alpha,
        best_beta: best.beta,
        best_probability: best.probability,
        resolution,
    })
}

/// Full 2-D scan over the (α, β) square with per-node PSD verification of
/// the inconclusive operator; slower cross-check of the 1-D path.
pub fn grid_search_optimum_2d(priors: Priors, resolution: usize) -> Result<GridSearchResult> {
    check_resolution(resolution)?;
    let step = 1.0 / (resolution - 1) as f64;
    let best = (0..resolution)
        .into_par_iter()
        .map(|i| {
            let alpha = i as f64 * step;
            let mut row_best = Candidate::WORST;
            for j in 0..resolution {
                let beta = j as f64 * step;
                let e0 = build_e0(alpha, beta).expect("grid parameters lie in [0, 1]");
                let feasible = e0.is_psd(PSD_TOL).expect("E0 is Hermitian by construction");
                if feasible {
                    row_best = row_best.better(Candidate {
                        probability: objective(priors, alpha, beta),
                        alpha,
                        beta,
                    });
                }
            }
            row_best
        })
        .reduce(|| Candidate::WORST, Candidate::better);
    Ok(GridSearchResult {
        best_alpha: best.alpha,
        best_beta: best.beta,
        best_probability: best.probability,
        resolution,
    })
}

/// Sweeps η₁ over `eta_samples` points in [0, 1] and reports the largest
/// absolute deviation between [`grid_search_optimum`] and the analytic
/// optimum. A single sample evaluates the symmetric point η₁ = 1/2.
pub fn verify_piecewise(resolution: usize, eta_samples: usize) -> Result<PiecewiseReport> {
    check_resolution(resolution)?;
    if eta_samples == 0 {
        return Err(Error::OutOfRange {
            name: "eta_samples",
            value: 0.0,
            range: "[1, ...)",
        });
    }
    let etas: Vec<f64> = if eta_samples == 1 {
        vec![0.5]
    } else {
        (0..eta_samples)
            .map(|i| i as f64 / (eta_samples - 1) as f64)
            .collect()
    };
    let (max_deviation, worst_eta1) = etas
        .par_iter()
        .map(|&eta1| {
            let priors = Priors::new(eta1).expect("sweep grid lies in [0, 1]");
            let grid = grid_search_optimum(priors, resolution)?;
            let analytic = analytic_subspace_optimum(priors);
            Ok(((grid.best_probability - analytic.probability).abs(), eta1))
        })
        .try_reduce(
            || (f64::NEG_INFINITY, f64::NAN),
            // tie-break on eta1 keeps the reduction order-independent
            |a, b| {
                Ok(if a.0 != b.0 {
                    if a.0 > b.0 { a } else { b }
                } else if a.1 <= b.1 || b.1.is_nan() {
                    a
                } else {
                    b
                })
            },
        )?;
    Ok(PiecewiseReport {
        max_deviation,
        worst_eta1,
        resolution,
        eta_samples,
    })
}
