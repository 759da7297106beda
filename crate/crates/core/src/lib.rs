//! Optimal programmable unambiguous discrimination between two unknown
//! latitudinal qubit states.
//!
//! A latitudinal state is a qubit `cos(θ/2)|0⟩ + e^{-iφ} sin(θ/2)|1⟩` with
//! a fixed polar angle θ and an unknown phase φ uniformly distributed over
//! [0, 2π). Two such states are loaded into the program registers A and C
//! of a three-qubit device; the data register B carries one of them with
//! prior probabilities (η₁, η₂), and the task is to identify which —
//! without ever misidentifying, at the price of an inconclusive outcome.
//!
//! Averaging over the unknown phases turns the problem into the
//! discrimination of two known mixed states, which block-diagonalize over
//! three invariant subspaces. The optimal three-outcome measurement comes
//! out piecewise in the prior: projective for η₁ < 1/5 or η₁ > 4/5 and a
//! proper POVM in between, built from the two-qubit singlet
//! `|v⟩ = (|01⟩ − |10⟩)/√2`.
//!
//! Module map:
//!
//! - [`matrix`]: dense complex matrices, kets, Kronecker products,
//!   Hermitian eigenvalues, PSD tests.
//! - [`states`]: latitudinal and total register states, phase-averaged
//!   density matrices (closed form and quadrature), subspace bases.
//! - [`discrimination`]: reduced subspace problems, the parametric POVM
//!   and its feasibility region, the piecewise optimum, the global
//!   optimal POVM, pure-state success probabilities.
//! - [`optimizer`]: brute-force grid verification of the analytic
//!   optimum.
//! - [`simulator`]: seeded Born-rule Monte Carlo with exact zero-error
//!   accounting.

pub mod discrimination;
pub mod error;
pub mod matrix;
pub mod optimizer;
pub mod simulator;
pub mod states;

pub use discrimination::{Outcome, OptimumReport, Povm, Regime, SubspaceProblem};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, Ket};
pub use optimizer::{GridSearchResult, PiecewiseReport};
pub use simulator::{OutcomeCounts, PhaseMode, SimConfig, SimReport};
pub use states::{DensityMatrix, LatitudinalParams, Priors, StateLabel};
