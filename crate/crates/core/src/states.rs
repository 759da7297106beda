//! Latitudinal states, total register states, phase-averaged density
//! matrices (closed form and quadrature), and the subspace bases that
//! block-diagonalize them.
//!
//! Register order is A, B, C: registers A and C hold the two program
//! states, register B the data state to identify. The 3-qubit basis is
//! indexed in binary order, `index = 4 q_A + 2 q_B + q_C`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Ket};

/// Polar angle and phase of a latitudinal qubit state
/// `cos(θ/2)|0⟩ + e^{-iφ} sin(θ/2)|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatitudinalParams {
    theta: f64,
    phi: f64,
}

impl LatitudinalParams {
    /// Validates `theta ∈ [0, π]` and reduces `phi` modulo 2π into `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        check_theta(theta)?;
        if !phi.is_finite() {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
                range: "finite radians",
            });
        }
        Ok(Self {
            theta,
            phi: phi.rem_euclid(TAU),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// A priori probabilities (η₁, η₂) of the two hypotheses; η₂ = 1 − η₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Priors {
    eta1: f64,
}

impl Priors {
    pub fn new(eta1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta1) {
            return Err(Error::OutOfRange {
                name: "eta1",
                value: eta1,
                range: "[0, 1]",
            });
        }
        Ok(Self { eta1 })
    }

    pub fn eta1(&self) -> f64 {
        self.eta1
    }

    pub fn eta2(&self) -> f64 {
        1.0 - self.eta1
    }
}

/// Which of the two total input states a register configuration encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateLabel {
    /// Data register holds the first program state.
    One,
    /// Data register holds the second program state.
    Two,
}

impl TryFrom<u8> for StateLabel {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            1 => Ok(StateLabel::One),
            2 => Ok(StateLabel::Two),
            other => Err(Error::InvalidLabel(other)),
        }
    }
}

/// Hermitian, PSD, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

/// Validation tolerance for density-matrix invariants.
pub const DENSITY_TOL: f64 = 1e-10;

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (all at
    /// [`DENSITY_TOL`]).
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::InvalidDensityMatrix(format!(
                "not square: {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let herm = mat.hermiticity_deviation();
        if herm > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "Hermiticity deviation {herm:.3e}"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
        }
        if !mat.is_psd(DENSITY_TOL)? {
            return Err(Error::InvalidDensityMatrix(
                "negative eigenvalue".to_string(),
            ));
        }
        Ok(Self { mat })
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::OutOfRange {
            name: "theta",
            value: theta,
            range: "[0, pi]",
        });
    }
    Ok(())
}

/// `cos(θ/2)|0⟩ + e^{-iφ} sin(θ/2)|1⟩`.
pub fn latitudinal_ket(p: &LatitudinalParams) -> Ket {
    let half = 0.5 * p.theta();
    let phase = Complex64::new(0.0, -p.phi()).exp();
    Ket::new_unchecked(vec![
        Complex64::new(half.cos(), 0.0),
        phase * half.sin(),
    ])
}

/// Total 3-qubit input state: `|ψ₁ψ₁ψ₂⟩` for label 1, `|ψ₁ψ₂ψ₂⟩` for
/// label 2, where `ψᵢ` carries phase `φᵢ`.
pub fn total_input_ket(which: StateLabel, theta: f64, phi1: f64, phi2: f64) -> Result<Ket> {
    let psi1 = latitudinal_ket(&LatitudinalParams::new(theta, phi1)?);
    let psi2 = latitudinal_ket(&LatitudinalParams::new(theta, phi2)?);
    Ok(match which {
        StateLabel::One => psi1.kron(&psi1).kron(&psi2),
        StateLabel::Two => psi1.kron(&psi2).kron(&psi2),
    })
}

/// Phase average of one latitudinal copy: `diag(cos²(θ/2), sin²(θ/2))`.
pub fn single_copy_average(theta: f64) -> Result<DensityMatrix> {
    check_theta(theta)?;
    let c2 = (0.5 * theta).cos().powi(2);
    let s2 = (0.5 * theta).sin().powi(2);
    DensityMatrix::new(ComplexMatrix::diag(&[c2, s2]))
}

/// Phase average of a doubled copy `|ψψ⟩⟨ψψ|`:
/// `c⁴|00⟩⟨00| + s⁴|11⟩⟨11| + 2c²s²|u⟩⟨u|`.
pub fn pair_copy_average(theta: f64) -> Result<DensityMatrix> {
    check_theta(theta)?;
    let c2 = (0.5 * theta).cos().powi(2);
    let s2 = (0.5 * theta).sin().powi(2);
    let (u, _) = special_kets();
    let mut m = u.projector()?.scaled(2.0 * c2 * s2);
    m[(0, 0)] += Complex64::new(c2 * c2, 0.0);
    m[(3, 3)] += Complex64::new(s2 * s2, 0.0);
    DensityMatrix::new(m)
}

/// Closed form of the averaged total input state (six weighted projectors
/// in the 8-dimensional register basis).
pub fn average_state_closed(which: StateLabel, theta: f64) -> Result<DensityMatrix> {
    check_theta(theta)?;
    let c2 = (0.5 * theta).cos().powi(2);
    let s2 = (0.5 * theta).sin().powi(2);
    let (u, _) = special_kets();
    let uu = u.projector()?;
    let p0 = Ket::basis(2, 0).projector()?;
    let p1 = Ket::basis(2, 1).projector()?;

    // Weighted basis projectors shared by both labels.
    let mut m = ComplexMatrix::zeros(8, 8);
    m[(0, 0)] = Complex64::new(c2 * c2 * c2, 0.0);
    m[(7, 7)] = Complex64::new(s2 * s2 * s2, 0.0);

    match which {
        StateLabel::One => {
            m[(1, 1)] = Complex64::new(c2 * c2 * s2, 0.0);
            m[(6, 6)] = Complex64::new(c2 * s2 * s2, 0.0);
            m = &m + &uu.kron(&p0).scaled(2.0 * c2 * c2 * s2);
            m = &m + &uu.kron(&p1).scaled(2.0 * c2 * s2 * s2);
        }
        StateLabel::Two => {
            m[(4, 4)] = Complex64::new(c2 * c2 * s2, 0.0);
            m[(3, 3)] = Complex64::new(c2 * s2 * s2, 0.0);
            m = &m + &p0.kron(&uu).scaled(2.0 * c2 * c2 * s2);
            m = &m + &p1.kron(&uu).scaled(2.0 * c2 * s2 * s2);
        }
    }
    DensityMatrix::new(m)
}

/// Averaged total input state by direct double phase quadrature of
/// `|Ψ⟩⟨Ψ|` with a uniform periodic rule of `nodes` points per angle.
///
/// The integrand is a trigonometric polynomial of degree at most 2 per
/// angle, so any `nodes >= 4` is exact up to roundoff.
pub fn average_state_quadrature(
    which: StateLabel,
    theta: f64,
    nodes: usize,
) -> Result<DensityMatrix> {
    check_theta(theta)?;
    if nodes < 4 {
        return Err(Error::OutOfRange {
            name: "nodes",
            value: nodes as f64,
            range: "[4, ...)",
        });
    }
    let weight = 1.0 / (nodes * nodes) as f64;
    let mut acc = ComplexMatrix::zeros(8, 8);
    for j in 0..nodes {
        let phi1 = TAU * j as f64 / nodes as f64;
        for k in 0..nodes {
            let phi2 = TAU * k as f64 / nodes as f64;
            let ket = total_input_ket(which, theta, phi1, phi2)?;
            let amps = ket.amplitudes();
            for r in 0..8 {
                for c in 0..8 {
                    acc[(r, c)] += weight * amps[r] * amps[c].conj();
                }
            }
        }
    }
    DensityMatrix::new(acc)
}

/// The symmetric and antisymmetric two-qubit combinations
/// `|u⟩ = (|01⟩+|10⟩)/√2` and `|v⟩ = (|01⟩−|10⟩)/√2`.
///
/// `|v⟩` is orthogonal to every doubled product state `|ψ⟩|ψ⟩`, which is
/// what makes error-free identification possible at all.
pub fn special_kets() -> (Ket, Ket) {
    let a = std::f64::consts::FRAC_1_SQRT_2;
    let u = Ket::new_unchecked(vec![
        Complex64::ZERO,
        Complex64::new(a, 0.0),
        Complex64::new(a, 0.0),
        Complex64::ZERO,
    ]);
    let v = Ket::new_unchecked(vec![
        Complex64::ZERO,
        Complex64::new(a, 0.0),
        Complex64::new(-a, 0.0),
        Complex64::ZERO,
    ]);
    (u, v)
}

/// Two-qubit ket embedded in the 8-dim space as `ket ⊗ |b⟩` (b on C).
fn pair_with_qubit(pair: &Ket, b: usize) -> Ket {
    pair.kron(&Ket::basis(2, b))
}

/// Two-qubit ket embedded as `|b⟩ ⊗ ket` (b on A).
fn qubit_with_pair(b: usize, pair: &Ket) -> Ket {
    Ket::basis(2, b).kron(pair)
}

/// Spanning vectors of the invariant subspaces of both averaged states:
/// `k = 0` → {|000⟩, |111⟩}; `k = 1` → {|001⟩, |u⟩|0⟩, |100⟩, |0⟩|u⟩};
/// `k = 2` → {|110⟩, |u⟩|1⟩, |011⟩, |1⟩|u⟩}.
///
/// The lists for k = 1, 2 are spanning sets, not bases; see [`span_dim`].
pub fn subspace_basis(k: u8) -> Result<Vec<Ket>> {
    let (u, _) = special_kets();
    match k {
        0 => Ok(vec![Ket::basis(8, 0), Ket::basis(8, 7)]),
        1 => Ok(vec![
            Ket::basis(8, 1),
            pair_with_qubit(&u, 0),
            Ket::basis(8, 4),
            qubit_with_pair(0, &u),
        ]),
        2 => Ok(vec![
            Ket::basis(8, 6),
            pair_with_qubit(&u, 1),
            Ket::basis(8, 3),
            qubit_with_pair(1, &u),
        ]),
        other => Err(Error::InvalidSubspace(other)),
    }
}

/// Numerical dimension of the span of `kets`: the number of Gram-matrix
/// eigenvalues above `1e-9`.
pub fn span_dim(kets: &[Ket]) -> Result<usize> {
    if kets.is_empty() {
        return Ok(0);
    }
    let n = kets.len();
    let gram = ComplexMatrix::from_fn(n, n, |i, j| kets[i].inner(&kets[j]));
    let eigs = gram.hermitian_eigenvalues()?;
    Ok(eigs.iter().filter(|&&e| e > 1e-9).count())
}
