//! Unambiguous discrimination between the two averaged input states:
//! reduced subspace problems, the parametric POVM family and its
//! feasibility region, the piecewise-optimal solution, the global optimal
//! POVM, and the success probability for pure inputs.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{trace_product_re, ComplexMatrix, Ket, PSD_TOL};
use crate::states::{special_kets, DensityMatrix, Priors};

/// Maximum tolerated trace of an identify-operator against the rival
/// state before a POVM is rejected as ambiguous.
pub const UNAMBIGUITY_TOL: f64 = 1e-12;

/// Measurement outcome roles, in sampling order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Identify1,
    Identify2,
    Inconclusive,
}

/// Three-outcome POVM: elements are PSD and sum to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: [ComplexMatrix; 3],
    dim: usize,
}

impl Povm {
    /// Validates positivity of every element (tolerance [`PSD_TOL`]) and
    /// completeness within `1e-10` max-norm.
    pub fn new(
        identify_1: ComplexMatrix,
        identify_2: ComplexMatrix,
        inconclusive: ComplexMatrix,
    ) -> Result<Self> {
        let dim = identify_1.rows();
        let elements = [identify_1, identify_2, inconclusive];
        for (i, e) in elements.iter().enumerate() {
            if !e.is_square() || e.rows() != dim {
                return Err(Error::InvalidPovm(format!(
                    "element {i} is {}x{}, expected {dim}x{dim}",
                    e.rows(),
                    e.cols()
                )));
            }
            if !e.is_psd(PSD_TOL)? {
                return Err(Error::InvalidPovm(format!("element {i} is not PSD")));
            }
        }
        let sum = &(&elements[0] + &elements[1]) + &elements[2];
        let dev = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if dev > 1e-10 {
            return Err(Error::InvalidPovm(format!(
                "elements sum to identity only within {dev:.3e}"
            )));
        }
        Ok(Self { elements, dim })
    }

    pub fn element(&self, outcome: Outcome) -> &ComplexMatrix {
        match outcome {
            Outcome::Identify1 => &self.elements[0],
            Outcome::Identify2 => &self.elements[1],
            Outcome::Inconclusive => &self.elements[2],
        }
    }

    /// Elements in outcome order (identify-1, identify-2, inconclusive).
    pub fn elements(&self) -> &[ComplexMatrix; 3] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// The discrimination problem restricted to one invariant subspace:
/// the two reduced states and the probability that an input lands there.
#[derive(Debug, Clone)]
pub struct SubspaceProblem {
    k: u8,
    rho_a: DensityMatrix,
    rho_b: DensityMatrix,
    weight: f64,
}

impl SubspaceProblem {
    pub fn k(&self) -> u8 {
        self.k
    }

    /// Reduced state originating from averaged input 1.
    pub fn rho_a(&self) -> &DensityMatrix {
        &self.rho_a
    }

    /// Reduced state originating from averaged input 2.
    pub fn rho_b(&self) -> &DensityMatrix {
        &self.rho_b
    }

    /// Occurrence probability of this subspace: `3c⁴s²` (k = 1) or
    /// `3c²s⁴` (k = 2).
    pub fn weight(&self) -> f64 {
        self.weight
    }
}

/// Prior regime of the piecewise optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Low,
    Middle,
    High,
}

impl Regime {
    /// `low` iff η₁ < 1/5, `high` iff η₁ > 4/5, `middle` otherwise.
    pub fn classify(priors: Priors) -> Regime {
        let eta1 = priors.eta1();
        if eta1 < 0.2 {
            Regime::Low
        } else if eta1 > 0.8 {
            Regime::High
        } else {
            Regime::Middle
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::Low => "low",
            Regime::Middle => "middle",
            Regime::High => "high",
        };
        f.write_str(s)
    }
}

/// Analytic optimum of one subspace problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimumReport {
    pub regime: Regime,
    pub alpha: f64,
    pub beta: f64,
    pub probability: f64,
}

fn flip_all_qubits(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i ^ 7, j ^ 7)])
}

/// Reduced subspace problem k ∈ {1, 2} at latitude `theta`.
///
/// For k = 1 the reduced states are
/// `ρ_a = (1/3)|001⟩⟨001| + (2/3)|u⟩⟨u|⊗|0⟩⟨0|` and
/// `ρ_b = (1/3)|100⟩⟨100| + (2/3)|0⟩⟨0|⊗|u⟩⟨u|`, with weight `3c⁴s²`.
/// The k = 2 problem is the image of k = 1 under flipping |0⟩ ↔ |1⟩ on
/// every register, with weight `3c²s⁴`.
pub fn reduced_problem(k: u8, theta: f64) -> Result<SubspaceProblem> {
    if k != 1 && k != 2 {
        return Err(Error::InvalidSubspace(k));
    }
    let c2 = (0.5 * theta).cos().powi(2);
    let s2 = (0.5 * theta).sin().powi(2);
    let (u, _) = special_kets();
    let p0 = Ket::basis(2, 0).projector()?;
    let uu = u.projector()?;

    let third = 1.0 / 3.0;
    let mut a = uu.kron(&p0).scaled(2.0 * third);
    a[(1, 1)] += Complex64::new(third, 0.0);
    let mut b = p0.kron(&uu).scaled(2.0 * third);
    b[(4, 4)] += Complex64::new(third, 0.0);

    let (a, b, weight) = if k == 1 {
        (a, b, 3.0 * c2 * c2 * s2)
    } else {
        (flip_all_qubits(&a), flip_all_qubits(&b), 3.0 * c2 * s2 * s2)
    };
    Ok(SubspaceProblem {
        k,
        rho_a: DensityMatrix::new(a)?,
        rho_b: DensityMatrix::new(b)?,
        weight,
    })
}

/// The parametric POVM of subspace k embedded in the full 8-dim space:
/// `E₁ = α|b⟩⟨b|⊗|v⟩⟨v|`, `E₂ = β|v⟩⟨v|⊗|b⟩⟨b|`, `E₀ = I − E₁ − E₂`,
/// with `b = 0` for k = 1 and `b = 1` for k = 2.
///
/// Construction fails when `(α, β)` leaves the PSD feasibility region,
/// i.e. when `β` exceeds [`beta_bound`]`(α)`.
pub fn subspace_povm(k: u8, alpha: f64, beta: f64) -> Result<Povm> {
    if k != 1 && k != 2 {
        return Err(Error::InvalidSubspace(k));
    }
    check_unit_interval("alpha", alpha)?;
    check_unit_interval("beta", beta)?;
    let (_, v) = special_kets();
    let vv = v.projector()?;
    let pb = Ket::basis(2, (k - 1) as usize).projector()?;
    let e1 = pb.kron(&vv).scaled(alpha);
    let e2 = vv.kron(&pb).scaled(beta);
    let e0 = &(&ComplexMatrix::identity(8) - &e1) - &e2;
    Povm::new(e1, e2, e0)
}

/// Error traces `(Tr(ρ_a E₂), Tr(ρ_b E₁))`; both must vanish for a
/// valid unambiguous measurement.
pub fn unambiguity_defect(
    povm: &Povm,
    rho_a: &DensityMatrix,
    rho_b: &DensityMatrix,
) -> Result<(f64, f64)> {
    let d_a = trace_product_re(rho_a.mat(), povm.element(Outcome::Identify2))?;
    let d_b = trace_product_re(rho_b.mat(), povm.element(Outcome::Identify1))?;
    Ok((d_a, d_b))
}

/// Discrimination success probability `η₁Tr(ρ_a E₁) + η₂Tr(ρ_b E₂)`.
///
/// Rejects POVMs whose unambiguity defect exceeds [`UNAMBIGUITY_TOL`].
pub fn success_probability(
    povm: &Povm,
    rho_a: &DensityMatrix,
    rho_b: &DensityMatrix,
    priors: Priors,
) -> Result<f64> {
    let (d_a, d_b) = unambiguity_defect(povm, rho_a, rho_b)?;
    if d_a.abs() > UNAMBIGUITY_TOL || d_b.abs() > UNAMBIGUITY_TOL {
        return Err(Error::UnambiguityViolated {
            defect_a: d_a,
            defect_b: d_b,
        });
    }
    let s_a = trace_product_re(rho_a.mat(), povm.element(Outcome::Identify1))?;
    let s_b = trace_product_re(rho_b.mat(), povm.element(Outcome::Identify2))?;
    Ok(priors.eta1() * s_a + priors.eta2() * s_b)
}

fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            name,
            value,
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// The inconclusive operator of the subspace problem in the orthonormal
/// basis {|001⟩, |u⟩|0⟩, |v⟩|0⟩}:
///
/// ```text
///         | 1 - α/2    α/(2√2)   α/(2√2)       |
///   E₀ =  | α/(2√2)    1 - α/4   -α/4          |
///         | α/(2√2)    -α/4      1 - α/4 - β   |
/// ```
pub fn build_e0(alpha: f64, beta: f64) -> Result<ComplexMatrix> {
    check_unit_interval("alpha", alpha)?;
    check_unit_interval("beta", beta)?;
    let s = alpha / (2.0 * std::f64::consts::SQRT_2);
    let q = alpha / 4.0;
    let mut m = ComplexMatrix::zeros(3, 3);
    m[(0, 0)] = Complex64::new(1.0 - alpha / 2.0, 0.0);
    m[(0, 1)] = Complex64::new(s, 0.0);
    m[(0, 2)] = Complex64::new(s, 0.0);
    m[(1, 0)] = Complex64::new(s, 0.0);
    m[(1, 1)] = Complex64::new(1.0 - q, 0.0);
    m[(1, 2)] = Complex64::new(-q, 0.0);
    m[(2, 0)] = Complex64::new(s, 0.0);
    m[(2, 1)] = Complex64::new(-q, 0.0);
    m[(2, 2)] = Complex64::new(1.0 - q - beta, 0.0);
    Ok(m)
}

/// Largest β keeping the inconclusive operator PSD: `(4 − 4α)/(4 − 3α)`.
pub fn beta_bound(alpha: f64) -> f64 {
    (4.0 - 4.0 * alpha) / (4.0 - 3.0 * alpha)
}

/// Piecewise-analytic optimum of a subspace problem.
///
/// Middle regime (1/5 ≤ η₁ ≤ 4/5): `α = (2/3)(2 − √(η₂/η₁))`,
/// `β = (2/3)(2 − √(η₁/η₂))`, `P = (4/9)(1 − √(η₁η₂))`. Low regime
/// (η₁ < 1/5): `(α, β) = (0, 1)`, `P = η₂/3`. High regime (η₁ > 4/5):
/// `(α, β) = (1, 0)`, `P = η₁/3`.
pub fn analytic_subspace_optimum(priors: Priors) -> OptimumReport {
    let eta1 = priors.eta1();
    let eta2 = priors.eta2();
    let regime = Regime::classify(priors);
    let (alpha, beta, probability) = match regime {
        Regime::Low => (0.0, 1.0, eta2 / 3.0),
        Regime::High => (1.0, 0.0, eta1 / 3.0),
        Regime::Middle => (
            (2.0 / 3.0) * (2.0 - (eta2 / eta1).sqrt()),
            (2.0 / 3.0) * (2.0 - (eta1 / eta2).sqrt()),
            (4.0 / 9.0) * (1.0 - (eta1 * eta2).sqrt()),
        ),
    };
    OptimumReport {
        regime,
        alpha,
        beta,
        probability,
    }
}

/// Optimal global measurement `Π₁ = c₁ I⊗|v⟩⟨v|`, `Π₂ = c₂ |v⟩⟨v|⊗I`,
/// `Π₀ = I − Π₁ − Π₂`, with the identity factor on register A for Π₁
/// and on register C for Π₂. The coefficients `(c₁, c₂)` are the regime
/// optimum of [`analytic_subspace_optimum`]; the construction does not
/// depend on the latitude.
pub fn total_povm(priors: Priors) -> Povm {
    let opt = analytic_subspace_optimum(priors);
    let (_, v) = special_kets();
    let vv = v.projector().expect("singlet is unit norm");
    let i2 = ComplexMatrix::identity(2);
    let pi1 = i2.kron(&vv).scaled(opt.alpha);
    let pi2 = vv.kron(&i2).scaled(opt.beta);
    let pi0 = &(&ComplexMatrix::identity(8) - &pi1) - &pi2;
    Povm::new(pi1, pi2, pi0).expect("optimal coefficients keep the POVM valid")
}

/// Optimal success probability for the averaged inputs at latitude
/// `theta`: `p₁P₁ + p₂P₂ = 3c²s² · P_subspace`.
pub fn optimal_average_probability(theta: f64, priors: Priors) -> Result<f64> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::OutOfRange {
            name: "theta",
            value: theta,
            range: "[0, pi]",
        });
    }
    let c2 = (0.5 * theta).cos().powi(2);
    let s2 = (0.5 * theta).sin().powi(2);
    Ok(3.0 * c2 * s2 * analytic_subspace_optimum(priors).probability)
}

/// Squared overlap of two latitudinal states with phase difference
/// `dphi`: `c⁴ + s⁴ + 2c²s² cos Δφ`.
pub fn overlap_sq(theta: f64, dphi: f64) -> f64 {
    let c2 = (0.5 * theta).cos().powi(2);
    let s2 = (0.5 * theta).sin().powi(2);
    c2 * c2 + s2 * s2 + 2.0 * c2 * s2 * dphi.cos()
}

/// Prefactor of `1 − |⟨ψ₁|ψ₂⟩|²` in the pure-state success probability:
/// `(2/3)(1 − √(η₁η₂))` in the middle regime, `η₂/2` low, `η₁/2` high.
pub fn pure_success_coefficient(priors: Priors) -> f64 {
    match Regime::classify(priors) {
        Regime::Low => priors.eta2() / 2.0,
        Regime::High => priors.eta1() / 2.0,
        Regime::Middle => (2.0 / 3.0) * (1.0 - (priors.eta1() * priors.eta2()).sqrt()),
    }
}

/// Success probability of the optimal measurement on the pure inputs with
/// phases `phi1`, `phi2`; equals
/// `η₁⟨Ψ₁|Π₁|Ψ₁⟩ + η₂⟨Ψ₂|Π₂|Ψ₂⟩` evaluated on [`total_povm`].
pub fn pure_state_success(theta: f64, phi1: f64, phi2: f64, priors: Priors) -> Result<f64> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::OutOfRange {
            name: "theta",
            value: theta,
            range: "[0, pi]",
        });
    }
    Ok(pure_success_coefficient(priors) * (1.0 - overlap_sq(theta, phi1 - phi2)))
}
