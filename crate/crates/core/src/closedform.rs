//! Closed-form results for three-qubit states in the five-amplitude standard form
//! `q₀|000⟩ + q₁|011⟩ + q₂|101⟩ + q₃|110⟩ + q₄e^{iγ}|111⟩`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, TAU};

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::Serialize;

use crate::emb::{emb_tripartite, BranchMatrices, Budget, MeasureResult};
use crate::measures::{entropy_from_concurrence, max_bipartite_entanglement, xlog2x};
use crate::state::StateTensor;
use crate::{Error, Result};

const NORMALIZATION_TOLERANCE: f64 = 1e-10;
/// Tolerance for membership in a commutator solution branch.
pub const CLASS_TOLERANCE: f64 = 1e-10;
/// Looser tolerance reported separately for inexact inputs.
pub const NEAR_MISS_TOLERANCE: f64 = 1e-6;
/// Sandwich bounds closer than this are reported as the exact value.
pub const SANDWICH_EXACT: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StandardFormParams {
    q: [f64; 5],
    gamma: f64,
}

impl StandardFormParams {
    pub fn new(q: [f64; 5], gamma: f64) -> Result<Self> {
        if let Some(&bad) = q.iter().find(|&&x| !(x >= 0.0)) {
            return Err(Error::InvalidParams(format!("standard-form amplitude {bad} is negative")));
        }
        let total: f64 = q.iter().map(|x| x * x).sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidParams(format!("sum of q_i^2 is {total}, expected 1")));
        }
        if !(gamma.abs() <= FRAC_PI_2 + 1e-12) {
            return Err(Error::OutOfRange { what: "gamma", value: gamma });
        }
        Ok(StandardFormParams { q, gamma })
    }

    /// `q₀(|000⟩+|011⟩) + q₂(|101⟩+|110⟩) + q₄|111⟩`.
    pub fn omega1(q0: f64, q2: f64, q4: f64) -> Result<Self> {
        Self::new([q0, q0, q2, q2, q4], 0.0)
    }

    /// Ω₁ member with `q₂` fixed by normalization.
    pub fn omega1_from_q0_q4(q0: f64, q4: f64) -> Result<Self> {
        let rest = 0.5 * (1.0 - 2.0 * q0 * q0 - q4 * q4);
        if rest < -NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidParams(format!("2q0^2 + q4^2 = {} exceeds 1", 1.0 - 2.0 * rest)));
        }
        Self::omega1(q0, rest.max(0.0).sqrt(), q4)
    }

    /// `q₀|000⟩ + q₁|011⟩ + q₄e^{iγ}|111⟩`.
    pub fn omega2(q0: f64, q1: f64, q4: f64, gamma: f64) -> Result<Self> {
        Self::new([q0, q1, 0.0, 0.0, q4], gamma)
    }

    /// The GHZ–W′ superposition for `α ∈ [0, π/2]`.
    pub fn ghz_w(alpha: f64) -> Result<Self> {
        let g = alpha.cos() * FRAC_1_SQRT_2;
        let w = alpha.sin() / 3f64.sqrt();
        Self::new([g, w, w, w, g], 0.0)
    }

    pub fn q(&self) -> [f64; 5] {
        self.q
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `(A₀)_{jk} = A_{0jk}` and `(A₁)_{jk} = A_{1jk}`.
    pub fn slices(&self) -> (Matrix2<Complex64>, Matrix2<Complex64>) {
        let r = |x: f64| Complex64::new(x, 0.0);
        let [q0, q1, q2, q3, q4] = self.q;
        let a0 = Matrix2::new(r(q0), r(0.0), r(0.0), r(q1));
        let a1 = Matrix2::new(r(0.0), r(q2), r(q3), Complex64::from_polar(q4, self.gamma));
        (a0, a1)
    }
}

/// Branch probabilities and concurrences after measuring party A in the basis
/// `a₀ = cos θ`, `a₁ = sin θ·e^{iφ}`. A concurrence is `None` when its branch
/// has (numerically) zero probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualConcurrences {
    pub p0: f64,
    pub c0: Option<f64>,
    pub p1: f64,
    pub c1: Option<f64>,
}

impl ResidualConcurrences {
    /// Measurement entropy `H(p₀, p₁) + Σ pᵢ E(ψᵢ)` built from the concurrences.
    pub fn entropy(&self) -> f64 {
        let branch = |p: f64, c: Option<f64>| xlog2x(p) + p * c.map_or(0.0, entropy_from_concurrence);
        branch(self.p0, self.c0) + branch(self.p1, self.c1)
    }
}

pub fn residual_concurrences(p: &StandardFormParams, theta: f64, phi: f64) -> ResidualConcurrences {
    let [q0, q1, q2, q3, q4] = p.q;
    let (s, c) = theta.sin_cos();
    let g = p.gamma;
    let tail = q2 * q2 + q3 * q3 + q4 * q4;
    let head = q0 * q0 + q1 * q1;
    let cross = 2.0 * q1 * q4 * s * c * (g + phi).cos();
    let p0 = head * c * c + tail * s * s + cross;
    let p1 = head * s * s + tail * c * c - cross;
    let e_gp = Complex64::from_polar(1.0, g + phi);
    let e_2p = Complex64::from_polar(1.0, 2.0 * phi);
    let m0 = q0 * q1 * c * c + q0 * q4 * s * c * e_gp - q2 * q3 * s * s * e_2p;
    let m1 = q0 * q1 * s * s - q0 * q4 * s * c * e_gp - q2 * q3 * c * c * e_2p;
    let conc = |p: f64, m: Complex64| (p > crate::state::ZERO_BRANCH).then(|| (2.0 * m.norm() / p).min(1.0));
    ResidualConcurrences { p0, c0: conc(p0, m0), p1, c1: conc(p1, m1) }
}

/// `K` and the eigenvalues of `B₀B₀†`, `B₁B₁†` for the |Ω⟩ state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OmegaBranchSpectrum {
    pub k: f64,
    pub lambda0_plus: f64,
    pub lambda0_minus: f64,
    pub lambda1_plus: f64,
    pub lambda1_minus: f64,
}

impl OmegaBranchSpectrum {
    pub const K_MAX: f64 = 1.618_033_988_749_895;
    pub const K_MIN: f64 = -0.618_033_988_749_895;

    pub fn from_k(k: f64) -> Self {
        let s5 = 5f64.sqrt();
        OmegaBranchSpectrum {
            k,
            lambda0_plus: (2.0 + k + s5 * k) / 10.0,
            lambda0_minus: (2.0 + k - s5 * k) / 10.0,
            lambda1_plus: (3.0 - k + s5 * (1.0 - k)) / 10.0,
            lambda1_minus: (3.0 - k - s5 * (1.0 - k)) / 10.0,
        }
    }

    pub fn values(&self) -> [f64; 4] {
        [self.lambda0_plus, self.lambda0_minus, self.lambda1_plus, self.lambda1_minus]
    }

    /// Sum of the two branch entropies, the EMB objective at this `K`.
    pub fn entropy(&self) -> f64 {
        self.values().iter().map(|&l| xlog2x(l.max(0.0))).sum()
    }
}

/// `K = sin²θ + sin 2θ cos φ`.
pub fn omega_eigenvalues(theta: f64, phi: f64) -> OmegaBranchSpectrum {
    let s = theta.sin();
    OmegaBranchSpectrum::from_k(s * s + (2.0 * theta).sin() * phi.cos())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CommutatorClass {
    /// `q₀ = q₁, q₂ = q₃, γ = 0`.
    Omega1,
    /// `q₂ = q₃ = 0`.
    Omega2,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutatorReport {
    /// Whether `[B₀B₀†, 𝒜] = 0` for every measurement of party A.
    pub holds_for_all_measurements: bool,
    pub class: CommutatorClass,
    /// Classification at the looser tolerance, when it differs.
    pub near_miss: Option<CommutatorClass>,
    /// Largest `‖[B₀B₀†, 𝒜]‖` over the sampled angles.
    pub max_commutator: f64,
    /// Whether the sampled commutators confirm the classification.
    pub numerically_verified: bool,
}

fn classify(p: &StandardFormParams, tol: f64) -> CommutatorClass {
    let [q0, q1, q2, q3, _] = p.q;
    if (q0 - q1).abs() <= tol && (q2 - q3).abs() <= tol && p.gamma.abs() <= tol {
        CommutatorClass::Omega1
    } else if q2 <= tol && q3 <= tol {
        CommutatorClass::Omega2
    } else {
        CommutatorClass::None
    }
}

/// Largest entrywise modulus of a 2×2 matrix.
fn max_abs(m: &Matrix2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn commutator_condition(p: &StandardFormParams) -> CommutatorReport {
    const SAMPLES: usize = 8;
    let class = classify(p, CLASS_TOLERANCE);
    let loose = classify(p, NEAR_MISS_TOLERANCE);
    let (a0, a1) = p.slices();
    let total = a0 * a0.adjoint() + a1 * a1.adjoint();
    let mut max_commutator = 0.0f64;
    for i in 0..SAMPLES {
        for j in 0..SAMPLES {
            let theta = FRAC_PI_2 * (i as f64 + 0.5) / SAMPLES as f64;
            let phi = TAU * j as f64 / SAMPLES as f64;
            let (g0, _) = BranchMatrices::new(&a0, &a1, theta, phi).grams();
            max_commutator = max_commutator.max(max_abs(&(g0 * total - total * g0)));
        }
    }
    let holds = class != CommutatorClass::None;
    CommutatorReport {
        holds_for_all_measurements: holds,
        class,
        near_miss: (loose != class).then_some(loose),
        max_commutator,
        numerically_verified: !holds || max_commutator < 1e-10,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Omega1Value {
    pub value: f64,
    pub c_squared: f64,
}

/// `H₂((1 + √(1 − C²))/2)` with `C² = 4q₀²[2(1 − 2q₀²) − q₄²]` for the Ω₁ family.
///
/// `C²` is the one-vs-rest concurrence of party A, which is the smallest of the
/// three one-vs-rest concurrences on this family.
pub fn omega1_emb(q0: f64, q2: f64, q4: f64) -> Result<Omega1Value> {
    let total = 2.0 * q0 * q0 + 2.0 * q2 * q2 + q4 * q4;
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::InvalidParams(format!("2q0^2 + 2q2^2 + q4^2 = {total}, expected 1")));
    }
    let c_squared = 4.0 * q0 * q0 * (2.0 * (1.0 - 2.0 * q0 * q0) - q4 * q4);
    if !(-NORMALIZATION_TOLERANCE..=1.0 + NORMALIZATION_TOLERANCE).contains(&c_squared) {
        return Err(Error::OutOfRange { what: "C^2", value: c_squared });
    }
    let c_squared = c_squared.clamp(0.0, 1.0);
    Ok(Omega1Value { value: entropy_from_concurrence(c_squared.sqrt()), c_squared })
}

/// Bounds on the relative entropy of entanglement of a three-qubit pure state.
#[derive(Debug, Clone)]
pub struct Sandwich {
    /// Largest bipartite entanglement over the three cuts.
    pub lower: f64,
    /// The measurement bound.
    pub upper: f64,
    /// The common value when the bounds meet within [`SANDWICH_EXACT`].
    pub exact: Option<f64>,
    pub bound: MeasureResult,
}

pub fn relative_entropy_sandwich(s: &StateTensor, budget: &Budget) -> Result<Sandwich> {
    s.require_qubits(3)?;
    let lower = max_bipartite_entanglement(s)?;
    let bound = emb_tripartite(s, &budget.emb)?;
    let upper = bound.value;
    let exact = (upper - lower < SANDWICH_EXACT).then_some(lower);
    Ok(Sandwich { lower, upper, exact, bound })
}
