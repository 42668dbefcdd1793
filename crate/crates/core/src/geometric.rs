//! Geometric measure of entanglement, `E_G = −log₂ max_φ |⟨ψ|φ⟩|²` over product
//! states `|φ⟩`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::emb::{canonical_angles, MeasureResult};
use crate::optimize::{minimize_periodic, Axis, Diagnostics, OptimizerConfig};
use crate::par::map_indices;
use crate::random::random_unit_vector;
use crate::state::StateTensor;
use crate::{Error, Result};

/// Largest `‖ψ − Pψ‖` accepted as permutation symmetric.
pub const SYMMETRY_TOLERANCE: f64 = 1e-8;
/// Allowed per-sweep decrease of the overlap in the alternating ascent.
pub const MONOTONE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometricConfig {
    /// Random product starts for the alternating ascent.
    pub starts: usize,
    pub max_sweeps: usize,
    /// Stop once a sweep improves the overlap by less than this.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for GeometricConfig {
    fn default() -> Self {
        GeometricConfig { starts: 32, max_sweeps: 500, tolerance: 1e-12, seed: 0 }
    }
}

/// One unit vector per party.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductAnsatz {
    pub vectors: Vec<DVector<Complex64>>,
}

impl ProductAnsatz {
    pub fn random(dims: &[usize], rng: &mut ChaCha8Rng) -> Self {
        ProductAnsatz { vectors: dims.iter().map(|&d| random_unit_vector(d, rng)).collect() }
    }

    /// `⟨φ|ψ⟩`.
    pub fn overlap(&self, s: &StateTensor) -> Complex64 {
        let dims = s.dims();
        let mut digits = vec![0usize; dims.len()];
        let mut total = Complex64::new(0.0, 0.0);
        for a in s.amplitudes() {
            let mut w = *a;
            for (v, &i) in self.vectors.iter().zip(&digits) {
                w *= v[i].conj();
            }
            total += w;
            increment(&mut digits, dims);
        }
        total
    }

    pub fn fidelity(&self, s: &StateTensor) -> f64 {
        self.overlap(s).norm_sqr()
    }
}

fn increment(digits: &mut [usize], dims: &[usize]) {
    for p in (0..digits.len()).rev() {
        digits[p] += 1;
        if digits[p] < dims[p] {
            return;
        }
        digits[p] = 0;
    }
}

/// `Σ ψ Π_{k≠j} conj(v_k)`: the state contracted with every factor but party `j`'s.
fn contract_all_but(s: &StateTensor, ansatz: &ProductAnsatz, j: usize) -> DVector<Complex64> {
    let dims = s.dims();
    let mut out = DVector::zeros(dims[j]);
    let mut digits = vec![0usize; dims.len()];
    for a in s.amplitudes() {
        let mut w = *a;
        for (k, (v, &i)) in ansatz.vectors.iter().zip(&digits).enumerate() {
            if k != j {
                w *= v[i].conj();
            }
        }
        out[digits[j]] += w;
        increment(&mut digits, dims);
    }
    out
}

#[derive(Debug, Clone)]
pub struct AscentRun {
    pub ansatz: ProductAnsatz,
    pub fidelity: f64,
    /// Overlap after each full sweep.
    pub trace: Vec<f64>,
    pub converged: bool,
}

/// Alternating ascent: each party's factor is replaced by the normalized
/// contraction of the state with the others, which never lowers the overlap.
pub fn alternating_ascent(s: &StateTensor, start: ProductAnsatz, max_sweeps: usize, tolerance: f64) -> AscentRun {
    let mut ansatz = start;
    let mut fidelity = ansatz.fidelity(s);
    let mut trace = Vec::new();
    let mut converged = false;
    for _ in 0..max_sweeps {
        for j in 0..s.num_parties() {
            let c = contract_all_but(s, &ansatz, j);
            let norm = c.norm();
            if norm > 0.0 {
                ansatz.vectors[j] = c / Complex64::new(norm, 0.0);
            }
        }
        let next = ansatz.fidelity(s);
        assert!(next >= fidelity - MONOTONE_TOLERANCE, "ascent lowered the overlap: {fidelity} -> {next}");
        trace.push(next);
        let gain = next - fidelity;
        fidelity = next;
        if gain < tolerance {
            converged = true;
            break;
        }
    }
    AscentRun { ansatz, fidelity, trace, converged }
}

/// Best product state over `cfg.starts` seeded random starts.
pub fn closest_product(s: &StateTensor, cfg: &GeometricConfig) -> Result<(AscentRun, Diagnostics)> {
    if s.num_parties() < 2 {
        return Err(Error::WrongPartyCount { expected: 2, got: s.num_parties() });
    }
    if cfg.starts == 0 || cfg.max_sweeps == 0 || !(cfg.tolerance > 0.0) {
        return Err(Error::InvalidConfig("geometric search needs starts, sweeps and a positive tolerance".into()));
    }
    let mut runs: Vec<(f64, AscentRun)> = map_indices(cfg.starts, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
        let start = ProductAnsatz::random(s.dims(), &mut rng);
        let initial = start.fidelity(s);
        (initial, alternating_ascent(s, start, cfg.max_sweeps, cfg.tolerance))
    });
    let mut best = 0;
    for (i, (_, r)) in runs.iter().enumerate() {
        if r.fidelity > runs[best].1.fidelity {
            best = i;
        }
    }
    let best_start = runs.iter().map(|(f, _)| *f).fold(0.0, f64::max);
    let top = runs[best].1.fidelity;
    let gap = runs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != best)
        .map(|(_, (_, r))| bits(r.fidelity) - bits(top))
        .min_by(f64::total_cmp);
    let diagnostics = Diagnostics {
        evaluations: runs.iter().map(|(_, r)| r.trace.len()).sum(),
        restarts: runs.len(),
        converged: runs[best].1.converged,
        grid_best: bits(best_start),
        gap,
    };
    Ok((runs.swap_remove(best).1, diagnostics))
}

fn bits(fidelity: f64) -> f64 {
    -fidelity.min(1.0).log2()
}

/// Geometric measure by alternating ascent. For qubit parties the argmin lists
/// `(θ, φ)` per party of the closest product state; otherwise it is empty.
pub fn geometric_measure_general(s: &StateTensor, cfg: &GeometricConfig) -> Result<MeasureResult> {
    let (run, diagnostics) = closest_product(s, cfg)?;
    let argmin = if s.is_qubits() {
        run.ansatz.vectors.iter().flat_map(qubit_angles).collect()
    } else {
        Vec::new()
    };
    Ok(MeasureResult {
        value: bits(run.fidelity),
        argmin,
        parties: (0..s.num_parties()).collect(),
        outcome_tree: None,
        diagnostics,
    })
}

/// `(θ, φ)` with `v ∝ (cos θ, sin θ e^{iφ})`.
fn qubit_angles(v: &DVector<Complex64>) -> [f64; 2] {
    let theta = v[1].norm().atan2(v[0].norm());
    let phi = if v[0].norm() > 0.0 && v[1].norm() > 0.0 { v[1].arg() - v[0].arg() } else { 0.0 };
    let (t, p) = canonical_angles(theta, phi);
    [t, p]
}

/// Geometric measure of a permutation-symmetric qubit state, searched over
/// symmetric products `|φ⟩^{⊗N}` with `|φ⟩ = cos θ|0⟩ + sin θ e^{iφ}|1⟩`.
pub fn geometric_measure_symmetric(s: &StateTensor, cfg: &OptimizerConfig) -> Result<MeasureResult> {
    if !s.is_qubits() || s.num_parties() < 2 {
        return Err(Error::InvalidParams("symmetric geometric measure needs two or more qubits".into()));
    }
    let defect = s.symmetry_defect();
    if defect > SYMMETRY_TOLERANCE {
        return Err(Error::NotSymmetric(defect));
    }
    let n = s.num_parties();
    // Symmetric states are fixed by their weight classes, so fold amplitudes by weight.
    let mut by_weight = vec![Complex64::new(0.0, 0.0); n + 1];
    for (idx, a) in s.amplitudes().iter().enumerate() {
        by_weight[idx.count_ones() as usize] += a;
    }
    let f = |x: &[f64]| {
        let (st, ct) = x[0].sin_cos();
        let mut overlap = Complex64::new(0.0, 0.0);
        for (w, a) in by_weight.iter().enumerate() {
            let mag = ct.powi((n - w) as i32) * st.powi(w as i32);
            overlap += a * Complex64::from_polar(mag, -(w as f64) * x[1]);
        }
        -overlap.norm_sqr().log2()
    };
    let axes = [Axis::interval(0.0, FRAC_PI_2, PI), Axis::periodic(0.0, TAU)];
    let opt = minimize_periodic(f, &axes, cfg)?;
    let (t, p) = canonical_angles(opt.argmin[0], opt.argmin[1]);
    Ok(MeasureResult {
        value: opt.value.max(0.0),
        argmin: vec![t, p],
        parties: (0..n).collect(),
        outcome_tree: None,
        diagnostics: opt.diagnostics,
    })
}

/// Three-tangle of `cos α|GHZ⟩ + sin α|W′⟩`:
/// `|cos⁴α + (8/9)√6 sin³α cos α|`.
pub fn tangle_ghz_w(alpha: f64) -> f64 {
    let (s, c) = alpha.sin_cos();
    tangle_sin_cos(s, c)
}

/// The same tangle in terms of `x = sin α`, with `cos α = √(1 − x²)` so that the
/// pure-W′ ends `x = ±1` give exactly zero.
pub fn tangle_ghz_w_x(x: f64) -> f64 {
    tangle_sin_cos(x, (1.0 - x * x).max(0.0).sqrt())
}

fn tangle_sin_cos(s: f64, c: f64) -> f64 {
    (c.powi(4) + 8.0 / 9.0 * 6f64.sqrt() * s.powi(3) * c).abs()
}
