//! The entanglement measurement bound and its companions.
//!
//! For three qubits the adaptive hierarchy collapses to one choice: the first
//! party's basis. Each outcome leaves a two-qubit pure state whose best
//! remaining measurement is its Schmidt basis, so the objective is
//! `S(B₀B₀†) + S(B₁B₁†)` with `B₀ = a₀A₀ + a₁A₁`, `B₁ = −a₁*A₀ + a₀*A₁`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::{DVector, Matrix2};
use num_complex::Complex64;
use serde::Serialize;

use crate::geometric::GeometricConfig;
use crate::linalg::{complete_basis, hermitian2_eigenvalues, hermitian_eigen, unitary_from_params};
use crate::measures::{entropy_bits, matrix_schmidt_values, two_qubit_entropy, xlog2x};
use crate::optimize::{maximize_periodic, minimize_periodic, Axis, Diagnostics, OptimizerConfig, MAX_AXES};
use crate::state::{MeasurementBasis, OutcomeTree, Partition, StateTensor};
use crate::{Error, Result};

/// Tolerance for `E_MB ≥ E_LOCC`.
pub const LOCC_TOLERANCE: f64 = 1e-5;

/// Largest party count for which every measurement order is tried.
pub const MAX_ENUMERATED_PARTIES: usize = 4;

#[derive(Debug, Clone, Serialize)]
pub struct MeasureResult {
    pub value: f64,
    /// Optimal angles. For a qubit party these are `(θ, φ)` pairs with
    /// `θ ∈ [0, π/2]` and `φ ∈ [0, 2π)`.
    pub argmin: Vec<f64>,
    /// Parties the angles belong to, in order.
    pub parties: Vec<usize>,
    #[serde(skip)]
    pub outcome_tree: Option<OutcomeTree>,
    pub diagnostics: Diagnostics,
}

/// Search budgets for the three optimizers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Budget {
    pub emb: OptimizerConfig,
    pub hmin: OptimizerConfig,
    pub geometric: GeometricConfig,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_config(OptimizerConfig::default())
    }
}

impl Budget {
    /// Derives every budget from the two-angle configuration. The four-angle
    /// search uses a third of the grid per axis and twice the restarts.
    pub fn from_config(cfg: OptimizerConfig) -> Self {
        let hmin = OptimizerConfig {
            grid_resolution: (cfg.grid_resolution / 3).max(4),
            restart_count: cfg.restart_count * 2,
            ..cfg.clone()
        };
        let geometric = GeometricConfig { seed: cfg.seed, ..GeometricConfig::default() };
        Budget { emb: cfg, hmin, geometric }
    }
}

/// Maps `(θ, φ)` to the representative with `θ ∈ [0, π/2]`, `φ ∈ [0, 2π)`.
/// `(π − θ, φ + π)` gives the same basis up to phases and order.
pub fn canonical_angles(theta: f64, phi: f64) -> (f64, f64) {
    let mut t = theta.rem_euclid(PI);
    let mut p = phi;
    if t > FRAC_PI_2 {
        t = PI - t;
        p += PI;
    }
    let mut p = p.rem_euclid(TAU);
    if p >= TAU {
        p = 0.0;
    }
    (t, p)
}

fn angle_axes() -> [Axis; 2] {
    [Axis::interval(0.0, FRAC_PI_2, PI), Axis::periodic(0.0, TAU)]
}

/// `(A₀, A₁)` with `(Aᵢ)_{jk} = ψ_{ijk}` once `first` is moved to the front and
/// the other two parties keep ascending order.
pub fn split_first_party(s: &StateTensor, first: usize) -> Result<(Matrix2<Complex64>, Matrix2<Complex64>)> {
    s.require_qubits(3)?;
    s.check_party(first)?;
    let perm: Vec<usize> = std::iter::once(first).chain((0..3).filter(|&p| p != first)).collect();
    let t = s.permute_parties(&perm)?;
    let a = t.amplitudes();
    Ok((Matrix2::new(a[0], a[1], a[2], a[3]), Matrix2::new(a[4], a[5], a[6], a[7])))
}

/// The unnormalized two-qubit branches `B₀`, `B₁` left by measuring the first party.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchMatrices {
    pub b0: Matrix2<Complex64>,
    pub b1: Matrix2<Complex64>,
}

impl BranchMatrices {
    pub fn new(a0: &Matrix2<Complex64>, a1: &Matrix2<Complex64>, theta: f64, phi: f64) -> Self {
        let c0 = Complex64::new(theta.cos(), 0.0);
        let c1 = Complex64::from_polar(theta.sin(), phi);
        BranchMatrices { b0: a0 * c0 + a1 * c1, b1: a1 * c0.conj() - a0 * c1.conj() }
    }

    pub fn from_state(s: &StateTensor, first: usize, theta: f64, phi: f64) -> Result<Self> {
        let (a0, a1) = split_first_party(s, first)?;
        Ok(Self::new(&a0, &a1, theta, phi))
    }

    /// `(B₀B₀†, B₁B₁†)`.
    pub fn grams(&self) -> (Matrix2<Complex64>, Matrix2<Complex64>) {
        (self.b0 * self.b0.adjoint(), self.b1 * self.b1.adjoint())
    }

    pub fn probabilities(&self) -> (f64, f64) {
        (self.b0.norm_squared(), self.b1.norm_squared())
    }

    /// `S(B₀B₀†) + S(B₁B₁†)`: entropy of the best two-level hierarchy below this
    /// first-party measurement.
    pub fn objective(&self) -> f64 {
        let (g0, g1) = self.grams();
        hermitian2_eigenvalues(&g0).iter().chain(&hermitian2_eigenvalues(&g1)).map(|&l| xlog2x(l)).sum()
    }

    /// `Σ pᵢ E(ψᵢ)`, the average entanglement left in the two branches.
    pub fn average_entanglement(&self) -> f64 {
        let (p0, p1) = self.probabilities();
        let mut total = 0.0;
        for (p, b) in [(p0, &self.b0), (p1, &self.b1)] {
            if p > crate::state::ZERO_BRANCH {
                total += p * two_qubit_entropy(&(b / Complex64::new(p.sqrt(), 0.0)));
            }
        }
        total
    }
}

/// Basis for the last two levels of a hierarchy: the residual's party 0 is
/// measured in its Schmidt basis, a lone party in a basis containing its state.
pub(crate) fn tail_basis(residual: &StateTensor) -> MeasurementBasis {
    let d = residual.dims()[0];
    let vectors = if residual.num_parties() == 1 {
        complete_basis(&[DVector::from_column_slice(residual.amplitudes())], d)
    } else {
        let rho = residual.reduced_density(&[0]).expect("party 0 exists");
        hermitian_eigen(&rho).1
    };
    MeasurementBasis::from_columns(vectors).expect("eigenvectors are orthonormal")
}

/// EMB of a three-qubit state with `first` measured first.
pub fn emb_tripartite_first(s: &StateTensor, first: usize, cfg: &OptimizerConfig) -> Result<MeasureResult> {
    let (a0, a1) = split_first_party(s, first)?;
    let opt = minimize_periodic(|x| BranchMatrices::new(&a0, &a1, x[0], x[1]).objective(), &angle_axes(), cfg)?;
    let (theta, phi) = canonical_angles(opt.argmin[0], opt.argmin[1]);
    let order: Vec<usize> = std::iter::once(first).chain((0..3).filter(|&p| p != first)).collect();
    let tree = OutcomeTree::build(s, &order, |r| {
        if r.num_parties() == 3 {
            MeasurementBasis::qubit(theta, phi)
        } else {
            tail_basis(r)
        }
    })?;
    Ok(MeasureResult {
        value: opt.value,
        argmin: vec![theta, phi],
        parties: vec![first],
        outcome_tree: Some(tree),
        diagnostics: opt.diagnostics,
    })
}

/// Keeps the strictly better of two results, the earlier on ties, and
/// accumulates search effort.
fn keep_best(best: Option<MeasureResult>, next: MeasureResult, better: impl Fn(f64, f64) -> bool) -> MeasureResult {
    match best {
        None => next,
        Some(mut b) => {
            let mut diag = b.diagnostics.clone();
            diag.absorb(&next.diagnostics);
            if better(next.value, b.value) {
                b = next;
            }
            b.diagnostics.evaluations = diag.evaluations;
            b.diagnostics.restarts = diag.restarts;
            b
        }
    }
}

/// Three-qubit EMB, minimized over which party is measured first.
pub fn emb_tripartite(s: &StateTensor, cfg: &OptimizerConfig) -> Result<MeasureResult> {
    s.require_qubits(3)?;
    let mut best = None;
    for first in 0..3 {
        best = Some(keep_best(best, emb_tripartite_first(s, first, cfg)?, |a, b| a < b));
    }
    Ok(best.expect("three candidates"))
}

/// EMB of an arbitrary state after grouping its parties by `partition`, with
/// every measurement order tried (up to four blocks).
pub fn emb_general(s: &StateTensor, partition: &Partition, budget: &Budget) -> Result<MeasureResult> {
    emb_general_with_orders(s, partition, None, budget)
}

/// As [`emb_general`], restricted to the given block orders when supplied.
/// Orders that differ only in their last two blocks are equivalent, and the
/// first of each such pair is used.
pub fn emb_general_with_orders(
    s: &StateTensor,
    partition: &Partition,
    orders: Option<&[Vec<usize>]>,
    budget: &Budget,
) -> Result<MeasureResult> {
    budget.emb.validate()?;
    let merged = s.coarse_grain(partition)?;
    let n = merged.num_parties();
    if n < 2 {
        return Err(Error::WrongPartyCount { expected: 2, got: n });
    }
    if n == 2 {
        let value = entropy_bits(matrix_schmidt_values(&merged.bipartite_matrix(&[0])?));
        let tree = OutcomeTree::build(&merged, &[0, 1], tail_basis)?;
        return Ok(MeasureResult {
            value,
            argmin: Vec::new(),
            parties: vec![0, 1],
            outcome_tree: Some(tree),
            diagnostics: Diagnostics { evaluations: 0, restarts: 0, converged: true, grid_best: value, gap: None },
        });
    }
    let candidates: Vec<Vec<usize>> = match orders {
        Some(list) => {
            for o in list {
                let mut sorted = o.clone();
                sorted.sort_unstable();
                if sorted != (0..n).collect::<Vec<_>>() {
                    return Err(Error::InvalidPermutation(o.clone()));
                }
            }
            list.to_vec()
        }
        None if n <= MAX_ENUMERATED_PARTIES => permutations(n),
        None => {
            return Err(Error::InvalidParams(format!(
                "{n} blocks; measurement orders must be supplied beyond {MAX_ENUMERATED_PARTIES}"
            )))
        }
    };
    let mut candidates: Vec<Vec<usize>> =
        candidates.into_iter().filter(|o| o[n - 2] < o[n - 1]).collect();
    candidates.dedup();

    let mut best: Option<(f64, Vec<usize>, Solved)> = None;
    let mut total_evals = 0;
    let mut total_restarts = 0;
    let mut converged = true;
    for order in candidates {
        let permuted = merged.permute_parties(&order)?;
        let Some(solved) = solve(&permuted, &budget.emb)? else { continue };
        total_evals += solved.diagnostics.evaluations;
        total_restarts += solved.diagnostics.restarts;
        converged &= solved.diagnostics.converged;
        if best.as_ref().map_or(true, |(v, _, _)| solved.value < *v) {
            best = Some((solved.value, order, solved));
        }
    }
    let (value, order, solved) = best.ok_or_else(|| {
        Error::BudgetExceeded(format!("every measurement order needs more than {MAX_AXES} angles for its first block"))
    })?;

    let root_basis = solved.basis.clone();
    let inner_cfg = inner_config(&budget.emb);
    let tree = OutcomeTree::build(&merged, &order, |r| {
        if r.num_parties() == n {
            root_basis.clone()
        } else if r.num_parties() <= 2 {
            tail_basis(r)
        } else {
            solve(r, &inner_cfg)
                .ok()
                .flatten()
                .map_or_else(|| MeasurementBasis::computational(r.dims()[0]), |s| s.basis)
        }
    })?;
    let mut diagnostics = solved.diagnostics;
    diagnostics.evaluations = total_evals;
    diagnostics.restarts = total_restarts;
    diagnostics.converged = converged;
    Ok(MeasureResult { value, argmin: solved.params, parties: vec![order[0]], outcome_tree: Some(tree), diagnostics })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for p in 0..n {
            if !prefix.contains(&p) {
                prefix.push(p);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

/// Cheaper search for hierarchy levels below the root.
fn inner_config(cfg: &OptimizerConfig) -> OptimizerConfig {
    OptimizerConfig {
        grid_resolution: (cfg.grid_resolution / 4).max(8),
        restart_count: cfg.restart_count.min(2),
        ..cfg.clone()
    }
}

struct Solved {
    value: f64,
    params: Vec<f64>,
    basis: MeasurementBasis,
    diagnostics: Diagnostics,
}

fn param_count(d: usize) -> usize {
    if d == 2 {
        2
    } else {
        d * (d - 1)
    }
}

fn basis_from_params(d: usize, x: &[f64]) -> MeasurementBasis {
    if d == 2 {
        MeasurementBasis::qubit(x[0], x[1])
    } else {
        MeasurementBasis::from_columns(unitary_from_params(x, d)).expect("exp(iH) is unitary")
    }
}

/// Minimal hierarchy entropy with party 0 measured first and the remaining
/// parties in their current order. `None` when party 0 needs too many angles.
fn solve(s: &StateTensor, cfg: &OptimizerConfig) -> Result<Option<Solved>> {
    let d = s.dims()[0];
    let k = param_count(d);
    if k > MAX_AXES {
        return Ok(None);
    }
    let level_cfg = if k == 2 {
        cfg.clone()
    } else {
        // Keep the grid near the two-angle budget.
        let per_axis = ((cfg.grid_resolution * cfg.grid_resolution) as f64).powf(1.0 / k as f64).floor() as usize;
        OptimizerConfig { grid_resolution: per_axis.max(2), ..cfg.clone() }
    };
    let inner_cfg = inner_config(cfg);
    let objective = |x: &[f64]| -> f64 {
        let basis = basis_from_params(d, x);
        let mut total = 0.0;
        for i in 0..d {
            let v = basis.vector(i);
            let Ok(proj) = s.project_party(0, v.as_slice()) else { return f64::NAN };
            let Some(residual) = proj.residual else { continue };
            let inner = if residual.num_parties() == 2 {
                entropy_bits(matrix_schmidt_values(&residual.bipartite_matrix(&[0]).expect("two parties")))
            } else {
                match solve(&residual, &inner_cfg) {
                    Ok(Some(sub)) => sub.value,
                    _ => return f64::NAN,
                }
            };
            total += xlog2x(proj.probability) + proj.probability * inner;
        }
        total
    };
    let axes: Vec<Axis> = if d == 2 {
        angle_axes().to_vec()
    } else {
        vec![Axis::interval(-PI, PI, f64::INFINITY); k]
    };
    let opt = minimize_periodic(objective, &axes, &level_cfg)?;
    let params = if d == 2 {
        let (t, p) = canonical_angles(opt.argmin[0], opt.argmin[1]);
        vec![t, p]
    } else {
        opt.argmin
    };
    Ok(Some(Solved { value: opt.value, basis: basis_from_params(d, &params), params, diagnostics: opt.diagnostics }))
}

/// Minimal entropy when two qubits are measured in fixed, independent bases and
/// the third is left unmeasured, minimized over the unmeasured party.
pub fn e_hmin(s: &StateTensor, budget: &Budget) -> Result<MeasureResult> {
    s.require_qubits(3)?;
    let mut best = None;
    for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let t = s.permute_parties(&[a, b, c])?;
        let amp = t.amplitudes();
        let f = |x: &[f64]| -> f64 {
            let rows = |theta: f64, phi: f64| {
                let a0 = Complex64::new(theta.cos(), 0.0);
                let a1 = Complex64::from_polar(theta.sin(), phi);
                [[a0, a1], [-a1.conj(), a0.conj()]]
            };
            let ra = rows(x[0], x[1]);
            let rb = rows(x[2], x[3]);
            let mut h = 0.0;
            for l in 0..2 {
                for m in 0..2 {
                    let mut p = 0.0;
                    for k in 0..2 {
                        let mut z = Complex64::new(0.0, 0.0);
                        for i in 0..2 {
                            for j in 0..2 {
                                z += amp[4 * i + 2 * j + k] * ra[l][i] * rb[m][j];
                            }
                        }
                        p += z.norm_sqr();
                    }
                    h += xlog2x(p);
                }
            }
            h
        };
        let [t_ax, p_ax] = angle_axes();
        let opt = minimize_periodic(f, &[t_ax, p_ax, t_ax, p_ax], &budget.hmin)?;
        let (ta, pa) = canonical_angles(opt.argmin[0], opt.argmin[1]);
        let (tb, pb) = canonical_angles(opt.argmin[2], opt.argmin[3]);
        let result = MeasureResult {
            value: opt.value,
            argmin: vec![ta, pa, tb, pb],
            parties: vec![a, b],
            outcome_tree: None,
            diagnostics: opt.diagnostics,
        };
        best = Some(keep_best(best, result, |x, y| x < y));
    }
    Ok(best.expect("three candidates"))
}

/// Largest average two-qubit entanglement left after measuring `first`.
pub fn e_locc_first(s: &StateTensor, first: usize, cfg: &OptimizerConfig) -> Result<MeasureResult> {
    let (a0, a1) = split_first_party(s, first)?;
    let opt = maximize_periodic(
        |x| BranchMatrices::new(&a0, &a1, x[0], x[1]).average_entanglement(),
        &angle_axes(),
        cfg,
    )?;
    let (theta, phi) = canonical_angles(opt.argmin[0], opt.argmin[1]);
    Ok(MeasureResult {
        value: opt.value,
        argmin: vec![theta, phi],
        parties: vec![first],
        outcome_tree: None,
        diagnostics: opt.diagnostics,
    })
}

/// `max_party max_{θ,φ} Σ pᵢ E(ψᵢ)`: entanglement localizable on two qubits by
/// one projective measurement of the third.
pub fn e_locc(s: &StateTensor, budget: &Budget) -> Result<MeasureResult> {
    s.require_qubits(3)?;
    let mut best = None;
    for first in 0..3 {
        best = Some(keep_best(best, e_locc_first(s, first, &budget.emb)?, |a, b| a > b));
    }
    Ok(best.expect("three candidates"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LoccCheck {
    pub emb: f64,
    pub e_locc: f64,
    pub holds: bool,
}

/// Checks `E_MB ≥ E_LOCC` within [`LOCC_TOLERANCE`].
pub fn check_locc_monotone(s: &StateTensor, budget: &Budget) -> Result<LoccCheck> {
    let emb = emb_tripartite(s, &budget.emb)?.value;
    let e_locc = e_locc(s, budget)?.value;
    Ok(LoccCheck { emb, e_locc, holds: emb + LOCC_TOLERANCE >= e_locc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::StandardFormParams;
    use crate::measures::{binary_entropy, max_bipartite_entanglement};
    use crate::state::{ghz_w, named_state};

    fn quick() -> OptimizerConfig {
        OptimizerConfig { grid_resolution: 24, ..OptimizerConfig::default() }
    }

    #[test]
    fn canonical_angles_fold() {
        let (t, p) = canonical_angles(2.0, 0.5);
        assert!((t - (PI - 2.0)).abs() < 1e-15 && (p - (0.5 + PI)).abs() < 1e-15);
        let (t, p) = canonical_angles(-0.3, -1.0);
        assert!((t - 0.3).abs() < 1e-12 && (p - (TAU - 1.0 + PI - TAU)).abs() < 1e-12, "{t} {p}");
        // Same basis up to phase.
        let s = named_state("W", &[]).unwrap();
        let (a0, a1) = split_first_party(&s, 0).unwrap();
        let x = BranchMatrices::new(&a0, &a1, 2.0, 0.5).objective();
        let y = BranchMatrices::new(&a0, &a1, PI - 2.0, 0.5 + PI).objective();
        assert!((x - y).abs() < 1e-13);
    }

    #[test]
    fn branch_matrices_agree_with_projection() {
        let s = named_state("Wprime", &[]).unwrap();
        let (t, ph) = (0.4, 1.9);
        let bm = BranchMatrices::from_state(&s, 1, t, ph).unwrap();
        let basis = MeasurementBasis::qubit(t, ph);
        let moved = s.permute_parties(&[1, 0, 2]).unwrap();
        let (p0, p1) = bm.probabilities();
        let q0 = moved.project_party(0, basis.vector(0).as_slice()).unwrap();
        let q1 = moved.project_party(0, basis.vector(1).as_slice()).unwrap();
        assert!((p0 - q0.probability).abs() < 1e-14 && (p1 - q1.probability).abs() < 1e-14);
        assert!((p0 + p1 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ghz_and_omega() {
        let ghz = named_state("GHZ", &[]).unwrap();
        let r = emb_tripartite(&ghz, &quick()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-8, "{}", r.value);
        let omega = named_state("Omega", &[]).unwrap();
        let r = emb_tripartite(&omega, &quick()).unwrap();
        let want = binary_entropy(0.5 * (1.0 + 1.0 / 5f64.sqrt())).unwrap();
        assert!((r.value - want).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn tree_entropy_matches_value() {
        for name in ["W", "Wprime", "Omega"] {
            let s = named_state(name, &[]).unwrap();
            let r = emb_tripartite(&s, &quick()).unwrap();
            let tree = r.outcome_tree.as_ref().unwrap();
            assert!((tree.entropy() - r.value).abs() < 1e-9, "{name}");
            assert_eq!(tree.measurement_count(), 7);
            assert!((tree.leaf_probabilities().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn product_state_is_zero() {
        let s = StateTensor::basis_state(vec![2, 2, 2], &[1, 0, 1]).unwrap();
        assert!(emb_tripartite(&s, &quick()).unwrap().value.abs() < 1e-10);
        assert!(e_hmin(&s, &Budget::default()).unwrap().value.abs() < 1e-10);
    }

    #[test]
    fn general_matches_tripartite() {
        let s = ghz_w(0.8).unwrap();
        let budget = Budget::from_config(quick());
        let a = emb_tripartite(&s, &budget.emb).unwrap();
        let b = emb_general(&s, &Partition::finest(3), &budget).unwrap();
        assert!((a.value - b.value).abs() < 1e-8, "{} {}", a.value, b.value);
        let tree = b.outcome_tree.unwrap();
        assert!((tree.entropy() - b.value).abs() < 1e-8);
    }

    #[test]
    fn general_bipartite_is_schmidt_entropy() {
        let s = named_state("W", &[]).unwrap();
        let cut = Partition::bipartition(&[0], 3).unwrap();
        let r = emb_general(&s, &cut, &Budget::default()).unwrap();
        let want = binary_entropy(1.0 / 3.0).unwrap();
        assert!((r.value - want).abs() < 1e-12);
        assert_eq!(r.outcome_tree.unwrap().measurement_count(), 3);
    }

    #[test]
    fn general_rejects_single_block() {
        let s = named_state("GHZ", &[]).unwrap();
        let all = Partition::new(vec![vec![0, 1, 2]], 3).unwrap();
        assert!(matches!(emb_general(&s, &all, &Budget::default()), Err(Error::WrongPartyCount { .. })));
    }

    #[test]
    fn qutrit_first_party() {
        // |0⟩|00⟩ + |1⟩|11⟩ + |2⟩|01⟩ style state with a qutrit.
        let mut amps = vec![Complex64::new(0.0, 0.0); 12];
        let r = 1.0 / 3f64.sqrt();
        amps[0] = Complex64::new(r, 0.0);
        amps[4 + 3] = Complex64::new(r, 0.0);
        amps[8 + 1] = Complex64::new(r, 0.0);
        let s = StateTensor::new(vec![3, 2, 2], amps).unwrap();
        let budget = Budget::from_config(OptimizerConfig { grid_resolution: 12, restart_count: 2, ..Default::default() });
        let res = emb_general(&s, &Partition::finest(3), &budget).unwrap();
        // Product of the qutrit basis with the rest gives log2 3, and no hierarchy
        // can beat the largest cut entropy.
        let lower = max_bipartite_entanglement(&s).unwrap();
        assert!(res.value >= lower - 1e-8);
        assert!(res.value <= 3f64.log2() + 1e-8);
        assert!((res.outcome_tree.unwrap().entropy() - res.value).abs() < 1e-6);
    }

    #[test]
    fn hmin_dominates_emb() {
        for name in ["W", "Wprime", "GHZ"] {
            let s = named_state(name, &[]).unwrap();
            let e = emb_tripartite(&s, &quick()).unwrap().value;
            let h = e_hmin(&s, &Budget::default()).unwrap().value;
            assert!(h >= e - 1e-7, "{name}: {h} < {e}");
        }
    }

    #[test]
    fn locc_values() {
        let ghz = named_state("GHZ", &[]).unwrap();
        let r = e_locc(&ghz, &Budget::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-8);
        let chk = check_locc_monotone(&named_state("Omega", &[]).unwrap(), &Budget::default()).unwrap();
        assert!(chk.holds, "{chk:?}");
    }

    #[test]
    fn omega1_emb_is_largest_cut() {
        let p = StandardFormParams::omega1_from_q0_q4(0.6, 0.2).unwrap();
        let s = StateTensor::standard_form(&p);
        let r = emb_tripartite(&s, &OptimizerConfig::default()).unwrap();
        let m = max_bipartite_entanglement(&s).unwrap();
        assert!((r.value - m).abs() < 1e-7, "{} {m}", r.value);
    }
}
