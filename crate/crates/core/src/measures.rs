//! Entropies, Schmidt decomposition, bipartite entanglement and pure-state
//! one-vs-rest concurrences. All entropies are in bits.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::linalg::{clamp_eigenvalue, hermitian2_eigenvalues, hermitian_eigenvalues};
use crate::state::{MeasurementBasis, Partition, StateTensor};
use crate::{Error, Result};

const PROBABILITY_TOLERANCE: f64 = 1e-10;

/// `-x log₂ x` with the `0·log 0 = 0` convention.
#[inline]
pub(crate) fn xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// Shannon entropy of raw weights, without validating that they sum to one.
#[inline]
pub(crate) fn entropy_bits<I: IntoIterator<Item = f64>>(weights: I) -> f64 {
    weights.into_iter().map(xlog2x).sum()
}

/// Probability distribution; entries within roundoff of zero are clamped to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(mut probabilities: Vec<f64>) -> Result<Self> {
        for p in probabilities.iter_mut() {
            if !(*p >= -1e-12) {
                return Err(Error::OutOfRange { what: "probability", value: *p });
            }
            *p = p.max(0.0);
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(Error::OutOfRange { what: "probability total", value: total });
        }
        Ok(ProbabilityVector(probabilities))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// `H₂(x) = −x log₂ x − (1−x) log₂(1−x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::OutOfRange { what: "binary entropy argument", value: x });
    }
    let x = x.clamp(0.0, 1.0);
    Ok(xlog2x(x) + xlog2x(1.0 - x))
}

pub fn shannon_entropy(p: &ProbabilityVector) -> f64 {
    entropy_bits(p.0.iter().copied())
}

/// Schmidt coefficients (squared) and the two orthonormal Schmidt bases of a cut.
#[derive(Debug, Clone)]
pub struct SchmidtSpectrum {
    /// `λ_k`, nonincreasing, summing to one.
    pub values: Vec<f64>,
    /// Columns `|φ_k⁽¹⁾⟩` over the first block.
    pub left_basis: DMatrix<Complex64>,
    /// Columns `|φ_k⁽²⁾⟩` over the second block.
    pub right_basis: DMatrix<Complex64>,
}

impl SchmidtSpectrum {
    pub fn rank(&self) -> usize {
        self.values.iter().filter(|&&v| v > 0.0).count()
    }

    pub fn entropy(&self) -> f64 {
        entropy_bits(self.values.iter().copied())
    }
}

fn cut_matrix(s: &StateTensor, cut: &Partition) -> Result<DMatrix<Complex64>> {
    if cut.len() != 2 {
        return Err(Error::NotBipartite(cut.len()));
    }
    let merged = s.coarse_grain(cut)?;
    let (rows, cols) = (merged.dims()[0], merged.dims()[1]);
    Ok(DMatrix::from_row_slice(rows, cols, merged.amplitudes()))
}

/// Schmidt decomposition across a two-block cut, via the SVD of the amplitude matrix.
pub fn schmidt_decompose(s: &StateTensor, cut: &Partition) -> Result<SchmidtSpectrum> {
    let m = cut_matrix(s, cut)?;
    let svd = m.svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    let k = svd.singular_values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let values = order.iter().map(|&i| clamp_eigenvalue(svd.singular_values[i].powi(2))).collect();
    let left_basis = DMatrix::from_fn(u.nrows(), k, |r, c| u[(r, order[c])]);
    let right_basis = DMatrix::from_fn(v_t.ncols(), k, |r, c| v_t[(order[c], r)]);
    Ok(SchmidtSpectrum { values, left_basis, right_basis })
}

/// Schmidt values only; takes the closed-form path when either side is a qubit.
pub fn schmidt_values(s: &StateTensor, cut: &Partition) -> Result<Vec<f64>> {
    let m = cut_matrix(s, cut)?;
    Ok(matrix_schmidt_values(&m))
}

pub(crate) fn matrix_schmidt_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    let rho = if m.nrows() <= m.ncols() { m * m.adjoint() } else { m.adjoint() * m };
    hermitian_eigenvalues(&rho)
}

/// Entanglement entropy across a two-block cut.
pub fn bipartite_entanglement(s: &StateTensor, cut: &Partition) -> Result<f64> {
    Ok(entropy_bits(schmidt_values(s, cut)?))
}

/// Entanglement entropy of a normalized 2×2 amplitude matrix (two-qubit pure state).
#[inline]
pub(crate) fn two_qubit_entropy(m: &Matrix2<Complex64>) -> f64 {
    let rho = m * m.adjoint();
    entropy_bits(hermitian2_eigenvalues(&rho))
}

/// Largest entanglement entropy over all bipartitions of the parties.
pub fn max_bipartite_entanglement(s: &StateTensor) -> Result<f64> {
    let n = s.num_parties();
    if n < 2 {
        return Err(Error::WrongPartyCount { expected: 2, got: n });
    }
    let mut best = 0.0f64;
    // Subsets containing party 0 enumerate each cut once.
    for mask in 0..(1usize << (n - 1)) {
        let block: Vec<usize> =
            std::iter::once(0).chain((1..n).filter(|&p| mask >> (p - 1) & 1 == 1)).collect();
        if block.len() == n {
            continue;
        }
        let cut = Partition::bipartition(&block, n)?;
        best = best.max(bipartite_entanglement(s, &cut)?);
    }
    Ok(best)
}

/// `C = 2√|det ρ|` for the 2×2 reduced density matrix of a qubit party.
pub fn pure_concurrence_one_vs_rest(s: &StateTensor, party: usize) -> Result<f64> {
    s.check_party(party)?;
    if s.dims()[party] != 2 {
        return Err(Error::NotQubit { party, dim: s.dims()[party] });
    }
    let d = s.reduced_density(&[party])?;
    let det = d[(0, 0)] * d[(1, 1)] - d[(0, 1)] * d[(1, 0)];
    Ok((2.0 * det.norm().sqrt()).min(1.0))
}

/// `H₂((1 + √(1 − C²))/2)`, the pure-state entropy fixed by a concurrence.
pub fn entropy_from_concurrence(c: f64) -> f64 {
    let x = 0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt());
    xlog2x(x) + xlog2x(1.0 - x)
}

/// Three-qubit bipartite bound `min_m H₂(x_m)` over the three one-vs-rest cuts.
pub fn bipartite_lower_bound(s: &StateTensor) -> Result<f64> {
    s.require_qubits(3)?;
    let mut best = f64::INFINITY;
    for m in 0..3 {
        best = best.min(entropy_from_concurrence(pure_concurrence_one_vs_rest(s, m)?));
    }
    Ok(best)
}

/// Outcome distribution of measuring one party in `basis`, ignoring the rest.
pub fn outcome_distribution(
    s: &StateTensor,
    party: usize,
    basis: &MeasurementBasis,
) -> Result<ProbabilityVector> {
    s.check_party(party)?;
    if basis.dim() != s.dims()[party] {
        return Err(Error::DimensionMismatch { expected: s.dims()[party], got: basis.dim() });
    }
    let mut probs = Vec::with_capacity(basis.dim());
    for i in 0..basis.dim() {
        let v = basis.vector(i);
        probs.push(if s.num_parties() == 1 {
            v.iter().zip(s.amplitudes()).map(|(c, a)| c.conj() * a).sum::<Complex64>().norm_sqr()
        } else {
            s.project_party(party, v.as_slice())?.probability
        });
    }
    ProbabilityVector::new(probs)
}
