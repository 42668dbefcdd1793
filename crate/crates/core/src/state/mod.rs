//! Pure multipartite states and the operations that reshape them: projection of
//! one party, partial trace, party permutation and coarse-graining.

mod basis;
mod named;
mod partition;
mod tree;

pub use basis::MeasurementBasis;
pub use named::{ghz_w, named_state, NAMED_STATES};
pub use partition::Partition;
pub use tree::{expected_measurement_count, Branch, OutcomeNode, OutcomeTree};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest supported total Hilbert-space dimension.
pub const MAX_TOTAL_DIM: usize = 1 << 20;

/// Inputs whose norm is off by more than this are rejected instead of renormalized.
const RENORMALIZE_LIMIT: f64 = 1e-3;
const NORM_TOLERANCE: f64 = 1e-12;
/// Branches with probability below this carry no residual state.
pub const ZERO_BRANCH: f64 = 1e-14;
const UNIT_VECTOR_TOLERANCE: f64 = 1e-10;

/// Normalized amplitude tensor of an `N`-party pure state.
///
/// Amplitudes are row-major: the last party's index runs fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct StateTensor {
    dims: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

/// Outcome of projecting one party onto a vector.
#[derive(Debug, Clone)]
pub struct Projection {
    pub probability: f64,
    /// Normalized state of the remaining parties; `None` for a zero-probability branch.
    pub residual: Option<StateTensor>,
}

#[derive(Serialize, Deserialize)]
struct JsonState {
    dims: Vec<usize>,
    amplitudes: Vec<[f64; 2]>,
}

fn check_dims(dims: &[usize], len: usize) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::InvalidParams("a state needs at least one party".into()));
    }
    if let Some((party, &dim)) = dims.iter().enumerate().find(|(_, &d)| d < 2) {
        return Err(Error::InvalidDimension { party, dim });
    }
    let total = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .filter(|&t| t <= MAX_TOTAL_DIM)
        .ok_or(Error::TooLarge(dims.iter().product::<usize>()))?;
    if total != len {
        return Err(Error::DimensionMismatch { expected: total, got: len });
    }
    Ok(())
}

fn norm_of(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

impl StateTensor {
    /// Builds a state from amplitudes that should already be normalized.
    ///
    /// A norm within `1e-3` of one is rescaled (with a warning past `1e-12`);
    /// anything further off is rejected.
    pub fn new(dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::with_factor(dims, amplitudes).map(|(s, _)| s)
    }

    fn with_factor(dims: Vec<usize>, mut amplitudes: Vec<Complex64>) -> Result<(Self, f64)> {
        check_dims(&dims, amplitudes.len())?;
        let norm = norm_of(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        let deviation = (norm - 1.0).abs();
        if deviation >= RENORMALIZE_LIMIT {
            return Err(Error::NotNormalized { norm });
        }
        if deviation > NORM_TOLERANCE {
            log::warn!("renormalizing input state with norm {norm}");
        }
        let factor = 1.0 / norm;
        amplitudes.iter_mut().for_each(|a| *a *= factor);
        Ok((StateTensor { dims, amplitudes }, factor))
    }

    /// Builds a state from any nonzero amplitude vector, normalizing it.
    pub fn from_unnormalized(dims: Vec<usize>, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dims(&dims, amplitudes.len())?;
        let norm = norm_of(&amplitudes);
        if norm < 1e-300 || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(StateTensor { dims, amplitudes })
    }

    /// Parses `{"dims":[..],"amplitudes":[[re,im],..]}`. Returns the normalized state
    /// and the factor that was applied to the amplitudes.
    pub fn from_json(text: &[u8]) -> Result<(Self, f64)> {
        let raw: JsonState = serde_json::from_slice(text)?;
        let amps = raw.amplitudes.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        Self::with_factor(raw.dims, amps)
    }

    pub fn to_json(&self) -> String {
        let raw = JsonState {
            dims: self.dims.clone(),
            amplitudes: self.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        };
        serde_json::to_string(&raw).expect("state serialization cannot fail")
    }

    /// Tensor product of per-party vectors (normalized as a whole).
    pub fn product(vectors: &[DVector<Complex64>]) -> Result<Self> {
        let dims: Vec<usize> = vectors.iter().map(|v| v.len()).collect();
        let mut amps = vec![Complex64::new(1.0, 0.0)];
        for v in vectors {
            amps = amps.iter().flat_map(|&a| v.iter().map(move |&b| a * b)).collect();
        }
        Self::from_unnormalized(dims, amps)
    }

    /// Computational basis state `|i₁…i_N⟩`.
    pub fn basis_state(dims: Vec<usize>, digits: &[usize]) -> Result<Self> {
        let total: usize = dims.iter().product();
        let mut amps = vec![Complex64::new(0.0, 0.0); total];
        if digits.len() != dims.len() || digits.iter().zip(&dims).any(|(&i, &d)| i >= d) {
            return Err(Error::InvalidParams(format!("digits {digits:?} do not fit dims {dims:?}")));
        }
        let flat = digits.iter().zip(&dims).fold(0, |acc, (&i, &d)| acc * d + i);
        if flat < total {
            amps[flat] = Complex64::new(1.0, 0.0);
        }
        Self::new(dims, amps)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn num_parties(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_qubits(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }

    /// Amplitude at a multi-index.
    pub fn amplitude(&self, digits: &[usize]) -> Complex64 {
        let flat = digits.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i);
        self.amplitudes[flat]
    }

    /// `⟨self|other⟩`; both states must share dims.
    pub fn inner(&self, other: &StateTensor) -> Complex64 {
        debug_assert_eq!(self.dims, other.dims);
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub(crate) fn check_party(&self, party: usize) -> Result<()> {
        if party >= self.num_parties() {
            return Err(Error::InvalidParty { party, parties: self.num_parties() });
        }
        Ok(())
    }

    pub(crate) fn require_qubits(&self, parties: usize) -> Result<()> {
        if self.num_parties() != parties {
            return Err(Error::WrongPartyCount { expected: parties, got: self.num_parties() });
        }
        if let Some((party, &dim)) = self.dims.iter().enumerate().find(|(_, &d)| d != 2) {
            return Err(Error::NotQubit { party, dim });
        }
        Ok(())
    }

    /// Projects `party` onto `vector`, i.e. forms `⟨vector|ψ⟩` on that party.
    pub fn project_party(&self, party: usize, vector: &[Complex64]) -> Result<Projection> {
        if self.num_parties() < 2 {
            return Err(Error::WrongPartyCount { expected: 2, got: self.num_parties() });
        }
        self.check_party(party)?;
        let d = self.dims[party];
        if vector.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: vector.len() });
        }
        let norm = norm_of(vector);
        if (norm - 1.0).abs() > UNIT_VECTOR_TOLERANCE {
            return Err(Error::NonUnitVector { norm });
        }
        let inner: usize = self.dims[party + 1..].iter().product();
        let outer: usize = self.dims[..party].iter().product();
        let mut out = vec![Complex64::new(0.0, 0.0); outer * inner];
        for o in 0..outer {
            for (k, c) in vector.iter().enumerate() {
                let cc = c.conj();
                let src = &self.amplitudes[(o * d + k) * inner..(o * d + k + 1) * inner];
                let dst = &mut out[o * inner..(o + 1) * inner];
                for (x, a) in dst.iter_mut().zip(src) {
                    *x += cc * a;
                }
            }
        }
        let probability: f64 = out.iter().map(|a| a.norm_sqr()).sum();
        if probability < ZERO_BRANCH {
            return Ok(Projection { probability: 0.0, residual: None });
        }
        let scale = 1.0 / probability.sqrt();
        out.iter_mut().for_each(|a| *a *= scale);
        let mut dims = self.dims.clone();
        dims.remove(party);
        Ok(Projection { probability, residual: Some(StateTensor { dims, amplitudes: out }) })
    }

    /// Reorders parties: party `i` of the result is party `perm[i]` of `self`.
    pub fn permute_parties(&self, perm: &[usize]) -> Result<Self> {
        let n = self.num_parties();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidPermutation(perm.to_vec()));
        }
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            return Ok(self.clone());
        }
        let old_strides = strides(&self.dims);
        let dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let src_strides: Vec<usize> = perm.iter().map(|&p| old_strides[p]).collect();
        let mut amplitudes = Vec::with_capacity(self.total_dim());
        let mut digits = vec![0usize; n];
        let mut src = 0usize;
        for _ in 0..self.total_dim() {
            amplitudes.push(self.amplitudes[src]);
            // Odometer increment over the new index, tracking the source offset.
            for axis in (0..n).rev() {
                digits[axis] += 1;
                src += src_strides[axis];
                if digits[axis] < dims[axis] {
                    break;
                }
                src -= src_strides[axis] * dims[axis];
                digits[axis] = 0;
            }
        }
        Ok(StateTensor { dims, amplitudes })
    }

    /// Merges the parties of each block into one party. Block order gives the new
    /// party order; within a block, parties are merged in the listed order.
    pub fn coarse_grain(&self, part: &Partition) -> Result<Self> {
        if part.parties() != self.num_parties() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} parties, state has {}",
                part.parties(),
                self.num_parties()
            )));
        }
        let perm: Vec<usize> = part.blocks().iter().flatten().copied().collect();
        let permuted = self.permute_parties(&perm)?;
        let dims = part
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&p| self.dims[p]).product())
            .collect();
        Ok(StateTensor { dims, amplitudes: permuted.amplitudes })
    }

    fn check_block(&self, block: &[usize]) -> Result<Vec<usize>> {
        let n = self.num_parties();
        let mut seen = vec![false; n];
        for &p in block {
            self.check_party(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPartition(format!("party {p} repeated in block")));
            }
        }
        if block.is_empty() || block.len() == n {
            return Err(Error::InvalidPartition("block must be a nonempty proper subset".into()));
        }
        Ok((0..n).filter(|&p| !seen[p]).collect())
    }

    /// Amplitudes as a matrix with rows indexed by `block` (in the listed order)
    /// and columns by the remaining parties (ascending).
    pub fn bipartite_matrix(&self, block: &[usize]) -> Result<DMatrix<Complex64>> {
        let rest = self.check_block(block)?;
        let perm: Vec<usize> = block.iter().chain(&rest).copied().collect();
        let permuted = self.permute_parties(&perm)?;
        let rows: usize = block.iter().map(|&p| self.dims[p]).product();
        let cols = self.total_dim() / rows;
        Ok(DMatrix::from_row_slice(rows, cols, &permuted.amplitudes))
    }

    /// Reduced density matrix of `block`, indexed in the listed party order.
    pub fn reduced_density(&self, block: &[usize]) -> Result<DMatrix<Complex64>> {
        let m = self.bipartite_matrix(block)?;
        Ok(&m * m.adjoint())
    }

    /// Applies a local operator to one party.
    pub fn apply_local(&self, party: usize, op: &DMatrix<Complex64>) -> Result<Self> {
        self.check_party(party)?;
        let d = self.dims[party];
        if op.nrows() != d || op.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: op.nrows() });
        }
        let inner: usize = self.dims[party + 1..].iter().product();
        let outer: usize = self.dims[..party].iter().product();
        let mut out = vec![Complex64::new(0.0, 0.0); self.total_dim()];
        for o in 0..outer {
            for r in 0..d {
                for c in 0..d {
                    let w = op[(r, c)];
                    if w == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for t in 0..inner {
                        out[(o * d + r) * inner + t] += w * self.amplitudes[(o * d + c) * inner + t];
                    }
                }
            }
        }
        Self::from_unnormalized(self.dims.clone(), out)
    }

    /// Largest amplitude change under any transposition of equal-dimension parties.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.num_parties();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                if self.dims[i] != self.dims[j] {
                    return f64::INFINITY;
                }
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(i, j);
                let swapped = self.permute_parties(&perm).expect("valid transposition");
                for (a, b) in self.amplitudes.iter().zip(&swapped.amplitudes) {
                    worst = worst.max((a - b).norm());
                }
            }
        }
        worst
    }
}

pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}
