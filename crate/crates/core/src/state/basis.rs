use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::linalg::orthonormality_defect;
use crate::{Error, Result};

const ORTHONORMAL_TOLERANCE: f64 = 1e-12;

/// Orthonormal measurement basis of one party, stored as columns.
///
/// Qubit bases are parametrized by `a₀ = cos θ`, `a₁ = sin θ·e^{iφ}`: the two
/// columns are `(a₀*, a₁*)` and `(−a₁, a₀)`, so projecting onto them contracts the
/// state with `(a₀, a₁)` and `(−a₁*, a₀*)` respectively.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    vectors: DMatrix<Complex64>,
    angles: Option<(f64, f64)>,
}

impl MeasurementBasis {
    pub fn qubit(theta: f64, phi: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let a0 = Complex64::new(c, 0.0);
        let a1 = Complex64::from_polar(s, phi);
        let vectors = DMatrix::from_column_slice(2, 2, &[a0.conj(), a1.conj(), -a1, a0]);
        MeasurementBasis { vectors, angles: Some((theta, phi)) }
    }

    /// Basis from the columns of a unitary matrix.
    pub fn from_columns(vectors: DMatrix<Complex64>) -> Result<Self> {
        if vectors.nrows() != vectors.ncols() || vectors.nrows() < 2 {
            return Err(Error::InvalidParams(format!(
                "basis matrix must be square with dim >= 2, got {}x{}",
                vectors.nrows(),
                vectors.ncols()
            )));
        }
        let deviation = orthonormality_defect(&vectors);
        if deviation > ORTHONORMAL_TOLERANCE {
            return Err(Error::NonOrthonormalBasis { deviation });
        }
        Ok(MeasurementBasis { vectors, angles: None })
    }

    pub fn computational(dim: usize) -> Self {
        MeasurementBasis { vectors: DMatrix::identity(dim, dim), angles: None }
    }

    pub fn dim(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn vectors(&self) -> &DMatrix<Complex64> {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> DVector<Complex64> {
        self.vectors.column(i).into_owned()
    }

    /// `(θ, φ)` for bases built with [`MeasurementBasis::qubit`].
    pub fn angles(&self) -> Option<(f64, f64)> {
        self.angles
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_basis_is_orthonormal() {
        for &(t, p) in &[(0.0, 0.0), (0.3, 1.7), (1.5, 5.9), (std::f64::consts::FRAC_PI_4, 0.0)] {
            let b = MeasurementBasis::qubit(t, p);
            assert!(orthonormality_defect(b.vectors()) < 1e-15);
            assert_eq!(b.angles(), Some((t, p)));
        }
    }

    #[test]
    fn qubit_basis_contracts_with_a_coefficients() {
        let (t, p) = (0.4, 2.2);
        let b = MeasurementBasis::qubit(t, p);
        let a0 = Complex64::new(t.cos(), 0.0);
        let a1 = Complex64::from_polar(t.sin(), p);
        // ⟨v|ψ⟩ = Σ conj(v_i) ψ_i must use (a₀, a₁) and (−a₁*, a₀*).
        assert!((b.vector(0)[0].conj() - a0).norm() < 1e-15);
        assert!((b.vector(0)[1].conj() - a1).norm() < 1e-15);
        assert!((b.vector(1)[0].conj() + a1.conj()).norm() < 1e-15);
        assert!((b.vector(1)[1].conj() - a0.conj()).norm() < 1e-15);
    }

    #[test]
    fn rejects_non_orthonormal_columns() {
        let m = DMatrix::from_element(2, 2, Complex64::new(1.0, 0.0));
        assert!(matches!(
            MeasurementBasis::from_columns(m),
            Err(Error::NonOrthonormalBasis { .. })
        ));
    }
}
