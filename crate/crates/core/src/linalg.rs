//! Small dense helpers: closed-form 2×2 Hermitian eigenproblems, the generic
//! Hermitian eigensolver, basis completion and parametrized unitaries.

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;

/// Eigenvalues below this are treated as roundoff and clamped to zero.
pub(crate) const EIGEN_CLAMP: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub(crate) fn clamp_eigenvalue(x: f64) -> f64 {
    if x < EIGEN_CLAMP {
        0.0
    } else {
        x
    }
}

/// Eigenvalues of a 2×2 Hermitian matrix, nonincreasing and clamped at zero.
#[inline]
pub(crate) fn hermitian2_eigenvalues(m: &Matrix2<Complex64>) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [clamp_eigenvalue(mean + radius), clamp_eigenvalue(mean - radius)]
}

/// Eigen-decomposition of a 2×2 Hermitian matrix. Columns of the returned matrix
/// are the eigenvectors matching the nonincreasing eigenvalues.
pub(crate) fn hermitian2_eigen(m: &Matrix2<Complex64>) -> ([f64; 2], Matrix2<Complex64>) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let top = mean + radius;
    let values = [clamp_eigenvalue(top), clamp_eigenvalue(mean - radius)];

    // Two algebraically equivalent eigenvectors; keep the better conditioned one.
    let u = [b, Complex64::new(top - a, 0.0)];
    let w = [Complex64::new(top - d, 0.0), b.conj()];
    let nu = (u[0].norm_sqr() + u[1].norm_sqr()).sqrt();
    let nw = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
    let (x, y) = if nu.max(nw) <= 1e-300 {
        // Scalar matrix: any basis diagonalizes it.
        (ONE, ZERO)
    } else if nu >= nw {
        (u[0] / nu, u[1] / nu)
    } else {
        (w[0] / nw, w[1] / nw)
    };
    let vectors = Matrix2::new(x, -y.conj(), y, x.conj());
    (values, vectors)
}

/// Hermitian eigen-decomposition sorted by nonincreasing eigenvalue, with
/// eigenvalues clamped at zero. 2×2 inputs take the closed-form path.
pub(crate) fn hermitian_eigen(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = m.nrows();
    if n == 2 {
        let small = Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let (vals, vecs) = hermitian2_eigen(&small);
        let out = DMatrix::from_fn(2, 2, |i, j| vecs[(i, j)]);
        return (vals.to_vec(), out);
    }
    if n == 1 {
        return (vec![clamp_eigenvalue(m[(0, 0)].re)], DMatrix::identity(1, 1));
    }
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values = order.iter().map(|&i| clamp_eigenvalue(eig.eigenvalues[i])).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Eigenvalues only, nonincreasing and clamped.
pub(crate) fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.nrows() == 2 {
        let small = Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        return hermitian2_eigenvalues(&small).to_vec();
    }
    hermitian_eigen(m).0
}

/// Extends a set of orthonormal vectors to a full orthonormal basis of `dim`
/// (columns), by Gram–Schmidt against the computational basis.
pub(crate) fn complete_basis(vectors: &[DVector<Complex64>], dim: usize) -> DMatrix<Complex64> {
    let mut cols: Vec<DVector<Complex64>> = Vec::with_capacity(dim);
    let candidates = vectors.iter().cloned().chain((0..dim).map(|k| {
        let mut e = DVector::from_element(dim, ZERO);
        e[k] = ONE;
        e
    }));
    for mut v in candidates {
        if cols.len() == dim {
            break;
        }
        // Two passes keep the result orthonormal to machine precision.
        for _ in 0..2 {
            for c in &cols {
                let overlap = c.dotc(&v);
                v -= c * overlap;
            }
        }
        let norm = v.norm();
        if norm > 1e-8 {
            cols.push(v / Complex64::new(norm, 0.0));
        }
    }
    DMatrix::from_columns(&cols)
}

/// Unitary `exp(iH)` where `H` is the Hermitian matrix with zero diagonal whose
/// strict upper triangle is filled row by row from `(re, im)` pairs in `params`.
/// `params.len()` must be `d(d-1)`; the map covers every basis up to per-vector phases.
pub(crate) fn unitary_from_params(params: &[f64], dim: usize) -> DMatrix<Complex64> {
    debug_assert_eq!(params.len(), dim * (dim - 1));
    let mut h = DMatrix::from_element(dim, dim, ZERO);
    let mut k = 0;
    for i in 0..dim {
        for j in i + 1..dim {
            let z = Complex64::new(params[k], params[k + 1]);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
            k += 2;
        }
    }
    let eig = h.symmetric_eigen();
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, l)));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// Largest entrywise deviation of `U†U` from the identity.
pub(crate) fn orthonormality_defect(u: &DMatrix<Complex64>) -> f64 {
    let g = u.adjoint() * u;
    let n = g.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((g[(i, j)] - target).norm());
        }
    }
    worst
}
